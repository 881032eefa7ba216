#include "hdb/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdb {

GradedSpace::GradedSpace(std::vector<std::string> names, std::vector<int> parities)
    : names_(std::move(names)), parity_(std::move(parities)) {
  if (names_.size() != parity_.size())
    throw std::invalid_argument("GradedSpace: names/parities size mismatch");
  for (int p : parity_)
    if (p != 0 && p != 1) throw std::invalid_argument("GradedSpace: parity must be 0 or 1");
}

std::pair<int, int> GradedSpace::dims() const {
  int even = 0, odd = 0;
  for (int p : parity_) (p == 0 ? even : odd)++;
  return {even, odd};
}

SpacePtr make_space(std::vector<std::string> names, std::vector<int> parities) {
  return std::make_shared<GradedSpace>(std::move(names), std::move(parities));
}

SpacePtr parity_reverse(const GradedSpace& s) {
  std::vector<std::string> names;
  std::vector<int> parities;
  names.reserve(s.dim());
  parities.reserve(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    names.push_back("Pi(" + s.name(i) + ")");
    parities.push_back(1 - s.parity(i));
  }
  return make_space(std::move(names), std::move(parities));
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.img.resize(n);
  for (int i = 0; i < n; ++i) p.img[i] = i;
  return p;
}

Permutation Permutation::compose(const Permutation& tau) const {
  if (size() != tau.size()) throw std::invalid_argument("Permutation::compose: size mismatch");
  Permutation r;
  r.img.resize(size());
  for (int i = 0; i < size(); ++i) r.img[i] = img[tau.img[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img.resize(size());
  for (int i = 0; i < size(); ++i) r.img[img[i]] = i;
  return r;
}

bool Permutation::is_valid() const {
  std::vector<char> seen(img.size(), 0);
  for (int v : img) {
    if (v < 0 || v >= size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

int koszul_sign(const Permutation& sigma, const std::vector<int>& parities) {
  if (static_cast<int>(parities.size()) != sigma.size())
    throw std::invalid_argument("koszul_sign: parity list size mismatch");
  if (!sigma.is_valid()) throw std::invalid_argument("koszul_sign: not a permutation");
  int sign = 1;
  const int n = sigma.size();
  // Inversion pairs: positions s < t whose entries appear in swapped order.
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      if (sigma.img[s] > sigma.img[t] && parities[sigma.img[s]] == 1 &&
          parities[sigma.img[t]] == 1)
        sign = -sign;
  return sign;
}

std::vector<Permutation> enumerate_shuffles(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("enumerate_shuffles: negative block size");
  const int n = k + l;
  std::vector<Permutation> out;
  // Choose the sorted image of the first block; the second block gets the
  // complement, also sorted. Subsets are generated in lexicographic order, so
  // the image lists come out lexicographically sorted as well.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    Permutation p;
    p.img.reserve(n);
    std::vector<char> used(n, 0);
    for (int v : pick) {
      p.img.push_back(v);
      used[v] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (!used[v]) p.img.push_back(v);
    out.push_back(std::move(p));
    if (k == 0) break;
    // next k-subset of {0..n-1} in lexicographic order
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

CanonicalTuple canonicalize_tuple(const std::vector<int>& tuple,
                                  const std::vector<int>& parities) {
  CanonicalTuple r{tuple, 1};
  const int n = static_cast<int>(r.indices.size());
  // Bubble sort; each adjacent swap of entries with parities p,q contributes
  // (-1)^{pq}.
  for (int pass = 0; pass < n; ++pass)
    for (int i = 0; i + 1 < n; ++i)
      if (r.indices[i] > r.indices[i + 1]) {
        if (parities.at(r.indices[i]) == 1 && parities.at(r.indices[i + 1]) == 1)
          r.sign = -r.sign;
        std::swap(r.indices[i], r.indices[i + 1]);
      }
  for (int i = 0; i + 1 < n; ++i)
    if (r.indices[i] == r.indices[i + 1] && parities.at(r.indices[i]) == 1) {
      r.sign = 0;
      break;
    }
  return r;
}

static void canonical_tuples_rec(const GradedSpace& s, int arity, int start,
                                 std::vector<int>& cur,
                                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == arity) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < s.dim(); ++i) {
    if (!cur.empty() && cur.back() == i && s.parity(i) == 1) continue;
    cur.push_back(i);
    canonical_tuples_rec(s, arity, i, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> enumerate_canonical_tuples(const GradedSpace& s, int arity) {
  if (arity < 0) throw std::invalid_argument("enumerate_canonical_tuples: negative arity");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  canonical_tuples_rec(s, arity, 0, cur, out);
  return out;
}

}  // namespace hdb
