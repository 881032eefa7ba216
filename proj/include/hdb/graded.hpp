#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hdb {

// Z/2-graded vector space with a named, ordered basis. Immutable once built;
// shared between elements, maps and algebras via SpacePtr.
class GradedSpace {
 public:
  GradedSpace(std::vector<std::string> names, std::vector<int> parities);

  int dim() const { return static_cast<int>(parity_.size()); }
  // (even, odd) dimensions.
  std::pair<int, int> dims() const;
  int parity(int i) const { return parity_.at(i); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& parities() const { return parity_; }

  bool operator==(const GradedSpace& o) const {
    return names_ == o.names_ && parity_ == o.parity_;
  }
  bool operator!=(const GradedSpace& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
  std::vector<int> parity_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr make_space(std::vector<std::string> names, std::vector<int> parities);

// Same basis with every parity bit flipped; names are decorated so that a
// reversed space is distinguishable from the original. Applying it twice
// yields the original parities with doubly-decorated names.
SpacePtr parity_reverse(const GradedSpace& s);

// Permutation of {0,...,n-1} stored as an image list: applying sigma to a
// tuple (a_0,...,a_{n-1}) yields (a_{sigma(0)},...,a_{sigma(n-1)}).
struct Permutation {
  std::vector<int> img;

  int size() const { return static_cast<int>(img.size()); }
  int operator()(int i) const { return img.at(i); }
  static Permutation identity(int n);
  // (sigma * tau)(i) = sigma(tau(i))
  Permutation compose(const Permutation& tau) const;
  Permutation inverse() const;
  bool is_valid() const;
  bool operator==(const Permutation& o) const { return img == o.img; }
};

// Koszul sign of rearranging a tuple with the given parities into the order
// sigma: product of (-1)^{p_a p_b} over all pairs that swap their relative
// order. parities.size() must equal sigma.size().
int koszul_sign(const Permutation& sigma, const std::vector<int>& parities);

// All (k,l)-shuffles of {0,...,k+l-1}: permutations increasing on the first k
// and on the last l positions, in lexicographic order of their image lists.
// There are C(k+l, k) of them.
std::vector<Permutation> enumerate_shuffles(int k, int l);

// Stable-sorts a basis-index tuple into non-decreasing order and accumulates
// the Koszul sign of the adjacent swaps (parities looked up per index).
// Returns sign 0 if an odd index occurs twice (the symmetric monomial is 0).
struct CanonicalTuple {
  std::vector<int> indices;
  int sign;  // +1, -1 or 0
};
CanonicalTuple canonicalize_tuple(const std::vector<int>& tuple,
                                  const std::vector<int>& parities);

// Non-decreasing index tuples of the given arity over a space, where an odd
// index never repeats. Lexicographic order.
std::vector<std::vector<int>> enumerate_canonical_tuples(const GradedSpace& s,
                                                         int arity);

}  // namespace hdb
