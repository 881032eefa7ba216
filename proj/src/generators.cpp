#include "hdb/generators.hpp"

#include <stdexcept>

namespace hdb {

GrassmannAlgebra::GrassmannAlgebra(int m) : m_(m) {
  if (m < 0 || m > 8) throw std::invalid_argument("GrassmannAlgebra: need 0 <= m <= 8");
}

std::string GrassmannAlgebra::monomial_name(int mask) const {
  if (mask == 0) return "1";
  std::string s = "x";
  for (int i = 0; i < m_; ++i)
    if (mask & (1 << i)) s += std::to_string(i + 1);
  return s;
}

int GrassmannAlgebra::product_sign(int a, int b) const {
  if (a & b) return 0;
  // Count crossings: pairs (i in a, j in b) with j < i.
  int sign = 1;
  for (int i = 0; i < m_; ++i)
    if (a & (1 << i)) {
      int lower = b & ((1 << i) - 1);
      if (__builtin_popcount(static_cast<unsigned>(lower)) & 1) sign = -sign;
    }
  return sign;
}

RatMat GrassmannAlgebra::multiplication_operator(int mask) const {
  RatMat m(dim(), dim());
  for (int c = 0; c < dim(); ++c) {
    int s = product_sign(mask, c);
    if (s != 0) m.at(mask | c, c) = s;
  }
  return m;
}

RatMat GrassmannAlgebra::derivative_operator(int i) const {
  RatMat m(dim(), dim());
  int bit = 1 << i;
  for (int c = 0; c < dim(); ++c) {
    if (!(c & bit)) continue;
    // Left derivative: sign (-1)^{#generators below i present in c}.
    int lower = c & (bit - 1);
    int s = (__builtin_popcount(static_cast<unsigned>(lower)) & 1) ? -1 : 1;
    m.at(c & ~bit, c) = s;
  }
  return m;
}

RatMat GrassmannAlgebra::graded_commutator(const RatMat& a, int pa, const RatMat& b, int pb) const {
  RatMat ab = a.mul(b);
  RatMat ba = b.mul(a);
  return (pa == 1 && pb == 1) ? ab.add(ba) : ab.sub(ba);
}

WnAlgebra gen_wn(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("gen_wn: need 1 <= n <= 5");
  GrassmannAlgebra lam(n);
  const int masks = 1 << n;
  const int dim = n * masks;

  std::vector<std::string> names;
  std::vector<int> parities;
  names.resize(dim);
  parities.resize(dim);
  for (int mask = 0; mask < masks; ++mask)
    for (int d = 0; d < n; ++d) {
      int idx = mask * n + d;
      std::string nm = (mask == 0 ? "" : lam.monomial_name(mask) + ".");
      names[idx] = nm + "d" + std::to_string(d + 1);
      parities[idx] = (lam.parity_of(mask) + 1) & 1;
    }
  SpacePtr space = make_space(std::move(names), std::move(parities));

  // Operator of basis field x_A d_i: multiply by the monomial after taking
  // the left derivative.
  auto field_op = [&](int mask, int d) {
    return lam.multiplication_operator(mask).mul(lam.derivative_operator(d));
  };
  std::vector<RatMat> ops(dim);
  for (int mask = 0; mask < masks; ++mask)
    for (int d = 0; d < n; ++d) ops[mask * n + d] = field_op(mask, d);

  // A superderivation is determined by the images of the generators x_i; the
  // coefficient of x_B in W(x_i) is the coefficient of the basis field
  // x_B d_i.
  auto decompose = [&](const RatMat& w) {
    std::vector<SCEntry> out;
    for (int d = 0; d < n; ++d) {
      int gen_col = 1 << d;
      for (int b = 0; b < masks; ++b)
        if (w.at(b, gen_col) != 0) out.push_back({0, 0, b * n + d, w.at(b, gen_col)});
    }
    return out;
  };

  std::vector<SCEntry> entries;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      if (i == j && space->parity(i) == 0) continue;
      RatMat c = lam.graded_commutator(ops[i], space->parity(i), ops[j], space->parity(j));
      for (SCEntry e : decompose(c)) {
        e.i = i;
        e.j = j;
        entries.push_back(e);
      }
    }
  AlgebraPtr L = make_algebra(space, entries);

  std::vector<int> v_idx, k_idx;
  for (int d = 0; d < n; ++d) v_idx.push_back(d);
  for (int i = n; i < dim; ++i) k_idx.push_back(i);
  Decomposition dec(L, std::move(k_idx), std::move(v_idx), /*abelian=*/true);
  return WnAlgebra{n, L, std::move(dec)};
}

Element gen_ce_field(const WnAlgebra& w, const GConstants& g) {
  if (g.dim != w.n) throw std::invalid_argument("gen_ce_field: constants dimension != n");
  Element q = Element::zero(w.L->space());
  for (const SCEntry& e : g.entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= g.dim || e.j >= g.dim || e.k >= g.dim)
      throw std::invalid_argument("gen_ce_field: constant index out of range");
    if (!(e.i < e.j)) throw std::invalid_argument("gen_ce_field: entries must have i < j");
    int mask = (1 << e.i) | (1 << e.j);
    q.coeff(w.basis_index(mask, e.k)) -= e.value;  // monomial coefficient -c_{ij}^k
  }
  return q;
}

int EndGrassmann::e_index(int b_mask, int c_mask) const {
  if (c_mask == 0) throw std::invalid_argument("EndGrassmann::e_index: C must be nonempty");
  int n = lambda.dim();
  return n + (c_mask - 1) * n + b_mask;
}

RatMat EndGrassmann::basis_operator(int index) const {
  int n = lambda.dim();
  if (index < n) return lambda.multiplication_operator(index);
  int rest = index - n;
  int c_mask = rest / n + 1;
  int b_mask = rest % n;
  RatMat op(n, n);
  op.at(b_mask, c_mask) = 1;
  return op;
}

Element EndGrassmann::element_from_operator(const RatMat& op) const {
  int n = lambda.dim();
  if (op.rows() != n || op.cols() != n)
    throw std::invalid_argument("EndGrassmann: operator has wrong shape");
  Element out = Element::zero(L->space());
  // Multiplication part from the image of the unit...
  RatMat rem = op;
  for (int b = 0; b < n; ++b) {
    Rat a = op.at(b, 0);
    if (a == 0) continue;
    out.coeff(mult_index(b)) = a;
    RatMat mb = lambda.multiplication_operator(b).scaled(a);
    rem = rem.sub(mb);
  }
  // ...then the remainder annihilates the unit and reads off entrywise.
  for (int c = 1; c < n; ++c)
    for (int b = 0; b < n; ++b)
      if (rem.at(b, c) != 0) out.coeff(e_index(b, c)) = rem.at(b, c);
  for (int b = 0; b < n; ++b)
    if (rem.at(b, 0) != 0)
      throw std::logic_error("EndGrassmann::element_from_operator: decomposition failed");
  return out;
}

RatMat EndGrassmann::operator_of(const Element& e) const {
  if (*e.space() != *L->space())
    throw std::invalid_argument("EndGrassmann::operator_of: element not in this algebra");
  RatMat op(lambda.dim(), lambda.dim());
  for (int i : e.support()) op = op.add(basis_operator(i).scaled(e.coeff(i)));
  return op;
}

EndGrassmann gen_end_grassmann(int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("gen_end_grassmann: need 1 <= m <= 3");
  GrassmannAlgebra lam(m);
  const int n = lam.dim();
  const int dim = n * n;

  std::vector<std::string> names(dim);
  std::vector<int> parities(dim);
  for (int b = 0; b < n; ++b) {
    names[b] = "m(" + lam.monomial_name(b) + ")";
    parities[b] = lam.parity_of(b);
  }
  for (int c = 1; c < n; ++c)
    for (int b = 0; b < n; ++b) {
      int idx = n + (c - 1) * n + b;
      names[idx] = "E(" + lam.monomial_name(b) + "|" + lam.monomial_name(c) + ")";
      parities[idx] = (lam.parity_of(b) + lam.parity_of(c)) & 1;
    }
  SpacePtr space = make_space(names, parities);

  auto basis_op = [&](int index) {
    if (index < n) return lam.multiplication_operator(index);
    int rest = index - n;
    RatMat op(n, n);
    op.at(rest % n, rest / n + 1) = 1;
    return op;
  };
  std::vector<RatMat> ops(dim);
  for (int i = 0; i < dim; ++i) ops[i] = basis_op(i);

  std::vector<SCEntry> entries;
  auto decompose = [&](const RatMat& op, int i, int j) {
    RatMat rem = op;
    for (int b = 0; b < n; ++b) {
      Rat a = op.at(b, 0);
      if (a == 0) continue;
      entries.push_back({i, j, b, a});
      rem = rem.sub(lam.multiplication_operator(b).scaled(a));
    }
    for (int c = 1; c < n; ++c)
      for (int b = 0; b < n; ++b)
        if (rem.at(b, c) != 0) entries.push_back({i, j, n + (c - 1) * n + b, rem.at(b, c)});
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      if (i == j && parities[i] == 0) continue;
      RatMat c = lam.graded_commutator(ops[i], parities[i], ops[j], parities[j]);
      decompose(c, i, j);
    }
  AlgebraPtr L = make_algebra(space, entries);

  std::vector<int> v_idx, k_idx;
  for (int b = 0; b < n; ++b) v_idx.push_back(b);
  for (int i = n; i < dim; ++i) k_idx.push_back(i);
  Decomposition dec(L, std::move(k_idx), std::move(v_idx), /*abelian=*/true);
  return EndGrassmann{m, lam, L, std::move(dec)};
}

}  // namespace hdb
