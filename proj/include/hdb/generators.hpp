#pragma once

#include "hdb/algebra.hpp"

namespace hdb {

// Grassmann algebra on m odd generators x1..xm. Monomials are subsets of
// {0..m-1} stored as bitmasks; the basis is ordered by mask value, so index 0
// is the unit. Operators on the algebra are (2^m x 2^m) rational matrices in
// this monomial basis, composed by matrix multiplication.
class GrassmannAlgebra {
 public:
  explicit GrassmannAlgebra(int m);

  int generators() const { return m_; }
  int dim() const { return 1 << m_; }
  int parity_of(int mask) const { return __builtin_popcount(static_cast<unsigned>(mask)) & 1; }
  std::string monomial_name(int mask) const;

  // Sign of x_A * x_B for disjoint masks (0 if they intersect: an odd
  // generator would repeat).
  int product_sign(int a, int b) const;

  RatMat multiplication_operator(int mask) const;  // left multiplication by x_mask
  RatMat derivative_operator(int i) const;         // left partial derivative d/dx_{i+1}
  // Graded commutator of homogeneous operators.
  RatMat graded_commutator(const RatMat& a, int pa, const RatMat& b, int pb) const;

 private:
  int m_;
};

// W(n): all vector fields on a purely odd n-dimensional space, i.e. the
// superderivations of the Grassmann algebra on n generators. Basis fields are
// x_A d_i (coefficient monomial times partial derivative), ordered with the
// constant fields d_1..d_n first (mask 0), then mask 1, 2, ... Structure
// constants come from composing the operators on the Grassmann algebra.
struct WnAlgebra {
  int n;
  AlgebraPtr L;
  Decomposition dec;  // K = fields vanishing at the origin, V = constant fields (abelian)

  int basis_index(int mask, int dir) const { return mask * n + dir; }
  int mask_of(int index) const { return index / n; }
  int dir_of(int index) const { return index % n; }
};

// 1 <= n <= 5.
WnAlgebra gen_wn(int n);

// Structure constants of an ordinary n-dimensional Lie algebra, entries for
// i < j only (0-based); antisymmetric completion is implied.
struct GConstants {
  int dim;
  std::vector<SCEntry> entries;
};

// The quadratic field encoding g's bracket as an element of W(n): the
// monomial coefficient at x_i x_j d_k (i < j) is -c_{ij}^k, i.e. the field is
// (1/2) x^i x^j c_{ji}^k d_k with indices summed over both orders. Its adjoint
// action squares to zero exactly when g satisfies the Jacobi identity, making
// it the Chevalley-Eilenberg differential in vector-field form.
Element gen_ce_field(const WnAlgebra& w, const GConstants& g);

// End of the Grassmann algebra on m generators: all linear endomorphisms with
// the graded commutator, dim 4^m. The basis is adapted to the splitting
//   V = multiplication operators m(x_A)            (indices 0 .. 2^m-1)
//   K = operators annihilating the unit, E(x_B|x_C) with C != empty
// where E(x_B|x_C) maps the monomial x_C to x_B and kills the other
// monomials. The projector sends an operator T to multiplication by T(1).
struct EndGrassmann {
  int m;
  GrassmannAlgebra lambda;
  AlgebraPtr L;
  Decomposition dec;  // abelian V

  int mult_index(int mask) const { return mask; }
  int e_index(int b_mask, int c_mask) const;  // requires c_mask != 0

  // Operator matrix of a basis element.
  RatMat basis_operator(int index) const;
  // Expands an operator over the adapted basis; exact, total.
  Element element_from_operator(const RatMat& op) const;
  RatMat operator_of(const Element& e) const;
};

// 1 <= m <= 3.
EndGrassmann gen_end_grassmann(int m);

}  // namespace hdb
