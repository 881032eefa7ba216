#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdb/linalg.hpp"

namespace hdb {

// Vector in a graded space, stored as a dense coefficient column.
class Element {
 public:
  Element(SpacePtr space, std::vector<Rat> coeffs);
  static Element zero(SpacePtr space);
  static Element basis(SpacePtr space, int i);

  const SpacePtr& space() const { return space_; }
  int dim() const { return static_cast<int>(c_.size()); }
  const Rat& coeff(int i) const { return c_.at(i); }
  Rat& coeff(int i) { return c_.at(i); }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  std::vector<int> support() const;
  // Parity if all supported basis vectors agree; nullopt for 0 or mixed.
  std::optional<int> homogeneous_parity() const;

  Element add(const Element& o) const;
  Element sub(const Element& o) const;
  Element scaled(const Rat& s) const;
  bool operator==(const Element& o) const;

  std::string to_string() const;

 private:
  SpacePtr space_;
  std::vector<Rat> c_;
};

struct Violation {
  std::string kind;        // e.g. "antisymmetry", "jacobi", "k-not-closed"
  std::vector<int> where;  // offending basis indices
  std::string detail;      // human-readable defect description
};

struct ValidationReport {
  std::vector<Violation> items;
  bool ok() const { return items.empty(); }
};

struct SCEntry {
  int i, j, k;
  Rat value;
};

// Finite-dimensional Lie superalgebra given by a named graded basis and
// sparse structure constants [e_i, e_j] = sum_k c_{ij}^k e_k. Entries are
// stored for i <= j (a diagonal i == j entry is meaningful only for odd
// basis vectors); values for i > j follow from graded antisymmetry. The
// constructor also accepts explicit i > j entries so that inconsistent input
// can be represented and then reported by validate_lie_superalgebra.
class LieSuperalgebra {
 public:
  LieSuperalgebra(SpacePtr space, const std::vector<SCEntry>& entries);

  const SpacePtr& space() const { return space_; }
  int dim() const { return space_->dim(); }

  // Sparse row of structure constants for the ordered pair (i, j).
  std::map<int, Rat> bracket_basis(int i, int j) const;
  Element bracket(const Element& a, const Element& b) const;

  // Entries exactly as given at construction (for validation).
  const std::map<std::pair<int, int>, std::map<int, Rat>>& raw_table() const { return table_; }

 private:
  SpacePtr space_;
  std::map<std::pair<int, int>, std::map<int, Rat>> table_;
};

using AlgebraPtr = std::shared_ptr<const LieSuperalgebra>;

AlgebraPtr make_algebra(SpacePtr space, const std::vector<SCEntry>& entries);

// Checks parity consistency of every entry, graded antisymmetry
// (c_{ij}^k = -(-1)^{p_i p_j} c_{ji}^k, including forced-zero even
// diagonals) and the graded Jacobi identity on all basis triples
// i <= j <= k, reporting each defect with its witness indices.
ValidationReport validate_lie_superalgebra(const LieSuperalgebra& L);

// Splitting L = K (+) V by basis indices; V need not be abelian, but most
// bracket-derivation machinery requires the abelian flag (and the flag is
// checked against the table by validate_decomposition).
class Decomposition {
 public:
  Decomposition(AlgebraPtr L, std::vector<int> k_indices, std::vector<int> v_indices,
                bool abelian);

  const AlgebraPtr& algebra() const { return L_; }
  const std::vector<int>& k_indices() const { return k_idx_; }
  const std::vector<int>& v_indices() const { return v_idx_; }
  bool abelian() const { return abelian_; }

  const SpacePtr& v_space() const { return v_space_; }
  const SpacePtr& k_space() const { return k_space_; }

  // Projector onto V along K, as a map L -> L.
  GradedLinearMap projector() const;
  Element project(const Element& a) const;

  bool in_v(int l_index) const { return v_pos_.at(l_index) >= 0; }
  bool in_k(int l_index) const { return k_pos_.at(l_index) >= 0; }
  int v_position(int l_index) const;   // index within v_space
  int l_index_of_v(int v_pos) const { return v_idx_.at(v_pos); }
  int l_index_of_k(int k_pos) const { return k_idx_.at(k_pos); }

  Element embed_v(const Element& v_elem) const;     // V-coords -> L
  Element restrict_v(const Element& l_elem) const;  // L (support in V) -> V-coords

 private:
  AlgebraPtr L_;
  std::vector<int> k_idx_, v_idx_;
  std::vector<int> k_pos_, v_pos_;  // L-index -> position in block, or -1
  bool abelian_;
  SpacePtr v_space_, k_space_;
};

// Closure of K and V under the bracket, and (when the flag is set) actual
// abelianness of V, each defect with witnesses.
ValidationReport validate_decomposition(const Decomposition& dec);

// Parity-homogeneous linear map D : L -> L satisfying the graded Leibniz
// rule D[a,b] = [Da,b] + (-1)^{|D||a|} [a,Db].
class Derivation {
 public:
  Derivation(AlgebraPtr L, GradedLinearMap map);

  const AlgebraPtr& algebra() const { return L_; }
  int parity() const { return map_.parity(); }
  const GradedLinearMap& map() const { return map_; }
  Element apply(const Element& a) const;

  Derivation add(const Derivation& o) const;
  Derivation scaled(const Rat& s) const;

 private:
  AlgebraPtr L_;
  GradedLinearMap map_;
};

// Leibniz defects D[e_i,e_j] - [De_i,e_j] - (-1)^{|D| p_i} [e_i, De_j] on all
// basis pairs i <= j.
ValidationReport validate_derivation(const Derivation& D);

// PDP = PD as an exact matrix identity, equivalent to D(K) subset of K.
bool check_preserves_k(const Decomposition& dec, const Derivation& D);

// ad x = [x, -] for homogeneous x.
Derivation inner_derivation(const AlgebraPtr& L, const Element& x);
// D1 D2 - (-1)^{|D1||D2|} D2 D1.
Derivation derivation_commutator(const Derivation& a, const Derivation& b);
// D o D for odd D (equals (1/2)[D,D]).
Derivation derivation_square(const Derivation& d);

}  // namespace hdb
