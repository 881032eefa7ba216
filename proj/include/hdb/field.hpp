#pragma once

#include <map>
#include <string>
#include <vector>

#include "hdb/family.hpp"
#include "hdb/generators.hpp"

namespace hdb {

// Polynomial in graded coordinates labelled by the basis of a graded space.
// Monomials are non-decreasing index lists (an odd coordinate cannot repeat);
// the product carries Koszul signs, so coordinates supercommute.
class Poly {
 public:
  explicit Poly(SpacePtr space);
  static Poly constant(SpacePtr space, const Rat& c);
  // Canonicalizes vars; a repeated odd coordinate gives the zero polynomial.
  static Poly monomial(SpacePtr space, const std::vector<int>& vars, const Rat& c);

  const SpacePtr& space() const { return space_; }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat constant_term() const;
  int degree() const;  // largest monomial length; -1 for the zero polynomial

  Poly add(const Poly& o) const;
  Poly sub(const Poly& o) const;
  Poly scaled(const Rat& s) const;
  Poly mul(const Poly& o) const;
  // Left derivative with respect to coordinate var.
  Poly derivative(int var) const;
  Poly truncated(int cap) const;  // drop monomials of degree > cap

  bool operator==(const Poly& o) const;
  std::string to_string() const;

 private:
  void insert(std::vector<int> key, const Rat& c);

  SpacePtr space_;
  std::map<std::vector<int>, Rat> terms_;
};

int monomial_parity(const GradedSpace& s, const std::vector<int>& key);

// Parity-homogeneous polynomial vector field sum_j X^j d/dx_j on the graded
// coordinate space, with all coefficient degrees bounded by cap.
class FormalVectorField {
 public:
  FormalVectorField(SpacePtr space, int parity, int cap, std::vector<Poly> components);
  static FormalVectorField zero(SpacePtr space, int parity, int cap);

  const SpacePtr& space() const { return space_; }
  int parity() const { return parity_; }
  int cap() const { return cap_; }
  const Poly& component(int j) const { return comp_.at(j); }
  const std::vector<Poly>& components() const { return comp_; }
  bool is_zero() const;

  FormalVectorField add(const FormalVectorField& o) const;
  FormalVectorField scaled(const Rat& s) const;
  FormalVectorField truncated(int cap) const;

  // Content comparison (space, parity, components); caps may differ.
  bool operator==(const FormalVectorField& o) const;
  std::string to_string() const;

 private:
  SpacePtr space_;
  int parity_;
  int cap_;
  std::vector<Poly> comp_;
};

// X(f) = sum_j X^j d_j(f), exact (no truncation).
Poly apply_field(const FormalVectorField& x, const Poly& f);

// [X, Y] = X o Y - (-1)^{|X||Y|} Y o X as derivations of the coordinate ring,
// components truncated to cap.
FormalVectorField field_commutator(const FormalVectorField& x, const FormalVectorField& y,
                                   int cap);

// (1/2)[X, X] for odd X, computed with a cap large enough to be exact for the
// polynomial field as given.
FormalVectorField field_square(const FormalVectorField& x);
// Odd X with [X, X] = 0 (exact).
bool is_homological(const FormalVectorField& x);

// Reads the bracket family encoded in a field: the k-th bracket on a basis
// tuple is the constant term of [...[[X, d_{i1}], d_{i2}], ..., d_{ik}] with
// constant coordinate fields, and the 0-bracket is X(0).
SymmetricBracketFamily brackets_from_field(const FormalVectorField& x, int max_arity);

// Inverse of brackets_from_field: the unique field of degree <= max_arity
// whose extracted brackets reproduce the family. Requires cap >= max_arity.
FormalVectorField field_from_brackets(const SymmetricBracketFamily& fam, int cap);

// The generating vector field of the derived brackets of D on V: coordinates
// are the V-basis, and extracting brackets from the field returns the derived
// bracket family of D up to max_arity.
FormalVectorField generating_field(const Decomposition& dec, const Derivation& D, int max_arity);

// [Q_{D1}, Q_{D2}] = Q_{[D1, D2]} in coefficient degrees <= cap - 1 (the
// commutator of the arity-cap truncations is only trustworthy there).
bool check_generating_field_homomorphism(const Decomposition& dec, const Derivation& d1,
                                         const Derivation& d2, int cap);

// W(n) elements are precisely the polynomial vector fields on the odd
// coordinate space V; these translate between the two encodings.
FormalVectorField field_of_wn_element(const WnAlgebra& w, const Element& x);
Element wn_element_of_field(const WnAlgebra& w, const FormalVectorField& x);

}  // namespace hdb
