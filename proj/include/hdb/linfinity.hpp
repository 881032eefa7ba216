#pragma once

#include "hdb/family.hpp"
#include "hdb/homotopy.hpp"

namespace hdb {

// The odd symmetric bracket family on M = Pi(L) + V attached to a
// decomposition with abelian V and an odd squared-zero derivation D with
// PDP = PD. Writing Pix for reversed arguments and a_i for V arguments:
//   {Pix}           = (-Pi D x, P x)
//   {a}             = P D a
//   {Pix, Piy}      = (-1)^{|x|} Pi [x, y]
//   {Pix, a1..an}   = P [...[x, a1], ..., an]
//   {a1..an}        = P [...[D a1, a2], ..., an]
// and every bracket with three or more reversed arguments, or with two
// reversed arguments plus a V argument, is zero. Arbitrary argument orders
// are handled by the symmetric-family canonicalization (reversed basis
// vectors come first in the basis order, so sorting moves them to the front
// with the Koszul sign on M-parities).
//
// All brackets are odd, and the generalized Jacobi identities hold in every
// arity: this is the structure carried by the homotopy fibre of the
// projection onto V.
class ExtendedBracketStructure final : public BracketOps {
 public:
  ExtendedBracketStructure(Decomposition dec, Derivation d, int max_arity);

  const SpacePtr& space() const override { return space_; }
  int parity() const override { return 1; }
  int max_arity() const override { return max_arity_; }
  bool vanishes_above_max() const override { return false; }
  bool zero_nullary() const override { return true; }
  Element nullary() const override { return Element::zero(space_); }
  Element eval_canonical(const std::vector<int>& tuple) const override;

  // Dimension of the reversed block: basis indices below this are Pi(L),
  // the rest are V.
  int reversed_dim() const { return nl_; }
  const Decomposition& decomposition() const { return dec_; }
  const Derivation& derivation() const { return d_; }

  // Complex of the unary bracket; coincides with the shifted small
  // cocylinder of (dec, D).
  Complex underlying_complex() const;

 private:
  Decomposition dec_;
  Derivation d_;
  int max_arity_;
  int nl_, nv_;
  SpacePtr space_;
  mutable std::map<std::vector<int>, Element> cache_;
};

// Restriction of the extended structure to V-only arguments, tabulated up to
// the structure's max_arity. Coincides exactly with derived_bracket_family of
// the same data: V is closed under all the brackets and carries the higher
// derived brackets of D.
SymmetricBracketFamily v_restriction(const ExtendedBracketStructure& ext);

// Unary-binary compatibility d{u,v} = -{du,v} - (-1)^{|u|}{u,dv} on all basis
// pairs (the arity-2 Jacobi identity read as a Leibniz rule).
ValidationReport check_binary_leibniz(const BracketOps& f);
ValidationReport check_binary_leibniz(const Decomposition& dec, const Derivation& d);

// Jacobiators of the extended structure on all canonical basis tuples of
// arities 1..max_n. Tuples where every term vanishes term-by-term under the
// bracket rules (four or more reversed arguments, or three reversed arguments
// in arity above three) are skipped with a note unless brute_force is set, in
// which case they are evaluated like the rest. Three reversed arguments in
// arity exactly three reproduce the Jacobi identity of L and are always
// evaluated.
JacobiatorReport verify_linfinity(const ExtendedBracketStructure& ext, int max_n,
                                  bool brute_force);

}  // namespace hdb
