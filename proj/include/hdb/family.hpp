#pragma once

#include <map>
#include <string>
#include <vector>

#include "hdb/algebra.hpp"

namespace hdb {

// Common interface for a family of graded-symmetric multilinear brackets of a
// fixed parity on one space: one k-ary operation per arity k. Evaluation on
// arbitrary tuples goes through canonicalization (sorting with the Koszul
// sign; a repeated odd argument gives zero) and multilinear expansion.
class BracketOps {
 public:
  virtual ~BracketOps() = default;

  virtual const SpacePtr& space() const = 0;
  virtual int parity() const = 0;
  virtual int max_arity() const = 0;
  // True when arities above max_arity are identically zero (table-backed
  // families); false when they simply are not available (rule-backed
  // structures, where requesting them is an error).
  virtual bool vanishes_above_max() const = 0;
  virtual bool zero_nullary() const = 0;
  virtual Element nullary() const = 0;
  // Value on a canonical (non-decreasing) basis tuple, arity >= 1.
  virtual Element eval_canonical(const std::vector<int>& tuple) const = 0;

  // Any basis tuple: canonicalize, then look up.
  Element eval_tuple(const std::vector<int>& tuple) const;
  // First argument a general element, remaining arguments basis indices.
  Element eval_first_general(const Element& head, const std::vector<int>& rest) const;
  // Fully general arguments, by multilinear expansion.
  Element eval_elements(const std::vector<Element>& args) const;
};

// Table-backed family. Values live in the family's space; every stored tuple
// key is canonical. Missing tuples of an in-range arity are zero.
class SymmetricBracketFamily final : public BracketOps {
 public:
  SymmetricBracketFamily(SpacePtr space, int parity, int max_arity, Element nullary_value,
                         std::map<int, std::map<std::vector<int>, Element>> tables);

  const SpacePtr& space() const override { return space_; }
  int parity() const override { return parity_; }
  int max_arity() const override { return max_arity_; }
  bool vanishes_above_max() const override { return true; }
  bool zero_nullary() const override;
  Element nullary() const override { return nullary_; }
  Element eval_canonical(const std::vector<int>& tuple) const override;

  const std::map<int, std::map<std::vector<int>, Element>>& tables() const { return tables_; }
  // Adds a table entry; the tuple must be canonical, the value parity-consistent.
  void set(const std::vector<int>& tuple, Element value);

  SymmetricBracketFamily add(const SymmetricBracketFamily& o) const;
  bool operator==(const SymmetricBracketFamily& o) const;

 private:
  void check_entry(const std::vector<int>& tuple, const Element& value) const;

  SpacePtr space_;
  int parity_;
  int max_arity_;
  Element nullary_;
  std::map<int, std::map<std::vector<int>, Element>> tables_;
};

// P[...[[D a1, a2], a3], ..., ak] for arguments supported in V; k >= 1.
// Works for non-abelian V as well (the family construction does not).
Element derived_bracket(const Decomposition& dec, const Derivation& D,
                        const std::vector<Element>& args);

// Tabulates the derived brackets of D on all canonical V-basis tuples up to
// max_arity. Requires the abelian flag (otherwise the operations are not
// graded-symmetric; use check_transposition_identity to quantify that). Each
// tuple gets an adjacent-transposition symmetry spot-check during
// construction.
SymmetricBracketFamily derived_bracket_family(const Decomposition& dec, const Derivation& D,
                                              int max_arity);

// Jacobiator J^n of a bracket family on a basis tuple: the shuffle sum of
// bracket-of-bracket compositions with pure Koszul signs. For table-backed
// families terms whose inner or outer arity exceeds max_arity vanish by the
// zero-above-max convention, and n may go up to 2*max_arity - 1; rule-backed
// structures require n <= max_arity.
Element jacobiator(const BracketOps& f, const std::vector<int>& tuple);
Element jacobiator(const BracketOps& f, const std::vector<Element>& args);

struct JacobiatorReport {
  struct Defect {
    int arity;
    std::vector<int> tuple;
    Element lhs, rhs, defect;
  };
  struct SkipNote {
    int arity;
    std::vector<int> tuple;
    std::string reason;
  };
  struct ArityBlock {
    int arity = 0;
    int checked = 0;
    int skipped = 0;
  };
  std::vector<ArityBlock> blocks;
  std::vector<Defect> defects;
  std::vector<SkipNote> skips;
  bool all_zero() const { return defects.empty(); }
};

// For every canonical V-basis tuple of arity n <= max_n, compares the
// Jacobiator of the derived family of D against the derived bracket of
// D squared, evaluated directly. Requires: odd D, abelian V, and PDP = PD.
JacobiatorReport verify_main_theorem(const Decomposition& dec, const Derivation& D, int max_n);

// Smallest r such that every nested bracket [...[D a1, a2], ..., a_{r+1}]
// with arguments from V vanishes; -1 if no r <= max_probe works. With
// abelian V the nested chains are graded-symmetric, so canonical tuples
// suffice; otherwise all ordered tuples are probed.
int derivation_order(const Decomposition& dec, const Derivation& D, int max_probe);

// Defect of the transposition identity at the given adjacent position:
//   {..,a_p,a_{p+1},..}_D - (-1)^{|a_p||a_{p+1}|} {..,a_{p+1},a_p,..}_D
//     - {..,[a_p,a_{p+1}],..}_D
// (the last bracket has one argument fewer). Arguments must be homogeneous
// and supported in V; V may be non-abelian but must be closed.
Element transposition_defect(const Decomposition& dec, const Derivation& D,
                             const std::vector<Element>& args, int pos);

// Sweeps all ordered V-basis tuples of arities 2..max_arity and all adjacent
// positions; reports nonzero defects.
ValidationReport check_transposition_identity(const Decomposition& dec, const Derivation& D,
                                              int max_arity);

}  // namespace hdb
