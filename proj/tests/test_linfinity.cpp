#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hdb/generators.hpp"
#include "hdb/linfinity.hpp"

using namespace hdb;

namespace {

// W(2) with the quadratic field of the two-dimensional nonabelian Lie
// algebra [f1,f2] = f1; ad of it is odd, squares to zero and preserves K.
struct Fixture {
  WnAlgebra w = gen_wn(2);
  Derivation D;
  Fixture() : D(inner_derivation(w.L, gen_ce_field(w, GConstants{2, {{0, 1, 0, Rat(1)}}}))) {}
};

Element m_elem(const SpacePtr& s, const std::vector<std::pair<int, long>>& coeffs) {
  Element e = Element::zero(s);
  for (const auto& [i, v] : coeffs) e.coeff(i) = v;
  return e;
}

// Delegates to a real structure but flips the sign of the reversed-reversed
// binary bracket; the Leibniz sweep must notice.
struct FlippedPair final : BracketOps {
  const ExtendedBracketStructure& base;
  explicit FlippedPair(const ExtendedBracketStructure& b) : base(b) {}
  const SpacePtr& space() const override { return base.space(); }
  int parity() const override { return 1; }
  int max_arity() const override { return base.max_arity(); }
  bool vanishes_above_max() const override { return false; }
  bool zero_nullary() const override { return true; }
  Element nullary() const override { return base.nullary(); }
  Element eval_canonical(const std::vector<int>& t) const override {
    Element v = base.eval_canonical(t);
    if (t.size() == 2 && t[0] < base.reversed_dim() && t[1] < base.reversed_dim())
      return v.scaled(Rat(-1));
    return v;
  }
};

}  // namespace

TEST_CASE("extended bracket rules, frozen values") {
  Fixture f;
  ExtendedBracketStructure ext(f.w.dec, f.D, 4);
  const SpacePtr& m = ext.space();

  REQUIRE(m->dim() == 10);
  CHECK(ext.reversed_dim() == 8);
  CHECK(m->name(0) == "Pi(d1)");
  CHECK(m->name(2) == "Pi(x1.d1)");
  CHECK(m->name(8) == "d1");
  CHECK(m->parity(0) == 0);  // d1 is odd, the reversed copy is even
  CHECK(m->parity(2) == 1);
  CHECK(m->parity(8) == 1);
  CHECK(ext.parity() == 1);

  // Unary on Pi(d1): D d1 = -x2.d1, so the value is Pi(x2.d1) + d1.
  CHECK(ext.eval_canonical({0}) == m_elem(m, {{4, 1}, {8, 1}}));
  // Unary on the V copy of d1: P D d1 = P(-x2.d1) = 0.
  CHECK(ext.eval_canonical({8}).is_zero());
  // {Pi(d1), Pi(x1.d1)} = (-1)^|d1| Pi [d1, x1.d1] = -Pi(d1).
  CHECK(ext.eval_canonical({0, 2}) == m_elem(m, {{0, -1}}));
  // {Pi(x1.d1), d1} = P [x1.d1, d1] = -d1.
  CHECK(ext.eval_canonical({2, 8}) == m_elem(m, {{8, -1}}));
  // {Pi(x1.d2), d1} = P [x1.d2, d1] = -d2.
  CHECK(ext.eval_canonical({3, 8}) == m_elem(m, {{9, -1}}));
  // {Pi(x1.d1), d2} = P [x1.d1, d2] = 0.
  CHECK(ext.eval_canonical({2, 9}).is_zero());

  // Vanishing patterns: three reversed arguments, or two plus a V argument.
  CHECK(ext.eval_canonical({2, 3, 4}).is_zero());
  CHECK(ext.eval_canonical({2, 3, 8}).is_zero());
  CHECK(ext.eval_canonical({0, 1, 2, 3}).is_zero());

  // Reordered arguments pick up the Koszul sign of the M-parities.
  CHECK(ext.eval_tuple({8, 2}) == ext.eval_canonical({2, 8}).scaled(Rat(-1)));

  // Pure-V brackets are exactly the derived brackets of D.
  SymmetricBracketFamily fam = derived_bracket_family(f.w.dec, f.D, 4);
  for (int arity = 1; arity <= 4; ++arity)
    for (const std::vector<int>& vt : enumerate_canonical_tuples(*f.w.dec.v_space(), arity)) {
      std::vector<int> mt;
      for (int vp : vt) mt.push_back(8 + vp);
      Element fv = fam.eval_canonical(vt);
      Element expected = Element::zero(m);
      for (int vp = 0; vp < 2; ++vp) expected.coeff(8 + vp) = fv.coeff(vp);
      CHECK(ext.eval_canonical(mt) == expected);
    }

  // Brackets with at least one V argument land in the V block.
  for (int arity = 2; arity <= 3; ++arity)
    for (const std::vector<int>& t : enumerate_canonical_tuples(*m, arity)) {
      if (t.front() >= 8 || t.back() < 8) continue;  // want mixed tuples
      for (int idx : ext.eval_canonical(t).support()) CHECK(idx >= 8);
    }
}

TEST_CASE("unary bracket is the shifted small cocylinder") {
  Fixture f;
  ExtendedBracketStructure ext(f.w.dec, f.D, 2);
  Complex un = ext.underlying_complex();
  CHECK(validate_complex(un).ok());
  Complex shifted = small_cocylinder(f.w.dec, f.D).shifted;
  CHECK(*un.space() == *shifted.space());
  CHECK(un.d().matrix() == shifted.d().matrix());
}

TEST_CASE("binary Leibniz rule holds, and a planted sign flip is caught") {
  Fixture f;
  ExtendedBracketStructure ext(f.w.dec, f.D, 2);
  CHECK(check_binary_leibniz(ext).ok());

  FlippedPair flipped(ext);
  ValidationReport rep = check_binary_leibniz(flipped);
  CHECK_FALSE(rep.ok());
  for (const Violation& v : rep.items) CHECK(v.kind == "leibniz");
}

TEST_CASE("restriction to V is the derived bracket family") {
  Fixture f;
  ExtendedBracketStructure ext(f.w.dec, f.D, 4);
  CHECK(v_restriction(ext) == derived_bracket_family(f.w.dec, f.D, 4));

  // With D = 0 every restricted table is empty.
  Derivation zero(f.w.L, GradedLinearMap::zero(f.w.L->space(), f.w.L->space(), 1));
  ExtendedBracketStructure zext(f.w.dec, zero, 3);
  SymmetricBracketFamily zfam = v_restriction(zext);
  for (const auto& [arity, table] : zfam.tables()) CHECK(table.empty());
  CHECK(check_binary_leibniz(f.w.dec, zero).ok());
}

TEST_CASE("evaluator is graded-symmetric under exhaustive permutations") {
  Fixture f;
  ExtendedBracketStructure ext(f.w.dec, f.D, 4);
  const SpacePtr& m = ext.space();
  for (int arity = 2; arity <= 4; ++arity)
    for (const std::vector<int>& t : enumerate_canonical_tuples(*m, arity)) {
      Element canon = ext.eval_canonical(t);
      std::vector<int> perm(t);
      std::sort(perm.begin(), perm.end());
      do {
        CanonicalTuple ct = canonicalize_tuple(perm, m->parities());
        Element via_perm = ext.eval_tuple(perm);
        if (ct.sign == 0)
          CHECK(via_perm.is_zero());
        else
          CHECK(via_perm == canon.scaled(Rat(ct.sign)));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("all generalized Jacobi identities hold on the W(2) fibre") {
  Fixture f;
  ExtendedBracketStructure ext(f.w.dec, f.D, 4);

  JacobiatorReport rep = verify_linfinity(ext, 4, false);
  CHECK(rep.all_zero());
  REQUIRE(rep.blocks.size() == 4);
  for (const auto& b : rep.blocks) CHECK(b.checked > 0);
  // Arities 1..3 have no vacuous tuples; arity 4 skips the ones with three or
  // four reversed arguments.
  CHECK(rep.blocks[0].skipped == 0);
  CHECK(rep.blocks[1].skipped == 0);
  CHECK(rep.blocks[2].skipped == 0);
  CHECK(rep.blocks[3].skipped > 0);
  for (const auto& s : rep.skips) {
    CHECK(s.arity == 4);
    int c = 0;
    while (c < 4 && s.tuple[c] < 8) ++c;
    CHECK(c >= 3);
  }

  // Brute-forcing the vacuous tuples evaluates them all and still finds zero.
  JacobiatorReport brute = verify_linfinity(ext, 4, true);
  CHECK(brute.all_zero());
  CHECK(brute.skips.empty());
  int plain_checked = 0, brute_checked = 0;
  for (const auto& b : rep.blocks) plain_checked += b.checked + b.skipped;
  for (const auto& b : brute.blocks) brute_checked += b.checked;
  CHECK(plain_checked == brute_checked);

  CHECK_THROWS_AS(verify_linfinity(ext, 5, false), std::invalid_argument);
}

TEST_CASE("a broken Jacobi identity in L surfaces as a Jacobiator defect") {
  SpacePtr s = make_space({"k0", "a", "b"}, {1, 0, 1});
  AlgebraPtr good = make_algebra(s, {{0, 1, 2, Rat(1)}});
  AlgebraPtr bad = make_algebra(s, {{0, 1, 2, Rat(1)}, {0, 2, 1, Rat(1)}});
  CHECK(validate_lie_superalgebra(*good).ok());
  CHECK_FALSE(validate_lie_superalgebra(*bad).ok());

  for (bool broken : {false, true}) {
    AlgebraPtr L = broken ? bad : good;
    Decomposition dec(L, {0}, {1, 2}, true);
    CHECK(validate_decomposition(dec).ok());
    Derivation zero(L, GradedLinearMap::zero(s, s, 1));
    ExtendedBracketStructure ext(dec, zero, 3);
    JacobiatorReport rep = verify_linfinity(ext, 3, false);
    if (!broken) {
      CHECK(rep.all_zero());
    } else {
      CHECK_FALSE(rep.all_zero());
      bool has_triple = false;
      for (const auto& d : rep.defects) {
        CHECK(d.arity == 3);
        int c = 0;
        while (c < 3 && d.tuple[c] < 3) ++c;
        if (c == 3) has_triple = true;
      }
      CHECK(has_triple);  // the defect sits on reversed triples: L's Jacobi
    }
  }
}

TEST_CASE("operator-algebra fibre also satisfies the identities") {
  EndGrassmann eg = gen_end_grassmann(2);
  RatMat delta_op = eg.lambda.derivative_operator(0).add(eg.lambda.derivative_operator(1));
  Derivation D = inner_derivation(eg.L, eg.element_from_operator(delta_op));
  ExtendedBracketStructure ext(eg.dec, D, 3);
  CHECK(check_binary_leibniz(ext).ok());
  JacobiatorReport rep = verify_linfinity(ext, 3, false);
  CHECK(rep.all_zero());
}

TEST_CASE("construction rejects unsuitable input") {
  Fixture f;
  const SpacePtr& s = f.w.L->space();
  // Even derivation.
  CHECK_THROWS_AS(ExtendedBracketStructure(f.w.dec, Derivation(f.w.L, GradedLinearMap::identity(s)), 3),
                  std::invalid_argument);
  // Odd but does not square to zero.
  Element mix = Element::basis(s, f.w.basis_index(1, 1)).add(Element::basis(s, f.w.basis_index(2, 0)));
  CHECK_THROWS_AS(ExtendedBracketStructure(f.w.dec, inner_derivation(f.w.L, mix), 3),
                  std::invalid_argument);
  // Moves K into V.
  Derivation add1 = inner_derivation(f.w.L, Element::basis(s, f.w.basis_index(0, 0)));
  CHECK_THROWS_AS(ExtendedBracketStructure(f.w.dec, add1, 3), std::invalid_argument);
  // Non-abelian flag.
  std::vector<int> all(8);
  for (int i = 0; i < 8; ++i) all[i] = i;
  Decomposition full(f.w.L, {}, all, false);
  CHECK_THROWS_AS(ExtendedBracketStructure(full, f.D, 3), std::invalid_argument);
  // Arity window.
  CHECK_THROWS_AS(ExtendedBracketStructure(f.w.dec, f.D, 0), std::invalid_argument);
}
