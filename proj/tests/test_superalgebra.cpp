#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>

#include "hdb/generators.hpp"

using namespace hdb;

namespace {

// Operator of the basis field x_A d_i, built directly from its definition.
RatMat field_operator(const GrassmannAlgebra& lam, int mask, int dir) {
  return lam.multiplication_operator(mask).mul(lam.derivative_operator(dir));
}

Rat rat(long n, long d = 1) { return Rat(n, d); }

struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
  int below(int n) { return static_cast<int>(next() >> 33) % n; }
  Rat coeff() {
    Rat r(below(11) - 5, 1 + below(4));
    r.canonicalize();
    return r;
  }
};

Element random_homogeneous(Lcg& rng, const SpacePtr& sp, int parity) {
  Element e = Element::zero(sp);
  for (int i = 0; i < sp->dim(); ++i)
    if (sp->parity(i) == parity) e.coeff(i) = rng.coeff();
  return e;
}

}  // namespace

TEST_CASE("grassmann algebra basics") {
  GrassmannAlgebra lam(3);
  CHECK(lam.dim() == 8);
  CHECK(lam.monomial_name(0) == "1");
  CHECK(lam.monomial_name(1) == "x1");
  CHECK(lam.monomial_name(5) == "x13");
  CHECK(lam.monomial_name(7) == "x123");
  CHECK(lam.parity_of(0) == 0);
  CHECK(lam.parity_of(5) == 0);
  CHECK(lam.parity_of(7) == 1);

  // x1*x2 = x12, x2*x1 = -x12, x1*x1 = 0.
  CHECK(lam.product_sign(1, 2) == 1);
  CHECK(lam.product_sign(2, 1) == -1);
  CHECK(lam.product_sign(1, 1) == 0);
  // x13 * x2 = x1 x3 x2 = -x123.
  CHECK(lam.product_sign(5, 2) == -1);
  // x2 * x13 = x2 x1 x3 = -x123.
  CHECK(lam.product_sign(2, 5) == -1);

  // Left derivative: d1(x12) = x2, d2(x12) = -x1, d2(x123)?
  RatMat d1 = lam.derivative_operator(0), d2 = lam.derivative_operator(1);
  CHECK(d1.at(2, 3) == rat(1));   // column x12 -> x2
  CHECK(d2.at(1, 3) == rat(-1));  // column x12 -> -x1
  // d2(x123) = d2(x1 x2 x3) = -x13 (one generator to cross).
  CHECK(d2.at(5, 7) == rat(-1));
  // Derivatives anticommute: d1 d2 + d2 d1 = 0, d1 d1 = 0.
  CHECK(d1.mul(d2).add(d2.mul(d1)).is_zero());
  CHECK(d1.mul(d1).is_zero());

  // m(x1) d1 + d1 m(x1) = id (canonical anticommutation).
  RatMat m1 = lam.multiplication_operator(1);
  CHECK(m1.mul(d1).add(d1.mul(m1)) == RatMat::identity(8));
}

TEST_CASE("w(1): two-dimensional structure, frozen signs") {
  WnAlgebra w = gen_wn(1);
  REQUIRE(w.L->dim() == 2);
  CHECK(w.L->space()->name(0) == "d1");
  CHECK(w.L->space()->name(1) == "x1.d1");
  CHECK(w.L->space()->parity(0) == 1);
  CHECK(w.L->space()->parity(1) == 0);

  // [d1, x1.d1] = d1, [x1.d1, d1] = -d1, [d1, d1] = 0, [x1.d1, x1.d1] = 0.
  auto b01 = w.L->bracket_basis(0, 1);
  REQUIRE(b01.size() == 1);
  CHECK(b01.at(0) == rat(1));
  auto b10 = w.L->bracket_basis(1, 0);
  REQUIRE(b10.size() == 1);
  CHECK(b10.at(0) == rat(-1));
  CHECK(w.L->bracket_basis(0, 0).empty());
  CHECK(w.L->bracket_basis(1, 1).empty());

  CHECK(validate_lie_superalgebra(*w.L).ok());
  CHECK(validate_decomposition(w.dec).ok());
}

TEST_CASE("w(n): dimensions, names, validity") {
  for (int n = 1; n <= 3; ++n) {
    WnAlgebra w = gen_wn(n);
    CHECK(w.L->dim() == n * (1 << n));
    CHECK(validate_lie_superalgebra(*w.L).ok());
    CHECK(validate_decomposition(w.dec).ok());
    CHECK(w.dec.abelian());
    CHECK(static_cast<int>(w.dec.v_indices().size()) == n);
    // Constant fields first.
    for (int i = 0; i < n; ++i) CHECK(w.dec.v_indices()[i] == i);
  }
  WnAlgebra w2 = gen_wn(2);
  CHECK(w2.L->space()->name(w2.basis_index(3, 0)) == "x12.d1");
  WnAlgebra w3 = gen_wn(3);
  CHECK(w3.L->space()->name(w3.basis_index(5, 2)) == "x13.d3");
  CHECK(w3.L->space()->name(0) == "d1");
  CHECK(w3.L->space()->parity(w3.basis_index(5, 2)) == 1);
}

TEST_CASE("w(n) structure constants match operator commutators") {
  for (int n = 1; n <= 3; ++n) {
    WnAlgebra w = gen_wn(n);
    GrassmannAlgebra lam(n);
    int dim = w.L->dim();
    std::vector<RatMat> ops;
    std::vector<int> par;
    for (int idx = 0; idx < dim; ++idx) {
      ops.push_back(field_operator(lam, w.mask_of(idx), w.dir_of(idx)));
      par.push_back(w.L->space()->parity(idx));
    }
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        RatMat wanted = lam.graded_commutator(ops[i], par[i], ops[j], par[j]);
        RatMat expanded = RatMat(lam.dim(), lam.dim());
        for (const auto& [k, c] : w.L->bracket_basis(i, j))
          expanded = expanded.add(ops[k].scaled(c));
        CHECK(wanted == expanded);
      }
  }
}

TEST_CASE("quadratic field of a lie algebra: coefficients and square") {
  WnAlgebra w = gen_wn(2);
  GConstants g{2, {{0, 1, 0, rat(1)}}};  // [f1, f2] = f1
  Element q = gen_ce_field(w, g);
  // Single monomial -x12.d1.
  for (int idx = 0; idx < w.L->dim(); ++idx)
    CHECK(q.coeff(idx) == (idx == w.basis_index(3, 0) ? rat(-1) : rat(0)));
  CHECK(q.homogeneous_parity() == 1);

  Derivation ad_q = inner_derivation(w.L, q);
  CHECK(ad_q.parity() == 1);
  CHECK(validate_derivation(ad_q).ok());
  CHECK(check_preserves_k(w.dec, ad_q));
  // Jacobi for g <=> (ad q)^2 = 0.
  CHECK(derivation_square(ad_q).map().matrix().is_zero());
  // Frozen: [q, d1] = -x2.d1.
  Element img = ad_q.apply(Element::basis(w.L->space(), 0));
  for (int idx = 0; idx < w.L->dim(); ++idx)
    CHECK(img.coeff(idx) == (idx == w.basis_index(2, 0) ? rat(-1) : rat(0)));

  // Non-Jacobi constants give (ad q)^2 != 0 on W(3).
  WnAlgebra w3 = gen_wn(3);
  GConstants bad{3, {{0, 1, 0, rat(1)}, {1, 2, 1, rat(1)}}};
  Element qb = gen_ce_field(w3, bad);
  Derivation ad_qb = inner_derivation(w3.L, qb);
  CHECK(validate_derivation(ad_qb).ok());  // always a derivation
  CHECK(!derivation_square(ad_qb).map().matrix().is_zero());
}

TEST_CASE("validator reports planted defects") {
  auto sp = make_space({"a", "b"}, {0, 0});
  // c_{ab}^a = 1 and c_{ba}^a = 1 violates antisymmetry for even pairs.
  auto L = make_algebra(sp, {{0, 1, 0, rat(1)}, {1, 0, 0, rat(1)}});
  auto rep = validate_lie_superalgebra(*L);
  CHECK(!rep.ok());
  bool has_anti = false;
  for (const auto& v : rep.items) has_anti = has_anti || v.kind == "antisymmetry";
  CHECK(has_anti);

  // Even diagonal must vanish.
  auto L2 = make_algebra(sp, {{0, 0, 1, rat(1)}});
  auto rep2 = validate_lie_superalgebra(*L2);
  CHECK(!rep2.ok());

  // Jacobi failure: c_{12}^1 = 1, c_{23}^2 = 1 on three even generators.
  auto sp3 = make_space({"f1", "f2", "f3"}, {0, 0, 0});
  auto L3 = make_algebra(sp3, {{0, 1, 0, rat(1)}, {1, 2, 1, rat(1)}});
  auto rep3 = validate_lie_superalgebra(*L3);
  CHECK(!rep3.ok());
  bool has_jac = false;
  for (const auto& v : rep3.items)
    if (v.kind == "jacobi") {
      has_jac = true;
      CHECK(v.where == std::vector<int>{0, 1, 2});
    }
  CHECK(has_jac);
  // Parity mismatch: odd*odd lands even, so an odd target coefficient is flagged.
  auto spm = make_space({"e", "o"}, {0, 1});
  auto L4 = make_algebra(spm, {{1, 1, 1, rat(1)}});
  bool has_par = false;
  for (const auto& v : validate_lie_superalgebra(*L4).items) has_par = has_par || v.kind == "parity";
  CHECK(has_par);
}

TEST_CASE("decomposition validator reports planted defects") {
  // W(2) with V = constants: valid. Moving a quadratic field into V breaks closure.
  WnAlgebra w = gen_wn(2);
  std::vector<int> k_idx, v_idx = {0, 1, w.basis_index(3, 0)};
  for (int i = 0; i < w.L->dim(); ++i)
    if (std::find(v_idx.begin(), v_idx.end(), i) == v_idx.end()) k_idx.push_back(i);
  Decomposition bad(w.L, k_idx, v_idx, true);
  auto rep = validate_decomposition(bad);
  CHECK(!rep.ok());
  bool abelian_defect = false, closure_defect = false;
  for (const auto& v : rep.items) {
    if (v.kind == "v-not-abelian") abelian_defect = true;
    if (v.kind == "v-not-closed" || v.kind == "k-not-closed") closure_defect = true;
  }
  // [x12.d1, d2] = -x1.d1 leaves V and [d1, x12.d1] = x2.d1 shows V non-abelian.
  CHECK(abelian_defect);
  CHECK(closure_defect);
}

TEST_CASE("projector and embeddings") {
  WnAlgebra w = gen_wn(2);
  GradedLinearMap p = w.dec.projector();
  CHECK(p.compose(p).matrix() == p.matrix());
  CHECK(p.parity() == 0);
  for (int i = 0; i < w.L->dim(); ++i) {
    Element e = Element::basis(w.L->space(), i);
    Element pe = w.dec.project(e);
    if (w.dec.in_v(i))
      CHECK(pe == e);
    else
      CHECK(pe.is_zero());
  }
  // embed/restrict round trip on V coordinates.
  Element v = Element::basis(w.dec.v_space(), 1);
  CHECK(w.dec.restrict_v(w.dec.embed_v(v)) == v);
  CHECK(w.dec.v_space()->name(1) == "d2");
  CHECK_THROWS(w.dec.restrict_v(Element::basis(w.L->space(), w.basis_index(1, 0))));
}

TEST_CASE("end of grassmann: structure, frozen brackets, operator oracle") {
  EndGrassmann e1 = gen_end_grassmann(1);
  REQUIRE(e1.L->dim() == 4);
  CHECK(e1.L->space()->name(0) == "m(1)");
  CHECK(e1.L->space()->name(1) == "m(x1)");
  CHECK(e1.L->space()->name(e1.e_index(0, 1)) == "E(1|x1)");
  CHECK(e1.L->space()->name(e1.e_index(1, 1)) == "E(x1|x1)");
  CHECK(e1.L->space()->parity(0) == 0);
  CHECK(e1.L->space()->parity(1) == 1);
  CHECK(e1.L->space()->parity(e1.e_index(0, 1)) == 1);
  CHECK(e1.L->space()->parity(e1.e_index(1, 1)) == 0);

  // [m(x1), E(1|x1)] = m(x1) d1 + d1 m(x1) = id = m(1).
  auto b = e1.L->bracket_basis(1, e1.e_index(0, 1));
  REQUIRE(b.size() == 1);
  CHECK(b.at(0) == rat(1));

  for (int m = 1; m <= 2; ++m) {
    EndGrassmann eg = gen_end_grassmann(m);
    CHECK(eg.L->dim() == (1 << m) * (1 << m));
    CHECK(validate_lie_superalgebra(*eg.L).ok());
    CHECK(validate_decomposition(eg.dec).ok());
    int dim = eg.L->dim();
    // element_from_operator inverts operator_of on the whole basis.
    for (int i = 0; i < dim; ++i) {
      Element ei = Element::basis(eg.L->space(), i);
      CHECK(eg.element_from_operator(eg.operator_of(ei)) == ei);
    }
    // Structure constants match graded commutators of the actual matrices.
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        RatMat wanted = eg.lambda.graded_commutator(
            eg.basis_operator(i), eg.L->space()->parity(i), eg.basis_operator(j),
            eg.L->space()->parity(j));
        CHECK(eg.element_from_operator(wanted) ==
              eg.L->bracket(Element::basis(eg.L->space(), i), Element::basis(eg.L->space(), j)));
      }
  }

  // The derivative operator is E(1|x1) in the adapted basis.
  GrassmannAlgebra lam1(1);
  Element d1 = e1.element_from_operator(lam1.derivative_operator(0));
  CHECK(d1 == Element::basis(e1.L->space(), e1.e_index(0, 1)));

  // m = 3 spot checks (full validation is exercised elsewhere).
  EndGrassmann e3 = gen_end_grassmann(3);
  CHECK(e3.L->dim() == 64);
  CHECK(e3.L->space()->name(e3.e_index(5, 7)) == "E(x13|x123)");
  Element id3 = e3.element_from_operator(RatMat::identity(8));
  CHECK(id3 == Element::basis(e3.L->space(), 0));
}

TEST_CASE("random bracket laws and derivation identities") {
  WnAlgebra w = gen_wn(2);
  EndGrassmann eg = gen_end_grassmann(2);
  Lcg rng(20240817u);
  for (int trial = 0; trial < 60; ++trial) {
    const AlgebraPtr& L = (trial % 2 == 0) ? w.L : eg.L;
    int pa = rng.below(2), pb = rng.below(2), pc = rng.below(2);
    Element a = random_homogeneous(rng, L->space(), pa);
    Element b = random_homogeneous(rng, L->space(), pb);
    Element c = random_homogeneous(rng, L->space(), pc);
    // Graded antisymmetry.
    Rat sgn = (pa == 1 && pb == 1) ? rat(1) : rat(-1);
    CHECK(L->bracket(a, b) == L->bracket(b, a).scaled(sgn));
    // Bilinearity.
    CHECK(L->bracket(a.add(b.scaled(rat(3))), c) ==
          L->bracket(a, c).add(L->bracket(b, c).scaled(rat(3))));
    // Graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{ab} [b,[a,c]].
    Rat jac_sgn = (pa == 1 && pb == 1) ? rat(-1) : rat(1);
    CHECK(L->bracket(a, L->bracket(b, c)) ==
          L->bracket(L->bracket(a, b), c).add(L->bracket(b, L->bracket(a, c)).scaled(jac_sgn)));
    // ad is a homomorphism up to sign: [ad a, ad b] = ad [a, b].
    if (trial < 20) {
      Derivation ada = inner_derivation(L, a), adb = inner_derivation(L, b);
      CHECK(derivation_commutator(ada, adb).map().matrix() ==
            inner_derivation(L, L->bracket(a, b)).map().matrix());
      CHECK(validate_derivation(ada).ok());
    }
  }
}
