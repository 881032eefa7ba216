// Acceptance checks, one line of output per criterion; exits nonzero if any
// criterion fails. Criteria with a stated runtime budget fail when they
// exceed it.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hdb/field.hpp"
#include "hdb/io.hpp"
#include "hdb/linfinity.hpp"

using namespace hdb;

namespace {

int failures = 0;

struct Criterion {
  int number;
  const char* title;
  bool ok = true;
  std::string detail;
};

void expect(Criterion& c, bool cond, const std::string& what) {
  if (cond) return;
  c.ok = false;
  if (c.detail.find(what) != std::string::npos) return;
  if (!c.detail.empty()) c.detail += "; ";
  c.detail += what;
}

template <typename F>
void run(int number, const char* title, double budget_seconds, F&& body) {
  Criterion c{number, title};
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    expect(c, false, std::string("exception: ") + e.what());
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0 && seconds > budget_seconds)
    expect(c, false, "exceeded the " + std::to_string((int)budget_seconds) + " s budget");
  std::printf("%s criterion %02d: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", number, title,
              seconds, c.detail.empty() ? "" : " - ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

// so(3)-style table: satisfies Jacobi.
GConstants good3() {
  return GConstants{3, {{0, 1, 2, Rat(1)}, {1, 2, 0, Rat(1)}, {0, 2, 1, Rat(-1)}}};
}

// Breaks Jacobi on (0,1,2).
GConstants bad3() { return GConstants{3, {{0, 1, 2, Rat(1)}, {0, 2, 0, Rat(1)}}}; }

GConstants aff2() { return GConstants{2, {{0, 1, 0, Rat(1)}}}; }

Derivation ce_derivation(const WnAlgebra& w, const GConstants& g) {
  return inner_derivation(w.L, gen_ce_field(w, g));
}

Element random_homogeneous(std::mt19937_64& rng, const SpacePtr& space,
                           const std::vector<int>& support, int parity) {
  Element x = Element::zero(space);
  bool nonzero = false;
  for (int i : support)
    if (space->parity(i) == parity) {
      long v = static_cast<long>(rng() % 5) - 2;
      x.coeff(i) = v;
      nonzero |= v != 0;
    }
  if (!nonzero)
    for (int i : support)
      if (space->parity(i) == parity) {
        x.coeff(i) = 1;
        break;
      }
  return x;
}

std::string capture(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "(popen failed)";
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

std::string locate_cli(const char* argv0) {
  if (const char* env = std::getenv("HDB_CLI")) return env;
  std::filesystem::path sibling = std::filesystem::path(argv0).parent_path() / "hdb";
  if (std::filesystem::exists(sibling)) return sibling.string();
  return "";
}

}  // namespace

int main(int, char** argv) {
  run(1, "shuffle identity on W(3) for quadratic fields", 60, [](Criterion& c) {
    WnAlgebra w = gen_wn(3);
    for (const GConstants& g : {good3(), bad3()}) {
      JacobiatorReport rep = verify_main_theorem(w.dec, ce_derivation(w, g), 4);
      expect(c, rep.all_zero(), "identity defect");
      int checked = 0;
      for (const auto& b : rep.blocks) checked += b.checked;
      expect(c, checked == 7, "tuple coverage");
    }
    Derivation dg = ce_derivation(w, good3());
    expect(c, derivation_square(dg).map().matrix().is_zero(), "valid table should square to zero");
    SymmetricBracketFamily fam = derived_bracket_family(w.dec, dg, 4);
    for (int n = 1; n <= 4; ++n)
      for (const auto& t : enumerate_canonical_tuples(*w.dec.v_space(), n))
        expect(c, jacobiator(fam, t).is_zero(), "jacobiator of a valid table");
    Derivation db = ce_derivation(w, bad3());
    expect(c, !derivation_square(db).map().matrix().is_zero(),
           "broken table should not square to zero");
  });

  run(2, "binary derived bracket reconstructs the structure constants", 0, [](Criterion& c) {
    WnAlgebra w = gen_wn(3);
    GConstants g = good3();
    SymmetricBracketFamily fam = derived_bracket_family(w.dec, ce_derivation(w, g), 4);
    // Global sign +1, pinned by composing the operators directly.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Element want = Element::zero(w.dec.v_space());
        for (const SCEntry& e : g.entries) {
          if (e.i == i && e.j == j) want.coeff(e.k) += e.value;
          if (e.i == j && e.j == i) want.coeff(e.k) -= e.value;
        }
        expect(c, fam.eval_tuple({i, j}) == want, "constants mismatch");
      }
    for (int n : {1, 3, 4})
      for (const auto& t : enumerate_canonical_tuples(*w.dec.v_space(), n))
        expect(c, fam.eval_canonical(t).is_zero(), "non-binary bracket of a quadratic field");
  });

  run(3, "third-order operations of the triple derivative", 30, [](Criterion& c) {
    EndGrassmann eg = gen_end_grassmann(3);
    RatMat op = eg.lambda.derivative_operator(0).mul(
        eg.lambda.derivative_operator(1).mul(eg.lambda.derivative_operator(2)));
    Derivation d = inner_derivation(eg.L, eg.element_from_operator(op));
    expect(c, d.parity() == 1, "parity");
    expect(c, derivation_square(d).map().matrix().is_zero(), "square");
    expect(c, derivation_order(eg.dec, d, 5) == 3, "order");
    SymmetricBracketFamily fam = derived_bracket_family(eg.dec, d, 5);
    for (int n : {4, 5})
      for (const auto& t : enumerate_canonical_tuples(*eg.dec.v_space(), n))
        expect(c, fam.eval_canonical(t).is_zero(), "bracket of arity >= 4");
    // Top bracket on the three coordinate multiplications: a unit multiple of
    // the constant operator.
    Element top = fam.eval_tuple({eg.mult_index(1), eg.mult_index(2), eg.mult_index(4)});
    expect(c, top.support() == std::vector<int>{eg.mult_index(0)}, "symbol support");
    expect(c, !top.is_zero() && top.coeff(eg.mult_index(0)) * top.coeff(eg.mult_index(0)) == 1,
           "symbol magnitude");
    expect(c, verify_main_theorem(eg.dec, d, 4).all_zero(), "jacobiators");
  });

  run(4, "fibration lemma for the small cocylinder on W(2)", 0, [](Criterion& c) {
    WnAlgebra w = gen_wn(2);
    SmallCocylinder sc = small_cocylinder(w.dec, ce_derivation(w, aff2()));
    expect(c, validate_complex(sc.total).ok(), "d^2 on L + PiV");
    expect(c, validate_chain_map(sc.j).ok(), "j chain map");
    expect(c, validate_chain_map(sc.p).ok(), "p chain map");
    expect(c, validate_chain_map(sc.q).ok(), "q chain map");
    int nk = static_cast<int>(w.dec.k_indices().size());
    RatMat incl(w.L->dim(), nk);
    for (int t = 0; t < nk; ++t) incl.at(w.dec.k_indices()[t], t) = 1;
    expect(c, sc.p.map().matrix().mul(sc.j.map().matrix()) == incl, "p o j = i");
    expect(c, sc.q.map().matrix().mul(sc.j.map().matrix()) == RatMat::identity(nk), "q o j = id");
    expect(c, is_quasi_iso(sc.j), "H(j) invertible");
  });

  run(5, "all jacobiators of the extended brackets vanish", 300, [](Criterion& c) {
    auto check_instance = [&c](const Decomposition& dec, const Derivation& d, const char* tag) {
      ExtendedBracketStructure ext(dec, d, 4);
      JacobiatorReport plain = verify_linfinity(ext, 4, false);
      JacobiatorReport brute = verify_linfinity(ext, 4, true);
      expect(c, plain.all_zero(), std::string(tag) + " defect");
      expect(c, brute.all_zero(), std::string(tag) + " brute defect");
      expect(c, !plain.skips.empty(), std::string(tag) + " should have vacuous cases");
      expect(c, brute.skips.empty(), std::string(tag) + " brute skipped something");
      for (size_t i = 0; i < plain.blocks.size(); ++i)
        expect(c,
               brute.blocks[i].checked == plain.blocks[i].checked + plain.blocks[i].skipped &&
                   brute.blocks[i].skipped == 0,
               std::string(tag) + " coverage");
    };
    WnAlgebra w = gen_wn(2);
    check_instance(w.dec, ce_derivation(w, aff2()), "W(2)");
    EndGrassmann eg = gen_end_grassmann(2);
    RatMat op = eg.lambda.derivative_operator(0).add(eg.lambda.derivative_operator(1));
    check_instance(eg.dec, inner_derivation(eg.L, eg.element_from_operator(op)), "EndG(2)");
  });

  run(6, "random chain maps through the four constructions", 0, [](Criterion& c) {
    std::mt19937_64 rng(20240817);
    for (int round = 0; round < 20; ++round) {
      Complex x = random_complex(rng, 6);
      Complex y = random_complex(rng, 6);
      ChainMap f = random_chain_map(rng, x, y);
      expect(c, validate_complex(cylinder(f).total).ok(), "cylinder d^2");
      expect(c, validate_complex(cone(f).total).ok(), "cone d^2");
      expect(c, validate_complex(cocylinder(f).total).ok(), "cocylinder d^2");
      expect(c, validate_complex(cocone(f).total).ok(), "cocone d^2");
      expect(c, is_quasi_iso(cylinder(f).p), "cylinder p quasi-iso");
      expect(c, is_quasi_iso(cocylinder(f).j), "cocylinder j quasi-iso");
      expect(c, cone_cocone_match(f), "reversed cone vs cocone of -f");
    }
  });

  run(7, "generating fields are a homomorphism on W(3)", 0, [](Criterion& c) {
    WnAlgebra w = gen_wn(3);
    std::mt19937_64 rng(911);
    auto random_k_derivation = [&]() {
      return inner_derivation(
          w.L, random_homogeneous(rng, w.L->space(), w.dec.k_indices(),
                                  static_cast<int>(rng() % 2)));
    };
    int odd_checked = 0;
    for (int round = 0; round < 10; ++round) {
      Derivation d1 = random_k_derivation();
      Derivation d2 = random_k_derivation();
      expect(c, check_preserves_k(w.dec, d1) && check_preserves_k(w.dec, d2), "preserves K");
      expect(c, check_generating_field_homomorphism(w.dec, d1, d2, 4), "commutator identity");
      for (const Derivation* d : {&d1, &d2})
        if (d->parity() == 1) {
          FormalVectorField q = generating_field(w.dec, *d, 4);
          expect(c,
                 field_square(q).truncated(3) ==
                     generating_field(w.dec, derivation_square(*d), 4).truncated(3),
                 "square identity");
          ++odd_checked;
        }
    }
    expect(c, odd_checked > 0, "no odd derivations sampled");
  });

  run(8, "transposition identity with non-abelian complements", 0, [](Criterion& c) {
    WnAlgebra w = gen_wn(2);
    Derivation d = ce_derivation(w, aff2());
    Derivation even_d = inner_derivation(w.L, Element::basis(w.L->space(), w.basis_index(1, 0)));
    std::vector<int> all(w.L->dim());
    std::iota(all.begin(), all.end(), 0);
    Decomposition full(w.L, {}, all, false);
    std::vector<int> v_idx, k_idx;
    for (int i = 0; i < w.L->dim(); ++i)
      (__builtin_popcount(static_cast<unsigned>(w.mask_of(i))) <= 1 ? v_idx : k_idx).push_back(i);
    Decomposition wide(w.L, k_idx, v_idx, false);
    for (const Decomposition* dec : {&full, &wide}) {
      expect(c, check_transposition_identity(*dec, d, 4).ok(), "odd derivation defect");
      expect(c, check_transposition_identity(*dec, even_d, 4).ok(), "even derivation defect");
    }
  });

  run(9, "randomized structural properties", 0, [](Criterion& c) {
    std::mt19937_64 rng(424242);
    long cases = 0;

    struct Inst {
      AlgebraPtr L;
      Decomposition dec;
    };
    std::vector<Inst> pool;
    for (int n = 1; n <= 3; ++n) {
      WnAlgebra w = gen_wn(n);
      pool.push_back({w.L, w.dec});
    }
    for (int m = 1; m <= 2; ++m) {
      EndGrassmann e = gen_end_grassmann(m);
      pool.push_back({e.L, e.dec});
    }
    for (const Inst& inst : pool) {
      expect(c, validate_lie_superalgebra(*inst.L).ok(), "algebra axioms");
      // validate_decomposition includes the distributivity identity on all
      // basis pairs.
      expect(c, validate_decomposition(inst.dec).ok(), "decomposition");
      cases += 2;
    }

    for (int round = 0; round < 20; ++round) {
      const Inst& inst = pool[round % pool.size()];
      const SpacePtr& sp = inst.L->space();
      int parity = static_cast<int>(rng() % 2);
      Derivation d = inner_derivation(inst.L, random_homogeneous(rng, sp, inst.dec.k_indices(), parity));
      expect(c, validate_derivation(d).ok(), "leibniz rule");
      ++cases;

      int max_arity = static_cast<int>(inst.dec.v_indices().size()) > 4 ? 3 : 4;
      SymmetricBracketFamily fam = derived_bracket_family(inst.dec, d, max_arity);
      const GradedSpace& vs = *inst.dec.v_space();
      for (int n = 2; n <= max_arity; ++n)
        for (const auto& t : enumerate_canonical_tuples(vs, n)) {
          Element canon = fam.eval_canonical(t);
          std::vector<int> perm = t;
          bool symmetric = true;
          do {
            CanonicalTuple ct = canonicalize_tuple(perm, vs.parities());
            Element want = ct.sign == 0 ? Element::zero(fam.space()) : canon.scaled(Rat(ct.sign));
            symmetric = symmetric && fam.eval_tuple(perm) == want;
          } while (std::next_permutation(perm.begin(), perm.end()));
          expect(c, symmetric, "graded symmetry");
          ++cases;
        }

      Derivation d2 = inner_derivation(inst.L, random_homogeneous(rng, sp, inst.dec.k_indices(), parity));
      SymmetricBracketFamily sum_family =
          derived_bracket_family(inst.dec, d.add(d2), max_arity);
      expect(c,
             sum_family == derived_bracket_family(inst.dec, d, max_arity)
                               .add(derived_bracket_family(inst.dec, d2, max_arity)),
             "linearity in the derivation");
      ++cases;

      bool distrib = true;
      for (int i = 0; i < inst.L->dim() && distrib; ++i)
        for (int j = i; j < inst.L->dim(); ++j) {
          Element a = Element::basis(sp, i);
          Element b = Element::basis(sp, j);
          Element defect = inst.dec.project(inst.L->bracket(a, b))
                               .sub(inst.dec.project(inst.L->bracket(inst.dec.project(a), b)))
                               .sub(inst.dec.project(inst.L->bracket(a, inst.dec.project(b))));
          if (!defect.is_zero()) {
            distrib = false;
            break;
          }
        }
      expect(c, distrib, "distributivity");
      ++cases;
    }
    expect(c, cases >= 200, "only " + std::to_string(cases) + " cases");
    if (c.ok) c.detail = std::to_string(cases) + " cases";
  });

  std::string cli = locate_cli(argv[0]);
  run(10, "deterministic reports and exact round trips", 0, [&cli](Criterion& c) {
    Workspace ce = gen_workspace_ce(aff2());
    std::string text = serialize_workspace(ce);
    expect(c, serialize_workspace(parse_workspace(text)) == text, "workspace round trip");
    std::string constants = serialize_constants(good3());
    expect(c, serialize_constants(parse_constants(constants)) == constants,
           "constants round trip");
    expect(c,
           serialize_report(cmd_jacobi(ce, 4)) ==
               serialize_report(cmd_jacobi(parse_workspace(text), 4)),
           "report determinism");

    expect(c, !cli.empty(), "hdb binary not found (set HDB_CLI)");
    if (cli.empty()) return;
    std::filesystem::path ws_path =
        std::filesystem::temp_directory_path() / "hdb_acceptance_ws.json";
    std::ofstream(ws_path) << text;
    std::string quoted = "\"" + cli + "\" ";
    std::string r1 = capture(quoted + "jacobi \"" + ws_path.string() + "\" 2>/dev/null");
    std::string r2 = capture(quoted + "jacobi \"" + ws_path.string() + "\" 2>/dev/null");
    expect(c, !r1.empty() && r1 == r2, "CLI report bytes differ across runs");
    expect(c, r1 == serialize_report(cmd_jacobi(ce, 4)), "CLI report differs from the library");
    std::string g1 = capture(quoted + "gen wn 2 2>/dev/null");
    std::string g2 = capture(quoted + "gen wn 2 2>/dev/null");
    expect(c, !g1.empty() && g1 == g2 && g1 == serialize_workspace(gen_workspace_wn(2)),
           "generated workspace bytes");
    std::error_code ec;
    std::filesystem::remove(ws_path, ec);
  });

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
