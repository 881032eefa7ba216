#include "hdb/homotopy.hpp"

#include <stdexcept>
#include <utility>

namespace hdb {

namespace {

// Assembles a direct-sum basis; reversed blocks flip parities and wrap names.
struct BlockBuilder {
  std::vector<std::string> names;
  std::vector<int> parities;
  std::vector<int> offsets;

  int add(const SpacePtr& s, bool reversed) {
    int off = static_cast<int>(names.size());
    offsets.push_back(off);
    for (int i = 0; i < s->dim(); ++i) {
      names.push_back(reversed ? "Pi(" + s->name(i) + ")" : s->name(i));
      parities.push_back(reversed ? (s->parity(i) ^ 1) : s->parity(i));
    }
    return off;
  }
  SpacePtr space() const { return make_space(names, parities); }
};

void put(RatMat& m, int r0, int c0, const RatMat& b, const Rat& s) {
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) m.at(r0 + r, c0 + c) += b.at(r, c) * s;
}

void put_identity(RatMat& m, int r0, int c0, int n, const Rat& s) {
  for (int i = 0; i < n; ++i) m.at(r0 + i, c0 + i) += s;
}

RatMat submatrix(const RatMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  RatMat out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out.at(static_cast<int>(r), static_cast<int>(c)) = m.at(rows[r], cols[c]);
  return out;
}

std::vector<int> parity_positions(const SpacePtr& s, int p) {
  std::vector<int> out;
  for (int i = 0; i < s->dim(); ++i)
    if (s->parity(i) == p) out.push_back(i);
  return out;
}

RatMat from_columns(int rows, const std::vector<std::vector<Rat>>& cols) {
  RatMat m(rows, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < rows; ++r) m.at(r, static_cast<int>(c)) = cols[c][r];
  return m;
}

std::vector<Rat> column_of(const RatMat& m, int c) {
  std::vector<Rat> v(m.rows());
  for (int r = 0; r < m.rows(); ++r) v[r] = m.at(r, c);
  return v;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != n) throw std::invalid_argument("inverse: singular matrix");
  RatMat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
  return out;
}

}  // namespace

Complex::Complex(SpacePtr space, RatMat d) : d_(space, space, 1, std::move(d)) {}

ChainMap::ChainMap(Complex source, Complex target, RatMat f)
    : source_(std::move(source)),
      target_(std::move(target)),
      f_(source_.space(), target_.space(), 0, std::move(f)) {}

ValidationReport validate_complex(const Complex& x) {
  ValidationReport rep;
  RatMat sq = x.d().matrix().mul(x.d().matrix());
  for (int c = 0; c < sq.cols(); ++c)
    for (int r = 0; r < sq.rows(); ++r)
      if (cmp(sq.at(r, c), 0) != 0) {
        rep.items.push_back({"square",
                             {c},
                             "d(d(" + x.space()->name(c) + ")) has nonzero coefficient on " +
                                 x.space()->name(r)});
        break;
      }
  return rep;
}

ValidationReport validate_chain_map(const ChainMap& f) {
  ValidationReport rep;
  RatMat def = f.target().d().matrix().mul(f.map().matrix());
  def = def.sub(f.map().matrix().mul(f.source().d().matrix()));
  for (int c = 0; c < def.cols(); ++c)
    for (int r = 0; r < def.rows(); ++r)
      if (cmp(def.at(r, c), 0) != 0) {
        rep.items.push_back({"chain-map",
                             {c},
                             "d(f(" + f.source().space()->name(c) + ")) != f(d(" +
                                 f.source().space()->name(c) + "))"});
        break;
      }
  return rep;
}

Complex parity_reverse_complex(const Complex& x) {
  return Complex(parity_reverse(*x.space()), x.d().matrix().scaled(-1));
}

Cylinder cylinder(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  int nx = x.dim(), ny = y.dim();
  BlockBuilder bb;
  int o0 = bb.add(x.space(), false);
  int o1 = bb.add(x.space(), true);
  int o2 = bb.add(y.space(), false);
  SpacePtr sp = bb.space();
  int n = sp->dim();

  RatMat d(n, n);
  put(d, o0, o0, x.d().matrix(), 1);
  put_identity(d, o0, o1, nx, -1);
  put(d, o1, o1, x.d().matrix(), -1);
  put(d, o2, o1, f.map().matrix(), 1);
  put(d, o2, o2, y.d().matrix(), 1);
  Complex total(sp, d);

  RatMat jm(n, nx);
  put_identity(jm, o0, 0, nx, 1);
  RatMat im(n, ny);
  put_identity(im, o2, 0, ny, 1);
  RatMat pm(ny, n);
  put(pm, 0, o0, f.map().matrix(), 1);
  put_identity(pm, 0, o2, ny, 1);

  return Cylinder{total, ChainMap(x, total, jm), ChainMap(y, total, im), ChainMap(total, y, pm)};
}

Cone cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  int nx = x.dim(), ny = y.dim();
  BlockBuilder bb;
  int o0 = bb.add(x.space(), true);
  int o1 = bb.add(y.space(), false);
  SpacePtr sp = bb.space();
  int n = sp->dim();

  RatMat d(n, n);
  put(d, o0, o0, x.d().matrix(), -1);
  put(d, o1, o0, f.map().matrix(), 1);
  put(d, o1, o1, y.d().matrix(), 1);
  Complex total(sp, d);

  RatMat im(n, ny);
  put_identity(im, o1, 0, ny, 1);
  RatMat om(nx, n);
  put_identity(om, 0, o0, nx, 1);

  return Cone{total, ChainMap(y, total, im), ChainMap(total, parity_reverse_complex(x), om)};
}

Cocylinder cocylinder(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  int nx = x.dim(), ny = y.dim();
  BlockBuilder bb;
  int o0 = bb.add(x.space(), false);
  int o1 = bb.add(y.space(), false);
  int o2 = bb.add(y.space(), true);
  SpacePtr sp = bb.space();
  int n = sp->dim();

  RatMat d(n, n);
  put(d, o0, o0, x.d().matrix(), 1);
  put(d, o1, o1, y.d().matrix(), 1);
  put(d, o2, o0, f.map().matrix(), 1);
  put_identity(d, o2, o1, ny, -1);
  put(d, o2, o2, y.d().matrix(), -1);
  Complex total(sp, d);

  RatMat jm(n, nx);
  put_identity(jm, o0, 0, nx, 1);
  put(jm, o1, 0, f.map().matrix(), 1);
  RatMat pm(ny, n);
  put_identity(pm, 0, o1, ny, 1);
  RatMat qm(nx, n);
  put_identity(qm, 0, o0, nx, 1);

  return Cocylinder{total, ChainMap(x, total, jm), ChainMap(total, y, pm), ChainMap(total, x, qm)};
}

Cocone cocone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  int nx = x.dim(), ny = y.dim();
  BlockBuilder bb;
  int o0 = bb.add(x.space(), false);
  int o1 = bb.add(y.space(), true);
  SpacePtr sp = bb.space();
  int n = sp->dim();

  RatMat d(n, n);
  put(d, o0, o0, x.d().matrix(), 1);
  put(d, o1, o0, f.map().matrix(), 1);
  put(d, o1, o1, y.d().matrix(), -1);
  Complex total(sp, d);

  RatMat im(n, ny);
  put_identity(im, o1, 0, ny, 1);
  RatMat om(nx, n);
  put_identity(om, 0, o0, nx, 1);

  return Cocone{total, ChainMap(parity_reverse_complex(y), total, im), ChainMap(total, x, om)};
}

bool cone_cocone_match(const ChainMap& f) {
  Complex reversed_cone = parity_reverse_complex(cone(f).total);
  ChainMap neg(f.source(), f.target(), f.map().matrix().scaled(-1));
  Complex cocone_total = cocone(neg).total;
  if (reversed_cone.dim() != cocone_total.dim()) return false;
  if (reversed_cone.space()->parities() != cocone_total.space()->parities()) return false;
  return reversed_cone.d().matrix() == cocone_total.d().matrix();
}

namespace {

struct ParityData {
  std::vector<int> pos;        // positions of this parity in the full space
  RatMat boundaries;           // d-image landing here, in block coordinates
  std::vector<std::vector<Rat>> reps;  // homology representatives, block coords
};

ParityData parity_block(const Complex& x, int p) {
  ParityData out;
  out.pos = parity_positions(x.space(), p);
  std::vector<int> other = parity_positions(x.space(), p ^ 1);
  RatMat cycles_mat = submatrix(x.d().matrix(), other, out.pos);
  out.boundaries = submatrix(x.d().matrix(), out.pos, other);
  RatMat z = kernel_basis(cycles_mat);

  std::vector<std::vector<Rat>> span_cols;
  for (int c = 0; c < out.boundaries.cols(); ++c) span_cols.push_back(column_of(out.boundaries, c));
  for (int c = 0; c < z.cols(); ++c) {
    std::vector<Rat> cand = column_of(z, c);
    RatMat m = from_columns(static_cast<int>(out.pos.size()), span_cols);
    if (!solve(m, cand)) {
      span_cols.push_back(cand);
      out.reps.push_back(std::move(cand));
    }
  }
  return out;
}

ParityHomology to_parity_homology(const Complex& x, const ParityData& pd) {
  ParityHomology out;
  out.dim = static_cast<int>(pd.reps.size());
  for (const std::vector<Rat>& r : pd.reps) {
    Element e = Element::zero(x.space());
    for (size_t i = 0; i < pd.pos.size(); ++i) e.coeff(pd.pos[i]) = r[i];
    out.reps.push_back(e);
  }
  return out;
}

}  // namespace

Homology homology(const Complex& x) {
  if (!validate_complex(x).ok()) throw std::invalid_argument("homology: differential does not square to zero");
  Homology h;
  h.even = to_parity_homology(x, parity_block(x, 0));
  h.odd = to_parity_homology(x, parity_block(x, 1));
  return h;
}

namespace {

RatMat induced_on_parity(const ChainMap& f, int p) {
  ParityData px = parity_block(f.source(), p);
  ParityData py = parity_block(f.target(), p);
  int hy = static_cast<int>(py.reps.size());

  // Columns: [target representatives | target boundaries]; coordinates of a
  // cycle in the first block are its homology coordinates.
  std::vector<std::vector<Rat>> cols = py.reps;
  for (int c = 0; c < py.boundaries.cols(); ++c) cols.push_back(column_of(py.boundaries, c));
  RatMat basis = from_columns(static_cast<int>(py.pos.size()), cols);

  RatMat out(hy, static_cast<int>(px.reps.size()));
  for (size_t c = 0; c < px.reps.size(); ++c) {
    std::vector<Rat> full(f.source().dim(), Rat(0));
    for (size_t i = 0; i < px.pos.size(); ++i) full[px.pos[i]] = px.reps[c][i];
    std::vector<Rat> img = f.map().apply(full);
    std::vector<Rat> img_p(py.pos.size());
    for (size_t i = 0; i < py.pos.size(); ++i) img_p[i] = img[py.pos[i]];
    std::optional<std::vector<Rat>> sol = solve(basis, img_p);
    if (!sol) throw std::logic_error("induced_homology_map: image of a cycle is not a cycle");
    for (int r = 0; r < hy; ++r) out.at(r, static_cast<int>(c)) = (*sol)[r];
  }
  return out;
}

}  // namespace

InducedMap induced_homology_map(const ChainMap& f) {
  if (!validate_chain_map(f).ok())
    throw std::invalid_argument("induced_homology_map: not a chain map");
  return InducedMap{induced_on_parity(f, 0), induced_on_parity(f, 1)};
}

bool is_quasi_iso(const ChainMap& f) {
  InducedMap m = induced_homology_map(f);
  if (m.even.rows() != m.even.cols() || m.odd.rows() != m.odd.cols()) return false;
  return rank(m.even) == m.even.rows() && rank(m.odd) == m.odd.rows();
}

namespace {

int rand_below(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

Rat rand_shear(std::mt19937_64& rng) {
  static const int vals[] = {-2, -1, 1, 2};
  return Rat(vals[rand_below(rng, 4)]);
}

}  // namespace

Complex random_complex(std::mt19937_64& rng, int max_dim) {
  int n = 1 + rand_below(rng, max_dim);
  int pairs = rand_below(rng, n / 2 + 1);
  int zeros = n - 2 * pairs;

  std::vector<std::string> names;
  std::vector<int> parities;
  RatMat d(n, n);
  int at = 0;
  for (int i = 0; i < zeros; ++i) {
    names.push_back("e" + std::to_string(at + 1));
    parities.push_back(rand_below(rng, 2));
    ++at;
  }
  for (int i = 0; i < pairs; ++i) {
    int p = rand_below(rng, 2);
    names.push_back("e" + std::to_string(at + 1));
    parities.push_back(p);
    names.push_back("e" + std::to_string(at + 2));
    parities.push_back(p ^ 1);
    d.at(at + 1, at) = rand_shear(rng);  // d(u) = lambda v, d(v) = 0
    at += 2;
  }

  // Conjugate by a random even invertible map (products of same-parity shears).
  RatMat t = RatMat::identity(n);
  for (int s = 0; s < 2 * n; ++s) {
    int i = rand_below(rng, n), j = rand_below(rng, n);
    if (i == j || parities[i] != parities[j]) continue;
    Rat lambda = rand_shear(rng);
    for (int c = 0; c < n; ++c) t.at(i, c) += lambda * t.at(j, c);
  }
  RatMat dd = t.mul(d).mul(inverse(t));
  return Complex(make_space(names, parities), dd);
}

ChainMap random_chain_map(std::mt19937_64& rng, const Complex& x, const Complex& y) {
  int nx = x.dim(), ny = y.dim();
  std::vector<std::pair<int, int>> unknowns;  // (row in y, col in x), even only
  for (int r = 0; r < ny; ++r)
    for (int c = 0; c < nx; ++c)
      if (y.space()->parity(r) == x.space()->parity(c)) unknowns.push_back({r, c});

  RatMat m(ny * nx, static_cast<int>(unknowns.size()));
  for (size_t u = 0; u < unknowns.size(); ++u) {
    auto [r, c] = unknowns[u];
    for (int i = 0; i < ny; ++i) m.at(i * nx + c, static_cast<int>(u)) += y.d().matrix().at(i, r);
    for (int j = 0; j < nx; ++j) m.at(r * nx + j, static_cast<int>(u)) -= x.d().matrix().at(c, j);
  }
  RatMat basis = kernel_basis(m);

  RatMat f(ny, nx);
  for (int b = 0; b < basis.cols(); ++b) {
    Rat lambda(rand_below(rng, 5) - 2);
    if (cmp(lambda, 0) == 0) continue;
    for (size_t u = 0; u < unknowns.size(); ++u)
      f.at(unknowns[u].first, unknowns[u].second) += lambda * basis.at(static_cast<int>(u), b);
  }
  return ChainMap(x, y, f);
}

SmallCocylinder small_cocylinder(const Decomposition& dec, const Derivation& D) {
  if (D.algebra() != dec.algebra())
    throw std::invalid_argument("small_cocylinder: derivation is over a different algebra");
  if (D.parity() != 1) throw std::invalid_argument("small_cocylinder: derivation must be odd");
  if (!derivation_square(D).map().matrix().is_zero())
    throw std::invalid_argument("small_cocylinder: derivation must square to zero");
  if (!check_preserves_k(dec, D))
    throw std::invalid_argument("small_cocylinder: derivation must preserve the complement");

  const SpacePtr& ls = dec.algebra()->space();
  int nl = ls->dim();
  int nv = dec.v_space()->dim();
  int nk = dec.k_space()->dim();
  const RatMat& dm = D.map().matrix();

  // V-restriction, V-embedding, K-restriction, K-embedding as plain matrices.
  RatMat rv(nv, nl), ev(nl, nv), rk(nk, nl), ek(nl, nk);
  for (int i = 0; i < nv; ++i) rv.at(i, dec.l_index_of_v(i)) = 1;
  for (int i = 0; i < nv; ++i) ev.at(dec.l_index_of_v(i), i) = 1;
  for (int i = 0; i < nk; ++i) rk.at(i, dec.l_index_of_k(i)) = 1;
  for (int i = 0; i < nk; ++i) ek.at(dec.l_index_of_k(i), i) = 1;

  Complex on_l(ls, dm);
  Complex on_k(dec.k_space(), rk.mul(dm).mul(ek));

  BlockBuilder bb;
  int o0 = bb.add(ls, false);
  int o1 = bb.add(dec.v_space(), true);
  SpacePtr sp = bb.space();
  int n = sp->dim();

  RatMat d(n, n);
  put(d, o0, o0, dm, 1);
  put(d, o1, o0, rv, -1);
  put(d, o1, o1, rv.mul(dm).mul(ev), -1);
  Complex total(sp, d);

  RatMat jm(n, nk);
  put(jm, o0, 0, ek, 1);
  RatMat pm(nl, n);
  put_identity(pm, 0, o0, nl, 1);
  RatMat qm(nk, n);
  put(qm, 0, o0, rk, 1);
  put(qm, 0, o1, rk.mul(dm).mul(ev), 1);

  BlockBuilder sb;
  int s0 = sb.add(ls, true);
  int s1 = sb.add(dec.v_space(), false);
  SpacePtr ssp = sb.space();
  RatMat sd(n, n);
  put(sd, s0, s0, dm, -1);
  put(sd, s1, s0, rv, 1);
  put(sd, s1, s1, rv.mul(dm).mul(ev), 1);
  Complex shifted(ssp, sd);

  return SmallCocylinder{on_l,
                         on_k,
                         total,
                         ChainMap(on_k, total, jm),
                         ChainMap(total, on_l, pm),
                         ChainMap(total, on_k, qm),
                         shifted};
}

}  // namespace hdb
