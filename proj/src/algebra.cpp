#include "hdb/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdb {

Element::Element(SpacePtr space, std::vector<Rat> coeffs)
    : space_(std::move(space)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != space_->dim())
    throw std::invalid_argument("Element: coefficient count does not match space dimension");
  for (Rat& x : c_) x.canonicalize();
}

Element Element::zero(SpacePtr space) {
  int n = space->dim();
  return Element(std::move(space), std::vector<Rat>(n, Rat(0)));
}

Element Element::basis(SpacePtr space, int i) {
  Element e = zero(std::move(space));
  e.c_.at(i) = 1;
  return e;
}

bool Element::is_zero() const {
  for (const Rat& x : c_)
    if (x != 0) return false;
  return true;
}

std::vector<int> Element::support() const {
  std::vector<int> s;
  for (int i = 0; i < dim(); ++i)
    if (c_[i] != 0) s.push_back(i);
  return s;
}

std::optional<int> Element::homogeneous_parity() const {
  std::optional<int> p;
  for (int i = 0; i < dim(); ++i) {
    if (c_[i] == 0) continue;
    int q = space_->parity(i);
    if (!p) p = q;
    else if (*p != q) return std::nullopt;
  }
  return p;
}

static void require_same_space(const Element& a, const Element& b, const char* who) {
  if (*a.space() != *b.space()) throw std::invalid_argument(std::string(who) + ": space mismatch");
}

Element Element::add(const Element& o) const {
  require_same_space(*this, o, "Element::add");
  std::vector<Rat> c(c_);
  for (int i = 0; i < dim(); ++i) c[i] += o.c_[i];
  return Element(space_, std::move(c));
}

Element Element::sub(const Element& o) const {
  require_same_space(*this, o, "Element::sub");
  std::vector<Rat> c(c_);
  for (int i = 0; i < dim(); ++i) c[i] -= o.c_[i];
  return Element(space_, std::move(c));
}

Element Element::scaled(const Rat& s) const {
  std::vector<Rat> c(c_);
  for (Rat& x : c) x *= s;
  return Element(space_, std::move(c));
}

bool Element::operator==(const Element& o) const {
  if (*space_ != *o.space_) return false;
  // cmp is safe on values that were never canonicalized (mpq_equal is not).
  for (size_t i = 0; i < c_.size(); ++i)
    if (cmp(c_[i], o.c_[i]) != 0) return false;
  return true;
}

std::string Element::to_string() const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_rational(c_[i]) + ")*" + space_->name(i);
  }
  return out.empty() ? "0" : out;
}

LieSuperalgebra::LieSuperalgebra(SpacePtr space, const std::vector<SCEntry>& entries)
    : space_(std::move(space)) {
  const int n = space_->dim();
  for (const SCEntry& e : entries) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.k < 0 || e.k >= n)
      throw std::invalid_argument("LieSuperalgebra: structure constant index out of range");
    if (e.value == 0) continue;
    auto& row = table_[{e.i, e.j}];
    if (row.count(e.k))
      throw std::invalid_argument("LieSuperalgebra: duplicate structure constant entry (" +
                                  std::to_string(e.i) + "," + std::to_string(e.j) + "," +
                                  std::to_string(e.k) + ")");
    Rat v = e.value;
    v.canonicalize();
    row[e.k] = v;
  }
}

std::map<int, Rat> LieSuperalgebra::bracket_basis(int i, int j) const {
  auto it = table_.find({i, j});
  if (it != table_.end()) return it->second;
  auto rev = table_.find({j, i});
  if (rev != table_.end()) {
    // c_{ij}^k = -(-1)^{p_i p_j} c_{ji}^k
    int sgn = (space_->parity(i) == 1 && space_->parity(j) == 1) ? 1 : -1;
    std::map<int, Rat> out;
    for (const auto& [k, v] : rev->second) out[k] = Rat(sgn) * v;
    return out;
  }
  return {};
}

Element LieSuperalgebra::bracket(const Element& a, const Element& b) const {
  if (*a.space() != *space_ || *b.space() != *space_)
    throw std::invalid_argument("LieSuperalgebra::bracket: element not in this algebra");
  Element out = Element::zero(space_);
  for (int i : a.support())
    for (int j : b.support()) {
      Rat f = a.coeff(i) * b.coeff(j);
      for (const auto& [k, v] : bracket_basis(i, j)) out.coeff(k) += f * v;
    }
  return out;
}

AlgebraPtr make_algebra(SpacePtr space, const std::vector<SCEntry>& entries) {
  return std::make_shared<LieSuperalgebra>(std::move(space), entries);
}

ValidationReport validate_lie_superalgebra(const LieSuperalgebra& L) {
  ValidationReport rep;
  const GradedSpace& s = *L.space();
  const int n = s.dim();

  for (const auto& [ij, row] : L.raw_table()) {
    auto [i, j] = ij;
    int want = (s.parity(i) + s.parity(j)) & 1;
    for (const auto& [k, v] : row) {
      if (v == 0) continue;
      if (s.parity(k) != want)
        rep.items.push_back({"parity", {i, j, k},
                             "c_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) +
                                 " = " + format_rational(v) + " violates parity grading"});
    }
  }

  // Antisymmetry: compare stored (i,j) rows against stored (j,i) rows, and
  // reject nonzero diagonals on even basis vectors.
  for (const auto& [ij, row] : L.raw_table()) {
    auto [i, j] = ij;
    if (i == j) {
      if (s.parity(i) == 0) {
        for (const auto& [k, v] : row)
          if (v != 0)
            rep.items.push_back({"antisymmetry", {i, i, k},
                                 "[e,e] must vanish for even e; got " + format_rational(v)});
      }
      continue;
    }
    if (i > j) continue;  // handled via its partner below
    auto rev = L.raw_table().find({j, i});
    if (rev == L.raw_table().end()) continue;
    int sgn = (s.parity(i) == 1 && s.parity(j) == 1) ? 1 : -1;
    std::map<int, Rat> expect;
    for (const auto& [k, v] : rev->second) expect[k] = Rat(sgn) * v;
    std::map<int, Rat> got = row;
    for (const auto& [k, v] : expect) {
      Rat have = got.count(k) ? got[k] : Rat(0);
      if (have != v)
        rep.items.push_back({"antisymmetry", {i, j, k},
                             "c_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) +
                                 " = " + format_rational(have) + " but antisymmetry of the (" +
                                 std::to_string(j) + "," + std::to_string(i) + ") entry requires " +
                                 format_rational(v)});
      got.erase(k);
    }
    for (const auto& [k, v] : got)
      if (v != 0)
        rep.items.push_back({"antisymmetry", {i, j, k},
                             "c_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) +
                                 " = " + format_rational(v) + " but the (" + std::to_string(j) + "," +
                                 std::to_string(i) + ") entry has no matching constant"});
  }

  // Graded Jacobi on i <= j <= k (diagonal repeats included: odd basis
  // vectors may have nonzero self-brackets).
  for (int i = 0; i < n; ++i) {
    Element ei = Element::basis(L.space(), i);
    for (int j = i; j < n; ++j) {
      Element ej = Element::basis(L.space(), j);
      Element eij = L.bracket(ei, ej);
      for (int k = j; k < n; ++k) {
        Element ek = Element::basis(L.space(), k);
        Element lhs = L.bracket(ei, L.bracket(ej, ek));
        Element rhs = L.bracket(eij, ek);
        Element mid = L.bracket(ej, L.bracket(ei, ek));
        int sgn = (s.parity(i) == 1 && s.parity(j) == 1) ? -1 : 1;
        Element defect = lhs.sub(rhs).sub(mid.scaled(Rat(sgn)));
        if (!defect.is_zero())
          rep.items.push_back({"jacobi", {i, j, k}, "defect " + defect.to_string()});
      }
    }
  }
  return rep;
}

Decomposition::Decomposition(AlgebraPtr L, std::vector<int> k_indices,
                             std::vector<int> v_indices, bool abelian)
    : L_(std::move(L)), k_idx_(std::move(k_indices)), v_idx_(std::move(v_indices)),
      abelian_(abelian) {
  const int n = L_->dim();
  k_pos_.assign(n, -1);
  v_pos_.assign(n, -1);
  for (std::size_t p = 0; p < k_idx_.size(); ++p) {
    int i = k_idx_[p];
    if (i < 0 || i >= n || k_pos_[i] >= 0)
      throw std::invalid_argument("Decomposition: bad K index list");
    k_pos_[i] = static_cast<int>(p);
  }
  for (std::size_t p = 0; p < v_idx_.size(); ++p) {
    int i = v_idx_[p];
    if (i < 0 || i >= n || v_pos_[i] >= 0 || k_pos_[i] >= 0)
      throw std::invalid_argument("Decomposition: V indices must be disjoint from K");
    v_pos_[i] = static_cast<int>(p);
  }
  for (int i = 0; i < n; ++i)
    if (k_pos_[i] < 0 && v_pos_[i] < 0)
      throw std::invalid_argument("Decomposition: indices do not cover the algebra");

  auto subspace = [&](const std::vector<int>& idx) {
    std::vector<std::string> names;
    std::vector<int> par;
    for (int i : idx) {
      names.push_back(L_->space()->name(i));
      par.push_back(L_->space()->parity(i));
    }
    return make_space(std::move(names), std::move(par));
  };
  v_space_ = subspace(v_idx_);
  k_space_ = subspace(k_idx_);
}

GradedLinearMap Decomposition::projector() const {
  RatMat m(L_->dim(), L_->dim());
  for (int i : v_idx_) m.at(i, i) = 1;
  return GradedLinearMap(L_->space(), L_->space(), 0, std::move(m));
}

Element Decomposition::project(const Element& a) const {
  if (*a.space() != *L_->space())
    throw std::invalid_argument("Decomposition::project: element not in the algebra");
  std::vector<Rat> c(a.coeffs());
  for (int i : k_idx_) c[i] = 0;
  return Element(L_->space(), std::move(c));
}

int Decomposition::v_position(int l_index) const {
  int p = v_pos_.at(l_index);
  if (p < 0) throw std::invalid_argument("Decomposition: index not in V");
  return p;
}

Element Decomposition::embed_v(const Element& v_elem) const {
  if (*v_elem.space() != *v_space_)
    throw std::invalid_argument("Decomposition::embed_v: element not in V coordinates");
  Element out = Element::zero(L_->space());
  for (std::size_t p = 0; p < v_idx_.size(); ++p) out.coeff(v_idx_[p]) = v_elem.coeff(static_cast<int>(p));
  return out;
}

Element Decomposition::restrict_v(const Element& l_elem) const {
  if (*l_elem.space() != *L_->space())
    throw std::invalid_argument("Decomposition::restrict_v: element not in the algebra");
  for (int i : k_idx_)
    if (l_elem.coeff(i) != 0)
      throw std::invalid_argument("Decomposition::restrict_v: element has support in K");
  std::vector<Rat> c(v_idx_.size());
  for (std::size_t p = 0; p < v_idx_.size(); ++p) c[p] = l_elem.coeff(v_idx_[p]);
  return Element(v_space_, std::move(c));
}

ValidationReport validate_decomposition(const Decomposition& dec) {
  ValidationReport rep;
  const LieSuperalgebra& L = *dec.algebra();
  auto closed_in = [&](const std::vector<int>& idx, const char* label,
                       const std::vector<int>& other) {
    for (int i : idx)
      for (int j : idx) {
        if (j < i) continue;
        auto row = L.bracket_basis(i, j);
        for (const auto& [k, v] : row) {
          if (v == 0) continue;
          if (std::find(other.begin(), other.end(), k) != other.end())
            rep.items.push_back({std::string(label) + "-not-closed", {i, j, k},
                                 "[" + L.space()->name(i) + "," + L.space()->name(j) +
                                     "] has component " + format_rational(v) + " along " +
                                     L.space()->name(k)});
        }
      }
  };
  closed_in(dec.k_indices(), "k", dec.v_indices());
  closed_in(dec.v_indices(), "v", dec.k_indices());
  if (dec.abelian()) {
    for (int i : dec.v_indices())
      for (int j : dec.v_indices()) {
        if (j < i) continue;
        for (const auto& [k, v] : L.bracket_basis(i, j))
          if (v != 0)
            rep.items.push_back({"v-not-abelian", {i, j, k},
                                 "[" + L.space()->name(i) + "," + L.space()->name(j) +
                                     "] = " + format_rational(v) + " * " + L.space()->name(k)});
      }
    // Independent distributivity identity P[a,b] = P[Pa,b] + P[a,Pb] on all
    // basis pairs; a consequence of closure plus abelianness, so a defect here
    // always comes with a defect above.
    for (int i = 0; i < L.dim(); ++i)
      for (int j = i; j < L.dim(); ++j) {
        Element a = Element::basis(L.space(), i);
        Element b = Element::basis(L.space(), j);
        Element defect = dec.project(L.bracket(a, b))
                             .sub(dec.project(L.bracket(dec.project(a), b)))
                             .sub(dec.project(L.bracket(a, dec.project(b))));
        if (!defect.is_zero())
          rep.items.push_back({"distributivity", {i, j}, defect.to_string()});
      }
  }
  return rep;
}

Derivation::Derivation(AlgebraPtr L, GradedLinearMap map)
    : L_(std::move(L)), map_(std::move(map)) {
  if (*map_.source() != *L_->space() || *map_.target() != *L_->space())
    throw std::invalid_argument("Derivation: map must go from the algebra to itself");
}

Element Derivation::apply(const Element& a) const {
  if (*a.space() != *L_->space())
    throw std::invalid_argument("Derivation::apply: element not in the algebra");
  return Element(L_->space(), map_.apply(a.coeffs()));
}

Derivation Derivation::add(const Derivation& o) const {
  return Derivation(L_, map_.add(o.map_));
}

Derivation Derivation::scaled(const Rat& s) const { return Derivation(L_, map_.scaled(s)); }

ValidationReport validate_derivation(const Derivation& D) {
  ValidationReport rep;
  const LieSuperalgebra& L = *D.algebra();
  const int n = L.dim();
  for (int i = 0; i < n; ++i) {
    Element ei = Element::basis(L.space(), i);
    Element di = D.apply(ei);
    for (int j = i; j < n; ++j) {
      Element ej = Element::basis(L.space(), j);
      Element lhs = D.apply(L.bracket(ei, ej));
      int sgn = (D.parity() == 1 && L.space()->parity(i) == 1) ? -1 : 1;
      Element rhs = L.bracket(di, ej).add(L.bracket(ei, D.apply(ej)).scaled(Rat(sgn)));
      Element defect = lhs.sub(rhs);
      if (!defect.is_zero())
        rep.items.push_back({"leibniz", {i, j}, "defect " + defect.to_string()});
    }
  }
  return rep;
}

bool check_preserves_k(const Decomposition& dec, const Derivation& D) {
  GradedLinearMap P = dec.projector();
  GradedLinearMap pd = P.compose(D.map());
  GradedLinearMap pdp = pd.compose(P);
  return pdp.matrix() == pd.matrix();
}

Derivation inner_derivation(const AlgebraPtr& L, const Element& x) {
  auto p = x.homogeneous_parity();
  if (!p && !x.is_zero())
    throw std::invalid_argument("inner_derivation: element must be parity-homogeneous");
  int parity = p.value_or(0);
  RatMat m(L->dim(), L->dim());
  for (int j = 0; j < L->dim(); ++j) {
    Element col = L->bracket(x, Element::basis(L->space(), j));
    for (int i = 0; i < L->dim(); ++i) m.at(i, j) = col.coeff(i);
  }
  return Derivation(L, GradedLinearMap(L->space(), L->space(), parity, std::move(m)));
}

Derivation derivation_commutator(const Derivation& a, const Derivation& b) {
  if (a.algebra() != b.algebra() && *a.algebra()->space() != *b.algebra()->space())
    throw std::invalid_argument("derivation_commutator: different algebras");
  GradedLinearMap ab = a.map().compose(b.map());
  GradedLinearMap ba = b.map().compose(a.map());
  int sgn = (a.parity() == 1 && b.parity() == 1) ? 1 : -1;
  return Derivation(a.algebra(), ab.add(ba.scaled(Rat(sgn))));
}

Derivation derivation_square(const Derivation& d) {
  if (d.parity() != 1)
    throw std::invalid_argument("derivation_square: defined for odd derivations only");
  return Derivation(d.algebra(), d.map().compose(d.map()));
}

}  // namespace hdb
