#include "hdb/field.hpp"

#include <stdexcept>

namespace hdb {

int monomial_parity(const GradedSpace& s, const std::vector<int>& key) {
  int p = 0;
  for (int v : key) p ^= s.parity(v);
  return p;
}

Poly::Poly(SpacePtr space) : space_(std::move(space)) {}

Poly Poly::constant(SpacePtr space, const Rat& c) {
  Poly p(std::move(space));
  p.insert({}, c);
  return p;
}

Poly Poly::monomial(SpacePtr space, const std::vector<int>& vars, const Rat& c) {
  for (int v : vars)
    if (v < 0 || v >= space->dim())
      throw std::invalid_argument("Poly::monomial: coordinate index out of range");
  CanonicalTuple ct = canonicalize_tuple(vars, space->parities());
  Poly p(std::move(space));
  if (ct.sign != 0) p.insert(std::move(ct.indices), c * ct.sign);
  return p;
}

void Poly::insert(std::vector<int> key, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(std::move(key), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat Poly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, static_cast<int>(key.size()));
  return d;
}

Poly Poly::add(const Poly& o) const {
  if (*space_ != *o.space_) throw std::invalid_argument("Poly::add: different coordinate spaces");
  Poly out = *this;
  for (const auto& [key, c] : o.terms_) out.insert(key, c);
  return out;
}

Poly Poly::sub(const Poly& o) const { return add(o.scaled(Rat(-1))); }

Poly Poly::scaled(const Rat& s) const {
  Poly out(space_);
  if (s == 0) return out;
  for (const auto& [key, c] : terms_) out.terms_[key] = c * s;
  return out;
}

Poly Poly::mul(const Poly& o) const {
  if (*space_ != *o.space_) throw std::invalid_argument("Poly::mul: different coordinate spaces");
  Poly out(space_);
  const auto& parities = space_->parities();
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      std::vector<int> concat = ka;
      concat.insert(concat.end(), kb.begin(), kb.end());
      CanonicalTuple ct = canonicalize_tuple(concat, parities);
      if (ct.sign != 0) out.insert(std::move(ct.indices), ca * cb * ct.sign);
    }
  return out;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= space_->dim())
    throw std::invalid_argument("Poly::derivative: coordinate index out of range");
  Poly out(space_);
  int pv = space_->parity(var);
  for (const auto& [key, c] : terms_) {
    int crossing = 0;  // parity of the factors passed over so far
    for (size_t t = 0; t < key.size(); ++t) {
      if (key[t] == var) {
        std::vector<int> rest;
        rest.reserve(key.size() - 1);
        for (size_t q = 0; q < key.size(); ++q)
          if (q != t) rest.push_back(key[q]);
        out.insert(std::move(rest), (crossing & pv & 1) ? -c : c);
      }
      crossing ^= space_->parity(key[t]);
    }
  }
  return out;
}

Poly Poly::truncated(int cap) const {
  Poly out(space_);
  for (const auto& [key, c] : terms_)
    if (static_cast<int>(key.size()) <= cap) out.terms_[key] = c;
  return out;
}

bool Poly::operator==(const Poly& o) const {
  if (*space_ != *o.space_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
    if (a->first != b->first || cmp(a->second, b->second) != 0) return false;
  return true;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + format_rational(c) + ")";
    size_t t = 0;
    while (t < key.size()) {
      size_t run = t;
      while (run < key.size() && key[run] == key[t]) ++run;
      out += "*" + space_->name(key[t]);
      if (run - t > 1) out += "^" + std::to_string(run - t);
      t = run;
    }
  }
  return out;
}

FormalVectorField::FormalVectorField(SpacePtr space, int parity, int cap,
                                     std::vector<Poly> components)
    : space_(std::move(space)), parity_(parity), cap_(cap), comp_(std::move(components)) {
  if (parity_ != 0 && parity_ != 1)
    throw std::invalid_argument("FormalVectorField: parity must be 0 or 1");
  if (cap_ < 0) throw std::invalid_argument("FormalVectorField: negative cap");
  if (static_cast<int>(comp_.size()) != space_->dim())
    throw std::invalid_argument("FormalVectorField: one component per coordinate required");
  for (int j = 0; j < space_->dim(); ++j) {
    if (*comp_[j].space() != *space_)
      throw std::invalid_argument("FormalVectorField: component on a different coordinate space");
    for (const auto& [key, c] : comp_[j].terms()) {
      if (static_cast<int>(key.size()) > cap_)
        throw std::invalid_argument("FormalVectorField: component degree exceeds cap");
      if (((monomial_parity(*space_, key) + space_->parity(j)) & 1) != parity_)
        throw std::invalid_argument("FormalVectorField: component term of wrong parity");
    }
  }
}

FormalVectorField FormalVectorField::zero(SpacePtr space, int parity, int cap) {
  std::vector<Poly> comps(space->dim(), Poly(space));
  return FormalVectorField(std::move(space), parity, cap, std::move(comps));
}

bool FormalVectorField::is_zero() const {
  for (const Poly& p : comp_)
    if (!p.is_zero()) return false;
  return true;
}

FormalVectorField FormalVectorField::add(const FormalVectorField& o) const {
  if (*space_ != *o.space_ || parity_ != o.parity_)
    throw std::invalid_argument("FormalVectorField::add: incompatible fields");
  std::vector<Poly> comps;
  for (int j = 0; j < space_->dim(); ++j) comps.push_back(comp_[j].add(o.comp_[j]));
  return FormalVectorField(space_, parity_, std::max(cap_, o.cap_), std::move(comps));
}

FormalVectorField FormalVectorField::scaled(const Rat& s) const {
  std::vector<Poly> comps;
  for (const Poly& p : comp_) comps.push_back(p.scaled(s));
  return FormalVectorField(space_, parity_, cap_, std::move(comps));
}

FormalVectorField FormalVectorField::truncated(int cap) const {
  std::vector<Poly> comps;
  for (const Poly& p : comp_) comps.push_back(p.truncated(cap));
  return FormalVectorField(space_, parity_, cap, std::move(comps));
}

bool FormalVectorField::operator==(const FormalVectorField& o) const {
  if (*space_ != *o.space_ || parity_ != o.parity_) return false;
  for (int j = 0; j < space_->dim(); ++j)
    if (!(comp_[j] == o.comp_[j])) return false;
  return true;
}

std::string FormalVectorField::to_string() const {
  std::string out;
  for (int j = 0; j < space_->dim(); ++j) {
    if (comp_[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "[" + comp_[j].to_string() + "] d/d(" + space_->name(j) + ")";
  }
  return out.empty() ? "0" : out;
}

Poly apply_field(const FormalVectorField& x, const Poly& f) {
  if (*x.space() != *f.space())
    throw std::invalid_argument("apply_field: field and polynomial on different spaces");
  Poly out(f.space());
  for (int j = 0; j < x.space()->dim(); ++j) {
    if (x.component(j).is_zero()) continue;
    out = out.add(x.component(j).mul(f.derivative(j)));
  }
  return out;
}

FormalVectorField field_commutator(const FormalVectorField& x, const FormalVectorField& y,
                                   int cap) {
  if (*x.space() != *y.space())
    throw std::invalid_argument("field_commutator: different coordinate spaces");
  int sign = (x.parity() == 1 && y.parity() == 1) ? 1 : -1;  // -(-1)^{|X||Y|}
  std::vector<Poly> comps;
  for (int k = 0; k < x.space()->dim(); ++k) {
    Poly c = apply_field(x, y.component(k)).add(apply_field(y, x.component(k)).scaled(sign));
    comps.push_back(c.truncated(cap));
  }
  return FormalVectorField(x.space(), (x.parity() + y.parity()) & 1, cap, std::move(comps));
}

FormalVectorField field_square(const FormalVectorField& x) {
  if (x.parity() != 1)
    throw std::invalid_argument("field_square: only odd fields have a meaningful square");
  int cap = std::max(0, 2 * x.cap() - 1);  // exact: degrees add and drop one
  return field_commutator(x, x, cap).scaled(Rat(1, 2));
}

bool is_homological(const FormalVectorField& x) { return field_square(x).is_zero(); }

namespace {

FormalVectorField constant_field(const SpacePtr& sp, int dir, int cap) {
  std::vector<Poly> comps(sp->dim(), Poly(sp));
  comps[dir] = Poly::constant(sp, Rat(1));
  return FormalVectorField(sp, sp->parity(dir), cap, std::move(comps));
}

Element constant_part(const FormalVectorField& x) {
  Element e = Element::zero(x.space());
  for (int j = 0; j < x.space()->dim(); ++j) e.coeff(j) = x.component(j).constant_term();
  return e;
}

Element extract_chain(const FormalVectorField& x, const std::vector<int>& tuple) {
  FormalVectorField cur = x;
  for (int i : tuple) cur = field_commutator(cur, constant_field(x.space(), i, x.cap()), x.cap());
  return constant_part(cur);
}

void extract_rec(const FormalVectorField& cur, int min_idx, std::vector<int>& prefix,
                 int max_arity, SymmetricBracketFamily& fam) {
  if (!prefix.empty()) {
    Element value = constant_part(cur);
    if (!value.is_zero()) fam.set(prefix, value);
    if (static_cast<int>(prefix.size()) == max_arity) return;
  }
  const SpacePtr& sp = cur.space();
  for (int i = min_idx; i < sp->dim(); ++i) {
    if (!prefix.empty() && prefix.back() == i && sp->parity(i) == 1) continue;
    prefix.push_back(i);
    extract_rec(field_commutator(cur, constant_field(sp, i, cur.cap()), cur.cap()), i, prefix,
                max_arity, fam);
    prefix.pop_back();
  }
}

}  // namespace

SymmetricBracketFamily brackets_from_field(const FormalVectorField& x, int max_arity) {
  if (max_arity < 1) throw std::invalid_argument("brackets_from_field: max_arity must be >= 1");
  SymmetricBracketFamily fam(x.space(), x.parity(), max_arity, constant_part(x), {});
  std::vector<int> prefix;
  extract_rec(x, 0, prefix, max_arity, fam);
  return fam;
}

FormalVectorField field_from_brackets(const SymmetricBracketFamily& fam, int cap) {
  const SpacePtr& sp = fam.space();
  if (cap < fam.max_arity())
    throw std::invalid_argument("field_from_brackets: cap below the family's max arity");
  std::vector<Poly> comps(sp->dim(), Poly(sp));
  Element nul = fam.nullary();
  for (int j = 0; j < sp->dim(); ++j) {
    if (nul.coeff(j) == 0) continue;
    if (sp->parity(j) != fam.parity())
      throw std::invalid_argument("field_from_brackets: nullary value of wrong parity");
    comps[j] = comps[j].add(Poly::constant(sp, nul.coeff(j)));
  }
  for (int arity = 1; arity <= fam.max_arity(); ++arity) {
    for (const auto& tuple : enumerate_canonical_tuples(*sp, arity)) {
      Element value = fam.eval_canonical(tuple);
      if (value.is_zero()) continue;
      int j0 = value.support().front();
      // Normalization: one monomial in direction j0 extracts back to gamma
      // times the unit there; gamma depends only on the tuple and parities.
      std::vector<Poly> probe(sp->dim(), Poly(sp));
      probe[j0] = Poly::monomial(sp, tuple, Rat(1));
      FormalVectorField test(sp, fam.parity(), cap, std::move(probe));
      Rat gamma = extract_chain(test, tuple).coeff(j0);
      if (gamma == 0)
        throw std::logic_error("field_from_brackets: degenerate extraction normalization");
      for (int j : value.support())
        comps[j] = comps[j].add(Poly::monomial(sp, tuple, value.coeff(j) / gamma));
    }
  }
  return FormalVectorField(sp, fam.parity(), cap, std::move(comps));
}

FormalVectorField generating_field(const Decomposition& dec, const Derivation& D, int max_arity) {
  return field_from_brackets(derived_bracket_family(dec, D, max_arity), max_arity);
}

bool check_generating_field_homomorphism(const Decomposition& dec, const Derivation& d1,
                                         const Derivation& d2, int cap) {
  if (cap < 1)
    throw std::invalid_argument("check_generating_field_homomorphism: cap must be >= 1");
  FormalVectorField q1 = generating_field(dec, d1, cap);
  FormalVectorField q2 = generating_field(dec, d2, cap);
  FormalVectorField lhs = field_commutator(q1, q2, cap - 1);
  FormalVectorField rhs = generating_field(dec, derivation_commutator(d1, d2), cap).truncated(cap - 1);
  return lhs == rhs;
}

FormalVectorField field_of_wn_element(const WnAlgebra& w, const Element& x) {
  if (*x.space() != *w.L->space())
    throw std::invalid_argument("field_of_wn_element: element not in this W(n)");
  const SpacePtr& sp = w.dec.v_space();
  if (x.is_zero()) return FormalVectorField::zero(sp, 0, w.n);
  auto par = x.homogeneous_parity();
  if (!par)
    throw std::invalid_argument("field_of_wn_element: element must be parity-homogeneous");
  std::vector<Poly> comps(sp->dim(), Poly(sp));
  for (int idx : x.support()) {
    int mask = w.mask_of(idx), dir = w.dir_of(idx);
    std::vector<int> vars;
    for (int b = 0; b < w.n; ++b)
      if (mask & (1 << b)) vars.push_back(b);
    comps[dir] = comps[dir].add(Poly::monomial(sp, vars, x.coeff(idx)));
  }
  return FormalVectorField(sp, *par, w.n, std::move(comps));
}

Element wn_element_of_field(const WnAlgebra& w, const FormalVectorField& x) {
  if (*x.space() != *w.dec.v_space())
    throw std::invalid_argument("wn_element_of_field: field not on the W(n) coordinate space");
  Element out = Element::zero(w.L->space());
  for (int dir = 0; dir < w.n; ++dir)
    for (const auto& [key, c] : x.component(dir).terms()) {
      int mask = 0;
      for (int v : key) mask |= 1 << v;  // odd coordinates never repeat
      out.coeff(w.basis_index(mask, dir)) = c;
    }
  return out;
}

}  // namespace hdb
