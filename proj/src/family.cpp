#include "hdb/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdb {

Element BracketOps::eval_tuple(const std::vector<int>& tuple) const {
  if (tuple.empty()) return nullary();
  if (static_cast<int>(tuple.size()) > max_arity()) {
    if (vanishes_above_max()) return Element::zero(space());
    throw std::invalid_argument("bracket family: arity " + std::to_string(tuple.size()) +
                                " not available (max_arity " + std::to_string(max_arity()) + ")");
  }
  CanonicalTuple c = canonicalize_tuple(tuple, space()->parities());
  if (c.sign == 0) return Element::zero(space());
  Element v = eval_canonical(c.indices);
  return c.sign == 1 ? v : v.scaled(Rat(-1));
}

Element BracketOps::eval_first_general(const Element& head, const std::vector<int>& rest) const {
  if (*head.space() != *space())
    throw std::invalid_argument("bracket family: head element in wrong space");
  Element out = Element::zero(space());
  std::vector<int> tuple(rest.size() + 1);
  std::copy(rest.begin(), rest.end(), tuple.begin() + 1);
  for (int b : head.support()) {
    tuple[0] = b;
    out = out.add(eval_tuple(tuple).scaled(head.coeff(b)));
  }
  return out;
}

Element BracketOps::eval_elements(const std::vector<Element>& args) const {
  std::vector<int> tuple(args.size());
  Element out = Element::zero(space());
  // Multilinear expansion over the support of each slot.
  std::vector<std::vector<int>> supports;
  supports.reserve(args.size());
  for (const Element& a : args) {
    if (*a.space() != *space())
      throw std::invalid_argument("bracket family: argument in wrong space");
    supports.push_back(a.support());
    if (supports.back().empty()) return out;
  }
  std::vector<std::size_t> pos(args.size(), 0);
  while (true) {
    Rat f(1);
    for (std::size_t s = 0; s < args.size(); ++s) {
      tuple[s] = supports[s][pos[s]];
      f *= args[s].coeff(tuple[s]);
    }
    out = out.add(eval_tuple(tuple).scaled(f));
    std::size_t s = 0;
    while (s < args.size()) {
      if (++pos[s] < supports[s].size()) break;
      pos[s] = 0;
      ++s;
    }
    if (s == args.size()) break;
  }
  return out;
}

SymmetricBracketFamily::SymmetricBracketFamily(
    SpacePtr space, int parity, int max_arity, Element nullary_value,
    std::map<int, std::map<std::vector<int>, Element>> tables)
    : space_(std::move(space)), parity_(parity), max_arity_(max_arity),
      nullary_(std::move(nullary_value)), tables_(std::move(tables)) {
  if (parity_ != 0 && parity_ != 1)
    throw std::invalid_argument("SymmetricBracketFamily: parity must be 0 or 1");
  if (max_arity_ < 0) throw std::invalid_argument("SymmetricBracketFamily: negative max_arity");
  if (*nullary_.space() != *space_)
    throw std::invalid_argument("SymmetricBracketFamily: nullary value in wrong space");
  for (const auto& [arity, table] : tables_) {
    if (arity < 1 || arity > max_arity_)
      throw std::invalid_argument("SymmetricBracketFamily: table arity out of range");
    for (const auto& [tuple, value] : table) {
      if (static_cast<int>(tuple.size()) != arity)
        throw std::invalid_argument("SymmetricBracketFamily: tuple length != arity");
      check_entry(tuple, value);
    }
  }
}

void SymmetricBracketFamily::check_entry(const std::vector<int>& tuple, const Element& value) const {
  CanonicalTuple c = canonicalize_tuple(tuple, space_->parities());
  if (c.indices != tuple || c.sign != 1)
    throw std::invalid_argument("SymmetricBracketFamily: tuple key is not canonical");
  if (*value.space() != *space_)
    throw std::invalid_argument("SymmetricBracketFamily: value in wrong space");
  int args_parity = 0;
  for (int i : tuple) args_parity ^= space_->parity(i);
  int want = (args_parity + parity_) & 1;
  for (int b : value.support())
    if (space_->parity(b) != want)
      throw std::invalid_argument("SymmetricBracketFamily: value parity inconsistent with bracket parity");
}

bool SymmetricBracketFamily::zero_nullary() const { return nullary_.is_zero(); }

Element SymmetricBracketFamily::eval_canonical(const std::vector<int>& tuple) const {
  int arity = static_cast<int>(tuple.size());
  if (arity > max_arity_) return Element::zero(space_);
  auto at = tables_.find(arity);
  if (at == tables_.end()) return Element::zero(space_);
  auto it = at->second.find(tuple);
  if (it == at->second.end()) return Element::zero(space_);
  return it->second;
}

void SymmetricBracketFamily::set(const std::vector<int>& tuple, Element value) {
  int arity = static_cast<int>(tuple.size());
  if (arity < 1 || arity > max_arity_)
    throw std::invalid_argument("SymmetricBracketFamily::set: arity out of range");
  check_entry(tuple, value);
  if (value.is_zero())
    tables_[arity].erase(tuple);
  else
    tables_[arity].insert_or_assign(tuple, std::move(value));
}

SymmetricBracketFamily SymmetricBracketFamily::add(const SymmetricBracketFamily& o) const {
  if (*space_ != *o.space_ || parity_ != o.parity_)
    throw std::invalid_argument("SymmetricBracketFamily::add: incompatible families");
  SymmetricBracketFamily out(space_, parity_, std::max(max_arity_, o.max_arity_),
                             nullary_.add(o.nullary_), {});
  for (const SymmetricBracketFamily* f : {this, &o})
    for (const auto& [arity, table] : f->tables_)
      for (const auto& [tuple, value] : table)
        out.set(tuple, out.eval_canonical(tuple).add(value));
  return out;
}

bool SymmetricBracketFamily::operator==(const SymmetricBracketFamily& o) const {
  if (*space_ != *o.space_ || parity_ != o.parity_ || !(nullary_ == o.nullary_)) return false;
  // Compare as operations: tables may differ in explicit zeros.
  int top = std::max(max_arity_, o.max_arity_);
  for (int arity = 1; arity <= top; ++arity)
    for (const auto& t : enumerate_canonical_tuples(*space_, arity))
      if (!(eval_canonical(t) == o.eval_canonical(t))) return false;
  return true;
}

Element derived_bracket(const Decomposition& dec, const Derivation& D,
                        const std::vector<Element>& args) {
  if (args.empty())
    throw std::invalid_argument("derived_bracket: needs at least one argument (the 0-bracket of a derivation family is zero)");
  const LieSuperalgebra& L = *dec.algebra();
  for (const Element& a : args) {
    if (*a.space() != *L.space())
      throw std::invalid_argument("derived_bracket: argument not in the algebra");
    for (int i : a.support())
      if (!dec.in_v(i))
        throw std::invalid_argument("derived_bracket: argument has support outside V");
  }
  Element c = D.apply(args[0]);
  for (std::size_t s = 1; s < args.size(); ++s) c = L.bracket(c, args[s]);
  return dec.project(c);
}

SymmetricBracketFamily derived_bracket_family(const Decomposition& dec, const Derivation& D,
                                              int max_arity) {
  if (!dec.abelian())
    throw std::invalid_argument(
        "derived_bracket_family: V must be abelian for the brackets to be graded-symmetric; "
        "for non-abelian V use check_transposition_identity");
  if (max_arity < 1) throw std::invalid_argument("derived_bracket_family: max_arity must be >= 1");
  const SpacePtr& vs = dec.v_space();
  SymmetricBracketFamily fam(vs, D.parity(), max_arity, Element::zero(vs), {});

  auto eval_on = [&](const std::vector<int>& v_tuple) {
    std::vector<Element> args;
    args.reserve(v_tuple.size());
    for (int p : v_tuple)
      args.push_back(Element::basis(dec.algebra()->space(), dec.l_index_of_v(p)));
    return dec.restrict_v(derived_bracket(dec, D, args));
  };

  for (int arity = 1; arity <= max_arity; ++arity) {
    for (const auto& tuple : enumerate_canonical_tuples(*vs, arity)) {
      Element value = eval_on(tuple);
      // Symmetry spot-check: one adjacent transposition per tuple.
      if (arity >= 2) {
        std::vector<int> swapped = tuple;
        std::swap(swapped[0], swapped[1]);
        int sgn = (vs->parity(tuple[0]) == 1 && vs->parity(tuple[1]) == 1) ? -1 : 1;
        Element other = eval_on(swapped);
        if (!(other == value.scaled(Rat(sgn))))
          throw std::domain_error(
              "derived_bracket_family: symmetry spot-check failed (is V really abelian and D a derivation?)");
      }
      if (!value.is_zero()) fam.set(tuple, std::move(value));
    }
  }
  return fam;
}

Element jacobiator(const BracketOps& f, const std::vector<int>& tuple) {
  const int n = static_cast<int>(tuple.size());
  const SpacePtr& sp = f.space();
  if (f.vanishes_above_max()) {
    if (n > 2 * f.max_arity() - 1)
      throw std::invalid_argument("jacobiator: arity " + std::to_string(n) +
                                  " needs bracket tables past max_arity " +
                                  std::to_string(f.max_arity()));
  } else if (n > f.max_arity()) {
    throw std::invalid_argument("jacobiator: arity " + std::to_string(n) +
                                " not available (max_arity " + std::to_string(f.max_arity()) + ")");
  }
  std::vector<int> parities(n);
  for (int s = 0; s < n; ++s) parities[s] = sp->parity(tuple[s]);

  Element out = Element::zero(sp);
  for (int k = 0; k <= n; ++k) {
    const int inner_arity = k;
    const int outer_arity = n - k + 1;
    if (k == 0) {
      if (f.zero_nullary()) continue;  // structurally present, identically zero
      if (outer_arity > f.max_arity()) {
        if (f.vanishes_above_max()) continue;
        throw std::invalid_argument("jacobiator: nullary term needs arity " +
                                    std::to_string(outer_arity));
      }
      out = out.add(f.eval_first_general(f.nullary(), tuple));
      continue;
    }
    if (inner_arity > f.max_arity() || outer_arity > f.max_arity()) {
      if (f.vanishes_above_max()) continue;
      throw std::invalid_argument("jacobiator: term with inner arity " + std::to_string(inner_arity) +
                                  " / outer arity " + std::to_string(outer_arity) + " not available");
    }
    for (const Permutation& sh : enumerate_shuffles(k, n - k)) {
      int eps = koszul_sign(sh, parities);
      std::vector<int> inner(k), rest(n - k);
      for (int s = 0; s < k; ++s) inner[s] = tuple[sh(s)];
      for (int s = k; s < n; ++s) rest[s - k] = tuple[sh(s)];
      Element iv = f.eval_tuple(inner);
      if (iv.is_zero()) continue;
      out = out.add(f.eval_first_general(iv, rest).scaled(Rat(eps)));
    }
  }
  return out;
}

Element jacobiator(const BracketOps& f, const std::vector<Element>& args) {
  // Multilinear expansion down to basis tuples.
  std::vector<std::vector<int>> supports;
  for (const Element& a : args) {
    if (*a.space() != *f.space())
      throw std::invalid_argument("jacobiator: argument in wrong space");
    supports.push_back(a.support());
    if (supports.back().empty()) return Element::zero(f.space());
  }
  const std::size_t n = args.size();
  std::vector<std::size_t> pos(n, 0);
  std::vector<int> tuple(n);
  Element out = Element::zero(f.space());
  while (true) {
    Rat c(1);
    for (std::size_t s = 0; s < n; ++s) {
      tuple[s] = supports[s][pos[s]];
      c *= args[s].coeff(tuple[s]);
    }
    out = out.add(jacobiator(f, tuple).scaled(c));
    std::size_t s = 0;
    while (s < n) {
      if (++pos[s] < supports[s].size()) break;
      pos[s] = 0;
      ++s;
    }
    if (s == n) break;
  }
  return out;
}

JacobiatorReport verify_main_theorem(const Decomposition& dec, const Derivation& D, int max_n) {
  if (D.parity() != 1)
    throw std::invalid_argument("verify_main_theorem: D must be odd");
  if (!check_preserves_k(dec, D))
    throw std::invalid_argument("verify_main_theorem: D does not preserve K (PDP != PD)");
  if (max_n < 1) throw std::invalid_argument("verify_main_theorem: max_n must be >= 1");

  SymmetricBracketFamily fam = derived_bracket_family(dec, D, max_n);
  Derivation D2 = derivation_square(D);
  const SpacePtr& vs = dec.v_space();

  JacobiatorReport rep;
  for (int n = 1; n <= max_n; ++n) {
    JacobiatorReport::ArityBlock blk;
    blk.arity = n;
    for (const auto& tuple : enumerate_canonical_tuples(*vs, n)) {
      Element lhs = jacobiator(fam, tuple);
      std::vector<Element> args;
      args.reserve(tuple.size());
      for (int p : tuple)
        args.push_back(Element::basis(dec.algebra()->space(), dec.l_index_of_v(p)));
      Element rhs = dec.restrict_v(derived_bracket(dec, D2, args));
      ++blk.checked;
      if (!(lhs == rhs))
        rep.defects.push_back({n, tuple, lhs, rhs, lhs.sub(rhs)});
    }
    rep.blocks.push_back(blk);
  }
  return rep;
}

static bool chains_vanish(const Decomposition& dec, const Derivation& D, int args_count) {
  const LieSuperalgebra& L = *dec.algebra();
  const SpacePtr& vs = dec.v_space();
  std::vector<std::vector<int>> tuples;
  if (dec.abelian()) {
    tuples = enumerate_canonical_tuples(*vs, args_count);
  } else {
    // all ordered tuples
    tuples.push_back({});
    for (int s = 0; s < args_count; ++s) {
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples)
        for (int i = 0; i < vs->dim(); ++i) {
          auto u = t;
          u.push_back(i);
          next.push_back(std::move(u));
        }
      tuples = std::move(next);
    }
  }
  for (const auto& t : tuples) {
    Element c = D.apply(Element::basis(L.space(), dec.l_index_of_v(t[0])));
    for (std::size_t s = 1; s < t.size(); ++s)
      c = L.bracket(c, Element::basis(L.space(), dec.l_index_of_v(t[s])));
    if (!c.is_zero()) return false;
  }
  return true;
}

int derivation_order(const Decomposition& dec, const Derivation& D, int max_probe) {
  if (max_probe < 0) throw std::invalid_argument("derivation_order: negative max_probe");
  for (int r = 0; r <= max_probe; ++r)
    if (chains_vanish(dec, D, r + 1)) return r;
  return -1;
}

Element transposition_defect(const Decomposition& dec, const Derivation& D,
                             const std::vector<Element>& args, int pos) {
  const int n = static_cast<int>(args.size());
  if (n < 2 || pos < 0 || pos + 1 >= n)
    throw std::invalid_argument("transposition_defect: bad position");
  auto pa = args[pos].homogeneous_parity();
  auto pb = args[pos + 1].homogeneous_parity();
  if ((!pa && !args[pos].is_zero()) || (!pb && !args[pos + 1].is_zero()))
    throw std::invalid_argument("transposition_defect: arguments must be homogeneous");

  Element direct = derived_bracket(dec, D, args);
  std::vector<Element> swapped = args;
  std::swap(swapped[pos], swapped[pos + 1]);
  int sgn = (pa.value_or(0) == 1 && pb.value_or(0) == 1) ? -1 : 1;
  Element crossed = derived_bracket(dec, D, swapped).scaled(Rat(sgn));

  std::vector<Element> merged;
  merged.reserve(args.size() - 1);
  for (int s = 0; s < n; ++s) {
    if (s == pos) {
      merged.push_back(dec.algebra()->bracket(args[pos], args[pos + 1]));
      ++s;  // skip pos+1
    } else {
      merged.push_back(args[s]);
    }
  }
  Element inserted = derived_bracket(dec, D, merged);
  return direct.sub(crossed).sub(inserted);
}

ValidationReport check_transposition_identity(const Decomposition& dec, const Derivation& D,
                                              int max_arity) {
  ValidationReport rep;
  const SpacePtr& vs = dec.v_space();
  for (int arity = 2; arity <= max_arity; ++arity) {
    std::vector<std::vector<int>> tuples;
    tuples.push_back({});
    for (int s = 0; s < arity; ++s) {
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples)
        for (int i = 0; i < vs->dim(); ++i) {
          auto u = t;
          u.push_back(i);
          next.push_back(std::move(u));
        }
      tuples = std::move(next);
    }
    for (const auto& t : tuples) {
      std::vector<Element> args;
      args.reserve(arity);
      for (int p : t) args.push_back(Element::basis(dec.algebra()->space(), dec.l_index_of_v(p)));
      for (int pos = 0; pos + 1 < arity; ++pos) {
        Element d = transposition_defect(dec, D, args, pos);
        if (!d.is_zero()) {
          std::vector<int> where = t;
          where.push_back(pos);
          rep.items.push_back({"transposition", where, "defect " + d.to_string()});
        }
      }
    }
  }
  return rep;
}

}  // namespace hdb
