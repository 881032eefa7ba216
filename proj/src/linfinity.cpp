#include "hdb/linfinity.hpp"

#include <stdexcept>
#include <utility>

namespace hdb {

namespace {

SpacePtr extended_space(const Decomposition& dec) {
  const SpacePtr& ls = dec.algebra()->space();
  std::vector<std::string> names;
  std::vector<int> parities;
  for (int i = 0; i < ls->dim(); ++i) {
    names.push_back("Pi(" + ls->name(i) + ")");
    parities.push_back(ls->parity(i) ^ 1);
  }
  const SpacePtr& vs = dec.v_space();
  for (int i = 0; i < vs->dim(); ++i) {
    names.push_back(vs->name(i));
    parities.push_back(vs->parity(i));
  }
  return make_space(std::move(names), std::move(parities));
}

}  // namespace

ExtendedBracketStructure::ExtendedBracketStructure(Decomposition dec, Derivation d, int max_arity)
    : dec_(std::move(dec)),
      d_(std::move(d)),
      max_arity_(max_arity),
      nl_(dec_.algebra()->dim()),
      nv_(dec_.v_space()->dim()),
      space_(extended_space(dec_)) {
  if (max_arity_ < 1) throw std::invalid_argument("extended brackets: max_arity must be >= 1");
  if (d_.algebra() != dec_.algebra())
    throw std::invalid_argument("extended brackets: derivation is over a different algebra");
  if (!dec_.abelian()) throw std::invalid_argument("extended brackets: V must be abelian");
  if (d_.parity() != 1) throw std::invalid_argument("extended brackets: derivation must be odd");
  if (!derivation_square(d_).map().matrix().is_zero())
    throw std::invalid_argument("extended brackets: derivation must square to zero");
  if (!check_preserves_k(dec_, d_))
    throw std::invalid_argument("extended brackets: derivation must preserve the complement");
}

Element ExtendedBracketStructure::eval_canonical(const std::vector<int>& tuple) const {
  auto it = cache_.find(tuple);
  if (it != cache_.end()) return it->second;

  const int n = static_cast<int>(tuple.size());
  int c = 0;
  while (c < n && tuple[c] < nl_) ++c;

  Element out = Element::zero(space_);
  const AlgebraPtr& L = dec_.algebra();
  const SpacePtr& ls = L->space();

  auto add_reversed = [&](const Element& z, const Rat& s) {
    for (int i = 0; i < nl_; ++i) out.coeff(i) += s * z.coeff(i);
  };
  auto add_projected = [&](const Element& z) {
    for (int vp = 0; vp < nv_; ++vp) out.coeff(nl_ + vp) += z.coeff(dec_.l_index_of_v(vp));
  };
  auto v_basis_in_l = [&](int pos) {
    return Element::basis(ls, dec_.l_index_of_v(tuple[pos] - nl_));
  };

  if (c == 2 && n == 2) {
    Element lb = L->bracket(Element::basis(ls, tuple[0]), Element::basis(ls, tuple[1]));
    add_reversed(lb, ls->parity(tuple[0]) == 1 ? Rat(-1) : Rat(1));
  } else if (c == 1) {
    Element x = Element::basis(ls, tuple[0]);
    if (n == 1) {
      add_reversed(d_.apply(x), Rat(-1));
      add_projected(dec_.project(x));
    } else {
      Element chain = x;
      for (int t = 1; t < n; ++t) chain = L->bracket(chain, v_basis_in_l(t));
      add_projected(chain);
    }
  } else if (c == 0) {
    Element chain = d_.apply(v_basis_in_l(0));
    for (int t = 1; t < n; ++t) chain = L->bracket(chain, v_basis_in_l(t));
    add_projected(chain);
  }
  // Three or more reversed arguments, or two with extra arguments: zero.

  cache_.emplace(tuple, out);
  return out;
}

Complex ExtendedBracketStructure::underlying_complex() const {
  int n = space_->dim();
  RatMat m(n, n);
  for (int j = 0; j < n; ++j) {
    Element img = eval_canonical({j});
    for (int i = 0; i < n; ++i) m.at(i, j) = img.coeff(i);
  }
  return Complex(space_, m);
}

SymmetricBracketFamily v_restriction(const ExtendedBracketStructure& ext) {
  const Decomposition& dec = ext.decomposition();
  const SpacePtr& vs = dec.v_space();
  int nl = ext.reversed_dim();
  std::map<int, std::map<std::vector<int>, Element>> tables;
  for (int arity = 1; arity <= ext.max_arity(); ++arity)
    for (const std::vector<int>& vt : enumerate_canonical_tuples(*vs, arity)) {
      std::vector<int> mt(vt);
      for (int& i : mt) i += nl;
      Element mv = ext.eval_canonical(mt);
      Element vv = Element::zero(vs);
      for (int vp = 0; vp < vs->dim(); ++vp) vv.coeff(vp) = mv.coeff(nl + vp);
      if (!vv.is_zero()) tables[arity].insert_or_assign(vt, std::move(vv));
    }
  return SymmetricBracketFamily(vs, 1, ext.max_arity(), Element::zero(vs), std::move(tables));
}

ValidationReport check_binary_leibniz(const BracketOps& f) {
  ValidationReport rep;
  const SpacePtr& s = f.space();
  for (int i = 0; i < s->dim(); ++i)
    for (int j = i; j < s->dim(); ++j) {
      Element bij = f.eval_tuple({i, j});
      Element lhs = f.eval_elements({bij});
      Element du = f.eval_tuple({i});
      Element dv = f.eval_tuple({j});
      Element defect = lhs.add(f.eval_elements({du, Element::basis(s, j)}));
      Element second = f.eval_elements({Element::basis(s, i), dv});
      defect = s->parity(i) == 1 ? defect.sub(second) : defect.add(second);
      if (!defect.is_zero())
        rep.items.push_back({"leibniz", {i, j}, "d{" + s->name(i) + "," + s->name(j) + "} + {d" +
                                                    s->name(i) + "," + s->name(j) + "} + (-1)^|" +
                                                    s->name(i) + "| {" + s->name(i) + ",d" +
                                                    s->name(j) + "} = " + defect.to_string()});
    }
  return rep;
}

ValidationReport check_binary_leibniz(const Decomposition& dec, const Derivation& d) {
  return check_binary_leibniz(ExtendedBracketStructure(dec, d, 2));
}

JacobiatorReport verify_linfinity(const ExtendedBracketStructure& ext, int max_n,
                                  bool brute_force) {
  if (max_n > ext.max_arity())
    throw std::invalid_argument("verify_linfinity: max_n exceeds the structure's max_arity");
  JacobiatorReport rep;
  for (int n = 1; n <= max_n; ++n) {
    JacobiatorReport::ArityBlock block;
    block.arity = n;
    for (const std::vector<int>& tuple : enumerate_canonical_tuples(*ext.space(), n)) {
      int c = 0;
      while (c < n && tuple[c] < ext.reversed_dim()) ++c;
      std::string skip_reason;
      if (c >= 4)
        skip_reason = "vacuous: every term has a bracket with at least three reversed arguments";
      else if (c == 3 && n > 3)
        skip_reason = "vacuous: three reversed arguments plus extra arguments kill every term";
      if (!skip_reason.empty() && !brute_force) {
        ++block.skipped;
        rep.skips.push_back({n, tuple, skip_reason});
        continue;
      }
      Element jac = jacobiator(ext, tuple);
      ++block.checked;
      if (!jac.is_zero())
        rep.defects.push_back({n, tuple, jac, Element::zero(ext.space()), jac});
    }
    rep.blocks.push_back(block);
  }
  return rep;
}

}  // namespace hdb
