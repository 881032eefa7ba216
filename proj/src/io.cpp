#include "hdb/io.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hdb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::runtime_error(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path, "unknown key \"" + it.key() + "\"");
}

const json& need(const json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing key \"" + key + "\"");
  return *it;
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const json& get_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

Rat get_rational(const json& j, const std::string& path) {
  std::string s = get_string(j, path);
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

int get_index(const json& j, const std::string& path, int dim) {
  int i = get_int(j, path);
  if (i < 0 || i >= dim) fail(path, "index " + std::to_string(i) + " out of range [0," + std::to_string(dim) + ")");
  return i;
}

std::vector<int> get_index_list(const json& j, const std::string& path, int dim) {
  std::vector<int> out;
  const json& arr = get_array(j, path);
  for (size_t t = 0; t < arr.size(); ++t)
    out.push_back(get_index(arr[t], path + "[" + std::to_string(t) + "]", dim));
  return out;
}

json basis_json(const GradedSpace& s) {
  json arr = json::array();
  for (int i = 0; i < s.dim(); ++i) arr.push_back({{"name", s.name(i)}, {"parity", s.parity(i)}});
  return arr;
}

json sparse_matrix_json(const RatMat& m) {
  json arr = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (cmp(m.at(r, c), 0) != 0)
        arr.push_back({{"col", c}, {"row", r}, {"value", format_rational(m.at(r, c))}});
  return arr;
}

json coeff_vector_json(const Element& e) {
  json arr = json::array();
  for (int i = 0; i < e.dim(); ++i) arr.push_back(format_rational(e.coeff(i)));
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SpacePtr parse_basis(const json& jb, const std::string& path) {
  const json& arr = get_array(jb, path);
  if (arr.empty()) fail(path, "basis must not be empty");
  std::vector<std::string> names;
  std::vector<int> parities;
  for (size_t t = 0; t < arr.size(); ++t) {
    std::string p = path + "[" + std::to_string(t) + "]";
    const json& item = get_object(arr[t], p);
    check_keys(item, p, {"name", "parity"});
    names.push_back(get_string(need(item, p, "name"), p + ".name"));
    int parity = get_int(need(item, p, "parity"), p + ".parity");
    if (parity != 0 && parity != 1) fail(p + ".parity", "parity must be 0 or 1");
    parities.push_back(parity);
  }
  return make_space(std::move(names), std::move(parities));
}

std::vector<SCEntry> parse_sc_entries(const json& jb, const std::string& path, int dim) {
  std::vector<SCEntry> out;
  const json& arr = get_array(jb, path);
  for (size_t t = 0; t < arr.size(); ++t) {
    std::string p = path + "[" + std::to_string(t) + "]";
    const json& item = get_object(arr[t], p);
    check_keys(item, p, {"i", "j", "k", "value"});
    SCEntry e;
    e.i = get_index(need(item, p, "i"), p + ".i", dim);
    e.j = get_index(need(item, p, "j"), p + ".j", dim);
    e.k = get_index(need(item, p, "k"), p + ".k", dim);
    e.value = get_rational(need(item, p, "value"), p + ".value");
    if (e.i >= e.j) fail(p, "bracket entries require i < j");
    out.push_back(e);
  }
  return out;
}

}  // namespace

Workspace parse_workspace(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("not valid JSON: ") + e.what());
  }
  get_object(j, "top level");
  check_keys(j, "top level",
             {"algebra", "decomposition", "derivations", "elements", "options", "version"});

  Workspace w;
  w.version = get_int(need(j, "top level", "version"), "version");
  if (w.version != 1) fail("version", "unsupported version " + std::to_string(w.version));

  const json& ja = get_object(need(j, "top level", "algebra"), "algebra");
  check_keys(ja, "algebra", {"basis", "brackets"});
  SpacePtr space = parse_basis(need(ja, "algebra", "basis"), "algebra.basis");
  int dim = space->dim();
  std::vector<SCEntry> entries =
      parse_sc_entries(need(ja, "algebra", "brackets"), "algebra.brackets", dim);
  try {
    w.algebra = make_algebra(space, entries);
  } catch (const std::invalid_argument& e) {
    fail("algebra.brackets", e.what());
  }

  if (j.contains("decomposition")) {
    const json& jd = get_object(j["decomposition"], "decomposition");
    check_keys(jd, "decomposition", {"abelian", "k", "v"});
    std::vector<int> k = get_index_list(need(jd, "decomposition", "k"), "decomposition.k", dim);
    std::vector<int> v = get_index_list(need(jd, "decomposition", "v"), "decomposition.v", dim);
    bool abelian = get_bool(need(jd, "decomposition", "abelian"), "decomposition.abelian");
    try {
      w.decomposition.emplace(w.algebra, k, v, abelian);
    } catch (const std::invalid_argument& e) {
      fail("decomposition", e.what());
    }
  }

  if (j.contains("derivations")) {
    const json& jds = get_object(j["derivations"], "derivations");
    for (auto it = jds.begin(); it != jds.end(); ++it) {
      std::string p = "derivations." + it.key();
      const json& item = get_object(it.value(), p);
      check_keys(item, p, {"entries", "parity"});
      int parity = get_int(need(item, p, "parity"), p + ".parity");
      if (parity != 0 && parity != 1) fail(p + ".parity", "parity must be 0 or 1");
      RatMat m(dim, dim);
      const json& arr = get_array(need(item, p, "entries"), p + ".entries");
      for (size_t t = 0; t < arr.size(); ++t) {
        std::string pe = p + ".entries[" + std::to_string(t) + "]";
        const json& entry = get_object(arr[t], pe);
        check_keys(entry, pe, {"col", "row", "value"});
        int row = get_index(need(entry, pe, "row"), pe + ".row", dim);
        int col = get_index(need(entry, pe, "col"), pe + ".col", dim);
        m.at(row, col) = get_rational(need(entry, pe, "value"), pe + ".value");
      }
      try {
        w.derivations.emplace(it.key(), Derivation(w.algebra, GradedLinearMap(space, space, parity, m)));
      } catch (const std::invalid_argument& e) {
        fail(p, e.what());
      }
    }
  }

  if (j.contains("elements")) {
    const json& jes = get_object(j["elements"], "elements");
    for (auto it = jes.begin(); it != jes.end(); ++it) {
      std::string p = "elements." + it.key();
      const json& arr = get_array(it.value(), p);
      if (static_cast<int>(arr.size()) != dim)
        fail(p, "expected " + std::to_string(dim) + " coefficients, got " + std::to_string(arr.size()));
      std::vector<Rat> coeffs;
      for (size_t t = 0; t < arr.size(); ++t)
        coeffs.push_back(get_rational(arr[t], p + "[" + std::to_string(t) + "]"));
      w.elements.emplace(it.key(), Element(space, std::move(coeffs)));
    }
  }

  if (j.contains("options")) {
    const json& jo = get_object(j["options"], "options");
    check_keys(jo, "options", {"degree_cap", "flags", "max_arity"});
    if (jo.contains("max_arity")) w.options.max_arity = get_int(jo["max_arity"], "options.max_arity");
    if (jo.contains("degree_cap")) w.options.degree_cap = get_int(jo["degree_cap"], "options.degree_cap");
    if (w.options.max_arity < 1) fail("options.max_arity", "must be >= 1");
    if (w.options.degree_cap < 1) fail("options.degree_cap", "must be >= 1");
    if (jo.contains("flags")) {
      const json& arr = get_array(jo["flags"], "options.flags");
      for (size_t t = 0; t < arr.size(); ++t)
        w.options.flags.push_back(get_string(arr[t], "options.flags[" + std::to_string(t) + "]"));
    }
  }
  return w;
}

std::string serialize_workspace(const Workspace& w) {
  json j;
  j["version"] = w.version;

  const GradedSpace& s = *w.algebra->space();
  json ja;
  ja["basis"] = basis_json(s);
  json brackets = json::array();
  for (const auto& [pair, row] : w.algebra->raw_table()) {
    for (const auto& [k, value] : row) {
      if (cmp(value, 0) == 0) continue;
      if (pair.first >= pair.second)
        throw std::runtime_error("serialize_workspace: bracket entry [" +
                                 std::to_string(pair.first) + "," + std::to_string(pair.second) +
                                 "] is not representable (entries require i < j)");
      brackets.push_back({{"i", pair.first},
                          {"j", pair.second},
                          {"k", k},
                          {"value", format_rational(value)}});
    }
  }
  ja["brackets"] = brackets;
  j["algebra"] = ja;

  if (w.decomposition) {
    j["decomposition"] = {{"abelian", w.decomposition->abelian()},
                          {"k", w.decomposition->k_indices()},
                          {"v", w.decomposition->v_indices()}};
  }

  json jds = json::object();
  for (const auto& [name, d] : w.derivations)
    jds[name] = {{"entries", sparse_matrix_json(d.map().matrix())}, {"parity", d.parity()}};
  j["derivations"] = jds;

  json jes = json::object();
  for (const auto& [name, e] : w.elements) jes[name] = coeff_vector_json(e);
  j["elements"] = jes;

  json flags = json::array();
  for (const std::string& f : w.options.flags) flags.push_back(f);
  j["options"] = {{"degree_cap", w.options.degree_cap},
                  {"flags", flags},
                  {"max_arity", w.options.max_arity}};
  return dump(j);
}

GConstants parse_constants(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("not valid JSON: ") + e.what());
  }
  get_object(j, "top level");
  check_keys(j, "top level", {"dim", "entries"});
  GConstants g;
  g.dim = get_int(need(j, "top level", "dim"), "dim");
  if (g.dim < 1) fail("dim", "must be >= 1");
  g.entries = parse_sc_entries(need(j, "top level", "entries"), "entries", g.dim);
  return g;
}

std::string serialize_constants(const GConstants& g) {
  json entries = json::array();
  for (const SCEntry& e : g.entries)
    entries.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"value", format_rational(e.value)}});
  return dump(json{{"dim", g.dim}, {"entries", entries}});
}

std::string serialize_bracket_table(const SymmetricBracketFamily& fam) {
  json j;
  j["max_arity"] = fam.max_arity();
  j["parity"] = fam.parity();
  j["space"] = basis_json(*fam.space());
  json tables = json::object();
  for (const auto& [arity, table] : fam.tables()) {
    json rows = json::array();
    for (const auto& [tuple, value] : table)
      rows.push_back({{"tuple", tuple}, {"value", coeff_vector_json(value)}});
    tables[std::to_string(arity)] = rows;
  }
  j["tables"] = tables;
  return dump(j);
}

std::string serialize_field(const FormalVectorField& x) {
  json j;
  j["cap"] = x.cap();
  j["parity"] = x.parity();
  j["space"] = basis_json(*x.space());
  json comps = json::array();
  for (const Poly& p : x.components()) {
    json terms = json::array();
    for (const auto& [key, c] : p.terms())
      terms.push_back({{"monomial", key}, {"value", format_rational(c)}});
    comps.push_back(terms);
  }
  j["components"] = comps;
  return dump(j);
}

std::string serialize_complex(const Complex& c) {
  json j;
  j["basis"] = basis_json(*c.space());
  j["differential"] = sparse_matrix_json(c.d().matrix());
  return dump(j);
}

bool RunReport::pass() const {
  for (const CheckResult& c : checks)
    if (c.status != "pass") return false;
  return true;
}

long RunReport::defect_count() const {
  long n = 0;
  for (const CheckResult& c : checks) n += static_cast<long>(c.defects.size());
  return n;
}

std::string serialize_report(const RunReport& r) {
  json j;
  j["command"] = r.command;
  json config = json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  j["config"] = config;
  json checks = json::array();
  for (const CheckResult& c : r.checks) {
    json counts = json::object();
    for (const auto& [k, v] : c.counts) counts[k] = v;
    checks.push_back({{"counts", counts},
                      {"defects", c.defects},
                      {"name", c.name},
                      {"notes", c.notes},
                      {"status", c.status}});
  }
  j["checks"] = checks;
  j["summary"] = {{"checks", static_cast<long>(r.checks.size())},
                  {"defects", r.defect_count()},
                  {"status", r.pass() ? "pass" : "fail"}};
  return dump(j);
}

std::string render_human(const RunReport& r,
                         const std::vector<std::pair<std::string, double>>& timings) {
  std::ostringstream out;
  out << "== " << r.command << " ==\n";
  if (!r.config.empty()) {
    out << "config:";
    for (const auto& [k, v] : r.config) out << " " << k << "=" << v;
    out << "\n";
  }
  for (const CheckResult& c : r.checks) {
    out << (c.status == "pass" ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.counts.empty()) {
      out << " (";
      bool first = true;
      for (const auto& [k, v] : c.counts) {
        if (!first) out << ", ";
        out << k << "=" << v;
        first = false;
      }
      out << ")";
    }
    out << "\n";
    for (const std::string& n : c.notes) out << "    note: " << n << "\n";
    for (const std::string& d : c.defects) out << "    defect: " << d << "\n";
  }
  out << "summary: " << (r.pass() ? "PASS" : "FAIL") << " (" << r.defect_count() << " defect(s) in "
      << r.checks.size() << " check(s))\n";
  if (!timings.empty()) {
    out << "timings:\n";
    for (const auto& [name, seconds] : timings) {
      std::ostringstream sec;
      sec.setf(std::ios::fixed);
      sec.precision(3);
      sec << seconds;
      out << "  " << name << ": " << sec.str() << " s\n";
    }
  }
  return out.str();
}

namespace {

std::string format_indices(const std::vector<int>& idx) {
  std::string out = "(";
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(idx[i]);
  }
  return out + ")";
}

std::string format_violation(const Violation& v) {
  return v.kind + " at " + format_indices(v.where) + ": " + v.detail;
}

CheckResult from_validation(std::string name, const ValidationReport& rep) {
  CheckResult c;
  c.name = std::move(name);
  for (const Violation& v : rep.items) c.defects.push_back(format_violation(v));
  if (!c.defects.empty()) c.status = "fail";
  return c;
}

void add_jacobiator_data(CheckResult& c, const JacobiatorReport& rep) {
  for (const auto& b : rep.blocks) {
    c.counts["arity_" + std::to_string(b.arity) + "_checked"] = b.checked;
    c.counts["arity_" + std::to_string(b.arity) + "_skipped"] = b.skipped;
  }
  std::set<std::string> reasons;
  for (const auto& s : rep.skips) reasons.insert(s.reason);
  c.notes.assign(reasons.begin(), reasons.end());
  for (const auto& d : rep.defects)
    c.defects.push_back("arity " + std::to_string(d.arity) + " tuple " + format_indices(d.tuple) +
                        ": lhs = " + d.lhs.to_string() + ", rhs = " + d.rhs.to_string() +
                        ", defect = " + d.defect.to_string());
  if (!c.defects.empty()) c.status = "fail";
}

const Decomposition& require_decomposition(const Workspace& w) {
  if (!w.decomposition)
    throw std::runtime_error("this command requires a decomposition section in the workspace");
  return *w.decomposition;
}

void require_derivations(const Workspace& w) {
  if (w.derivations.empty())
    throw std::runtime_error("this command requires at least one derivation in the workspace");
}

}  // namespace

RunReport cmd_validate(const Workspace& w) {
  RunReport r;
  r.command = "validate";

  CheckResult alg = from_validation("algebra", validate_lie_superalgebra(*w.algebra));
  alg.counts["dim"] = w.algebra->dim();
  r.checks.push_back(std::move(alg));

  if (w.decomposition) {
    CheckResult dec = from_validation("decomposition", validate_decomposition(*w.decomposition));
    dec.counts["dim_k"] = static_cast<long>(w.decomposition->k_indices().size());
    dec.counts["dim_v"] = static_cast<long>(w.decomposition->v_indices().size());
    r.checks.push_back(std::move(dec));
  }

  for (const auto& [name, d] : w.derivations) {
    CheckResult c = from_validation("derivation(" + name + ")", validate_derivation(d));
    c.counts["parity"] = d.parity();
    if (d.parity() == 1)
      c.counts["square_zero"] = derivation_square(d).map().matrix().is_zero() ? 1 : 0;
    if (w.decomposition)
      c.counts["preserves_k"] = check_preserves_k(*w.decomposition, d) ? 1 : 0;
    r.checks.push_back(std::move(c));
  }
  return r;
}

RunReport cmd_brackets(const Workspace& w, int max_arity, std::string* table_json) {
  const Decomposition& dec = require_decomposition(w);
  require_derivations(w);
  RunReport r;
  r.command = "brackets";
  r.config["max_arity"] = std::to_string(max_arity);

  nlohmann::json tables = nlohmann::json::object();
  for (const auto& [name, d] : w.derivations) {
    CheckResult c;
    c.name = "brackets(" + name + ")";
    try {
      SymmetricBracketFamily fam = derived_bracket_family(dec, d, max_arity);
      c.counts["order"] = derivation_order(dec, d, max_arity);
      for (int arity = 1; arity <= max_arity; ++arity) {
        auto it = fam.tables().find(arity);
        c.counts["arity_" + std::to_string(arity) + "_entries"] =
            it == fam.tables().end() ? 0 : static_cast<long>(it->second.size());
      }
      tables[name] = nlohmann::json::parse(serialize_bracket_table(fam));
    } catch (const std::invalid_argument& e) {
      c.status = "fail";
      c.defects.push_back(e.what());
    }
    r.checks.push_back(std::move(c));
  }
  if (table_json) *table_json = dump(tables);
  return r;
}

RunReport cmd_jacobi(const Workspace& w, int max_n) {
  const Decomposition& dec = require_decomposition(w);
  require_derivations(w);
  RunReport r;
  r.command = "jacobi";
  r.config["max_n"] = std::to_string(max_n);

  for (const auto& [name, d] : w.derivations) {
    CheckResult c;
    c.name = "main-identity(" + name + ")";
    try {
      JacobiatorReport rep = verify_main_theorem(dec, d, max_n);
      add_jacobiator_data(c, rep);
      if (d.parity() == 1)
        c.counts["square_zero"] = derivation_square(d).map().matrix().is_zero() ? 1 : 0;
    } catch (const std::invalid_argument& e) {
      c.status = "fail";
      c.defects.push_back(e.what());
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

RunReport cmd_cocylinder(const Workspace& w, int max_n, bool brute_force) {
  const Decomposition& dec = require_decomposition(w);
  require_derivations(w);
  RunReport r;
  r.command = "cocylinder";
  r.config["brute_force"] = brute_force ? "true" : "false";
  r.config["max_n"] = std::to_string(max_n);

  for (const auto& [name, d] : w.derivations) {
    try {
      ExtendedBracketStructure ext(dec, d, max_n);

      CheckResult lin;
      lin.name = "linfinity(" + name + ")";
      add_jacobiator_data(lin, verify_linfinity(ext, max_n, brute_force));
      r.checks.push_back(std::move(lin));

      r.checks.push_back(from_validation("leibniz(" + name + ")", check_binary_leibniz(ext)));

      CheckResult lem;
      lem.name = "lemma(" + name + ")";
      SmallCocylinder sc = small_cocylinder(dec, d);
      auto expect = [&lem](bool ok, const std::string& what) {
        if (!ok) lem.defects.push_back(what);
      };
      expect(validate_complex(sc.total).ok(), "total complex differential does not square to zero");
      expect(validate_complex(sc.shifted).ok(), "shifted complex differential does not square to zero");
      expect(validate_chain_map(sc.j).ok(), "j is not a chain map");
      expect(validate_chain_map(sc.p).ok(), "p is not a chain map");
      expect(validate_chain_map(sc.q).ok(), "q is not a chain map");
      RatMat incl(dec.algebra()->dim(), static_cast<int>(dec.k_indices().size()));
      for (size_t t = 0; t < dec.k_indices().size(); ++t) incl.at(dec.k_indices()[t], static_cast<int>(t)) = 1;
      expect(sc.p.map().matrix().mul(sc.j.map().matrix()) == incl, "p o j is not the inclusion of K");
      expect(sc.q.map().matrix().mul(sc.j.map().matrix()) ==
                 RatMat::identity(static_cast<int>(dec.k_indices().size())),
             "q o j is not the identity on K");
      expect(ext.underlying_complex().d().matrix() == sc.shifted.d().matrix(),
             "unary bracket differs from the shifted cocylinder differential");
      expect(is_quasi_iso(sc.j), "j is not a quasi-isomorphism");
      expect(is_quasi_iso(sc.q), "q is not a quasi-isomorphism");
      Homology h = homology(sc.total);
      lem.counts["fiber_h_even"] = h.even.dim;
      lem.counts["fiber_h_odd"] = h.odd.dim;
      if (!lem.defects.empty()) lem.status = "fail";
      r.checks.push_back(std::move(lem));
    } catch (const std::invalid_argument& e) {
      CheckResult c;
      c.name = "cocylinder(" + name + ")";
      c.status = "fail";
      c.defects.push_back(e.what());
      r.checks.push_back(std::move(c));
    }
  }
  return r;
}

RunReport cmd_homology(const Workspace& w) {
  require_derivations(w);
  RunReport r;
  r.command = "homology";

  for (const auto& [name, d] : w.derivations) {
    CheckResult c;
    c.name = "homology(" + name + ")";
    try {
      if (d.parity() != 1) throw std::invalid_argument("derivation is even, not a differential");
      Complex on_l(d.algebra()->space(), d.map().matrix());
      Homology h = homology(on_l);  // throws if d^2 != 0
      c.counts["l_h_even"] = h.even.dim;
      c.counts["l_h_odd"] = h.odd.dim;
      if (w.decomposition) {
        SmallCocylinder sc = small_cocylinder(*w.decomposition, d);
        Homology hk = homology(sc.on_k);
        Homology ht = homology(sc.total);
        c.counts["k_h_even"] = hk.even.dim;
        c.counts["k_h_odd"] = hk.odd.dim;
        c.counts["fiber_h_even"] = ht.even.dim;
        c.counts["fiber_h_odd"] = ht.odd.dim;
      }
    } catch (const std::invalid_argument& e) {
      c.status = "fail";
      c.defects.push_back(e.what());
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

namespace {

// The workspace algebra must be exactly the generated W(n): same basis names,
// parities and structure constants.
WnAlgebra matching_wn(const Workspace& w) {
  int dim = w.algebra->dim();
  for (int n = 1; n <= 5; ++n) {
    if (n * (1 << n) != dim) continue;
    WnAlgebra ref = gen_wn(n);
    if (*w.algebra->space() != *ref.L->space())
      throw std::runtime_error(
          "vfield: basis does not match the generated vector-field algebra W(" + std::to_string(n) +
          ")");
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        Element a = Element::basis(w.algebra->space(), i);
        Element b = Element::basis(w.algebra->space(), j);
        if (!(w.algebra->bracket(a, b) ==
              Element(w.algebra->space(), ref.L->bracket(a, b).coeffs())))
          throw std::runtime_error("vfield: structure constants differ from W(" + std::to_string(n) +
                                   ") at pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    if (w.decomposition &&
        (w.decomposition->k_indices() != ref.dec.k_indices() ||
         w.decomposition->v_indices() != ref.dec.v_indices() || !w.decomposition->abelian()))
      throw std::runtime_error(
          "vfield: decomposition must be the constant-fields splitting of W(n)");
    return ref;
  }
  throw std::runtime_error("vfield: algebra dimension " + std::to_string(dim) +
                           " is not of the form n*2^n for n <= 5");
}

}  // namespace

RunReport cmd_vfield(const Workspace& w, int cap, std::string* fields_json) {
  require_derivations(w);
  WnAlgebra ref = matching_wn(w);
  RunReport r;
  r.command = "vfield";
  r.config["cap"] = std::to_string(cap);

  std::map<std::string, FormalVectorField> fields;
  nlohmann::json fields_doc = nlohmann::json::object();
  for (const auto& [name, d] : w.derivations) {
    CheckResult c;
    c.name = "vfield(" + name + ")";
    try {
      Derivation dd(ref.L, d.map());
      FormalVectorField q = generating_field(ref.dec, dd, cap);
      int degree = -1;
      for (const Poly& p : q.components()) degree = std::max(degree, p.degree());
      c.counts["degree"] = degree;
      c.counts["parity"] = q.parity();
      c.counts["preserves_k"] = check_preserves_k(ref.dec, dd) ? 1 : 0;
      if (d.parity() == 1) c.counts["homological"] = is_homological(q) ? 1 : 0;
      fields_doc[name] = nlohmann::json::parse(serialize_field(q));
      fields.emplace(name, q);
    } catch (const std::exception& e) {
      c.status = "fail";
      c.defects.push_back(e.what());
    }
    r.checks.push_back(std::move(c));
  }

  // Homomorphism checks for pairs of complement-preserving derivations, and
  // square compatibility for the odd ones.
  for (auto it1 = w.derivations.begin(); it1 != w.derivations.end(); ++it1) {
    if (!fields.count(it1->first)) continue;
    Derivation d1(ref.L, it1->second.map());
    if (!check_preserves_k(ref.dec, d1)) continue;
    if (d1.parity() == 1) {
      CheckResult c;
      c.name = "square(" + it1->first + ")";
      FormalVectorField lhs = field_square(fields.at(it1->first)).truncated(cap - 1);
      FormalVectorField rhs =
          generating_field(ref.dec, derivation_square(d1), cap).truncated(cap - 1);
      if (!(lhs == rhs)) {
        c.status = "fail";
        c.defects.push_back("square of the generating field differs from the generating field of "
                            "the squared derivation");
      }
      r.checks.push_back(std::move(c));
    }
    for (auto it2 = std::next(it1); it2 != w.derivations.end(); ++it2) {
      if (!fields.count(it2->first)) continue;
      Derivation d2(ref.L, it2->second.map());
      if (!check_preserves_k(ref.dec, d2)) continue;
      CheckResult c;
      c.name = "homomorphism(" + it1->first + "," + it2->first + ")";
      if (!check_generating_field_homomorphism(ref.dec, d1, d2, cap)) {
        c.status = "fail";
        c.defects.push_back("commutator of generating fields differs from the generating field of "
                            "the commutator");
      }
      r.checks.push_back(std::move(c));
    }
  }

  if (fields_json) *fields_json = dump(fields_doc);
  return r;
}

Workspace gen_workspace_wn(int n) {
  WnAlgebra w = gen_wn(n);
  Workspace out;
  out.algebra = w.L;
  out.decomposition = w.dec;
  return out;
}

Workspace gen_workspace_end_grassmann(int m) {
  EndGrassmann eg = gen_end_grassmann(m);
  RatMat op = eg.lambda.derivative_operator(0);
  for (int i = 1; i < m; ++i) op = op.mul(eg.lambda.derivative_operator(i));
  Element delta = eg.element_from_operator(op);
  Workspace out;
  out.algebra = eg.L;
  out.decomposition = eg.dec;
  out.elements.emplace("Delta", delta);
  out.derivations.emplace("adDelta", inner_derivation(eg.L, delta));
  return out;
}

Workspace gen_workspace_ce(const GConstants& g) {
  WnAlgebra w = gen_wn(g.dim);
  Element q = gen_ce_field(w, g);
  Workspace out;
  out.algebra = w.L;
  out.decomposition = w.dec;
  out.elements.emplace("Q", q);
  out.derivations.emplace("adQ", inner_derivation(w.L, q));
  return out;
}

}  // namespace hdb
