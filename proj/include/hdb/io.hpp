#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdb/field.hpp"
#include "hdb/generators.hpp"
#include "hdb/linfinity.hpp"

namespace hdb {

struct WorkspaceOptions {
  int max_arity = 4;
  int degree_cap = 4;
  std::vector<std::string> flags;
};

// One self-contained input document: an algebra with optional decomposition,
// named derivations and elements, and default options for the commands.
struct Workspace {
  int version = 1;
  AlgebraPtr algebra;
  std::optional<Decomposition> decomposition;
  std::map<std::string, Derivation> derivations;
  std::map<std::string, Element> elements;
  WorkspaceOptions options;
};

// Canonical JSON: alphabetically ordered keys, two-space indent, rationals as
// reduced "p/q" strings, trailing newline. parse(serialize(w)) reproduces w,
// and serialize(parse(text)) == text whenever text is canonical.
std::string serialize_workspace(const Workspace& w);
// Shape errors (bad keys, indices out of range, malformed rationals, parity
// inconsistencies) throw std::runtime_error with the offending JSON path.
// Mathematical validity (Jacobi, Leibniz, ...) is checked by cmd_validate,
// not here.
Workspace parse_workspace(const std::string& text);

// Structure constants of an ordinary Lie algebra, as a standalone document.
GConstants parse_constants(const std::string& text);
std::string serialize_constants(const GConstants& g);

// Exports, same canonical-JSON conventions.
std::string serialize_bracket_table(const SymmetricBracketFamily& fam);
std::string serialize_field(const FormalVectorField& x);
std::string serialize_complex(const Complex& c);

struct CheckResult {
  std::string name;
  std::string status = "pass";  // "pass" or "fail"
  std::vector<std::string> defects;
  std::vector<std::string> notes;
  std::map<std::string, long> counts;
};

// Machine-readable outcome of one command run. Deterministic for a given
// input and flags: never contains wall-clock data.
struct RunReport {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<CheckResult> checks;
  bool pass() const;
  long defect_count() const;
};

std::string serialize_report(const RunReport& r);
// Text rendering computed from the machine-readable report alone; optional
// wall-clock timings (name, seconds) are appended when provided.
std::string render_human(const RunReport& r,
                         const std::vector<std::pair<std::string, double>>& timings = {});

// Command cores shared by the CLI and the python module. Shape/usage problems
// throw std::runtime_error; mathematical defects (including unmet theorem
// hypotheses of a named derivation) are recorded as failing checks.
RunReport cmd_validate(const Workspace& w);
RunReport cmd_brackets(const Workspace& w, int max_arity, std::string* table_json = nullptr);
RunReport cmd_jacobi(const Workspace& w, int max_n);
RunReport cmd_cocylinder(const Workspace& w, int max_n, bool brute_force);
RunReport cmd_homology(const Workspace& w);
RunReport cmd_vfield(const Workspace& w, int cap, std::string* fields_json = nullptr);

// Ready-made workspaces: the vector-field algebras, the operator algebra with
// its order-m differential bundled as "Delta"/"adDelta", and W(n) with the
// quadratic field of the given constants bundled as "Q"/"adQ".
Workspace gen_workspace_wn(int n);
Workspace gen_workspace_end_grassmann(int m);
Workspace gen_workspace_ce(const GConstants& g);

}  // namespace hdb
