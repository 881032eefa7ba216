// Command line front end: thin argument handling around the command cores in
// hdb/io.hpp. Exit codes: 0 all checks pass, 1 a check failed, 2 bad input
// or usage.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "hdb/io.hpp"

namespace {

constexpr int kMaxDim = 64;
constexpr int kMaxArity = 6;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

hdb::Workspace load_workspace(const std::string& path) {
  hdb::Workspace w = hdb::parse_workspace(read_file(path));
  if (w.algebra->dim() > kMaxDim)
    throw std::runtime_error(path + ": algebra dimension " + std::to_string(w.algebra->dim()) +
                             " exceeds the command-line limit " + std::to_string(kMaxDim));
  return w;
}

// 0 means "take the value from the workspace options".
int resolve_limit(int cli_value, int workspace_value, const std::string& what) {
  int v = cli_value ? cli_value : workspace_value;
  if (v < 1 || v > kMaxArity)
    throw std::runtime_error(what + " = " + std::to_string(v) + " is outside 1.." +
                             std::to_string(kMaxArity));
  return v;
}

struct Common {
  std::string workspace_path;
  std::string output_path;
  bool human = false;
  bool timings = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("workspace", c.workspace_path, "workspace JSON file")->required();
  sub->add_flag("--human", c.human, "print a text report instead of the JSON report");
  sub->add_flag("--timings", c.timings, "append wall-clock timings to the text report");
  sub->add_option("--output", c.output_path, "write the JSON report to this file");
}

int emit(const hdb::RunReport& r, const Common& c, double seconds) {
  std::string machine = hdb::serialize_report(r);
  if (!c.output_path.empty()) write_file(c.output_path, machine);
  if (c.human) {
    std::vector<std::pair<std::string, double>> times;
    if (c.timings) times.emplace_back(r.command, seconds);
    std::cout << hdb::render_human(r, times);
  } else if (c.output_path.empty()) {
    std::cout << machine;
  }
  return r.pass() ? 0 : 1;
}

void emit_workspace(const hdb::Workspace& w, const std::string& out_path) {
  std::string text = hdb::serialize_workspace(w);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact derived brackets on finite-dimensional Lie superalgebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hdb 1.0.0");

  Common c_validate, c_brackets, c_jacobi, c_cocylinder, c_homology, c_vfield;
  int opt_max_arity = 0, opt_max_n_jacobi = 0, opt_max_n_cocyl = 0, opt_cap = 0;
  bool opt_brute = false;
  std::string table_path, fields_path;

  CLI::App* validate = app.add_subcommand("validate", "check the workspace data itself");
  add_common(validate, c_validate);

  CLI::App* brackets =
      app.add_subcommand("brackets", "tabulate the derived bracket family of each derivation");
  add_common(brackets, c_brackets);
  brackets->add_option("--max-arity", opt_max_arity, "highest arity to tabulate (default: workspace options)")
      ->check(CLI::Range(1, kMaxArity));
  brackets->add_option("--table", table_path, "write the bracket tables to this file");

  CLI::App* jacobi = app.add_subcommand(
      "jacobi", "compare each Jacobiator against the bracket of the squared derivation");
  add_common(jacobi, c_jacobi);
  jacobi->add_option("--max-n", opt_max_n_jacobi, "highest arity to check (default: workspace options)")
      ->check(CLI::Range(1, kMaxArity));

  CLI::App* cocylinder = app.add_subcommand(
      "cocylinder", "check the one-bracket extension and the small cocylinder of each derivation");
  add_common(cocylinder, c_cocylinder);
  cocylinder->add_option("--max-n", opt_max_n_cocyl, "highest arity to check (default: workspace options)")
      ->check(CLI::Range(1, kMaxArity));
  cocylinder->add_flag("--brute-force", opt_brute,
                       "evaluate identities that are skipped as structurally zero");

  CLI::App* homology = app.add_subcommand("homology", "homology dimensions of each odd square-zero derivation");
  add_common(homology, c_homology);

  CLI::App* vfield = app.add_subcommand(
      "vfield", "generating vector fields of derivations of a coordinate vector-field algebra");
  add_common(vfield, c_vfield);
  vfield->add_option("--cap", opt_cap, "coefficient degree cap (default: workspace options)")
      ->check(CLI::Range(1, kMaxArity));
  vfield->add_option("--fields", fields_path, "write the generating fields to this file");

  CLI::App* gen = app.add_subcommand("gen", "generate example workspaces");
  gen->require_subcommand(1);
  int gen_n = 0, gen_m = 0;
  std::string gen_out_wn, gen_out_eg, gen_out_ce, ce_constants_path;
  CLI::App* gen_wn_cmd = gen->add_subcommand("wn", "vector fields on n odd coordinates");
  gen_wn_cmd->add_option("n", gen_n, "number of odd coordinates")->required()->check(CLI::Range(1, 5));
  gen_wn_cmd->add_option("--out", gen_out_wn, "write the workspace here instead of stdout");
  CLI::App* gen_eg_cmd =
      gen->add_subcommand("end-grassmann", "endomorphisms of the Grassmann algebra on m generators");
  gen_eg_cmd->add_option("m", gen_m, "number of odd generators")->required()->check(CLI::Range(1, 3));
  gen_eg_cmd->add_option("--out", gen_out_eg, "write the workspace here instead of stdout");
  CLI::App* gen_ce_cmd =
      gen->add_subcommand("ce", "quadratic differential of a Lie algebra structure table");
  gen_ce_cmd->add_option("constants", ce_constants_path, "structure constants JSON file")->required();
  gen_ce_cmd->add_option("--out", gen_out_ce, "write the workspace here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto timed = [](auto&& fn) {
      auto t0 = std::chrono::steady_clock::now();
      hdb::RunReport r = fn();
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      return std::make_pair(std::move(r), dt.count());
    };

    if (validate->parsed()) {
      hdb::Workspace w = load_workspace(c_validate.workspace_path);
      auto [r, dt] = timed([&] { return hdb::cmd_validate(w); });
      return emit(r, c_validate, dt);
    }
    if (brackets->parsed()) {
      hdb::Workspace w = load_workspace(c_brackets.workspace_path);
      int max_arity = resolve_limit(opt_max_arity, w.options.max_arity, "max arity");
      std::string tables;
      auto [r, dt] = timed(
          [&] { return hdb::cmd_brackets(w, max_arity, table_path.empty() ? nullptr : &tables); });
      if (!table_path.empty()) write_file(table_path, tables);
      return emit(r, c_brackets, dt);
    }
    if (jacobi->parsed()) {
      hdb::Workspace w = load_workspace(c_jacobi.workspace_path);
      int max_n = resolve_limit(opt_max_n_jacobi, w.options.max_arity, "max arity");
      auto [r, dt] = timed([&] { return hdb::cmd_jacobi(w, max_n); });
      return emit(r, c_jacobi, dt);
    }
    if (cocylinder->parsed()) {
      hdb::Workspace w = load_workspace(c_cocylinder.workspace_path);
      int max_n = resolve_limit(opt_max_n_cocyl, w.options.max_arity, "max arity");
      auto [r, dt] = timed([&] { return hdb::cmd_cocylinder(w, max_n, opt_brute); });
      return emit(r, c_cocylinder, dt);
    }
    if (homology->parsed()) {
      hdb::Workspace w = load_workspace(c_homology.workspace_path);
      auto [r, dt] = timed([&] { return hdb::cmd_homology(w); });
      return emit(r, c_homology, dt);
    }
    if (vfield->parsed()) {
      hdb::Workspace w = load_workspace(c_vfield.workspace_path);
      int cap = resolve_limit(opt_cap, w.options.degree_cap, "degree cap");
      std::string fields;
      auto [r, dt] =
          timed([&] { return hdb::cmd_vfield(w, cap, fields_path.empty() ? nullptr : &fields); });
      if (!fields_path.empty()) write_file(fields_path, fields);
      return emit(r, c_vfield, dt);
    }
    if (gen_wn_cmd->parsed()) {
      emit_workspace(hdb::gen_workspace_wn(gen_n), gen_out_wn);
      return 0;
    }
    if (gen_eg_cmd->parsed()) {
      emit_workspace(hdb::gen_workspace_end_grassmann(gen_m), gen_out_eg);
      return 0;
    }
    if (gen_ce_cmd->parsed()) {
      hdb::GConstants g = hdb::parse_constants(read_file(ce_constants_path));
      emit_workspace(hdb::gen_workspace_ce(g), gen_out_ce);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
