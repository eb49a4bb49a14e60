#include "liemetric/cli.hpp"

#include "liemetric/catalog.hpp"
#include "liemetric/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace liemetric::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string entry;
  std::vector<std::string> params;
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  int max_level = -1;
};

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--file", o.file, "algebra specification (JSON)");
  cmd->add_option("--entry", o.entry, "catalog entry name");
  cmd->add_option("--param", o.params, "catalog parameter key=value (repeatable)");
  cmd->add_flag("--json", o.json, "machine-readable output");
}

void add_analysis_options(CLI::App* cmd, Options& o) {
  add_input_options(cmd, o);
  cmd->add_option("--seed", o.seed, "seed for randomized searches");
  cmd->add_option("--tol-rel", o.tol_rel, "relative rank tolerance");
  cmd->add_option("--tol-abs", o.tol_abs, "absolute tolerance floor");
  cmd->add_option("--max-level", o.max_level, "covariant-derivative levels for holonomy");
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("parameter '" + item + "' is not of the form key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw UsageError("parameter '" + key + "' has non-numeric value '" + text + "'");
    }
    out[key] = v;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedInput {
  AlgebraInput input;
  InputEcho echo;
};

LoadedInput load(const Options& o) {
  if (o.file.empty() == o.entry.empty()) {
    throw UsageError("give exactly one of --file or --entry");
  }
  if (!o.file.empty()) {
    if (!o.params.empty()) throw UsageError("--param applies only to --entry");
    const auto text = read_file(o.file);
    return {parse_algebra_spec(text), {"file", "", {}, o.file, digest(text)}};
  }
  const auto build = catalog_build(o.entry, parse_params(o.params));
  return {algebra_input_from_catalog(build), {"entry", build.name, build.params, "", ""}};
}

AnalysisOptions analysis_options(const Options& o, const AlgebraInput& in) {
  AnalysisOptions a;
  a.seed = o.seed;
  a.max_level = o.max_level;
  if (o.tol_rel || o.tol_abs) {
    Tolerance t = in.tolerance.value_or(Tolerance{});
    if (o.tol_rel) t.rel = *o.tol_rel;
    if (o.tol_abs) t.abs = *o.tol_abs;
    try {
      t.check();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    a.tolerance = t;
  }
  return a;
}

int analysis_exit_code(const AnalysisReport& r) {
  if (r.algebra && !r.algebra->valid) return 1;
  if (r.parallel) {
    for (const auto& t : r.parallel->designated) {
      if (!t.parallel) return 1;
    }
  }
  return 0;
}

int run_analysis(const Options& o, const Sections& sections, std::ostream& out,
                 std::ostream& err) {
  const auto loaded = load(o);
  const auto report = analyze(loaded.input, loaded.echo, sections, analysis_options(o, loaded.input));
  if (o.json) {
    out << serialize(report) << "\n";
  } else {
    out << render_text(report);
  }
  const int code = analysis_exit_code(report);
  if (code == 1 && report.algebra && !report.algebra->valid) {
    err << "error: the structure constants do not define a Lie algebra\n";
  } else if (code == 1) {
    err << "error: a designated tensor is not parallel\n";
  }
  return code;
}

int run_catalog_list(bool as_json, std::ostream& out) {
  if (as_json) {
    auto arr = nlohmann::json::array();
    for (const auto& e : catalog_list()) {
      auto params = nlohmann::json::array();
      for (const auto& p : e.params) {
        params.push_back({{"name", p.name}, {"default", p.default_value}, {"range", p.range_text()}});
      }
      arr.push_back({{"name", e.name}, {"symbol", e.symbol}, {"description", e.description},
                     {"params", params}});
    }
    out << arr.dump() << "\n";
    return 0;
  }
  for (const auto& e : catalog_list()) {
    out << e.name << "  " << e.symbol;
    if (!e.params.empty()) {
      out << "  {";
      for (size_t i = 0; i < e.params.size(); ++i) {
        out << (i ? ", " : "") << e.params[i].range_text();
      }
      out << "}";
    }
    out << "\n    " << e.description << "\n";
  }
  return 0;
}

int run_catalog_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.entry.empty()) throw UsageError("catalog verify requires --entry");
  const auto v = verify_table_entry(o.entry, parse_params(o.params));
  if (o.json) {
    auto tensors = nlohmann::json::array();
    for (const auto& t : v.tensors) {
      tensors.push_back({{"name", t.name}, {"residual", t.residual}, {"parallel", t.parallel},
                         {"skew", t.skew}, {"complex_structure", t.complex_structure}});
    }
    nlohmann::json j = {{"name", v.name}, {"params", v.params}, {"tensors", tensors},
                        {"parallel_dim", v.parallel_dim}, {"ok", v.ok}};
    j["expected_dim"] = v.expected_dim ? nlohmann::json(*v.expected_dim) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  } else {
    out << "entry: " << v.name;
    for (const auto& [k, x] : v.params) out << " " << k << "=" << format_number(x);
    out << "\nparallel dimension: " << v.parallel_dim;
    if (v.expected_dim) out << " (expected " << *v.expected_dim << ")";
    out << "\n";
    for (const auto& t : v.tensors) {
      out << t.name << ": " << (t.parallel ? "parallel" : "NOT parallel") << ", residual "
          << format_number(t.residual) << (t.complex_structure ? ", complex structure" : "")
          << "\n";
    }
    out << (v.ok ? "verified" : "FAILED") << "\n";
  }
  if (!v.ok) err << "error: table entry " << v.name << " failed verification\n";
  return v.ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Levi-Civita connection, parallel tensors, curvature and holonomy of metric Lie algebras",
               "liemetric"};
  app.require_subcommand(1);

  Options o;
  struct Command {
    const char* name;
    const char* help;
    Sections sections;
  };
  const std::vector<Command> commands = {
      {"check", "validate the structure constants", {}},
      {"connection", "Levi-Civita connection in an orthonormal frame", {true}},
      {"parallel", "parallel skew-symmetric endomorphisms", {false, true}},
      {"curvature", "curvature operators, Ricci and sectional curvature",
       {false, false, true}},
      {"fingerprint", "isometry invariants of (algebra, parallel tensor)",
       {false, false, false, true}},
      {"holonomy", "holonomy algebra", {false, false, false, false, true}},
      {"derham", "de Rham decomposition report", {false, false, false, false, false, true}},
      {"report", "all sections", Sections::all()},
  };
  std::vector<CLI::App*> analysis;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_analysis_options(sub, o);
    analysis.push_back(sub);
  }
  auto* catalog = app.add_subcommand("catalog", "built-in metric Lie algebras");
  catalog->require_subcommand(1);
  bool list_json = false;
  auto* list = catalog->add_subcommand("list", "list catalog entries");
  list->add_flag("--json", list_json, "machine-readable output");
  auto* verify = catalog->add_subcommand("verify", "check designated tensors of an entry");
  add_input_options(verify, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (size_t i = 0; i < commands.size(); ++i) {
      if (analysis[i]->parsed()) return run_analysis(o, commands[i].sections, out, err);
    }
    if (list->parsed()) return run_catalog_list(list_json, out);
    if (verify->parsed()) return run_catalog_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownEntry& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ParamOutOfRange& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no command given\n";
  return 2;
}

}  // namespace liemetric::cli
