// cellab: command-line runner for exponential-length bounds, witnesses, the
// Jiang-Su tower and the acceptance suites.
//
// Exit codes: 0 pass, 1 criterion failure, 2 usage error.

#include "cellab/acceptance.hpp"
#include "cellab/cel.hpp"
#include "cellab/config.hpp"
#include "cellab/dimdrop.hpp"
#include "cellab/errors.hpp"
#include "cellab/witness.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace {

using namespace cellab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::string> format;
  std::string out;
};

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig config;
  std::string path = g.config_path;
  if (path.empty())
    if (const char* env = std::getenv("CELLAB_CONFIG")) path = env;
  if (!path.empty()) config = load_config(path);
  if (g.grid) config.grid_size = *g.grid;
  if (g.seed) config.seed = *g.seed;
  if (g.jobs) config.jobs = *g.jobs;
  if (g.format) config.format = *g.format;
  validate(config);
  return config;
}

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw ArgumentError("cannot write " + g.out);
  file << text;
}

// "ramp:3/2pi" is t -> (3/2) pi t; "-neg" flips the sign.  "sine:<r>pi" is
// sampled r pi sin(2 pi t).  Anything starting with '[' is a JSON fn-spec in
// units of pi.
struct FnSpec {
  std::optional<PiecewiseLinearFn> exact;  // units of pi
  std::vector<double> samples;              // radians
  double slack = 0.0;
};

Rational parse_pi_coefficient(std::string text, const std::string& spec) {
  if (text.size() < 2 || text.substr(text.size() - 2) != "pi")
    throw ParseError("fn-spec '" + spec + "': coefficient must end in 'pi'");
  text.resize(text.size() - 2);
  if (text.empty()) return 1;
  return parse_rational(text);
}

FnSpec parse_fn_spec(const std::string& spec, std::size_t grid) {
  FnSpec out;
  if (!spec.empty() && spec.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("fn-spec JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    out.exact = piecewise_linear_from_json(j);
    return out;
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("fn-spec '" + spec + "': expected JSON or name:<r>pi");
  const std::string name = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  bool negative = false;
  if (arg.size() > 4 && arg.substr(arg.size() - 4) == "-neg") {
    negative = true;
    arg.resize(arg.size() - 4);
  }
  const Rational coeff = parse_pi_coefficient(arg, spec) * (negative ? -1 : 1);
  if (name == "ramp") {
    out.exact = PiecewiseLinearFn::affine(coeff, 0);
  } else if (name == "sine") {
    const double amplitude = to_double(coeff) * std::numbers::pi;
    out.samples.resize(grid);
    for (std::size_t i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
      out.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * t);
    }
    // Grid max/min under-estimate the true extremes by at most |alpha'| dt / 2.
    out.slack = std::abs(amplitude) * 2.0 * std::numbers::pi / (2.0 * static_cast<double>(grid - 1));
  } else {
    throw ParseError("fn-spec '" + spec + "': unknown builtin '" + name + "' (ramp, sine)");
  }
  return out;
}

int cmd_scalar_cel(const GlobalOptions& g, const std::string& spec) {
  const RunConfig config = resolve_config(g);
  const FnSpec fn = parse_fn_spec(spec, config.grid_size);
  nlohmann::json j;
  std::string text;
  if (fn.exact) {
    const ExactScalarCel value = scalar_cel_exact(*fn.exact);
    text = value.value.str();
    j = {{"value", text}, {"exact", true}, {"shift", to_string(value.shift)}};
  } else {
    const double value = scalar_cel(fn.samples);
    std::ostringstream s;
    s.precision(12);
    s << value << " ± " << fn.slack;
    text = s.str();
    j = {{"value", value}, {"exact", false}, {"slack", fn.slack}, {"grid", config.grid_size}};
  }
  if (g.format == std::optional<std::string>("json"))
    emit(g, j.dump(2) + "\n");
  else if (g.format == std::optional<std::string>("csv"))
    emit(g, "value,exact\n\"" + text + "\"," + (fn.exact ? "true" : "false") + "\n");
  else
    emit(g, text + "\n");
  return kExitPass;
}

int emit_report(const GlobalOptions& g, const WitnessReport& report) {
  const nlohmann::json j = to_json(report);
  if (g.format == std::optional<std::string>("csv")) {
    emit(g, "witness_id,paper_target,lower,upper,cu_pass,pass\n" + report.witness_id + "," +
                j["paper_target"].get<std::string>() + "," + j["lower"].get<std::string>() + "," +
                j["upper"].get<std::string>() + "," + (report.cu.pass ? "true" : "false") + "," +
                (report.pass ? "true" : "false") + "\n");
  } else {
    emit(g, j.dump(2) + "\n");
  }
  return report.pass ? kExitPass : kExitFail;
}

struct WitnessOptions {
  long long k = 4;
  bool no_path = false;
  long long L = 100;
  std::string c = "0.3";
  std::string d = "0.7";
  std::string x_branch;
  std::string pad = "0";
  int m = 1;
  int n = 3;
  long long block_k = 1;
  std::string floor;
};

int cmd_witness(const GlobalOptions& g, const std::string& name, const WitnessOptions& w) {
  const RunConfig config = resolve_config(g);
  if (name == "pan-wang") {
    PanWangOptions options;
    options.grid_size = config.grid_size;
    options.tol = config.tol;
    options.with_path = !w.no_path;
    return emit_report(g, pan_wang_report(w.k, options));
  }
  if (name == "chi") {
    const Rational c = parse_rational(w.c);
    const Rational d = parse_rational(w.d);
    SymbolicElement x({{PiecewiseLinearFn::identity(), 1}});
    if (!w.x_branch.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(w.x_branch);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("--x-branch: ") + e.what());
      }
      x = SymbolicElement({{piecewise_linear_from_json(j), 1}});
    }
    const long long L = w.floor.empty() ? w.L : minimal_chi_L(parse_pi_multiple(w.floor).coeff);
    WitnessReport report = chi_report(L, x, c, d, parse_integer(w.pad));
    if (!w.floor.empty()) report.details["requested_floor"] = w.floor;
    return emit_report(g, report);
  }
  if (name == "jiang-su") {
    int n = w.n;
    if (!w.floor.empty()) {
      if (w.m < 1) throw ArgumentError("--m must be at least 1");
      const std::vector<TowerStage> prefix = build_tower(w.m);
      n = minimal_jiangsu_n(prefix.back(), parse_pi_multiple(w.floor).coeff);
    }
    if (w.m < 1 || n <= w.m) throw ArgumentError("need 1 <= m < n");
    if (n > 8) throw ArgumentError("n above 8 is not supported (pattern count grows as 2^(n-m))");
    const std::vector<TowerStage> stages = build_tower(n);
    WitnessReport report = jiangsu_witness(stages, w.m, n, w.block_k);
    if (!w.floor.empty()) report.details["requested_floor"] = w.floor;
    return emit_report(g, report);
  }
  throw ArgumentError("unknown witness '" + name + "' (pan-wang, chi, jiang-su)");
}

int cmd_tower(const GlobalOptions& g, int count, bool patterns) {
  resolve_config(g);
  if (count < 1) throw ArgumentError("--stages must be at least 1");
  const std::vector<TowerStage> stages = build_tower(count);
  bool ok = true;
  nlohmann::json dump = nlohmann::json::array();
  for (const auto& s : stages) {
    nlohmann::json j = to_json(s);
    try {
      check_stage_invariants(s);
      j["invariants"] = "pass";
    } catch (const InvariantError& e) {
      j["invariants"] = e.what();
      ok = false;
    }
    if (patterns && s.transition) {
      const PatternMultiset p = one_step_patterns(s);
      j["patterns"] = to_json(p);
    }
    dump.push_back(j);
  }
  if (g.format == std::optional<std::string>("csv")) {
    std::ostringstream out;
    out << "index,p,q,d,k0,k1,k,r0,r1\n";
    for (const auto& j : dump) {
      out << j["index"] << ',' << j["p"].get<std::string>() << ',' << j["q"].get<std::string>() << ','
          << j["d"].get<std::string>();
      for (const char* key : {"k0", "k1", "k", "r0", "r1"}) out << ',' << (j.contains(key) ? j[key].get<std::string>() : "");
      out << '\n';
    }
    emit(g, out.str());
  } else {
    emit(g, dump.dump(2) + "\n");
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_acceptance(const GlobalOptions& g, const std::string& suite) {
  const RunConfig config = resolve_config(g);
  const std::vector<CriterionResult> results = run_acceptance(suite, config);
  for (const auto& r : results) std::cerr << r.id << ": " << r.seconds << " s\n";
  if (g.format == std::optional<std::string>("json"))
    emit(g, to_json(results).dump(2) + "\n");
  else if (g.format == std::optional<std::string>("csv"))
    emit(g, format_csv(results));
  else
    emit(g, format_text(results));
  return all_passed(results) ? kExitPass : kExitFail;
}

int cmd_curve(const GlobalOptions& g, const std::string& which, int max) {
  resolve_config(g);
  std::ostringstream out;
  if (which == "chi") {
    if (max < 2) throw ArgumentError("--max must be at least 2 for chi");
    out << "L,lower_over_pi,lower\n";
    for (int L = 2; L <= max; ++L) {
      const Rational v = 2 * (1 - Rational(1, L));
      out << L << ',' << to_string(v) << ',' << to_double(v) * std::numbers::pi << '\n';
    }
  } else if (which == "jiang-su") {
    if (max < 2) throw ArgumentError("--max must be at least 2 for jiang-su");
    const std::vector<TowerStage> stages = build_tower(1);
    out << "n,floor_over_pi,floor\n";
    for (int n = 2; n <= max; ++n) {
      const Rational v = jiangsu_floor(stages[0].q, static_cast<unsigned>(n - 1));
      out << n << ',' << to_string(v) << ',' << to_double(v) * std::numbers::pi << '\n';
    }
  } else {
    throw ArgumentError("unknown curve '" + which + "' (chi, jiang-su)");
  }
  emit(g, out.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cellab: exponential length bounds and Jiang-Su tower experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON run configuration (fallback: $CELLAB_CONFIG)");
  app.add_option("--grid", g.grid, "grid size (>= 17)");
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--jobs", g.jobs, "parallel criteria");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "write output to this file");

  std::string spec;
  auto* scalar = app.add_subcommand("scalar-cel", "cel of u(t) = exp(i alpha(t))");
  scalar->add_option("fn-spec", spec, "ramp:<r>pi[-neg], sine:<r>pi, or JSON [[t,v],...] in units of pi")->required();

  std::string witness_name;
  WitnessOptions w;
  auto* witness = app.add_subcommand("witness", "build a witness and its bound report");
  witness->add_option("name", witness_name, "pan-wang | chi | jiang-su")->required();
  witness->add_option("--k", w.k, "matrix size (pan-wang)");
  witness->add_flag("--no-path", w.no_path, "skip the constructive upper bound (pan-wang)");
  witness->add_option("--L", w.L, "block count (chi)");
  witness->add_option("--c", w.c, "interval start (chi)");
  witness->add_option("--d", w.d, "interval end (chi)");
  witness->add_option("--x-branch", w.x_branch, "branch of x as JSON [[t,v],...] (chi, default t)");
  witness->add_option("--pad", w.pad, "zero padding multiplicity (chi)");
  witness->add_option("--m", w.m, "source stage (jiang-su)");
  witness->add_option("--n", w.n, "target stage (jiang-su)");
  witness->add_option("--block-k", w.block_k, "matrix block size (jiang-su)");
  witness->add_option("--floor", w.floor, "requested floor, e.g. 3/2·π; picks the minimal L or n");

  int stages = 4;
  bool patterns = false;
  auto* tower_cmd = app.add_subcommand("tower", "dump the Jiang-Su stage table");
  tower_cmd->add_option("--stages", stages, "number of stages");
  tower_cmd->add_flag("--patterns", patterns, "include one-step pattern multisets");

  std::string suite;
  auto* accept = app.add_subcommand("acceptance", "run acceptance suites");
  accept->add_option("suite", suite, "all | finite-cel | chi | tower | jiang-su | properties | oracle")->required();

  std::string curve_name;
  int curve_max = 32;
  auto* curve = app.add_subcommand("curve", "CSV of bound against L (chi) or n (jiang-su)");
  curve->add_option("which", curve_name, "chi | jiang-su")->required();
  curve->add_option("--max", curve_max, "largest L or n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (scalar->parsed()) return cmd_scalar_cel(g, spec);
    if (witness->parsed()) return cmd_witness(g, witness_name, w);
    if (tower_cmd->parsed()) return cmd_tower(g, stages, patterns);
    if (accept->parsed()) return cmd_acceptance(g, suite);
    if (curve->parsed()) return cmd_curve(g, curve_name, curve_max);
  } catch (const ParseError& e) {
    std::cerr << "cellab: parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "cellab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "cellab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "cellab: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
