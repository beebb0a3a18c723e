#include "cellab/acceptance.hpp"

#include "cellab/cel.hpp"
#include "cellab/dimdrop.hpp"
#include "cellab/errors.hpp"
#include "cellab/funalg.hpp"
#include "cellab/random.hpp"
#include "cellab/witness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cellab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fixed(double value, int digits = 6) {
  if (std::isinf(value)) return "inf";
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

std::string pi_str(const Rational& coeff) { return PiMultiple{coeff}.str(); }

CriterionResult make_result(std::string id, std::string title) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  return r;
}

// ---------------------------------------------------------------- finite-cel

CriterionResult finite_cel(const RunConfig& config) {
  CriterionResult r = make_result("finite-cel", "finite-matrix equality cel_CU(M_k(C[0,1])) = 2pi(k-1)/k");
  r.time_limit = 60.0;
  r.pass = true;
  std::ostringstream summary;
  r.measured = nlohmann::json::array();
  for (long long k : {2LL, 3LL, 4LL, 8LL}) {
    const Rational target(2 * (k - 1), k);
    const double target_d = to_double(target) * kPi;
    nlohmann::json row{{"k", k}, {"target", pi_str(target)}};
    bool ok = true;
    try {
      PanWangOptions options;
      options.grid_size = config.grid_size;
      options.tol = config.tol;
      const WitnessReport witness = pan_wang_report(k, options);
      const bool exact = witness.bound.lower_exact && witness.bound.lower_exact->coeff == target && witness.cu.pass;
      const double endpoint = witness.details["endpoint_error"].get<double>();
      const bool path_ok = witness.bound.upper <= target_d + 1e-2 && endpoint <= 1e-2;
      row["lower"] = witness.bound.lower_exact->str();
      row["witness_length"] = fixed(witness.bound.upper);
      row["witness_endpoint"] = fixed(endpoint, 9);
      ok = exact && path_ok;

      Rng rng(config.seed + static_cast<std::uint64_t>(k));
      double max_length = 0.0;
      double max_endpoint = 0.0;
      for (int i = 0; i < 20; ++i) {
        const SampledMatrixField u = random_cu_field(rng, k, config.grid_size, 0.6, config.tol);
        const CuPath path = cu_upper_bound_path(u, config.tol);
        max_length = std::max(max_length, path.length);
        max_endpoint = std::max(max_endpoint, path.endpoint_error);
      }
      row["random_max_length"] = fixed(max_length);
      row["random_max_endpoint"] = fixed(max_endpoint, 9);
      ok = ok && max_length <= target_d + 1e-2 && max_endpoint <= 1e-2;
    } catch (const Error& e) {
      row["error"] = e.what();
      ok = false;
    }
    row["pass"] = ok;
    r.pass = r.pass && ok;
    summary << (k == 2 ? "" : "; ") << "k=" << k << " lower=" << row.value("lower", std::string("?"))
            << " upper<=" << row.value("random_max_length", std::string("?")) << "/"
            << row.value("witness_length", std::string("?"));
    r.measured.push_back(row);
  }
  r.summary = summary.str();
  return r;
}

// ---------------------------------------------------------------------- chi

CriterionResult chi_bound(const RunConfig&) {
  CriterionResult r = make_result("chi", "chi-witness lower bound 2pi(1-1/L)");
  r.pass = true;
  std::ostringstream summary;
  r.measured = nlohmann::json::array();
  const SymbolicElement x({{PiecewiseLinearFn::identity(), 1}});
  bool first = true;
  for (long long L : {4LL, 100LL, 10000LL}) {
    const Rational target = 2 * (1 - Rational(1, L));
    nlohmann::json row{{"L", L}, {"target", pi_str(target)}};
    bool ok = false;
    try {
      const WitnessReport report = chi_report(L, x, Rational(3, 10), Rational(7, 10));
      ok = report.bound.lower_exact && report.bound.lower_exact->coeff == target && report.cu.pass && report.cu.exact;
      row["lower"] = report.bound.lower_exact->str();
      row["cu_exact_pass"] = report.cu.pass;
    } catch (const Error& e) {
      row["error"] = e.what();
    }
    row["pass"] = ok;
    r.pass = r.pass && ok;
    summary << (first ? "" : "; ") << "L=" << L << " lower=" << row.value("lower", std::string("?"));
    first = false;
    r.measured.push_back(row);
  }
  r.summary = summary.str();
  return r;
}

// -------------------------------------------------------------------- tower

CriterionResult tower(const RunConfig&) {
  CriterionResult r = make_result("tower", "Jiang-Su tower regression, invariants, boundary law, dichotomy");
  r.time_limit = 30.0;
  nlohmann::json m;
  bool ok = true;
  try {
    const std::vector<TowerStage> stages = build_tower(4);
    const TowerStage& s1 = stages[0];
    const TowerStage& s2 = stages[1];
    const StageTransition& t1 = *s1.transition;
    const bool regression = s2.p == 26 && s2.q == 51 && s2.d == 1326 && t1.k0 == 13 && t1.k1 == 17 && t1.r0 == 17 &&
                            t1.r1 == 13;
    m["stage2"] = {s2.p.str(), s2.q.str(), s2.d.str(), t1.k0.str(), t1.k1.str(), t1.r0.str(), t1.r1.str()};
    m["stage2_regression"] = regression;
    ok = ok && regression;

    bool invariants = true;
    bool proven = true;
    for (const auto& s : stages) {
      check_stage_invariants(s);
      if (s.transition) proven = proven && s.transition->primality_proven;
    }
    m["invariants"] = invariants;
    m["primality_proven"] = proven;
    m["d4"] = stages[3].d.str();
    ok = ok && proven;

    int levels = 0;
    bool boundary = true;
    bool unital = true;
    for (int a = 1; a <= 4; ++a) {
      for (int b = a + 1; b <= 4; ++b) {
        const PatternMultiset p = composite_patterns(stages, a, b);
        boundary = boundary && boundary_check(p, stages[a - 1], stages[b - 1]).pass;
        unital = unital && p.total() * stages[a - 1].d == stages[b - 1].d;
        ++levels;
      }
    }
    m["boundary_levels"] = levels;
    m["boundary_pass"] = boundary;
    m["unital"] = unital;
    ok = ok && boundary && unital;

    std::int64_t pairs = 0;
    std::int64_t hits = 0;
    for (std::int64_t p = 1; p <= 10000; ++p) {
      for (std::int64_t q = 1; p * q <= 10000; ++q) {
        if (std::gcd(p, q) != 1) continue;
        ++pairs;
        hits += dichotomy_scan(p, q);
      }
    }
    BigInt modular = 0;
    for (int s = 2; s <= 4; ++s) modular += dichotomy_count(stages[s - 1].p, stages[s - 1].q);
    m["dichotomy_pairs"] = pairs;
    m["dichotomy_exhaustive_hits"] = hits;
    m["dichotomy_modular_hits"] = modular.str();
    ok = ok && hits == 0 && modular == 0;
    std::ostringstream summary;
    summary << "stage2=(26,51,1326,13,17,17,13) " << (regression ? "ok" : "MISMATCH") << "; invariants stages 1-4 ok"
            << "; boundary " << levels << " levels " << (boundary ? "ok" : "FAIL") << "; dichotomy hits "
            << hits << " over " << pairs << " pairs, modular " << modular;
    r.summary = summary.str();
  } catch (const Error& e) {
    m["error"] = e.what();
    r.summary = std::string("error: ") + e.what();
    ok = false;
  }
  r.pass = ok;
  r.measured = m;
  return r;
}

// ----------------------------------------------------------------- jiang-su

CriterionResult jiangsu(const RunConfig&) {
  CriterionResult r = make_result("jiang-su", "Jiang-Su witness floor, case arithmetic and limits");
  nlohmann::json m;
  bool ok = true;
  std::ostringstream summary;
  try {
    const std::vector<TowerStage> stages = build_tower(5);
    const Rational q1(stages[0].q);
    std::optional<Rational> previous;
    bool monotone = true;
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 2; n <= 5; ++n) {
      const bool required = n != 4;
      const WitnessReport one = jiangsu_witness(stages, 1, n, 1);
      const Rational floor = one.bound.lower_exact->coeff;
      const BigInt two_r = BigInt(1) << (n - 1);
      const Rational expected = 2 * (q1 - 1) / q1 * Rational(two_r - 1) / Rational(two_r);
      bool row_ok = floor == expected && one.details["top_matches_formula"].get<bool>() && one.pass;
      nlohmann::json row{{"n", n}, {"floor", one.bound.lower_exact->str()}, {"expected", pi_str(expected)},
                         {"top_branch", one.details["top_branch"]}};
      if (required) {
        const WitnessReport three = jiangsu_witness(stages, 1, n, 3);
        const bool agree = three.bound.lower_exact == one.bound.lower_exact && three.pass;
        row["block3_floor"] = three.bound.lower_exact->str();
        row_ok = row_ok && agree;
        summary << (n == 2 ? "" : "; ") << "n=" << n << " floor=" << one.bound.lower_exact->str();
      }
      if (previous && !(*previous < floor)) monotone = false;
      previous = floor;
      row["pass"] = row_ok;
      ok = ok && row_ok;
      rows.push_back(row);
    }
    m["m1"] = rows;
    m["monotone_in_n"] = monotone;
    ok = ok && monotone;

    nlohmann::json limits = nlohmann::json::array();
    std::optional<Rational> last_limit;
    bool limits_ok = true;
    for (int s = 1; s <= 4; ++s) {
      const BigInt& q = stages[s - 1].q;
      const Rational limit = 2 * Rational(q - 1) / Rational(q);
      // floor(m, n) increases in n and its gap to the limit halves each step.
      for (unsigned step = 1; step <= 8; ++step) {
        const Rational gap = limit - jiangsu_floor(q, step);
        limits_ok = limits_ok && gap > 0 && gap == limit / Rational(BigInt(1) << step);
      }
      if (last_limit && !(*last_limit < limit)) limits_ok = false;
      limits_ok = limits_ok && limit < 2;
      last_limit = limit;
      limits.push_back({{"m", s}, {"limit", pi_str(limit)}, {"gap_to_2pi", to_double(2 - limit)}});
    }
    m["limits"] = limits;
    m["limits_monotone_to_2pi"] = limits_ok;
    ok = ok && limits_ok;
    summary << "; monotone " << (monotone ? "ok" : "FAIL") << "; limits m=1..4 -> 2pi " << (limits_ok ? "ok" : "FAIL");
  } catch (const Error& e) {
    m["error"] = e.what();
    summary << "error: " << e.what();
    ok = false;
  }
  r.pass = ok;
  r.summary = summary.str();
  r.measured = m;
  return r;
}

// --------------------------------------------------------------- properties

struct PropertyOutcome {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string worst;
};

PropertyOutcome lipschitz(Rng& rng) {
  PropertyOutcome out{"scalar_cel 1-Lipschitz", 200, 0, ""};
  std::uniform_int_distribution<int> knots(0, 6);
  double worst = -1.0;
  for (int i = 0; i < out.trials; ++i) {
    const PiecewiseLinearFn a = random_piecewise_linear(rng, knots(rng), -4, 4);
    const PiecewiseLinearFn b = random_piecewise_linear(rng, knots(rng), -4, 4);
    const Rational lhs = abs(scalar_cel_exact(a).value.coeff - scalar_cel_exact(b).value.coeff);
    const Rational rhs = sup_distance(a, b);
    bool ok = lhs <= rhs;
    std::vector<double> sa(257);
    std::vector<double> sb(257);
    double dist = 0.0;
    for (std::size_t g = 0; g < sa.size(); ++g) {
      const double t = static_cast<double>(g) / 256.0;
      sa[g] = kPi * a.eval(t);
      sb[g] = kPi * b.eval(t);
      dist = std::max(dist, std::abs(sa[g] - sb[g]));
    }
    const double slack = std::abs(scalar_cel(sa) - scalar_cel(sb)) - dist;
    worst = std::max(worst, slack);
    ok = ok && slack <= 1e-9;
    if (!ok) ++out.failures;
  }
  out.worst = "max(|dcel| - dist) sampled = " + fixed(worst, 12);
  return out;
}

PropertyOutcome ev_monotone(Rng& rng) {
  PropertyOutcome out{"EV monotone under compose_spectral", 200, 0, ""};
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> knots(0, 4);
  std::uniform_int_distribution<int> mult(1, 5);
  for (int i = 0; i < out.trials; ++i) {
    std::vector<WeightedBranch> source;
    for (int j = count(rng); j > 0; --j) source.push_back({random_piecewise_linear(rng, knots(rng), -1, 1), mult(rng)});
    std::vector<WeightedBranch> patterns;
    for (int j = count(rng); j > 0; --j) patterns.push_back({random_piecewise_linear(rng, knots(rng), 0, 1), mult(rng)});
    const SymbolicElement a(std::move(source));
    const SymbolicElement pushed = compose_spectral(patterns, a);
    if (!(eigenvalue_variation(pushed) <= eigenvalue_variation(a))) ++out.failures;
  }
  out.worst = "exact rational comparison";
  return out;
}

// k-th lowest (1-based) of an EigenBranchList at t.
double branch_at(const EigenBranchList& list, std::size_t k, double t) {
  std::size_t seen = 0;
  for (const auto& run : list.runs) {
    seen += run.multiplicity.convert_to<std::size_t>();
    if (k <= seen) return run.fn.eval(t);
  }
  throw InvariantError("branch_at: index out of range");
}

PropertyOutcome interval_persistence(Rng& rng) {
  PropertyOutcome out{"k-th lowest interval persistence", 500, 0, ""};
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<int> knots(0, 4);
  std::uniform_int_distribution<int> mult(1, 2);
  std::uniform_int_distribution<int> lattice(0, 64);
  constexpr int kPoints = 10000;
  double worst = 0.0;
  int done = 0;
  while (done < out.trials) {
    std::vector<WeightedBranch> family;
    for (int j = size(rng); j > 0; --j) family.push_back({random_piecewise_linear(rng, knots(rng), 0, 1), mult(rng)});
    std::optional<std::pair<Rational, Rational>> interval;
    for (int attempt = 0; attempt < 32 && !interval; ++attempt) {
      int a = lattice(rng);
      int b = lattice(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const Rational c(a, 64);
      const Rational d(b, 64);
      const bool covered = std::any_of(family.begin(), family.end(),
                                       [&](const WeightedBranch& f) { return f.fn.range_covers(c, d); });
      if (!covered) interval = {c, d};
    }
    if (!interval) continue;
    ++done;
    const auto& [c, d] = *interval;
    const EigenBranchList merged = kth_lowest_merge(family);
    bool ok = std::none_of(merged.runs.begin(), merged.runs.end(),
                           [&](const WeightedBranch& b) { return b.fn.range_covers(c, d); });
    // Dense oracle: sort the sampled family at each point and compare with the merge.
    std::vector<double> expanded;
    const std::size_t rank = merged.rank().convert_to<std::size_t>();
    std::vector<double> lo(rank, 1e300);
    std::vector<double> hi(rank, -1e300);
    for (int g = 0; g < kPoints; ++g) {
      const double t = static_cast<double>(g) / (kPoints - 1);
      expanded.clear();
      for (const auto& f : family)
        for (int copy = 0; copy < f.multiplicity; ++copy) expanded.push_back(f.fn.eval(t));
      std::sort(expanded.begin(), expanded.end());
      for (std::size_t k = 0; k < rank; ++k) {
        worst = std::max(worst, std::abs(expanded[k] - branch_at(merged, k + 1, t)));
        lo[k] = std::min(lo[k], expanded[k]);
        hi[k] = std::max(hi[k], expanded[k]);
      }
    }
    const double cd = to_double(c);
    const double dd = to_double(d);
    for (std::size_t k = 0; k < rank; ++k)
      if (lo[k] <= cd - 1e-12 && hi[k] >= dd + 1e-12) ok = false;
    if (!ok) ++out.failures;
  }
  if (worst > 1e-12) ++out.failures;
  out.worst = "max |merge - sorted samples| = " + fixed(worst, 15);
  return out;
}

PropertyOutcome sandwich(Rng& rng, const RunConfig& config) {
  PropertyOutcome out{"bound sandwich lower <= upper", 100, 0, ""};
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> scale(0.2, 1.0);
  double worst = -1e300;
  for (int i = 0; i < out.trials; ++i) {
    const Eigen::Index n = dim(rng);
    const double s = scale(rng);
    try {
      const SampledMatrixField u = random_cu_field(rng, n, 257, s, config.tol);
      const double lower = cel_lower_distinct(u, config.tol).lower;
      const double upper = std::min(geodesic_upper_bound(u, config.tol), cu_upper_bound_path(u, config.tol).length);
      worst = std::max(worst, lower - upper);
      if (lower > upper + 1e-6) ++out.failures;
    } catch (const Error&) {
      ++out.failures;
    }
  }
  out.worst = "max(lower - upper) = " + fixed(worst, 9);
  return out;
}

PropertyOutcome weyl(Rng& rng, const RunConfig& config) {
  PropertyOutcome out{"Weyl stability", 200, 0, ""};
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_real_distribution<double> scale(1e-3, 1.0);
  double worst = -1e300;
  for (int i = 0; i < out.trials; ++i) {
    const Eigen::Index n = dim(rng);
    const ComplexMatrix a = random_hermitian(rng, n);
    const ComplexMatrix b = a + random_hermitian(rng, n, scale(rng));
    const RealVector la = hermitian_eigen(a, config.tol).values;
    const RealVector lb = hermitian_eigen(b, config.tol).values;
    const double shift = (la - lb).cwiseAbs().maxCoeff();
    const double norm = operator_norm(a - b);
    worst = std::max(worst, shift - norm);
    if (shift > norm + 1e-9) ++out.failures;
  }
  out.worst = "max(max|dlambda| - ||A-B||) = " + fixed(worst, 12);
  return out;
}

CriterionResult properties(const RunConfig& config) {
  CriterionResult r = make_result("properties", "property suites (Lipschitz, EV monotone, interval persistence, sandwich, Weyl)");
  r.time_limit = 180.0;
  std::vector<PropertyOutcome> outcomes;
  {
    Rng rng(config.seed ^ 0x11);
    outcomes.push_back(lipschitz(rng));
  }
  {
    Rng rng(config.seed ^ 0x22);
    outcomes.push_back(ev_monotone(rng));
  }
  {
    Rng rng(config.seed ^ 0x33);
    outcomes.push_back(interval_persistence(rng));
  }
  {
    Rng rng(config.seed ^ 0x44);
    outcomes.push_back(sandwich(rng, config));
  }
  {
    Rng rng(config.seed ^ 0x55);
    outcomes.push_back(weyl(rng, config));
  }
  r.pass = true;
  r.measured = nlohmann::json::array();
  std::ostringstream summary;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    r.pass = r.pass && o.failures == 0;
    r.measured.push_back({{"property", o.name}, {"trials", o.trials}, {"failures", o.failures}, {"detail", o.worst}});
    summary << (i ? "; " : "") << o.name << " " << o.trials - o.failures << "/" << o.trials;
  }
  r.summary = summary.str();
  return r;
}

// ------------------------------------------------------------------- oracle

CriterionResult oracle(const RunConfig& config) {
  CriterionResult r = make_result("oracle", "dense oracle: stage-1 witness in M_6, lower in [4pi/3 - 1e-4, upper]");
  nlohmann::json m;
  bool ok = false;
  try {
    const SymbolicElement w = jiangsu_stage_witness(initial_stage());
    const SampledMatrixField u = realize_diagonal(w, config.grid_size, config.dense_limit, config.tol);
    const SampledMatrixField separated = jitter(u, config.tol.jitter, config.tol);
    const CelBound lower = cel_lower_distinct(separated, config.tol);
    const double geodesic = geodesic_upper_bound(u, config.tol);
    const CuPath path = cu_upper_bound_path(u, config.tol);
    const double upper = std::min(geodesic, path.length);
    const double floor = 4.0 * kPi / 3.0;
    ok = lower.lower >= floor - 1e-4 && lower.lower <= upper && 2 * Rational(5, 6) >= Rational(4, 3);
    m = {{"lower", fixed(lower.lower, 9)},
         {"floor", "4/3·π"},
         {"geodesic", fixed(geodesic, 9)},
         {"cu_length", fixed(path.length, 9)},
         {"upper", fixed(upper, 9)},
         {"certificate", lower.certificate},
         {"grid", config.grid_size}};
    r.summary = "lower=" + fixed(lower.lower, 9) + " (4pi/3=" + fixed(floor, 9) + ") upper=" + fixed(upper, 9) +
                " geodesic=" + fixed(geodesic, 3);
  } catch (const Error& e) {
    m["error"] = e.what();
    r.summary = std::string("error: ") + e.what();
  }
  r.pass = ok;
  r.measured = m;
  return r;
}

using Runner = std::function<CriterionResult(const RunConfig&)>;

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> table = {
      {"finite-cel", finite_cel}, {"chi", chi_bound},       {"tower", tower},
      {"jiang-su", jiangsu},      {"properties", properties}, {"oracle", oracle},
  };
  return table;
}

CriterionResult timed(const Runner& run, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r = run(config);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.time_limit > 0 && r.seconds >= r.time_limit) {
    r.pass = false;
    r.summary += "; runtime limit exceeded";
  }
  return r;
}

}  // namespace

const std::vector<std::string>& acceptance_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, run] : runners()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, const RunConfig& config) {
  validate(config);
  std::vector<const Runner*> selected;
  for (const auto& [name, run] : runners())
    if (suite == "all" || suite == name) selected.push_back(&run);
  if (selected.empty()) throw ArgumentError("unknown acceptance suite '" + suite + "'");
  std::vector<CriterionResult> results(selected.size());
  for (std::size_t begin = 0; begin < selected.size(); begin += config.jobs) {
    const std::size_t end = std::min(selected.size(), begin + config.jobs);
    std::vector<std::future<CriterionResult>> batch;
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(config.jobs > 1 ? std::launch::async : std::launch::deferred, timed,
                                 std::cref(*selected[i]), std::cref(config)));
    for (std::size_t i = begin; i < end; ++i) results[i] = batch[i - begin].get();
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

std::string format_text(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) out << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.summary << '\n';
  return out.str();
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results)
    out.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary},
                   {"measured", r.measured}});
  return out;
}

std::string format_csv(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  out << "criterion,pass,summary\n";
  for (const auto& r : results) {
    std::string s = r.summary;
    std::string quoted;
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    out << r.id << ',' << (r.pass ? "pass" : "fail") << ",\"" << quoted << "\"\n";
  }
  return out.str();
}

}  // namespace cellab
