#include "cellab/witness.hpp"

#include "cellab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cellab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string decimal(double value) {
  if (std::isinf(value)) return "inf";
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

Rational sup_abs(const PiecewiseLinearFn& f) { return std::max(abs(f.min()), abs(f.max())); }

}  // namespace

CuCertificate verify_cu(const SymbolicElement& turns) {
  CuCertificate cert;
  cert.exact = true;
  const PiecewiseLinearFn sum = turns.weighted_sum();
  const BigInt base = floor(sum(0) + Rational(1, 2));
  PiecewiseLinearFn residual = sum.shifted(Rational(-base));
  cert.residual = to_double(sup_abs(residual));
  cert.pass = residual.is_constant() && residual.min() == 0;
  cert.residual_fn = std::move(residual);
  return cert;
}

CuCertificate verify_cu(const SampledMatrixField& u, const Tolerances& tol) {
  CuCertificate cert;
  for (const Complex& det : determinant_field(u, tol)) cert.residual = std::max(cert.residual, std::abs(det - 1.0));
  cert.pass = cert.residual <= tol.det;
  return cert;
}

nlohmann::json to_json(const CuCertificate& cu) {
  nlohmann::json j{{"exact", cu.exact}, {"pass", cu.pass}, {"residual", cu.residual}};
  if (cu.residual_fn) j["residual_fn"] = to_json(*cu.residual_fn);
  return j;
}

nlohmann::json to_json(const WitnessReport& report) {
  const CelBound& b = report.bound;
  nlohmann::json j;
  j["witness_id"] = report.witness_id;
  j["params"] = report.params;
  j["paper_target"] = report.paper_target.str();
  j["lower"] = b.lower_exact ? b.lower_exact->str() : decimal(b.lower);
  j["upper"] = b.upper_exact ? b.upper_exact->str() : decimal(b.upper);
  j["cu"] = to_json(report.cu);
  j["pass"] = report.pass;
  j["bound"] = to_json(b);
  j["details"] = report.details;
  return j;
}

SampledMatrixField realize_diagonal(const SymbolicElement& turns, std::size_t grid_size, std::size_t dense_limit,
                                    const Tolerances& tol) {
  if (turns.total_rank() > dense_limit)
    throw ArgumentError("realize_diagonal: rank " + turns.total_rank().str() + " exceeds dense limit " +
                        std::to_string(dense_limit));
  if (grid_size < 2) throw ArgumentError("realize_diagonal: grid needs at least two points");
  std::vector<const PiecewiseLinearFn*> diagonal;
  for (const auto& e : turns.entries())
    for (BigInt i = 0; i < e.multiplicity; ++i) diagonal.push_back(&e.fn);
  const auto n = static_cast<Eigen::Index>(diagonal.size());
  return SampledMatrixField::sample(
      [&](double t) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) m(j, j) = std::polar(1.0, kTwoPi * diagonal[j]->eval(t));
        return m;
      },
      grid_size, Flavor::unitary, tol);
}

EigenBranchList branches_over_pi(const SymbolicElement& turns) {
  std::vector<WeightedBranch> scaled;
  scaled.reserve(turns.entries().size());
  for (const auto& e : turns.entries()) scaled.push_back({e.fn.scaled(2), e.multiplicity});
  return kth_lowest_merge(scaled);
}

SymbolicElement pan_wang_witness(long long k) {
  if (k < 2) throw ArgumentError("pan_wang_witness: k must be at least 2");
  return SymbolicElement({{PiecewiseLinearFn::affine(Rational(k - 1, k), 0), 1},
                          {PiecewiseLinearFn::affine(Rational(-1, k), 0), k - 1}});
}

WitnessReport pan_wang_report(long long k, const PanWangOptions& options) {
  const SymbolicElement sym = pan_wang_witness(k);
  WitnessReport report;
  report.witness_id = "pan-wang";
  report.params = {{"k", k}};
  report.paper_target = PiMultiple{Rational(2 * (k - 1), k)};
  report.cu = verify_cu(sym);
  report.bound = cel_lower_ordered_log(branches_over_pi(sym));
  if (options.with_path) {
    const SampledMatrixField field = realize_diagonal(sym, options.grid_size, 64, options.tol);
    const CuPath path = cu_upper_bound_path(field, options.tol, options.s_steps);
    report.bound.upper = path.length;
    report.bound.upper_method = BoundMethod::cu_path;
    report.bound.epsilon_report = path.epsilon_report;
    report.details["measured_length"] = path.measured_length;
    report.details["endpoint_error"] = path.endpoint_error;
    report.details["sampled_det_residual"] = verify_cu(field, options.tol).residual;
    report.details["grid"] = options.grid_size;
  }
  report.pass = report.cu.pass && report.bound.lower_exact && *report.bound.lower_exact >= report.paper_target;
  return report;
}

SymbolicElement chi_witness(long long L, const SymbolicElement& x, const Rational& c, const Rational& d,
                            const BigInt& pad) {
  const ChiFamily family = chi_family(L, c, d);
  if (x.empty()) throw PreconditionError("chi_witness: x has no branches");
  const WeightedBranch* best = nullptr;
  Rational best_overlap = -1;
  for (const auto& e : x.entries()) {
    if (e.fn.min() < 0 || e.fn.max() > 1)
      throw PreconditionError("chi_witness: branch " + e.fn.str() + " leaves [0,1]");
    const Rational overlap = std::min(d, e.fn.max()) - std::max(c, e.fn.min());
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = &e;
    }
  }
  if (!best->fn.range_covers(c, d)) {
    std::ostringstream msg;
    msg << "chi_witness: no branch of x covers [" << to_string(c) << ", " << to_string(d) << "]; uncovered:";
    const Rational& lo = best->fn.min();
    const Rational& hi = best->fn.max();
    if (hi < c || lo > d) {
      msg << " [" << to_string(c) << ", " << to_string(d) << "]";
    } else {
      if (lo > c) msg << " [" << to_string(c) << ", " << to_string(lo) << ")";
      if (hi < d) msg << " (" << to_string(hi) << ", " << to_string(d) << "]";
    }
    throw PreconditionError(msg.str());
  }
  std::vector<WeightedBranch> entries;
  for (const auto& e : x.entries()) {
    const PiecewiseLinearFn inner = family.chi.compose(e.fn);
    entries.push_back({family.chi2.compose(inner), e.multiplicity});
    entries.push_back({family.chi1.compose(inner), e.multiplicity * (L - 1)});
  }
  return SymbolicElement(std::move(entries)).padded_with_zero(pad);
}

WitnessReport chi_report(long long L, const SymbolicElement& x, const Rational& c, const Rational& d,
                         const BigInt& pad) {
  const SymbolicElement w = chi_witness(L, x, c, d, pad);
  WitnessReport report;
  report.witness_id = "chi";
  report.params = {{"L", L}, {"c", to_string(c)}, {"d", to_string(d)}, {"pad", pad.str()}};
  report.paper_target = PiMultiple{2 * (1 - Rational(1, L))};
  report.cu = verify_cu(w);
  report.bound = cel_lower_ordered_log(branches_over_pi(w));
  report.details["rank"] = w.total_rank().str();
  report.pass = report.cu.pass && report.bound.lower_exact && *report.bound.lower_exact >= report.paper_target;
  return report;
}

SymbolicElement jiangsu_stage_witness(const TowerStage& stage, long long block_k) {
  if (block_k < 1) throw ArgumentError("jiangsu_stage_witness: block_k must be at least 1");
  const Rational q(stage.q);
  SymbolicElement u({{PiecewiseLinearFn::affine((q - 1) / q, 0), stage.p},
                     {PiecewiseLinearFn::affine(-1 / q, 0), stage.d - stage.p}});
  return block_k > 1 ? u.padded_with_zero(stage.d * (block_k - 1)) : u;
}

Rational jiangsu_floor(const BigInt& q_m, unsigned r) {
  const BigInt two_r = BigInt(1) << r;
  return Rational(2 * (q_m - 1) * (two_r - 1)) / Rational(q_m * two_r);
}

WitnessReport jiangsu_witness(const std::vector<TowerStage>& stages, int m, int n, long long block_k) {
  if (m < 1 || n <= m || n > static_cast<int>(stages.size()))
    throw ArgumentError("jiangsu_witness: need 1 <= m < n <= " + std::to_string(stages.size()));
  if (block_k < 1) throw ArgumentError("jiangsu_witness: block_k must be at least 1");
  const TowerStage& sm = stages[m - 1];
  const TowerStage& sn = stages[n - 1];
  const auto r = static_cast<unsigned>(n - m);
  const Rational q(sm.q);
  const PatternMultiset patterns = composite_patterns(stages, m, n);

  const SymbolicElement pushed = push_element(jiangsu_stage_witness(sm, block_k), patterns);
  const EigenBranchList list = eigenvalue_list(pushed);
  const BigInt two_r = BigInt(1) << r;

  // Top branch (q-1)(t + 2^r - 1)/(q 2^r), carried by the p_m prod r1 copies of the top pattern.
  const PiecewiseLinearFn expected_top =
      PiecewiseLinearFn::affine((q - 1) / (q * two_r), (q - 1) * Rational(two_r - 1) / (q * two_r));
  const PiecewiseLinearFn& top = list.highest();
  BigInt top_count = sm.p;
  for (int i = m; i < n; ++i) top_count *= stages[i - 1].transition->r1;
  const bool top_ok = top == expected_top && list.runs.back().multiplicity == top_count;

  // Envelope of the branches pushed from the -t/q entries.
  const SymbolicElement negative =
      push_element(SymbolicElement({{PiecewiseLinearFn::affine(-1 / q, 0), sm.d - sm.p}}), patterns);
  bool envelope_ok = true;
  for (const auto& e : negative.entries())
    envelope_ok = envelope_ok && e.fn.min() >= -1 / q && e.fn.max() <= 0;
  const SymbolicElement positive =
      push_element(SymbolicElement({{PiecewiseLinearFn::affine((q - 1) / q, 0), sm.p}}), patterns);
  Rational low_positive_max = 0;
  for (const auto& e : positive.entries())
    if (e.fn != expected_top) low_positive_max = std::max(low_positive_max, e.fn.max());

  JiangSuCases cases;
  cases.case12 = 2;
  cases.case3 = 2 * sup_abs(top);
  cases.case4 = 2 * sup_abs(list.lowest().shifted(-1));
  cases.case5 = jiangsu_floor(sm.q, r);
  cases.floor = std::min({cases.case12, cases.case3, cases.case4, cases.case5});
  cases.limit = 2 * (q - 1) / q;
  const bool case5_ok = cases.case5 == 2 * top(0);

  const BigInt dichotomy = dichotomy_count(sn.p, sn.q);
  const BoundaryReport boundary = boundary_check(patterns, sm, sn);

  WitnessReport report;
  report.witness_id = "jiang-su";
  report.params = {{"m", m}, {"n", n}, {"block_k", block_k}};
  report.paper_target = PiMultiple{cases.case5};
  report.cu = verify_cu(pushed);
  report.bound.lower = to_double(cases.floor) * std::numbers::pi;
  report.bound.lower_exact = PiMultiple{cases.floor};
  report.bound.lower_method = BoundMethod::case_analysis;
  report.bound.certificate =
      "case analysis over endpoint integer shifts; case formulas verified exactly, the statement over all paths is "
      "not certified";
  report.details["top_branch"] = to_json(top);
  report.details["top_multiplicity"] = list.runs.back().multiplicity.str();
  report.details["top_matches_formula"] = top_ok;
  report.details["negative_envelope_ok"] = envelope_ok;
  report.details["low_positive_max"] = to_string(low_positive_max);
  report.details["cases"] = {{"case1_2", PiMultiple{cases.case12}.str()},
                             {"case3", PiMultiple{cases.case3}.str()},
                             {"case4", PiMultiple{cases.case4}.str()},
                             {"case5", PiMultiple{cases.case5}.str()}};
  report.details["floor"] = PiMultiple{cases.floor}.str();
  report.details["limit"] = PiMultiple{cases.limit}.str();
  report.details["dichotomy_count"] = dichotomy.str();
  report.details["dichotomy"] = dichotomy == 0 ? "q_n does not divide K or p_n does not divide d_n - K, for all K"
                                               : "violated";
  report.details["boundary_pass"] = boundary.pass;
  report.details["rank"] = pushed.total_rank().str();
  report.pass = report.cu.pass && top_ok && envelope_ok && case5_ok && dichotomy == 0 && boundary.pass &&
                cases.floor >= cases.case5;
  return report;
}

long long minimal_chi_L(const Rational& floor_over_pi) {
  if (!(floor_over_pi < 2)) throw ArgumentError("minimal_chi_L: floor must be below 2·π");
  if (floor_over_pi <= 1) return 2;
  // 2 (1 - 1/L) >= F  <=>  L >= 2 / (2 - F)
  return std::max<long long>(2, ceil(Rational(2) / (2 - floor_over_pi)).convert_to<long long>());
}

int minimal_jiangsu_n(const TowerStage& stage_m, const Rational& floor_over_pi) {
  const Rational limit = 2 * Rational(stage_m.q - 1) / Rational(stage_m.q);
  if (!(floor_over_pi < limit))
    throw ArgumentError("minimal_jiangsu_n: floor must be below " + PiMultiple{limit}.str());
  unsigned r = 1;
  while (jiangsu_floor(stage_m.q, r) < floor_over_pi) ++r;
  return stage_m.index + static_cast<int>(r);
}

}  // namespace cellab
