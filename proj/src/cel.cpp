#include "cellab/cel.hpp"

#include "cellab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cellab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kJitterTrigger = 10.0;

std::string describe_shift(std::size_t branch, long long k) {
  std::ostringstream out;
  out << "branch " << branch << ", shift k=" << k;
  return out.str();
}

}  // namespace

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::none: return "none";
    case BoundMethod::scalar_formula: return "scalar_formula";
    case BoundMethod::distinct_eigenvalues: return "distinct_eigenvalues";
    case BoundMethod::ordered_log: return "ordered_log";
    case BoundMethod::branch_path: return "branch_path";
    case BoundMethod::cu_path: return "cu_path";
    case BoundMethod::geodesic: return "geodesic";
    case BoundMethod::case_analysis: return "case_analysis";
  }
  return "unknown";
}

CelBound CelBound::combined(const CelBound& other) const {
  CelBound out = *this;
  if (other.lower > lower || (other.lower == lower && other.lower_exact && !lower_exact)) {
    out.lower = other.lower;
    out.lower_exact = other.lower_exact;
    out.lower_method = other.lower_method;
  }
  if (other.upper < upper || (other.upper == upper && other.upper_exact && !upper_exact)) {
    out.upper = other.upper;
    out.upper_exact = other.upper_exact;
    out.upper_method = other.upper_method;
  }
  out.epsilon_report = std::max(epsilon_report, other.epsilon_report);
  if (!certificate.empty() && !other.certificate.empty())
    out.certificate = certificate + "; " + other.certificate;
  else
    out.certificate = certificate.empty() ? other.certificate : certificate;
  if (out.lower > out.upper + out.epsilon_report)
    throw InvariantError("CelBound: lower bound " + std::to_string(out.lower) + " exceeds upper bound " +
                         std::to_string(out.upper));
  return out;
}

nlohmann::json to_json(const CelBound& bound) {
  nlohmann::json j;
  j["lower"] = bound.lower_exact ? nlohmann::json(bound.lower_exact->str()) : nlohmann::json(bound.lower);
  if (bound.upper_exact)
    j["upper"] = bound.upper_exact->str();
  else if (std::isinf(bound.upper))
    j["upper"] = "inf";
  else
    j["upper"] = bound.upper;
  j["lower_method"] = to_string(bound.lower_method);
  j["upper_method"] = to_string(bound.upper_method);
  j["epsilon_report"] = bound.epsilon_report;
  j["certificate"] = bound.certificate;
  return j;
}

double scalar_cel(std::span<const double> alpha, long extra_k) {
  if (alpha.empty()) return 0.0;
  const auto [lo_it, hi_it] = std::minmax_element(alpha.begin(), alpha.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double max_abs = std::max(std::abs(lo), std::abs(hi));
  const long bound = static_cast<long>(std::ceil(max_abs / kTwoPi)) + 1 + extra_k;
  double best = std::numeric_limits<double>::infinity();
  for (long k = -bound; k <= bound; ++k) {
    const double shift = kTwoPi * static_cast<double>(k);
    best = std::min(best, std::max(std::abs(hi - shift), std::abs(lo - shift)));
  }
  return best;
}

ExactScalarCel scalar_cel_exact(const PiecewiseLinearFn& alpha_over_pi, long extra_k) {
  // The maximum over t of |alpha - 2k| is attained at a breakpoint, hence at min or max.
  const Rational& lo = alpha_over_pi.min();
  const Rational& hi = alpha_over_pi.max();
  const Rational max_abs = std::max(abs(lo), abs(hi));
  const BigInt bound = ceil(max_abs / 2) + 1 + extra_k;
  ExactScalarCel best{{Rational(-1)}, 0};
  for (BigInt k = -bound; k <= bound; ++k) {
    const Rational shift = Rational(2 * k);
    const Rational value = std::max(abs(hi - shift), abs(lo - shift));
    if (best.value.coeff < 0 || value < best.value.coeff) best = {{value}, k};
  }
  return best;
}

CelBound cel_lower_distinct(const SampledMatrixField& u, const Tolerances& tol) {
  const BranchLift lift = lift_branches(u, std::nullopt, tol);
  CelBound bound;
  bound.lower_method = BoundMethod::distinct_eigenvalues;
  bound.epsilon_report = tol.spec;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < lift.count(); ++j) {
    const double value = scalar_cel(lift.branches[j]);
    if (j == 0 || value > bound.lower) {
      bound.lower = value;
      arg = j;
    }
  }
  const auto& best = lift.branches[arg];
  const auto [lo, hi] = std::minmax_element(best.begin(), best.end());
  const long long k = std::llround((*lo + *hi) / (2.0 * kTwoPi));
  bound.certificate = "distinct eigenvalues: " + describe_shift(arg, k);
  return bound;
}

namespace {

template <typename T>
void check_window(const T& lo, const T& hi, const T& two_pi) {
  if (lo < -two_pi)
    throw PreconditionError("cel_lower_ordered_log: violated -2pi <= h_1 (lowest branch reaches below -2pi)");
  if (hi - lo > two_pi)
    throw PreconditionError("cel_lower_ordered_log: violated h_n <= a + 2pi with a <= h_1 (spread exceeds 2pi)");
  if (!(hi < two_pi))
    throw PreconditionError("cel_lower_ordered_log: violated a < 0 (highest branch reaches 2pi)");
}

}  // namespace

CelBound cel_lower_ordered_log(const SampledEigenvalueList& list) {
  if (list.count() == 0) throw ArgumentError("cel_lower_ordered_log: empty eigenvalue list");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& b : list.branches) {
    const auto [l, h] = std::minmax_element(b.begin(), b.end());
    lo = std::min(lo, *l);
    hi = std::max(hi, *h);
  }
  check_window(lo, hi, kTwoPi);
  CelBound bound;
  bound.lower_method = BoundMethod::ordered_log;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < list.count(); ++j) {
    const double value = scalar_cel(list.branches[j]);
    if (j == 0 || value > bound.lower) {
      bound.lower = value;
      arg = j;
    }
  }
  bound.certificate = "ordered log: branch " + std::to_string(arg);
  return bound;
}

CelBound cel_lower_ordered_log(const EigenBranchList& list_over_pi) {
  if (list_over_pi.runs.empty()) throw ArgumentError("cel_lower_ordered_log: empty eigenvalue list");
  Rational lo = list_over_pi.runs.front().fn.min();
  Rational hi = list_over_pi.runs.front().fn.max();
  for (const auto& run : list_over_pi.runs) {
    lo = std::min(lo, run.fn.min());
    hi = std::max(hi, run.fn.max());
  }
  check_window(lo, hi, Rational(2));
  CelBound bound;
  bound.lower_method = BoundMethod::ordered_log;
  std::optional<ExactScalarCel> best;
  BigInt index = 1;
  BigInt best_index = 1;
  for (const auto& run : list_over_pi.runs) {
    const ExactScalarCel value = scalar_cel_exact(run.fn);
    if (!best || value.value > best->value) {
      best = value;
      best_index = index;
    }
    index += run.multiplicity;
  }
  bound.lower_exact = best->value;
  bound.lower = best->value.value();
  bound.certificate = "ordered log: branch " + best_index.str() + ", shift k=" + best->shift.str();
  return bound;
}

UnitaryPath2D::UnitaryPath2D(std::vector<SampledMatrixField> slices, const Tolerances& tol)
    : slices_(std::move(slices)) {
  if (slices_.size() < 2) throw ArgumentError("UnitaryPath2D: need at least two s-slices");
  const std::size_t grid = slices_.front().grid_size();
  const Eigen::Index n = slices_.front().dim();
  for (std::size_t s = 0; s < slices_.size(); ++s) {
    const auto& slice = slices_[s];
    if (slice.flavor() != Flavor::unitary)
      throw FlavorError("UnitaryPath2D: slice " + std::to_string(s) + " is not unitary");
    if (slice.grid_size() != grid || slice.dim() != n)
      throw ArgumentError("UnitaryPath2D: slice " + std::to_string(s) + " has a different shape");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (std::size_t g = 0; g < grid; ++g) {
    if ((slices_.back()[g] - id).cwiseAbs().maxCoeff() > tol.roundtrip)
      throw ArgumentError("UnitaryPath2D: last slice is not the identity at grid index " + std::to_string(g));
  }
}

UnitaryPath2D UnitaryPath2D::concatenated(const UnitaryPath2D& next, const Tolerances& tol) const {
  if (next.t_size() != t_size() || next.dim() != dim())
    throw ArgumentError("UnitaryPath2D::concatenated: shape mismatch");
  for (std::size_t g = 0; g < t_size(); ++g) {
    if ((slices_.back()[g] - next.slices_.front()[g]).cwiseAbs().maxCoeff() > tol.roundtrip)
      throw ArgumentError("UnitaryPath2D::concatenated: endpoints differ at grid index " + std::to_string(g));
  }
  std::vector<SampledMatrixField> slices(slices_.begin(), slices_.end());
  slices.insert(slices.end(), next.slices_.begin() + 1, next.slices_.end());
  return UnitaryPath2D(std::move(slices), tol);
}

double path_length(const UnitaryPath2D& path) {
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.slices().size(); ++s) {
    double sup = 0.0;
    for (std::size_t g = 0; g < path.t_size(); ++g)
      sup = std::max(sup, operator_norm(path.slice(s + 1)[g] - path.slice(s)[g]));
    total += sup;
  }
  return total;
}

namespace {

// Samples whose spectral gap is below the jitter trigger (the identity end of
// every path) are jittered individually; the rest are left untouched.
SampledMatrixField separated(const SampledMatrixField& f, const Tolerances& tol) {
  std::vector<ComplexMatrix> samples(f.samples().begin(), f.samples().end());
  bool changed = false;
  for (auto& m : samples) {
    if (min_circular_gap(unitary_eigen(m, tol).angles) < kJitterTrigger * tol.jitter) {
      m = jitter(m, tol.jitter, tol);
      changed = true;
    }
  }
  return changed ? SampledMatrixField(std::move(samples), Flavor::unitary, tol) : f;
}

}  // namespace

double path_lower_bound_branches(const UnitaryPath2D& path, const Tolerances& tol) {
  // The last slice is the identity, where every branch meets 1 and matching is
  // ambiguous; its step is the distance of each branch to 2 pi Z instead.
  const std::size_t lifted = path.slices().size() - 1;
  std::vector<SampledMatrixField> slices;
  slices.reserve(lifted);
  for (std::size_t s = 0; s < lifted; ++s) slices.push_back(separated(path.slice(s), tol));
  BranchLift base;
  try {
    base = lift_branches(slices[0], std::nullopt, tol);
  } catch (const CollisionError& e) {
    throw CollisionError(std::string(e.what()) + " (s index 0)", e.t_index(), 0);
  }
  const std::size_t k = base.count();
  // sup over t of each branch increment, per s-step.
  std::vector<std::vector<double>> step_sup(k, std::vector<double>(lifted, 0.0));
  for (std::size_t g = 0; g < path.t_size(); ++g) {
    std::vector<double> last(k);
    for (std::size_t j = 0; j < k; ++j) last[j] = base.branches[j][g];
    if (lifted > 1) {
      std::vector<ComplexMatrix> column;
      column.reserve(lifted);
      for (std::size_t s = 0; s < lifted; ++s) column.push_back(slices[s][g]);
      BranchLift along_s;
      try {
        along_s = lift_branches(SampledMatrixField(std::move(column), Flavor::unitary, tol), last, tol);
      } catch (const CollisionError& e) {
        std::ostringstream msg;
        msg << "path_lower_bound_branches: collision at (s index " << e.t_index() << ", t index " << g << ")";
        throw CollisionError(msg.str(), g, e.t_index());
      }
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t s = 0; s + 1 < lifted; ++s)
          step_sup[j][s] = std::max(step_sup[j][s], std::abs(along_s.branches[j][s + 1] - along_s.branches[j][s]));
        last[j] = along_s.branches[j].back();
      }
    }
    for (std::size_t j = 0; j < k; ++j)
      step_sup[j][lifted - 1] = std::max(step_sup[j][lifted - 1], std::abs(std::remainder(last[j], kTwoPi)));
  }
  double best = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double total = 0.0;
    for (double v : step_sup[j]) total += v;
    best = std::max(best, total);
  }
  return best;
}

std::vector<BigInt> minimal_integer_shifts(std::span<const std::pair<double, double>> ranges, long long total) {
  const std::size_t k = ranges.size();
  const long long target = -total;
  auto cost = [&](std::size_t j, long long n) {
    return std::max(ranges[j].second + static_cast<double>(n), -(ranges[j].first + static_cast<double>(n)));
  };
  auto lo_for = [&](std::size_t j, double tau) {
    return static_cast<long long>(std::ceil(-tau - ranges[j].first - 1e-12));
  };
  auto hi_for = [&](std::size_t j, double tau) {
    return static_cast<long long>(std::floor(tau - ranges[j].second + 1e-12));
  };
  auto feasible = [&](double tau) {
    long long sum_lo = 0;
    long long sum_hi = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const long long lo = lo_for(j, tau);
      const long long hi = hi_for(j, tau);
      if (lo > hi) return false;
      sum_lo += lo;
      sum_hi += hi;
    }
    return sum_lo <= target && target <= sum_hi;
  };

  std::vector<long long> centre(k);
  long long centre_sum = 0;
  for (std::size_t j = 0; j < k; ++j) {
    centre[j] = std::llround(-(ranges[j].first + ranges[j].second) / 2.0);
    centre_sum += centre[j];
  }
  const long long window = std::llabs(target - centre_sum) + 2;
  std::vector<double> candidates;
  for (std::size_t j = 0; j < k; ++j)
    for (long long n = centre[j] - window; n <= centre[j] + window; ++n) candidates.push_back(cost(j, n));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  auto it = std::find_if(candidates.begin(), candidates.end(), feasible);
  if (it == candidates.end()) throw InvariantError("minimal_integer_shifts: no shift vector reaches the target sum");
  const double tau = *it;

  std::vector<long long> lo(k);
  std::vector<long long> hi(k);
  for (std::size_t j = 0; j < k; ++j) {
    lo[j] = lo_for(j, tau);
    hi[j] = hi_for(j, tau);
  }
  std::vector<long long> suffix_hi(k + 1, 0);
  for (std::size_t j = k; j-- > 0;) suffix_hi[j] = suffix_hi[j + 1] + hi[j];
  std::vector<BigInt> shifts(k);
  long long chosen = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const long long n = std::max(lo[j], target - chosen - suffix_hi[j + 1]);
    shifts[j] = n;
    chosen += n;
  }
  return shifts;
}

CuPath cu_upper_bound_path(const SampledMatrixField& u, const Tolerances& tol, std::size_t s_steps) {
  if (u.flavor() != Flavor::unitary) throw FlavorError("cu_upper_bound_path: field must be unitary");
  if (s_steps < 1) throw ArgumentError("cu_upper_bound_path: need at least one s-step");
  const auto dets = determinant_field(u, tol);
  for (std::size_t g = 0; g < dets.size(); ++g) {
    if (std::abs(dets[g] - Complex(1.0, 0.0)) > tol.det)
      throw CuError("cu_upper_bound_path: det u(t) != 1 at grid index " + std::to_string(g) +
                    " (|det - 1| = " + std::to_string(std::abs(dets[g] - Complex(1.0, 0.0))) + ")");
  }
  // Jitter only when some eigenvalues are (nearly) repeated; a separated field is lifted as is.
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < u.grid_size(); ++g)
    min_gap = std::min(min_gap, min_circular_gap(unitary_eigen(u[g], tol).angles));
  const bool jittered = min_gap < kJitterTrigger * tol.jitter;
  const SampledMatrixField separated = jittered ? jitter(u, tol.jitter, tol) : u;
  const BranchLift lift = lift_branches(separated, std::nullopt, tol);
  const std::size_t k = lift.count();
  const std::size_t grid = lift.grid_size();

  // h_j = theta_j / 2pi; their sum is a constant integer because det = 1.
  std::vector<std::pair<double, double>> ranges(k);
  double sum_lo = std::numeric_limits<double>::infinity();
  double sum_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid; ++g) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += lift.branches[j][g] / kTwoPi;
    sum_lo = std::min(sum_lo, sum);
    sum_hi = std::max(sum_hi, sum);
  }
  const long long total = std::llround(sum_lo);
  if (sum_hi - sum_lo > 1e-6 || std::abs(sum_lo - static_cast<double>(total)) > 1e-6)
    throw InvariantError("cu_upper_bound_path: lifted branch sum is not a constant integer");
  for (std::size_t j = 0; j < k; ++j) {
    const auto [lo, hi] = std::minmax_element(lift.branches[j].begin(), lift.branches[j].end());
    ranges[j] = {*lo / kTwoPi, *hi / kTwoPi};
  }
  std::vector<BigInt> shifts = minimal_integer_shifts(ranges, total);

  std::vector<double> shift_d(k);
  double max_norm = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    shift_d[j] = shifts[j].convert_to<double>();
    max_norm = std::max({max_norm, std::abs(ranges[j].first + shift_d[j]), std::abs(ranges[j].second + shift_d[j])});
  }

  std::vector<SampledMatrixField> slices;
  slices.reserve(s_steps + 1);
  for (std::size_t s = 0; s <= s_steps; ++s) {
    const double remaining = 1.0 - static_cast<double>(s) / static_cast<double>(s_steps);
    std::vector<ComplexMatrix> samples;
    samples.reserve(grid);
    for (std::size_t g = 0; g < grid; ++g) {
      Eigen::VectorXcd phases(static_cast<Eigen::Index>(k));
      for (std::size_t j = 0; j < k; ++j) {
        const double h = lift.branches[j][g] / kTwoPi + shift_d[j];
        phases(static_cast<Eigen::Index>(j)) = std::polar(1.0, kTwoPi * remaining * h);
      }
      const ComplexMatrix& frame = lift.frames[g];
      if (s == s_steps)
        samples.push_back(ComplexMatrix::Identity(frame.rows(), frame.cols()));
      else
        samples.push_back(frame * phases.asDiagonal() * frame.adjoint());
    }
    slices.emplace_back(std::move(samples), Flavor::unitary, tol);
  }

  CuPath out{UnitaryPath2D(std::move(slices), tol), 0.0, 0.0, 0.0, 0.0, 0.0, {}};
  out.shifts = std::move(shifts);
  out.max_branch_norm = max_norm;
  out.length = kTwoPi * max_norm;
  out.measured_length = path_length(out.path);
  for (std::size_t g = 0; g < grid; ++g)
    out.endpoint_error = std::max(out.endpoint_error, operator_norm(out.path.slice(0)[g] - u[g]));
  out.epsilon_report = out.endpoint_error + (jittered ? tol.jitter * static_cast<double>(k) : 0.0);
  return out;
}

double geodesic_upper_bound(const SampledMatrixField& u, const Tolerances& tol) {
  if (u.flavor() != Flavor::unitary) throw FlavorError("geodesic_upper_bound: field must be unitary");
  const double inf = std::numeric_limits<double>::infinity();
  double sup = 0.0;
  double prev_margin = 0.0;
  for (std::size_t g = 0; g < u.grid_size(); ++g) {
    const UnitaryEigen eig = unitary_eigen(u[g], tol);
    double margin = inf;
    for (double a : eig.angles) {
      margin = std::min(margin, kPi - std::abs(a));
      sup = std::max(sup, std::abs(a));
    }
    if (margin < tol.gap) return inf;
    // Spectra of unitaries move by at most the operator-norm step, so an
    // eigenvalue can only have crossed -1 between samples if the two margins
    // fit inside that arc.
    if (g > 0) {
      const double chord = std::min(2.0, operator_norm(u[g] - u[g - 1]));
      if (prev_margin + margin <= 2.0 * std::asin(chord / 2.0)) return inf;
    }
    prev_margin = margin;
  }
  return sup;
}

}  // namespace cellab
