#pragma once

// Exponential-length estimators.  Every value produced here is either a
// certified lower bound or a constructive upper bound; the true infimum over
// all rectifiable paths is never claimed except through the exact formulas.

#include "cellab/funalg.hpp"
#include "cellab/numerics.hpp"
#include "cellab/piecewise_linear.hpp"
#include "cellab/rational.hpp"

#include "json.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cellab {

enum class BoundMethod {
  none,
  scalar_formula,
  distinct_eigenvalues,
  ordered_log,
  branch_path,
  cu_path,
  geodesic,
  case_analysis,
};

const char* to_string(BoundMethod method);

struct CelBound {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::optional<PiMultiple> lower_exact;
  std::optional<PiMultiple> upper_exact;
  BoundMethod lower_method = BoundMethod::none;
  BoundMethod upper_method = BoundMethod::none;
  double epsilon_report = 0.0;
  std::string certificate;

  /// Tightest combination (max of lowers, min of uppers).  Throws
  /// InvariantError when the result has lower > upper + epsilon_report.
  CelBound combined(const CelBound& other) const;
};

nlohmann::json to_json(const CelBound& bound);

/// min_k max_t |alpha(t) - 2 k pi| for a sampled angle function (radians).
/// k ranges over |k| <= ceil(max|alpha| / 2pi) + 1 + extra_k.
double scalar_cel(std::span<const double> alpha, long extra_k = 0);

struct ExactScalarCel {
  PiMultiple value;
  BigInt shift;  // the minimizing k
};

/// Exact version; alpha is given in units of pi (alpha(t) = pi * fn(t)).
ExactScalarCel scalar_cel_exact(const PiecewiseLinearFn& alpha_over_pi, long extra_k = 0);

/// max_j scalar_cel(theta_j) over the lifted branches of u.  Requires a
/// pointwise spectral gap; jitter upstream otherwise.
CelBound cel_lower_distinct(const SampledMatrixField& u, const Tolerances& tol = {});

/// Lower bound from the eigenvalue list of H with u = exp(iH), under the window
/// -2pi <= a <= h_1 <= ... <= h_n <= a + 2pi for some a in [-2pi, 0).
/// Branches in radians.  Throws PreconditionError naming the violated inequality.
CelBound cel_lower_ordered_log(const SampledEigenvalueList& list);
/// Exact version; branches in units of pi.
CelBound cel_lower_ordered_log(const EigenBranchList& list_over_pi);

/// A homotopy v_s(t) on an (s,t) grid; s_0 is the target unitary and the
/// last slice is the identity.
class UnitaryPath2D {
 public:
  explicit UnitaryPath2D(std::vector<SampledMatrixField> slices, const Tolerances& tol = {});

  std::size_t s_steps() const { return slices_.size() - 1; }
  std::size_t t_size() const { return slices_.front().grid_size(); }
  Eigen::Index dim() const { return slices_.front().dim(); }
  const SampledMatrixField& slice(std::size_t s_index) const { return slices_[s_index]; }
  std::span<const SampledMatrixField> slices() const { return slices_; }

  /// Runs this path, then `next`.  The last slice of this must equal the first
  /// slice of next.
  UnitaryPath2D concatenated(const UnitaryPath2D& next, const Tolerances& tol = {}) const;

 private:
  std::vector<SampledMatrixField> slices_;
};

/// sum_i sup_t ||v_{i+1}(t) - v_i(t)||_op (chord sum).
double path_length(const UnitaryPath2D& path);

/// max_j sum_i sup_t |theta_j(s_{i+1},t) - theta_j(s_i,t)| over a 2-D branch
/// lift.  Samples with a spectral gap below 10 * tol.jitter are jittered
/// first; the final step into the identity counts each branch's distance to
/// 2 pi Z.  Throws CollisionError carrying the (s,t) location on a remaining
/// gap violation.
double path_lower_bound_branches(const UnitaryPath2D& path, const Tolerances& tol = {});

struct CuPath {
  UnitaryPath2D path;
  double length = 0.0;           // 2 pi max_j ||h_j||, exact length of the constructed path
  double measured_length = 0.0;  // chord sum of the sampled path
  double endpoint_error = 0.0;   // sup_t ||v_0(t) - u(t)||
  double epsilon_report = 0.0;
  double max_branch_norm = 0.0;  // max_j ||h_j|| in turns
  std::vector<BigInt> shifts;    // integer shifts applied to the lifted branches
};

/// Constructive path v_s = sum_j exp(2 pi i (1-s) h_j) p_j from u to 1 with
/// sum_j h_j = 0.  The field is jittered first when its spectral gap drops
/// below 10 * tol.jitter.  Throws CuError when det u is not identically 1.
CuPath cu_upper_bound_path(const SampledMatrixField& u, const Tolerances& tol = {}, std::size_t s_steps = 16);

/// Integer shifts n_j making sum_j (h_j + n_j) = 0 that minimize
/// max_j ||h_j + n_j||_inf; ties go to the lexicographically smallest vector.
/// `ranges` holds (min_t h_j, max_t h_j) and `total` the integer sum of the h_j.
std::vector<BigInt> minimal_integer_shifts(std::span<const std::pair<double, double>> ranges, long long total);

/// sup_t ||principal_log u(t)||, or +inf when the spectrum reaches -1.
double geodesic_upper_bound(const SampledMatrixField& u, const Tolerances& tol = {});

}  // namespace cellab
