#pragma once

// Function-algebra layer over [0,1]: eigenvalue lists, eigenvalue variation,
// functional calculus, determinant fields, the P^k metric, and the spectral
// push-forward of block-diagonal homomorphisms.

#include "cellab/numerics.hpp"
#include "cellab/piecewise_linear.hpp"
#include "cellab/rational.hpp"

#include <span>
#include <utility>
#include <vector>

namespace cellab {

/// One spectral branch together with its multiplicity.
struct WeightedBranch {
  PiecewiseLinearFn fn;
  BigInt multiplicity;

  friend bool operator==(const WeightedBranch&, const WeightedBranch&) = default;
};

/// Spectral data of a self-adjoint element: a multiset of (branch, multiplicity).
/// Equal branches are merged; entries are kept in a canonical order.
class SymbolicElement {
 public:
  SymbolicElement() = default;
  explicit SymbolicElement(std::vector<WeightedBranch> entries);

  std::span<const WeightedBranch> entries() const { return entries_; }
  const BigInt& total_rank() const { return total_rank_; }
  bool empty() const { return entries_.empty(); }

  /// Appends `multiplicity` copies of the zero function (corner padding).
  /// Rejected unless every branch is >= 0 everywhere or <= 0 everywhere.
  SymbolicElement padded_with_zero(const BigInt& multiplicity) const;

  /// sum of mult * branch, exact.
  PiecewiseLinearFn weighted_sum() const;

  friend bool operator==(const SymbolicElement&, const SymbolicElement&) = default;

 private:
  std::vector<WeightedBranch> entries_;
  BigInt total_rank_ = 0;
};

/// Exact eigenvalue list: runs of consecutive sorted branches, lowest first.
/// Run r stands for `multiplicity` consecutive indices whose i-th lowest
/// eigenvalue function is `fn`.
struct EigenBranchList {
  std::vector<WeightedBranch> runs;

  BigInt rank() const;
  /// The branch with 1-based index k (k-th lowest).
  const PiecewiseLinearFn& branch(const BigInt& k) const;
  const PiecewiseLinearFn& lowest() const { return runs.front().fn; }
  const PiecewiseLinearFn& highest() const { return runs.back().fn; }
};

/// Sampled eigenvalue list on a uniform grid: branches[i][g] is the i-th lowest
/// eigenvalue at grid point g.
struct SampledEigenvalueList {
  std::vector<std::vector<double>> branches;

  std::size_t count() const { return branches.size(); }
  std::size_t grid_size() const { return branches.empty() ? 0 : branches.front().size(); }
};

/// Pointwise sorted spectrum of a self-adjoint field.
SampledEigenvalueList eigenvalue_list(const SampledMatrixField& a, const Tolerances& tol = {});

/// max_i (max_t h_i - min_t h_i).  On sampled data this is the grid max/min,
/// which can under-estimate the true value by O(Lipschitz * dt).
double eigenvalue_variation(const SampledEigenvalueList& list);
double eigenvalue_variation(const SampledMatrixField& a, const Tolerances& tol = {});
Rational eigenvalue_variation(const EigenBranchList& list);
Rational eigenvalue_variation(const SymbolicElement& a);

/// k-th lowest merge of a weighted family of functions.  Critical points are
/// the knots plus all pairwise crossings; between them the order is fixed.
EigenBranchList kth_lowest_merge(std::span<const WeightedBranch> fns);
inline EigenBranchList eigenvalue_list(const SymbolicElement& a) { return kth_lowest_merge(a.entries()); }

/// f applied to the spectrum; the spectrum must lie in [0,1] (tol.sym slack
/// for sampled fields).  Throws RangeError otherwise.
SampledMatrixField functional_calculus(const SampledMatrixField& a, const PiecewiseLinearFn& f,
                                       const Tolerances& tol = {});
SymbolicElement functional_calculus(const SymbolicElement& a, const PiecewiseLinearFn& f);

struct ChiFamily {
  PiecewiseLinearFn chi;   // 0 on [0,c], affine on [c,d], 1 on [d,1]
  PiecewiseLinearFn chi1;  // t / L
  PiecewiseLinearFn chi2;  // (-1 + 1/L) t
};

/// Throws ArgumentError unless L >= 2 and 0 <= c < d <= 1.
ChiFamily chi_family(long long L, const Rational& c, const Rational& d);

/// Pointwise determinant.
std::vector<Complex> determinant_field(const SampledMatrixField& u, const Tolerances& tol = {});

/// Points of P^k(Y): multisets of k reals, or of k angles on the circle.
struct PSetPoint {
  std::vector<double> points;
};

/// min over permutations of max |x_i - y_sigma(i)|.  For reals this is the
/// sorted matching.  Throws ArgumentError on cardinality mismatch.
double pset_distance(const PSetPoint& x, const PSetPoint& y);
/// Same metric with circular distance on angles; the optimal matching is a
/// cyclic shift of the sorted orders.
double pset_distance_circle(const PSetPoint& x, const PSetPoint& y);

/// Push-forward through diag(f o xi_1, ..., f o xi_k): entries become
/// (h o xi, mult_h * mult_xi).  Pattern values must lie in [0,1].
SymbolicElement compose_spectral(std::span<const WeightedBranch> patterns, const SymbolicElement& source);

}  // namespace cellab
