#include "cellab/funalg.hpp"

#include "cellab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace cellab {

namespace {

std::vector<WeightedBranch> merge_equal(std::vector<WeightedBranch> entries) {
  std::map<PiecewiseLinearFn, BigInt> merged;
  for (auto& e : entries) {
    if (e.multiplicity <= 0) throw ArgumentError("SymbolicElement: multiplicities must be positive");
    auto [it, inserted] = merged.try_emplace(std::move(e.fn), e.multiplicity);
    if (!inserted) it->second += e.multiplicity;
  }
  std::vector<WeightedBranch> out;
  out.reserve(merged.size());
  for (auto& [fn, mult] : merged) out.push_back({fn, mult});
  return out;
}

}  // namespace

SymbolicElement::SymbolicElement(std::vector<WeightedBranch> entries) : entries_(merge_equal(std::move(entries))) {
  for (const auto& e : entries_) total_rank_ += e.multiplicity;
}

SymbolicElement SymbolicElement::padded_with_zero(const BigInt& multiplicity) const {
  for (const auto& e : entries_) {
    if (e.fn.min() < 0 && e.fn.max() > 0)
      throw PreconditionError("padded_with_zero: branch " + e.fn.str() +
                              " changes sign; zero padding is only defined for branches that do not cross 0");
  }
  std::vector<WeightedBranch> entries(entries_.begin(), entries_.end());
  if (multiplicity > 0) entries.push_back({PiecewiseLinearFn::constant(0), multiplicity});
  return SymbolicElement(std::move(entries));
}

PiecewiseLinearFn SymbolicElement::weighted_sum() const {
  PiecewiseLinearFn sum = PiecewiseLinearFn::constant(0);
  for (const auto& e : entries_) sum = sum + e.fn.scaled(Rational(e.multiplicity));
  return sum;
}

BigInt EigenBranchList::rank() const {
  BigInt r = 0;
  for (const auto& run : runs) r += run.multiplicity;
  return r;
}

const PiecewiseLinearFn& EigenBranchList::branch(const BigInt& k) const {
  if (k < 1) throw ArgumentError("EigenBranchList::branch: index is 1-based");
  BigInt seen = 0;
  for (const auto& run : runs) {
    seen += run.multiplicity;
    if (k <= seen) return run.fn;
  }
  throw ArgumentError("EigenBranchList::branch: index " + k.str() + " exceeds rank " + seen.str());
}

SampledEigenvalueList eigenvalue_list(const SampledMatrixField& a, const Tolerances& tol) {
  if (a.flavor() != Flavor::selfadjoint && a.flavor() != Flavor::projection)
    throw FlavorError("eigenvalue_list: field must be selfadjoint");
  const std::size_t k = static_cast<std::size_t>(a.dim());
  SampledEigenvalueList out;
  out.branches.assign(k, std::vector<double>(a.grid_size()));
  for (std::size_t g = 0; g < a.grid_size(); ++g) {
    const HermitianEigen eig = hermitian_eigen(a[g], tol);
    for (std::size_t i = 0; i < k; ++i) out.branches[i][g] = eig.values(static_cast<Eigen::Index>(i));
  }
  return out;
}

double eigenvalue_variation(const SampledEigenvalueList& list) {
  double ev = 0.0;
  for (const auto& branch : list.branches) {
    if (branch.empty()) continue;
    const auto [lo, hi] = std::minmax_element(branch.begin(), branch.end());
    ev = std::max(ev, *hi - *lo);
  }
  return ev;
}

double eigenvalue_variation(const SampledMatrixField& a, const Tolerances& tol) {
  return eigenvalue_variation(eigenvalue_list(a, tol));
}

Rational eigenvalue_variation(const EigenBranchList& list) {
  Rational ev = 0;
  for (const auto& run : list.runs) ev = std::max(ev, run.fn.oscillation());
  return ev;
}

Rational eigenvalue_variation(const SymbolicElement& a) {
  if (a.empty()) return 0;
  return eigenvalue_variation(kth_lowest_merge(a.entries()));
}

EigenBranchList kth_lowest_merge(std::span<const WeightedBranch> fns) {
  EigenBranchList out;
  if (fns.empty()) return out;
  for (const auto& f : fns)
    if (f.multiplicity <= 0) throw ArgumentError("kth_lowest_merge: multiplicities must be positive");

  std::vector<const PiecewiseLinearFn*> ptrs;
  ptrs.reserve(fns.size());
  for (const auto& f : fns) ptrs.push_back(&f.fn);
  std::vector<Rational> knots = merged_breakpoints(ptrs);

  // Values of every function at every knot of the merged grid.
  const std::size_t n = fns.size();
  std::vector<std::vector<Rational>> at_knot(knots.size(), std::vector<Rational>(n));
  for (std::size_t s = 0; s < knots.size(); ++s)
    for (std::size_t i = 0; i < n; ++i) at_knot[s][i] = fns[i].fn(knots[s]);

  // Pairwise crossings inside each cell of the merged grid.
  std::vector<Rational> points = knots;
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const Rational& a = knots[s];
    const Rational& b = knots[s + 1];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational da = at_knot[s][i] - at_knot[s][j];
        const Rational db = at_knot[s + 1][i] - at_knot[s + 1][j];
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) points.push_back(a + (b - a) * da / (da - db));
      }
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  struct Level {
    Rational value;
    BigInt mult;
  };
  auto sorted_levels = [&](const Rational& t) {
    std::vector<Level> levels;
    levels.reserve(n);
    for (const auto& f : fns) levels.push_back({f.fn(t), f.multiplicity});
    std::sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) { return x.value < y.value; });
    return levels;
  };

  // Run boundaries: cumulative multiplicities of the order on every open cell.
  std::set<BigInt> boundaries;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const Rational mid = (points[s] + points[s + 1]) / 2;
    const auto levels = sorted_levels(mid);
    BigInt cum = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      cum += levels[i].mult;
      // Equal values on the cell give the same k-th lowest function.
      if (i + 1 < levels.size() && levels[i + 1].value == levels[i].value) continue;
      boundaries.insert(cum);
    }
  }

  // k-th lowest value at each critical point for each run representative.
  const std::vector<BigInt> reps(boundaries.begin(), boundaries.end());
  std::vector<std::vector<Rational>> run_values(reps.size(), std::vector<Rational>(points.size()));
  for (std::size_t s = 0; s < points.size(); ++s) {
    const auto levels = sorted_levels(points[s]);
    std::size_t idx = 0;
    BigInt cum = levels[0].mult;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      while (cum < reps[r]) cum += levels[++idx].mult;
      run_values[r][s] = levels[idx].value;
    }
  }

  BigInt previous = 0;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    PiecewiseLinearFn fn(points, std::move(run_values[r]));
    const BigInt mult = reps[r] - previous;
    previous = reps[r];
    if (!out.runs.empty() && out.runs.back().fn == fn)
      out.runs.back().multiplicity += mult;
    else
      out.runs.push_back({std::move(fn), mult});
  }
  return out;
}

SampledMatrixField functional_calculus(const SampledMatrixField& a, const PiecewiseLinearFn& f,
                                       const Tolerances& tol) {
  if (a.flavor() != Flavor::selfadjoint && a.flavor() != Flavor::projection)
    throw FlavorError("functional_calculus: field must be selfadjoint");
  std::vector<ComplexMatrix> out;
  out.reserve(a.grid_size());
  for (std::size_t g = 0; g < a.grid_size(); ++g) {
    const HermitianEigen eig = hermitian_eigen(a[g], tol);
    Eigen::VectorXd mapped(eig.values.size());
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
      const double x = eig.values(j);
      if (x < -tol.sym || x > 1.0 + tol.sym)
        throw RangeError("functional_calculus: eigenvalue " + std::to_string(x) + " at grid index " +
                         std::to_string(g) + " outside [0,1]");
      mapped(j) = f.eval(std::clamp(x, 0.0, 1.0));
    }
    ComplexMatrix m = eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    out.push_back(0.5 * (m + m.adjoint()));
  }
  return SampledMatrixField(std::move(out), Flavor::selfadjoint, tol);
}

SymbolicElement functional_calculus(const SymbolicElement& a, const PiecewiseLinearFn& f) {
  std::vector<WeightedBranch> entries;
  entries.reserve(a.entries().size());
  for (const auto& e : a.entries()) {
    if (e.fn.min() < 0 || e.fn.max() > 1)
      throw RangeError("functional_calculus: branch range [" + to_string(e.fn.min()) + ", " + to_string(e.fn.max()) +
                       "] outside [0,1]");
    entries.push_back({f.compose(e.fn), e.multiplicity});
  }
  return SymbolicElement(std::move(entries));
}

ChiFamily chi_family(long long L, const Rational& c, const Rational& d) {
  if (L < 2) throw ArgumentError("chi_family: L must be at least 2");
  if (!(c < d)) throw ArgumentError("chi_family: need c < d");
  if (c < 0 || d > 1) throw ArgumentError("chi_family: need 0 <= c < d <= 1");
  std::vector<Rational> t{Rational(0)};
  std::vector<Rational> v{Rational(0)};
  if (c > 0) {
    t.push_back(c);
    v.push_back(0);
  }
  t.push_back(d);
  v.push_back(1);
  if (d < 1) {
    t.push_back(1);
    v.push_back(1);
  }
  const Rational inv_L(1, L);
  return ChiFamily{PiecewiseLinearFn(std::move(t), std::move(v)), PiecewiseLinearFn::affine(inv_L, 0),
                   PiecewiseLinearFn::affine(inv_L - 1, 0)};
}

std::vector<Complex> determinant_field(const SampledMatrixField& u, const Tolerances& tol) {
  std::vector<Complex> out;
  out.reserve(u.grid_size());
  for (std::size_t g = 0; g < u.grid_size(); ++g) {
    const Complex det = u[g].determinant();
    if (u.flavor() == Flavor::unitary && std::abs(std::abs(det) - 1.0) > tol.det * 1e3)
      throw InvariantError("determinant_field: |det| deviates from 1 at grid index " + std::to_string(g));
    out.push_back(det);
  }
  return out;
}

double pset_distance(const PSetPoint& x, const PSetPoint& y) {
  if (x.points.size() != y.points.size()) throw ArgumentError("pset_distance: cardinality mismatch");
  std::vector<double> a = x.points;
  std::vector<double> b = y.points;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double pset_distance_circle(const PSetPoint& x, const PSetPoint& y) {
  if (x.points.size() != y.points.size()) throw ArgumentError("pset_distance_circle: cardinality mismatch");
  const std::size_t n = x.points.size();
  if (n == 0) return 0.0;
  std::vector<double> a;
  std::vector<double> b;
  for (double v : x.points) a.push_back(wrap_angle(v));
  for (double v : y.points) b.push_back(wrap_angle(v));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(wrap_angle(a[i] - b[(i + shift) % n])));
    best = std::min(best, d);
  }
  return best;
}

SymbolicElement compose_spectral(std::span<const WeightedBranch> patterns, const SymbolicElement& source) {
  for (const auto& p : patterns) {
    if (p.fn.min() < 0 || p.fn.max() > 1)
      throw RangeError("compose_spectral: pattern " + p.fn.str() + " leaves [0,1]");
    if (p.multiplicity <= 0) throw ArgumentError("compose_spectral: pattern multiplicities must be positive");
  }
  std::vector<WeightedBranch> entries;
  entries.reserve(patterns.size() * source.entries().size());
  for (const auto& h : source.entries())
    for (const auto& p : patterns) entries.push_back({h.fn.compose(p.fn), h.multiplicity * p.multiplicity});
  return SymbolicElement(std::move(entries));
}

}  // namespace cellab
