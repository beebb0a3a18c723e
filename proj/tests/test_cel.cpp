#include "cellab/cel.hpp"
#include "cellab/errors.hpp"
#include "cellab/random.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace cellab;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix diag_phase(const std::vector<double>& angles) {
  const auto n = static_cast<Eigen::Index>(angles.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = std::polar(1.0, angles[static_cast<std::size_t>(i)]);
  return m;
}

// min over a wide integer window, no range reasoning
double brute_scalar_cel(const std::vector<double>& alpha) {
  double best = 1e300;
  for (int k = -50; k <= 50; ++k) {
    double worst = 0.0;
    for (double a : alpha) worst = std::max(worst, std::abs(a - 2.0 * kPi * k));
    best = std::min(best, worst);
  }
  return best;
}

std::vector<double> sampled(const PiecewiseLinearFn& over_pi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = kPi * over_pi.eval(static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

}  // namespace

TEST_CASE("scalar_cel against a wide brute-force shift range") {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const PiecewiseLinearFn f = random_piecewise_linear(rng, 4, -9, 9);
    const std::vector<double> alpha = sampled(f, 129);
    CHECK(scalar_cel(alpha) == doctest::Approx(brute_scalar_cel(alpha)).epsilon(1e-12));
    CHECK(scalar_cel(alpha, 5) == scalar_cel(alpha));
  }
}

TEST_CASE("exact scalar_cel examples") {
  CHECK(scalar_cel_exact(PiecewiseLinearFn::affine(Rational(-3, 2), 0)).value.coeff == Rational(3, 2));
  CHECK(scalar_cel_exact(PiecewiseLinearFn::constant(4)).value.coeff == 0);
  CHECK(scalar_cel_exact(PiecewiseLinearFn::affine(3, 0)).value.coeff == 2);
  // shift invariance by whole turns
  Rng rng(37);
  for (int rep = 0; rep < 50; ++rep) {
    const PiecewiseLinearFn f = random_piecewise_linear(rng, 3, -3, 3);
    const ExactScalarCel a = scalar_cel_exact(f);
    const ExactScalarCel b = scalar_cel_exact(f.shifted(6));
    CHECK(a.value == b.value);
    CHECK(to_double(a.value.coeff) * kPi == doctest::Approx(scalar_cel(sampled(f, 2049))).epsilon(1e-2));
  }
}

TEST_CASE("cel_lower_distinct on diagonal witnesses") {
  const auto u2 = SampledMatrixField::sample([](double t) { return diag_phase({kPi * t, -kPi * t + 0.0}); }, 257,
                                             Flavor::unitary);
  CHECK(cel_lower_distinct(jitter(u2, 1e-6)).lower == doctest::Approx(kPi).epsilon(1e-5));
  const auto u3 = SampledMatrixField::sample(
      [](double t) { return diag_phase({2 * kPi * 2 * t / 3, -2 * kPi * t / 3, -2 * kPi * t / 3}); }, 257,
      Flavor::unitary);
  const CelBound b = cel_lower_distinct(jitter(u3, 1e-6));
  CHECK(std::abs(b.lower - 4 * kPi / 3) < 1e-5);
  CHECK(b.lower_method == BoundMethod::distinct_eigenvalues);
}

TEST_CASE("ordered log bound and its window") {
  EigenBranchList list;
  list.runs = {{PiecewiseLinearFn::affine(-1, 0), 1}, {PiecewiseLinearFn::identity(), 1}};
  const CelBound b = cel_lower_ordered_log(list);
  REQUIRE(b.lower_exact);
  CHECK(b.lower_exact->coeff == 1);
  EigenBranchList wide;
  wide.runs = {{PiecewiseLinearFn::constant(-3), 1}};
  CHECK_THROWS_AS(cel_lower_ordered_log(wide), PreconditionError);
}

TEST_CASE("path_length of a geodesic converges to its arc length") {
  std::vector<SampledMatrixField> slices;
  const std::size_t steps = 256;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double s = 1.0 - static_cast<double>(i) / steps;
    slices.push_back(SampledMatrixField::sample(
        [&](double t) { return diag_phase({s * kPi / 2, -s * kPi / 2 * t}); }, 17, Flavor::unitary));
  }
  const UnitaryPath2D path(std::move(slices));
  const double len = path_length(path);
  CHECK(len <= kPi / 2 + 1e-12);
  CHECK(len >= 0.99 * kPi / 2);
  // chord sum under-estimates the arc by about 256 (pi/512)^3 / 24
  const double branches = path_lower_bound_branches(path);
  CHECK(branches <= len + 1e-5);
  CHECK(std::abs(branches - kPi / 2) < 1e-5);
  CHECK(path_length(path.concatenated(UnitaryPath2D({path.slice(path.s_steps()), path.slice(path.s_steps())}))) ==
        doctest::Approx(len));
}

TEST_CASE("minimal_integer_shifts against exhaustive enumeration") {
  Rng rng(41);
  std::uniform_real_distribution<double> lo(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.0, 0.9);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 3;
    std::vector<std::pair<double, double>> ranges;
    for (int j = 0; j < n; ++j) {
      const double a = lo(rng);
      ranges.emplace_back(a, a + width(rng));
    }
    const long long total = static_cast<long long>(std::llround(lo(rng) * 2));
    auto cost = [&](const std::vector<long long>& s) {
      double worst = 0.0;
      for (int j = 0; j < n; ++j)
        worst = std::max({worst, std::abs(ranges[static_cast<std::size_t>(j)].first + static_cast<double>(s[static_cast<std::size_t>(j)])),
                          std::abs(ranges[static_cast<std::size_t>(j)].second + static_cast<double>(s[static_cast<std::size_t>(j)]))});
      return worst;
    };
    double best = 1e300;
    std::vector<long long> s(static_cast<std::size_t>(n), -8);
    while (true) {
      long long sum = 0;
      for (long long v : s) sum += v;
      if (sum == -total) best = std::min(best, cost(s));
      std::size_t i = 0;
      while (i < s.size() && s[i] == 8) s[i++] = -8;
      if (i == s.size()) break;
      ++s[i];
    }
    const std::vector<BigInt> got = minimal_integer_shifts(ranges, total);
    std::vector<long long> as_ll;
    long long sum = 0;
    for (const auto& g : got) {
      as_ll.push_back(static_cast<long long>(g));
      sum += as_ll.back();
    }
    CHECK(sum == -total);
    CHECK(cost(as_ll) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("cu_upper_bound_path on witnesses and random fields") {
  const auto u = SampledMatrixField::sample([](double t) { return diag_phase({kPi * t, -kPi * t}); }, 257,
                                            Flavor::unitary);
  const CuPath p = cu_upper_bound_path(u);
  CHECK(std::abs(p.length - kPi) < 1e-3);
  CHECK(p.endpoint_error < 1e-2);

  const auto id = SampledMatrixField::sample([](double) { return ComplexMatrix::Identity(3, 3); }, 33, Flavor::unitary);
  CHECK(cu_upper_bound_path(id).length <= 1e-5);

  Rng rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const SampledMatrixField f = random_cu_field(rng, 3, 257, 0.6);
    const CuPath q = cu_upper_bound_path(f);
    CHECK(q.length <= 4 * kPi / 3 + 1e-2);
    CHECK(q.endpoint_error <= 1e-2);
    CHECK(q.measured_length <= q.length + 1e-9);
    // geodesic oracle is an independent upper bound for the same lower bound
    const double lower = cel_lower_distinct(f).lower;
    CHECK(lower <= std::min(q.length, geodesic_upper_bound(f)) + 1e-6);
  }

  const auto bad = SampledMatrixField::sample([](double t) { return diag_phase({t, 0.0}); }, 17, Flavor::unitary);
  CHECK_THROWS_AS(cu_upper_bound_path(bad), CuError);
}

TEST_CASE("geodesic_upper_bound examples") {
  const auto id = SampledMatrixField::sample([](double) { return ComplexMatrix::Identity(2, 2); }, 9, Flavor::unitary);
  CHECK(geodesic_upper_bound(id) == 0.0);
  const auto quarter = SampledMatrixField::sample([](double) { return diag_phase({kPi / 2}); }, 9, Flavor::unitary);
  CHECK(geodesic_upper_bound(quarter) == doctest::Approx(kPi / 2));
  const auto through = SampledMatrixField::sample([](double t) { return diag_phase({3 * kPi * t}); }, 64,
                                                  Flavor::unitary);
  CHECK(std::isinf(geodesic_upper_bound(through)));
}

TEST_CASE("CelBound combination and JSON") {
  CelBound a;
  a.lower = 1.0;
  a.upper = 3.0;
  CelBound b;
  b.lower = 2.0;
  b.upper = 2.5;
  const CelBound c = a.combined(b);
  CHECK(c.lower == 2.0);
  CHECK(c.upper == 2.5);
  CelBound bad;
  bad.lower = 5.0;
  CHECK_THROWS_AS(a.combined(bad), InvariantError);
  CHECK(to_json(c).contains("certificate"));
}
