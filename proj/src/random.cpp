#include "cellab/random.hpp"

#include <algorithm>
#include <set>

namespace cellab {

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (a + a.adjoint());
}

SampledMatrixField random_cu_field(Rng& rng, Eigen::Index n, std::size_t grid_size, double scale,
                                   const Tolerances& tol) {
  auto traceless = [&] {
    ComplexMatrix h = random_hermitian(rng, n, scale);
    h.diagonal().array() -= h.trace() / static_cast<double>(n);
    return h;
  };
  const ComplexMatrix a = traceless();
  const ComplexMatrix b = traceless();
  const ComplexMatrix c = traceless();
  return SampledMatrixField::sample(
      [&](double t) { return unitary_exp(ComplexMatrix(a + t * b + t * t * c), tol); }, grid_size, Flavor::unitary,
      tol);
}

PiecewiseLinearFn random_piecewise_linear(Rng& rng, int interior, const Rational& lo, const Rational& hi,
                                          long long denominator) {
  std::uniform_int_distribution<long long> knot(1, denominator - 1);
  std::set<long long> knots;
  for (int i = 0; i < interior && static_cast<long long>(knots.size()) < denominator - 1; ++i) knots.insert(knot(rng));
  const BigInt lo_steps = ceil(lo * denominator);
  const BigInt hi_steps = floor(hi * denominator);
  std::uniform_int_distribution<long long> value(lo_steps.convert_to<long long>(), hi_steps.convert_to<long long>());
  std::vector<Rational> t{Rational(0)};
  for (long long k : knots) t.emplace_back(k, denominator);
  t.emplace_back(1);
  std::vector<Rational> v;
  v.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v.emplace_back(value(rng), denominator);
  return PiecewiseLinearFn(std::move(t), std::move(v));
}

}  // namespace cellab
