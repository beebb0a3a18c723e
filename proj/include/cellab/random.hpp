#pragma once

// Seeded generators for property suites and acceptance runs.

#include "cellab/funalg.hpp"
#include "cellab/numerics.hpp"
#include "cellab/piecewise_linear.hpp"

#include <random>

namespace cellab {

using Rng = std::mt19937_64;

/// Hermitian matrix with independent N(0, scale^2) real and imaginary parts.
ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n, double scale = 1.0);

/// u(t) = exp(i H(t)) with H(t) = A + B t + C t^2, each term traceless hermitian,
/// so det u = 1 identically.
SampledMatrixField random_cu_field(Rng& rng, Eigen::Index n, std::size_t grid_size, double scale = 1.0,
                                   const Tolerances& tol = {});

/// Random piecewise-linear function with `interior` random knots on a 1/denominator
/// lattice and values in [lo, hi] on the same lattice.
PiecewiseLinearFn random_piecewise_linear(Rng& rng, int interior, const Rational& lo, const Rational& hi,
                                          long long denominator = 64);

}  // namespace cellab
