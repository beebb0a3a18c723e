#pragma once

// Dense small-dimension kernel: hermitian/unitary spectral decomposition,
// matrix exp/log on sampled fields over [0,1], and continuous branch lifting.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace cellab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances.  Every operation takes these by const reference and
/// falls back to the defaults below.
struct Tolerances {
  double sym = 1e-9;        // ||A - A*|| for hermitian inputs
  double unitary = 1e-9;    // ||A*A - I||
  double spec = 1e-9;       // spectrum comparisons on the circle
  double det = 1e-9;        // |det - 1| for CU checks
  double roundtrip = 1e-9;  // exp/log round trips
  double eig = 1e-9;        // eigen-residual, relative to max(1, ||A||)
  double gap = 1e-8;        // minimal circular gap between eigenvalues
  double tie = 1e-12;       // ambiguity threshold in branch matching
  double jitter = 1e-6;     // separation added to repeated eigenvalues
  double anchor = 1e-6;     // anchor vs eigenvalue angle mismatch
  double membership = 1e-9; // dimension-drop endpoint structure
};

enum class Flavor { selfadjoint, unitary, projection, general };

const char* to_string(Flavor flavor);

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);
bool is_projection(const ComplexMatrix& a, double tol);

/// Largest singular value, via the hermitian eigensolver on A*A.
double operator_norm(const ComplexMatrix& a);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // orthonormal columns, vectors.col(j) pairs with values(j)
};

/// Cyclic Jacobi eigendecomposition of a hermitian matrix.
/// Throws FlavorError when `a` is not hermitian within tol.sym.
HermitianEigen hermitian_eigen(const ComplexMatrix& a, const Tolerances& tol = {});

struct UnitaryEigen {
  std::vector<Complex> values;  // unit modulus
  std::vector<double> angles;   // principal arguments in (-pi, pi], same order as values
  ComplexMatrix vectors;        // orthonormal eigenvectors
};

/// Spectral decomposition of a unitary (normal) matrix.  The hermitian part is
/// diagonalized first; clusters of its eigenvalues are split by diagonalizing
/// the compressed skew part.
UnitaryEigen unitary_eigen(const ComplexMatrix& u, const Tolerances& tol = {});

/// Eigenvalues of a unitary as a multiset of unit-modulus numbers.
std::vector<Complex> unitary_spectrum(const ComplexMatrix& u, const Tolerances& tol = {});

/// Smallest circular distance between two entries of a multiset of angles.
double min_circular_gap(std::span<const double> angles);

/// A uniform grid of matrices over [0,1] (both endpoints sampled).
class SampledMatrixField {
 public:
  SampledMatrixField(std::vector<ComplexMatrix> samples, Flavor flavor, const Tolerances& tol = {});

  /// Samples fn at grid_size uniform points of [0,1].
  static SampledMatrixField sample(const std::function<ComplexMatrix(double)>& fn, std::size_t grid_size,
                                   Flavor flavor, const Tolerances& tol = {});

  std::size_t grid_size() const { return samples_.size(); }
  Eigen::Index dim() const { return samples_.front().rows(); }
  Flavor flavor() const { return flavor_; }
  double t(std::size_t index) const;

  const ComplexMatrix& operator[](std::size_t index) const { return samples_[index]; }
  std::span<const ComplexMatrix> samples() const { return samples_; }

  /// max_i sup ||f(t_{i+1}) - f(t_i)||_op
  double max_step() const;

 private:
  std::vector<ComplexMatrix> samples_;
  Flavor flavor_;
};

/// Halving refinement: samples fn on the (2n-1)-point grid containing the
/// grid of `coarse`; the shared points must agree with the coarse samples.
SampledMatrixField refine(const SampledMatrixField& coarse, const std::function<ComplexMatrix(double)>& fn,
                          const Tolerances& tol = {});

/// Continuous real logarithms theta_j(t) of the moving eigenvalues of a
/// unitary field, together with the matching eigenvector frames.
struct BranchLift {
  std::vector<std::vector<double>> branches;  // branches[j][i] = theta_j(t_i)
  std::vector<ComplexMatrix> frames;          // frames[i].col(j) is an eigenvector for theta_j(t_i)

  std::size_t count() const { return branches.size(); }
  std::size_t grid_size() const { return branches.empty() ? 0 : branches.front().size(); }
};

/// Lifts the spectrum of u to continuous branches by nearest-angle greedy
/// matching.  Without anchors the branches start at the principal angles at
/// t=0 in ascending order.  Throws CollisionError on a gap violation or an
/// ambiguous match.
BranchLift lift_branches(const SampledMatrixField& u, std::optional<std::vector<double>> anchors = std::nullopt,
                         const Tolerances& tol = {});

/// Separates repeated eigenvalues: in the eigenbasis at each t, the angles
/// (ordered counter-clockwise starting after the largest spectral gap) are
/// moved by eps*(j - (n-1)/2).  Shifts sum to zero so det is preserved.
ComplexMatrix jitter(const ComplexMatrix& u, double eps, const Tolerances& tol = {});
SampledMatrixField jitter(const SampledMatrixField& u, double eps, const Tolerances& tol = {});

/// exp(iH) pointwise.
ComplexMatrix unitary_exp(const ComplexMatrix& h, const Tolerances& tol = {});
SampledMatrixField unitary_exp(const SampledMatrixField& h, const Tolerances& tol = {});

/// Principal logarithm: the hermitian H with spectrum in (-pi, pi) and
/// exp(iH) = u.  Throws BranchCutError when the spectrum comes within tol.gap
/// of -1.
ComplexMatrix principal_log(const ComplexMatrix& u, const Tolerances& tol = {});
SampledMatrixField principal_log(const SampledMatrixField& u, const Tolerances& tol = {});

}  // namespace cellab
