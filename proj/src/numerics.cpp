#include "cellab/numerics.hpp"

#include "cellab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

namespace cellab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Generic direction for the first hermitian combination in unitary_eigen.
constexpr double kMixA = 0.8191520442889918;
constexpr double kMixB = 0.5735764363510462;
constexpr double kClusterTol = 1e-9;

std::string index_text(std::size_t i) { return std::to_string(i); }

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ArgumentError(std::string(what) + ": matrix must be square and non-empty");
}

// Cyclic Jacobi on a hermitian matrix; returns unsorted eigenpairs.
void jacobi_in_place(ComplexMatrix& a, ComplexMatrix& v) {
  const Eigen::Index n = a.rows();
  v = ComplexMatrix::Identity(n, n);
  if (n == 1) return;
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-18 * scale) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Phase rotation makes a(p,q) real, then a real symmetric Jacobi step.
        const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G acts on columns p, q.
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase;
        const Complex gqq = c * phase;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }
}

HermitianEigen sorted_eigen(ComplexMatrix a) {
  ComplexMatrix v;
  jacobi_in_place(a, v);
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = a(order[j], order[j]).real();
    out.vectors.col(j) = v.col(order[j]);
  }
  return out;
}

// Splits clusters of nearly equal eigenvalues of `values` by diagonalizing the
// compression of `other` onto each cluster; rotates the columns of `vectors`.
void split_clusters(const RealVector& values, const ComplexMatrix& other, ComplexMatrix& vectors, double tol) {
  const Eigen::Index n = values.size();
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && values(end) - values(end - 1) <= tol) ++end;
    const Eigen::Index size = end - begin;
    if (size > 1) {
      const ComplexMatrix basis = vectors.middleCols(begin, size);
      ComplexMatrix compressed = basis.adjoint() * other * basis;
      compressed = 0.5 * (compressed + compressed.adjoint()).eval();
      const HermitianEigen inner = sorted_eigen(compressed);
      vectors.middleCols(begin, size) = basis * inner.vectors;
    }
    begin = end;
  }
}

}  // namespace

const char* to_string(Flavor flavor) {
  switch (flavor) {
    case Flavor::selfadjoint: return "selfadjoint";
    case Flavor::unitary: return "unitary";
    case Flavor::projection: return "projection";
    case Flavor::general: return "general";
  }
  return "unknown";
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix gram = a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

bool is_projection(const ComplexMatrix& a, double tol) {
  return is_hermitian(a, tol) && (a * a - a).cwiseAbs().maxCoeff() <= tol;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  ComplexMatrix gram = a.adjoint() * a;
  gram = 0.5 * (gram + gram.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_eigen");
  if (!is_hermitian(a, tol.sym)) throw FlavorError("hermitian_eigen: input is not hermitian");
  ComplexMatrix sym = 0.5 * (a + a.adjoint());
  return sorted_eigen(std::move(sym));
}

UnitaryEigen unitary_eigen(const ComplexMatrix& u, const Tolerances& tol) {
  require_square(u, "unitary_eigen");
  if (!is_unitary(u, tol.unitary)) throw FlavorError("unitary_eigen: input is not unitary");
  const ComplexMatrix re = 0.5 * (u + u.adjoint());
  const ComplexMatrix im = Complex(0.0, -0.5) * (u - u.adjoint());
  ComplexMatrix first = kMixA * re + kMixB * im;
  first = 0.5 * (first + first.adjoint()).eval();
  const ComplexMatrix second = -kMixB * re + kMixA * im;
  HermitianEigen eig = sorted_eigen(first);
  ComplexMatrix vectors = eig.vectors;
  split_clusters(eig.values, second, vectors, kClusterTol);

  const Eigen::Index n = u.rows();
  UnitaryEigen out;
  out.vectors = std::move(vectors);
  out.values.reserve(static_cast<std::size_t>(n));
  out.angles.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto col = out.vectors.col(j);
    Complex lambda = col.dot(u * col);  // conj(col)^T u col
    const double mod = std::abs(lambda);
    lambda = mod > 0 ? lambda / mod : Complex(1.0, 0.0);
    out.values.push_back(lambda);
    out.angles.push_back(wrap_angle(std::arg(lambda)));
  }
  return out;
}

std::vector<Complex> unitary_spectrum(const ComplexMatrix& u, const Tolerances& tol) {
  return unitary_eigen(u, tol).values;
}

double min_circular_gap(std::span<const double> angles) {
  if (angles.size() < 2) return kTwoPi;
  std::vector<double> sorted;
  sorted.reserve(angles.size());
  for (double a : angles) sorted.push_back(wrap_angle(a));
  std::sort(sorted.begin(), sorted.end());
  double gap = sorted.front() + kTwoPi - sorted.back();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

SampledMatrixField::SampledMatrixField(std::vector<ComplexMatrix> samples, Flavor flavor, const Tolerances& tol)
    : samples_(std::move(samples)), flavor_(flavor) {
  if (samples_.size() < 2) throw ArgumentError("SampledMatrixField: need at least two grid points");
  const Eigen::Index n = samples_.front().rows();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const ComplexMatrix& m = samples_[i];
    if (m.rows() != n || m.cols() != n || n == 0)
      throw ArgumentError("SampledMatrixField: sample " + index_text(i) + " has inconsistent dimension");
    if (!m.allFinite()) throw ArgumentError("SampledMatrixField: sample " + index_text(i) + " is not finite");
    bool ok = true;
    switch (flavor_) {
      case Flavor::selfadjoint: ok = is_hermitian(m, tol.sym); break;
      case Flavor::unitary: ok = is_unitary(m, tol.unitary); break;
      case Flavor::projection: ok = is_projection(m, tol.sym); break;
      case Flavor::general: break;
    }
    if (!ok)
      throw FlavorError(std::string("SampledMatrixField: sample ") + index_text(i) + " is not " + to_string(flavor_));
  }
}

SampledMatrixField SampledMatrixField::sample(const std::function<ComplexMatrix(double)>& fn, std::size_t grid_size,
                                              Flavor flavor, const Tolerances& tol) {
  if (grid_size < 2) throw ArgumentError("SampledMatrixField::sample: grid_size must be at least 2");
  std::vector<ComplexMatrix> samples;
  samples.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i)
    samples.push_back(fn(static_cast<double>(i) / static_cast<double>(grid_size - 1)));
  return SampledMatrixField(std::move(samples), flavor, tol);
}

double SampledMatrixField::t(std::size_t index) const {
  return static_cast<double>(index) / static_cast<double>(samples_.size() - 1);
}

double SampledMatrixField::max_step() const {
  double step = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i)
    step = std::max(step, operator_norm(samples_[i] - samples_[i - 1]));
  return step;
}

SampledMatrixField refine(const SampledMatrixField& coarse, const std::function<ComplexMatrix(double)>& fn,
                          const Tolerances& tol) {
  const std::size_t n = coarse.grid_size();
  SampledMatrixField fine = SampledMatrixField::sample(fn, 2 * n - 1, coarse.flavor(), tol);
  for (std::size_t i = 0; i < n; ++i) {
    if ((fine[2 * i] - coarse[i]).cwiseAbs().maxCoeff() > tol.roundtrip * std::max(1.0, coarse[i].norm()))
      throw ArgumentError("refine: generator disagrees with coarse sample " + index_text(i));
  }
  return fine;
}

BranchLift lift_branches(const SampledMatrixField& u, std::optional<std::vector<double>> anchors,
                         const Tolerances& tol) {
  if (u.flavor() != Flavor::unitary) throw FlavorError("lift_branches: field must be unitary");
  const std::size_t k = static_cast<std::size_t>(u.dim());
  const std::size_t grid = u.grid_size();

  BranchLift lift;
  lift.branches.assign(k, std::vector<double>(grid, 0.0));
  lift.frames.reserve(grid);

  auto check_gap = [&](const UnitaryEigen& eig, std::size_t index) {
    const double gap = min_circular_gap(eig.angles);
    if (gap < tol.gap) {
      std::ostringstream msg;
      msg << "lift_branches: eigenvalues collide at grid index " << index << " (gap " << gap << " < " << tol.gap
          << ")";
      throw CollisionError(msg.str(), index);
    }
  };

  // Greedy nearest-angle matching of `current` angles to `previous` branch values.
  // Returns assignment branch -> eigen index and the signed increments.
  auto match = [&](const std::vector<double>& previous, const std::vector<double>& current, std::size_t index,
                   double max_distance) {
    struct Candidate {
      double distance;
      std::size_t branch;
      std::size_t eig;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(k * k);
    std::vector<double> distance(k * k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t a = 0; a < k; ++a) {
        distance[j * k + a] = std::abs(wrap_angle(current[a] - previous[j]));
        candidates.push_back({distance[j * k + a], j, a});
      }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
      if (x.distance != y.distance) return x.distance < y.distance;
      if (x.branch != y.branch) return x.branch < y.branch;
      return x.eig < y.eig;
    });
    std::vector<std::size_t> assignment(k, k);
    std::vector<bool> taken(k, false);
    std::size_t assigned = 0;
    for (const Candidate& c : candidates) {
      if (assigned == k) break;
      if (assignment[c.branch] != k || taken[c.eig]) continue;
      // Ambiguity: another free eigenvalue is equally close to this branch.
      for (std::size_t a = 0; a < k; ++a) {
        if (a == c.eig || taken[a]) continue;
        if (std::abs(distance[c.branch * k + a] - c.distance) < tol.tie) {
          std::ostringstream msg;
          msg << "lift_branches: ambiguous branch match at grid index " << index;
          throw CollisionError(msg.str(), index);
        }
      }
      if (c.distance > max_distance) {
        std::ostringstream msg;
        msg << "lift_branches: eigenvalue at grid index " << index << " is " << c.distance
            << " rad from its branch (limit " << max_distance << ")";
        throw CollisionError(msg.str(), index);
      }
      assignment[c.branch] = c.eig;
      taken[c.eig] = true;
      ++assigned;
    }
    return assignment;
  };

  auto permuted_frame = [&](const UnitaryEigen& eig, const std::vector<std::size_t>& assignment) {
    ComplexMatrix frame(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j)
      frame.col(static_cast<Eigen::Index>(j)) = eig.vectors.col(static_cast<Eigen::Index>(assignment[j]));
    return frame;
  };

  UnitaryEigen eig = unitary_eigen(u[0], tol);
  check_gap(eig, 0);
  std::vector<double> current(k);
  if (anchors) {
    if (anchors->size() != k) throw ArgumentError("lift_branches: need one anchor per eigenvalue");
    const auto assignment = match(*anchors, eig.angles, 0, tol.anchor);
    for (std::size_t j = 0; j < k; ++j) {
      lift.branches[j][0] = (*anchors)[j];
      current[j] = (*anchors)[j];
    }
    lift.frames.push_back(permuted_frame(eig, assignment));
  } else {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eig.angles[a] < eig.angles[b]; });
    for (std::size_t j = 0; j < k; ++j) {
      current[j] = eig.angles[order[j]];
      lift.branches[j][0] = current[j];
    }
    lift.frames.push_back(permuted_frame(eig, order));
  }

  for (std::size_t i = 1; i < grid; ++i) {
    eig = unitary_eigen(u[i], tol);
    check_gap(eig, i);
    const auto assignment = match(current, eig.angles, i, kPi);
    for (std::size_t j = 0; j < k; ++j) {
      current[j] += wrap_angle(eig.angles[assignment[j]] - current[j]);
      lift.branches[j][i] = current[j];
    }
    lift.frames.push_back(permuted_frame(eig, assignment));
  }
  return lift;
}

ComplexMatrix jitter(const ComplexMatrix& u, double eps, const Tolerances& tol) {
  const UnitaryEigen eig = unitary_eigen(u, tol);
  const std::size_t n = eig.angles.size();
  if (n == 1) return u;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eig.angles[a] < eig.angles[b]; });
  // Start the counter-clockwise ordering right after the largest gap.
  std::size_t start = 0;
  double largest = -1.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double lo = eig.angles[order[(r + n - 1) % n]];
    const double hi = eig.angles[order[r]];
    const double gap = r == 0 ? hi + kTwoPi - lo : hi - lo;
    if (gap > largest + 1e-15) {
      largest = gap;
      start = r;
    }
  }
  Eigen::VectorXcd shifted(static_cast<Eigen::Index>(n));
  const double centre = 0.5 * static_cast<double>(n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t idx = order[(start + r) % n];
    const double angle = eig.angles[idx] + eps * (static_cast<double>(r) - centre);
    shifted(static_cast<Eigen::Index>(idx)) = std::polar(1.0, angle);
  }
  return eig.vectors * shifted.asDiagonal() * eig.vectors.adjoint();
}

SampledMatrixField jitter(const SampledMatrixField& u, double eps, const Tolerances& tol) {
  if (u.flavor() != Flavor::unitary) throw FlavorError("jitter: field must be unitary");
  std::vector<ComplexMatrix> out;
  out.reserve(u.grid_size());
  for (std::size_t i = 0; i < u.grid_size(); ++i) {
    out.push_back(jitter(u[i], eps, tol));
    if (eps > 0) {
      const UnitaryEigen eig = unitary_eigen(out.back(), tol);
      const double gap = min_circular_gap(eig.angles);
      if (gap < tol.gap) {
        std::ostringstream msg;
        msg << "jitter: gap " << gap << " still below tolerance at grid index " << i;
        throw CollisionError(msg.str(), i);
      }
    }
  }
  return SampledMatrixField(std::move(out), Flavor::unitary, tol);
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, const Tolerances& tol) {
  const HermitianEigen eig = hermitian_eigen(h, tol);
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) phases(j) = std::polar(1.0, eig.values(j));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

SampledMatrixField unitary_exp(const SampledMatrixField& h, const Tolerances& tol) {
  if (h.flavor() != Flavor::selfadjoint && h.flavor() != Flavor::projection)
    throw FlavorError("unitary_exp: field must be selfadjoint");
  std::vector<ComplexMatrix> out;
  out.reserve(h.grid_size());
  for (const ComplexMatrix& m : h.samples()) out.push_back(unitary_exp(m, tol));
  return SampledMatrixField(std::move(out), Flavor::unitary, tol);
}

ComplexMatrix principal_log(const ComplexMatrix& u, const Tolerances& tol) {
  const UnitaryEigen eig = unitary_eigen(u, tol);
  Eigen::VectorXcd angles(static_cast<Eigen::Index>(eig.angles.size()));
  for (std::size_t j = 0; j < eig.angles.size(); ++j) {
    if (kPi - std::abs(eig.angles[j]) < tol.gap) throw BranchCutError("principal_log: spectrum touches -1", 0);
    angles(static_cast<Eigen::Index>(j)) = eig.angles[j];
  }
  ComplexMatrix h = eig.vectors * angles.asDiagonal() * eig.vectors.adjoint();
  return 0.5 * (h + h.adjoint());
}

SampledMatrixField principal_log(const SampledMatrixField& u, const Tolerances& tol) {
  if (u.flavor() != Flavor::unitary) throw FlavorError("principal_log: field must be unitary");
  std::vector<ComplexMatrix> out;
  out.reserve(u.grid_size());
  for (std::size_t i = 0; i < u.grid_size(); ++i) {
    try {
      out.push_back(principal_log(u[i], tol));
    } catch (const BranchCutError&) {
      throw BranchCutError("principal_log: spectrum touches -1 at grid index " + index_text(i), i);
    }
  }
  return SampledMatrixField(std::move(out), Flavor::selfadjoint, tol);
}

}  // namespace cellab
