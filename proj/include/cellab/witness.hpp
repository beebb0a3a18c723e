#pragma once

// Witness unitaries and bound reports.  Exact spectral data is kept in turns:
// a branch h stands for the eigenvalue exp(2 pi i h(t)).

#include "cellab/cel.hpp"
#include "cellab/dimdrop.hpp"
#include "cellab/funalg.hpp"
#include "cellab/numerics.hpp"
#include "cellab/rational.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cellab {

struct CuCertificate {
  bool exact = false;  // symbolic check (true) or sampled determinant (false)
  bool pass = false;
  double residual = 0.0;                         // max |sum - integer| or max |det - 1|
  std::optional<PiecewiseLinearFn> residual_fn;  // symbolic: sum of mult * branch minus its integer part at 0
};

/// Symbolic: sum of mult * branch (turns) must be a constant integer.
CuCertificate verify_cu(const SymbolicElement& turns);
/// Sampled: max_t |det u(t) - 1| <= tol.det.
CuCertificate verify_cu(const SampledMatrixField& u, const Tolerances& tol = {});

nlohmann::json to_json(const CuCertificate& cu);

struct WitnessReport {
  std::string witness_id;
  nlohmann::json params;
  PiMultiple paper_target;
  CelBound bound;
  CuCertificate cu;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const WitnessReport& report);

/// diag(exp(2 pi i h)) over a uniform grid; dimension = total rank.
/// Throws ArgumentError above dense_limit.
SampledMatrixField realize_diagonal(const SymbolicElement& turns, std::size_t grid_size, std::size_t dense_limit = 64,
                                    const Tolerances& tol = {});

/// Branches in turns scaled to units of pi.
EigenBranchList branches_over_pi(const SymbolicElement& turns);

/// Top branch (k-1)t/k once, -t/k with multiplicity k-1.  Throws ArgumentError for k < 2.
SymbolicElement pan_wang_witness(long long k);

struct PanWangOptions {
  std::size_t grid_size = 2049;
  bool with_path = true;  // also build the constructive upper bound on the dense realization
  std::size_t s_steps = 16;
  Tolerances tol;
};

WitnessReport pan_wang_report(long long k, const PanWangOptions& options = {});

/// One chi2 o chi o h entry and L-1 chi1 o chi o h entries per branch h of x,
/// plus `pad` zero branches.  Throws PreconditionError naming the uncovered
/// part of [c,d] when no branch of x covers it.
SymbolicElement chi_witness(long long L, const SymbolicElement& x, const Rational& c, const Rational& d,
                            const BigInt& pad = 0);

WitnessReport chi_report(long long L, const SymbolicElement& x, const Rational& c, const Rational& d,
                         const BigInt& pad = 0);

/// Stage-m witness: (q-1)t/q with multiplicity p_m, -t/q with multiplicity
/// d_m - p_m, and (block_k - 1) d_m zero branches.
SymbolicElement jiangsu_stage_witness(const TowerStage& stage, long long block_k = 1);

struct JiangSuCases {
  Rational case12;  // in units of pi
  Rational case3;
  Rational case4;
  Rational case5;
  Rational floor;   // min of the above
  Rational limit;   // 2 (q_m - 1) / q_m, the n -> infinity value of case 5
};

/// (q-1)(2^r - 1) / (q 2^r) * 2, in units of pi.
Rational jiangsu_floor(const BigInt& q_m, unsigned r);

/// Pushes the stage-m witness to stage n (stages must hold at least n stages)
/// and runs the case analysis.
WitnessReport jiangsu_witness(const std::vector<TowerStage>& stages, int m, int n, long long block_k = 1);

/// Smallest L >= 2 with 2 (1 - 1/L) >= floor (units of pi).  floor < 2 required.
long long minimal_chi_L(const Rational& floor_over_pi);

/// Smallest n > m with jiangsu_floor(q_m, n - m) >= floor.  Requires floor below
/// the stage-m limit.
int minimal_jiangsu_n(const TowerStage& stage_m, const Rational& floor_over_pi);

}  // namespace cellab
