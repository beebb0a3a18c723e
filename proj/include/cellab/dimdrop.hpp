#pragma once

// Dimension-drop algebras I[m0, m, m1] and the Jiang-Su inductive system:
// stage recursion, connecting-map spectral patterns, boundary multiplicity
// laws and the coprimality dichotomy.  All integers are arbitrary precision.

#include "cellab/funalg.hpp"
#include "cellab/numerics.hpp"
#include "cellab/rational.hpp"

#include "json.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cellab {

struct DimDropAlgebra {
  BigInt m0;
  BigInt m;
  BigInt m1;

  /// Throws ArgumentError unless m0 | m and m1 | m (all positive).
  DimDropAlgebra(BigInt m0, BigInt m, BigInt m1);

  /// gcd(m0, m1) = 1 and m = m0 * m1.
  bool is_prime() const;
};

/// Deterministic Miller-Rabin with the first 13 prime bases; a proof below
/// 3.3e24.  `proven` is cleared for larger inputs, which are then only
/// probable primes.
bool is_prime(const BigInt& n, bool* proven = nullptr);

/// Data of the connecting map A_m -> A_{m+1}.
struct StageTransition {
  BigInt k0;  // p_{m+1} = k0 * p_m
  BigInt k1;  // q_{m+1} = k1 * q_m
  BigInt k;   // k0 * k1
  BigInt r0;  // 0 < r0 <= q_{m+1}, q_{m+1} | k - r0
  BigInt r1;  // 0 < r1 <= p_{m+1}, p_{m+1} | k - r1
  bool primality_proven = true;
};

struct TowerStage {
  int index = 1;
  BigInt p;
  BigInt q;
  BigInt d;
  std::optional<StageTransition> transition;  // outgoing map to stage index+1

  DimDropAlgebra algebra() const { return {p, d, q}; }
};

/// A_1 = I[2, 6, 3].
TowerStage initial_stage();

/// First two primes above 2 d_m and the residues r0, r1.
StageTransition compute_transition(const TowerStage& s);

/// Stage m+1; uses s.transition when present.
TowerStage next_stage(const TowerStage& s);

/// Stages 1..count; every stage except the last carries its transition.
std::vector<TowerStage> build_tower(int count);

/// Throws InvariantError naming the first violated stage invariant.
void check_stage_invariants(const TowerStage& s);

/// Const(l, r): t -> l / 2^r.   Affine(l, r): t -> (t + l) / 2^r.
struct Pattern {
  enum class Kind { constant, affine };
  Kind kind = Kind::affine;
  BigInt l = 0;
  unsigned r = 0;

  static Pattern constant(BigInt l, unsigned r);
  static Pattern affine(BigInt l, unsigned r);
  static Pattern identity() { return affine(0, 0); }

  Rational at(const Rational& t) const;
  PiecewiseLinearFn fn() const;
  std::string str() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend bool operator<(const Pattern& a, const Pattern& b);
};

struct PatternMultiset {
  std::vector<std::pair<Pattern, BigInt>> entries;  // sorted, merged, positive multiplicities

  BigInt total() const;
  /// Branch form, for funalg::compose_spectral.
  std::vector<WeightedBranch> branches() const;
};

/// Sorts and merges equal patterns; drops zero multiplicities.
PatternMultiset make_multiset(std::vector<std::pair<Pattern, BigInt>> entries);

/// Patterns of the map A_m -> A_{m+1}:
/// {(t/2, r0), (1/2, k - r0 - r1), ((t+1)/2, r1)}.
PatternMultiset one_step_patterns(const TowerStage& s);

/// outer o inner entrywise, multiplicities multiplied.  For m -> n -> n',
/// the composite is compose_patterns(P_{m,n}, P_{n,n'}).
PatternMultiset compose_patterns(const PatternMultiset& outer, const PatternMultiset& inner);

/// Patterns of phi_{m,n} for stages[m-1] .. stages[n-1] (1-based stage indices).
PatternMultiset composite_patterns(const std::vector<TowerStage>& stages, int m, int n);

struct BoundaryViolation {
  int endpoint;      // 0 or 1
  Rational value;
  BigInt multiplicity;
  BigInt weight;     // source block multiplicity the value carries
  BigInt modulus;
};

struct BoundaryReport {
  bool pass = true;
  // endpoint values with multiplicities, ascending
  std::vector<std::pair<Rational, BigInt>> at_zero;
  std::vector<std::pair<Rational, BigInt>> at_one;
  std::vector<BoundaryViolation> violations;
};

/// Endpoint multiplicity law for a map A_m -> A_n.  An element of A_m has
/// f(0) with eigenvalue multiplicities divisible by q_m and f(1) by p_m, so the
/// endpoint value 0 (resp. 1) of the pushed element has multiplicity j * q_m
/// (resp. s * p_m); every other value l/2^r picks up all eigenvalues of f.
/// Checks q_n | that multiplicity at t=0 and p_n | it at t=1.
BoundaryReport boundary_check(const PatternMultiset& patterns, const BigInt& p_n, const BigInt& q_n,
                              const BigInt& p_m = 1, const BigInt& q_m = 1);
BoundaryReport boundary_check(const PatternMultiset& patterns, const TowerStage& source, const TowerStage& target);

/// phi_{m,n} on spectral data; conjugation-invariant, so the unitary U of the
/// connecting map is not represented.
SymbolicElement push_element(const SymbolicElement& e, const PatternMultiset& patterns);

struct MembershipReport {
  bool member = true;
  std::string diagnostic;
};

/// f(0) in M_{m0} (x) 1_{m/m0} and f(1) in 1_{m/m1} (x) M_{m1}, within tol.membership.
MembershipReport membership_check(const SampledMatrixField& f, const DimDropAlgebra& algebra,
                                  const Tolerances& tol = {});

/// (q | K) and (p | d - K) with d = p q.  Throws PreconditionError unless
/// gcd(p, q) = 1 and 0 < K < d.
bool dichotomy_check(const BigInt& p, const BigInt& q, const BigInt& K);

/// Number of K in (0, p q) for which dichotomy_check is true, by the modular
/// argument: K = q i with p | q i forces p | i, i.e. i >= p.
BigInt dichotomy_count(const BigInt& p, const BigInt& q);

/// Exhaustive machine-integer scan: number of K in (0, p q) with q | K and
/// p | (p q - K).  Only multiples of q are visited.  Same preconditions.
std::int64_t dichotomy_scan(std::int64_t p, std::int64_t q);

nlohmann::json to_json(const Pattern& pattern, const BigInt& mult);
nlohmann::json to_json(const PatternMultiset& patterns);
nlohmann::json to_json(const TowerStage& stage);
nlohmann::json tower_to_json(const std::vector<TowerStage>& stages);

}  // namespace cellab
