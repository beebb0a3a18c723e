#include "cellab/dimdrop.hpp"
#include "cellab/errors.hpp"

#include "doctest.h"

#include <cstdint>

using namespace cellab;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t u64(const BigInt& v) { return static_cast<std::uint64_t>(v); }

}  // namespace

TEST_CASE("dimension-drop algebra validation") {
  CHECK(DimDropAlgebra(2, 6, 3).is_prime());
  CHECK_FALSE(DimDropAlgebra(2, 12, 3).is_prime());
  CHECK_THROWS_AS(DimDropAlgebra(4, 6, 3), ArgumentError);
  CHECK_THROWS_AS(DimDropAlgebra(0, 6, 3), ArgumentError);
}

TEST_CASE("Miller-Rabin agrees with trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(BigInt(n)) == trial_division_prime(n));
  bool proven = false;
  CHECK(is_prime(BigInt("1000000007"), &proven));
  CHECK(proven);
  CHECK_FALSE(is_prime(BigInt("3215031751")));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("stage two regression") {
  const auto stages = build_tower(2);
  REQUIRE(stages[0].transition);
  const StageTransition& t = *stages[0].transition;
  CHECK(t.k0 == 13);
  CHECK(t.k1 == 17);
  CHECK(t.k == 221);
  CHECK(t.r0 == 17);
  CHECK(t.r1 == 13);
  CHECK(stages[1].p == 26);
  CHECK(stages[1].q == 51);
  CHECK(stages[1].d == 1326);
  CHECK_FALSE(stages[1].transition);
}

TEST_CASE("transitions against brute-force primes and congruences") {
  const auto stages = build_tower(3);
  for (int i = 0; i < 2; ++i) {
    const TowerStage& s = stages[static_cast<std::size_t>(i)];
    const StageTransition& t = *s.transition;
    // first two primes above 2 d
    std::uint64_t n = 2 * u64(s.d) + 1;
    while (!trial_division_prime(n)) ++n;
    CHECK(u64(t.k0) == n);
    ++n;
    while (!trial_division_prime(n)) ++n;
    CHECK(u64(t.k1) == n);
    const std::uint64_t p1 = u64(t.k0 * s.p);
    const std::uint64_t q1 = u64(t.k1 * s.q);
    const std::uint64_t k = u64(t.k);
    std::uint64_t r0 = 0, r1 = 0;
    for (std::uint64_t r = 1; r <= q1 && r0 == 0; ++r)
      if ((k - r) % q1 == 0) r0 = r;
    for (std::uint64_t r = 1; r <= p1 && r1 == 0; ++r)
      if ((k - r) % p1 == 0) r1 = r;
    CHECK(u64(t.r0) == r0);
    CHECK(u64(t.r1) == r1);
    CHECK_NOTHROW(check_stage_invariants(s));
  }
}

TEST_CASE("invariant checker names the broken stage") {
  TowerStage s = build_tower(2)[0];
  s.transition->r0 += 1;
  CHECK_THROWS_AS(check_stage_invariants(s), InvariantError);
}

TEST_CASE("pattern composition agrees with function composition") {
  const auto stages = build_tower(4);
  const PatternMultiset p12 = one_step_patterns(stages[0]);
  const PatternMultiset p23 = one_step_patterns(stages[1]);
  const PatternMultiset p13 = compose_patterns(p12, p23);
  CHECK(p13.total() == p12.total() * p23.total());
  for (const auto& [pattern, mult] : p13.entries) {
    (void)mult;
    // every composite pattern is xi o eta for some one-step pair
    bool found = false;
    for (const auto& [xi, m1] : p12.entries)
      for (const auto& [eta, m2] : p23.entries)
        if (xi.fn().compose(eta.fn()) == pattern.fn()) found = true;
    CHECK(found);
  }
  for (const auto& [xi, m1] : p12.entries)
    for (const auto& [eta, m2] : p23.entries) {
      const PiecewiseLinearFn f = xi.fn().compose(eta.fn());
      BigInt mult = 0;
      for (const auto& [pattern, m] : p13.entries)
        if (pattern.fn() == f) mult = m;
      CHECK(mult >= m1 * m2);
    }
  CHECK(composite_patterns(stages, 1, 3).entries == p13.entries);
  CHECK(composite_patterns(stages, 1, 4).total() == p13.total() * one_step_patterns(stages[2]).total());
}

TEST_CASE("boundary multiplicity law on composites") {
  const auto stages = build_tower(4);
  for (int a = 1; a <= 3; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      const BoundaryReport r = boundary_check(composite_patterns(stages, a, b), stages[static_cast<std::size_t>(a - 1)],
                                              stages[static_cast<std::size_t>(b - 1)]);
      CHECK(r.pass);
    }
  // the unweighted reading fails at value 0: r0 = 17 is not a multiple of 51
  const BoundaryReport raw = boundary_check(one_step_patterns(stages[0]), stages[1].p, stages[1].q);
  CHECK_FALSE(raw.pass);
}

TEST_CASE("push_element preserves rank times multiplicity") {
  const auto stages = build_tower(2);
  const SymbolicElement e({{PiecewiseLinearFn::identity(), 2}, {PiecewiseLinearFn::constant(Rational(1, 3)), 4}});
  const SymbolicElement pushed = push_element(e, one_step_patterns(stages[0]));
  CHECK(pushed.total_rank() == 6 * 221);
}

TEST_CASE("membership check for I[2,6,3]") {
  const DimDropAlgebra alg(2, 6, 3);
  // f(0) = a (x) 1_3 with a in M_2 and f(1) = 1_2 (x) b with b in M_3, linearly joined
  ComplexMatrix a(2, 2);
  a << 1, 2, 3, 4;
  ComplexMatrix b(3, 3);
  b << 1, 0, 2, 0, 5, 0, 7, 0, 1;
  ComplexMatrix f0 = ComplexMatrix::Zero(6, 6);
  ComplexMatrix f1 = ComplexMatrix::Zero(6, 6);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      for (Eigen::Index r = 0; r < 3; ++r) f0(i * 3 + r, j * 3 + r) = a(i, j);
  for (Eigen::Index blk = 0; blk < 2; ++blk) f1.block(blk * 3, blk * 3, 3, 3) = b;
  const auto f = SampledMatrixField::sample([&](double t) -> ComplexMatrix { return (1 - t) * f0 + t * f1; }, 9,
                                            Flavor::general);
  CHECK(membership_check(f, alg).member);
  ComplexMatrix broken = f0;
  broken(0, 1) = 1.0;
  const auto g = SampledMatrixField::sample([&](double t) -> ComplexMatrix { return (1 - t) * broken + t * f1; }, 9,
                                            Flavor::general);
  const MembershipReport r = membership_check(g, alg);
  CHECK_FALSE(r.member);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("dichotomy: scan, modular count and preconditions") {
  for (std::int64_t p = 2; p <= 30; ++p)
    for (std::int64_t q = 2; q <= 30; ++q) {
      if (std::gcd(p, q) != 1) continue;
      std::int64_t brute = 0;
      for (std::int64_t K = 1; K < p * q; ++K)
        if (dichotomy_check(p, q, K)) ++brute;
      CHECK(brute == 0);
      CHECK(dichotomy_scan(p, q) == brute);
      CHECK(dichotomy_count(p, q) == brute);
    }
  CHECK_THROWS_AS(dichotomy_check(4, 6, 5), PreconditionError);
  CHECK_THROWS_AS(dichotomy_check(2, 3, 6), PreconditionError);
}

TEST_CASE("tower JSON uses string integers") {
  const auto j = tower_to_json(build_tower(3));
  CHECK(j.size() == 3);
  CHECK(j[2]["d"] == "9368140938");
  CHECK(j[0]["k"] == "221");
}
