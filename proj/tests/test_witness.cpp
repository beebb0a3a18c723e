#include "cellab/cel.hpp"
#include "cellab/config.hpp"
#include "cellab/dimdrop.hpp"
#include "cellab/errors.hpp"
#include "cellab/witness.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace cellab;

TEST_CASE("finite-matrix witness values") {
  for (long long k : {2LL, 3LL, 4LL, 8LL}) {
    const SymbolicElement w = pan_wang_witness(k);
    CHECK(w.total_rank() == k);
    CHECK(verify_cu(w).pass);
    PanWangOptions options;
    options.grid_size = 257;
    options.with_path = k <= 4;
    const WitnessReport r = pan_wang_report(k, options);
    REQUIRE(r.bound.lower_exact);
    CHECK(r.bound.lower_exact->coeff == Rational(2 * (k - 1), k));
    CHECK(r.pass);
    if (options.with_path) CHECK(r.bound.upper <= 2 * std::numbers::pi * (k - 1) / k + 1e-2);
  }
  CHECK_THROWS_AS(pan_wang_witness(1), ArgumentError);
}

TEST_CASE("dense realization agrees with the symbolic witness") {
  const SymbolicElement w = pan_wang_witness(3);
  const SampledMatrixField u = realize_diagonal(w, 129);
  CHECK(verify_cu(u).pass);
  const CelBound b = cel_lower_distinct(jitter(u, 1e-6));
  CHECK(std::abs(b.lower - 4 * std::numbers::pi / 3) < 1e-5);
  CHECK_THROWS_AS(realize_diagonal(w, 129, 2), ArgumentError);
}

TEST_CASE("chi witness bound 2pi(1 - 1/L)") {
  const SymbolicElement x({{PiecewiseLinearFn::identity(), 1}});
  for (long long L : {2LL, 4LL, 100LL, 10000LL}) {
    const WitnessReport r = chi_report(L, x, Rational(3, 10), Rational(7, 10));
    REQUIRE(r.bound.lower_exact);
    CHECK(r.bound.lower_exact->coeff == 2 * (1 - Rational(1, L)));
    CHECK(r.cu.exact);
    CHECK(r.cu.pass);
  }
  const SymbolicElement short_x({{PiecewiseLinearFn::affine(Rational(1, 2), 0), 1}});
  CHECK_THROWS_AS(chi_witness(4, short_x, Rational(3, 10), Rational(7, 10)), PreconditionError);
  // padding keeps the bound and the determinant condition
  const WitnessReport padded = chi_report(4, x, Rational(3, 10), Rational(7, 10), 5);
  CHECK(padded.bound.lower_exact->coeff == Rational(3, 2));
  CHECK(padded.cu.pass);
}

TEST_CASE("minimal L and n for a requested floor") {
  for (int num = 1; num < 40; ++num) {
    const Rational floor(num, 20);
    long long brute = 2;
    while (2 * (1 - Rational(1, brute)) < floor) ++brute;
    CHECK(minimal_chi_L(floor) == brute);
  }
  const auto stages = build_tower(1);
  CHECK(minimal_jiangsu_n(stages[0], Rational(1)) == 3);
  CHECK(minimal_jiangsu_n(stages[0], Rational(5, 4)) == 5);
}

TEST_CASE("Jiang-Su floor sequence and limits") {
  const auto stages = build_tower(5);
  for (int n = 2; n <= 5; ++n) {
    const WitnessReport r = jiangsu_witness(stages, 1, n);
    const unsigned r_steps = static_cast<unsigned>(n - 1);
    const BigInt two_r = BigInt(1) << r_steps;
    const Rational expected = Rational(4, 3) * Rational(two_r - 1, two_r);
    CHECK(jiangsu_floor(3, r_steps) == expected);
    CHECK(r.pass);
    CHECK(parse_pi_multiple(r.details["floor"].get<std::string>()).coeff == expected);
    CHECK(r.details["dichotomy_count"] == "0");
    CHECK(r.details["boundary_pass"] == true);
  }
  // block size changes nothing
  const WitnessReport a = jiangsu_witness(stages, 1, 3, 1);
  const WitnessReport b = jiangsu_witness(stages, 1, 3, 3);
  CHECK(a.details["floor"] == b.details["floor"]);
  CHECK_THROWS(jiangsu_witness(stages, 3, 2));
}

TEST_CASE("run configuration parsing") {
  const RunConfig c = config_from_json(nlohmann::json::parse(R"({"grid_size": 257, "tolerances": {"gap": 1e-7}})"));
  CHECK(c.grid_size == 257);
  CHECK(c.tol.gap == 1e-7);
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"grid": 257})")));
  CHECK_THROWS_AS(validate(config_from_json(nlohmann::json::parse(R"({"grid_size": 3})"))), ArgumentError);
  const RunConfig back = config_from_json(to_json(c));
  CHECK(back.grid_size == c.grid_size);
  CHECK(back.seed == c.seed);
}
