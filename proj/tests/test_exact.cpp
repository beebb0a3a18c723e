#include "cellab/errors.hpp"
#include "cellab/funalg.hpp"
#include "cellab/piecewise_linear.hpp"
#include "cellab/random.hpp"
#include "cellab/rational.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace cellab;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(to_string(Rational(-3, 9)) == "-1/3");
}

TEST_CASE("PiMultiple round-trips through its string form") {
  for (const Rational& r : {Rational(0), Rational(1), Rational(3, 2), Rational(-7, 4), Rational(9999, 5000)}) {
    const PiMultiple p{r};
    CHECK(parse_pi_multiple(p.str()) == p);
  }
  CHECK(PiMultiple{Rational(4, 3)}.str() == "4/3·π");
  CHECK(parse_pi_multiple("1/2pi").coeff == Rational(1, 2));
}

TEST_CASE("piecewise-linear canonical form and evaluation") {
  const PiecewiseLinearFn f({0, Rational(1, 2), 1}, {0, 1, 2});
  CHECK(f == PiecewiseLinearFn::affine(2, 0));
  CHECK(f.knot_count() == 2);
  const PiecewiseLinearFn g({0, Rational(1, 3), 1}, {1, 0, 1});
  CHECK(g(Rational(2, 3)) == Rational(1, 2));
  CHECK(g.eval(2.0 / 3.0) == doctest::Approx(0.5));
  CHECK(g.min() == 0);
  CHECK(g.max() == 1);
  CHECK_THROWS(PiecewiseLinearFn({0, Rational(1, 2)}, {0, 1}));
}

TEST_CASE("composition agrees with pointwise evaluation") {
  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const PiecewiseLinearFn outer = random_piecewise_linear(rng, 4, -2, 2);
    const PiecewiseLinearFn inner = random_piecewise_linear(rng, 3, 0, 1);
    const PiecewiseLinearFn composed = outer.compose(inner);
    for (int i = 0; i <= 97; ++i) {
      const Rational t(i, 97);
      CHECK(composed(t) == outer(inner(t)));
    }
  }
}

TEST_CASE("sup_distance against dense sampling") {
  Rng rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    const PiecewiseLinearFn a = random_piecewise_linear(rng, 5, -1, 1);
    const PiecewiseLinearFn b = random_piecewise_linear(rng, 5, -1, 1);
    double sampled = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double t = i / 20000.0;
      sampled = std::max(sampled, std::abs(a.eval(t) - b.eval(t)));
    }
    const double exact = to_double(sup_distance(a, b));
    CHECK(exact >= sampled - 1e-12);
    CHECK(exact - sampled < 1e-3);
  }
}

TEST_CASE("piecewise-linear JSON round trip") {
  const PiecewiseLinearFn f({0, Rational(1, 3), 1}, {Rational(-1, 2), 2, 0});
  CHECK(piecewise_linear_from_json(to_json(f)) == f);
  CHECK(piecewise_linear_from_json(nlohmann::json::parse("[[0, 0], [0.5, 3], [1, 0]]"))(Rational(1, 2)) == 3);
}

TEST_CASE("kth_lowest_merge equals sorted dense samples") {
  Rng rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<WeightedBranch> family;
    for (int j = 0; j < 4; ++j) family.push_back({random_piecewise_linear(rng, 3, -1, 1), BigInt(1 + j % 2)});
    const EigenBranchList list = kth_lowest_merge(family);
    CHECK(list.rank() == 6);
    for (int i = 0; i <= 500; ++i) {
      const Rational t(i, 500);
      std::vector<Rational> values;
      for (const auto& b : family)
        for (int c = 0; c < static_cast<int>(b.multiplicity); ++c) values.push_back(b.fn(t));
      std::sort(values.begin(), values.end());
      for (int k = 1; k <= 6; ++k) CHECK(list.branch(k)(t) == values[static_cast<std::size_t>(k - 1)]);
    }
  }
}

TEST_CASE("eigenvalue variation of a crossing pair") {
  // t and 1 - t: sorted list is min and max, each varying by 1/2
  const SymbolicElement e({{PiecewiseLinearFn::identity(), 1}, {PiecewiseLinearFn::affine(-1, 1), 1}});
  CHECK(eigenvalue_variation(e) == Rational(1, 2));
}

TEST_CASE("chi family shapes") {
  const ChiFamily f = chi_family(4, Rational(3, 10), Rational(7, 10));
  CHECK(f.chi(Rational(1, 5)) == 0);
  CHECK(f.chi(Rational(1, 2)) == Rational(1, 2));
  CHECK(f.chi(Rational(9, 10)) == 1);
  CHECK(f.chi1(1) == Rational(1, 4));
  CHECK(f.chi2(1) == Rational(-3, 4));
  CHECK_THROWS_AS(chi_family(1, 0, 1), ArgumentError);
  CHECK_THROWS_AS(chi_family(4, Rational(1, 2), Rational(1, 2)), ArgumentError);
}

TEST_CASE("pset distance matches brute force over permutations") {
  Rng rng(29);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    PSetPoint x, y;
    for (int i = 0; i < 5; ++i) {
      x.points.push_back(u(rng));
      y.points.push_back(u(rng));
    }
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    double best_circle = 1e300;
    do {
      double worst = 0.0;
      double worst_circle = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double d = x.points[static_cast<std::size_t>(i)] - y.points[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        worst = std::max(worst, std::abs(d));
        worst_circle = std::max(worst_circle, std::abs(std::remainder(d, 2.0 * std::numbers::pi)));
      }
      best = std::min(best, worst);
      best_circle = std::min(best_circle, worst_circle);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(pset_distance(x, y) == doctest::Approx(best).epsilon(1e-12));
    CHECK(pset_distance_circle(x, y) == doctest::Approx(best_circle).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pset_distance({{1.0}}, {{1.0, 2.0}}), ArgumentError);
}

TEST_CASE("compose_spectral multiplies multiplicities") {
  const std::vector<WeightedBranch> patterns{{PiecewiseLinearFn::affine(Rational(1, 2), 0), 2},
                                             {PiecewiseLinearFn::constant(Rational(1, 2)), 3}};
  const SymbolicElement source({{PiecewiseLinearFn::identity(), 1}, {PiecewiseLinearFn::constant(0), 2}});
  const SymbolicElement pushed = compose_spectral(patterns, source);
  CHECK(pushed.total_rank() == 15);
  // constant pattern makes every branch constant 1/2 (from identity) or 0
  CHECK(pushed.weighted_sum()(1) == Rational(2, 2) + Rational(3, 2));
}

TEST_CASE("zero padding requires a sign-definite element") {
  const SymbolicElement mixed({{PiecewiseLinearFn::affine(2, -1), 1}});
  CHECK_THROWS(mixed.padded_with_zero(3));
  const SymbolicElement positive({{PiecewiseLinearFn::identity(), 1}});
  CHECK(positive.padded_with_zero(3).total_rank() == 4);
}
