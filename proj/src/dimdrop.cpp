#include "cellab/dimdrop.hpp"

#include "cellab/errors.hpp"

#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cellab {

namespace {

BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

BigInt pow2(unsigned r) { return BigInt(1) << r; }

// Deterministic for n < 3317044064679887385961981 with these bases.
const BigInt kMillerRabinBound("3317044064679887385961981");
constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(const BigInt& n) {
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned base : kBases) {
    BigInt a = base;
    if (a % n == 0) continue;
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt next_prime_above(const BigInt& bound, bool& proven) {
  BigInt n = bound + 1;
  while (true) {
    bool this_proven = true;
    if (is_prime(n, &this_proven)) {
      proven = proven && this_proven;
      return n;
    }
    ++n;
  }
}

BigInt positive_residue(const BigInt& k, const BigInt& modulus) {
  BigInt r = k % modulus;
  return r == 0 ? modulus : r;
}

void require(bool condition, const TowerStage& s, const std::string& what) {
  if (!condition) throw InvariantError("stage " + std::to_string(s.index) + ": " + what);
}

}  // namespace

DimDropAlgebra::DimDropAlgebra(BigInt m0_, BigInt m_, BigInt m1_)
    : m0(std::move(m0_)), m(std::move(m_)), m1(std::move(m1_)) {
  if (m0 <= 0 || m <= 0 || m1 <= 0) throw ArgumentError("DimDropAlgebra: sizes must be positive");
  if (m % m0 != 0) throw ArgumentError("DimDropAlgebra: m0 = " + m0.str() + " does not divide m = " + m.str());
  if (m % m1 != 0) throw ArgumentError("DimDropAlgebra: m1 = " + m1.str() + " does not divide m = " + m.str());
}

bool DimDropAlgebra::is_prime() const { return gcd(m0, m1) == 1 && m == m0 * m1; }

bool is_prime(const BigInt& n, bool* proven) {
  if (proven) *proven = true;
  if (n < 2) return false;
  for (unsigned p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  const bool result = miller_rabin(n);
  if (proven && result && n >= kMillerRabinBound) *proven = false;
  return result;
}

TowerStage initial_stage() {
  TowerStage s;
  s.index = 1;
  s.p = 2;
  s.q = 3;
  s.d = 6;
  return s;
}

StageTransition compute_transition(const TowerStage& s) {
  StageTransition t;
  bool proven = true;
  t.k0 = next_prime_above(2 * s.d, proven);
  t.k1 = next_prime_above(t.k0, proven);
  t.k = t.k0 * t.k1;
  t.r0 = positive_residue(t.k, t.k1 * s.q);
  t.r1 = positive_residue(t.k, t.k0 * s.p);
  t.primality_proven = proven;
  return t;
}

TowerStage next_stage(const TowerStage& s) {
  const StageTransition t = s.transition ? *s.transition : compute_transition(s);
  TowerStage next;
  next.index = s.index + 1;
  next.p = t.k0 * s.p;
  next.q = t.k1 * s.q;
  next.d = next.p * next.q;
  return next;
}

std::vector<TowerStage> build_tower(int count) {
  if (count < 1) throw ArgumentError("build_tower: need at least one stage");
  std::vector<TowerStage> stages{initial_stage()};
  while (static_cast<int>(stages.size()) < count) {
    stages.back().transition = compute_transition(stages.back());
    stages.push_back(next_stage(stages.back()));
  }
  return stages;
}

void check_stage_invariants(const TowerStage& s) {
  require(s.d == s.p * s.q, s, "d != p q");
  require(gcd(s.p, s.q) == 1, s, "gcd(p, q) != 1");
  if (!s.transition) return;
  const StageTransition& t = *s.transition;
  const BigInt p_next = t.k0 * s.p;
  const BigInt q_next = t.k1 * s.q;
  require(t.k0 != t.k1, s, "k0 == k1");
  require(t.k0 > 2 * s.d && t.k1 > 2 * s.d, s, "k0, k1 must exceed 2 d");
  require(is_prime(t.k0) && is_prime(t.k1), s, "k0 or k1 is not prime");
  for (BigInt n = 2 * s.d + 1; n < t.k1; ++n)
    if (n != t.k0) require(!is_prime(n), s, "k0, k1 are not the first two primes above 2 d");
  require(t.k == t.k0 * t.k1, s, "k != k0 k1");
  require(t.r0 > 0 && t.r0 <= q_next, s, "r0 outside (0, q_{m+1}]");
  require((t.k - t.r0) % q_next == 0, s, "q_{m+1} does not divide k - r0");
  require(t.r1 > 0 && t.r1 <= p_next, s, "r1 outside (0, p_{m+1}]");
  require((t.k - t.r1) % p_next == 0, s, "p_{m+1} does not divide k - r1");
  require((t.r0 * s.q) % q_next == 0, s, "q_{m+1} does not divide r0 q_m");
  require((t.r1 * s.p) % p_next == 0, s, "p_{m+1} does not divide r1 p_m");
  require(t.r0 + t.r1 <= t.k, s, "r0 + r1 > k");
}

Pattern Pattern::constant(BigInt l, unsigned r) {
  if (l <= 0 || l >= pow2(r)) throw ArgumentError("Pattern::constant: need 0 < l < 2^r");
  return Pattern{Kind::constant, std::move(l), r};
}

Pattern Pattern::affine(BigInt l, unsigned r) {
  if (l < 0 || l >= pow2(r) || (r == 0 && l != 0)) throw ArgumentError("Pattern::affine: need 0 <= l < 2^r");
  return Pattern{Kind::affine, std::move(l), r};
}

Rational Pattern::at(const Rational& t) const {
  const Rational denom(pow2(r));
  return kind == Kind::constant ? Rational(l) / denom : (t + Rational(l)) / denom;
}

PiecewiseLinearFn Pattern::fn() const {
  return PiecewiseLinearFn({Rational(0), Rational(1)}, {at(0), at(1)});
}

std::string Pattern::str() const {
  std::ostringstream out;
  if (kind == Kind::constant)
    out << l << "/2^" << r;
  else
    out << "(t+" << l << ")/2^" << r;
  return out.str();
}

bool operator<(const Pattern& a, const Pattern& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.l < b.l;
}

BigInt PatternMultiset::total() const {
  BigInt sum = 0;
  for (const auto& [pattern, mult] : entries) sum += mult;
  return sum;
}

std::vector<WeightedBranch> PatternMultiset::branches() const {
  std::vector<WeightedBranch> out;
  out.reserve(entries.size());
  for (const auto& [pattern, mult] : entries) out.push_back({pattern.fn(), mult});
  return out;
}

PatternMultiset make_multiset(std::vector<std::pair<Pattern, BigInt>> entries) {
  std::map<Pattern, BigInt> merged;
  for (auto& [pattern, mult] : entries) {
    if (mult < 0) throw ArgumentError("PatternMultiset: negative multiplicity");
    merged[pattern] += mult;
  }
  PatternMultiset out;
  for (auto& [pattern, mult] : merged)
    if (mult > 0) out.entries.emplace_back(pattern, mult);
  return out;
}

PatternMultiset one_step_patterns(const TowerStage& s) {
  if (!s.transition) throw PreconditionError("one_step_patterns: stage " + std::to_string(s.index) +
                                             " has no transition data");
  const StageTransition& t = *s.transition;
  return make_multiset({{Pattern::affine(0, 1), t.r0},
                        {Pattern::constant(1, 1), t.k - t.r0 - t.r1},
                        {Pattern::affine(1, 1), t.r1}});
}

PatternMultiset compose_patterns(const PatternMultiset& outer, const PatternMultiset& inner) {
  std::vector<std::pair<Pattern, BigInt>> entries;
  entries.reserve(outer.entries.size() * inner.entries.size());
  for (const auto& [xi, a] : outer.entries) {
    for (const auto& [eta, b] : inner.entries) {
      const unsigned r = xi.r + eta.r;
      // xi(eta(t)) = (eta(t) + l) / 2^r' for affine xi, so the offsets combine as l' + l 2^{r'}.
      Pattern composite;
      if (xi.kind == Pattern::Kind::constant)
        composite = Pattern{Pattern::Kind::constant, xi.l << eta.r, r};
      else
        composite = Pattern{eta.kind, eta.l + (xi.l << eta.r), r};
      const Rational lo = composite.at(0);
      const Rational hi = composite.at(1);
      if (lo < 0 || hi > 1 || (composite.kind == Pattern::Kind::constant && (lo == 0 || lo == 1)))
        throw InvariantError("compose_patterns: composite " + composite.str() + " leaves the pattern grammar");
      entries.emplace_back(std::move(composite), a * b);
    }
  }
  return make_multiset(std::move(entries));
}

PatternMultiset composite_patterns(const std::vector<TowerStage>& stages, int m, int n) {
  if (m < 1 || n < m || n > static_cast<int>(stages.size()))
    throw ArgumentError("composite_patterns: need 1 <= m <= n <= " + std::to_string(stages.size()));
  PatternMultiset result = make_multiset({{Pattern::identity(), 1}});
  for (int i = m; i < n; ++i) result = compose_patterns(result, one_step_patterns(stages[i - 1]));
  return result;
}

BoundaryReport boundary_check(const PatternMultiset& patterns, const BigInt& p_n, const BigInt& q_n,
                              const BigInt& p_m, const BigInt& q_m) {
  std::map<Rational, BigInt> zero;
  std::map<Rational, BigInt> one;
  for (const auto& [pattern, mult] : patterns.entries) {
    zero[pattern.at(0)] += mult;
    one[pattern.at(1)] += mult;
  }
  BoundaryReport report;
  auto scan = [&](int endpoint, const std::map<Rational, BigInt>& values, const BigInt& modulus,
                  std::vector<std::pair<Rational, BigInt>>& out) {
    for (const auto& [value, mult] : values) {
      out.emplace_back(value, mult);
      const BigInt weight = value == 0 ? q_m : value == 1 ? p_m : BigInt(1);
      if ((mult * weight) % modulus != 0) {
        report.pass = false;
        report.violations.push_back({endpoint, value, mult, weight, modulus});
      }
    }
  };
  scan(0, zero, q_n, report.at_zero);
  scan(1, one, p_n, report.at_one);
  return report;
}

BoundaryReport boundary_check(const PatternMultiset& patterns, const TowerStage& source, const TowerStage& target) {
  return boundary_check(patterns, target.p, target.q, source.p, source.q);
}

SymbolicElement push_element(const SymbolicElement& e, const PatternMultiset& patterns) {
  const std::vector<WeightedBranch> branches = patterns.branches();
  return compose_spectral(branches, e);
}

MembershipReport membership_check(const SampledMatrixField& f, const DimDropAlgebra& algebra, const Tolerances& tol) {
  if (BigInt(f.dim()) != algebra.m)
    throw ArgumentError("membership_check: field dimension " + std::to_string(f.dim()) + " != m = " +
                        algebra.m.str());
  const Eigen::Index n = f.dim();
  const Eigen::Index m0 = algebra.m0.convert_to<Eigen::Index>();
  const Eigen::Index m1 = algebra.m1.convert_to<Eigen::Index>();
  const Eigen::Index s0 = n / m0;
  auto fail = [](const char* where, Eigen::Index r, Eigen::Index c, Complex got, Complex want) {
    std::ostringstream out;
    out << where << " entry (" << r << "," << c << ") = " << got << ", expected " << want;
    return MembershipReport{false, out.str()};
  };
  // f(0) = a (x) 1_{s0}: entry (i s0 + x, j s0 + y) = a_ij [x == y].
  const ComplexMatrix& start = f[0];
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Eigen::Index i = r / s0;
      const Eigen::Index j = c / s0;
      const Complex want = (r % s0 == c % s0) ? start(i * s0, j * s0) : Complex(0.0, 0.0);
      if (std::abs(start(r, c) - want) > tol.membership) return fail("f(0)", r, c, start(r, c), want);
    }
  }
  // f(1) = 1_{s1} (x) b: block diagonal with s1 equal m1 x m1 blocks.
  const ComplexMatrix& end = f[f.grid_size() - 1];
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex want = (r / m1 == c / m1) ? end(r % m1, c % m1) : Complex(0.0, 0.0);
      if (std::abs(end(r, c) - want) > tol.membership) return fail("f(1)", r, c, end(r, c), want);
    }
  }
  return {};
}

bool dichotomy_check(const BigInt& p, const BigInt& q, const BigInt& K) {
  if (p <= 0 || q <= 0 || gcd(p, q) != 1)
    throw PreconditionError("dichotomy_check: gcd(" + p.str() + ", " + q.str() + ") != 1");
  const BigInt d = p * q;
  if (K <= 0 || K >= d) throw PreconditionError("dichotomy_check: K must satisfy 0 < K < d = " + d.str());
  return K % q == 0 && (d - K) % p == 0;
}

BigInt dichotomy_count(const BigInt& p, const BigInt& q) {
  if (p <= 0 || q <= 0 || gcd(p, q) != 1)
    throw PreconditionError("dichotomy_count: gcd(" + p.str() + ", " + q.str() + ") != 1");
  // multiples i of p with 1 <= i <= p - 1
  return (p - 1) / p;
}

std::int64_t dichotomy_scan(std::int64_t p, std::int64_t q) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1)
    throw PreconditionError("dichotomy_scan: gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  const std::int64_t d = p * q;
  std::int64_t count = 0;
  for (std::int64_t K = q; K < d; K += q)
    if ((d - K) % p == 0) ++count;
  return count;
}

nlohmann::json to_json(const Pattern& pattern, const BigInt& mult) {
  return {{"kind", pattern.kind == Pattern::Kind::constant ? "const" : "affine"},
          {"l", pattern.l.str()},
          {"r", pattern.r},
          {"mult", mult.str()}};
}

nlohmann::json to_json(const PatternMultiset& patterns) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [pattern, mult] : patterns.entries) out.push_back(to_json(pattern, mult));
  return out;
}

nlohmann::json to_json(const TowerStage& stage) {
  nlohmann::json j{{"index", stage.index}, {"p", stage.p.str()}, {"q", stage.q.str()}, {"d", stage.d.str()}};
  if (stage.transition) {
    const StageTransition& t = *stage.transition;
    j["k0"] = t.k0.str();
    j["k1"] = t.k1.str();
    j["k"] = t.k.str();
    j["r0"] = t.r0.str();
    j["r1"] = t.r1.str();
    j["primality_proven"] = t.primality_proven;
  }
  return j;
}

nlohmann::json tower_to_json(const std::vector<TowerStage>& stages) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : stages) out.push_back(to_json(s));
  return out;
}

}  // namespace cellab
