#pragma once

#include "cellab/rational.hpp"

#include "json.hpp"

#include <span>
#include <string>
#include <vector>

namespace cellab {

/// Exact continuous piecewise-linear function on [0,1] with rational knots and
/// values.  Stored in canonical form (no collinear interior knots), so two
/// functions compare equal iff they agree on [0,1].
class PiecewiseLinearFn {
 public:
  /// Breakpoints strictly increasing from 0 to 1, one value per breakpoint.
  PiecewiseLinearFn(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static PiecewiseLinearFn constant(const Rational& value);
  /// t -> slope*t + intercept
  static PiecewiseLinearFn affine(const Rational& slope, const Rational& intercept);
  static PiecewiseLinearFn identity() { return affine(1, 0); }

  std::span<const Rational> breakpoints() const { return breakpoints_; }
  std::span<const Rational> values() const { return values_; }
  std::size_t knot_count() const { return breakpoints_.size(); }

  Rational operator()(const Rational& t) const;
  double eval(double t) const;

  const Rational& min() const { return min_; }
  const Rational& max() const { return max_; }
  /// max - min
  Rational oscillation() const { return max_ - min_; }
  bool is_constant() const { return min_ == max_; }
  /// [lo, hi] is contained in the range of the function.
  bool range_covers(const Rational& lo, const Rational& hi) const { return min_ <= lo && hi <= max_; }

  /// (*this) o inner.  The range of inner must lie in [0,1].  Knots of *this are
  /// pulled back through each affine piece of inner.
  PiecewiseLinearFn compose(const PiecewiseLinearFn& inner) const;

  PiecewiseLinearFn scaled(const Rational& factor) const;
  PiecewiseLinearFn shifted(const Rational& offset) const;

  friend PiecewiseLinearFn operator+(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b);
  friend PiecewiseLinearFn operator-(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b);
  friend PiecewiseLinearFn operator-(const PiecewiseLinearFn& a) { return a.scaled(-1); }

  friend bool operator==(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }
  /// Arbitrary strict total order (lexicographic on knots then values), for use as a map key.
  friend bool operator<(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b);

  /// Human-readable "{(0,0),(1/2,1),(1,1)}".
  std::string str() const;

 private:
  void canonicalize();

  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  std::vector<double> breakpoints_d_;
  std::vector<double> values_d_;
  Rational min_;
  Rational max_;
};

/// max_t |a(t) - b(t)|, exact.
Rational sup_distance(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b);

/// Merged, sorted breakpoint set of several functions.
std::vector<Rational> merged_breakpoints(std::span<const PiecewiseLinearFn* const> fns);

/// JSON array of [t, value] pairs encoded as decimal or "p/q" strings.
nlohmann::json to_json(const PiecewiseLinearFn& fn);
/// Accepts strings ("p/q", decimals) or JSON numbers for each coordinate.
PiecewiseLinearFn piecewise_linear_from_json(const nlohmann::json& j);

}  // namespace cellab
