#include "cellab/piecewise_linear.hpp"

#include "cellab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cellab {

namespace {

Rational lerp_value(const Rational& t0, const Rational& v0, const Rational& t1, const Rational& v1,
                    const Rational& t) {
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

void sort_unique(std::vector<Rational>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

Rational coordinate_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw ParseError("piecewise-linear coordinate must be a number or a string, got " + j.dump());
}

}  // namespace

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size())
    throw ArgumentError("PiecewiseLinearFn: breakpoints and values differ in length");
  if (breakpoints_.size() < 2) throw ArgumentError("PiecewiseLinearFn: need at least two breakpoints");
  if (breakpoints_.front() != 0 || breakpoints_.back() != 1)
    throw ArgumentError("PiecewiseLinearFn: breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i - 1] < breakpoints_[i]))
      throw ArgumentError("PiecewiseLinearFn: breakpoints must be strictly increasing");
  canonicalize();
}

void PiecewiseLinearFn::canonicalize() {
  std::vector<Rational> t{breakpoints_.front()};
  std::vector<Rational> v{values_.front()};
  for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
    // Drop knot i when (prev, i, next) are collinear.
    const Rational& t0 = t.back();
    const Rational& v0 = v.back();
    const Rational& t2 = breakpoints_[i + 1];
    const Rational& v2 = values_[i + 1];
    if ((values_[i] - v0) * (t2 - t0) == (v2 - v0) * (breakpoints_[i] - t0)) continue;
    t.push_back(breakpoints_[i]);
    v.push_back(values_[i]);
  }
  t.push_back(breakpoints_.back());
  v.push_back(values_.back());
  breakpoints_ = std::move(t);
  values_ = std::move(v);
  breakpoints_d_.clear();
  values_d_.clear();
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    breakpoints_d_.push_back(to_double(breakpoints_[i]));
    values_d_.push_back(to_double(values_[i]));
  }
  min_ = *std::min_element(values_.begin(), values_.end());
  max_ = *std::max_element(values_.begin(), values_.end());
}

PiecewiseLinearFn PiecewiseLinearFn::constant(const Rational& value) {
  return PiecewiseLinearFn({Rational(0), Rational(1)}, {value, value});
}

PiecewiseLinearFn PiecewiseLinearFn::affine(const Rational& slope, const Rational& intercept) {
  return PiecewiseLinearFn({Rational(0), Rational(1)}, {intercept, intercept + slope});
}

Rational PiecewiseLinearFn::operator()(const Rational& t) const {
  if (t < 0 || t > 1) throw RangeError("PiecewiseLinearFn: evaluation point " + to_string(t) + " outside [0,1]");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return values_.back();
  const std::size_t hi = static_cast<std::size_t>(it - breakpoints_.begin());
  const std::size_t lo = hi - 1;
  if (breakpoints_[lo] == t) return values_[lo];
  return lerp_value(breakpoints_[lo], values_[lo], breakpoints_[hi], values_[hi], t);
}

double PiecewiseLinearFn::eval(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  auto it = std::upper_bound(breakpoints_d_.begin() + 1, breakpoints_d_.end() - 1, t);
  const std::size_t hi = static_cast<std::size_t>(it - breakpoints_d_.begin());
  const double t0 = breakpoints_d_[hi - 1];
  const double t1 = breakpoints_d_[hi];
  const double v0 = values_d_[hi - 1];
  const double v1 = values_d_[hi];
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

PiecewiseLinearFn PiecewiseLinearFn::compose(const PiecewiseLinearFn& inner) const {
  if (inner.min() < 0 || inner.max() > 1)
    throw RangeError("PiecewiseLinearFn::compose: inner range [" + to_string(inner.min()) + ", " +
                     to_string(inner.max()) + "] leaves [0,1]");
  std::vector<Rational> points(inner.breakpoints_.begin(), inner.breakpoints_.end());
  for (std::size_t i = 0; i + 1 < inner.breakpoints_.size(); ++i) {
    const Rational& a = inner.breakpoints_[i];
    const Rational& b = inner.breakpoints_[i + 1];
    const Rational& ga = inner.values_[i];
    const Rational& gb = inner.values_[i + 1];
    if (ga == gb) continue;
    const Rational& lo = ga < gb ? ga : gb;
    const Rational& hi = ga < gb ? gb : ga;
    for (const Rational& knot : breakpoints_) {
      if (knot <= lo || knot >= hi) continue;
      points.push_back(a + (knot - ga) * (b - a) / (gb - ga));
    }
  }
  sort_unique(points);
  std::vector<Rational> values;
  values.reserve(points.size());
  for (const Rational& t : points) values.push_back((*this)(inner(t)));
  return PiecewiseLinearFn(std::move(points), std::move(values));
}

PiecewiseLinearFn PiecewiseLinearFn::scaled(const Rational& factor) const {
  std::vector<Rational> values;
  values.reserve(values_.size());
  for (const Rational& v : values_) values.push_back(v * factor);
  return PiecewiseLinearFn(breakpoints_, std::move(values));
}

PiecewiseLinearFn PiecewiseLinearFn::shifted(const Rational& offset) const {
  std::vector<Rational> values;
  values.reserve(values_.size());
  for (const Rational& v : values_) values.push_back(v + offset);
  return PiecewiseLinearFn(breakpoints_, std::move(values));
}

PiecewiseLinearFn operator+(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) {
  const PiecewiseLinearFn* fns[] = {&a, &b};
  std::vector<Rational> points = merged_breakpoints(fns);
  std::vector<Rational> values;
  values.reserve(points.size());
  for (const Rational& t : points) values.push_back(a(t) + b(t));
  return PiecewiseLinearFn(std::move(points), std::move(values));
}

PiecewiseLinearFn operator-(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) { return a + (-b); }

bool operator<(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) {
  if (a.breakpoints_.size() != b.breakpoints_.size()) return a.breakpoints_.size() < b.breakpoints_.size();
  for (std::size_t i = 0; i < a.breakpoints_.size(); ++i) {
    if (a.breakpoints_[i] != b.breakpoints_[i]) return a.breakpoints_[i] < b.breakpoints_[i];
    if (a.values_[i] != b.values_[i]) return a.values_[i] < b.values_[i];
  }
  return false;
}

std::string PiecewiseLinearFn::str() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (i) out << ',';
    out << '(' << to_string(breakpoints_[i]) << ',' << to_string(values_[i]) << ')';
  }
  out << '}';
  return out.str();
}

Rational sup_distance(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) {
  const PiecewiseLinearFn diff = a - b;
  return std::max(abs(diff.min()), abs(diff.max()));
}

std::vector<Rational> merged_breakpoints(std::span<const PiecewiseLinearFn* const> fns) {
  std::vector<Rational> points;
  for (const PiecewiseLinearFn* f : fns) points.insert(points.end(), f->breakpoints().begin(), f->breakpoints().end());
  sort_unique(points);
  return points;
}

nlohmann::json to_json(const PiecewiseLinearFn& fn) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < fn.knot_count(); ++i)
    out.push_back({to_string(fn.breakpoints()[i]), to_string(fn.values()[i])});
  return out;
}

PiecewiseLinearFn piecewise_linear_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("piecewise-linear function must be a JSON array of [t, value] pairs");
  std::vector<Rational> t;
  std::vector<Rational> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("piecewise-linear entry " + std::to_string(i) + " must be a [t, value] pair");
    try {
      t.push_back(coordinate_from_json(pair[0]));
      v.push_back(coordinate_from_json(pair[1]));
    } catch (const ParseError& e) {
      throw ParseError("piecewise-linear entry " + std::to_string(i) + ": " + e.what());
    }
  }
  try {
    return PiecewiseLinearFn(std::move(t), std::move(v));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace cellab
