#include "hyperdyn/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - t) a + t b, exact at t = 0 and t = 1.
double lerp(double a, double b, double t) { return (1.0 - t) * a + t * b; }
}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvalidParameters("piecewise-linear function needs at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i].x) || !std::isfinite(nodes_[i].value)) {
      throw InvalidParameters("piecewise-linear nodes must be finite");
    }
    if (i > 0 && !(nodes_[i - 1].x < nodes_[i].x)) {
      throw InvalidParameters("piecewise-linear nodes must have strictly increasing x");
    }
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= nodes_.front().x) return nodes_.front().value;
  if (x >= nodes_.back().x) return nodes_.back().value;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const Node& n) { return v < n.x; });
  const Node& b = *it;
  const Node& a = *(it - 1);
  double t = (x - a.x) / (b.x - a.x);
  return lerp(a.value, b.value, t);
}

PiecewiseLinear PiecewiseLinear::composed(const Affine& m) const {
  Affine inv = m.inverse();
  std::vector<Node> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back({inv(n.x), n.value});
  if (m.scale < 0) std::reverse(out.begin(), out.end());
  return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::scaled(double c) const {
  auto out = nodes_;
  for (auto& n : out) n.value *= c;
  return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::plus(const PiecewiseLinear& other) const {
  std::vector<double> xs;
  xs.reserve(nodes_.size() + other.nodes_.size());
  for (const auto& n : nodes_) xs.push_back(n.x);
  for (const auto& n : other.nodes_) xs.push_back(n.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Node> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({x, (*this)(x) + other(x)});
  return PiecewiseLinear(std::move(out));
}

double PiecewiseLinear::sup_abs() const {
  double m = 0.0;
  for (const auto& n : nodes_) m = std::max(m, std::abs(n.value));
  return m;
}

double PiecewiseLinear::inf_abs() const {
  double m = std::abs(nodes_.front().value);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    m = std::min(m, std::abs(nodes_[i].value));
    if (i + 1 < nodes_.size() && nodes_[i].value * nodes_[i + 1].value < 0.0) return 0.0;
  }
  return m;
}

bool PiecewiseLinear::is_constant() const {
  return std::all_of(nodes_.begin(), nodes_.end(),
                     [&](const Node& n) { return n.value == nodes_.front().value; });
}

bool PiecewiseLinear::is_zero() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.value == 0.0; });
}

IntervalSet PiecewiseLinear::band(double lo, double hi) const {
  std::vector<Interval> out;
  auto in_band = [&](double v) { return lo <= v && v <= hi; };
  if (in_band(left_tail())) out.push_back({-kInf, nodes_.front().x});
  if (in_band(right_tail())) out.push_back({nodes_.back().x, kInf});
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = nodes_[i + 1];
    if (a.value == b.value) {
      if (in_band(a.value)) out.push_back({a.x, b.x});
      continue;
    }
    double d = b.value - a.value;
    double t1 = (lo - a.value) / d;
    double t2 = (hi - a.value) / d;
    if (t1 > t2) std::swap(t1, t2);
    t1 = std::max(t1, 0.0);
    t2 = std::min(t2, 1.0);
    if (t1 <= t2) out.push_back({lerp(a.x, b.x, t1), lerp(a.x, b.x, t2)});
  }
  return IntervalSet(std::move(out));
}

IntervalSet PiecewiseLinear::abs_superlevel(double c) const {
  if (c <= 0.0) return IntervalSet::whole_line();
  return band(c, kInf).unite(band(-kInf, -c));
}

IntervalSet PiecewiseLinear::abs_sublevel(double c) const {
  if (c < 0.0) return {};
  return band(-c, c);
}

PiecewiseLinear PiecewiseLinear::trimmed() const {
  std::size_t first = 0;
  while (first + 1 < nodes_.size() && nodes_[first].value == 0.0 &&
         nodes_[first + 1].value == 0.0) {
    ++first;
  }
  std::size_t last = nodes_.size() - 1;
  while (last > first && nodes_[last].value == 0.0 && nodes_[last - 1].value == 0.0) --last;
  return PiecewiseLinear(std::vector<Node>(nodes_.begin() + first, nodes_.begin() + last + 1));
}

}  // namespace hyperdyn
