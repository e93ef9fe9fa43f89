#include "hyperdyn/compact_function.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

using CSF = CompactlySupportedFunction;

CSF::CompactlySupportedFunction(std::vector<Node> nodes) {
  if (nodes.size() < 2) throw InvalidParameters("compactly supported function needs >= 2 nodes");
  if (nodes.front().value != 0.0 || nodes.back().value != 0.0) {
    throw InvalidParameters("compactly supported function must vanish at both end nodes");
  }
  terms_.push_back({BoundedFunction::constant(1.0), PiecewiseLinear(std::move(nodes))});
  normalize();
}

CSF::CompactlySupportedFunction(std::vector<Term> terms) : terms_(std::move(terms)) {
  normalize();
}

CSF CSF::tent(double lo, double hi, double height) {
  if (!(lo < hi)) throw InvalidParameters("tent needs lo < hi");
  return CSF({{lo, 0.0}, {0.5 * (lo + hi), height}, {hi, 0.0}});
}

void CSF::normalize() {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    const double c = t.weight.coefficient();
    if (c == 0.0 || t.shape.is_zero()) continue;
    Term folded{t.weight.monic(), c == 1.0 ? std::move(t.shape) : t.shape.scaled(c)};
    auto same = std::find_if(out.begin(), out.end(), [&](const Term& o) {
      return o.weight.same_factors(folded.weight);
    });
    if (same != out.end()) {
      same->shape = same->shape.plus(folded.shape);
    } else {
      out.push_back(std::move(folded));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.shape.is_zero(); });
  for (auto& t : out) t.shape = t.shape.trimmed();
  terms_ = std::move(out);
}

double CSF::operator()(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.shape(x);
    if (v != 0.0) s += t.weight(x) * v;
  }
  return s;
}

Interval CSF::support() const {
  if (terms_.empty()) return {0.0, -1.0};
  Interval out{terms_.front().shape.nodes().front().x, terms_.front().shape.nodes().back().x};
  for (const auto& t : terms_) {
    out.lo = std::min(out.lo, t.shape.nodes().front().x);
    out.hi = std::max(out.hi, t.shape.nodes().back().x);
  }
  return out;
}

IntervalSet CSF::nonzero_region() const {
  std::vector<Interval> segs;
  for (const auto& t : terms_) {
    const auto& n = t.shape.nodes();
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
      if (n[i].value != 0.0 || n[i + 1].value != 0.0) segs.push_back({n[i].x, n[i + 1].x});
    }
  }
  return IntervalSet(std::move(segs));
}

std::vector<double> CSF::nodes() const {
  std::vector<double> out;
  if (terms_.empty()) return out;
  const Interval s = support();
  for (const auto& t : terms_) {
    for (const auto& n : t.shape.nodes()) out.push_back(n.x);
    for (double b : t.weight.breakpoints()) {
      if (s.contains(b)) out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CSF CSF::compose(const Homeomorphism& alpha, long n) const {
  if (n == 0) return *this;
  return compose(alpha.power(n).map());
}

CSF CSF::compose(const Affine& m) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.weight.compose(m), t.shape.composed(m)});
  CSF f;
  f.terms_ = std::move(out);  // composition preserves the normal form
  return f;
}

CSF operator*(const BoundedFunction& b, const CSF& f) {
  std::vector<CSF::Term> out;
  out.reserve(f.terms_.size());
  for (const auto& t : f.terms_) out.push_back({b * t.weight, t.shape});
  return CSF(std::move(out));
}

CSF operator*(const CSF& f, const CSF& g) { return g.as_bounded() * f; }

CSF operator*(double c, const CSF& f) { return BoundedFunction::constant(c) * f; }

CSF operator+(const CSF& a, const CSF& b) {
  std::vector<CSF::Term> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return CSF(std::move(all));
}

CSF operator-(const CSF& a, const CSF& b) { return a + (-1.0) * b; }

double CSF::sup_norm(const SamplingOptions& opts) const {
  if (terms_.empty()) return 0.0;
  if (auto p = as_piecewise_linear()) return p->sup_abs();
  const Interval s = support();
  auto bps = nodes();
  auto g = [this](double x) { return (*this)(x); };
  return hyperdyn::sup_abs(g, bps, s.lo, s.hi, opts).value;
}

std::optional<PiecewiseLinear> CSF::as_piecewise_linear() const {
  if (terms_.size() != 1 || !terms_[0].weight.factors().empty()) return std::nullopt;
  return terms_[0].shape;
}

BoundedFunction CSF::as_bounded() const {
  BoundedFunction sum;
  for (const auto& t : terms_) sum = sum + t.weight * BoundedFunction::piecewise_linear(t.shape);
  return sum;
}

IntervalSet CSF::abs_superlevel(double c, const SamplingOptions& opts) const {
  if (terms_.empty()) return {};
  if (c <= 0.0) throw InvalidParameters("superlevel set of a compact function needs c > 0");
  if (auto p = as_piecewise_linear()) return p->abs_superlevel(c);
  const Interval s = support();
  auto bps = nodes();
  auto g = [this](double x) { return (*this)(x); };
  return sampled_level_set(g, [c](double v) { return std::abs(v) >= c; }, bps, s.lo, s.hi, opts);
}

namespace {

template <class F>
double grid_sup(const F& f, const std::vector<double>& nodes, const CompactSet& K) {
  double s = 0.0;
  for (double x : K.grid(nodes)) s = std::max(s, std::abs(f(x)));
  return s;
}

}  // namespace

double sup_over_set(const BoundedFunction& f, const CompactSet& K) {
  return grid_sup(f, f.breakpoints(), K);
}

double sup_over_set(const CSF& f, const CompactSet& K) { return grid_sup(f, f.nodes(), K); }

}  // namespace hyperdyn
