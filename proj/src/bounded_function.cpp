#include "hyperdyn/bounded_function.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

namespace detail {

struct Atom {
  std::uint64_t id = 0;
  std::optional<PiecewiseLinear> pwl;
  std::vector<BoundedFunction> terms;  // pointwise sum when pwl is empty

  double operator()(double y) const {
    if (pwl) return (*pwl)(y);
    double s = 0.0;
    for (const auto& t : terms) s += t(y);
    return s;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    if (pwl) {
      for (const auto& n : pwl->nodes()) out.push_back(n.x);
      return out;
    }
    for (const auto& t : terms) {
      auto b = t.breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  template <class Fn>
  Extremum sampled(Fn&& extremum, const SamplingOptions& opts) const {
    auto bps = breakpoints();
    auto g = [this](double y) { return (*this)(y); };
    if (bps.empty()) return {std::abs(g(0.0)), 0.0};
    return extremum(g, bps, bps.front() - 1.0, bps.back() + 1.0, opts);
  }

  double sup_abs(const SamplingOptions& opts) const {
    if (pwl) return pwl->sup_abs();
    return sampled(
        [](auto& g, auto& b, double lo, double hi, auto& o) { return hyperdyn::sup_abs(g, b, lo, hi, o); },
        opts)
        .value;
  }

  double inf_abs(const SamplingOptions& opts) const {
    if (pwl) return pwl->inf_abs();
    return sampled(
        [](auto& g, auto& b, double lo, double hi, auto& o) { return hyperdyn::inf_abs(g, b, lo, hi, o); },
        opts)
        .value;
  }
};

namespace {
std::uint64_t next_atom_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

std::shared_ptr<const Atom> make_pwl_atom(PiecewiseLinear pwl) {
  auto a = std::make_shared<Atom>();
  a->id = next_atom_id();
  a->pwl = std::move(pwl);
  return a;
}

std::shared_ptr<const Atom> make_sum_atom(std::vector<BoundedFunction> terms) {
  auto a = std::make_shared<Atom>();
  a->id = next_atom_id();
  a->terms = std::move(terms);
  return a;
}
}  // namespace

}  // namespace detail

namespace {

double ipow(double v, int e) {
  if (e == 1) return v;
  if (e == -1) return 1.0 / v;
  return std::pow(v, e);
}

bool factor_less(const BoundedFunction::Factor& a, const BoundedFunction::Factor& b) {
  if (a.atom->id != b.atom->id) return a.atom->id < b.atom->id;
  if (a.map.scale != b.map.scale) return a.map.scale < b.map.scale;
  return a.map.shift < b.map.shift;
}

bool factor_same_base(const BoundedFunction::Factor& a, const BoundedFunction::Factor& b) {
  return a.atom == b.atom && a.map == b.map;
}

}  // namespace

BoundedFunction::BoundedFunction(double c, std::vector<Factor> factors)
    : coefficient_(c), factors_(std::move(factors)) {
  normalize();
}

void BoundedFunction::normalize() {
  if (coefficient_ == 0.0) {
    factors_.clear();
    return;
  }
  std::stable_sort(factors_.begin(), factors_.end(), factor_less);
  std::vector<Factor> merged;
  merged.reserve(factors_.size());
  for (auto& f : factors_) {
    if (!merged.empty() && factor_same_base(merged.back(), f)) {
      merged.back().exponent += f.exponent;
      if (merged.back().exponent == 0) merged.pop_back();
    } else if (f.exponent != 0) {
      merged.push_back(std::move(f));
    }
  }
  factors_ = std::move(merged);
}

BoundedFunction BoundedFunction::constant(double c) { return BoundedFunction(c, {}); }

BoundedFunction BoundedFunction::piecewise_linear(PiecewiseLinear pwl) {
  if (pwl.is_constant()) return constant(pwl.left_tail());
  return BoundedFunction(1.0, {Factor{detail::make_pwl_atom(std::move(pwl)), Affine{}, 1}});
}

BoundedFunction BoundedFunction::piecewise_linear(std::vector<Node> nodes) {
  return piecewise_linear(PiecewiseLinear(std::move(nodes)));
}

BoundedFunction BoundedFunction::piecewise_linear(std::vector<Node> nodes, double left_tail,
                                                  double right_tail) {
  PiecewiseLinear pwl(std::move(nodes));
  if (pwl.left_tail() != left_tail || pwl.right_tail() != right_tail) {
    throw InvalidParameters("constant tails must match the end node values (continuity)");
  }
  return piecewise_linear(std::move(pwl));
}

BoundedFunction BoundedFunction::clamped_affine(double slope, double intercept, double lo,
                                                double hi) {
  if (!(lo <= hi)) throw InvalidParameters("clamped affine needs lo <= hi");
  if (slope == 0.0 || lo == hi) return constant(std::clamp(intercept, lo, hi));
  double x_lo = (lo - intercept) / slope;
  double x_hi = (hi - intercept) / slope;
  if (slope > 0) return piecewise_linear({{x_lo, lo}, {x_hi, hi}});
  return piecewise_linear({{x_hi, hi}, {x_lo, lo}});
}

BoundedFunction BoundedFunction::product(std::span<const BoundedFunction> fs) {
  double c = 1.0;
  std::vector<Factor> all;
  for (const auto& f : fs) {
    c *= f.coefficient_;
    all.insert(all.end(), f.factors_.begin(), f.factors_.end());
  }
  return BoundedFunction(c, std::move(all));
}

double BoundedFunction::operator()(double x) const {
  double v = coefficient_;
  for (const auto& f : factors_) v *= ipow((*f.atom)(f.map(x)), f.exponent);
  return v;
}

BoundedFunction BoundedFunction::compose(const Homeomorphism& alpha, long n) const {
  if (n == 0 || factors_.empty()) return *this;
  return compose(alpha.power(n).map());
}

BoundedFunction BoundedFunction::compose(const Affine& m) const {
  auto fs = factors_;
  for (auto& f : fs) f.map = f.map.after(m);
  return BoundedFunction(coefficient_, std::move(fs));
}

BoundedFunction BoundedFunction::reciprocal(double floor, const SamplingOptions& opts) const {
  if (coefficient_ == 0.0) throw NonInvertibleWeight("reciprocal of the zero function");
  // Product of per-factor lower bounds certifies most cases without sampling.
  double lower = std::abs(coefficient_);
  for (const auto& f : factors_) {
    double v = f.exponent > 0 ? std::pow(f.atom->inf_abs(opts), f.exponent)
                              : 1.0 / std::pow(f.atom->sup_abs(opts), -f.exponent);
    lower *= v;
  }
  if (lower < floor && inf_abs(opts) < floor) {
    throw NonInvertibleWeight("function is not bounded away from zero by the positivity floor");
  }
  auto fs = factors_;
  for (auto& f : fs) f.exponent = -f.exponent;
  return BoundedFunction(1.0 / coefficient_, std::move(fs));
}

BoundedFunction BoundedFunction::pow(int k) const {
  if (k == 0) return constant(1.0);
  if (k < 0) return reciprocal().pow(-k);
  auto fs = factors_;
  for (auto& f : fs) f.exponent *= k;
  return BoundedFunction(std::pow(coefficient_, k), std::move(fs));
}

BoundedFunction operator*(const BoundedFunction& a, const BoundedFunction& b) {
  std::vector<BoundedFunction::Factor> fs = a.factors_;
  fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
  return BoundedFunction(a.coefficient_ * b.coefficient_, std::move(fs));
}

BoundedFunction operator*(double c, const BoundedFunction& a) {
  return BoundedFunction(c * a.coefficient_, a.factors_);
}

BoundedFunction operator-(const BoundedFunction& a) { return (-1.0) * a; }

BoundedFunction operator+(const BoundedFunction& a, const BoundedFunction& b) {
  if (a.coefficient_ == 0.0) return b;
  if (b.coefficient_ == 0.0) return a;
  if (auto pa = a.as_piecewise_linear()) {
    if (auto pb = b.as_piecewise_linear()) {
      return BoundedFunction::piecewise_linear(pa->plus(*pb));
    }
  }
  std::vector<BoundedFunction> terms;
  auto append = [&terms](const BoundedFunction& f) {
    const bool plain_sum = f.coefficient_ == 1.0 && f.factors_.size() == 1 &&
                           !f.factors_[0].atom->pwl && f.factors_[0].exponent == 1 &&
                           f.factors_[0].map == Affine{};
    if (plain_sum) {
      const auto& inner = f.factors_[0].atom->terms;
      terms.insert(terms.end(), inner.begin(), inner.end());
    } else {
      terms.push_back(f);
    }
  };
  append(a);
  append(b);
  return BoundedFunction(1.0, {BoundedFunction::Factor{detail::make_sum_atom(std::move(terms)),
                                                       Affine{}, 1}});
}

BoundedFunction operator-(const BoundedFunction& a, const BoundedFunction& b) { return a + (-b); }

std::vector<double> BoundedFunction::breakpoints() const {
  std::vector<double> out;
  for (const auto& f : factors_) {
    Affine inv = f.map.inverse();
    for (double y : f.atom->breakpoints()) out.push_back(inv(y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double BoundedFunction::sup_norm(const SamplingOptions& opts) const {
  const double c = std::abs(coefficient_);
  if (factors_.empty()) return c;
  if (factors_.size() == 1) {
    const auto& f = factors_[0];
    if (f.exponent > 0) return c * std::pow(f.atom->sup_abs(opts), f.exponent);
    return c / std::pow(f.atom->inf_abs(opts), -f.exponent);
  }
  auto bps = breakpoints();
  auto g = [this](double x) { return (*this)(x); };
  return sup_abs(g, bps, bps.front() - 1.0, bps.back() + 1.0, opts).value;
}

double BoundedFunction::inf_abs(const SamplingOptions& opts) const {
  const double c = std::abs(coefficient_);
  if (factors_.empty()) return c;
  if (factors_.size() == 1) {
    const auto& f = factors_[0];
    if (f.exponent > 0) return c * std::pow(f.atom->inf_abs(opts), f.exponent);
    return c / std::pow(f.atom->sup_abs(opts), -f.exponent);
  }
  auto bps = breakpoints();
  auto g = [this](double x) { return (*this)(x); };
  return hyperdyn::inf_abs(g, bps, bps.front() - 1.0, bps.back() + 1.0, opts).value;
}

namespace {

IntervalSet sampled_level(const BoundedFunction& f, const std::function<bool(double)>& pred,
                          const SamplingOptions& opts) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto bps = f.breakpoints();
  if (bps.empty()) return pred(f(0.0)) ? IntervalSet::whole_line() : IntervalSet{};
  const double lo = bps.front() - 1.0;
  const double hi = bps.back() + 1.0;
  auto g = [&f](double x) { return f(x); };
  IntervalSet core = sampled_level_set(g, pred, bps, lo, hi, opts);
  std::vector<Interval> tails;
  if (pred(f(lo))) tails.push_back({-kInf, lo});
  if (pred(f(hi))) tails.push_back({hi, kInf});
  return core.unite(IntervalSet(std::move(tails)));
}

}  // namespace

IntervalSet BoundedFunction::abs_superlevel(double c, const SamplingOptions& opts) const {
  if (auto p = as_piecewise_linear()) return p->abs_superlevel(c);
  return sampled_level(*this, [c](double v) { return std::abs(v) >= c; }, opts);
}

IntervalSet BoundedFunction::abs_sublevel(double c, const SamplingOptions& opts) const {
  if (auto p = as_piecewise_linear()) return p->abs_sublevel(c);
  return sampled_level(*this, [c](double v) { return std::abs(v) <= c; }, opts);
}

std::optional<double> BoundedFunction::as_constant() const {
  if (factors_.empty()) return coefficient_;
  return std::nullopt;
}

std::optional<PiecewiseLinear> BoundedFunction::as_piecewise_linear() const {
  if (factors_.empty()) return PiecewiseLinear({{0.0, coefficient_}});
  if (factors_.size() != 1) return std::nullopt;
  const auto& f = factors_[0];
  if (f.exponent != 1 || !f.atom->pwl) return std::nullopt;
  return f.atom->pwl->composed(f.map).scaled(coefficient_);
}

BoundedFunction BoundedFunction::monic() const { return BoundedFunction(1.0, factors_); }

bool BoundedFunction::same_factors(const BoundedFunction& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!factor_same_base(factors_[i], other.factors_[i]) ||
        factors_[i].exponent != other.factors_[i].exponent) {
      return false;
    }
  }
  return true;
}

}  // namespace hyperdyn
