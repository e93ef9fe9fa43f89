#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/interval_set.hpp"
#include "hyperdyn/piecewise_linear.hpp"
#include "hyperdyn/sampling.hpp"

namespace hyperdyn {

namespace detail {
struct Atom;
}

/// Default positivity floor for reciprocals.
inline constexpr double kDefaultPositivityFloor = 1e-9;

/// An element of C_b(R) that can be evaluated exactly at every point.
///
/// Every value is held in the canonical form
///
///     c * prod_i atom_i(m_i(x))^{e_i}
///
/// where each atom is a piecewise-linear function with constant tails or a
/// pointwise sum of other bounded functions, m_i is affine and e_i a nonzero
/// integer. Constants, clamped affine maps, products, powers, reciprocals and
/// compositions with affine homeomorphisms are closed in this form. Factors
/// sharing an atom and a map are merged, so b * (1/b) collapses to the
/// constant 1 exactly. Factor order is canonical (atom creation order, then
/// map), which keeps evaluation order, and therefore rounding, deterministic.
class BoundedFunction {
 public:
  struct Factor {
    std::shared_ptr<const detail::Atom> atom;
    Affine map;
    int exponent = 1;
  };

  /// The zero function.
  BoundedFunction() = default;

  static BoundedFunction constant(double c);
  static BoundedFunction piecewise_linear(PiecewiseLinear pwl);
  static BoundedFunction piecewise_linear(std::vector<Node> nodes);
  /// Tails must equal the end node values (continuity); otherwise throws
  /// InvalidParameters.
  static BoundedFunction piecewise_linear(std::vector<Node> nodes, double left_tail,
                                          double right_tail);
  /// clamp(slope * x + intercept, lo, hi).
  static BoundedFunction clamped_affine(double slope, double intercept, double lo, double hi);
  /// Product of all inputs, normalized once.
  static BoundedFunction product(std::span<const BoundedFunction> fs);

  double operator()(double x) const;

  /// f o alpha^n.
  BoundedFunction compose(const Homeomorphism& alpha, long n = 1) const;
  /// f o m.
  BoundedFunction compose(const Affine& m) const;

  /// Throws NonInvertibleWeight when inf |f| < floor.
  BoundedFunction reciprocal(double floor = kDefaultPositivityFloor,
                             const SamplingOptions& opts = {}) const;
  /// Integer power; negative powers go through reciprocal().
  BoundedFunction pow(int k) const;

  friend BoundedFunction operator*(const BoundedFunction& a, const BoundedFunction& b);
  friend BoundedFunction operator+(const BoundedFunction& a, const BoundedFunction& b);
  friend BoundedFunction operator-(const BoundedFunction& a, const BoundedFunction& b);
  friend BoundedFunction operator-(const BoundedFunction& a);
  friend BoundedFunction operator*(double c, const BoundedFunction& a);

  /// Points where the function may fail to be smooth, mapped into x
  /// coordinates. Outside [front, back] the function is constant.
  std::vector<double> breakpoints() const;

  /// Exact for constants and single-factor forms, sampled otherwise.
  double sup_norm(const SamplingOptions& opts = {}) const;
  /// inf_x |f(x)|; exact for constants and single-factor forms.
  double inf_abs(const SamplingOptions& opts = {}) const;

  /// {x : |f(x)| >= c}; exact when as_piecewise_linear() succeeds.
  IntervalSet abs_superlevel(double c, const SamplingOptions& opts = {}) const;
  /// {x : |f(x)| <= c}; exact when as_piecewise_linear() succeeds.
  IntervalSet abs_sublevel(double c, const SamplingOptions& opts = {}) const;

  std::optional<double> as_constant() const;
  /// Explicit node form when the function is a single piecewise-linear
  /// factor with exponent one (or a constant).
  std::optional<PiecewiseLinear> as_piecewise_linear() const;

  double coefficient() const { return coefficient_; }
  const std::vector<Factor>& factors() const { return factors_; }
  /// Same factors with coefficient 1.
  BoundedFunction monic() const;
  /// True when both share the same factor list (coefficients may differ).
  bool same_factors(const BoundedFunction& other) const;

 private:
  BoundedFunction(double c, std::vector<Factor> factors);
  void normalize();

  double coefficient_ = 0.0;
  std::vector<Factor> factors_;
};

}  // namespace hyperdyn
