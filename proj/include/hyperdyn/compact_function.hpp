#pragma once

#include <optional>
#include <vector>

#include "hyperdyn/bounded_function.hpp"
#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/interval_set.hpp"
#include "hyperdyn/piecewise_linear.hpp"
#include "hyperdyn/sampling.hpp"

namespace hyperdyn {

/// An element of C_c(R) (and so of C_0(R)).
///
/// Stored as a finite sum of terms weight(x) * shape(x) where each shape is a
/// piecewise-linear function that is zero at both end nodes and outside them,
/// and each weight a monic BoundedFunction. A freshly built function is a
/// single term with weight 1; weights appear once the function is multiplied
/// by elements of C_b(R). Terms with the same weight are merged node-wise, so
/// pure piecewise-linear arithmetic stays exact.
class CompactlySupportedFunction {
 public:
  struct Term {
    BoundedFunction weight;  // monic
    PiecewiseLinear shape;   // compact: zero end nodes
  };

  /// The zero function.
  CompactlySupportedFunction() = default;
  /// Throws InvalidParameters unless there are >= 2 nodes with strictly
  /// increasing x and zero values at both ends.
  explicit CompactlySupportedFunction(std::vector<Node> nodes);

  /// Tent on [lo, hi] peaking at the midpoint with the given height.
  static CompactlySupportedFunction tent(double lo, double hi, double height = 1.0);

  double operator()(double x) const;

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Closed hull of the support; only meaningful when !is_zero().
  Interval support() const;
  /// Union of the closed node segments on which some shape is not
  /// identically zero; contains the closure of {f != 0}.
  IntervalSet nonzero_region() const;
  /// Shape nodes and weight breakpoints inside the support, sorted.
  std::vector<double> nodes() const;

  /// f o alpha^n; shape nodes are mapped exactly.
  CompactlySupportedFunction compose(const Homeomorphism& alpha, long n = 1) const;
  CompactlySupportedFunction compose(const Affine& m) const;

  friend CompactlySupportedFunction operator*(const BoundedFunction& b,
                                              const CompactlySupportedFunction& f);
  friend CompactlySupportedFunction operator*(const CompactlySupportedFunction& f,
                                              const BoundedFunction& b) {
    return b * f;
  }
  friend CompactlySupportedFunction operator*(const CompactlySupportedFunction& f,
                                              const CompactlySupportedFunction& g);
  friend CompactlySupportedFunction operator*(double c, const CompactlySupportedFunction& f);
  friend CompactlySupportedFunction operator+(const CompactlySupportedFunction& a,
                                              const CompactlySupportedFunction& b);
  friend CompactlySupportedFunction operator-(const CompactlySupportedFunction& a,
                                              const CompactlySupportedFunction& b);
  friend CompactlySupportedFunction operator-(const CompactlySupportedFunction& a) {
    return (-1.0) * a;
  }

  /// Exact (node maximum) for pure piecewise-linear functions, sampled otherwise.
  double sup_norm(const SamplingOptions& opts = {}) const;

  /// Present when the function is a single term with weight 1.
  std::optional<PiecewiseLinear> as_piecewise_linear() const;
  /// The same function viewed as an element of C_b(R).
  BoundedFunction as_bounded() const;

  /// {x : |f(x)| >= c} for c > 0; exact for pure piecewise-linear functions.
  IntervalSet abs_superlevel(double c, const SamplingOptions& opts = {}) const;

 private:
  explicit CompactlySupportedFunction(std::vector<Term> terms);
  void normalize();

  std::vector<Term> terms_;
};

/// max |f| over the grid of K, which includes the interval endpoints and every
/// node of f inside K.
double sup_over_set(const BoundedFunction& f, const CompactSet& K);
double sup_over_set(const CompactlySupportedFunction& f, const CompactSet& K);

}  // namespace hyperdyn
