#pragma once

#include <vector>

#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/interval_set.hpp"

namespace hyperdyn {

struct Node {
  double x = 0.0;
  double value = 0.0;
  bool operator==(const Node&) const = default;
};

/// Continuous piecewise-linear function with constant tails: linear
/// interpolation between nodes, the first/last node value extended to -inf/+inf.
class PiecewiseLinear {
 public:
  /// Throws InvalidParameters unless nodes is nonempty with strictly
  /// increasing, finite x.
  explicit PiecewiseLinear(std::vector<Node> nodes);

  double operator()(double x) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  double left_tail() const { return nodes_.front().value; }
  double right_tail() const { return nodes_.back().value; }

  /// f o m, with every node mapped to m^{-1}(x) (no resampling).
  PiecewiseLinear composed(const Affine& m) const;
  PiecewiseLinear scaled(double c) const;
  PiecewiseLinear plus(const PiecewiseLinear& other) const;

  double sup_abs() const;
  double inf_abs() const;
  bool is_constant() const;
  /// Tails are zero, i.e. the function has compact support.
  bool vanishes_at_infinity() const { return left_tail() == 0.0 && right_tail() == 0.0; }
  bool is_zero() const;

  /// {x : lo <= f(x) <= hi}, computed exactly by solving the linear crossings.
  IntervalSet band(double lo, double hi) const;
  /// {x : |f(x)| >= c}.
  IntervalSet abs_superlevel(double c) const;
  /// {x : |f(x)| <= c}.
  IntervalSet abs_sublevel(double c) const;

  /// Drops leading/trailing runs of zero nodes, keeping one zero node at
  /// each end so the support shrinks to its exact hull.
  PiecewiseLinear trimmed() const;

 private:
  std::vector<Node> nodes_;
};

}  // namespace hyperdyn
