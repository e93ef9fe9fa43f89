#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hyperdyn/bounded_function.hpp"
#include "hyperdyn/sampling.hpp"

namespace hyperdyn {

/// Bi-infinite weight sequence (w_j) in C_b(R).
///
/// Indices in [left_end + 1, right_start - 1] come from an explicit table;
/// j >= right_start cycles through `right`, j <= left_end cycles through
/// `left` (a one-element cycle is an eventually constant rule). The table
/// must cover the gap exactly.
class WeightSequence {
 public:
  struct Rules {
    std::map<long, BoundedFunction> table;
    std::vector<BoundedFunction> left;   ///< period of the rule for j <= left_end
    std::vector<BoundedFunction> right;  ///< period of the rule for j >= right_start
    long left_end = 0;
    long right_start = 1;
  };

  struct Options {
    bool certify_invertible = true;
    double positivity_floor = kDefaultPositivityFloor;
    double bound_cap = 1e12;
    SamplingOptions sampling{};
  };

  /// Throws InvalidParameters for an inconsistent table or a bound above the
  /// cap, NonInvertibleWeight when certification was requested and fails.
  WeightSequence(Rules rules, const Options& opts);
  explicit WeightSequence(Rules rules) : WeightSequence(std::move(rules), Options{}) {}

  /// w_j = c for all j; certified invertible iff requested (and c != 0).
  static WeightSequence constant(double c, bool invertible = true);
  /// w_j = f for all j.
  static WeightSequence uniform(const BoundedFunction& f, bool invertible = true);

  const BoundedFunction& at(long j) const;
  /// w_j^{-1}; throws NonInvertibleWeights without the certificate.
  const BoundedFunction& inverse_at(long j) const;

  bool invertible() const { return invertible_; }
  /// sup_j ||w_j||_inf.
  double bound() const { return bound_; }
  /// sup_j ||w_j^{-1}||_inf; throws NonInvertibleWeights without the certificate.
  double inverse_bound() const;

  const Rules& rules() const { return rules_; }

 private:
  static const BoundedFunction& pick(const Rules& r, long j);

  Rules rules_;
  std::optional<Rules> inverse_rules_;
  bool invertible_ = false;
  double bound_ = 0.0;
  double inverse_bound_ = 0.0;
};

}  // namespace hyperdyn
