#pragma once

#include <span>
#include <vector>

#include "hyperdyn/homeomorphism.hpp"

namespace hyperdyn {

/// Closed interval [lo, hi]; either end may be infinite. lo == hi is a point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool bounded() const;
  bool operator==(const Interval&) const = default;
};

/// Finite union of closed intervals kept sorted and pairwise disjoint.
/// Overlapping or touching inputs are merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet whole_line();

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool bounded() const;
  bool contains(double x) const;
  /// Closed-set intersection test.
  bool intersects(const IntervalSet& other) const;
  bool contains(const IntervalSet& other) const;
  Interval hull() const;
  double diameter() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  /// Image {m(x) : x in set}.
  IntervalSet image(const Affine& m) const;

 private:
  std::vector<Interval> intervals_;
};

/// Nonempty bounded interval set with a sampling density (points per unit
/// length) used wherever a supremum over the set is evaluated on a grid.
class CompactSet {
 public:
  static constexpr int kDefaultDensity = 64;

  /// Throws InvalidParameters when empty, unbounded, unordered or density < 1.
  explicit CompactSet(std::vector<Interval> intervals, int sample_density = kDefaultDensity);
  CompactSet(const IntervalSet& set, int sample_density = kDefaultDensity);

  const IntervalSet& set() const { return set_; }
  const std::vector<Interval>& intervals() const { return set_.intervals(); }
  int sample_density() const { return density_; }

  /// Uniform grid at the sampling density, endpoints included, plus any
  /// of `extra` that fall inside the set. Sorted, duplicates removed.
  std::vector<double> grid(std::span<const double> extra = {}) const;

  CompactSet image(const Affine& m) const { return CompactSet(set_.image(m), density_); }

 private:
  IntervalSet set_;
  int density_;
};

}  // namespace hyperdyn
