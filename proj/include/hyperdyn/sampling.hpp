#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hyperdyn/interval_set.hpp"

namespace hyperdyn {

/// Controls every sampled supremum/infimum in the library.
///
/// Between consecutive breakpoints a function built from the supported forms
/// is a product of affine pieces (or reciprocals of them), so it is smooth
/// there. Each such segment is split into `refine` equal cells; the best cell
/// value is then polished by golden-section search on its two neighbouring
/// cells. Every reported value is an actual function value, so sampled
/// suprema never exceed the true supremum and infima never undershoot the
/// true infimum. For a product of two affine pieces on a segment of length h
/// the unpolished error is at most |curvature| (h/refine)^2 / 8.
struct SamplingOptions {
  int refine = 16;
  bool polish = true;
};

struct Extremum {
  double value = 0.0;  ///< |g| at `at`
  double at = 0.0;
};

/// Sorted, deduplicated grid on [lo, hi]: the endpoints, every breakpoint
/// strictly inside and `refine` cells per segment between them.
std::vector<double> refined_grid(std::span<const double> breakpoints, double lo, double hi,
                                 int refine);

/// sup |g| over [lo, hi] (lo <= hi, both finite).
Extremum sup_abs(const std::function<double(double)>& g, std::span<const double> breakpoints,
                 double lo, double hi, const SamplingOptions& opts = {});

/// inf |g| over [lo, hi].
Extremum inf_abs(const std::function<double(double)>& g, std::span<const double> breakpoints,
                 double lo, double hi, const SamplingOptions& opts = {});

/// Maximum of |g| over a fixed grid, with optional polishing around the
/// best grid point (restricted to the cells adjacent to it).
Extremum sup_abs_on_grid(const std::function<double(double)>& g, std::span<const double> grid,
                         bool polish);

/// {x in [lo, hi] : pred(g(x))} located on a refined grid, with crossings
/// refined by bisection. Isolated touching points between grid nodes can be
/// missed; exact forms should use their own closed-form level sets.
IntervalSet sampled_level_set(const std::function<double(double)>& g,
                              const std::function<bool(double)>& pred,
                              std::span<const double> breakpoints, double lo, double hi,
                              const SamplingOptions& opts = {});

}  // namespace hyperdyn
