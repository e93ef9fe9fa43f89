#include "hyperdyn/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace hyperdyn {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section search for the extremum of |g| on [a, b]. Returns the best
// value seen; `sign` = +1 maximizes, -1 minimizes.
Extremum golden(const std::function<double(double)>& g, double a, double b, double sign) {
  auto score = [&](double x) { return sign * std::abs(g(x)); };
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = score(c), fd = score(d);
  Extremum best{fc, c};
  if (fd > best.value) best = {fd, d};
  for (int it = 0; it < 100 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = score(c);
      if (fc > best.value) best = {fc, c};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = score(d);
      if (fd > best.value) best = {fd, d};
    }
  }
  best.value *= sign;
  return best;
}

Extremum extremum_on_grid(const std::function<double(double)>& g, std::span<const double> grid,
                          bool polish, double sign) {
  if (grid.empty()) return {};
  std::size_t best_i = 0;
  double best = -INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = sign * std::abs(g(grid[i]));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  Extremum out{sign * best, grid[best_i]};
  if (!polish) return out;
  auto consider = [&](double a, double b) {
    if (!(a < b)) return;
    Extremum e = golden(g, a, b, sign);
    if (sign * e.value > sign * out.value) out = e;
  };
  if (best_i > 0) consider(grid[best_i - 1], grid[best_i]);
  if (best_i + 1 < grid.size()) consider(grid[best_i], grid[best_i + 1]);
  return out;
}

}  // namespace

std::vector<double> refined_grid(std::span<const double> breakpoints, double lo, double hi,
                                 int refine) {
  std::vector<double> knots{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi) knots.push_back(b);
  }
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  refine = std::max(refine, 1);
  std::vector<double> grid;
  grid.reserve(knots.size() * static_cast<std::size_t>(refine) + 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double a = knots[i], b = knots[i + 1];
    grid.push_back(a);
    for (int k = 1; k < refine; ++k) grid.push_back(a + (b - a) * k / refine);
  }
  grid.push_back(knots.back());
  return grid;
}

Extremum sup_abs(const std::function<double(double)>& g, std::span<const double> breakpoints,
                 double lo, double hi, const SamplingOptions& opts) {
  auto grid = refined_grid(breakpoints, lo, hi, opts.refine);
  return extremum_on_grid(g, grid, opts.polish, 1.0);
}

Extremum inf_abs(const std::function<double(double)>& g, std::span<const double> breakpoints,
                 double lo, double hi, const SamplingOptions& opts) {
  auto grid = refined_grid(breakpoints, lo, hi, opts.refine);
  return extremum_on_grid(g, grid, opts.polish, -1.0);
}

Extremum sup_abs_on_grid(const std::function<double(double)>& g, std::span<const double> grid,
                         bool polish) {
  return extremum_on_grid(g, grid, polish, 1.0);
}

IntervalSet sampled_level_set(const std::function<double(double)>& g,
                              const std::function<bool(double)>& pred,
                              std::span<const double> breakpoints, double lo, double hi,
                              const SamplingOptions& opts) {
  auto grid = refined_grid(breakpoints, lo, hi, opts.refine);
  auto inside = [&](double x) { return pred(g(x)); };
  // Boundary between a point inside (a) and outside (b), returning the
  // last point known to be inside.
  auto boundary = [&](double a, double b) {
    for (int it = 0; it < 60; ++it) {
      double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      if (inside(m)) a = m;
      else b = m;
    }
    return a;
  };
  std::vector<Interval> out;
  bool open = false;
  double start = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool in = inside(grid[i]);
    if (in && !open) {
      start = (i == 0) ? grid[i] : boundary(grid[i], grid[i - 1]);
      open = true;
    } else if (!in && open) {
      out.push_back({start, boundary(grid[i - 1], grid[i])});
      open = false;
    }
  }
  if (open) out.push_back({start, grid.back()});
  return IntervalSet(std::move(out));
}

}  // namespace hyperdyn
