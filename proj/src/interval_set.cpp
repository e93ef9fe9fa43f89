#include "hyperdyn/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& i) { return !(i.lo <= i.hi); });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

IntervalSet IntervalSet::whole_line() { return IntervalSet({{-kInf, kInf}}); }

bool IntervalSet::bounded() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const Interval& i) { return i.bounded(); });
}

bool IntervalSet::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& i) { return i.contains(x); });
}

bool IntervalSet::intersects(const IntervalSet& other) const {
  std::size_t a = 0, b = 0;
  while (a < intervals_.size() && b < other.intervals_.size()) {
    const auto& x = intervals_[a];
    const auto& y = other.intervals_[b];
    if (std::max(x.lo, y.lo) <= std::min(x.hi, y.hi)) return true;
    if (x.hi < y.hi) ++a;
    else ++b;
  }
  return false;
}

bool IntervalSet::contains(const IntervalSet& other) const {
  for (const auto& y : other.intervals_) {
    bool covered = std::any_of(intervals_.begin(), intervals_.end(), [&](const Interval& x) {
      return x.lo <= y.lo && y.hi <= x.hi;
    });
    if (!covered) return false;
  }
  return true;
}

Interval IntervalSet::hull() const {
  if (intervals_.empty()) return {0.0, -1.0};
  return {intervals_.front().lo, intervals_.back().hi};
}

double IntervalSet::diameter() const {
  if (intervals_.empty()) return 0.0;
  return hull().length();
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const auto& x : intervals_) {
    for (const auto& y : other.intervals_) {
      double lo = std::max(x.lo, y.lo);
      double hi = std::min(x.hi, y.hi);
      if (lo <= hi) out.push_back({lo, hi});
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::image(const Affine& m) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  auto apply = [&](double x) {
    if (std::isinf(x)) return (x > 0) == (m.scale > 0) ? kInf : -kInf;
    return m(x);
  };
  for (const auto& iv : intervals_) {
    double a = apply(iv.lo);
    double b = apply(iv.hi);
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return IntervalSet(std::move(out));
}

CompactSet::CompactSet(std::vector<Interval> intervals, int sample_density)
    : density_(sample_density) {
  if (intervals.empty()) throw InvalidParameters("compact set needs at least one interval");
  for (const auto& iv : intervals) {
    if (!iv.bounded()) throw InvalidParameters("compact set intervals must be bounded");
    if (!(iv.lo <= iv.hi)) throw InvalidParameters("compact set interval has lo > hi");
  }
  if (sample_density < 1) throw InvalidParameters("sample density must be a positive integer");
  set_ = IntervalSet(std::move(intervals));
}

CompactSet::CompactSet(const IntervalSet& set, int sample_density)
    : CompactSet(set.intervals(), sample_density) {}

std::vector<double> CompactSet::grid(std::span<const double> extra) const {
  std::vector<double> pts;
  for (const auto& iv : set_.intervals()) {
    double len = iv.length();
    auto n = static_cast<long>(std::max(1.0, std::ceil(len * density_)));
    if (len == 0.0) n = 0;
    pts.push_back(iv.lo);
    for (long k = 1; k < n; ++k) pts.push_back(iv.lo + static_cast<double>(k) * len / n);
    pts.push_back(iv.hi);
  }
  for (double x : extra) {
    if (set_.contains(x)) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace hyperdyn
