#include "hyperdyn/module_vector.hpp"

#include <algorithm>
#include <cmath>

namespace hyperdyn {

ModuleVector::ModuleVector(
    std::initializer_list<std::pair<long, CompactlySupportedFunction>> entries) {
  for (const auto& [j, f] : entries) add(j, f);
}

void ModuleVector::set(long j, CompactlySupportedFunction f) {
  if (f.is_zero()) {
    entries_.erase(j);
  } else {
    entries_.insert_or_assign(j, std::move(f));
  }
}

void ModuleVector::add(long j, const CompactlySupportedFunction& f) {
  auto it = entries_.find(j);
  if (it == entries_.end()) {
    set(j, f);
  } else {
    set(j, it->second + f);
  }
}

const CompactlySupportedFunction& ModuleVector::at(long j) const {
  static const CompactlySupportedFunction zero;
  auto it = entries_.find(j);
  return it == entries_.end() ? zero : it->second;
}

std::vector<long> ModuleVector::indices() const {
  std::vector<long> out;
  out.reserve(entries_.size());
  for (const auto& [j, f] : entries_) out.push_back(j);
  return out;
}

ModuleVector operator+(const ModuleVector& a, const ModuleVector& b) {
  ModuleVector out = a;
  for (const auto& [j, f] : b.entries_) out.add(j, f);
  return out;
}

ModuleVector operator-(const ModuleVector& a, const ModuleVector& b) {
  ModuleVector out = a;
  for (const auto& [j, f] : b.entries_) out.add(j, -f);
  return out;
}

double module_norm(const ModuleVector& a, const SamplingOptions& opts) {
  if (a.empty()) return 0.0;
  std::vector<double> bps;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& [j, f] : a.entries()) {
    auto n = f.nodes();
    bps.insert(bps.end(), n.begin(), n.end());
    const Interval s = f.support();
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi);
  }
  auto sum_sq = [&a](double x) {
    double s = 0.0;
    for (const auto& [j, f] : a.entries()) {
      double v = f(x);
      s += v * v;
    }
    return s;
  };
  return std::sqrt(sup_abs(sum_sq, bps, lo, hi, opts).value);
}

}  // namespace hyperdyn
