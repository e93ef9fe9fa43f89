#pragma once

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "hyperdyn/compact_function.hpp"
#include "hyperdyn/sampling.hpp"

namespace hyperdyn {

/// Finitely supported element of l^2(C_0(R)): a map from index j to a
/// nonzero compactly supported function. Absent indices are zero.
class ModuleVector {
 public:
  ModuleVector() = default;
  ModuleVector(std::initializer_list<std::pair<long, CompactlySupportedFunction>> entries);

  /// Stores f at j; a zero f erases the entry.
  void set(long j, CompactlySupportedFunction f);
  /// Adds f to the entry at j.
  void add(long j, const CompactlySupportedFunction& f);
  /// Entry j, or the zero function.
  const CompactlySupportedFunction& at(long j) const;

  const std::map<long, CompactlySupportedFunction>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::vector<long> indices() const;

  friend ModuleVector operator+(const ModuleVector& a, const ModuleVector& b);
  friend ModuleVector operator-(const ModuleVector& a, const ModuleVector& b);

 private:
  std::map<long, CompactlySupportedFunction> entries_;
};

/// ||a||_2 = sqrt(sup_x sum_j |a_j(x)|^2), sampled over the union of supports.
double module_norm(const ModuleVector& a, const SamplingOptions& opts = {});

}  // namespace hyperdyn
