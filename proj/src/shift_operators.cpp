#include "hyperdyn/shift_operators.hpp"

#include <vector>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

ModuleVector apply_T(const ModuleVector& a, const WeightSequence& w, const Homeomorphism& alpha,
                     long n) {
  if (n < 0) throw InvalidParameters("apply_T needs n >= 0");
  if (n == 0) return a;
  ModuleVector out;
  std::vector<BoundedFunction> fs(static_cast<std::size_t>(n));
  for (const auto& [j, f] : a.entries()) {
    for (long k = 1; k <= n; ++k) fs[k - 1] = w.at(j + k).compose(alpha, n - k);
    out.set(j + n, BoundedFunction::product(fs) * f.compose(alpha, n));
  }
  return out;
}

ModuleVector apply_S(const ModuleVector& a, const WeightSequence& w, const Homeomorphism& alpha,
                     long n) {
  if (n < 0) throw InvalidParameters("apply_S needs n >= 0");
  if (!w.invertible()) throw NonInvertibleWeights("apply_S needs an invertible weight sequence");
  if (n == 0) return a;
  ModuleVector out;
  std::vector<BoundedFunction> fs(static_cast<std::size_t>(n));
  for (const auto& [j, f] : a.entries()) {
    for (long i = 1; i <= n; ++i) fs[i - 1] = w.inverse_at(j + 1 - i).compose(alpha, i - n - 1);
    out.set(j - n, BoundedFunction::product(fs) * f.compose(alpha, -n));
  }
  return out;
}

Witness transitivity_witness(const ModuleVector& u, const ModuleVector& v, const WeightSequence& w,
                             const Homeomorphism& alpha, long r, const SamplingOptions& opts) {
  if (r < 1) throw InvalidParameters("witness needs r >= 1");
  Witness out;
  ModuleVector srv = apply_S(v, w, alpha, r);
  out.x = u + srv;
  out.d_start = module_norm(out.x - u, opts);
  out.d_end = module_norm(apply_T(out.x, w, alpha, r) - v, opts);
  return out;
}

CompactlySupportedFunction apply_U(const CompactlySupportedFunction& f, const BoundedFunction& b,
                                   const Homeomorphism& alpha, long n) {
  if (n < 0) throw InvalidParameters("apply_U needs n >= 0");
  if (n == 0 || f.is_zero()) return f;
  std::vector<BoundedFunction> fs;
  fs.reserve(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) fs.push_back(b.compose(alpha, j));
  return BoundedFunction::product(fs) * f.compose(alpha, n);
}

CompactlySupportedFunction apply_V(const CompactlySupportedFunction& f, const BoundedFunction& b,
                                   const Homeomorphism& alpha, long n, double floor) {
  if (n < 0) throw InvalidParameters("apply_V needs n >= 0");
  const BoundedFunction inv = b.reciprocal(floor);
  if (n == 0 || f.is_zero()) return f;
  std::vector<BoundedFunction> fs;
  fs.reserve(static_cast<std::size_t>(n));
  for (long j = 1; j <= n; ++j) fs.push_back(inv.compose(alpha, -j));
  return BoundedFunction::product(fs) * f.compose(alpha, -n);
}

}  // namespace hyperdyn
