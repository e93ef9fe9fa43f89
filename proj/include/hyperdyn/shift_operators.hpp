#pragma once

#include "hyperdyn/bounded_function.hpp"
#include "hyperdyn/compact_function.hpp"
#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/module_vector.hpp"
#include "hyperdyn/weight_sequence.hpp"

namespace hyperdyn {

/// n-th power of the weighted bilateral shift:
///   (T^n a)_{j+n} = [prod_{k=1}^{n} w_{j+k} o alpha^{n-k}] * (a_j o alpha^n).
/// n == 0 returns a unchanged.
ModuleVector apply_T(const ModuleVector& a, const WeightSequence& w, const Homeomorphism& alpha,
                     long n);

/// Inverse of apply_T:
///   (S^n a)_{j-n} = [prod_{i=1}^{n} w_{j+1-i}^{-1} o alpha^{i-n-1}] * (a_j o alpha^{-n}).
/// Throws NonInvertibleWeights when w lacks its certificate.
ModuleVector apply_S(const ModuleVector& a, const WeightSequence& w, const Homeomorphism& alpha,
                     long n);

struct Witness {
  ModuleVector x;
  double d_start = 0.0;  ///< ||x - u||_2
  double d_end = 0.0;    ///< ||T^r x - v||_2
};

/// x = u + S^r v, so that x is close to u while T^r x is close to v.
Witness transitivity_witness(const ModuleVector& u, const ModuleVector& v, const WeightSequence& w,
                             const Homeomorphism& alpha, long r, const SamplingOptions& opts = {});

/// U^n f = [prod_{j=0}^{n-1} b o alpha^j] * (f o alpha^n).
CompactlySupportedFunction apply_U(const CompactlySupportedFunction& f, const BoundedFunction& b,
                                   const Homeomorphism& alpha, long n);

/// V^n f = [prod_{j=1}^{n} b^{-1} o alpha^{-j}] * (f o alpha^{-n}); the inverse of apply_U.
/// Throws NonInvertibleWeight when inf |b| is below the floor.
CompactlySupportedFunction apply_V(const CompactlySupportedFunction& f, const BoundedFunction& b,
                                   const Homeomorphism& alpha, long n,
                                   double floor = kDefaultPositivityFloor);

}  // namespace hyperdyn
