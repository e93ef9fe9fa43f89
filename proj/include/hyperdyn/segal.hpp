#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperdyn/bounded_function.hpp"
#include "hyperdyn/compact_function.hpp"
#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/interval_set.hpp"
#include "hyperdyn/sampling.hpp"

namespace hyperdyn {

/// The weight tau of A_tau together with its unit region {|tau| >= 1}.
class SegalWeight {
 public:
  explicit SegalWeight(BoundedFunction tau, const SamplingOptions& opts = {});

  const BoundedFunction& tau() const { return tau_; }
  const IntervalSet& unit_region() const { return unit_region_; }

  /// tau o alpha^k.
  SegalWeight compose(const Homeomorphism& alpha, long k) const;

  /// {|tau| <= c}, {|tau| >= c}; exact for piecewise-linear tau.
  IntervalSet sublevel(double c) const;
  IntervalSet superlevel(double c) const;
  /// sup |tau| over a bounded closed set; exact for piecewise-linear tau.
  double sup_on(const IntervalSet& region) const;

  const SamplingOptions& sampling() const { return opts_; }

 private:
  BoundedFunction tau_;
  IntervalSet unit_region_;
  SamplingOptions opts_;
};

struct Membership {
  bool member = false;
  double eps_f = 0.0;    ///< sup |tau| over the nonzero region of f
  double witness = 0.0;  ///< for non-members: a support point where |tau| >= 1
};

/// f is accepted when sup |tau| over its support is < 1. A non-member gets
/// the support point with |tau| >= 1 and largest |f|; if |f| vanishes at
/// every such point (tau reaches 1 only where f does) the point with the
/// largest |tau| is returned.
Membership membership_check(const CompactlySupportedFunction& f, const SegalWeight& tau);

struct SegalOptions {
  double rel_tol = 1e-8;
  long depth_cap = 100000;
  SamplingOptions sampling{};
};

struct SegalNorm {
  double value = 0.0;       ///< sum_{k=0}^{depth} ||f tau^k||_inf
  double tail_bound = 0.0;  ///< ||f||_inf eps_f^{depth+1} / (1 - eps_f)
  long depth = 0;
  bool converged = true;    ///< false when depth_cap was hit first
  double eps_f = 0.0;
  std::vector<double> terms;  ///< ||f tau^k||_inf for k = 0..depth
};

/// ||f||_tau truncated at the first depth whose geometric tail bound is
/// <= rel_tol * value. Throws NotInAlgebra when eps_f >= 1.
SegalNorm segal_norm(const CompactlySupportedFunction& f, const SegalWeight& tau,
                     const SegalOptions& opts = {});

/// ||f||_{tau o alpha^k}.
SegalNorm shifted_norm(const CompactlySupportedFunction& f, const SegalWeight& tau,
                       const Homeomorphism& alpha, long k, const SegalOptions& opts = {});

/// A certified member of A_tau with its norm.
class SegalElement {
 public:
  /// Throws NotInAlgebra.
  SegalElement(CompactlySupportedFunction f, const SegalWeight& tau,
               const SegalOptions& opts = {});

  const CompactlySupportedFunction& f() const { return f_; }
  double eps_f() const { return norm_.eps_f; }
  const SegalNorm& norm() const { return norm_; }

 private:
  CompactlySupportedFunction f_;
  SegalNorm norm_;
};

struct BumpSpec {
  CompactSet K;  ///< must lie in {|tau| <= eps2} and in [-N, N]
  double eps1 = 0.0;
  double eps2 = 0.0;
  long N = 1;
};

/// Piecewise-linear Urysohn function: 1 on K, 0 on
/// B = {|tau| >= eps1} u (-inf, -N-1] u [N+1, inf), linear across every gap
/// between a point of K and a point of B, constant across K-K and B-B gaps.
/// Throws InvalidParameters for a bad spec and SetsNotSeparated when K meets B.
CompactlySupportedFunction urysohn_bump(const BumpSpec& spec, const SegalWeight& tau);

struct ApproxIdentity {
  CompactlySupportedFunction mu;
  double achieved = 0.0;        ///< computed ||f mu - f||_tau
  double achieved_bound = 0.0;  ///< achieved plus its tail bound
  long N = 0;                   ///< series cut with tail < delta/2
  double eps = 0.0;             ///< delta / (2N)
  double eps1 = 0.0;
  double eps2 = 0.0;
  IntervalSet K_eps;            ///< {|f| >= eps}
  std::optional<BumpSpec> spec;
  int retries = 0;              ///< extra N increments needed
};

/// Builds mu with ||f mu - f||_tau < delta. Throws ZeroInput when f == 0.
ApproxIdentity approximate_identity(const SegalElement& f, const SegalWeight& tau, double delta,
                                    const SegalOptions& opts = {});

/// Pseudo-random piecewise-linear function supported in {|tau| <= eps}.
/// Throws EmptyRegion when that set has no interior (within [-window, window]
/// for unbounded pieces).
CompactlySupportedFunction dense_sample(const SegalWeight& tau, double eps, std::uint64_t seed,
                                        double window = 8.0);

/// sup over a probe grid of |tau(alpha(x)) - tau(x)| <= tol.
bool is_alpha_invariant(const SegalWeight& tau, const Homeomorphism& alpha, double tol = 1e-12);

/// w * (f o alpha), admitted only when tau o alpha = tau (else InvalidParameters).
CompactlySupportedFunction segal_shift(const CompactlySupportedFunction& f,
                                       const BoundedFunction& w, const Homeomorphism& alpha,
                                       const SegalWeight& tau);

}  // namespace hyperdyn
