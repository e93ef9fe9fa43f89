#pragma once

#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/module_vector.hpp"
#include "hyperdyn/segal.hpp"
#include "hyperdyn/weight_sequence.hpp"

namespace hyperdyn {

/// Finitely supported element of c_0^{A,tau}: entry j lives in A_{tau o alpha^j}.
class C0TauVector {
 public:
  /// Throws NotInAlgebra when some entry fails its membership check.
  C0TauVector(ModuleVector entries, SegalWeight tau, Homeomorphism alpha);

  /// Skips the membership checks (for results whose membership is already
  /// implied, such as shifts of members).
  static C0TauVector trusted(ModuleVector entries, SegalWeight tau, Homeomorphism alpha);

  const ModuleVector& entries() const { return entries_; }
  const SegalWeight& tau() const { return tau_; }
  const Homeomorphism& alpha() const { return alpha_; }

  /// Re-runs every membership check; throws NotInAlgebra.
  void certify() const;

 private:
  C0TauVector(ModuleVector entries, SegalWeight tau, Homeomorphism alpha, bool check);

  ModuleVector entries_;
  SegalWeight tau_;
  Homeomorphism alpha_;
};

/// sup_j ||s_j||_{tau o alpha^j}; 0 for the empty vector.
double c0_norm(const C0TauVector& s, const SegalOptions& opts = {});

#ifdef NDEBUG
inline constexpr bool kRecertifyShifts = false;
#else
inline constexpr bool kRecertifyShifts = true;
#endif

/// T^n on c_0^{A,tau}, same formula as apply_T. Membership of the result
/// follows from the shifted-norm identity, so it is only recomputed when
/// `recertify` is set (the default in debug builds).
C0TauVector apply_shift_c0(const C0TauVector& s, const WeightSequence& w, long n,
                           bool recertify = kRecertifyShifts);
/// S^n on c_0^{A,tau}. Throws NonInvertibleWeights.
C0TauVector apply_inverse_shift_c0(const C0TauVector& s, const WeightSequence& w, long n,
                                   bool recertify = kRecertifyShifts);

struct C0Witness {
  ModuleVector x;
  double d_start = 0.0;  ///< ||x - u||_0
  double d_end = 0.0;    ///< ||T^r x - v||_0
};

/// x = u + S^r v with distances in the c_0 norm. Entries of u and v must have
/// supports where |tau o alpha^j| < 1 (else NotInDenseSet); u and v must share
/// tau and alpha.
C0Witness c0_witness(const C0TauVector& u, const C0TauVector& v, const WeightSequence& w, long r,
                     const SegalOptions& opts = {});

}  // namespace hyperdyn
