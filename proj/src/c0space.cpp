#include "hyperdyn/c0space.hpp"

#include <algorithm>

#include "hyperdyn/error.hpp"
#include "hyperdyn/shift_operators.hpp"

namespace hyperdyn {

C0TauVector::C0TauVector(ModuleVector entries, SegalWeight tau, Homeomorphism alpha, bool check)
    : entries_(std::move(entries)), tau_(std::move(tau)), alpha_(alpha) {
  if (check) certify();
}

C0TauVector::C0TauVector(ModuleVector entries, SegalWeight tau, Homeomorphism alpha)
    : C0TauVector(std::move(entries), std::move(tau), alpha, true) {}

C0TauVector C0TauVector::trusted(ModuleVector entries, SegalWeight tau, Homeomorphism alpha) {
  return C0TauVector(std::move(entries), std::move(tau), alpha, false);
}

void C0TauVector::certify() const {
  for (const auto& [j, f] : entries_.entries()) {
    const Membership m = membership_check(f, tau_.compose(alpha_, j));
    if (!m.member) {
      throw NotInAlgebra("entry " + std::to_string(j) + " is not in A_{tau o alpha^j}");
    }
  }
}

double c0_norm(const C0TauVector& s, const SegalOptions& opts) {
  double out = 0.0;
  for (const auto& [j, f] : s.entries().entries()) {
    out = std::max(out, shifted_norm(f, s.tau(), s.alpha(), j, opts).value);
  }
  return out;
}

C0TauVector apply_shift_c0(const C0TauVector& s, const WeightSequence& w, long n,
                           bool recertify) {
  auto out = C0TauVector::trusted(apply_T(s.entries(), w, s.alpha(), n), s.tau(), s.alpha());
  if (recertify) out.certify();
  return out;
}

C0TauVector apply_inverse_shift_c0(const C0TauVector& s, const WeightSequence& w, long n,
                                   bool recertify) {
  auto out = C0TauVector::trusted(apply_S(s.entries(), w, s.alpha(), n), s.tau(), s.alpha());
  if (recertify) out.certify();
  return out;
}

C0Witness c0_witness(const C0TauVector& u, const C0TauVector& v, const WeightSequence& w, long r,
                     const SegalOptions& opts) {
  if (r < 1) throw InvalidParameters("witness needs r >= 1");
  if (!w.invertible()) throw NonInvertibleWeights("c0 witness needs invertible weights");
  for (const C0TauVector* s : {&u, &v}) {
    for (const auto& [j, f] : s->entries().entries()) {
      const Membership m = membership_check(f, s->tau().compose(s->alpha(), j));
      if (!m.member) {
        throw NotInDenseSet("entry " + std::to_string(j) +
                            " meets {|tau o alpha^j| >= 1} on its support");
      }
    }
  }
  const Homeomorphism& alpha = u.alpha();
  C0Witness out;
  const ModuleVector srv = apply_S(v.entries(), w, alpha, r);
  out.x = u.entries() + srv;
  auto norm = [&](ModuleVector m) {
    return c0_norm(C0TauVector::trusted(std::move(m), u.tau(), alpha), opts);
  };
  out.d_start = norm(out.x - u.entries());
  out.d_end = norm(apply_T(out.x, w, alpha, r) - v.entries());
  return out;
}

}  // namespace hyperdyn
