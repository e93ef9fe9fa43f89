#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hyperdyn/c0space.hpp"
#include "hyperdyn/criteria.hpp"
#include "hyperdyn/error.hpp"
#include "hyperdyn/shift_operators.hpp"

using namespace hyperdyn;
using CSF = CompactlySupportedFunction;

namespace {

const Homeomorphism shift1 = Homeomorphism::translation(1.0);
const SegalWeight half(BoundedFunction::constant(0.5));

double ex1_w(long j, double t) {
  if (j >= 1) return t <= -1.0 ? 1.5 : t >= 0.0 ? 0.5 : 1.5 - (t + 1.0);
  return t <= 0.0 ? 1.5 : t >= 1.0 ? 0.5 : 1.5 - t;
}

double tent(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

C0TauVector single(const CSF& f, long j = 0) { return C0TauVector({{j, f}}, half, shift1); }

}  // namespace

TEST_CASE("c0 norm") {
  CHECK(c0_norm(single(CSF::tent(-1, 1))) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(c0_norm(C0TauVector({}, half, shift1)) == 0.0);
  C0TauVector two({{0, CSF::tent(-1, 1)}, {1, CSF::tent(-1, 1, 1.5)}}, half, shift1);
  CHECK(c0_norm(two) == doctest::Approx(3.0).epsilon(1e-8));

  // entry j lives in A_{tau o alpha^j}: tau o alpha^j (x) = tau(x - j)
  const SegalWeight ramp(BoundedFunction::piecewise_linear({{0.0, 0.2}, {4.0, 1.2}}));
  CHECK_NOTHROW(C0TauVector({{3, CSF::tent(0, 2)}}, ramp, shift1));
  CHECK_THROWS_AS(C0TauVector({{0, CSF::tent(2, 4)}}, ramp, shift1), NotInAlgebra);
  CHECK_THROWS_AS(C0TauVector::trusted({{0, CSF::tent(2, 4)}}, ramp, shift1).certify(), NotInAlgebra);
}

TEST_CASE("shift on c0") {
  const CSF t = CSF::tent(-1, 1);
  const auto s = single(t);
  C0TauVector one = apply_shift_c0(s, WeightSequence::constant(1.0), 1);
  REQUIRE(one.entries().size() == 1);
  for (double x = -1.0; x <= 3.0; x += 0.25) CHECK(one.entries().at(1)(x) == tent(x - 1.0));
  CHECK(std::abs(c0_norm(one) - c0_norm(s)) <= 1e-9);

  C0TauVector h = apply_shift_c0(s, WeightSequence::constant(0.5), 1);
  CHECK(c0_norm(h) == doctest::Approx(0.5 * c0_norm(s)).epsilon(1e-12));

  CHECK(apply_shift_c0(C0TauVector({}, half, shift1), WeightSequence::constant(2.0), 3)
            .entries()
            .empty());

  C0TauVector back = apply_inverse_shift_c0(apply_shift_c0(s, ex1_weights(4, 0.5), 4), ex1_weights(4, 0.5), 4);
  for (double x = -1.0; x <= 1.0; x += 0.125) CHECK(back.entries().at(0)(x) == doctest::Approx(tent(x)));
  CHECK_THROWS_AS(apply_inverse_shift_c0(s, WeightSequence::constant(1.0, false), 1), NonInvertibleWeights);
}

TEST_CASE("c0 shift is bounded by the weights") {
  const SegalWeight tau(BoundedFunction::piecewise_linear({{-5.0, 0.1}, {5.0, 0.7}}));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto w = ex1_weights(4, 0.5);
  for (int i = 0; i < 20; ++i) {
    ModuleVector m;
    for (long j = -2; j <= 2; ++j) {
      const double c = 2.0 * u(rng);
      m.set(j, CSF::tent(c - 0.5, c + 0.5, 1.0 + u(rng)));
    }
    const C0TauVector s(m, tau, shift1);
    CHECK(c0_norm(apply_shift_c0(s, w, 1)) <= w.bound() * c0_norm(s) * (1.0 + 1e-9));
    CHECK(std::abs(c0_norm(apply_shift_c0(s, WeightSequence::constant(1.0), 1)) - c0_norm(s)) <= 1e-9);
  }
}

TEST_CASE("c0 witness") {
  const auto u = single(CSF::tent(-1, 1));
  SUBCASE("empty") {
    const C0TauVector e({}, half, shift1);
    C0Witness w = c0_witness(e, e, ex1_weights(4, 0.5), 10);
    CHECK(w.x.empty());
    CHECK(w.d_start == 0.0);
    CHECK(w.d_end == 0.0);
  }
  SUBCASE("unit weights are isometric") {
    for (long r : {1L, 5L, 30L}) {
      C0Witness w = c0_witness(u, u, WeightSequence::constant(1.0), r);
      CHECK(w.d_start == doctest::Approx(c0_norm(u)).epsilon(1e-9));
      CHECK(w.d_end == doctest::Approx(c0_norm(u)).epsilon(1e-9));
    }
  }
  SUBCASE("ex1, r = 50, against the direct orbit") {
    const long r = 50;
    C0Witness w = c0_witness(u, u, ex1_weights(4, 0.5), r);
    // T^r u sits at index r, S^r v at -r; both sampled after moving the peak back to 0
    double fwd = 0.0, bwd = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double x = -1.0 + i / 10000.0;
      double p = tent(x);
      for (long k = 1; k <= r; ++k) p *= ex1_w(k, x + k);
      fwd = std::max(fwd, p);
      double q = tent(x);
      for (long k = 1; k <= r; ++k) q /= ex1_w(1 - k, x - k + 1);
      bwd = std::max(bwd, q);
    }
    // a constant tau = 0.5 doubles sup norms
    CHECK(w.d_end == doctest::Approx(2.0 * fwd).epsilon(1e-6));
    CHECK(w.d_start == doctest::Approx(2.0 * bwd).epsilon(1e-6));
    const CompactSet K({{-1.0, 1.0}});
    CHECK(w.d_end <= forward_product(ex1_weights(4, 0.5), shift1, 0, r, K).value * 2.0 + 1e-12);
    CHECK(w.d_start <= backward_product(ex1_weights(4, 0.5), shift1, 0, r, K).value * 2.0 + 1e-12);
    CHECK(w.d_end < 1e-6);
  }
  SUBCASE("dense set condition") {
    const SegalWeight ramp(BoundedFunction::piecewise_linear({{0.0, 0.2}, {4.0, 1.2}}));
    const auto bad = C0TauVector::trusted({{0, CSF::tent(2, 4)}}, ramp, shift1);
    const auto ok = C0TauVector({{0, CSF::tent(-1, 1)}}, ramp, shift1);
    CHECK_THROWS_AS(c0_witness(bad, ok, ex1_weights(4, 0.5), 3), NotInDenseSet);
    CHECK_THROWS_AS(c0_witness(ok, ok, WeightSequence::constant(1.0, false), 3), NonInvertibleWeights);
  }
}
