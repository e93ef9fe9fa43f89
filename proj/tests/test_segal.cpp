#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hyperdyn/error.hpp"
#include "hyperdyn/segal.hpp"

using namespace hyperdyn;
using CSF = CompactlySupportedFunction;

namespace {

const SegalWeight half(BoundedFunction::constant(0.5));
// |t|/4 clamped at 1
const SegalWeight quarter(BoundedFunction::piecewise_linear({{-4.0, 1.0}, {0.0, 0.0}, {4.0, 1.0}}));

// sum_k sup_{|t|<=1} (1-|t|)(|t|/4)^k on a dense grid, depth 60
double quarter_tent_oracle() {
  const int n = 400000;
  double total = 0.0;
  for (int k = 0; k <= 60; ++k) {
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      s = std::max(s, (1.0 - t) * std::pow(t / 4.0, k));
    }
    total += s;
  }
  return total;
}

CSF random_pwl(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int inner = 1 + static_cast<int>(rng() % 5);
  std::vector<double> xs{lo, hi};
  for (int i = 0; i < inner; ++i) xs.push_back(lo + (hi - lo) * (0.05 + 0.9 * u(rng)));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool end = i == 0 || i + 1 == xs.size();
    nodes.push_back({xs[i], end ? 0.0 : 4.0 * u(rng) - 2.0});
  }
  return CSF(std::move(nodes));
}

}  // namespace

TEST_CASE("segal norm examples") {
  const CSF tent = CSF::tent(-1.0, 1.0);
  SegalNorm n = segal_norm(tent, half);
  CHECK(std::abs(n.value - 2.0) <= 1e-6);
  CHECK(n.converged);
  CHECK(n.eps_f == 0.5);
  CHECK(n.tail_bound <= 1e-8 * n.value);
  CHECK(n.tail_bound == doctest::Approx(std::pow(0.5, n.depth + 1) / 0.5));
  for (std::size_t k = 0; k < n.terms.size(); ++k) CHECK(n.terms[k] == std::ldexp(1.0, -static_cast<int>(k)));

  CHECK(segal_norm(CSF{}, quarter).value == 0.0);

  SegalNorm q = segal_norm(tent, quarter);
  const double oracle = quarter_tent_oracle();
  CHECK(std::abs(q.value - oracle) <= 1e-4 * oracle);
  CHECK(q.value <= oracle + 1e-9);

  CHECK_THROWS_AS(segal_norm(tent, SegalWeight(BoundedFunction::constant(1.0))), NotInAlgebra);
}

TEST_CASE("depth cap") {
  SegalOptions o;
  o.depth_cap = 10;
  SegalNorm n = segal_norm(CSF::tent(-1, 1), SegalWeight(BoundedFunction::constant(0.99)), o);
  CHECK_FALSE(n.converged);
  CHECK(n.depth == 10);
  CHECK(n.terms.size() == 11);
}

TEST_CASE("membership") {
  const CSF tent = CSF::tent(-1.0, 1.0);
  Membership m = membership_check(tent, half);
  CHECK(m.member);
  CHECK(m.eps_f == 0.5);

  Membership one = membership_check(tent, SegalWeight(BoundedFunction::constant(1.0)));
  CHECK_FALSE(one.member);
  CHECK(one.witness == 0.0);

  // tau reaches 1 only at t = 4, where the tent vanishes
  const SegalWeight steep(BoundedFunction::piecewise_linear({{-8.0, 2.0}, {0.0, 0.0}, {8.0, 2.0}}));
  Membership edge = membership_check(CSF::tent(2.0, 4.0), steep);
  CHECK_FALSE(edge.member);
  CHECK(edge.eps_f == 1.0);
  CHECK(edge.witness == 4.0);
  // oracle: the open support stays strictly below 1
  for (int i = 1; i < 2000; ++i) CHECK(steep.tau()(2.0 + 2.0 * i / 2000.0) < 1.0);

  Membership inside = membership_check(CSF::tent(2.0, 6.0), steep);
  CHECK_FALSE(inside.member);
  CHECK(inside.witness == 4.0);  // the peak of the tent
  CHECK(CSF::tent(2.0, 6.0)(inside.witness) == 1.0);
  CHECK(steep.tau()(inside.witness) >= 1.0);

  CHECK_THROWS_AS(SegalElement(CSF::tent(2.0, 6.0), steep), NotInAlgebra);
}

TEST_CASE("urysohn bump") {
  BumpSpec s{CompactSet({{-1.0, 1.0}}), 0.5, 0.3, 1};
  CSF mu = urysohn_bump(s, quarter);
  CHECK(mu(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mu(-1.5) == doctest::Approx(0.5).epsilon(1e-15));
  for (double x = -1.0; x <= 1.0; x += 0.125) CHECK(mu(x) == 1.0);
  CHECK(mu(2.0) == 0.0);
  CHECK(mu(-2.0) == 0.0);
  CHECK(mu(7.0) == 0.0);
  // distance quotient d(x,B)/(d(x,K)+d(x,B)) on the ramps
  for (double x = 1.0; x <= 2.0; x += 0.0625) {
    const double dK = x - 1.0, dB = 2.0 - x;
    CHECK(mu(x) == doctest::Approx(dB / (dK + dB)).epsilon(1e-14));
  }
  SegalNorm n = segal_norm(mu, quarter);
  CHECK(n.value <= 2.0 + 1e-8);

  CHECK_THROWS_AS(urysohn_bump(BumpSpec{CompactSet({{-3.0, 1.0}}), 0.5, 0.3, 1}, quarter),
                  InvalidParameters);
  CHECK_THROWS_AS(urysohn_bump(BumpSpec{CompactSet({{-1.0, 1.0}}), 0.3, 0.5, 1}, quarter),
                  InvalidParameters);
}

TEST_CASE("approximate identity") {
  const CSF tent = CSF::tent(-1.0, 1.0);
  ApproxIdentity a = approximate_identity(SegalElement(tent, half), half, 0.1);
  CHECK(a.N == 5);
  CHECK(a.eps == doctest::Approx(0.01));
  CHECK(a.eps2 == doctest::Approx(0.995).epsilon(1e-8));
  CHECK(a.eps1 == doctest::Approx(0.9975).epsilon(1e-8));
  CHECK(a.achieved < 0.1);
  CHECK(a.achieved_bound < 0.1);
  // tau never reaches eps1, so only the window cuts mu: 1 on K_eps = [-0.99, 0.99]
  for (int i = -99; i <= 99; ++i) CHECK(a.mu(i / 100.0) == 1.0);
  CHECK(a.mu(1.0) > 0.0);
  CHECK(a.mu(-1.0) > 0.0);
  CHECK(a.achieved < 1e-3);

  ApproxIdentity b = approximate_identity(SegalElement(tent, half), half, 0.01);
  CHECK(b.N > a.N);
  CHECK(b.achieved < 0.01);

  CHECK_THROWS_AS(approximate_identity(SegalElement(CSF{}, half), half, 0.1), ZeroInput);
}

TEST_CASE("approximate identity where the bump must cut") {
  const SegalWeight tau(BoundedFunction::piecewise_linear({{-3.0, 1.2}, {-1.0, 0.3}, {2.0, 0.6}, {4.0, 1.5}}));
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const CSF f = dense_sample(tau, 0.9, seed);
    const SegalElement e(f, tau);
    for (double delta : {0.1, 0.01}) {
      ApproxIdentity a = approximate_identity(e, tau, delta);
      CHECK(a.achieved < delta);
      REQUIRE(a.spec);
      for (const auto& iv : a.spec->K.intervals()) {
        CHECK(a.mu(iv.lo) == 1.0);
        CHECK(a.mu(iv.hi) == 1.0);
      }
      const IntervalSet supp = a.mu.nonzero_region();
      CHECK(IntervalSet({{-a.spec->N - 1.0, a.spec->N + 1.0}}).contains(supp));
      CHECK(tau.sublevel(a.eps1).contains(supp));
      CHECK(a.eps2 < a.eps1);
      CHECK(a.eps1 < 1.0);
    }
  }
}

TEST_CASE("shifted norms") {
  const CSF tent = CSF::tent(-1.0, 1.0);
  const auto shift = Homeomorphism::translation(1.0);
  CHECK(shifted_norm(tent, half, shift, 7).value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(shifted_norm(tent, quarter, shift, 0).value == segal_norm(tent, quarter).value);

  const SegalWeight tau(BoundedFunction::piecewise_linear({{-30.0, 0.9}, {0.0, 0.2}, {30.0, 0.95}}));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double a = 1.0 + 0.1 * u(rng);
    const auto alpha = Homeomorphism::affine(a, u(rng));
    const long k = static_cast<long>(rng() % 21) - 10;
    const double lo = 3.0 * u(rng);
    const CSF f = random_pwl(rng, lo, lo + 0.5 + std::abs(u(rng)));
    const double lhs = shifted_norm(f.compose(alpha), tau, alpha, k + 1).value;
    const double rhs = shifted_norm(f, tau, alpha, k).value;
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + rhs));
  }
}

TEST_CASE("dense samples") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CSF f = dense_sample(quarter, 0.5, s);
    Membership m = membership_check(f, quarter);
    CHECK(m.member);
    CHECK(m.eps_f <= 0.5);
    CHECK(segal_norm(f, quarter).value <= f.sup_norm() / (1.0 - 0.5) * (1.0 + 1e-12));
    CHECK(dense_sample(quarter, 0.5, s)(0.3) == f(0.3));
  }
  CHECK(dense_sample(quarter, 0.5, 1)(0.5) != dense_sample(quarter, 0.5, 2)(0.5));
  CHECK_THROWS_AS(dense_sample(SegalWeight(BoundedFunction::constant(0.9)), 0.5, 1), EmptyRegion);
}

TEST_CASE("norm inequalities") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const CSF f = dense_sample(quarter, 0.8, rng());
    const SegalNorm n = segal_norm(f, quarter);
    CHECK(f.sup_norm() <= n.value + n.tail_bound);

    const auto g = BoundedFunction::piecewise_linear({{-1.0, 2.0 * u(rng)}, {1.0, 2.0 * u(rng)}});
    const SegalNorm gf = segal_norm(g * f, quarter);
    CHECK(gf.value <= g.sup_norm() * (n.value + n.tail_bound) + 1e-9);
  }
}

TEST_CASE("shift on an invariant weight") {
  const auto shift = Homeomorphism::translation(1.0);
  const SegalWeight periodic(BoundedFunction::constant(0.4));
  CHECK(is_alpha_invariant(periodic, shift));
  CHECK_FALSE(is_alpha_invariant(quarter, shift));
  const auto w = BoundedFunction::piecewise_linear({{0.0, 0.5}, {2.0, -1.5}});
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const CSF f = random_pwl(rng, -2.0, 1.5);
    const CSF g = segal_shift(f, w, shift, periodic);
    CHECK(g(0.25) == doctest::Approx(w(0.25) * f(-0.75)));
    CHECK(segal_norm(g, periodic).value <= w.sup_norm() * segal_norm(f, periodic).value * (1 + 1e-12));
  }
  CHECK_THROWS_AS(segal_shift(CSF::tent(0, 1), w, shift, quarter), InvalidParameters);
}
