#include "hyperdyn/segal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> breakpoints_in(const BoundedFunction& g, double lo, double hi) {
  std::vector<double> out;
  for (double b : g.breakpoints()) {
    if (b >= lo && b <= hi) out.push_back(b);
  }
  return out;
}

}  // namespace

SegalWeight::SegalWeight(BoundedFunction tau, const SamplingOptions& opts)
    : tau_(std::move(tau)), opts_(opts) {
  unit_region_ = tau_.abs_superlevel(1.0, opts_);
}

SegalWeight SegalWeight::compose(const Homeomorphism& alpha, long k) const {
  return SegalWeight(tau_.compose(alpha, k), opts_);
}

IntervalSet SegalWeight::sublevel(double c) const { return tau_.abs_sublevel(c, opts_); }

IntervalSet SegalWeight::superlevel(double c) const { return tau_.abs_superlevel(c, opts_); }

double SegalWeight::sup_on(const IntervalSet& region) const {
  const auto pwl = tau_.as_piecewise_linear();
  double s = 0.0;
  for (const auto& iv : region.intervals()) {
    if (!iv.bounded()) throw InvalidParameters("sup of tau needs a bounded region");
    if (pwl) {
      // |linear| peaks at an end of each piece
      s = std::max({s, std::abs((*pwl)(iv.lo)), std::abs((*pwl)(iv.hi))});
      for (const auto& n : pwl->nodes()) {
        if (iv.contains(n.x)) s = std::max(s, std::abs(n.value));
      }
    } else {
      auto bps = breakpoints_in(tau_, iv.lo, iv.hi);
      auto g = [this](double x) { return tau_(x); };
      s = std::max(s, sup_abs(g, bps, iv.lo, iv.hi, opts_).value);
    }
  }
  return s;
}

Membership membership_check(const CompactlySupportedFunction& f, const SegalWeight& tau) {
  Membership m;
  if (f.is_zero()) {
    m.member = true;
    return m;
  }
  const IntervalSet region = f.nonzero_region();
  m.eps_f = tau.sup_on(region);
  if (m.eps_f < 1.0) {
    m.member = true;
    return m;
  }
  const IntervalSet bad = tau.unit_region().intersect(region);
  const auto nodes = f.nodes();
  double best_f = -1.0;
  for (const auto& iv : bad.intervals()) {
    std::vector<double> cand{iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi)};
    for (double x : nodes) {
      if (iv.contains(x)) cand.push_back(x);
    }
    for (double x : cand) {
      const double v = std::abs(f(x));
      if (v > best_f) {
        best_f = v;
        m.witness = x;
      }
    }
  }
  if (best_f > 0.0) return m;
  // tau reaches 1 only where f vanishes: report where |tau| is largest
  double best_t = -1.0;
  for (const auto& iv : region.intervals()) {
    auto bps = breakpoints_in(tau.tau(), iv.lo, iv.hi);
    auto g = [&tau](double x) { return tau.tau()(x); };
    const Extremum e = sup_abs(g, bps, iv.lo, iv.hi, tau.sampling());
    for (double x : {iv.lo, iv.hi, e.at}) {
      const double v = std::abs(tau.tau()(x));
      if (v > best_t) {
        best_t = v;
        m.witness = x;
      }
    }
  }
  return m;
}

SegalNorm segal_norm(const CompactlySupportedFunction& f, const SegalWeight& tau,
                     const SegalOptions& opts) {
  if (!(opts.rel_tol > 0.0)) throw InvalidParameters("segal norm needs rel_tol > 0");
  SegalNorm out;
  if (f.is_zero()) return out;
  const Membership m = membership_check(f, tau);
  if (!m.member) {
    throw NotInAlgebra("sup |tau| over the support is " + std::to_string(m.eps_f) +
                       " >= 1 (at x = " + std::to_string(m.witness) + ")");
  }
  out.eps_f = m.eps_f;
  const Interval s = f.support();
  auto bps = f.nodes();
  auto tb = breakpoints_in(tau.tau(), s.lo, s.hi);
  bps.insert(bps.end(), tb.begin(), tb.end());
  std::sort(bps.begin(), bps.end());
  const auto grid = refined_grid(bps, s.lo, s.hi, opts.sampling.refine);

  std::vector<double> pv(grid.size()), tv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pv[i] = std::abs(f(grid[i]));
    tv[i] = std::abs(tau.tau()(grid[i]));
  }
  const double supf = f.sup_norm(opts.sampling);
  const double eps = out.eps_f;

  for (long k = 0;; ++k) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < pv.size(); ++i) {
      if (pv[i] > pv[b]) b = i;
    }
    double term = pv[b];
    if (k == 0) {
      term = std::max(term, supf);
    } else if (opts.sampling.polish && term > 0.0) {
      const std::size_t lo = b > 0 ? b - 1 : b, hi = std::min(b + 1, grid.size() - 1);
      std::vector<double> local(grid.begin() + static_cast<long>(lo),
                                grid.begin() + static_cast<long>(hi) + 1);
      auto h = [&](double x) { return std::abs(f(x)) * std::pow(std::abs(tau.tau()(x)), k); };
      term = std::max(term, sup_abs_on_grid(h, local, true).value);
    }
    out.terms.push_back(term);
    out.value += term;
    out.tail_bound = eps == 0.0 ? 0.0 : supf * std::pow(eps, k + 1) / (1.0 - eps);
    out.depth = k;
    if (out.tail_bound <= opts.rel_tol * out.value) break;
    if (k >= opts.depth_cap) {
      out.converged = false;
      break;
    }
    for (std::size_t i = 0; i < pv.size(); ++i) pv[i] *= tv[i];
  }
  return out;
}

SegalNorm shifted_norm(const CompactlySupportedFunction& f, const SegalWeight& tau,
                       const Homeomorphism& alpha, long k, const SegalOptions& opts) {
  if (k == 0) return segal_norm(f, tau, opts);
  return segal_norm(f, tau.compose(alpha, k), opts);
}

SegalElement::SegalElement(CompactlySupportedFunction f, const SegalWeight& tau,
                           const SegalOptions& opts)
    : f_(std::move(f)), norm_(segal_norm(f_, tau, opts)) {}

CompactlySupportedFunction urysohn_bump(const BumpSpec& spec, const SegalWeight& tau) {
  if (!(0.0 < spec.eps2 && spec.eps2 < spec.eps1 && spec.eps1 < 1.0)) {
    throw InvalidParameters("bump needs 0 < eps2 < eps1 < 1");
  }
  if (spec.N < 1) throw InvalidParameters("bump needs N >= 1");
  const double N = static_cast<double>(spec.N);
  const Interval hull = spec.K.set().hull();
  if (hull.lo < -N || hull.hi > N) throw InvalidParameters("bump set K is not inside [-N, N]");
  if (tau.sup_on(spec.K.set()) > spec.eps2) {
    throw InvalidParameters("bump set K is not inside {|tau| <= eps2}");
  }
  const IntervalSet window({{-N - 1.0, N + 1.0}});
  const IntervalSet B = tau.superlevel(spec.eps1)
                            .intersect(window)
                            .unite(IntervalSet({{-INFINITY, -N - 1.0}, {N + 1.0, INFINITY}}));
  if (B.intersects(spec.K.set())) {
    throw SetsNotSeparated("K meets {|tau| >= eps1} or the outer window");
  }
  struct Piece {
    Interval iv;
    double value;
  };
  std::vector<Piece> pieces;
  for (const auto& iv : spec.K.intervals()) pieces.push_back({iv, 1.0});
  for (const auto& iv : B.intervals()) pieces.push_back({iv, 0.0});
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.iv.lo < b.iv.lo; });
  std::vector<Node> nodes;
  for (const auto& p : pieces) {
    if (std::isfinite(p.iv.lo)) nodes.push_back({p.iv.lo, p.value});
    if (p.iv.hi > p.iv.lo && std::isfinite(p.iv.hi)) nodes.push_back({p.iv.hi, p.value});
  }
  return CompactlySupportedFunction(std::move(nodes));
}

ApproxIdentity approximate_identity(const SegalElement& f, const SegalWeight& tau, double delta,
                                    const SegalOptions& opts) {
  if (f.f().is_zero()) throw ZeroInput("approximate identity of the zero function");
  if (!(delta > 0.0)) throw InvalidParameters("approximate identity needs delta > 0");
  SegalNorm norm = f.norm();
  if (norm.tail_bound >= delta / 4.0) {
    SegalOptions tight = opts;
    tight.rel_tol = std::min(opts.rel_tol, delta / (8.0 * norm.value));
    norm = segal_norm(f.f(), tau, tight);
  }
  const double full = norm.value + norm.tail_bound;

  // tail(N) = sum_{n > N} ||f tau^n|| <= computed terms beyond N + tail bound
  auto tail = [&](long N) {
    double t = norm.tail_bound;
    for (long n = static_cast<long>(norm.terms.size()) - 1; n > N; --n) t += norm.terms[n];
    return t;
  };
  long N = 1;
  while (!(tail(N) < delta / 2.0)) ++N;

  ApproxIdentity out;
  for (int attempt = 0; attempt < 64; ++attempt, ++N) {
    out.retries = attempt;
    out.N = N;
    out.eps = delta / (2.0 * static_cast<double>(N));
    out.K_eps = f.f().abs_superlevel(out.eps, opts.sampling);
    if (out.K_eps.empty()) continue;
    out.eps2 = 1.0 - out.eps / full;
    out.eps1 = 0.5 * (out.eps2 + 1.0);
    const Interval h = out.K_eps.hull();
    const long bumpN = std::max(1L, static_cast<long>(std::ceil(std::max(-h.lo, h.hi))));
    out.spec = BumpSpec{CompactSet(out.K_eps), out.eps1, out.eps2, bumpN};
    out.mu = urysohn_bump(*out.spec, tau);
    const SegalNorm d = segal_norm(f.f() * out.mu - f.f(), tau, opts);
    out.achieved = d.value;
    out.achieved_bound = d.value + d.tail_bound;
    if (out.achieved_bound < delta) return out;
  }
  return out;
}

CompactlySupportedFunction dense_sample(const SegalWeight& tau, double eps, std::uint64_t seed,
                                        double window) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameters("dense sample needs eps in (0, 1)");
  const IntervalSet region = tau.sublevel(eps).intersect(IntervalSet({{-window, window}}));
  std::vector<Interval> cand;
  for (const auto& iv : region.intervals()) {
    if (iv.length() > 1e-9) cand.push_back(iv);
  }
  if (cand.empty()) throw EmptyRegion("{|tau| <= eps} has no interior in the sampling window");
  std::mt19937_64 rng(seed);
  const Interval iv = cand[rng() % cand.size()];
  const double len = iv.length() * (0.25 + 0.75 * unit_draw(rng));
  const double c = iv.lo + unit_draw(rng) * (iv.length() - len);
  const double d = std::min(c + len, iv.hi);
  const int n = 1 + static_cast<int>(rng() % 5);
  std::vector<Node> nodes{{c, 0.0}};
  for (int i = 0; i < n; ++i) {
    const double x = c + (d - c) * (i + 0.1 + 0.8 * unit_draw(rng)) / n;
    const double sign = (rng() & 1) ? 1.0 : -1.0;
    nodes.push_back({x, sign * (0.1 + 0.9 * unit_draw(rng))});
  }
  nodes.push_back({d, 0.0});
  return CompactlySupportedFunction(std::move(nodes));
}

bool is_alpha_invariant(const SegalWeight& tau, const Homeomorphism& alpha, double tol) {
  std::vector<double> bps = tau.tau().breakpoints();
  const Homeomorphism inv = alpha.inverse();
  const std::size_t n = bps.size();
  for (std::size_t i = 0; i < n; ++i) {
    bps.push_back(alpha(bps[i]));
    bps.push_back(inv(bps[i]));
  }
  double lo = -10.0, hi = 10.0;
  for (double b : bps) {
    lo = std::min(lo, b - 10.0);
    hi = std::max(hi, b + 10.0);
  }
  const auto grid = refined_grid(bps, lo, hi, 64);
  for (double x : grid) {
    if (std::abs(tau.tau()(alpha(x)) - tau.tau()(x)) > tol) return false;
  }
  return true;
}

CompactlySupportedFunction segal_shift(const CompactlySupportedFunction& f,
                                       const BoundedFunction& w, const Homeomorphism& alpha,
                                       const SegalWeight& tau) {
  if (!is_alpha_invariant(tau, alpha)) {
    throw InvalidParameters("the shift acts on A_tau only when tau o alpha = tau");
  }
  return w * f.compose(alpha, 1);
}

}  // namespace hyperdyn
