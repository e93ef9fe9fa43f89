#include <algorithm>
#include <cmath>

#include "hyperdyn/cli/runner.hpp"
#include "hyperdyn/error.hpp"

namespace hyperdyn::cli {

namespace {

// Re-raises domain errors from constructors as configuration errors.
template <class F>
auto at_line(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const hyperdyn::Error& e) {
    throw ConfigError(e.what(), line);
  }
}

struct Reader {
  const RawConfig& cfg;

  const Entry* opt(const std::string& sec, const std::string& key) const {
    return cfg.find(sec, key);
  }
  const Entry& req(const std::string& sec, const std::string& key) const {
    const Entry* e = cfg.find(sec, key);
    if (!e) throw ConfigError("missing key '" + key + "' in [" + sec + "]");
    return *e;
  }
  double number(const std::string& sec, const std::string& key, double def) const {
    const Entry* e = opt(sec, key);
    return e ? parse_number(e->value, e->line) : def;
  }
  long integer(const std::string& sec, const std::string& key, long def) const {
    const Entry* e = opt(sec, key);
    return e ? parse_integer(e->value, e->line) : def;
  }
  bool flag(const std::string& sec, const std::string& key, bool def) const {
    const Entry* e = opt(sec, key);
    return e ? parse_bool(e->value, e->line) : def;
  }
  // "prefix.<j>" entries of a section, sorted by j
  std::vector<std::pair<long, const Entry*>> indexed(const std::string& sec,
                                                     const std::string& prefix) const {
    std::vector<std::pair<long, const Entry*>> out;
    auto s = cfg.sections.find(sec);
    if (s == cfg.sections.end()) return out;
    for (const auto& [k, e] : s->second) {
      if (k.rfind(prefix, 0) == 0) {
        out.emplace_back(parse_integer(k.substr(prefix.size()), e.line), &e);
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
};

std::vector<Node> parse_nodes(const std::vector<std::string>& args, int line) {
  std::vector<Node> nodes;
  for (const auto& a : args) {
    auto colon = a.find(':');
    if (colon == std::string::npos) throw ConfigError("node must be 'x:value', got '" + a + "'", line);
    nodes.push_back({parse_number(a.substr(0, colon), line), parse_number(a.substr(colon + 1), line)});
  }
  return nodes;
}

void arity(const Call& c, std::size_t lo, std::size_t hi, int line) {
  if (c.args.size() < lo || c.args.size() > hi) {
    throw ConfigError(c.name + "() takes " + std::to_string(lo) +
                          (hi != lo ? ".." + std::to_string(hi) : std::string{}) + " arguments",
                      line);
  }
}

BoundedFunction bounded_expr(const Entry& e) {
  const Call c = parse_call(e.value, e.line);
  return at_line(e.line, [&] {
    if (c.name == "const") {
      arity(c, 1, 1, e.line);
      return BoundedFunction::constant(parse_number(c.args[0], e.line));
    }
    if (c.name == "pwl") {
      arity(c, 1, 10000, e.line);
      return BoundedFunction::piecewise_linear(parse_nodes(c.args, e.line));
    }
    if (c.name == "clamp_affine") {
      arity(c, 4, 4, e.line);
      return BoundedFunction::clamped_affine(
          parse_number(c.args[0], e.line), parse_number(c.args[1], e.line),
          parse_number(c.args[2], e.line), parse_number(c.args[3], e.line));
    }
    throw ConfigError("unknown function kind '" + c.name + "'", e.line);
  });
}

std::vector<BoundedFunction> bounded_cycle(const Entry& e) {
  std::vector<BoundedFunction> out;
  for (const auto& part : split_top(e.value, ';')) {
    if (part.empty()) throw ConfigError("empty entry in weight cycle", e.line);
    out.push_back(bounded_expr(Entry{part, e.line}));
  }
  return out;
}

CompactlySupportedFunction compact_expr(const Entry& e, const Plan& plan) {
  const Call c = parse_call(e.value, e.line);
  return at_line(e.line, [&] {
    if (c.name == "tent") {
      arity(c, 2, 3, e.line);
      double h = c.args.size() == 3 ? parse_number(c.args[2], e.line) : 1.0;
      return CompactlySupportedFunction::tent(parse_number(c.args[0], e.line),
                                              parse_number(c.args[1], e.line), h);
    }
    if (c.name == "cpwl") {
      arity(c, 2, 10000, e.line);
      return CompactlySupportedFunction(parse_nodes(c.args, e.line));
    }
    if (c.name == "sample") {
      arity(c, 1, 1, e.line);
      if (!plan.tau) throw ConfigError("sample() needs [segal] tau", e.line);
      return dense_sample(*plan.tau, parse_number(c.args[0], e.line), plan.seed);
    }
    throw ConfigError("unknown compact function kind '" + c.name + "'", e.line);
  });
}

Kind parse_kind(const Entry& e) {
  static const std::pair<const char*, Kind> names[] = {
      {"criterion", Kind::criterion},       {"mixing", Kind::mixing},
      {"multiplier", Kind::multiplier},     {"witness", Kind::witness},
      {"segal-norm", Kind::segal_norm},     {"approx-identity", Kind::approx_identity},
      {"c0-witness", Kind::c0_witness},     {"runaway", Kind::runaway}};
  for (const auto& [n, k] : names) {
    if (e.value == n) return k;
  }
  throw ConfigError("unknown experiment kind '" + e.value + "'", e.line);
}

WeightSequence build_weights(const Reader& rd) {
  const Entry& model = rd.req("weights", "model");
  const bool invertible = rd.flag("weights", "invertible", true);
  if (model.value == "ex1") {
    const Entry& M = rd.req("weights", "M");
    const Entry& eps = rd.req("weights", "eps");
    return at_line(model.line, [&] {
      return ex1_weights(parse_number(M.value, M.line), parse_number(eps.value, eps.line));
    });
  }
  if (model.value == "constant") {
    const Entry& c = rd.req("weights", "c");
    const double cv = parse_number(c.value, c.line);
    return at_line(c.line, [&] { return WeightSequence::constant(cv, invertible); });
  }
  if (model.value == "table") {
    WeightSequence::Rules r;
    r.left = bounded_cycle(rd.req("weights", "left"));
    r.right = bounded_cycle(rd.req("weights", "right"));
    r.left_end = rd.integer("weights", "left_end", 0);
    r.right_start = rd.integer("weights", "right_start", 1);
    for (const auto& [j, e] : rd.indexed("weights", "w.")) r.table.emplace(j, bounded_expr(*e));
    WeightSequence::Options o;
    o.certify_invertible = invertible;
    o.positivity_floor = rd.number("weights", "floor", kDefaultPositivityFloor);
    o.bound_cap = rd.number("weights", "cap", 1e12);
    return at_line(model.line, [&] { return WeightSequence(std::move(r), o); });
  }
  throw ConfigError("unknown weight model '" + model.value + "'", model.line);
}

Homeomorphism build_alpha(const Reader& rd) {
  const Entry* kind = rd.opt("alpha", "kind");
  const std::string k = kind ? kind->value : "translation";
  const int line = kind ? kind->line : 0;
  if (k == "translation") return Homeomorphism::translation(rd.number("alpha", "c", 1.0));
  if (k == "affine") {
    const double a = rd.number("alpha", "a", 1.0);
    const double b = rd.number("alpha", "b", 0.0);
    return at_line(line, [&] { return Homeomorphism::affine(a, b); });
  }
  throw ConfigError("unknown alpha kind '" + k + "'", line);
}

CompactSet build_set(const Reader& rd, int density) {
  const Entry& e = rd.req("set", "intervals");
  auto pairs = parse_intervals(e.value, e.line);
  if (pairs.empty()) throw ConfigError("interval list is empty", e.line);
  std::vector<Interval> ivs;
  for (auto [lo, hi] : pairs) {
    if (!(lo <= hi)) throw ConfigError("interval with lo > hi", e.line);
    ivs.push_back({lo, hi});
  }
  return at_line(e.line, [&] { return CompactSet(std::move(ivs), density); });
}

ModuleVector build_vector(const Reader& rd, const std::string& prefix, const Plan& plan) {
  ModuleVector out;
  for (const auto& [j, e] : rd.indexed("witness", prefix)) out.add(j, compact_expr(*e, plan));
  return out;
}

std::vector<double> default_ladder() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::criterion: return "criterion";
    case Kind::mixing: return "mixing";
    case Kind::multiplier: return "multiplier";
    case Kind::witness: return "witness";
    case Kind::segal_norm: return "segal-norm";
    case Kind::approx_identity: return "approx-identity";
    case Kind::c0_witness: return "c0-witness";
    case Kind::runaway: return "runaway";
  }
  return "?";
}

Plan build_plan(const RawConfig& cfg, const Overrides& ov) {
  Reader rd{cfg};
  Plan p;
  p.kind = parse_kind(rd.req("experiment", "kind"));
  if (const Entry* e = rd.opt("experiment", "name")) p.name = e->value;
  const long seed = rd.integer("experiment", "seed", 0);
  if (seed < 0) throw ConfigError("seed must be >= 0", rd.opt("experiment", "seed")->line);
  p.seed = ov.seed ? *ov.seed : static_cast<std::uint64_t>(seed);
  p.sampling.refine = ov.refine ? *ov.refine
                                : static_cast<int>(rd.integer("experiment", "refine", 16));
  if (p.sampling.refine < 1) throw ConfigError("refine must be >= 1");
  p.segal.sampling = p.sampling;
  p.gnuplot = rd.flag("output", "gnuplot", false);

  p.density = static_cast<int>(rd.integer("set", "density", CompactSet::kDefaultDensity));
  if (p.density < 1) throw ConfigError("density must be >= 1", rd.opt("set", "density")->line);

  if (const Entry* e = rd.opt("criterion", "backward_exponent")) {
    p.backward = at_line(e->line, [&] { return parse_backward_exponent(e->value); });
  }
  if (ov.backward) p.backward = *ov.backward;

  auto thresholds = [&](const std::string& sec) {
    const Entry* e = rd.opt(sec, "thresholds");
    auto th = e ? parse_number_list(e->value, e->line) : default_ladder();
    for (std::size_t k = 0; k < th.size(); ++k) {
      if (!(th[k] > 0.0) || (k > 0 && !(th[k] < th[k - 1]))) {
        throw ConfigError("thresholds must be positive and strictly decreasing",
                          e ? e->line : 0);
      }
    }
    return th;
  };

  auto segal_common = [&] {
    p.tau = at_line(rd.req("segal", "tau").line,
                    [&] { return SegalWeight(bounded_expr(rd.req("segal", "tau")), p.sampling); });
    p.segal.rel_tol = rd.number("segal", "rel_tol", 1e-8);
    if (!(p.segal.rel_tol > 0.0)) throw ConfigError("rel_tol must be > 0");
    p.segal.depth_cap = rd.integer("segal", "depth_cap", 100000);
    if (p.segal.depth_cap < 1) throw ConfigError("depth_cap must be >= 1");
  };

  auto witness_common = [&] {
    p.weights = build_weights(rd);
    p.alpha = build_alpha(rd);
    p.u = build_vector(rd, "u.", p);
    p.v = build_vector(rd, "v.", p);
    const Entry& r = rd.req("witness", "r");
    p.r_list = parse_index_list(r.value, r.line);
    for (std::size_t i = 0; i < p.r_list.size(); ++i) {
      if (p.r_list[i] < 1 || (i > 0 && p.r_list[i] <= p.r_list[i - 1])) {
        throw ConfigError("witness r values must be positive and increasing", r.line);
      }
    }
    p.tolerance = rd.number("witness", "tolerance", 1e-6);
    if (!p.weights->invertible()) {
      throw ConfigError("witness experiments need invertible weights",
                        rd.req("weights", "model").line);
    }
  };

  switch (p.kind) {
    case Kind::criterion:
    case Kind::mixing: {
      p.weights = build_weights(rd);
      p.alpha = build_alpha(rd);
      p.K = build_set(rd, p.density);
      const Entry& idx = rd.req("criterion", "indices");
      p.indices = parse_index_list(idx.value, idx.line);
      p.r_max = rd.integer("criterion", "r_max", 500);
      if (p.r_max < 1) throw ConfigError("r_max must be >= 1");
      if (p.kind == Kind::criterion) {
        p.thresholds = thresholds("criterion");
      } else {
        p.threshold = rd.number("criterion", "threshold", 1e-6);
        p.r_window = rd.integer("criterion", "r_window", 50);
        if (!(p.threshold > 0.0)) throw ConfigError("threshold must be > 0");
        if (p.r_window < 0 || p.r_window >= p.r_max) {
          throw ConfigError("r_window must satisfy 0 <= r_window < r_max");
        }
      }
      if (!p.weights->invertible()) {
        throw ConfigError("the backward product needs invertible weights",
                          rd.req("weights", "model").line);
      }
      break;
    }
    case Kind::multiplier: {
      p.alpha = build_alpha(rd);
      p.K = build_set(rd, p.density);
      p.b = bounded_expr(rd.req("multiplier", "b"));
      p.n_max = rd.integer("multiplier", "n_max", 100);
      if (p.n_max < 1) throw ConfigError("n_max must be >= 1");
      p.thresholds = thresholds("multiplier");
      p.floor = rd.number("multiplier", "floor", kDefaultPositivityFloor);
      const Entry& be = rd.req("multiplier", "b");
      at_line(be.line, [&] { return p.b->reciprocal(p.floor, p.sampling); });
      if (const Entry* e = rd.opt("multiplier", "f")) {
        p.f_mult = compact_expr(*e, p);
      } else {
        const Interval h = p.K->set().hull();
        if (h.hi > h.lo) p.f_mult = CompactlySupportedFunction::tent(h.lo, h.hi);
      }
      break;
    }
    case Kind::witness:
      witness_common();
      break;
    case Kind::c0_witness:
      segal_common();
      witness_common();
      break;
    case Kind::segal_norm:
      segal_common();
      p.f = compact_expr(rd.req("segal", "f"), p);
      break;
    case Kind::approx_identity:
      segal_common();
      p.f = compact_expr(rd.req("segal", "f"), p);
      p.delta = rd.number("segal", "delta", 0.1);
      if (!(p.delta > 0.0)) throw ConfigError("delta must be > 0");
      if (p.f->is_zero()) throw ConfigError("approximate identity needs a nonzero f");
      break;
    case Kind::runaway:
      p.alpha = build_alpha(rd);
      p.K = build_set(rd, p.density);
      p.runaway_n_max = rd.integer("runaway", "n_max", 100);
      if (p.runaway_n_max < 1) throw ConfigError("n_max must be >= 1");
      break;
  }
  return p;
}

}  // namespace hyperdyn::cli
