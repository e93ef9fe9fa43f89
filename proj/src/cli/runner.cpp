#include "hyperdyn/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hyperdyn/c0space.hpp"
#include "hyperdyn/error.hpp"
#include "hyperdyn/shift_operators.hpp"

namespace hyperdyn::cli {

namespace {

constexpr double kSlack = 1e-12;

std::string fmt(double v) { return format_number(v); }

std::string join(const std::vector<long>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

CompactSet support_set(const CompactlySupportedFunction& f, int density) {
  const Interval s = f.support();
  return CompactSet(std::vector<Interval>{s}, density);
}

RunResult run_bilateral(const Plan& p) {
  RunResult res;
  CriterionReport rep =
      p.kind == Kind::criterion
          ? find_subsequence(*p.weights, *p.alpha, p.indices, *p.K, p.thresholds, p.r_max,
                             p.backward)
          : check_mixing(*p.weights, *p.alpha, p.indices, *p.K, p.threshold, p.r_window, p.r_max,
                         p.backward);
  res.table.header = csv_header(p);
  for (const auto& row : rep.trace) {
    std::vector<double> r{static_cast<double>(row.r)};
    for (const auto& x : row.forward) r.push_back(x.value);
    for (const auto& x : row.backward) r.push_back(x.value);
    for (const auto& x : row.forward) r.push_back(x.log10);
    for (const auto& x : row.backward) r.push_back(x.log10);
    res.table.rows.push_back(std::move(r));
  }
  res.verdict = to_string(rep.verdict);
  res.success = p.kind == Kind::criterion ? rep.verdict == Verdict::subsequence_found
                                          : rep.verdict == Verdict::full_sequence_decay;
  res.summary.emplace_back("indices", join(p.indices));
  res.summary.emplace_back("subsequence", join(rep.subsequence));
  if (!rep.trace.empty()) {
    res.summary.emplace_back("final_forward_max", fmt(rep.trace.back().forward_max));
    res.summary.emplace_back("final_backward_max", fmt(rep.trace.back().backward_max));
  }
  res.summary.emplace_back("note", "evidence for the supplied (K, I) pair only");
  return res;
}

RunResult run_multiplier(const Plan& p) {
  RunResult res;
  CriterionReport rep = find_multiplier_subsequence(*p.b, *p.alpha, *p.K, p.thresholds, p.n_max,
                                                    p.floor);
  res.table.header = csv_header(p);
  bool estimate = true;
  bool applies = false;
  double fsup = 0.0;
  CompactlySupportedFunction g;
  if (p.f_mult) {
    g = *p.f_mult;
    fsup = g.sup_norm(p.sampling);
    applies = p.K->set().contains(g.nonzero_region());
  }
  for (const auto& row : rep.trace) {
    double orbit = NAN, bound = NAN;
    if (p.f_mult) {
      g = apply_U(g, *p.b, *p.alpha, 1);
      orbit = g.sup_norm(p.sampling);
      bound = row.forward[0].value * fsup;
      if (applies && orbit > bound + kSlack) estimate = false;
    }
    res.table.rows.push_back({static_cast<double>(row.r), row.forward[0].value,
                              row.backward[0].value, row.forward[0].log10, row.backward[0].log10,
                              orbit, bound});
  }
  const RunawayResult run = runaway_check(*p.alpha, *p.K, p.n_max);
  res.verdict = to_string(rep.verdict);
  res.success = rep.verdict == Verdict::subsequence_found && estimate;
  res.summary.emplace_back("subsequence", join(rep.subsequence));
  res.summary.emplace_back("runaway", run.found ? "N=" + std::to_string(run.N) : "not found");
  res.summary.emplace_back("orbit_estimate",
                           !p.f_mult ? "no f" : !applies ? "supp f not in K" : estimate ? "holds" : "violated");
  return res;
}

template <class Measure, class BoundF, class BoundB>
RunResult run_witness(const Plan& p, Measure&& measure, BoundF&& bound_f, BoundB&& bound_b) {
  RunResult res;
  res.table.header = csv_header(p);
  bool chain = true;
  double last_start = 0.0, last_end = 0.0;
  for (long r : p.r_list) {
    auto [ds, de] = measure(r);
    const double bf = bound_f(r), bb = bound_b(r);
    if (de > bf + kSlack || ds > bb + kSlack) chain = false;
    res.table.rows.push_back({static_cast<double>(r), ds, de, bf, bb});
    last_start = ds;
    last_end = de;
  }
  const bool decayed = last_start <= p.tolerance && last_end <= p.tolerance;
  res.success = chain && decayed;
  res.verdict = res.success ? "witness_decay_confirmed" : "witness_not_confirmed";
  res.summary.emplace_back("bound_chain", chain ? "holds" : "violated");
  res.summary.emplace_back("final_d_start", fmt(last_start));
  res.summary.emplace_back("final_d_end", fmt(last_end));
  res.summary.emplace_back("tolerance", fmt(p.tolerance));
  return res;
}

RunResult run_l2_witness(const Plan& p) {
  const double nu = module_norm(p.u, p.sampling), nv = module_norm(p.v, p.sampling);
  auto measure = [&](long r) {
    Witness w = transitivity_witness(p.u, p.v, *p.weights, *p.alpha, r, p.sampling);
    return std::pair{w.d_start, w.d_end};
  };
  auto bf = [&](long r) {
    double m = 0.0;
    for (const auto& [j, f] : p.u.entries()) {
      m = std::max(m, forward_product(*p.weights, *p.alpha, j, r, support_set(f, p.density)).value);
    }
    return m * nu;
  };
  auto bb = [&](long r) {
    double m = 0.0;
    for (const auto& [j, f] : p.v.entries()) {
      m = std::max(m, backward_product(*p.weights, *p.alpha, j, r, support_set(f, p.density),
                                       p.backward)
                          .value);
    }
    return m * nv;
  };
  return run_witness(p, measure, bf, bb);
}

RunResult run_c0_witness(const Plan& p) {
  const C0TauVector u(p.u, *p.tau, *p.alpha), v(p.v, *p.tau, *p.alpha);
  auto entry_norm = [&](long j, const CompactlySupportedFunction& f) {
    SegalNorm n = shifted_norm(f, *p.tau, *p.alpha, j, p.segal);
    return n.value + n.tail_bound;
  };
  auto measure = [&](long r) {
    C0Witness w = c0_witness(u, v, *p.weights, r, p.segal);
    return std::pair{w.d_start, w.d_end};
  };
  auto bf = [&](long r) {
    double m = 0.0;
    for (const auto& [j, f] : p.u.entries()) {
      m = std::max(m, forward_product(*p.weights, *p.alpha, j, r, support_set(f, p.density)).value *
                          entry_norm(j, f));
    }
    return m;
  };
  auto bb = [&](long r) {
    double m = 0.0;
    for (const auto& [j, f] : p.v.entries()) {
      m = std::max(m, backward_product(*p.weights, *p.alpha, j, r, support_set(f, p.density),
                                       p.backward)
                              .value *
                          entry_norm(j, f));
    }
    return m;
  };
  return run_witness(p, measure, bf, bb);
}

RunResult run_segal_norm(const Plan& p) {
  RunResult res;
  res.table.header = csv_header(p);
  const SegalNorm n = segal_norm(*p.f, *p.tau, p.segal);
  double partial = 0.0;
  for (std::size_t k = 0; k < n.terms.size(); ++k) {
    partial += n.terms[k];
    res.table.rows.push_back({static_cast<double>(k), n.terms[k], partial});
  }
  res.success = n.converged;
  res.verdict = n.converged ? "converged" : "depth_cap_reached";
  res.summary.emplace_back("value", fmt(n.value));
  res.summary.emplace_back("tail_bound", fmt(n.tail_bound));
  res.summary.emplace_back("depth", std::to_string(n.depth));
  res.summary.emplace_back("eps_f", fmt(n.eps_f));
  return res;
}

RunResult run_approx_identity(const Plan& p) {
  RunResult res;
  res.table.header = csv_header(p);
  const SegalElement f(*p.f, *p.tau, p.segal);
  const ApproxIdentity a = approximate_identity(f, *p.tau, p.delta, p.segal);
  res.table.rows.push_back({p.delta, static_cast<double>(a.N), a.eps, a.eps2, a.eps1,
                            a.spec ? static_cast<double>(a.spec->N) : NAN, a.achieved,
                            a.achieved_bound, static_cast<double>(a.retries)});
  res.success = a.achieved_bound < p.delta;
  res.verdict = res.success ? "achieved_below_delta" : "delta_not_reached";
  res.summary.emplace_back("achieved", fmt(a.achieved));
  res.summary.emplace_back("achieved_bound", fmt(a.achieved_bound));
  res.summary.emplace_back("retries", std::to_string(a.retries));
  return res;
}

RunResult run_runaway(const Plan& p) {
  RunResult res;
  res.table.header = csv_header(p);
  const RunawayResult r = runaway_check(*p.alpha, *p.K, p.runaway_n_max);
  for (std::size_t n = 0; n < r.disjoint.size(); ++n) {
    res.table.rows.push_back({static_cast<double>(n + 1), r.disjoint[n] ? 1.0 : 0.0});
  }
  res.success = r.found;
  res.verdict = r.found ? "runaway_found" : "runaway_not_found";
  if (r.found) res.summary.emplace_back("N", std::to_string(r.N));
  return res;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> csv_header(const Plan& p) {
  switch (p.kind) {
    case Kind::criterion:
    case Kind::mixing: {
      std::vector<std::string> h{"r"};
      for (const char* pre : {"fwd_", "bwd_", "log10_fwd_", "log10_bwd_"}) {
        for (long j : p.indices) h.push_back(pre + std::to_string(j));
      }
      return h;
    }
    case Kind::multiplier:
      return {"n", "forward", "backward", "log10_forward", "log10_backward", "orbit_sup",
              "orbit_bound"};
    case Kind::witness:
    case Kind::c0_witness:
      return {"r", "d_start", "d_end", "bound_forward", "bound_backward"};
    case Kind::segal_norm:
      return {"k", "term", "partial_sum"};
    case Kind::approx_identity:
      return {"delta", "N", "eps", "eps2", "eps1", "bump_N", "achieved", "achieved_bound",
              "retries"};
    case Kind::runaway:
      return {"n", "disjoint"};
  }
  return {};
}

RunResult execute(const Plan& p) {
  switch (p.kind) {
    case Kind::criterion:
    case Kind::mixing: return run_bilateral(p);
    case Kind::multiplier: return run_multiplier(p);
    case Kind::witness: return run_l2_witness(p);
    case Kind::c0_witness: return run_c0_witness(p);
    case Kind::segal_norm: return run_segal_norm(p);
    case Kind::approx_identity: return run_approx_identity(p);
    case Kind::runaway: return run_runaway(p);
  }
  throw std::logic_error("unhandled experiment kind");
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

std::string render_gnuplot(const Plan& p, const Table& t, const std::string& csv_name) {
  std::size_t last = t.header.size();
  bool logy = true;
  switch (p.kind) {
    case Kind::criterion:
    case Kind::mixing: last = 1 + 2 * p.indices.size(); break;
    case Kind::multiplier: last = 3; break;
    case Kind::segal_norm: last = 2; break;
    case Kind::runaway:
    case Kind::approx_identity: logy = false; break;
    default: break;
  }
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel '" << t.header.front() << "'\n";
  if (logy) s << "set logscale y\n";
  s << "plot for [i=2:" << last << "] '" << csv_name << "' using 1:i with linespoints\n";
  return s.str();
}

std::string render_report(const RawConfig& cfg, const std::string& config_path, const Plan& p,
                          const RunResult& res, double seconds) {
  std::ostringstream s;
  s << kVersion << '\n'
    << "config: " << config_path << '\n'
    << "kind: " << to_string(p.kind) << '\n';
  if (!p.name.empty()) s << "name: " << p.name << '\n';
  s << "seed: " << p.seed << '\n'
    << "refine: " << p.sampling.refine << '\n'
    << "backward_exponent: " << to_string(p.backward) << '\n'
    << "--- config ---\n";
  for (const auto& line : cfg.lines) s << line << '\n';
  s << "--- end config ---\n";
  for (const auto& [k, v] : res.summary) s << k << ": " << v << '\n';
  s << "rows: " << res.table.rows.size() << '\n'
    << "verdict: " << res.verdict << '\n'
    << "wall_clock_seconds: " << seconds << '\n';
  return s.str();
}

int run_command(const std::string& config_path, const std::string& out_dir, const Overrides& ov,
                std::ostream& out, std::ostream& err) {
  RawConfig cfg;
  Plan plan;
  try {
    cfg = load_config(config_path);
    plan = build_plan(cfg, ov);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const hyperdyn::Error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  std::string failure;
  try {
    res = execute(plan);
  } catch (const hyperdyn::Error& e) {
    failure = e.what();
    res.table.header = csv_header(plan);
    res.verdict = "failed";
    res.summary.emplace_back("error", failure);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  try {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string base = to_string(plan.kind);
    write_file(fs::path(out_dir) / (base + ".csv"), render_csv(res.table));
    if (plan.gnuplot) {
      write_file(fs::path(out_dir) / (base + ".gp"), render_gnuplot(plan, res.table, base + ".csv"));
    }
    write_file(fs::path(out_dir) / "report.txt",
               render_report(cfg, config_path, plan, res, seconds));
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
  if (!failure.empty()) err << "error: " << failure << '\n';
  out << to_string(plan.kind) << ": " << res.verdict << '\n';
  return res.success ? 0 : 1;
}

int validate_command(const std::string& config_path, const Overrides& ov, std::ostream& out,
                     std::ostream& err) {
  try {
    const RawConfig cfg = load_config(config_path);
    const Plan p = build_plan(cfg, ov);
    out << "ok: " << to_string(p.kind) << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const hyperdyn::Error& e) {
    err << "config error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace hyperdyn::cli
