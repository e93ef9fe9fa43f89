#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperdyn/cli/config.hpp"
#include "hyperdyn/cli/runner.hpp"

using namespace hyperdyn::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("hyperdyn_test_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_cfg(const fs::path& dir, const std::string& text) {
  fs::path p = dir / "exp.cfg";
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int run(const fs::path& cfg, const fs::path& out, const Overrides& ov = {}) {
  std::ostringstream o, e;
  return run_command(cfg.string(), out.string(), ov, o, e);
}

const std::string kCriterion3 = R"(# three steps
[experiment]
kind = criterion
[weights]
model = ex1
M = 4
eps = 0.5
[alpha]
c = 1
[set]
intervals = [-2, 2]
[criterion]
indices = 1, 2
r_max = 3
)";

int shell(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(rc);
#else
  return rc;
#endif
}

}  // namespace

TEST_CASE("config grammar") {
  RawConfig c = parse_config("# header\n\n[experiment]\nkind = mixing   # trailing\n  seed=4\n");
  REQUIRE(c.has("experiment"));
  CHECK(c.find("experiment", "kind")->value == "mixing");
  CHECK(c.find("experiment", "seed")->line == 5);
  CHECK(c.find("experiment", "name") == nullptr);
  CHECK(c.lines.size() == 5);
  CHECK_THROWS_AS(parse_config("[a_section]\n"), ConfigError);
}

TEST_CASE("parser diagnostics carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      build_plan(parse_config(text), {});
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("[experiment]\nkind = criterion\n[bogus]\n") == 3);
  CHECK(line_of("[experiment]\nkind = criterion\nspeed = 3\n") == 3);
  CHECK(line_of("[experiment]\nkind = criterion\nkind = mixing\n") == 3);
  CHECK(line_of("[experiment]\nkey without equals\n") == 2);
  CHECK(line_of("[weights]\nmodel = ex1\nM = 4\neps = 0.9\n[experiment]\nkind = criterion\n[set]\nintervals = [0,1]\n") == 2);  // reported on the model entry
  CHECK(line_of("[experiment]\nkind = criterion\n[weights]\nmodel = ex1\nM = 4\neps = 0.5\n[set]\nintervals = [2, 1]\n") == 8);
  CHECK(line_of("[experiment]\nkind = teleport\n") == 2);
  CHECK_THROWS_WITH_AS(parse_config("[x\n"), "line 1: unterminated section header", ConfigError);
}

TEST_CASE("value parsers") {
  CHECK(parse_index_list("1..3, 7", 1) == std::vector<long>{1, 2, 3, 7});
  CHECK(parse_number_list("1e-1, 2", 1) == std::vector<double>{0.1, 2.0});
  auto iv = parse_intervals("[-2, 2] [3,4.5]", 1);
  REQUIRE(iv.size() == 2);
  CHECK(iv[1].second == 4.5);
  CHECK_THROWS_AS(parse_number("1.5x", 4), ConfigError);
  CHECK_THROWS_AS(parse_integer("2.5", 4), ConfigError);
  CHECK_THROWS_AS(parse_bool("maybe", 4), ConfigError);
  Call c = parse_call("pwl(-1:1.5, 0:0.5)", 1);
  CHECK(c.name == "pwl");
  CHECK(c.args.size() == 2);
  CHECK(split_top("a(1,2), b", ',').size() == 2);
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("criterion csv rows and header") {
  const fs::path d = scratch("rows");
  const fs::path cfg = write_cfg(d, kCriterion3);
  CHECK(run(cfg, d / "out") == 1);  // 1e-6 is out of reach in 3 steps
  auto rows = lines_of(slurp(d / "out" / "criterion.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "r,fwd_1,fwd_2,bwd_1,bwd_2,log10_fwd_1,log10_fwd_2,log10_bwd_1,log10_bwd_2");
  CHECK(rows[1].rfind("1,1.5,", 0) == 0);
  const std::string report = slurp(d / "out" / "report.txt");
  CHECK(report.find("not_found_within_budget") != std::string::npos);
  // numeric parameters echoed verbatim
  for (const char* s : {"M = 4", "eps = 0.5", "r_max = 3", "intervals = [-2, 2]"}) {
    CHECK(report.find(s) != std::string::npos);
  }
}

TEST_CASE("witness rows") {
  const fs::path d = scratch("witness");
  const fs::path cfg = write_cfg(d, R"([experiment]
kind = witness
[weights]
model = ex1
M = 4
eps = 0.5
[alpha]
c = 1
[witness]
u.0 = tent(-1, 1)
v.0 = tent(-1, 1)
r = 10, 20, 30
)");
  run(cfg, d / "out");
  auto rows = lines_of(slurp(d / "out" / "witness.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "r,d_start,d_end,bound_forward,bound_backward");
  std::vector<double> d_end;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto cols = split_top(rows[i], ',');
    d_end.push_back(std::stod(cols[2]));
  }
  CHECK(d_end[0] > d_end[1]);
  CHECK(d_end[1] > d_end[2]);
}

TEST_CASE("failed computation leaves a header-only csv") {
  const fs::path d = scratch("empty");
  const fs::path cfg = write_cfg(d, R"([experiment]
kind = segal-norm
[segal]
tau = const(1)
f = tent(-1, 1)
)");
  CHECK(run(cfg, d / "out") == 1);  // f is not in A_tau
  auto rows = lines_of(slurp(d / "out" / "segal-norm.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == "k,term,partial_sum");
  CHECK(slurp(d / "out" / "report.txt").find("verdict: failed") != std::string::npos);
  CHECK(render_csv(Table{{"a", "b"}, {}}) == "a,b\n");
}

TEST_CASE("overrides") {
  const fs::path d = scratch("ov");
  const fs::path cfg = write_cfg(d, kCriterion3);
  Overrides ov;
  ov.seed = 99;
  ov.refine = 4;
  ov.backward = hyperdyn::BackwardExponent::minus_i;
  Plan p = build_plan(load_config(cfg.string()), ov);
  CHECK(p.seed == 99);
  CHECK(p.sampling.refine == 4);
  CHECK(p.backward == hyperdyn::BackwardExponent::minus_i);
}

TEST_CASE("binary: exit codes, determinism, HYPERDYN_OUT") {
  const char* bin = std::getenv("HYPERDYN_BIN");
  const char* cfgs = std::getenv("HYPERDYN_CONFIGS");
  if (!bin || !cfgs) {
    MESSAGE("HYPERDYN_BIN / HYPERDYN_CONFIGS not set, skipping");
    return;
  }
  const fs::path d = scratch("bin");
  const std::string b = std::string("\"") + bin + "\"";
  auto cfg = [&](const char* n) { return "\"" + (fs::path(cfgs) / n).string() + "\""; };
  const std::string quiet = " >/dev/null 2>&1";

  CHECK(shell(b + " run " + cfg("ex1_criterion.cfg") + " --out " + (d / "a").string() + quiet) == 0);
  CHECK(shell(b + " run " + cfg("ex1_criterion.cfg") + " --out " + (d / "b").string() + quiet) == 0);
  CHECK(slurp(d / "a" / "criterion.csv") == slurp(d / "b" / "criterion.csv"));
  CHECK(fs::exists(d / "a" / "criterion.gp"));
  CHECK(slurp(d / "a" / "report.txt").find("subsequence_found") != std::string::npos);

  CHECK(shell(b + " run " + cfg("unit_criterion.cfg") + " --out " + (d / "u").string() + quiet) == 1);
  CHECK(slurp(d / "u" / "report.txt").find("not_found_within_budget") != std::string::npos);
  CHECK(shell(b + " run " + cfg("bad_empty_set.cfg") + " --out " + (d / "x").string() + quiet) == 2);
  CHECK(shell(b + " validate " + cfg("bad_empty_set.cfg") + quiet) == 2);
  CHECK(shell(b + " validate " + cfg("ex1_mixing.cfg") + quiet) == 0);
  CHECK(shell(b + " run " + cfg("ex1_criterion.cfg") + " --backward-exponent sideways" + quiet) == 2);
  CHECK(shell(b + " run /nonexistent.cfg" + quiet) == 2);

  CHECK(shell("HYPERDYN_OUT=" + (d / "env").string() + " " + b + " run " + cfg("runaway.cfg") +
              " --out " + (d / "flag").string() + quiet) == 0);
  CHECK(fs::exists(d / "env" / "runaway.csv"));
  CHECK_FALSE(fs::exists(d / "flag"));

  CHECK(shell(b + " run " + cfg("approx_identity.cfg") + " --seed 3 --out " + (d / "s1").string() + quiet) == 0);
  CHECK(shell(b + " run " + cfg("approx_identity.cfg") + " --seed 3 --out " + (d / "s2").string() + quiet) == 0);
  CHECK(slurp(d / "s1" / "approx-identity.csv") == slurp(d / "s2" / "approx-identity.csv"));
}
