#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperdyn/bounded_function.hpp"
#include "hyperdyn/cli/config.hpp"
#include "hyperdyn/compact_function.hpp"
#include "hyperdyn/criteria.hpp"
#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/interval_set.hpp"
#include "hyperdyn/module_vector.hpp"
#include "hyperdyn/segal.hpp"
#include "hyperdyn/weight_sequence.hpp"

namespace hyperdyn::cli {

inline constexpr const char* kVersion = "hyperdyn 0.1.0";

enum class Kind {
  criterion,
  mixing,
  multiplier,
  witness,
  segal_norm,
  approx_identity,
  c0_witness,
  runaway
};

std::string to_string(Kind k);

/// Command-line settings that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> refine;
  std::optional<BackwardExponent> backward;
};

/// Fully validated experiment; every domain object is already constructed.
struct Plan {
  Kind kind = Kind::criterion;
  std::string name;
  std::uint64_t seed = 0;
  SamplingOptions sampling{};
  BackwardExponent backward = BackwardExponent::i_minus_1;
  bool gnuplot = false;

  std::optional<WeightSequence> weights;
  std::optional<Homeomorphism> alpha;
  std::optional<CompactSet> K;
  int density = CompactSet::kDefaultDensity;

  std::vector<long> indices;
  std::vector<double> thresholds;
  long r_max = 500;
  double threshold = 1e-6;
  long r_window = 50;

  std::optional<BoundedFunction> b;
  std::optional<CompactlySupportedFunction> f_mult;
  long n_max = 100;
  double floor = kDefaultPositivityFloor;

  ModuleVector u, v;
  std::vector<long> r_list;
  double tolerance = 1e-6;

  std::optional<SegalWeight> tau;
  std::optional<CompactlySupportedFunction> f;
  SegalOptions segal{};
  double delta = 0.1;

  long runaway_n_max = 100;
};

/// Throws ConfigError (with the line of the offending entry when known).
Plan build_plan(const RawConfig& cfg, const Overrides& ov);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  std::string verdict;
  bool success = false;
  Table table;
  std::vector<std::pair<std::string, std::string>> summary;
};

/// CSV header for the plan's kind (what an empty run would emit).
std::vector<std::string> csv_header(const Plan& plan);

/// Runs the experiment. Domain errors raised by the computation propagate.
RunResult execute(const Plan& plan);

/// Decimal rendering with 17 significant digits.
std::string format_number(double v);
std::string render_csv(const Table& t);
std::string render_gnuplot(const Plan& plan, const Table& t, const std::string& csv_name);
std::string render_report(const RawConfig& cfg, const std::string& config_path, const Plan& plan,
                          const RunResult& res, double seconds);

/// `hyperdyn run`: returns the process exit code (0 success verdict,
/// 1 failed verdict or computation error, 2 configuration error).
int run_command(const std::string& config_path, const std::string& out_dir, const Overrides& ov,
                std::ostream& out, std::ostream& err);
/// `hyperdyn validate`: 0 when the config builds a plan, 2 otherwise.
int validate_command(const std::string& config_path, const Overrides& ov, std::ostream& out,
                     std::ostream& err);

}  // namespace hyperdyn::cli
