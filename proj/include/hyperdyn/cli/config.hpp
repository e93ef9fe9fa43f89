#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperdyn::cli {

/// Bad configuration text or values; carries the offending line when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Entry {
  std::string value;
  int line = 0;
};

/// Flat "[section]" / "key = value" text. '#' starts a comment.
struct RawConfig {
  std::vector<std::string> lines;  ///< verbatim input, for the report echo
  std::map<std::string, std::map<std::string, Entry>> sections;

  bool has(const std::string& section) const { return sections.contains(section); }
  const Entry* find(const std::string& section, const std::string& key) const;
};

/// Throws ConfigError for syntax errors, unknown sections or keys, and
/// duplicate keys.
RawConfig parse_config(const std::string& text);
RawConfig load_config(const std::string& path);

// Value parsers; `line` is only used in diagnostics.
double parse_number(const std::string& s, int line);
long parse_integer(const std::string& s, int line);
bool parse_bool(const std::string& s, int line);
std::vector<double> parse_number_list(const std::string& s, int line);
/// "1,2,5" or "a..b" ranges, comma separated.
std::vector<long> parse_index_list(const std::string& s, int line);
/// "[lo,hi] [lo,hi]" (separators between groups optional).
std::vector<std::pair<double, double>> parse_intervals(const std::string& s, int line);

/// name(arg, arg, ...) split at top-level commas; throws when malformed.
struct Call {
  std::string name;
  std::vector<std::string> args;
};
Call parse_call(const std::string& s, int line);

/// Splits at top-level occurrences of `sep` (outside parentheses/brackets).
std::vector<std::string> split_top(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace hyperdyn::cli
