#include "hyperdyn/cli/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hyperdyn::cli {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment", {"kind", "seed", "name", "refine"}},
      {"weights",
       {"model", "M", "eps", "c", "invertible", "left", "right", "left_end", "right_start",
        "floor", "cap"}},
      {"alpha", {"kind", "c", "a", "b"}},
      {"set", {"intervals", "density"}},
      {"criterion",
       {"indices", "thresholds", "r_max", "threshold", "r_window", "backward_exponent"}},
      {"multiplier", {"b", "n_max", "thresholds", "f", "floor"}},
      {"witness", {"r", "tolerance"}},
      {"segal", {"tau", "f", "rel_tol", "delta", "depth_cap"}},
      {"runaway", {"n_max"}},
      {"output", {"gnuplot"}},
  };
  return keys;
}

// Indexed keys such as w.3 or u.-1.
bool indexed_key(const std::string& section, const std::string& key) {
  std::string prefix;
  if (section == "weights") prefix = "w.";
  if (section == "witness" && (key.rfind("u.", 0) == 0 || key.rfind("v.", 0) == 0)) {
    prefix = key.substr(0, 2);
  }
  if (prefix.empty() || key.rfind(prefix, 0) != 0) return false;
  std::string idx = key.substr(prefix.size());
  if (idx.empty()) return false;
  std::size_t i = (idx[0] == '-' || idx[0] == '+') ? 1 : 0;
  if (i == idx.size()) return false;
  for (; i < idx.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(idx[i]))) return false;
  }
  return true;
}

}  // namespace

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const Entry* RawConfig::find(const std::string& section, const std::string& key) const {
  auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

RawConfig parse_config(const std::string& text) {
  RawConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    cfg.lines.push_back(raw);
    std::string s = raw;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("unterminated section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (!known_keys().contains(section)) {
        throw ConfigError("unknown section [" + section + "]", line);
      }
      cfg.sections[section];
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    if (section.empty()) throw ConfigError("key outside of any section", line);
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    if (!known_keys().at(section).contains(key) && !indexed_key(section, key)) {
      throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
    }
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line);
    auto& sec = cfg.sections[section];
    if (sec.contains(key)) throw ConfigError("duplicate key '" + key + "'", line);
    sec[key] = Entry{value, line};
  }
  return cfg;
}

RawConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

double parse_number(const std::string& s, int line) {
  const std::string t = trim(s);
  if (t.empty()) throw ConfigError("expected a number", line);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError("not a number: '" + t + "'", line);
  }
  return v;
}

long parse_integer(const std::string& s, int line) {
  const std::string t = trim(s);
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError("not an integer: '" + t + "'", line);
  }
  return v;
}

bool parse_bool(const std::string& s, int line) {
  const std::string t = trim(s);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError("not a boolean: '" + t + "'", line);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<double> parse_number_list(const std::string& s, int line) {
  std::vector<double> out;
  for (const auto& p : split_top(s, ',')) out.push_back(parse_number(p, line));
  return out;
}

std::vector<long> parse_index_list(const std::string& s, int line) {
  std::vector<long> out;
  for (const auto& p : split_top(s, ',')) {
    if (auto dots = p.find(".."); dots != std::string::npos) {
      long a = parse_integer(p.substr(0, dots), line);
      long b = parse_integer(p.substr(dots + 2), line);
      if (b < a) throw ConfigError("empty index range '" + p + "'", line);
      if (b - a > 100000) throw ConfigError("index range too long '" + p + "'", line);
      for (long j = a; j <= b; ++j) out.push_back(j);
    } else {
      out.push_back(parse_integer(p, line));
    }
  }
  return out;
}

std::vector<std::pair<double, double>> parse_intervals(const std::string& s, int line) {
  std::vector<std::pair<double, double>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ';' || ch == ',') {
      ++i;
      continue;
    }
    if (ch != '[') throw ConfigError("expected '[' in interval list", line);
    auto close = s.find(']', i);
    if (close == std::string::npos) throw ConfigError("unterminated interval", line);
    auto parts = split_top(s.substr(i + 1, close - i - 1), ',');
    if (parts.size() != 2) throw ConfigError("interval needs two endpoints", line);
    out.emplace_back(parse_number(parts[0], line), parse_number(parts[1], line));
    i = close + 1;
  }
  return out;
}

Call parse_call(const std::string& s, int line) {
  const std::string t = trim(s);
  auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') {
    throw ConfigError("expected name(args...): '" + t + "'", line);
  }
  Call c;
  c.name = trim(t.substr(0, open));
  const std::string inner = trim(t.substr(open + 1, t.size() - open - 2));
  if (!inner.empty()) c.args = split_top(inner, ',');
  return c;
}

}  // namespace hyperdyn::cli
