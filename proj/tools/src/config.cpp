#include "euler2d_cli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

namespace euler2d::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view k) {
  if (k.empty() || !(std::islower(static_cast<unsigned char>(k[0])) || k[0] == '_')) return false;
  for (char c : k) {
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
          c == '_')) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  double factor = 1.0;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    factor = std::numbers::pi;
    s.remove_suffix(2);
    if (s.empty()) return factor;
    if (s == "-") return -factor;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v * factor;
}

template <class T>
std::optional<T> parse_int(std::string_view s) {
  s = trim(s);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<Cutoff> parse_cutoff(std::string_view s) {
  const auto x = s.find('x');
  if (x == std::string_view::npos) {
    const auto n = parse_int<int>(s);
    if (!n) return std::nullopt;
    return Cutoff{*n, *n};
  }
  const auto a = parse_int<int>(s.substr(0, x));
  const auto b = parse_int<int>(s.substr(x + 1));
  if (!a || !b) return std::nullopt;
  return Cutoff{*a, *b};
}

}  // namespace

RawConfig parse_config_text(std::string_view text, std::string_view origin) {
  RawConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!valid_key(key)) throw ConfigError(where + "invalid key '" + key + "'");
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
    if (!cfg.values.emplace(key, value).second) {
      throw ConfigError(where + "duplicate key '" + key + "'");
    }
  }
  return cfg;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_override(RawConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string value(trim(assignment.substr(eq + 1)));
  if (!valid_key(key)) throw ConfigError("invalid key '" + key + "' in override");
  if (value.empty()) throw ConfigError("empty value for '" + key + "' in override");
  cfg.values[key] = value;
}

Config::Config(const RawConfig& raw, const std::vector<KeySpec>& keys) {
  for (const auto& [k, v] : raw.values) {
    bool known = false;
    for (const auto& spec : keys) known = known || spec.name == k;
    if (!known) throw ConfigError("unknown key '" + k + "'");
  }
  for (const auto& spec : keys) {
    const auto it = raw.values.find(spec.name);
    if (it != raw.values.end()) {
      resolved_[spec.name] = it->second;
      explicit_[spec.name] = true;
    } else if (spec.fallback) {
      resolved_[spec.name] = *spec.fallback;
      explicit_[spec.name] = false;
    } else {
      throw ConfigError("missing required key '" + spec.name + "'");
    }
  }
}

bool Config::explicitly_set(const std::string& key) const {
  const auto it = explicit_.find(key);
  return it != explicit_.end() && it->second;
}

const std::string& Config::text(const std::string& key) const {
  const auto it = resolved_.find(key);
  if (it == resolved_.end()) throw std::logic_error("key '" + key + "' not declared");
  return it->second;
}

void Config::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(key + ": " + what + " (got '" + text(key) + "')");
}

double Config::real(const std::string& key) const {
  const auto v = parse_real(text(key));
  if (!v) fail(key, "expected a real number");
  return *v;
}

long Config::integer(const std::string& key) const {
  const auto v = parse_int<long>(text(key));
  if (!v) fail(key, "expected an integer");
  return *v;
}

std::uint64_t Config::unsigned_integer(const std::string& key) const {
  const auto v = parse_int<std::uint64_t>(text(key));
  if (!v) fail(key, "expected a non-negative integer");
  return *v;
}

bool Config::boolean(const std::string& key) const {
  const auto& t = text(key);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  fail(key, "expected true or false");
}

Cutoff Config::cutoff(const std::string& key) const {
  const auto c = parse_cutoff(trim(text(key)));
  if (!c) fail(key, "expected N1xN2");
  return *c;
}

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) {
    const auto v = parse_real(item);
    if (!v) fail(key, "expected a list of reals");
    out.push_back(*v);
  }
  if (out.empty()) fail(key, "expected a nonempty list");
  return out;
}

std::vector<long> Config::integers(const std::string& key) const {
  std::vector<long> out;
  for (const auto& item : split_list(text(key))) {
    const auto v = parse_int<long>(item);
    if (!v) fail(key, "expected a list of integers");
    out.push_back(*v);
  }
  if (out.empty()) fail(key, "expected a nonempty list");
  return out;
}

std::vector<Cutoff> Config::cutoffs(const std::string& key) const {
  std::vector<Cutoff> out;
  for (const auto& item : split_list(text(key))) {
    const auto c = parse_cutoff(item);
    if (!c) fail(key, "expected a list of N1xN2 cutoffs");
    out.push_back(*c);
  }
  if (out.empty()) fail(key, "expected a nonempty list");
  return out;
}

}  // namespace euler2d::cli
