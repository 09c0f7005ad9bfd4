#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "euler2d/mode_index.hpp"

namespace euler2d::cli {

/// Bad or missing configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed `key = value` pairs.
///
/// Grammar, one entry per line:
///
///   line  := blank | comment | key ws* '=' ws* value
///   key   := [a-z_][a-z0-9_]*
///   value := anything up to an optional '#' comment, trimmed
///
/// A key may appear at most once per file. Overrides (`--set key=value`,
/// `--seed`) are applied afterwards and replace file values.
struct RawConfig {
  std::map<std::string, std::string> values;
};

RawConfig parse_config_text(std::string_view text, std::string_view origin = "config");
RawConfig load_config_file(const std::string& path);
/// `key=value`; throws ConfigError on malformed input.
void apply_override(RawConfig& cfg, std::string_view assignment);

struct KeySpec {
  std::string name;
  /// Default value; std::nullopt marks the key as required.
  std::optional<std::string> fallback;
};

/// A RawConfig checked against the keys one subcommand understands.
/// Unknown keys and missing required keys are ConfigErrors; typed getters
/// name the offending key in their diagnostics.
class Config {
 public:
  Config(const RawConfig& raw, const std::vector<KeySpec>& keys);

  [[nodiscard]] bool explicitly_set(const std::string& key) const;
  [[nodiscard]] const std::string& text(const std::string& key) const;

  /// Reals accept an optional trailing "pi" factor: "2pi", "pi", "0.5pi".
  [[nodiscard]] double real(const std::string& key) const;
  [[nodiscard]] long integer(const std::string& key) const;
  [[nodiscard]] std::uint64_t unsigned_integer(const std::string& key) const;
  [[nodiscard]] bool boolean(const std::string& key) const;
  /// "N1xN2", or "N" for a square box.
  [[nodiscard]] Cutoff cutoff(const std::string& key) const;

  /// Lists are separated by commas and/or whitespace.
  [[nodiscard]] std::vector<double> reals(const std::string& key) const;
  [[nodiscard]] std::vector<long> integers(const std::string& key) const;
  [[nodiscard]] std::vector<Cutoff> cutoffs(const std::string& key) const;

  /// Every key with its effective value, defaults included.
  [[nodiscard]] const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  std::map<std::string, std::string> resolved_;
  std::map<std::string, bool> explicit_;
};

}  // namespace euler2d::cli
