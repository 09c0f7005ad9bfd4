#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace euler2d::cli {

inline constexpr const char* kManifestSchema = "euler2d.manifest/1";

std::string sha256_hex(std::string_view bytes);

/// Shortest round-trip decimal form, so text outputs are byte-stable.
std::string format_real(double v);

struct OutputRecord {
  std::string name;
  std::size_t bytes = 0;
  std::string sha256;
};

/// SHA-256 over "name \0 sha256(bytes) \n" for the outputs in name order.
/// Depends only on output contents, never on paths, hosts or timestamps.
std::string determinism_hash(std::vector<OutputRecord> outputs);

/// One run of a subcommand: writes output files into `dir` and, on
/// finish(), the manifest.json describing them. The manifest is the only
/// file that carries wall-clock timestamps and the thread count, and it is
/// excluded from the determinism hash.
class RunRecorder {
 public:
  RunRecorder(std::string subcommand, std::filesystem::path dir, int threads,
              nlohmann::json config_echo);

  void write(const std::string& name, const std::string& bytes);
  nlohmann::json& summary() { return summary_; }
  [[nodiscard]] const std::vector<OutputRecord>& outputs() const { return outputs_; }

  /// Writes manifest.json exactly once and returns `exit_code`.
  int finish(int exit_code, const std::string& status, const std::string& message = {});

 private:
  std::string subcommand_;
  std::filesystem::path dir_;
  int threads_;
  nlohmann::json config_;
  nlohmann::json summary_ = nlohmann::json::object();
  std::string started_at_;
  std::vector<OutputRecord> outputs_;
  bool finished_ = false;
};

}  // namespace euler2d::cli
