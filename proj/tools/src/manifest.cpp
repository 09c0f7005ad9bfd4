#include "euler2d_cli/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "euler2d/harness.hpp"
#include "euler2d/rng.hpp"
#include "euler2d/serialize.hpp"

namespace euler2d::cli {
namespace {

std::string utc_now() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_real failed");
  return {buf.data(), ptr};
}

std::string determinism_hash(std::vector<OutputRecord> outputs) {
  std::sort(outputs.begin(), outputs.end(),
            [](const OutputRecord& a, const OutputRecord& b) { return a.name < b.name; });
  std::string canon;
  for (const auto& o : outputs) {
    canon += o.name;
    canon.push_back('\0');
    canon += o.sha256;
    canon.push_back('\n');
  }
  return sha256_hex(canon);
}

RunRecorder::RunRecorder(std::string subcommand, std::filesystem::path dir, int threads,
                         nlohmann::json config_echo)
    : subcommand_(std::move(subcommand)),
      dir_(std::move(dir)),
      threads_(threads),
      config_(std::move(config_echo)),
      started_at_(utc_now()) {
  std::filesystem::create_directories(dir_);
}

void RunRecorder::write(const std::string& name, const std::string& bytes) {
  const auto path = dir_ / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw std::runtime_error("cannot write " + path.string());
  outputs_.push_back({name, bytes.size(), sha256_hex(bytes)});
}

int RunRecorder::finish(int exit_code, const std::string& status, const std::string& message) {
  if (finished_) throw std::logic_error("manifest already written");
  finished_ = true;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& o : outputs_) {
    files.push_back({{"name", o.name}, {"bytes", o.bytes}, {"sha256", o.sha256}});
  }
  nlohmann::json m = {
      {"schema", kManifestSchema},
      {"subcommand", subcommand_},
      {"code_version", EULER2D_VERSION},
      {"rng_algorithm", std::string(kRngAlgorithm)},
      {"schemas",
       {{"field", kFieldSchema},
        {"ensemble", kEnsembleSchema},
        {"trajectory", kTrajectorySchema},
        {"report", kReportSchema},
        {"manifest", kManifestSchema}}},
      {"config", config_},
      {"threads", threads_},
      {"started_at", started_at_},
      {"finished_at", utc_now()},
      {"status", status},
      {"exit_code", exit_code},
      {"summary", summary_},
      {"outputs", files},
      {"determinism_hash", determinism_hash(outputs_)},
  };
  if (!message.empty()) m["message"] = message;
  std::ofstream os(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
  os << m.dump(2) << '\n';
  if (!os) throw std::runtime_error("cannot write manifest.json");
  return exit_code;
}

}  // namespace euler2d::cli
