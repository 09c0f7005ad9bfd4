// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes except those listed in
// kKnownRed, which must still be reported as FAIL. A known-red criterion that
// passes is treated as an error too, so the list cannot silently go stale.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "euler2d/drift.hpp"
#include "euler2d/gibbs.hpp"
#include "euler2d/serialize.hpp"
#include "euler2d/sobolev.hpp"
#include "euler2d_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace euler2d;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;

// Criteria that cannot hold for the model as specified. The reason is
// printed next to the FAIL line.
const std::map<int, std::string> kKnownRed = {
    {9,
     "the enstrophy-Gibbs stream function is infrared divergent: its point variance grows like "
     "L^2 and the lowest modes of D^beta Phi_L grow like L^(5/2) at beta = -1.5, so neither "
     "sequence can settle"},
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

// CLI plumbing ---------------------------------------------------------------

fs::path g_root;
int g_run_counter = 0;

struct CliRun {
  std::vector<std::string> args;  // without --out / --threads
  std::string hash;
};
std::vector<CliRun> g_cli_runs;

struct CliResult {
  int code = -1;
  fs::path dir;
  json manifest;
};

CliResult cli_once(const std::vector<std::string>& args, int threads) {
  CliResult r;
  r.dir = g_root / ("run" + std::to_string(++g_run_counter));
  fs::remove_all(r.dir);
  auto full = args;
  full.insert(full.end(), {"--out", r.dir.string(), "--threads", std::to_string(threads)});
  std::ostringstream out, err;
  r.code = cli::run_cli(full, out, err);
  if (fs::exists(r.dir / "manifest.json")) {
    std::ifstream in(r.dir / "manifest.json");
    r.manifest = json::parse(in);
  } else {
    std::cerr << "cli run produced no manifest: " << err.str();
  }
  return r;
}

/// Runs the CLI and remembers the invocation for the reproducibility check.
CliResult cli(const std::vector<std::string>& args) {
  CliResult r = cli_once(args, 1);
  if (r.manifest.contains("determinism_hash")) {
    g_cli_runs.push_back({args, r.manifest["determinism_hash"].get<std::string>()});
  } else {
    g_cli_runs.push_back({args, ""});
  }
  return r;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::vector<std::string> seeded(std::vector<std::string> args) {
  args.insert(args.begin() + 1, {"--seed", std::to_string(kSeed)});
  return args;
}

double h0(const SpectralField& a, const SpectralField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double h0(const SpectralField& a) {
  double s = 0.0;
  for (const Complex& z : a.coeffs()) s += std::norm(z);
  return std::sqrt(s);
}

// 1. Triad kernel -----------------------------------------------------------

// Written from the closed form in long double, term by term.
long double alpha_reference(int h1, int h2, int k1, int k2, long double L) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double hperp_k = static_cast<long double>(-h2) * k1 + static_cast<long double>(h1) * k2;
  const long double k_h = static_cast<long double>(k1) * h1 + static_cast<long double>(k2) * h2;
  const long double k_sq = static_cast<long double>(k1) * k1 + static_cast<long double>(k2) * k2;
  const long double pref = (1.0L / L) * (2.0L * pi / L) * (2.0L * pi / L);
  return pref * (hperp_k * k_h / k_sq - hperp_k / 2.0L);
}

Outcome triad_kernel() {
  std::mt19937_64 gen(kSeed);
  std::uniform_int_distribution<int> comp(-40, 40);
  std::uniform_real_distribution<double> period(0.5, 20.0);
  double worst = 0.0;
  int exact_zero_mismatch = 0;
  int checked = 0;
  while (checked < 10000) {
    const ModeIndex h{comp(gen), comp(gen)};
    const ModeIndex k{comp(gen), comp(gen)};
    if (h.is_zero() || k.is_zero()) continue;
    const double L = period(gen);
    ++checked;
    const double ours = alpha(h, k, L);
    const long double ref = alpha_reference(h.k1, h.k2, k.k1, k.k2, L);
    const std::int64_t num = dot(h.perp(), k) * (2 * dot(k, h) - k.norm2());
    if (num == 0) {
      if (ours != 0.0) ++exact_zero_mismatch;
      continue;
    }
    worst = std::max(worst, static_cast<double>(std::fabs((ours - ref) / ref)));
  }
  int parallel_nonzero = 0;
  int parallel = 0;
  std::uniform_int_distribution<int> mult(-6, 6);
  while (parallel < 2000) {
    const ModeIndex v{comp(gen) / 4, comp(gen) / 4};
    const int a = mult(gen);
    const int b = mult(gen);
    if (v.is_zero() || a == 0 || b == 0) continue;
    ++parallel;
    if (alpha(a * v, b * v, period(gen)) != 0.0) ++parallel_nonzero;
  }
  const bool pass = worst <= 1e-14 && exact_zero_mismatch == 0 && parallel_nonzero == 0;
  return {pass, "max relative error " + sci(worst) + " over 10000 triples (tol 1e-14); " +
                    std::to_string(parallel_nonzero) + "/2000 parallel pairs nonzero"};
}

// 2. Drift oracle equivalence -------------------------------------------------

Outcome drift_equivalence() {
  struct Case {
    double period;
    Cutoff cutoff;
    int count;
  };
  const std::vector<Case> cases{{2.0 * kPi, {8, 8}, 40},
                                {2.0 * kPi, {4, 4}, 20},
                                {1.0, {6, 3}, 20},
                                {10.0, {3, 7}, 20}};
  double worst = 0.0;
  int total = 0;
  const RngStream family = RngStream{kSeed}.fork(100);
  for (const auto& c : cases) {
    const GibbsParams p{1.0, c.period, c.cutoff};
    const int grid = 4 * c.cutoff.max_component();
    for (int i = 0; i < c.count; ++i) {
      const auto f = sample(p, family.with_stream(static_cast<std::uint64_t>(total++)));
      const auto direct = drift(f).field;
      const auto oracle = drift_pseudospectral(f, grid).field;
      worst = std::max(worst, h0(direct, oracle) / h0(oracle));
    }
  }
  return {worst <= 1e-10, "max relative H^0 difference " + sci(worst) + " over " +
                              std::to_string(total) + " Gibbs samples (tol 1e-10)"};
}

// 3. Exact steady states -------------------------------------------------------

Outcome steady_states() {
  const double L = 2.0 * kPi;
  const Cutoff box{8, 8};
  std::vector<SpectralField> fields;
  SpectralField single(L, box);
  single.set({3, -2}, {0.7, -0.4});
  fields.push_back(single);
  std::mt19937_64 gen(kSeed);
  std::normal_distribution<double> normal;
  for (std::int64_t shell : {25, 50, 65}) {
    SpectralField f(L, box);
    for (const ModeIndex k : f.modes()) {
      if (k.norm2() == shell) f.set(k, {normal(gen), normal(gen)});
    }
    fields.push_back(f);
  }
  const fs::path input = g_root / "steady_states.jsonl";
  {
    std::ofstream os(input);
    write_field_jsonl(os, fields);
  }
  double worst = 0.0;
  bool ran = true;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto r = cli(seeded({"evolve", "--set", "input=" + input.string(), "--set",
                               "field_index=" + std::to_string(i), "--set", "scheme=rk4", "--set",
                               "dt=1e-3", "--set", "t_final=10"}));
    if (r.code != 0) {
      ran = false;
      continue;
    }
    std::ifstream in(r.dir / "trajectory.jsonl");
    const auto snaps = read_field_jsonl(in);
    worst = std::max(worst, h0(snaps.back(), fields[i]));
  }
  return {ran && worst <= 1e-10, "max H^0 displacement " + sci(worst) +
                                     " at t = 10 over 1 single-mode and 3 shell fields (tol 1e-10)"};
}

// 4. Conservation ---------------------------------------------------------------

Outcome conservation() {
  std::mt19937_64 gen(kSeed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> period(0.5, 12.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SpectralField f(period(gen), {size(gen), size(gen)});
    const auto modes = f.modes();
    for (std::size_t s = 0; s < f.size(); ++s) {
      const double amp = std::pow(static_cast<double>(modes[s].norm2()), -1.0);
      f[s] = {amp * normal(gen), amp * normal(gen)};
    }
    const auto b = drift(f).field;
    for (const auto [functional, exponent] :
         {std::pair{Functional::energy, 2.0}, std::pair{Functional::enstrophy, 4.0}}) {
      double scale = 0.0;
      for (std::size_t s = 0; s < f.size(); ++s) {
        scale += 2.0 * std::pow(wavenumber(modes[s], f.period()), exponent) * std::abs(f[s]) *
                 std::abs(b[s]);
      }
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(quadratic_derivative(f, functional)) / scale);
    }
  }

  const auto r = cli(seeded({"evolve", "--set", "cutoff=8x8", "--set", "scheme=implicit_midpoint",
                             "--set", "dt=1e-2", "--set", "t_final=5", "--set",
                             "snapshot_stride=1"}));
  double drift_max = std::numeric_limits<double>::infinity();
  if (r.code == 0) {
    const auto rows = read_csv(r.dir / "trajectory.csv");
    const double s0 = std::stod(rows.at(1).at(2));
    drift_max = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      drift_max = std::max(drift_max, std::abs(std::stod(rows[i].at(2)) - s0) / s0);
    }
  }
  return {worst <= 1e-10 && drift_max <= 1e-8,
          "max relative dE/dt, dS/dt " + sci(worst) + " over 1000 fields (tol 1e-10); midpoint "
          "enstrophy drift " + sci(drift_max) + " over t = 5 (tol 1e-8)"};
}

// 5. Liouville ---------------------------------------------------------------------

Outcome liouville() {
  const GibbsParams p{1.0, 2.0 * kPi, {4, 4}};
  const RngStream family = RngStream{kSeed}.fork(101);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto est = jacobian_trace_estimate(sample(p, family.with_stream(i)));
    worst = std::max(worst, std::abs(est.trace) / est.frobenius);
  }
  return {worst <= 1e-6, "max |trace| / Frobenius " + sci(worst) + " at 10 Gibbs points (tol 1e-6)"};
}

// 6. Sampler exactness ---------------------------------------------------------------

Outcome sampler() {
  const auto r = cli(seeded({"sample", "--set", "cutoff=4x4", "--set", "gamma=1", "--set",
                             "period=2pi", "--set", "ensemble_size=100000", "--set",
                             "write_fields=false"}));
  if (r.code != 0) return {false, "sample run failed"};
  const auto rows = read_csv(r.dir / "variances.csv");
  double worst_var = 0.0;
  double worst_fourth = 0.0;
  int modes = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i].at(2)) > 4.0 + 1e-12) continue;
    ++modes;
    worst_var = std::max(worst_var, std::stod(rows[i].at(5)));
    worst_fourth = std::max(worst_fourth, std::abs(std::stod(rows[i].at(6)) - 2.0) / 2.0);
  }
  return {worst_var <= 0.03 && worst_fourth <= 0.05,
          std::to_string(modes) + " modes with |k| <= 4, N = 1e5: max variance error " +
              sci(worst_var) + " (tol 0.03), max fourth-moment ratio error " +
              sci(worst_fourth) + " (tol 0.05)"};
}

// 7. Invariance -----------------------------------------------------------------------

bool verdict(const json& report, const std::string& name) {
  for (const auto& v : report["verdicts"]) {
    if (v["name"] == name) return v["pass"].get<bool>();
  }
  return false;
}

Outcome invariance() {
  const std::vector<std::string> base{"invariance", "--set", "period=2pi", "--set", "gamma=1",
                                      "--set", "cutoff=6x6", "--set", "dt=1e-3", "--set",
                                      "ensemble_size=4000"};
  auto headline_args = base;
  headline_args.insert(headline_args.end(), {"--set", "t_final=0.5"});
  auto null_args = base;
  null_args.insert(null_args.end(), {"--set", "t_final=0"});
  const auto head = cli(seeded(headline_args));
  const auto null = cli(seeded(null_args));
  if (head.code == 3 || null.code == 3 || !fs::exists(head.dir / "report.json") ||
      !fs::exists(null.dir / "report.json")) {
    return {false, "invariance run failed"};
  }
  const json h = read_json(head.dir / "report.json");
  const json n = read_json(null.dir / "report.json");
  const bool marg = verdict(h, "mode_marginals");
  const bool en = verdict(h, "energy_mean");
  const bool ens = verdict(h, "enstrophy_mean");
  const bool cal = verdict(n, "null_calibration");
  return {marg && en && ens && cal,
          "marginal pass fraction " + sci(h["marginal_pass_fraction"].get<double>()) +
              " (>= 0.95); energy mean " + (en ? "ok" : "off") + ", enstrophy mean " +
              (ens ? "ok" : "off") + "; t = 0 calibration p = " +
              sci(n["calibration"]["p_value"].get<double>()) + " (>= 0.01)"};
}

// 8. Moment bounds --------------------------------------------------------------------

Outcome moments() {
  const auto r = cli(seeded({"moments", "--set", "betas=-2,-1.5,-0.9", "--set", "exponents=1",
                             "--set", "cutoffs=4x4,8x8,12x12", "--set", "ensemble_size=2000",
                             "--set", "require_stable=false"}));
  if (r.code != 0) return {false, "moments run failed"};
  const json t = read_json(r.dir / "report.json");
  bool pass = true;
  std::string detail;
  for (const auto& v : t["verdicts"]) {
    const double beta = v["beta"].get<double>();
    const double change = v["last_relative_change"].get<double>();
    const bool inc = v["strictly_increasing"].get<bool>();
    const bool ok = beta < -1.0 ? change < 0.05 : inc;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += "beta " + sci(beta) + ": last change " + sci(change) +
              (inc ? ", increasing" : ", not increasing") + (ok ? "" : " [x]");
  }
  return {pass, detail};
}

// 9. Infinite-volume convergence -------------------------------------------------------

Outcome infinite_volume() {
  const std::vector<std::pair<Point, Point>> probes{
      {{0.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.5, 0.25}}, {{0.3, 0.7}, {1.3, 0.2}}};
  double worst_change = 0.0;
  std::string cov;
  for (const auto& [x, y] : probes) {
    std::vector<double> c;
    for (int m = 1; m <= 4; m *= 2) {
      const GibbsParams p{1.0, 2.0 * kPi * m, {4 * m, 4 * m}};
      c.push_back(field_covariance(p, x, y));
    }
    worst_change = std::max(worst_change, std::abs(c[2] - c[1]) / std::abs(c[1]));
    if (cov.empty()) cov = sci(c[0]) + ", " + sci(c[1]) + ", " + sci(c[2]);
  }
  const bool cov_ok = worst_change < 0.10;

  const auto r = cli(seeded({"cauchy", "--set", "levels=2,3,4", "--set", "beta=-1.5", "--set",
                             "ensemble_size=500", "--set", "require_decreasing=false"}));
  bool dec = false;
  std::string seq;
  if (r.code == 0) {
    const json t = read_json(r.dir / "report.json");
    dec = t["strictly_decreasing"].get<bool>();
    for (const auto& row : t["rows"]) {
      if (!seq.empty()) seq += ", ";
      seq += sci(row["mean_d2"].get<double>());
    }
  }
  return {cov_ok && dec, "covariance at x = y over L = 2pi, 4pi, 8pi: " + cov +
                             "; worst final-doubling change " + sci(worst_change) +
                             " (tol 0.10); dyadic E d^2 for n = 2, 3, 4: " + seq +
                             (dec ? " (decreasing)" : " (not decreasing)")};
}

// 10. Continuity ------------------------------------------------------------------------

Outcome continuity() {
  const auto r = cli(seeded({"continuity", "--set", "deltas=0.1,0.01,0.001", "--set",
                             "t_final=0.5", "--set", "ensemble_size=200"}));
  if (r.code == 3 || !fs::exists(r.dir / "report.json")) return {false, "continuity run failed"};
  const json t = read_json(r.dir / "report.json");
  const double var = t["ratio_variation"].get<double>();
  std::string ratios;
  for (const auto& row : t["rows"]) {
    if (!ratios.empty()) ratios += ", ";
    ratios += sci(row["median_ratio"].get<double>());
  }
  return {var < 0.25, "median ratios " + ratios + "; variation over the two smallest deltas " +
                          sci(var) + " (tol 0.25)"};
}

// 11. Reproducibility -------------------------------------------------------------------

Outcome reproducibility() {
  int same_seed_mismatch = 0;
  int thread_mismatch = 0;
  int missing = 0;
  const auto runs = g_cli_runs;
  for (const auto& run : runs) {
    if (run.hash.empty()) {
      ++missing;
      continue;
    }
    const auto again = cli_once(run.args, 1);
    const auto threaded = cli_once(run.args, 3);
    if (again.manifest.value("determinism_hash", "") != run.hash) ++same_seed_mismatch;
    if (threaded.manifest.value("determinism_hash", "") != run.hash) ++thread_mismatch;
  }
  const bool pass = same_seed_mismatch == 0 && thread_mismatch == 0 && missing == 0 && !runs.empty();
  return {pass, std::to_string(runs.size()) + " CLI runs repeated: " +
                    std::to_string(same_seed_mismatch) + " hash mismatches on rerun, " +
                    std::to_string(thread_mismatch) + " with 3 threads instead of 1, " +
                    std::to_string(missing) + " without a manifest"};
}

}  // namespace

int main() {
  const char* dir = std::getenv("EULER2D_ACCEPTANCE_DIR");
  g_root = dir ? fs::path(dir) : fs::temp_directory_path() / "euler2d_acceptance";
  fs::remove_all(g_root);
  fs::create_directories(g_root);

  struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "triad kernel", 1.0, triad_kernel},
      {2, "drift oracle equivalence", 60.0, drift_equivalence},
      {3, "exact steady states", 60.0, steady_states},
      {4, "conservation", 120.0, conservation},
      {5, "Liouville property", 60.0, liouville},
      {6, "sampler exactness", 60.0, sampler},
      {7, "invariance", 900.0, invariance},
      {8, "moment bounds", 300.0, moments},
      {9, "infinite-volume convergence", 300.0, infinite_volume},
      {10, "continuity", 300.0, continuity},
      {11, "reproducibility", 1800.0, reproducibility},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= c.budget_seconds;
    const bool pass = o.pass && in_budget;
    std::ostringstream line;
    line << "criterion " << std::setw(2) << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  "
         << c.title << " (" << std::fixed << std::setprecision(1) << secs << " s, budget "
         << c.budget_seconds << " s): " << o.detail;
    if (!in_budget) line << " [over runtime budget]";
    const auto known = kKnownRed.find(c.id);
    if (known != kKnownRed.end()) {
      if (pass) {
        line << " [listed as known red but passed]";
        ++unexpected;
      } else {
        line << " [known red: " << known->second << "]";
      }
    } else if (!pass) {
      ++unexpected;
    }
    std::cout << line.str() << std::endl;
  }
  std::cout << (unexpected == 0 ? "acceptance: all criteria as expected"
                                 : "acceptance: " + std::to_string(unexpected) +
                                       " unexpected result(s)")
            << std::endl;
  return unexpected == 0 ? 0 : 1;
}
