#include "euler2d_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "euler2d/gibbs.hpp"
#include "euler2d/harness.hpp"
#include "euler2d/integrator.hpp"
#include "euler2d/parallel.hpp"
#include "euler2d/serialize.hpp"
#include "euler2d/sobolev.hpp"
#include "euler2d_cli/config.hpp"
#include "euler2d_cli/manifest.hpp"

namespace euler2d::cli {
namespace {

using nlohmann::json;

// Family tag for fields drawn by `sample` (and by `evolve` without an input
// file, which therefore starts from ensemble member 0). The harness uses 1-6.
constexpr std::uint64_t kFamilySample = 0;

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::string seed;
  std::string out_dir;
  int threads = 0;
  std::vector<std::string> overrides;
};

/// Problems found after configuration was accepted.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keys --------------------------------------------------------------------

std::vector<KeySpec> gibbs_keys(const char* cutoff_default) {
  return {{"seed", std::nullopt},
          {"gamma", "1"},
          {"period", "2pi"},
          {"cutoff", cutoff_default}};
}

std::vector<KeySpec> integrator_keys(const char* t_final_default) {
  return {{"scheme", "rk4"},
          {"dt", "1e-3"},
          {"t_final", t_final_default},
          {"fixed_point_tol", "1e-12"},
          {"max_fixed_point_iters", "100"}};
}

std::vector<KeySpec> metric_keys() { return {{"lmax", "4"}, {"points_per_unit", "64"}}; }

std::vector<KeySpec> concat(std::initializer_list<std::vector<KeySpec>> parts) {
  std::vector<KeySpec> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<KeySpec> keys_for(const std::string& sub) {
  if (sub == "sample") {
    return concat({gibbs_keys("4x4"), {{"ensemble_size", "1"}, {"write_fields", "true"}}});
  }
  if (sub == "evolve") {
    return concat({gibbs_keys("4x4"),
                   integrator_keys("1"),
                   {{"input", ""},
                    {"field_index", "0"},
                    {"snapshot_stride", "0"},
                    {"roundtrip", "false"},
                    {"roundtrip_tolerance", "1e-8"}}});
  }
  if (sub == "invariance") {
    return concat({gibbs_keys("6x6"),
                   integrator_keys("0.5"),
                   {{"ensemble_size", "1000"},
                    {"bands", ""},
                    {"ks_alpha", "0.01"},
                    {"marginal_pass_fraction", "0.95"},
                    {"mean_window_se", "3"},
                    {"calibration_alpha", "0.01"},
                    {"max_failure_fraction", "0.01"}}});
  }
  if (sub == "moments") {
    return {{"seed", std::nullopt},
            {"gamma", "1"},
            {"period", "2pi"},
            {"cutoffs", "4x4, 8x8, 12x12"},
            {"betas", "-2, -1.5"},
            {"exponents", "1"},
            {"ensemble_size", "2000"},
            {"moment_stability", "0.05"},
            {"require_stable", "true"}};
  }
  if (sub == "cauchy") {
    return concat({{{"seed", std::nullopt},
                    {"gamma", "1"},
                    {"modes_per_unit", "1x1"},
                    {"levels", "2, 3, 4"},
                    {"beta", "-1.5"},
                    {"ensemble_size", "500"},
                    {"require_decreasing", "true"}},
                   metric_keys()});
  }
  if (sub == "continuity") {
    return concat({gibbs_keys("6x6"),
                   integrator_keys("0.5"),
                   metric_keys(),
                   {{"deltas", "0.1, 0.01, 0.001"},
                    {"beta", "-1.5"},
                    {"ensemble_size", "200"},
                    {"continuity_variation", "0.25"}}});
  }
  throw std::logic_error("unknown subcommand " + sub);
}

// Typed readers -------------------------------------------------------------

GibbsParams read_gibbs(const Config& c) {
  GibbsParams p{c.real("gamma"), c.real("period"), c.cutoff("cutoff")};
  p.validate();
  return p;
}

IntegratorConfig read_integrator(const Config& c) {
  IntegratorConfig cfg;
  cfg.scheme = parse_scheme(c.text("scheme"));
  cfg.dt = c.real("dt");
  cfg.t_final = c.real("t_final");
  cfg.fixed_point_tol = c.real("fixed_point_tol");
  cfg.max_fixed_point_iters = static_cast<int>(c.integer("max_fixed_point_iters"));
  cfg.validate();
  return cfg;
}

LocalMetricConfig read_metric(const Config& c) {
  LocalMetricConfig m{static_cast<int>(c.integer("lmax")),
                      static_cast<int>(c.integer("points_per_unit"))};
  if (m.lmax < 1) throw std::invalid_argument("lmax must be >= 1");
  if (m.points_per_unit < 1) throw std::invalid_argument("points_per_unit must be >= 1");
  return m;
}

std::size_t read_size(const Config& c, const std::string& key, std::size_t min) {
  const long v = c.integer(key);
  if (v < static_cast<long>(min)) {
    throw std::invalid_argument(key + " must be >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(v);
}

double read_positive(const Config& c, const std::string& key) {
  const double v = c.real(key);
  if (!(v > 0.0)) throw std::invalid_argument(key + " must be > 0");
  return v;
}

double read_fraction(const Config& c, const std::string& key) {
  const double v = c.real(key);
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(key + " must be in (0, 1)");
  return v;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

bool all_finite(const SpectralField& f) {
  for (const Complex& z : f.coeffs()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// A subcommand splits into validation (errors exit 2) and a run (errors
/// exit 3); the run returns the verdict exit code.
using RunFn = std::function<int(RunRecorder&)>;

// sample --------------------------------------------------------------------

RunFn plan_sample(const Config& c, const RngStream& rng, int threads) {
  const GibbsParams p = read_gibbs(c);
  const std::size_t n = read_size(c, "ensemble_size", 1);
  const bool write_fields = c.boolean("write_fields");
  return [=](RunRecorder& rec) {
    const RngStream family = rng.fork(kFamilySample);
    std::vector<SpectralField> fields(n, SpectralField(p.period, p.cutoff));
    parallel_for(n, threads, [&](std::size_t i) { fields[i] = sample(p, family.with_stream(i)); });

    if (write_fields) {
      std::string jsonl;
      for (std::size_t i = 0; i < n; ++i) {
        jsonl += ensemble_member_to_json(i, fields[i]).dump() + "\n";
      }
      rec.write("ensemble.jsonl", jsonl);
    }

    // Complex Gaussian coefficients have E|a|^4 / (E|a|^2)^2 = 2.
    std::ostringstream csv;
    csv << "k1,k2,abs_k,oracle_variance,empirical_variance,relative_error,fourth_moment_ratio\n";
    double worst = 0.0;
    double worst_fourth = 0.0;
    const auto modes = fields.front().modes();
    for (std::size_t s = 0; s < modes.size(); ++s) {
      double m2 = 0.0, m4 = 0.0;
      for (const auto& f : fields) {
        const double a2 = std::norm(f[s]);
        m2 += a2;
        m4 += a2 * a2;
      }
      m2 /= static_cast<double>(n);
      m4 /= static_cast<double>(n);
      const double ora = variance_oracle(modes[s], p);
      const double rel = std::abs(m2 - ora) / ora;
      const double ratio = m4 / (m2 * m2);
      worst = std::max(worst, rel);
      worst_fourth = std::max(worst_fourth, std::abs(ratio - 2.0) / 2.0);
      csv << modes[s].k1 << ',' << modes[s].k2 << ','
          << format_real(std::sqrt(static_cast<double>(modes[s].norm2()))) << ','
          << format_real(ora) << ',' << format_real(m2) << ',' << format_real(rel) << ','
          << format_real(ratio) << '\n';
    }
    rec.write("variances.csv", csv.str());
    rec.summary() = {{"ensemble_size", n},
                     {"max_relative_variance_error", worst},
                     {"max_relative_fourth_moment_error", worst_fourth}};
    return kExitPass;
  };
}

// evolve --------------------------------------------------------------------

RunFn plan_evolve(const Config& c, const RngStream& rng) {
  IntegratorConfig cfg = read_integrator(c);
  const long stride = c.integer("snapshot_stride");
  if (stride < 0) throw std::invalid_argument("snapshot_stride must be >= 0");
  cfg.snapshot_stride = static_cast<int>(stride);
  const bool roundtrip = c.boolean("roundtrip");
  const double tolerance = read_positive(c, "roundtrip_tolerance");

  SpectralField initial(1.0, {1, 1});
  std::string source;
  if (c.text("input").empty()) {
    const GibbsParams p = read_gibbs(c);
    initial = sample(p, rng.fork(kFamilySample).with_stream(0));
    source = "gibbs sample";
  } else {
    for (const char* k : {"gamma", "period", "cutoff"}) {
      if (c.explicitly_set(k)) {
        throw ConfigError(std::string(k) + ": not allowed with input (taken from the field file)");
      }
    }
    std::ifstream in(c.text("input"), std::ios::binary);
    if (!in) throw ConfigError("input: cannot read '" + c.text("input") + "'");
    const auto fields = read_field_jsonl(in);
    const long idx = c.integer("field_index");
    if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) {
      throw ConfigError("field_index: out of range for " + std::to_string(fields.size()) + " fields");
    }
    initial = fields[static_cast<std::size_t>(idx)];
    source = c.text("input");
  }
  if (!all_finite(initial)) throw ConfigError("input: field has non-finite coefficients");

  return [=](RunRecorder& rec) {
    const GalerkinFlow flow(initial.period(), initial.cutoff());
    const Trajectory traj = flow.evolve(initial, cfg);
    for (const auto& s : traj.samples) {
      if (!all_finite(s.field)) throw NumericFailure("non-finite state at t = " + format_real(s.t));
    }
    std::string jsonl;
    std::ostringstream csv;
    csv << "t,E,S\n";
    for (const auto& s : traj.samples) {
      jsonl += snapshot_to_json(s).dump() + "\n";
      csv << format_real(s.t) << ',' << format_real(energy(s.field)) << ','
          << format_real(enstrophy(s.field)) << '\n';
    }
    rec.write("trajectory.jsonl", jsonl);
    rec.write("trajectory.csv", csv.str());
    rec.summary() = {{"initial", source},
                     {"integrator", to_json(cfg)},
                     {"period", initial.period()},
                     {"cutoff", to_json(initial.cutoff())},
                     {"snapshots", traj.samples.size()},
                     {"energy_drift", traj.energy_drift},
                     {"enstrophy_drift", traj.enstrophy_drift},
                     {"max_fixed_point_iterations", traj.max_fixed_point_iterations}};
    if (!roundtrip) return kExitPass;

    IntegratorConfig back = cfg;
    back.t_final = -cfg.t_final;
    const SpectralField returned = flow.advance(traj.samples.back().field, back);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < initial.size(); ++i) {
      num += std::norm(returned[i] - initial[i]);
      den += std::norm(initial[i]);
    }
    const double error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    const bool pass = error <= tolerance;
    rec.summary()["roundtrip"] = {{"relative_h0_error", error}, {"tolerance", tolerance}, {"pass", pass}};
    return pass ? kExitPass : kExitVerdictFailure;
  };
}

// invariance ----------------------------------------------------------------

std::vector<ObservableSpec> read_bands(const Config& c) {
  std::vector<ObservableSpec> out;
  std::istringstream items(c.text("bands"));
  std::string item;
  while (items >> item) {
    if (!item.empty() && item.back() == ',') item.pop_back();
    if (item.empty()) continue;
    const auto colon = item.find(':');
    ObservableSpec s{ObservableKind::spectrum_band};
    try {
      if (colon == std::string::npos) throw std::invalid_argument("");
      s.band_lo = std::stod(item.substr(0, colon));
      s.band_hi = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("bands: expected lo:hi shell ranges (got '" + item + "')");
    }
    out.push_back(s);
  }
  return out;
}

RunFn plan_invariance(const Config& c, const RngStream& rng, int threads) {
  const GibbsParams p = read_gibbs(c);
  const IntegratorConfig cfg = read_integrator(c);
  const std::size_t n = read_size(c, "ensemble_size", 100);
  auto observables = default_observables(p.cutoff);
  for (auto& b : read_bands(c)) {
    b.validate(p.cutoff);
    observables.push_back(b);
  }
  RunOptions opts;
  opts.threads = threads;
  opts.thresholds.ks_alpha = read_fraction(c, "ks_alpha");
  opts.thresholds.marginal_pass_fraction = read_fraction(c, "marginal_pass_fraction");
  opts.thresholds.mean_window_se = read_positive(c, "mean_window_se");
  opts.thresholds.calibration_alpha = read_fraction(c, "calibration_alpha");
  opts.thresholds.max_failure_fraction = read_fraction(c, "max_failure_fraction");
  return [=](RunRecorder& rec) {
    EnsembleReport r;
    try {
      r = run_invariance(p, cfg, observables, n, rng, opts);
    } catch (const EnsembleAbort& e) {
      throw NumericFailure(e.what());
    }
    rec.write("report.json", dump_json(to_json(r)));
    rec.write("report.csv", to_csv(r));
    json verdicts = json::array();
    for (const auto& v : r.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}});
    rec.summary() = {{"verdicts", verdicts}, {"failures", r.failures}};
    return r.all_pass() ? kExitPass : kExitVerdictFailure;
  };
}

// moments -------------------------------------------------------------------

RunFn plan_moments(const Config& c, const RngStream& rng, int threads) {
  GibbsParams p{c.real("gamma"), c.real("period"), {1, 1}};
  const auto cutoffs = c.cutoffs("cutoffs");
  for (const Cutoff k : cutoffs) {
    p.cutoff = k;
    p.validate();
  }
  const auto betas = c.reals("betas");
  std::vector<int> exps;
  for (long e : c.integers("exponents")) {
    if (e < 1) throw std::invalid_argument("exponents must be >= 1");
    exps.push_back(static_cast<int>(e));
  }
  const std::size_t n = read_size(c, "ensemble_size", 2);
  const bool require = c.boolean("require_stable");
  RunOptions opts;
  opts.threads = threads;
  opts.thresholds.moment_stability = read_fraction(c, "moment_stability");
  p.cutoff = cutoffs.front();
  return [=](RunRecorder& rec) {
    const MomentTable t = moment_scan(p, betas, exps, cutoffs, n, rng, opts);
    rec.write("report.json", dump_json(to_json(t)));
    rec.write("report.csv", to_csv(t));
    json verdicts = json::array();
    bool ok = true;
    for (const auto& v : t.verdicts) {
      verdicts.push_back({{"beta", v.beta}, {"p", v.p}, {"verdict", v.verdict}});
      ok = ok && v.verdict == "stable";
    }
    rec.summary() = {{"verdicts", verdicts}, {"require_stable", require}};
    return (!require || ok) ? kExitPass : kExitVerdictFailure;
  };
}

// cauchy --------------------------------------------------------------------

RunFn plan_cauchy(const Config& c, const RngStream& rng, int threads) {
  const GibbsParams base{c.real("gamma"), 1.0, c.cutoff("modes_per_unit")};
  base.validate();
  std::vector<int> levels;
  for (long l : c.integers("levels")) levels.push_back(static_cast<int>(l));
  const double beta = c.real("beta");
  if (!(beta < 1.0)) throw std::invalid_argument("beta must be < 1");
  const std::size_t n = read_size(c, "ensemble_size", 2);
  const LocalMetricConfig metric = read_metric(c);
  const bool require = c.boolean("require_decreasing");
  RunOptions opts;
  opts.threads = threads;
  return [=](RunRecorder& rec) {
    const CauchyTable t = cauchy_scan(base, levels, beta, n, rng, metric, opts);
    rec.write("report.json", dump_json(to_json(t)));
    rec.write("report.csv", to_csv(t));
    rec.summary() = {{"strictly_decreasing", t.strictly_decreasing},
                     {"require_decreasing", require}};
    return (!require || t.strictly_decreasing) ? kExitPass : kExitVerdictFailure;
  };
}

// continuity ----------------------------------------------------------------

RunFn plan_continuity(const Config& c, const RngStream& rng, int threads) {
  const GibbsParams p = read_gibbs(c);
  const IntegratorConfig cfg = read_integrator(c);
  const LocalMetricConfig metric = read_metric(c);
  const auto deltas = c.reals("deltas");
  for (double d : deltas) {
    if (!(d >= 0.0)) throw std::invalid_argument("deltas must be >= 0");
  }
  const SobolevOrder beta{c.real("beta")};
  const std::size_t n = read_size(c, "ensemble_size", 2);
  RunOptions opts;
  opts.threads = threads;
  opts.thresholds.continuity_variation = read_positive(c, "continuity_variation");
  return [=](RunRecorder& rec) {
    const ContinuityTable t = continuity_probe(p, cfg, deltas, n, rng, beta, metric, opts);
    rec.write("report.json", dump_json(to_json(t)));
    rec.write("report.csv", to_csv(t));
    rec.summary() = {{"median_nondecreasing", t.median_nondecreasing},
                     {"ratio_variation", t.ratio_variation},
                     {"ratio_stable", t.ratio_stable},
                     {"failures", t.failures}};
    return (t.median_nondecreasing && t.ratio_stable) ? kExitPass : kExitVerdictFailure;
  };
}

// Dispatch ------------------------------------------------------------------

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  RunFn run;
  json echo;
  int threads = inv.threads;
  try {
    RawConfig raw;
    if (!inv.config_path.empty()) raw = load_config_file(inv.config_path);
    for (const auto& o : inv.overrides) apply_override(raw, o);
    if (!inv.seed.empty()) raw.values["seed"] = inv.seed;
    const Config cfg(raw, keys_for(inv.subcommand));
    const RngStream rng{cfg.unsigned_integer("seed"), 0};
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    const auto& sub = inv.subcommand;
    if (sub == "sample") run = plan_sample(cfg, rng, threads);
    else if (sub == "evolve") run = plan_evolve(cfg, rng);
    else if (sub == "invariance") run = plan_invariance(cfg, rng, threads);
    else if (sub == "moments") run = plan_moments(cfg, rng, threads);
    else if (sub == "cauchy") run = plan_cauchy(cfg, rng, threads);
    else run = plan_continuity(cfg, rng, threads);
    echo = cfg.resolved();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  RunRecorder rec(inv.subcommand, inv.out_dir, threads, echo);
  try {
    const int code = run(rec);
    out << inv.subcommand << ": " << (code == kExitPass ? "pass" : "verdict failure")
        << " (hash " << determinism_hash(rec.outputs()) << ")\n";
    return rec.finish(code, code == kExitPass ? "pass" : "verdict_failure");
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return rec.finish(kExitNumericFailure, "numeric_failure", e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galerkin-truncated 2D Euler flow with Gibbs initial data"};
  app.require_subcommand(1);
  Invocation inv;

  const std::vector<std::pair<const char*, const char*>> subs = {
      {"sample", "draw a Gibbs ensemble and per-mode variances"},
      {"evolve", "integrate one field and record its trajectory"},
      {"invariance", "KS test of the Gibbs measure under the flow"},
      {"moments", "drift moments across cutoffs"},
      {"cauchy", "dyadic infinite-volume convergence scan"},
      {"continuity", "sensitivity of the flow to perturbations"},
  };
  for (const auto& [name, help] : subs) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", inv.config_path, "key = value configuration file");
    s->add_option("--seed", inv.seed, "master seed (overrides the config)");
    s->add_option("--out", inv.out_dir, "output directory")->required();
    s->add_option("--threads", inv.threads, "worker threads (results do not depend on it)");
    s->add_option("--set", inv.overrides, "override one key: --set key=value")->take_all();
    s->callback([&inv, n = std::string(name)] { inv.subcommand = n; });
  }

  std::vector<std::string> argv_store{"euler2d"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (inv.threads < 0) {
    err << "config error: --threads must be >= 0\n";
    return kExitConfigError;
  }
  return execute(inv, out, err);
}

}  // namespace euler2d::cli
