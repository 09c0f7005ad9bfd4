#include "euler2d/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "euler2d/parallel.hpp"
#include "euler2d/serialize.hpp"

namespace euler2d {

using nlohmann::json;

namespace {

// Family tags for RngStream::fork.
constexpr std::uint64_t kFamilyFresh = 1;
constexpr std::uint64_t kFamilyEvolved = 2;
constexpr std::uint64_t kFamilyMoments = 3;
constexpr std::uint64_t kFamilyContinuityBase = 4;
constexpr std::uint64_t kFamilyContinuityPerturbation = 5;
constexpr std::uint64_t kFamilyCauchy = 6;

std::string kind_name(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::coeff_real: return "coeff_real";
    case ObservableKind::coeff_imag: return "coeff_imag";
    case ObservableKind::coeff_abs2: return "coeff_abs2";
    case ObservableKind::energy: return "energy";
    case ObservableKind::enstrophy: return "enstrophy";
    case ObservableKind::sobolev_norm: return "sobolev_norm";
    case ObservableKind::spectrum_band: return "spectrum_band";
  }
  return "unknown";
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string ObservableSpec::name() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (is_mode_marginal()) os << '(' << mode.k1 << ',' << mode.k2 << ')';
  if (kind == ObservableKind::sobolev_norm) os << '(' << beta << ')';
  if (kind == ObservableKind::spectrum_band) os << '[' << band_lo << ',' << band_hi << ']';
  return os.str();
}

double ObservableSpec::evaluate(const SpectralField& f) const {
  switch (kind) {
    case ObservableKind::coeff_real: return f.at(mode).real();
    case ObservableKind::coeff_imag: return f.at(mode).imag();
    case ObservableKind::coeff_abs2: return std::norm(f.at(mode));
    case ObservableKind::energy: return euler2d::energy(f);
    case ObservableKind::enstrophy: return euler2d::enstrophy(f);
    case ObservableKind::sobolev_norm: return euler2d::sobolev_norm(f, {beta});
    case ObservableKind::spectrum_band: {
      double sum = 0.0;
      const auto modes = f.modes();
      for (std::size_t s = 0; s < f.size(); ++s) {
        const double r = std::sqrt(static_cast<double>(modes[s].norm2()));
        if (r >= band_lo && r <= band_hi) sum += std::norm(f[s]);
      }
      return sum;
    }
  }
  return 0.0;
}

void ObservableSpec::validate(Cutoff cutoff) const {
  if (is_mode_marginal() && (!is_positive(mode) || !cutoff.contains(mode))) {
    throw std::invalid_argument("observable " + name() + ": mode is not a positive mode of the box");
  }
  if (kind == ObservableKind::sobolev_norm && !std::isfinite(beta)) {
    throw std::invalid_argument("observable " + name() + ": beta must be finite");
  }
  if (kind == ObservableKind::spectrum_band && !(band_lo >= 0.0 && band_hi >= band_lo)) {
    throw std::invalid_argument("observable " + name() + ": need 0 <= band_lo <= band_hi");
  }
}

std::vector<ObservableSpec> default_observables(Cutoff cutoff) {
  std::vector<ObservableSpec> out;
  for (const ModeIndex k : mode_box(cutoff)) {
    out.push_back({ObservableKind::coeff_real, k});
    out.push_back({ObservableKind::coeff_imag, k});
  }
  out.push_back({ObservableKind::energy});
  out.push_back({ObservableKind::enstrophy});
  return out;
}

bool EnsembleReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

EnsembleReport run_invariance(const GibbsParams& p, const IntegratorConfig& cfg,
                              const std::vector<ObservableSpec>& observables, std::size_t n,
                              const RngStream& rng, const RunOptions& options) {
  p.validate();
  cfg.validate();
  if (n < 100) throw std::invalid_argument("run_invariance: ensemble size must be >= 100");
  for (const auto& o : observables) o.validate(p.cutoff);

  const std::size_t nobs = observables.size();
  const RngStream fresh = rng.fork(kFamilyFresh);
  const RngStream evolved = rng.fork(kFamilyEvolved);
  const GalerkinFlow flow(p.period, p.cutoff);

  // Column-major: values[o * n + i].
  std::vector<double> pre(nobs * n), post(nobs * n);
  std::vector<double> e_pre(n), e_post(n), s_pre(n), s_post(n);
  std::vector<double> e_drift(n), s_drift(n);
  std::vector<char> ok(n, 1);

  parallel_for(n, options.threads, [&](std::size_t i) {
    const SpectralField a = sample(p, fresh.with_stream(i));
    for (std::size_t o = 0; o < nobs; ++o) pre[o * n + i] = observables[o].evaluate(a);
    e_pre[i] = energy(a);
    s_pre[i] = enstrophy(a);

    const SpectralField b0 = sample(p, evolved.with_stream(i));
    try {
      const SpectralField b = flow.advance(b0, cfg);
      bool finite = true;
      for (const auto& c : b.coeffs()) finite = finite && std::isfinite(c.real()) && std::isfinite(c.imag());
      if (!finite) throw FixedPointError("non-finite state");
      for (std::size_t o = 0; o < nobs; ++o) post[o * n + i] = observables[o].evaluate(b);
      e_post[i] = energy(b);
      s_post[i] = enstrophy(b);
      const double e0 = energy(b0);
      const double s0 = enstrophy(b0);
      e_drift[i] = std::abs(e_post[i] - e0) / std::max(std::abs(e0), 1.0);
      s_drift[i] = std::abs(s_post[i] - s0) / std::max(std::abs(s0), 1.0);
    } catch (const FixedPointError&) {
      ok[i] = 0;
    }
  });

  EnsembleReport r;
  r.params = p;
  r.integrator = cfg;
  r.rng = rng;
  r.ensemble_size = n;
  r.thresholds = options.thresholds;
  r.failures = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));
  if (static_cast<double>(r.failures) > options.thresholds.max_failure_fraction * static_cast<double>(n)) {
    throw EnsembleAbort("run_invariance: " + std::to_string(r.failures) + " of " +
                        std::to_string(n) + " trajectories failed");
  }

  const auto kept = [&](const std::vector<double>& v, std::size_t offset) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (ok[i]) out.push_back(v[offset + i]);
    }
    return out;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) continue;
    r.max_energy_drift = std::max(r.max_energy_drift, e_drift[i]);
    r.max_enstrophy_drift = std::max(r.max_enstrophy_drift, s_drift[i]);
  }
  r.energy_pre = summarize(e_pre);
  r.enstrophy_pre = summarize(s_pre);
  r.energy_post = summarize(kept(e_post, 0));
  r.enstrophy_post = summarize(kept(s_post, 0));

  std::vector<double> pvalues;
  std::size_t marginal_total = 0;
  std::size_t marginal_pass = 0;
  for (std::size_t o = 0; o < nobs; ++o) {
    const std::span<const double> a(pre.data() + o * n, n);
    const auto b = kept(post, o * n);
    ObservableResult res{observables[o], summarize(a), summarize(b), ks_two_sample(a, b)};
    pvalues.push_back(res.ks.p_value);
    if (res.spec.is_mode_marginal()) {
      ++marginal_total;
      if (res.ks.p_value >= options.thresholds.ks_alpha) ++marginal_pass;
    }
    r.observables.push_back(std::move(res));
  }

  const Thresholds& th = options.thresholds;
  if (marginal_total > 0) {
    r.marginal_pass_fraction = static_cast<double>(marginal_pass) / static_cast<double>(marginal_total);
    r.verdicts.push_back({"mode_marginals", r.marginal_pass_fraction >= th.marginal_pass_fraction,
                          std::to_string(marginal_pass) + "/" + std::to_string(marginal_total) +
                              " KS tests with p >= " + fmt_double(th.ks_alpha)});
  }

  const auto mean_verdict = [&](const char* name, const SummaryStats& a, const SummaryStats& b,
                                double drift) {
    const double se = std::hypot(a.std_error, b.std_error);
    const double diff = std::abs(a.mean - b.mean);
    const double window = th.mean_window_se * se + drift * std::abs(a.mean);
    r.verdicts.push_back({name, diff <= window,
                          "|diff| = " + fmt_double(diff) + ", window = " + fmt_double(window) +
                              " (" + fmt_double(diff / se) + " combined SE)"});
  };
  mean_verdict("energy_mean", r.energy_pre, r.energy_post, r.max_energy_drift);
  mean_verdict("enstrophy_mean", r.enstrophy_pre, r.enstrophy_post, r.max_enstrophy_drift);

  if (!pvalues.empty()) {
    r.calibration = chi_square_uniform(pvalues, 10);
    r.verdicts.push_back({"null_calibration", r.calibration.p_value >= th.calibration_alpha,
                          "chi-square on p-value deciles: stat = " +
                              fmt_double(r.calibration.statistic) +
                              ", p = " + fmt_double(r.calibration.p_value)});
  }
  return r;
}

MomentTable moment_scan(const GibbsParams& p, const std::vector<double>& betas,
                        const std::vector<int>& pexps, const std::vector<Cutoff>& cutoffs,
                        std::size_t n, const RngStream& rng, const RunOptions& options) {
  if (betas.empty() || pexps.empty() || cutoffs.empty()) {
    throw std::invalid_argument("moment_scan: betas, exponents and cutoffs must be nonempty");
  }
  if (n < 2) throw std::invalid_argument("moment_scan: need at least 2 samples");
  for (int e : pexps) {
    if (e < 1) throw std::invalid_argument("moment_scan: exponents must be >= 1");
  }
  const RngStream family = rng.fork(kFamilyMoments);
  const std::size_t nb = betas.size();

  MomentTable table;
  table.params = p;
  table.rng = rng;
  table.ensemble_size = n;
  table.cutoffs = cutoffs;
  table.thresholds = options.thresholds;

  // means[c][b][e]
  std::vector<std::vector<std::vector<double>>> means(cutoffs.size());
  for (std::size_t c = 0; c < cutoffs.size(); ++c) {
    GibbsParams pc = p;
    pc.cutoff = cutoffs[c];
    pc.validate();
    const DriftOperator op(pc.period, pc.cutoff);
    std::vector<double> sq(nb * n);  // ||B||^2_beta per sample
    parallel_for(n, options.threads, [&](std::size_t i) {
      const SpectralField f = sample(pc, family.with_stream(i));
      const SpectralField b = op(f);
      for (std::size_t k = 0; k < nb; ++k) {
        const double v = sobolev_norm(b, {betas[k]});
        sq[k * n + i] = v * v;
      }
    });
    means[c].resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      for (int e : pexps) {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = std::pow(sq[k * n + i], e);
        const SummaryStats s = summarize(xs);
        table.rows.push_back({cutoffs[c], betas[k], e, s.mean, s.std_error});
        means[c][k].push_back(s.mean);
      }
    }
  }

  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t e = 0; e < pexps.size(); ++e) {
      MomentVerdict v{betas[k], pexps[e], 0.0, true, ""};
      for (std::size_t c = 1; c < cutoffs.size(); ++c) {
        v.strictly_increasing = v.strictly_increasing && means[c][k][e] > means[c - 1][k][e];
      }
      if (cutoffs.size() >= 2) {
        const double last = means.back()[k][e];
        const double prev = means[cutoffs.size() - 2][k][e];
        v.last_relative_change = std::abs(last - prev) / std::abs(prev);
      }
      if (cutoffs.size() < 2) {
        v.strictly_increasing = false;
        v.verdict = "unstable";
      } else if (v.last_relative_change < options.thresholds.moment_stability) {
        v.verdict = "stable";
      } else if (v.strictly_increasing) {
        v.verdict = "divergence signature";
      } else {
        v.verdict = "unstable";
      }
      table.verdicts.push_back(v);
    }
  }
  return table;
}

CauchyTable cauchy_scan(const GibbsParams& base, const std::vector<int>& n_values, double beta,
                        std::size_t n, const RngStream& rng, const LocalMetricConfig& metric,
                        const RunOptions& options) {
  if (!(beta < 1.0)) throw std::invalid_argument("cauchy_scan: beta must be < 1");
  if (n_values.empty()) throw std::invalid_argument("cauchy_scan: no levels");
  if (n < 2) throw std::invalid_argument("cauchy_scan: need at least 2 samples");
  const RngStream family = rng.fork(kFamilyCauchy);

  CauchyTable table;
  table.base = base;
  table.rng = rng;
  table.beta = beta;
  table.metric = metric;
  table.ensemble_size = n;
  for (const int level : n_values) {
    std::vector<double> d2(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
      const DyadicPair pair = coupled_dyadic_pair(level, level + 1, base, family.with_stream(i));
      const double d = local_distance_mixed(pair.coarse, pair.fine, {beta}, metric);
      d2[i] = d * d;
    });
    const SummaryStats s = summarize(d2);
    table.rows.push_back({level, s.mean, s.std_error});
  }
  table.strictly_decreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    table.strictly_decreasing =
        table.strictly_decreasing && table.rows[i].mean_d2 < table.rows[i - 1].mean_d2;
  }
  return table;
}

ContinuityTable continuity_probe(const GibbsParams& p, const IntegratorConfig& cfg,
                                 const std::vector<double>& deltas, std::size_t n,
                                 const RngStream& rng, SobolevOrder beta,
                                 const LocalMetricConfig& metric, const RunOptions& options) {
  p.validate();
  cfg.validate();
  if (deltas.empty()) throw std::invalid_argument("continuity_probe: no deltas");
  for (double d : deltas) {
    if (!(d >= 0.0)) throw std::invalid_argument("continuity_probe: deltas must be >= 0");
  }
  if (n < 1) throw std::invalid_argument("continuity_probe: need at least 1 sample");
  const RngStream base_family = rng.fork(kFamilyContinuityBase);
  const RngStream pert_family = rng.fork(kFamilyContinuityPerturbation);
  const GalerkinFlow flow(p.period, p.cutoff);
  const std::size_t nd = deltas.size();

  std::vector<double> out(nd * n), in(nd * n);
  std::vector<char> ok(n, 1);
  parallel_for(n, options.threads, [&](std::size_t i) {
    const SpectralField phi = sample(p, base_family.with_stream(i));
    SpectralField psi = sample(p, pert_family.with_stream(i));
    psi *= 1.0 / sobolev_norm(psi, beta);
    try {
      const SpectralField u = flow.advance(phi, cfg);
      for (std::size_t d = 0; d < nd; ++d) {
        const SpectralField start = phi + deltas[d] * psi;
        const SpectralField v = flow.advance(start, cfg);
        out[d * n + i] = local_distance(u, v, beta, metric);
        in[d * n + i] = local_distance(phi, start, beta, metric);
      }
    } catch (const FixedPointError&) {
      ok[i] = 0;
    }
  });

  ContinuityTable table;
  table.params = p;
  table.integrator = cfg;
  table.rng = rng;
  table.beta = beta.beta;
  table.metric = metric;
  table.ensemble_size = n;
  table.thresholds = options.thresholds;
  table.failures = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));
  if (table.failures == n) throw EnsembleAbort("continuity_probe: every trajectory failed");

  for (std::size_t d = 0; d < nd; ++d) {
    std::vector<double> o, ins, ratio;
    for (std::size_t i = 0; i < n; ++i) {
      if (!ok[i]) continue;
      o.push_back(out[d * n + i]);
      ins.push_back(in[d * n + i]);
      ratio.push_back(in[d * n + i] > 0.0 ? out[d * n + i] / in[d * n + i] : 0.0);
    }
    table.rows.push_back({deltas[d], quantile(o, 0.5), quantile(o, 0.9), quantile(ins, 0.5),
                          quantile(ratio, 0.5)});
  }

  // Rows in increasing delta for the monotonicity and stabilization checks.
  std::vector<ContinuityRow> sorted = table.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ContinuityRow& a, const ContinuityRow& b) { return a.delta < b.delta; });
  table.median_nondecreasing = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    table.median_nondecreasing =
        table.median_nondecreasing && sorted[i].median_out >= sorted[i - 1].median_out;
  }
  std::vector<double> small;
  for (const auto& row : sorted) {
    if (row.delta > 0.0) small.push_back(row.median_ratio);
  }
  if (small.size() >= 2) {
    const double a = small[0];
    const double b = small[1];
    table.ratio_variation = std::abs(a - b) / std::min(a, b);
    table.ratio_stable = table.ratio_variation < options.thresholds.continuity_variation;
  }
  return table;
}

namespace {

json manifest_header(const char* experiment) {
  return {{"schema", kReportSchema},
          {"experiment", experiment},
          {"code_version", EULER2D_VERSION},
          {"rng_algorithm", std::string(kRngAlgorithm)}};
}

json stats_json(const SummaryStats& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"variance", s.variance}, {"std_error", s.std_error}};
}

json thresholds_json(const Thresholds& t) {
  return {{"ks_alpha", t.ks_alpha},
          {"marginal_pass_fraction", t.marginal_pass_fraction},
          {"mean_window_se", t.mean_window_se},
          {"calibration_alpha", t.calibration_alpha},
          {"max_failure_fraction", t.max_failure_fraction},
          {"moment_stability", t.moment_stability},
          {"continuity_variation", t.continuity_variation}};
}

json metric_json(const LocalMetricConfig& m) {
  return {{"lmax", m.lmax}, {"points_per_unit", m.points_per_unit}, {"weights", "C(l) = 1"}};
}

}  // namespace

json to_json(const EnsembleReport& r) {
  json j = manifest_header("invariance");
  j["params"] = to_json(r.params);
  j["integrator"] = to_json(r.integrator);
  j["rng"] = to_json(r.rng);
  j["ensemble_size"] = r.ensemble_size;
  j["failures"] = r.failures;
  j["thresholds"] = thresholds_json(r.thresholds);
  j["drift_summary"] = {{"max_energy_drift", r.max_energy_drift},
                        {"max_enstrophy_drift", r.max_enstrophy_drift}};
  j["energy"] = {{"pre", stats_json(r.energy_pre)}, {"post", stats_json(r.energy_post)}};
  j["enstrophy"] = {{"pre", stats_json(r.enstrophy_pre)}, {"post", stats_json(r.enstrophy_post)}};
  json obs = json::array();
  for (const auto& o : r.observables) {
    obs.push_back({{"name", o.spec.name()},
                   {"pre", stats_json(o.pre)},
                   {"post", stats_json(o.post)},
                   {"ks_statistic", o.ks.statistic},
                   {"p_value", o.ks.p_value}});
  }
  j["observables"] = std::move(obs);
  j["marginal_pass_fraction"] = r.marginal_pass_fraction;
  j["calibration"] = {{"statistic", r.calibration.statistic},
                      {"p_value", r.calibration.p_value},
                      {"bins", r.calibration.bins}};
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  }
  j["verdicts"] = std::move(verdicts);
  j["pass"] = r.all_pass();
  j["note"] = "tolerances are statistical-engineering choices; exact invariance holds only in the "
              "untruncated, continuous-time limit";
  return j;
}

json to_json(const MomentTable& t) {
  json j = manifest_header("moments");
  j["params"] = to_json(t.params);
  j["rng"] = to_json(t.rng);
  j["ensemble_size"] = t.ensemble_size;
  j["thresholds"] = thresholds_json(t.thresholds);
  json cut = json::array();
  for (const auto& c : t.cutoffs) cut.push_back(to_json(c));
  j["cutoffs"] = std::move(cut);
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"cutoff", to_json(r.cutoff)},
                    {"beta", r.beta},
                    {"p", r.p},
                    {"mean", r.mean},
                    {"std_error", r.std_error}});
  }
  j["rows"] = std::move(rows);
  json verdicts = json::array();
  for (const auto& v : t.verdicts) {
    verdicts.push_back({{"beta", v.beta},
                        {"p", v.p},
                        {"last_relative_change", v.last_relative_change},
                        {"strictly_increasing", v.strictly_increasing},
                        {"verdict", v.verdict}});
  }
  j["verdicts"] = std::move(verdicts);
  return j;
}

json to_json(const CauchyTable& t) {
  json j = manifest_header("cauchy");
  j["base"] = to_json(t.base);
  j["rng"] = to_json(t.rng);
  j["beta"] = t.beta;
  j["metric"] = metric_json(t.metric);
  j["ensemble_size"] = t.ensemble_size;
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n}, {"mean_d2", r.mean_d2}, {"std_error", r.std_error}});
  }
  j["rows"] = std::move(rows);
  j["strictly_decreasing"] = t.strictly_decreasing;
  return j;
}

json to_json(const ContinuityTable& t) {
  json j = manifest_header("continuity");
  j["params"] = to_json(t.params);
  j["integrator"] = to_json(t.integrator);
  j["rng"] = to_json(t.rng);
  j["beta"] = t.beta;
  j["metric"] = metric_json(t.metric);
  j["ensemble_size"] = t.ensemble_size;
  j["failures"] = t.failures;
  j["thresholds"] = thresholds_json(t.thresholds);
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"delta", r.delta},
                    {"median_out", r.median_out},
                    {"p90_out", r.p90_out},
                    {"median_in", r.median_in},
                    {"median_ratio", r.median_ratio}});
  }
  j["rows"] = std::move(rows);
  j["median_nondecreasing"] = t.median_nondecreasing;
  j["ratio_variation"] = t.ratio_variation;
  j["ratio_stable"] = t.ratio_stable;
  return j;
}

namespace {

std::string csv_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string to_csv(const EnsembleReport& r) {
  std::ostringstream os;
  os << "observable,pre_mean,pre_se,post_mean,post_se,ks_statistic,p_value\n";
  for (const auto& o : r.observables) {
    os << '"' << o.spec.name() << "\"," << csv_num(o.pre.mean) << ',' << csv_num(o.pre.std_error)
       << ',' << csv_num(o.post.mean) << ',' << csv_num(o.post.std_error) << ','
       << csv_num(o.ks.statistic) << ',' << csv_num(o.ks.p_value) << '\n';
  }
  return os.str();
}

std::string to_csv(const MomentTable& t) {
  std::ostringstream os;
  os << "n1,n2,beta,p,mean,std_error\n";
  for (const auto& r : t.rows) {
    os << r.cutoff.n1 << ',' << r.cutoff.n2 << ',' << csv_num(r.beta) << ',' << r.p << ','
       << csv_num(r.mean) << ',' << csv_num(r.std_error) << '\n';
  }
  return os.str();
}

std::string to_csv(const CauchyTable& t) {
  std::ostringstream os;
  os << "n,mean_d2,std_error\n";
  for (const auto& r : t.rows) {
    os << r.n << ',' << csv_num(r.mean_d2) << ',' << csv_num(r.std_error) << '\n';
  }
  return os.str();
}

std::string to_csv(const ContinuityTable& t) {
  std::ostringstream os;
  os << "delta,median_out,p90_out,median_in,median_ratio\n";
  for (const auto& r : t.rows) {
    os << csv_num(r.delta) << ',' << csv_num(r.median_out) << ',' << csv_num(r.p90_out) << ','
       << csv_num(r.median_in) << ',' << csv_num(r.median_ratio) << '\n';
  }
  return os.str();
}

}  // namespace euler2d
