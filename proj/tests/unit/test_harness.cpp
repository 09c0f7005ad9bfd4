#include <cmath>
#include <numbers>

#include "doctest.h"
#include "euler2d/harness.hpp"

using namespace euler2d;
constexpr double kPi = std::numbers::pi;

TEST_CASE("observables") {
  SpectralField f(2.0 * kPi, {2, 2});
  f.set({1, 1}, {3.0, -4.0});
  ObservableSpec re{ObservableKind::coeff_real, {1, 1}};
  ObservableSpec im{ObservableKind::coeff_imag, {1, 1}};
  ObservableSpec a2{ObservableKind::coeff_abs2, {1, 1}};
  CHECK(re.evaluate(f) == 3.0);
  CHECK(im.evaluate(f) == -4.0);
  CHECK(a2.evaluate(f) == 25.0);
  ObservableSpec band{ObservableKind::spectrum_band};
  band.band_lo = 1.0;
  band.band_hi = 1.5;
  CHECK(band.evaluate(f) == 25.0);
  band.band_hi = 1.2;
  CHECK(band.evaluate(f) == 0.0);
  CHECK(ObservableSpec{ObservableKind::energy}.evaluate(f) == doctest::Approx(50.0));
  CHECK(ObservableSpec{ObservableKind::enstrophy}.evaluate(f) == doctest::Approx(100.0));
  CHECK_THROWS_AS(ObservableSpec({ObservableKind::coeff_real, {3, 0}}).validate({2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ObservableSpec({ObservableKind::coeff_real, {0, -1}}).validate({2, 2}),
                  std::invalid_argument);
  const auto defaults = default_observables({2, 2});
  CHECK(defaults.size() == 2 * 12 + 2);
  CHECK(re.name() != im.name());
}

TEST_CASE("invariance at t = 0 compares two independent Gibbs ensembles") {
  const GibbsParams p{1.0, 2.0 * kPi, {2, 2}};
  IntegratorConfig cfg;
  cfg.t_final = 0.0;
  const auto report = run_invariance(p, cfg, default_observables(p.cutoff), 400, RngStream{11});
  CHECK(report.ensemble_size == 400);
  CHECK(report.failures == 0);
  CHECK(report.max_energy_drift == 0.0);
  CHECK(report.observables.size() == 26);
  CHECK(report.marginal_pass_fraction >= 0.9);
  REQUIRE(report.verdicts.size() == 4);
  for (const auto& v : report.verdicts) {
    if (v.name != "null_calibration") CHECK_MESSAGE(v.pass, v.name << ": " << v.detail);
  }
  const auto doc = to_json(report);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc.contains("code_version"));
  CHECK(doc["rng_algorithm"] == "philox4x32-10");
  CHECK(to_csv(report).find("observable") != std::string::npos);
  CHECK_THROWS_AS(run_invariance(p, cfg, default_observables(p.cutoff), 50, RngStream{11}),
                  std::invalid_argument);
}

TEST_CASE("null calibration rejects at roughly its nominal rate") {
  // Each seed is a level-0.01 test of a true null, so rejections over 60
  // seeds are Binomial(60, 0.01): P(more than 4) < 1e-4.
  const GibbsParams p{1.0, 2.0 * kPi, {2, 2}};
  IntegratorConfig cfg;
  int rejected = 0;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const auto r = run_invariance(p, cfg, default_observables(p.cutoff), 200, RngStream{seed});
    if (r.calibration.p_value < r.thresholds.calibration_alpha) ++rejected;
  }
  CHECK(rejected <= 4);
}

TEST_CASE("ensemble results do not depend on the thread count") {
  const GibbsParams p{1.0, 2.0 * kPi, {3, 3}};
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_final = 0.2;
  const auto one = run_invariance(p, cfg, default_observables(p.cutoff), 120, RngStream{5},
                                  RunOptions{1});
  const auto three = run_invariance(p, cfg, default_observables(p.cutoff), 120, RngStream{5},
                                    RunOptions{3});
  CHECK(to_json(one).dump() == to_json(three).dump());

  const auto m1 = moment_scan(p, {-1.0}, {1}, {{2, 2}, {3, 3}}, 40, RngStream{5}, RunOptions{1});
  const auto m3 = moment_scan(p, {-1.0}, {1}, {{2, 2}, {3, 3}}, 40, RngStream{5}, RunOptions{4});
  CHECK(to_json(m1).dump() == to_json(m3).dump());
}

TEST_CASE("drift moments scale as gamma^-2p") {
  const GibbsParams p1{1.0, 2.0 * kPi, {3, 3}};
  GibbsParams p4 = p1;
  p4.gamma = 4.0;
  const RngStream rng{9};
  const auto a = moment_scan(p1, {-1.0, 0.0}, {1, 2}, {{2, 2}, {3, 3}}, 30, rng);
  const auto b = moment_scan(p4, {-1.0, 0.0}, {1, 2}, {{2, 2}, {3, 3}}, 30, rng);
  REQUIRE(a.rows.size() == 8);
  REQUIRE(b.rows.size() == 8);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const double factor = std::pow(4.0, -2.0 * a.rows[i].p);
    CHECK(b.rows[i].mean == doctest::Approx(a.rows[i].mean * factor).epsilon(1e-10));
  }
  // Nested boxes share coefficients, so the moments grow with the box.
  for (const auto& v : a.verdicts) CHECK(v.verdict != "");
  CHECK(a.verdicts.size() == 4);
  CHECK(to_csv(a).find("beta") != std::string::npos);
}

TEST_CASE("drift moments agree with the exact Gaussian expectation") {
  // E ||B||^2_{H^beta} from Wick's theorem, summed over all triads
  // (L = 2 pi, gamma = 1).
  struct Exact {
    Cutoff cutoff;
    double beta;
    double value;
  };
  const std::vector<Exact> table{{{2, 2}, -2.0, 0.18237268454258726},
                                 {{4, 4}, -2.0, 0.214066},
                                 {{4, 4}, -0.9, 0.359796},
                                 {{8, 8}, -0.9, 0.420633}};
  const GibbsParams p{1.0, 2.0 * kPi, {2, 2}};
  const auto t = moment_scan(p, {-2.0, -0.9}, {1}, {{2, 2}, {4, 4}, {8, 8}}, 4000, RngStream{31});
  for (const auto& e : table) {
    bool found = false;
    for (const auto& r : t.rows) {
      if (r.cutoff == e.cutoff && r.beta == e.beta && r.p == 1) {
        found = true;
        CHECK_MESSAGE(std::abs(r.mean - e.value) <= 4.0 * r.std_error,
                      "cutoff " << e.cutoff.n1 << " beta " << e.beta << ": " << r.mean << " vs "
                                << e.value << " (se " << r.std_error << ")");
      }
    }
    CHECK(found);
  }
}

TEST_CASE("cauchy scan") {
  const GibbsParams base{1.0, 1.0, {1, 1}};
  LocalMetricConfig metric;
  metric.lmax = 2;
  metric.points_per_unit = 16;
  const auto t = cauchy_scan(base, {0, 1}, -1.5, 20, RngStream{4}, metric);
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) CHECK(r.mean_d2 > 0.0);
  CHECK_THROWS_AS(cauchy_scan(base, {0}, 1.0, 20, RngStream{4}, metric), std::invalid_argument);
  CHECK(to_json(t)["schema"] == kReportSchema);
}

TEST_CASE("continuity probe") {
  const GibbsParams p{1.0, 2.0 * kPi, {3, 3}};
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_final = 0.1;
  LocalMetricConfig metric;
  metric.lmax = 1;
  metric.points_per_unit = 16;
  const auto t = continuity_probe(p, cfg, {0.0, 1e-3, 1e-2}, 10, RngStream{6}, {-1.0}, metric);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].median_out == 0.0);
  CHECK(t.rows[0].median_in == 0.0);
  CHECK(t.rows[1].median_in > 0.0);
  CHECK(t.median_nondecreasing);
  CHECK(t.ratio_variation >= 0.0);
  CHECK_THROWS_AS(continuity_probe(p, cfg, {-1e-3}, 10, RngStream{6}, {-1.0}, metric),
                  std::invalid_argument);
}
