#include "fracmt/mt_functional.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "fracmt/constants.hpp"
#include "fracmt/errors.hpp"
#include "fracmt/norms.hpp"
#include "fracmt/rearrangement.hpp"
#include "fracmt/seminorm.hpp"
#include "oracles.hpp"

using namespace fracmt;

namespace {

constexpr double kE = std::numbers::e;

GridFunction tent() { return GridFunction({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}); }

MTConfig config_for(const Params& prm, double alpha,
                    MTNormalization norm = MTNormalization::none,
                    MTVariant variant = MTVariant::exp_interval) {
  return MTConfig{prm, alpha, norm, {}, variant};
}

GridFunction scaled(const GridFunction& u, double c) {
  std::vector<double> vals;
  for (double v : u.values()) vals.push_back(c * v);
  return GridFunction(u.nodes(), std::move(vals));
}

}  // namespace

TEST_SUITE("mt_functional") {

TEST_CASE("truncated exponential removes exactly the leading terms") {
  CHECK(truncated_exp(0.0, 2.0) == 0.0);
  CHECK(truncated_exp(1.0, 2.0) == doctest::Approx(kE - 1.0).epsilon(1e-14));
  CHECK(truncated_exp(1.0, 3.0) == doctest::Approx(kE - 2.0).epsilon(1e-14));
  CHECK(truncated_exp(2.0, 4.0) ==
        doctest::Approx(std::exp(2.0) - 1.0 - 2.0 - 2.0).epsilon(1e-14));
  CHECK(truncated_exp(0.5, 2.0) > 0.0);
  // The removed polynomial is negligible for large arguments.
  CHECK(truncated_exp(50.0, 4.0) / std::exp(50.0) ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(truncated_exp(-0.1, 2.0), input_error);
  CHECK_THROWS_AS(truncated_exp(1.0, 0.0), input_error);
  CHECK_THROWS_AS(truncated_exp(1.0, 700.0), input_error);
}

TEST_CASE("truncated exponential derivative lowers the cutoff by one") {
  CHECK(truncated_exp_deriv(1.0, 2.0) == doctest::Approx(kE).epsilon(1e-14));
  CHECK(truncated_exp_deriv(1.0, 3.0) ==
        doctest::Approx(kE - 1.0).epsilon(1e-14));
  // Finite-difference cross-check at a generic exponent.
  const double t = 2.5, h = 1e-6, p = 2.7;
  const double fd =
      (truncated_exp(t + h, p) - truncated_exp(t - h, p)) / (2.0 * h);
  CHECK(truncated_exp_deriv(t, p) == doctest::Approx(fd).epsilon(1e-8));
  CHECK_THROWS_AS(truncated_exp_deriv(-1.0, 2.0), input_error);
}

TEST_CASE("phi floor threshold is minimal and the bound holds beyond it") {
  CHECK(phi_floor_threshold(2.0) == 1);
  CHECK(phi_floor_threshold(3.0) == 2);
  CHECK(phi_floor_threshold(4.0) == 3);
  for (double p : {2.0, 2.5, 3.0, 4.0}) {
    const double m = static_cast<double>(phi_floor_threshold(p));
    CHECK(truncated_exp(m, p) >= 0.5 * std::exp(m));
    CHECK(truncated_exp(2.0 * m, p) >= 0.5 * std::exp(2.0 * m));
    if (m >= 2.0)  // minimality: the previous integer fails the bound
      CHECK(truncated_exp(m - 1.0, p) < 0.5 * std::exp(m - 1.0));
  }
}

TEST_CASE("functional of the zero function measures the domain") {
  const Params prm(0.5);
  const GridFunction zero({-0.5, 0.0, 0.5}, {0.0, 0.0, 0.0});
  const MTConfig exp_cfg = config_for(prm, 1.0);
  CHECK(mt_integral(zero, exp_cfg) == doctest::Approx(1.0).epsilon(1e-12));

  MTConfig phi_cfg = config_for(prm, 1.0);
  phi_cfg.variant = MTVariant::phi_line;
  CHECK(mt_integral(zero, phi_cfg) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interval variant adds the off-support share of the domain") {
  const Params prm(0.5);
  // alpha = 0 makes the integrand identically weight(|u|): with the unit
  // weight the value is the domain length.
  const MTConfig cfg = config_for(prm, 0.0);
  const double got =
      mt_integral(tent(), cfg, Domain{std::pair<double, double>{-2.0, 2.0}});
  CHECK(got == doctest::Approx(4.0).epsilon(1e-12));

  // log1p weight vanishes at 0, so only the support contributes:
  // int log(1 + 1 - |x|) dx = 2 (2 log 2 - 1).
  MTConfig wcfg = config_for(prm, 0.0);
  wcfg.weight = builtin_weight("log1p");
  const double wgot =
      mt_integral(tent(), wcfg, Domain{std::pair<double, double>{-2.0, 2.0}});
  CHECK(wgot ==
        doctest::Approx(2.0 * (2.0 * std::log(2.0) - 1.0)).epsilon(1e-9));
}

TEST_CASE("functional validates its configuration and domain") {
  const Params prm(0.5);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(mt_integral(tent(), config_for(prm, -1.0)), input_error);
  CHECK_THROWS_AS(
      mt_integral(tent(), config_for(prm, 1.0),
                  Domain{std::pair<double, double>{-inf, inf}}),
      input_error);
  CHECK_THROWS_AS(mt_integral(tent(), config_for(prm, 1.0),
                              Domain{std::pair<double, double>{1.0, -1.0}}),
                  input_error);

  const GridFunction zero({-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0});
  CHECK_THROWS_AS(
      mt_integral(zero, config_for(prm, 1.0, MTNormalization::seminorm)),
      input_error);
}

TEST_CASE("moser core integral matches its closed form") {
  const Params prm(0.5);
  const double alpha = alpha_star(prm);
  const MoserFunction mf(prm, 1e-2);
  const MTConfig cfg = config_for(prm, alpha, MTNormalization::seminorm);
  const double core = mt_integral(
      mf, cfg, Domain{std::pair<double, double>{-1e-2, 1e-2}});
  // On the plateau |u|/N is constant, so the integral is
  // 2 eps exp(alpha L / [u]^2) at p = 2.
  const double total = moser_decomposition(1e-2, prm).total;
  const double closed = 2e-2 * std::exp(alpha * mf.big_l() / total);
  CHECK(core == doctest::Approx(closed).epsilon(1e-10));
  CHECK(core == doctest::Approx(5.62496997).epsilon(1e-7));
}

TEST_CASE("moser full integral reproduces the frozen reference") {
  const Params prm(0.5);
  const MTConfig cfg =
      config_for(prm, alpha_star(prm), MTNormalization::seminorm);
  const MoserFunction mf(prm, 1e-2);
  CHECK(mt_integral(mf, cfg) == doctest::Approx(12.68346668).epsilon(1e-7));
}

TEST_CASE("moser and sampled-grid evaluations agree") {
  const Params prm(0.5);
  const MoserFunction mf(prm, 1e-2);
  const MTConfig cfg = config_for(prm, 1.0);
  const double exact = mt_integral(mf, cfg);
  const double grid = mt_integral(sample_moser(mf, 256), cfg);
  CHECK(std::fabs(grid - exact) <= 1e-3 * exact);
}

TEST_CASE("moser functional accepts only symmetric domains") {
  const Params prm(0.5);
  const MoserFunction mf(prm, 1e-2);
  const MTConfig cfg = config_for(prm, 1.0);
  CHECK_THROWS_AS(
      mt_integral(mf, cfg, Domain{std::pair<double, double>{-0.5, 0.6}}),
      input_error);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(
      mt_integral(mf, cfg, Domain{std::pair<double, double>{-inf, inf}}),
      input_error);
}

TEST_CASE("normalized functional is invariant under positive scaling") {
  const Params prm(0.5);
  const GridFunction u({-1.0, -0.5, 0.0, 0.5, 1.0}, {0.0, 0.6, 1.0, 0.3, 0.0});
  const MTConfig cfg = config_for(prm, 2.0, MTNormalization::seminorm);
  const double base = mt_integral(u, cfg);
  for (double c : {0.25, 4.0, 3.0}) {
    const double got = mt_integral(scaled(u, c), cfg);
    CHECK(std::fabs(got - base) <= 1e-10 * base);
  }
  const MTConfig full = config_for(prm, 2.0, MTNormalization::full_norm);
  const double fbase = mt_integral(u, full);
  CHECK(std::fabs(mt_integral(scaled(u, 4.0), full) - fbase) <= 1e-10 * fbase);
}

TEST_CASE("cell-value sums of the functional integrand are rearrangement "
          "invariant") {
  std::mt19937_64 rng(41);
  const GridFunction u = oracles::random_nonneg_grid(rng, 64);
  const RearrangedPair pair = rearrange(u);
  const double root = std::sqrt(gagliardo_p_pl(u, Params(0.5)).value);
  const EquimeasurabilityResult r = equimeasurability_check(
      pair, [&](double t) { return std::exp((t / root) * (t / root)); });
  CHECK(r.ok);
  CHECK(r.rel_dev <= 1e-10);
}

TEST_CASE("normalized cell-value sums never drop under rearrangement") {
  const Params prm(0.5);
  std::mt19937_64 rng(43);
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction u = oracles::random_nonneg_grid(rng, 32);
    const RearrangedPair pair = rearrange(u);
    const double root_u = std::sqrt(gagliardo_p_pl(u, prm, spec).value);
    const double root_r =
        std::sqrt(gagliardo_p_pl(pair.rearranged, prm, spec).value);
    const double h = u.node(1) - u.node(0);
    auto staircase = [&](const GridFunction& g, double root) {
      double acc = 0.0;
      for (double v : g.values()) {
        const double t = std::fabs(v) / root;
        acc += std::exp(t * t);
      }
      return h * acc;
    };
    const double before = staircase(u, root_u);
    const double after = staircase(pair.rearranged, root_r);
    CHECK(after >= before - 1e-8 * before);
  }
}

TEST_CASE("truncation split reproduces the closed-form bookkeeping") {
  const Params prm(0.5);
  const GridFunction u(
      {-3.0, -2.25, -1.5, -0.75, 0.0, 0.75, 1.5, 2.25, 3.0},
      {0.0, 0.1, 0.25, 0.4, 0.5, 0.4, 0.25, 0.1, 0.0});
  const RufSplit split = ruf_split(u, 2.0, prm);
  CHECK(split.r0 == 2.0);
  CHECK(split.tau == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(split.sigma == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(split.scale_factor ==
        doctest::Approx(std::sqrt(1.0 + 0.5 * lp_norm_p(u, 2.0)))
            .epsilon(1e-14));
  CHECK(split.v.support_radius() == 2.0);
  CHECK(split.v.conforming());
  // v = (u - u(r0))_+ inside the window; w = v * scale.
  const double c = u(2.0);
  for (double x : {0.0, 0.5, 1.0, 1.9}) {
    CHECK(split.v(x) == doctest::Approx(u(x) - c).epsilon(1e-14));
    CHECK(split.w(x) ==
          doctest::Approx(split.scale_factor * split.v(x)).epsilon(1e-14));
  }
  CHECK(split.v(2.5) == 0.0);
}

TEST_CASE("truncation split is the identity on interior supports") {
  const Params prm(0.5);
  const GridFunction u = tent();
  const RufSplit split = ruf_split(u, 2.0, prm);
  for (double x : {0.0, 0.3, -0.7, 0.99, 1.5}) {
    CHECK(split.v(x) == doctest::Approx(u(x)).epsilon(1e-15));
  }
}

TEST_CASE("truncation split never raises the seminorm") {
  const Params prm(0.5);
  const GridFunction u(
      {-3.0, -2.25, -1.5, -0.75, 0.0, 0.75, 1.5, 2.25, 3.0},
      {0.0, 0.04, 0.1, 0.16, 0.2, 0.16, 0.1, 0.04, 0.0});
  REQUIRE(full_norm_p(u, prm) <= 1.0);
  const RufSplit split = ruf_split(u, 2.0, prm);
  const SeminormResult su = gagliardo_p_pl(u, prm);
  const SeminormResult sv = gagliardo_p_pl(split.v, prm);
  const SeminormResult sw = gagliardo_p_pl(split.w, prm);
  CHECK(sv.value <= su.value + su.error_estimate + sv.error_estimate + 1e-12);
  CHECK(sw.value <= 1.0 + 1e-6);
}

TEST_CASE("truncation split validates radius and monotonicity") {
  const Params prm(0.5);
  CHECK_THROWS_AS(ruf_split(tent(), 1.0, prm), input_error);
  CHECK_THROWS_AS(ruf_split(tent(), 0.5, prm), input_error);
  const GridFunction bump({-2.0, -1.0, 0.0, 1.0, 2.0},
                          {0.0, 1.0, 0.2, 1.0, 0.0});
  CHECK_THROWS_AS(ruf_split(bump, 2.0, prm), input_error);
}

TEST_CASE("concentration function check matches hand arithmetic") {
  const ConcentrationReport r =
      concentration_fn_check(0.5, 2.0, {0.25, 0.5, 0.75});
  CHECK(r.tau == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.sigma == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.t2 == doctest::Approx(-0.5).epsilon(1e-15));
  // f(0.5) = 0.5 * 1.25 = 0.625; the largest sample value is f(0.25).
  CHECK(r.max_f == doctest::Approx(0.75 * 1.125).epsilon(1e-14));
  CHECK(r.ok);
  CHECK(r.samples == 3);
}

TEST_CASE("concentration function stays below its endpoint value 1") {
  // f(0) = 1 is the supremum; just inside the interval f dips below it.
  const ConcentrationReport near0 = concentration_fn_check(0.5, 2.0, {1e-9});
  CHECK(near0.max_f < 1.0);

  for (double s : {0.5, 1.0 / 3.0, 0.25}) {
    const double threshold =
        std::exp2((2.0 * s - 1.0) / (1.0 - s));
    std::vector<double> samples;
    for (int j = 1; j <= 1000; ++j)
      samples.push_back(static_cast<double>(j) / 1001.0);
    const ConcentrationReport r =
        concentration_fn_check(s, 2.0 * threshold, samples);
    CHECK(r.ok);
    CHECK(r.t2 < 0.0);
    CHECK(r.max_f < 1.0);
  }
}

TEST_CASE("concentration check validates samples and radius") {
  CHECK_THROWS_AS(concentration_fn_check(0.5, 2.0, {0.0}), input_error);
  CHECK_THROWS_AS(concentration_fn_check(0.5, 2.0, {1.0}), input_error);
  CHECK_THROWS_AS(concentration_fn_check(0.5, 0.5, {0.5}), input_error);
}

TEST_CASE("extremal search at alpha = 0 terminates on a constant objective") {
  const Params prm(0.5);
  {
    const MTConfig cfg = config_for(prm, 0.0, MTNormalization::seminorm);
    const ExtremalResult r = extremal_search(cfg, 16, 50, 5);
    CHECK(r.converged);
    CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.trace.rows.size() >= 1);
  }
  {
    const MTConfig cfg = config_for(prm, 0.0, MTNormalization::seminorm,
                                    MTVariant::phi_line);
    const ExtremalResult r = extremal_search(cfg, 16, 50, 5);
    CHECK(r.converged);
    CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("extremal search keeps a monotone trace inside the constraint") {
  const Params prm(0.5);
  const MTConfig cfg = config_for(prm, 0.2 * alpha_star(prm),
                                  MTNormalization::seminorm);
  const ExtremalResult r = extremal_search(cfg, 32, 120, 1);
  REQUIRE(r.trace.rows.size() >= 2);
  double prev = -1e300;
  for (std::size_t k = 0; k < r.trace.rows.size(); ++k) {
    const double obj = r.trace.number_at(k, "objective");
    CHECK(obj >= prev);
    prev = obj;
    CHECK(r.trace.number_at(k, "constraint_norm") <= 1.0 + 1e-9);
  }
  // The fast-path constraint norm must agree with direct quadrature.
  const double direct = std::sqrt(gagliardo_p_pl(r.best, prm).value);
  const double traced = r.trace.number_at(r.trace.rows.size() - 1,
                                          "constraint_norm");
  CHECK(std::fabs(direct - traced) <= 1e-8 * std::max(direct, 1e-3));
  CHECK(direct <= 1.0 + 1e-8);
}

TEST_CASE("extremal search under the full norm stays inside the ball") {
  const Params prm(0.5);
  const MTConfig cfg = config_for(prm, 1.0, MTNormalization::full_norm);
  const ExtremalResult r = extremal_search(cfg, 16, 80, 3);
  const double direct = std::sqrt(full_norm_p(r.best, prm));
  const double traced = r.trace.number_at(r.trace.rows.size() - 1,
                                          "constraint_norm");
  CHECK(std::fabs(direct - traced) <= 1e-8 * std::max(direct, 1e-3));
  CHECK(direct <= 1.0 + 1e-8);
}

TEST_CASE("extremal search objectives are stable across seeds") {
  const Params prm(0.5);
  const MTConfig cfg = config_for(prm, 0.2 * alpha_star(prm),
                                  MTNormalization::seminorm);
  const double a = extremal_search(cfg, 32, 200, 1).objective;
  const double b = extremal_search(cfg, 32, 200, 2).objective;
  CHECK(std::fabs(a - b) <= 0.10 * std::max(a, b));
}

TEST_CASE("extremal search validates its configuration") {
  const Params prm(0.5);
  const MTConfig good = config_for(prm, 1.0, MTNormalization::seminorm);
  CHECK_THROWS_AS(extremal_search(good, 1, 10, 0), input_error);
  CHECK_THROWS_AS(extremal_search(good, 16, -1, 0), input_error);
  CHECK_THROWS_AS(
      extremal_search(config_for(prm, 1.0, MTNormalization::none), 16, 10, 0),
      input_error);
  MTConfig weighted = good;
  weighted.weight = builtin_weight("log1p");
  CHECK_THROWS_AS(extremal_search(weighted, 16, 10, 0), input_error);
  CHECK_THROWS_AS(extremal_search(config_for(prm, -1.0,
                                             MTNormalization::seminorm),
                                  16, 10, 0),
                  input_error);
}

TEST_CASE("sharpness scan classifies growth along the eps grid") {
  const Params prm(0.5);
  {
    MTConfig cfg = config_for(prm, 0.0, MTNormalization::seminorm);
    cfg.alpha = alpha_star(prm);
    cfg.weight = builtin_weight("log1p");
    const ScanReport scan =
        sharpness_scan(cfg, {1e-2, 1e-4, 1e-6, 1e-8});
    REQUIRE(scan.table.rows.size() == 4);
    CHECK(scan.classification == "increasing");
    double prev = -1e300;
    for (std::size_t k = 0; k < 4; ++k) {
      const double full = scan.table.number_at(k, "value_full");
      CHECK(full > prev);
      prev = full;
      CHECK(scan.table.text_at(k, "classification") == "increasing");
    }
    // Growth factor between the 1e-4 and 1e-8 rows, measured at 1.228.
    const double factor = scan.table.number_at(3, "value_full") /
                          scan.table.number_at(1, "value_full");
    CHECK(factor > 1.20);
    CHECK(factor < 1.26);
  }
  {
    const MTConfig cfg =
        config_for(prm, 1.05 * alpha_star(prm), MTNormalization::seminorm);
    const ScanReport scan = sharpness_scan(cfg, {1e-2, 1e-4});
    CHECK(scan.classification == "increasing");
    CHECK(scan.max_full < 1e3);
  }
  {
    const MTConfig cfg =
        config_for(prm, 3.0 * alpha_star(prm), MTNormalization::seminorm);
    const ScanReport scan = sharpness_scan(cfg, {1e-2});
    CHECK(scan.classification == "divergent");
    CHECK(scan.max_full > 1e3);
  }
  {
    const MTConfig cfg =
        config_for(prm, alpha_star(prm), MTNormalization::seminorm);
    const ScanReport scan = sharpness_scan(cfg, {1e-2});
    CHECK(scan.classification == "bounded");
  }
}

TEST_CASE("sharpness scan validates its eps grid") {
  const Params prm(0.5);
  const MTConfig cfg = config_for(prm, 1.0, MTNormalization::seminorm);
  CHECK_THROWS_AS(sharpness_scan(cfg, {}), input_error);
  CHECK_THROWS_AS(sharpness_scan(cfg, {1e-4, 1e-2}), input_error);
  CHECK_THROWS_AS(sharpness_scan(cfg, {0.6}), input_error);
}

TEST_CASE("built-in weights evaluate and reject unknown names") {
  CHECK(builtin_weight("log1p")(kE - 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(builtin_weight("pow4")(16.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(builtin_weight("cap")(150.0) == 100.0);
  CHECK(builtin_weight("cap")(2.0) == 2.0);
  CHECK_THROWS_AS(builtin_weight("boxcar"), input_error);
}

}  // TEST_SUITE
