#include "fracmt/cli.hpp"

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracmt/constants.hpp"
#include "fracmt/grid_function.hpp"
#include "fracmt/moser.hpp"
#include "fracmt/mt_functional.hpp"
#include "fracmt/norms.hpp"
#include "fracmt/parallel.hpp"
#include "fracmt/rearrangement.hpp"
#include "fracmt/report.hpp"
#include "fracmt/seminorm.hpp"

namespace fracmt {
namespace {

struct CommonOpts {
  std::string format = "csv";
  std::string out = "-";
  QuadratureSpec spec;
};

// The output/tolerance flags are registered on the main app and again on
// every subcommand (same storage), so they are accepted in either position
// and show up in each subcommand's --help.
void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Output path, '-' for stdout");
  cmd->add_option("--rel-tol", c.spec.rel_tol, "Quadrature relative tolerance");
  cmd->add_option("--abs-tol", c.spec.abs_tol, "Quadrature absolute tolerance");
  cmd->add_option("--max-panels", c.spec.max_panels,
                  "Adaptive panel budget per integral");
}

void emit(const Report& rep, const CommonOpts& c) {
  write_text_file(c.out, c.format == "json" ? to_json(rep) : to_csv(rep));
}

int emit_error(const std::string& type, const std::string& message, int code,
               const nlohmann::ordered_json& extra = nlohmann::ordered_json()) {
  nlohmann::ordered_json obj;
  obj["error"]["type"] = type;
  obj["error"]["message"] = message;
  for (const auto& item : extra.items()) obj["error"][item.key()] = item.value();
  std::cerr << obj.dump() << "\n";
  return code;
}

double resolve_alpha(const Params& params, const CLI::Option* oa,
                     const CLI::Option* om, double alpha, double mult) {
  if (oa->count() == 0 && om->count() == 0)
    throw input_error("need exactly one of --alpha / --alpha-mult");
  if (om->count() > 0) return mult * alpha_star(params);
  return alpha;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Critical fractional Sobolev toolkit: seminorm quadratures, "
               "concentration families, exponential-class functionals"};
  app.require_subcommand(1);

  CommonOpts common;
  add_common(&app, common);

  // Shared flag storage; each subcommand binds the subset it declares.
  double s = 0.5, r0 = 0.0, alpha = 0.0, alpha_mult = 0.0;
  std::vector<double> eps_grid;
  std::string input, output, method = "series", mode, variant, weight,
                             norm = "seminorm";
  int samples = 1000, cells = 64, iters = 100;
  unsigned long long seed = 0;

  CLI::App* c_constants =
      app.add_subcommand("constants", "Limit constants for a given s");
  c_constants->add_option("--s", s, "Fractional order in (0,1)")->required();
  c_constants->add_option("--method", method, "series or integral")
      ->check(CLI::IsMember({"series", "integral"}));
  add_common(c_constants, common);

  CLI::App* c_seminorm = app.add_subcommand(
      "seminorm", "Critical Gagliardo seminorm power of a grid CSV");
  c_seminorm->add_option("--input", input, "Grid CSV (header x,u)")->required();
  c_seminorm->add_option("--s", s, "Fractional order in (0,1)")->required();
  add_common(c_seminorm, common);

  CLI::App* c_moser = app.add_subcommand(
      "moser-table", "Four-part decomposition of the concentration family");
  c_moser->add_option("--s", s, "Fractional order in (0,1)")->required();
  c_moser->add_option("--eps", eps_grid, "Comma-separated eps values")
      ->delimiter(',')
      ->required();
  add_common(c_moser, common);

  CLI::App* c_rate = app.add_subcommand(
      "rate", "Convergence scan of the concentration family");
  c_rate->add_option("--s", s, "Fractional order in (0,1)")->required();
  c_rate->add_option("--eps", eps_grid, "Strictly decreasing eps values")
      ->delimiter(',')
      ->required();
  c_rate->add_option("--mode", mode, "seminorm or full")
      ->check(CLI::IsMember({"seminorm", "full"}))
      ->required();
  add_common(c_rate, common);

  CLI::App* c_rearrange = app.add_subcommand(
      "rearrange", "Symmetric decreasing rearrangement of a grid CSV");
  c_rearrange->add_option("--input", input, "Grid CSV (header x,u)")
      ->required();
  c_rearrange->add_option("--output", output, "Path for the rearranged CSV")
      ->required();
  add_common(c_rearrange, common);

  CLI::App* c_polya = app.add_subcommand(
      "polya-szego", "Seminorm drop under rearrangement");
  c_polya->add_option("--input", input, "Grid CSV (header x,u)")->required();
  c_polya->add_option("--s", s, "Fractional order in (0,1)")->required();
  add_common(c_polya, common);

  CLI::App* c_mt = app.add_subcommand(
      "mt", "Exponential-class functional of a grid CSV");
  c_mt->add_option("--input", input, "Grid CSV (header x,u)")->required();
  c_mt->add_option("--s", s, "Fractional order in (0,1)")->required();
  CLI::Option* mt_oa = c_mt->add_option("--alpha", alpha, "Exponent coefficient");
  CLI::Option* mt_om = c_mt->add_option("--alpha-mult", alpha_mult,
                                        "Coefficient as a multiple of alpha_star");
  mt_oa->excludes(mt_om);
  mt_om->excludes(mt_oa);
  c_mt->add_option("--variant", variant, "exp (interval) or phi (line)")
      ->check(CLI::IsMember({"exp", "phi"}))
      ->required();
  c_mt->add_option("--weight", weight, "Built-in weight: log1p, pow4, cap")
      ->check(CLI::IsMember({"log1p", "pow4", "cap"}));
  add_common(c_mt, common);

  CLI::App* c_sharp = app.add_subcommand(
      "sharpness", "Normalized concentration-family scan of the functional");
  c_sharp->add_option("--s", s, "Fractional order in (0,1)")->required();
  CLI::Option* sh_oa = c_sharp->add_option("--alpha", alpha, "Exponent coefficient");
  CLI::Option* sh_om = c_sharp->add_option(
      "--alpha-mult", alpha_mult, "Coefficient as a multiple of alpha_star");
  sh_oa->excludes(sh_om);
  sh_om->excludes(sh_oa);
  c_sharp->add_option("--eps", eps_grid, "Strictly decreasing eps values")
      ->delimiter(',')
      ->required();
  c_sharp->add_option("--weight", weight, "Built-in weight: log1p, pow4, cap")
      ->check(CLI::IsMember({"log1p", "pow4", "cap"}));
  c_sharp->add_option("--norm", norm, "Normalization: seminorm or full")
      ->check(CLI::IsMember({"seminorm", "full"}));
  add_common(c_sharp, common);

  CLI::App* c_ruf = app.add_subcommand(
      "ruf-check", "Concentration function check for the truncation split");
  c_ruf->add_option("--s", s, "Fractional order in (0,1)")->required();
  c_ruf->add_option("--r0", r0, "Truncation radius")->required();
  c_ruf->add_option("--samples", samples, "Sample count on (0,1)")
      ->check(CLI::PositiveNumber);
  add_common(c_ruf, common);

  CLI::App* c_ext = app.add_subcommand(
      "extremal", "Projected ascent over the unit seminorm ball");
  c_ext->add_option("--s", s, "Fractional order in (0,1)")->required();
  c_ext->add_option("--alpha", alpha, "Exponent coefficient")->required();
  c_ext->add_option("--cells", cells, "Cell count of the uniform grid")
      ->required()
      ->check(CLI::Range(2, 100000));
  c_ext->add_option("--iters", iters, "Maximum ascent iterations")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_ext->add_option("--seed", seed, "RNG seed")->required();
  add_common(c_ext, common);

  try {
    app.parse(argc, argv);

    if (*c_constants) {
      const Params prm(s);
      const GammaSMethod m = method == "series" ? GammaSMethod::series
                                                : GammaSMethod::integral;
      const ConstantsReport r = gamma_s(prm, m, common.spec);
      Report rep;
      rep.columns = {"s", "p", "gamma_s", "alpha_star", "method", "est_error"};
      rep.add_row({r.s, r.p, r.gamma_s, r.alpha_star, method, r.est_error});
      emit(rep, common);
    } else if (*c_seminorm) {
      const GridFunction u = read_grid_csv(input);
      const SeminormResult r = gagliardo_p_pl(u, Params(s), common.spec);
      Report rep;
      rep.columns = {"value", "error_estimate", "panels"};
      rep.add_row({r.value, r.error_estimate, r.panels});
      emit(rep, common);
    } else if (*c_moser) {
      const Params prm(s);
      std::function<DecompositionReport(std::size_t)> worker =
          [&](std::size_t k) {
            return moser_decomposition(eps_grid[k], prm, common.spec);
          };
      const std::vector<DecompositionReport> rows =
          parallel_map<DecompositionReport>(eps_grid.size(), worker);
      Report rep;
      rep.columns = {"eps", "i1", "i2", "i3", "i4", "total", "gap", "log_rate"};
      for (const DecompositionReport& d : rows)
        rep.add_row({d.eps, d.i1, d.i2, d.i3, d.i4, d.total, d.gamma_gap,
                     d.log_rate});
      emit(rep, common);
    } else if (*c_rate) {
      const NormMode m =
          mode == "full" ? NormMode::full_norm : NormMode::seminorm;
      emit(rate_check(eps_grid, Params(s), m, common.spec), common);
    } else if (*c_rearrange) {
      const GridFunction u = read_grid_csv(input);
      const RearrangedPair pair = rearrange(u);
      write_grid_csv(pair.rearranged, output);
      Report rep;
      rep.columns = {"lp_drift"};
      rep.add_row({pair.lp_drift});
      emit(rep, common);
    } else if (*c_polya) {
      const GridFunction u = read_grid_csv(input);
      RearrangedPair pair = rearrange(u);
      const double gap = polya_szego_gap(pair, Params(s), common.spec);
      Report rep;
      rep.columns = {"gap", "lp_drift"};
      rep.add_row({gap, pair.lp_drift});
      emit(rep, common);
    } else if (*c_mt) {
      const Params prm(s);
      MTConfig config{prm, 0.0, MTNormalization::none, {}, MTVariant::exp_interval};
      config.alpha = resolve_alpha(prm, mt_oa, mt_om, alpha, alpha_mult);
      config.normalization = MTNormalization::none;
      if (!weight.empty()) config.weight = builtin_weight(weight);
      config.variant =
          variant == "exp" ? MTVariant::exp_interval : MTVariant::phi_line;
      const GridFunction u = read_grid_csv(input);
      const double value = mt_integral(u, config, Domain{}, common.spec);
      Report rep;
      rep.columns = {"alpha", "value"};
      rep.add_row({config.alpha, value});
      emit(rep, common);
    } else if (*c_sharp) {
      const Params prm(s);
      MTConfig config{prm, 0.0, MTNormalization::none, {}, MTVariant::exp_interval};
      config.alpha = resolve_alpha(prm, sh_oa, sh_om, alpha, alpha_mult);
      config.normalization = norm == "full" ? MTNormalization::full_norm
                                            : MTNormalization::seminorm;
      if (!weight.empty()) config.weight = builtin_weight(weight);
      config.variant = MTVariant::exp_interval;
      emit(sharpness_scan(config, eps_grid, common.spec).table, common);
    } else if (*c_ruf) {
      std::vector<double> ts(static_cast<std::size_t>(samples));
      for (int j = 1; j <= samples; ++j)
        ts[static_cast<std::size_t>(j - 1)] =
            static_cast<double>(j) / (static_cast<double>(samples) + 1.0);
      const ConcentrationReport r = concentration_fn_check(s, r0, ts);
      Report rep;
      rep.columns = {"tau", "sigma", "t2", "max_f", "samples", "ok"};
      rep.add_row({r.tau, r.sigma, r.t2, r.max_f, r.samples,
                   static_cast<long long>(r.ok ? 1 : 0)});
      emit(rep, common);
    } else if (*c_ext) {
      const Params prm(s);
      MTConfig config{prm, 0.0, MTNormalization::none, {}, MTVariant::exp_interval};
      config.alpha = alpha;
      config.normalization = MTNormalization::seminorm;
      config.variant = MTVariant::exp_interval;
      const ExtremalResult r =
          extremal_search(config, cells, iters, seed, common.spec);
      emit(r.trace, common);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return emit_error("input", e.what(), 2);
  } catch (const input_error& e) {
    return emit_error("input", e.what(), 2);
  } catch (const accuracy_error& e) {
    nlohmann::ordered_json extra;
    extra["best_estimate"] = e.best_estimate;
    extra["error_estimate"] = e.error_estimate;
    return emit_error("accuracy", e.what(), 3, extra);
  } catch (const io_error& e) {
    return emit_error("io", e.what(), 4);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
}

}  // namespace fracmt
