/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end; all functionality goes through the C API in hetx.h.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hetx.h"

namespace {

int fail(int status) {
  std::fprintf(stderr, "error: %s\n", hetx_last_error());
  return status == HETX_OK ? 1 : status;
}

int family_code(const std::string& name) {
  if (name == "c1") return HETX_FAMILY_C1;
  if (name == "c2") return HETX_FAMILY_C2;
  if (name == "c1t") return HETX_FAMILY_C1_THRESHOLD;
  if (name == "c2t") return HETX_FAMILY_C2_THRESHOLD;
  return -1;
}

int statistic_code(const std::string& name) { return name == "ks" ? HETX_STAT_KS : HETX_STAT_CVM; }

std::string read_file(const std::string& path, bool& ok) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) {
    ok = false;
    return {};
  }
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, got);
  std::fclose(f);
  ok = true;
  return text;
}

struct SimArgs {
  std::string model = "armax";
  double lambda = 0.0;
  std::string family = "c1";
  double beta = 1.0;
  int n = 2000;
  std::uint64_t seed = 1;
  long long burn_in = 10000;
  double tail_index = 0.0;
  std::string archf;
  std::string out = "series.csv";
  int step_k = 0;
  std::string step_out;
};

int run_simulate(const SimArgs& args) {
  const int fam = family_code(args.family);
  if (fam < 0) {
    std::fprintf(stderr, "error: unknown family '%s'\n", args.family.c_str());
    return 2;
  }
  hetx_sim* sim = nullptr;
  int rc;
  if (args.model == "arch") {
    rc = hetx_simulate_arch(args.n, args.lambda, fam, args.beta, args.burn_in, args.tail_index,
                            args.archf.empty() ? nullptr : args.archf.c_str(), args.seed, &sim);
  } else {
    const double lambda = args.model == "indep" ? 0.0 : args.lambda;
    rc = hetx_simulate_armax(args.n, lambda, fam, args.beta, args.seed, &sim);
  }
  if (rc != HETX_OK) return fail(rc);
  rc = hetx_sim_write_csv(sim, args.out.c_str());
  if (rc == HETX_OK && args.step_k > 0 && !args.step_out.empty())
    rc = hetx_sim_step_csv(sim, args.step_k, 64, 64, 2.0, 1, args.step_out.c_str());
  hetx_sim_free(sim);
  if (rc != HETX_OK) return fail(rc);
  std::printf("wrote %s\n", args.out.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"hetx - statistics for heteroscedastic time-series extremes"};
  app.require_subcommand(1);
  // "--h" is the bandwidth parameter, so help lives on --help only.
  app.set_help_flag("--help", "print this help message and exit");
  const auto subcommand = [](CLI::App* parent, const char* name, const char* desc) {
    CLI::App* cmd = parent->add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print this help message and exit");
    return cmd;
  };

  // ---- simulate --------------------------------------------------------
  SimArgs sim_args;
  auto* sim_cmd = subcommand(&app, "simulate", "simulate ARMAX/ARCH scale-model data");
  sim_cmd->add_option("--model", sim_args.model, "indep | armax | arch")->capture_default_str();
  sim_cmd->add_option("--lambda", sim_args.lambda, "dependence parameter");
  sim_cmd->add_option("--family", sim_args.family, "c1 | c2 | c1t | c2t")->capture_default_str();
  sim_cmd->add_option("--beta", sim_args.beta, "scedasis family parameter in (0,1]");
  sim_cmd->add_option("--n", sim_args.n, "series length")->capture_default_str();
  sim_cmd->add_option("--seed", sim_args.seed, "RNG seed");
  sim_cmd->add_option("--burn-in", sim_args.burn_in, "ARCH burn-in length");
  sim_cmd->add_option("--tail-index", sim_args.tail_index, "ARCH tail index (0 = tabulated)");
  sim_cmd->add_option("--archf", sim_args.archf, "ARCH marginal table CSV");
  sim_cmd->add_option("--out", sim_args.out, "output CSV (index,x,w,u)")->capture_default_str();
  sim_cmd->add_option("--step-k", sim_args.step_k, "also dump the tail empirical process with this k");
  sim_cmd->add_option("--step-out", sim_args.step_out, "output CSV for the process matrix");

  // ---- scedasis --------------------------------------------------------
  std::string in_path, column = "0", out_path = "curve.csv";
  int k = 200;
  double h = 0.1, kappa = 0.1;
  auto* sced_cmd = subcommand(&app, "scedasis", "estimate the scedasis function from a CSV column");
  sced_cmd->add_option("--input", in_path, "input CSV")->required();
  sced_cmd->add_option("--column", column, "column index or name")->capture_default_str();
  sced_cmd->add_option("--k", k, "number of top order statistics")->required();
  sced_cmd->add_option("--h", h, "bandwidth in (0, 1/2)")->required();
  sced_cmd->add_option("--kappa", kappa, "truncation floor")->capture_default_str();
  sced_cmd->add_option("--out", out_path, "output CSV (s,ctilde,chat)")->capture_default_str();

  // ---- test ------------------------------------------------------------
  std::string method = "boot", statistic = "cvm", quantiles_path, report_out;
  int r = 4, B = 200;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  auto* test_cmd = subcommand(&app, "test", "test the hypothesis of homoscedastic extremes");
  test_cmd->add_option("--input", in_path, "input CSV")->required();
  test_cmd->add_option("--column", column, "column index or name");
  test_cmd->add_option("--k", k, "number of top order statistics")->required();
  test_cmd->add_option("--method", method, "boot | selfnorm | indep")->capture_default_str();
  test_cmd->add_option("--statistic", statistic, "cvm | ks")->capture_default_str();
  std::string multiplier = "rademacher";
  test_cmd->add_option("--multiplier", multiplier, "rademacher | mammen | uniform")
      ->capture_default_str();
  test_cmd->add_option("--r", r, "block length")->capture_default_str();
  test_cmd->add_option("--B", B, "bootstrap replicates")->capture_default_str();
  test_cmd->add_option("--alpha", alpha, "test level")->capture_default_str();
  test_cmd->add_option("--seed", seed, "RNG seed");
  test_cmd->add_option("--quantiles", quantiles_path, "self-normalization quantile table");
  test_cmd->add_option("--out", report_out, "write the JSON report here (default: stdout)");

  // ---- ei ----------------------------------------------------------------
  int q = 32, ei_grid = 1024;
  auto* ei_cmd = subcommand(&app, "ei", "estimate the extremal index");
  ei_cmd->add_option("--input", in_path, "input CSV")->required();
  ei_cmd->add_option("--column", column, "column index or name");
  ei_cmd->add_option("--q", q, "block size")->required();
  ei_cmd->add_option("--k", k, "number of top order statistics")->required();
  ei_cmd->add_option("--h", h, "bandwidth")->capture_default_str();
  ei_cmd->add_option("--kappa", kappa, "truncation floor")->capture_default_str();
  ei_cmd->add_option("--grid-points", ei_grid, "integration grid size")->capture_default_str();
  ei_cmd->add_option("--out", report_out, "write the JSON report here (default: stdout)");

  // ---- analyze -----------------------------------------------------------
  std::string out_dir = ".";
  auto* an_cmd = subcommand(&app, "analyze", "full analysis of a CSV column");
  an_cmd->add_option("--input", in_path, "input CSV")->required();
  an_cmd->add_option("--column", column, "column index or name");
  an_cmd->add_option("--k", k, "number of top order statistics")->required();
  an_cmd->add_option("--r", r, "block length")->capture_default_str();
  an_cmd->add_option("--q", q, "block size for the extremal index")->capture_default_str();
  an_cmd->add_option("--h", h, "bandwidth")->capture_default_str();
  an_cmd->add_option("--kappa", kappa, "truncation floor")->capture_default_str();
  an_cmd->add_option("--alpha", alpha, "test level")->capture_default_str();
  an_cmd->add_option("--B", B, "bootstrap replicates")->capture_default_str();
  an_cmd->add_option("--seed", seed, "RNG seed");
  an_cmd->add_option("--quantiles", quantiles_path, "self-normalization quantile table");
  an_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();

  // ---- experiment ---------------------------------------------------------
  std::string config_path;
  int threads = 1;
  auto* exp_cmd = subcommand(&app, "experiment", "Monte Carlo experiments");
  exp_cmd->require_subcommand(1);
  auto* t1_cmd = subcommand(exp_cmd, "table1", "rejection-rate experiment");
  auto* mse_cmd = subcommand(exp_cmd, "mse", "extremal-index MSE experiment");
  for (auto* cmd : {t1_cmd, mse_cmd}) {
    cmd->add_option("--config", config_path, "experiment config JSON");
    cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "master seed (overrides config)");
    cmd->add_option("--threads", threads, "worker threads (speed only)")->capture_default_str();
  }

  // ---- quantiles -----------------------------------------------------------
  long long paths = 200000;
  int grid = 2000;
  std::string alphas_arg = "0.1,0.05,0.025,0.01";
  long long n_sim = 10000000, burn_in = 10000;
  double lambda = 0.7;
  auto* quant_cmd = subcommand(&app, "quantiles", "generate reference quantile tables");
  quant_cmd->require_subcommand(1);
  auto* sn_cmd = subcommand(quant_cmd, "selfnorm", "self-normalization reference quantiles");
  sn_cmd->add_option("--paths", paths, "simulated bridge triples")->capture_default_str();
  sn_cmd->add_option("--grid", grid, "time grid cells")->capture_default_str();
  sn_cmd->add_option("--seed", seed, "RNG seed");
  sn_cmd->add_option("--alphas", alphas_arg, "comma-separated levels")->capture_default_str();
  sn_cmd->add_option("--out", out_path, "output CSV")->required();
  std::string cvm_levels_arg = "0.9,0.95,0.99";
  auto* cvm_cmd = subcommand(quant_cmd, "cvm", "integrated squared Brownian bridge quantiles");
  cvm_cmd->add_option("--paths", paths, "simulated bridges")->capture_default_str();
  cvm_cmd->add_option("--grid", grid, "time grid cells")->capture_default_str();
  cvm_cmd->add_option("--seed", seed, "RNG seed");
  cvm_cmd->add_option("--levels", cvm_levels_arg, "comma-separated quantile levels")
      ->capture_default_str();
  cvm_cmd->add_option("--out", out_path, "output CSV")->required();
  auto* af_cmd = subcommand(quant_cmd, "archf", "ARCH marginal quantile table");
  af_cmd->add_option("--n-sim", n_sim, "simulated draws")->capture_default_str();
  af_cmd->add_option("--burn-in", burn_in, "burn-in length")->capture_default_str();
  af_cmd->add_option("--lambda", lambda, "ARCH parameter")->capture_default_str();
  af_cmd->add_option("--seed", seed, "RNG seed");
  af_cmd->add_option("--out", out_path, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (sim_cmd->parsed()) return run_simulate(sim_args);

  if (sced_cmd->parsed()) {
    hetx_series* series = nullptr;
    int rc = hetx_series_from_csv(in_path.c_str(), column.c_str(), &series);
    if (rc != HETX_OK) return fail(rc);
    hetx_curve* curve = nullptr;
    rc = hetx_scedasis(series, k, h, kappa, nullptr, 0, &curve);
    if (rc == HETX_OK) rc = hetx_curve_write_csv(curve, out_path.c_str());
    hetx_curve_free(curve);
    hetx_series_free(series);
    if (rc != HETX_OK) return fail(rc);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (test_cmd->parsed()) {
    hetx_series* series = nullptr;
    int rc = hetx_series_from_csv(in_path.c_str(), column.c_str(), &series);
    if (rc != HETX_OK) return fail(rc);
    hetx_report* report = nullptr;
    const int stat = statistic_code(statistic);
    int mult = HETX_MULT_RADEMACHER;
    if (multiplier == "mammen") mult = HETX_MULT_MAMMEN;
    if (multiplier == "uniform") mult = HETX_MULT_UNIFORM;
    if (method == "boot") {
      rc = hetx_bootstrap_test(series, k, r, B, alpha, stat, mult, seed, &report);
    } else if (method == "selfnorm") {
      rc = hetx_selfnorm_test(series, k, r, stat, alpha,
                              quantiles_path.empty() ? nullptr : quantiles_path.c_str(), seed,
                              &report);
    } else if (method == "indep") {
      rc = hetx_indep_cvm_test(series, k, 0.0, &report);
    } else {
      hetx_series_free(series);
      std::fprintf(stderr, "error: unknown method '%s'\n", method.c_str());
      return 2;
    }
    hetx_series_free(series);
    if (rc != HETX_OK) return fail(rc);
    char* json_text = nullptr;
    rc = hetx_report_to_json(report, &json_text);
    hetx_report_free(report);
    if (rc != HETX_OK) return fail(rc);
    if (report_out.empty()) {
      std::printf("%s\n", json_text);
    } else {
      std::FILE* f = std::fopen(report_out.c_str(), "wb");
      if (!f) {
        hetx_string_free(json_text);
        std::fprintf(stderr, "error: cannot write '%s'\n", report_out.c_str());
        return 3;
      }
      std::fprintf(f, "%s\n", json_text);
      std::fclose(f);
      std::printf("wrote %s\n", report_out.c_str());
    }
    hetx_string_free(json_text);
    return 0;
  }

  if (ei_cmd->parsed()) {
    hetx_series* series = nullptr;
    int rc = hetx_series_from_csv(in_path.c_str(), column.c_str(), &series);
    if (rc != HETX_OK) return fail(rc);
    hetx_ei* est = nullptr;
    rc = hetx_ei_estimate(series, q, k, h, kappa, ei_grid, &est);
    hetx_series_free(series);
    if (rc != HETX_OK) return fail(rc);
    char* json_text = nullptr;
    rc = hetx_ei_to_json(est, &json_text);
    hetx_ei_free(est);
    if (rc != HETX_OK) return fail(rc);
    if (report_out.empty()) {
      std::printf("%s\n", json_text);
    } else {
      std::FILE* f = std::fopen(report_out.c_str(), "wb");
      if (f) {
        std::fprintf(f, "%s\n", json_text);
        std::fclose(f);
        std::printf("wrote %s\n", report_out.c_str());
      }
    }
    hetx_string_free(json_text);
    return 0;
  }

  if (an_cmd->parsed()) {
    char* report = nullptr;
    const int rc = hetx_analyze_csv(in_path.c_str(), column.c_str(), k, r, q, h, kappa, alpha, B,
                                    seed, quantiles_path.empty() ? nullptr : quantiles_path.c_str(),
                                    out_dir.c_str(), &report);
    if (rc != HETX_OK) return fail(rc);
    hetx_string_free(report);
    std::printf("wrote %s/report.json\n", out_dir.c_str());
    return 0;
  }

  if (t1_cmd->parsed() || mse_cmd->parsed()) {
    auto* parsed_cmd = t1_cmd->parsed() ? t1_cmd : mse_cmd;
    std::string spec_json;
    if (!config_path.empty()) {
      bool ok = false;
      spec_json = read_file(config_path, ok);
      if (!ok) {
        std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
        return 3;
      }
    }
    // --seed / --threads on the command line override config values.
    const std::uint64_t seed_override = parsed_cmd->count("--seed") ? seed : 0;
    const int threads_override = parsed_cmd->count("--threads") ? threads : 0;
    char* table_path = nullptr;
    const int rc = hetx_experiment_run(t1_cmd->parsed() ? "table1" : "mse",
                                       spec_json.empty() ? nullptr : spec_json.c_str(),
                                       out_dir.c_str(), threads_override, seed_override,
                                       &table_path);
    if (rc != HETX_OK) return fail(rc);
    std::printf("wrote %s\n", table_path);
    hetx_string_free(table_path);
    return 0;
  }

  if (sn_cmd->parsed() || cvm_cmd->parsed()) {
    std::vector<double> levels;
    std::string token;
    const std::string& arg = sn_cmd->parsed() ? alphas_arg : cvm_levels_arg;
    for (char ch : arg + ",") {
      if (ch == ',') {
        if (!token.empty()) levels.push_back(std::stod(token));
        token.clear();
      } else {
        token += ch;
      }
    }
    int rc;
    if (sn_cmd->parsed())
      rc = hetx_selfnorm_quantiles_generate(levels.data(), levels.size(), paths, grid, seed,
                                            out_path.c_str());
    else
      rc = hetx_cvm_quantiles_generate(levels.data(), levels.size(), paths, grid, seed,
                                       out_path.c_str());
    if (rc != HETX_OK) return fail(rc);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (af_cmd->parsed()) {
    const int rc = hetx_archf_table_generate(n_sim, burn_in, lambda, seed, out_path.c_str());
    if (rc != HETX_OK) return fail(rc);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  return 0;
}
