/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "hetx/csv.hpp"
#include "hetx/empirical_process.hpp"
#include "hetx/error.hpp"
#include "hetx/extremal_index.hpp"
#include "hetx/harness.hpp"
#include "hetx/scedasis.hpp"
#include "hetx/simulate.hpp"
#include "hetx/testing.hpp"

struct hetx_series {
  hetx::Series series;
};
struct hetx_sim {
  hetx::SimOutput sim;
  hetx_series series_view;
};
struct hetx_curve {
  hetx::ScedasisCurve curve;
};
struct hetx_report {
  hetx::TestReport report;
};
struct hetx_ei {
  hetx::EiEstimate estimate;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guarded(F&& fn) noexcept {
  try {
    fn();
    return HETX_OK;
  } catch (const hetx::error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HETX_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HETX_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hetx::FamilyKind family_from_int(int family) {
  switch (family) {
    case HETX_FAMILY_C1: return hetx::FamilyKind::c1;
    case HETX_FAMILY_C2: return hetx::FamilyKind::c2;
    case HETX_FAMILY_C1_THRESHOLD: return hetx::FamilyKind::c1_threshold;
    case HETX_FAMILY_C2_THRESHOLD: return hetx::FamilyKind::c2_threshold;
    default: hetx::throw_config("unknown family code");
  }
}

hetx::Statistic statistic_from_int(int statistic) {
  switch (statistic) {
    case HETX_STAT_KS: return hetx::Statistic::ks;
    case HETX_STAT_CVM: return hetx::Statistic::cvm;
    default: hetx::throw_config("unknown statistic code");
  }
}

hetx::MultiplierLaw multiplier_from_int(int multiplier) {
  switch (multiplier) {
    case HETX_MULT_RADEMACHER: return hetx::MultiplierLaw::rademacher;
    case HETX_MULT_MAMMEN: return hetx::MultiplierLaw::mammen;
    case HETX_MULT_UNIFORM: return hetx::MultiplierLaw::uniform;
    default: hetx::throw_config("unknown multiplier code");
  }
}

void require(bool ok, const char* what) {
  if (!ok) hetx::throw_config(what);
}

} // namespace

extern "C" {

const char* hetx_version(void) { return "0.1.0"; }

const char* hetx_last_error(void) { return g_last_error.c_str(); }

void hetx_string_free(char* s) { std::free(s); }

int hetx_series_create(const double* values, size_t n, hetx_series** out) {
  return guarded([&] {
    require(values != nullptr && out != nullptr, "null argument");
    *out = new hetx_series{hetx::Series(std::vector<double>(values, values + n))};
  });
}

int hetx_series_from_csv(const char* path, const char* column, hetx_series** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    const hetx::CsvColumn col = hetx::read_csv_column(path, column ? column : "0");
    *out = new hetx_series{hetx::Series(col.values)};
  });
}

void hetx_series_free(hetx_series* s) { delete s; }

size_t hetx_series_size(const hetx_series* s) {
  return s ? static_cast<size_t>(s->series.n()) : 0;
}

const double* hetx_series_values(const hetx_series* s) {
  return s ? s->series.values().data() : nullptr;
}

int hetx_simulate_armax(int n, double lambda, int family, double beta, uint64_t seed,
                        hetx_sim** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const hetx::ScedasisFamily fam(family_from_int(family), beta);
    auto sim = std::make_unique<hetx_sim>(
        hetx_sim{hetx::simulate_armax(n, lambda, fam, seed), hetx_series{hetx::Series({0, 0})}});
    sim->series_view.series = sim->sim.x;
    *out = sim.release();
  });
}

int hetx_simulate_arch(int n, double lambda, int family, double beta, long long burn_in,
                       double tail_index, const char* marginal_table_path, uint64_t seed,
                       hetx_sim** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const hetx::ScedasisFamily fam(family_from_int(family), beta);
    std::shared_ptr<const hetx::ArchMarginalTable> table;
    if (marginal_table_path && *marginal_table_path)
      table = std::make_shared<const hetx::ArchMarginalTable>(
          hetx::ArchMarginalTable::load_csv(marginal_table_path));
    auto sim = std::make_unique<hetx_sim>(
        hetx_sim{hetx::simulate_arch(n, lambda, fam, burn_in, seed, tail_index, table),
                 hetx_series{hetx::Series({0, 0})}});
    sim->series_view.series = sim->sim.x;
    *out = sim.release();
  });
}

void hetx_sim_free(hetx_sim* sim) { delete sim; }

const hetx_series* hetx_sim_series(const hetx_sim* sim) {
  return sim ? &sim->series_view : nullptr;
}

int hetx_sim_write_csv(const hetx_sim* sim, const char* path) {
  return guarded([&] {
    require(sim != nullptr && path != nullptr, "null argument");
    const int n = sim->sim.x.n();
    std::vector<double> index(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) index[static_cast<std::size_t>(i)] = i + 1;
    std::vector<double> u = sim->sim.u;
    if (u.empty()) u.assign(static_cast<std::size_t>(n), std::nan(""));
    hetx::write_csv(path, {"index", "x", "w", "u"},
                    {index, sim->sim.x.values(), sim->sim.w, u});
  });
}

int hetx_sim_step_csv(const hetx_sim* sim, int k, int grid_s, int grid_x, double x_max, int which,
                      const char* path) {
  return guarded([&] {
    require(sim != nullptr && path != nullptr, "null argument");
    const std::vector<double> gs = hetx::uniform_grid(grid_s);
    const std::vector<double> gx = hetx::uniform_grid(grid_x, 0.0, x_max);
    if (which == 0) {
      if (sim->sim.u.empty())
        hetx::throw_config("uniformized series unavailable (no marginal table)");
      hetx::simple_step_matrix(sim->sim.u, sim->sim.truth, k, gs, gx).write_csv(path);
    } else {
      hetx::step_matrix(sim->sim.x, sim->sim.truth, k, gs, gx).write_csv(path);
    }
  });
}

int hetx_scedasis(const hetx_series* series, int k, double h, double kappa, const double* grid,
                  size_t grid_len, hetx_curve** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    hetx::ScedasisConfig cfg;
    cfg.k = k;
    cfg.h = h;
    cfg.kappa = kappa;
    cfg.grid = grid ? std::vector<double>(grid, grid + grid_len) : hetx::default_scedasis_grid();
    const hetx::BoundaryKernel bk(hetx::biweight_kernel(), h);
    *out = new hetx_curve{hetx::scedasis_estimate(series->series, cfg, bk)};
  });
}

void hetx_curve_free(hetx_curve* c) { delete c; }

size_t hetx_curve_size(const hetx_curve* c) { return c ? c->curve.grid.size() : 0; }

int hetx_curve_row(const hetx_curve* c, size_t i, double* s, double* ctilde, double* chat) {
  return guarded([&] {
    require(c != nullptr && i < c->curve.grid.size(), "curve row out of range");
    if (s) *s = c->curve.grid[i];
    if (ctilde) *ctilde = c->curve.ctilde[i];
    if (chat) *chat = c->curve.chat[i];
  });
}

int hetx_curve_write_csv(const hetx_curve* c, const char* path) {
  return guarded([&] {
    require(c != nullptr && path != nullptr, "null argument");
    hetx::write_csv(path, {"s", "ctilde", "chat"},
                    {c->curve.grid, c->curve.ctilde, c->curve.chat});
  });
}

int hetx_bootstrap_test(const hetx_series* series, int k, int r, int B, double alpha,
                        int statistic, int multiplier, uint64_t seed, hetx_report** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    hetx::BootstrapConfig cfg;
    cfg.r = r;
    cfg.B = B;
    cfg.alpha = alpha;
    cfg.law = multiplier_from_int(multiplier);
    cfg.seed = seed;
    *out = new hetx_report{
        hetx::bootstrap_test(series->series, k, cfg, statistic_from_int(statistic))};
  });
}

int hetx_selfnorm_test(const hetx_series* series, int k, int r, int statistic, double alpha,
                       const char* quantile_table_path, uint64_t seed, hetx_report** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    const std::string path = (quantile_table_path && *quantile_table_path)
                                 ? quantile_table_path
                                 : hetx::default_selfnorm_table_path();
    const hetx::SelfNormQuantiles quantiles = hetx::SelfNormQuantiles::load_csv(path);
    *out = new hetx_report{hetx::selfnorm_test(series->series, k, r,
                                               statistic_from_int(statistic), quantiles, alpha,
                                               seed)};
  });
}

int hetx_indep_cvm_test(const hetx_series* series, int k, double cvm_quantile_95,
                        hetx_report** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    const double q = cvm_quantile_95 > 0.0 ? cvm_quantile_95 : hetx::kIndepCvm95;
    *out = new hetx_report{hetx::indep_cvm_test(series->series, k, q)};
  });
}

void hetx_report_free(hetx_report* r) { delete r; }

int hetx_report_to_json(const hetx_report* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = dup_string(r->report.to_json());
    require(*out != nullptr, "out of memory");
  });
}

int hetx_report_reject(const hetx_report* r, int* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = r->report.reject ? 1 : 0;
  });
}

int hetx_report_statistic(const hetx_report* r, double* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = r->report.statistic;
  });
}

int hetx_report_p_value(const hetx_report* r, double* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = r->report.has_p_value ? r->report.p_value : std::nan("");
  });
}

int hetx_ei_estimate(const hetx_series* series, int q, int k, double h, double kappa,
                     int grid_size, hetx_ei** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    hetx::EiConfig cfg;
    cfg.q = q;
    cfg.k = k;
    cfg.h = h;
    cfg.kappa = kappa;
    if (grid_size > 0) cfg.grid_size = grid_size;
    const hetx::BoundaryKernel bk(hetx::biweight_kernel(), h);
    *out = new hetx_ei{hetx::estimate_extremal_index(series->series, cfg, bk)};
  });
}

void hetx_ei_free(hetx_ei* e) { delete e; }

int hetx_ei_to_json(const hetx_ei* e, char** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    *out = dup_string(e->estimate.to_json());
    require(*out != nullptr, "out of memory");
  });
}

int hetx_ei_theta(const hetx_ei* e, double* theta1, double* theta2) {
  return guarded([&] {
    require(e != nullptr, "null argument");
    if (theta1) *theta1 = e->estimate.theta1;
    if (theta2) *theta2 = e->estimate.theta2;
  });
}

int hetx_selfnorm_quantiles_generate(const double* alphas, size_t n_alphas, long long paths,
                                     int grid, uint64_t seed, const char* out_path) {
  return guarded([&] {
    require(alphas != nullptr && out_path != nullptr, "null argument");
    const std::vector<double> levels(alphas, alphas + n_alphas);
    hetx::selfnorm_reference_quantiles(levels, paths, grid, seed).save_csv(out_path);
  });
}

int hetx_cvm_quantiles_generate(const double* levels, size_t n_levels, long long paths, int grid,
                                uint64_t seed, const char* out_path) {
  return guarded([&] {
    require(levels != nullptr && out_path != nullptr, "null argument");
    const std::vector<double> lv(levels, levels + n_levels);
    const std::vector<double> qs = hetx::cvm_reference_quantiles(lv, paths, grid, seed);
    std::vector<double> paths_col(lv.size(), static_cast<double>(paths));
    std::vector<double> grid_col(lv.size(), static_cast<double>(grid));
    std::vector<double> seed_col(lv.size(), static_cast<double>(seed));
    hetx::write_csv(out_path, {"level", "quantile", "paths", "grid", "seed"},
                    {lv, qs, paths_col, grid_col, seed_col});
  });
}

int hetx_archf_table_generate(long long n_sim, long long burn_in, double lambda, uint64_t seed,
                              const char* out_path) {
  return guarded([&] {
    require(out_path != nullptr, "null argument");
    hetx::generate_arch_marginal_table(n_sim, burn_in, lambda, seed).save_csv(out_path);
  });
}

int hetx_experiment_run(const char* kind, const char* spec_json, const char* out_dir, int threads,
                        uint64_t seed, char** table_path_out) {
  return guarded([&] {
    require(kind != nullptr && out_dir != nullptr, "null argument");
    hetx::ExperimentSpec spec;
    if (spec_json && *spec_json) {
      spec = hetx::ExperimentSpec::from_json(spec_json);
    } else if (std::string(kind) == "mse") {
      spec = hetx::ExperimentSpec::mse_defaults();
    } else {
      spec = hetx::ExperimentSpec::table1_defaults();
    }
    if (threads > 0) spec.threads = threads;
    if (seed != 0) spec.seed = seed;
    const std::string path = hetx::run_experiment_to_dir(spec, kind, out_dir);
    if (table_path_out) {
      *table_path_out = dup_string(path);
      require(*table_path_out != nullptr, "out of memory");
    }
  });
}

int hetx_analyze_csv(const char* path, const char* column, int k, int r, int q, double h,
                     double kappa, double alpha, int B, uint64_t seed,
                     const char* quantile_table_path, const char* out_dir,
                     char** report_json_out) {
  return guarded([&] {
    require(path != nullptr && out_dir != nullptr, "null argument");
    hetx::AnalyzeOptions opts;
    opts.input_path = path;
    opts.column = column ? column : "0";
    opts.k = k;
    opts.r = r;
    opts.q = q;
    opts.h = h;
    opts.kappa = kappa;
    opts.alpha = alpha;
    opts.B = B;
    opts.seed = seed;
    if (quantile_table_path && *quantile_table_path) opts.selfnorm_table = quantile_table_path;
    opts.out_dir = out_dir;
    const std::string report = hetx::analyze_csv(opts);
    if (report_json_out) {
      *report_json_out = dup_string(report);
      require(*report_json_out != nullptr, "out of memory");
    }
  });
}

} // extern "C"
