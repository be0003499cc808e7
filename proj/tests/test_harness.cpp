#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hetx/csv.hpp"
#include "hetx/error.hpp"
#include "hetx/harness.hpp"
#include "hetx/rng.hpp"
#include "hetx/stats.hpp"
#include "hetx/testing.hpp"

using namespace hetx;
namespace fs = std::filesystem;

#ifndef HETX_SOURCE_DATA_DIR
#define HETX_SOURCE_DATA_DIR "data"
#endif

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string shipped(const char* name) {
  return std::string(HETX_SOURCE_DATA_DIR) + "/" + name;
}

ExperimentSpec tiny_rejection_spec() {
  ExperimentSpec spec;
  spec.processes = {ProcessSpec{ProcessSpec::Kind::indep, 0.0}};
  spec.families = {FamilyKind::c1};
  spec.betas = {1.0, 0.25};
  spec.n = 500;
  spec.k_list = {50};
  spec.r_list = {4};
  spec.B = 50;
  spec.N = 20;
  spec.seed = 99;
  spec.selfnorm_table = shipped("selfnorm_quantiles.csv");
  return spec;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("csv column reading") {
  TempDir dir("hetx_csv_test");
  const fs::path good = dir.path / "good.csv";
  {
    std::ofstream out(good);
    out << "time,value\n1,10.5\n2,11.25\n3,-2\n";
  }
  const CsvColumn by_name = read_csv_column(good.string(), "value");
  CHECK(by_name.had_header);
  CHECK(by_name.header == "value");
  CHECK(by_name.values == std::vector<double>{10.5, 11.25, -2.0});

  const CsvColumn by_index = read_csv_column(good.string(), "1");
  CHECK(by_index.values == by_name.values);

  // headerless single column
  const fs::path plain = dir.path / "plain.csv";
  {
    std::ofstream out(plain);
    out << "1.5\n2.5\n3.5\n";
  }
  const CsvColumn col = read_csv_column(plain.string(), "0");
  CHECK_FALSE(col.had_header);
  CHECK(col.values.size() == 3);

  // single column with a header row: header is echoed
  const fs::path headed = dir.path / "headed.csv";
  {
    std::ofstream out(headed);
    out << "losses\n1\n2\n";
  }
  const CsvColumn echoed = read_csv_column(headed.string(), "0");
  CHECK(echoed.had_header);
  CHECK(echoed.header == "losses");

  // non-numeric cell names row and column
  const fs::path bad = dir.path / "bad.csv";
  {
    std::ofstream out(bad);
    out << "a,b\n1,2\n3,oops\n";
  }
  try {
    read_csv_column(bad.string(), "b");
    FAIL("expected a data error");
  } catch (const error& e) {
    CHECK(e.code() == errc::data);
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }

  // missing cell
  const fs::path missing = dir.path / "missing.csv";
  {
    std::ofstream out(missing);
    out << "a,b\n1,2\n3,\n";
  }
  CHECK_THROWS_AS(read_csv_column(missing.string(), "b"), error);
  CHECK_THROWS_AS(read_csv_column((dir.path / "absent.csv").string(), "0"), error);
  CHECK_THROWS_AS(read_csv_column(good.string(), "nope"), error);
}

TEST_CASE("result table round-trip") {
  TempDir dir("hetx_table_rt");
  const ExperimentSpec spec = tiny_rejection_spec();
  const ResultTable table = run_rejection_experiment(spec);
  CHECK(table.schema == "hetx.rejection.v1");
  CHECK(table.rows.size() == 2 * 5); // two cells, five methods
  const fs::path path = dir.path / "table.csv";
  write_result_table(table, path.string());
  const ResultTable back = read_result_table(path.string());
  CHECK(back == table);
}

TEST_CASE("experiment determinism across runs and thread counts") {
  TempDir dir("hetx_det");
  ExperimentSpec spec = tiny_rejection_spec();
  spec.threads = 1;
  const ResultTable t1 = run_rejection_experiment(spec);
  spec.threads = 3;
  const ResultTable t3 = run_rejection_experiment(spec);
  CHECK(t1 == t3);
  const ResultTable t1b = run_rejection_experiment(tiny_rejection_spec());
  CHECK(t1 == t1b);

  // byte-identical files as well
  write_result_table(t1, (dir.path / "a.csv").string());
  write_result_table(t3, (dir.path / "b.csv").string());
  CHECK(file_bytes(dir.path / "a.csv") == file_bytes(dir.path / "b.csv"));
}

TEST_CASE("rates lie in [0,1] and rejection counts add up") {
  const ResultTable table = run_rejection_experiment(tiny_rejection_spec());
  const auto rate_col = std::find(table.columns.begin(), table.columns.end(), "rate");
  REQUIRE(rate_col != table.columns.end());
  const auto n_used_col = std::find(table.columns.begin(), table.columns.end(), "n_used");
  for (const auto& row : table.rows) {
    const double rate = std::stod(row[static_cast<std::size_t>(rate_col - table.columns.begin())]);
    CHECK(rate >= 0.0);
    CHECK(rate <= 1.0);
    CHECK(row[static_cast<std::size_t>(n_used_col - table.columns.begin())] == "20");
  }
}

TEST_CASE("power increases as beta decreases") {
  ExperimentSpec spec;
  spec.processes = {ProcessSpec{ProcessSpec::Kind::indep, 0.0}};
  spec.families = {FamilyKind::c1};
  spec.betas = {1.0, 0.75, 0.5, 0.25};
  spec.n = 2000;
  spec.k_list = {200};
  spec.r_list = {4};
  spec.B = 100;
  spec.N = 100;
  spec.seed = 7;
  spec.selfnorm_table = shipped("selfnorm_quantiles.csv");
  const ResultTable table = run_rejection_experiment(spec);
  std::vector<double> rates;
  for (double beta : spec.betas) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%g", beta);
    rates.push_back(std::stod(table.find(
        {{"beta", buf}, {"method", "boot-cvm"}}, "rate")));
  }
  // non-decreasing power as beta decreases, allowing one small inversion
  int inversions = 0;
  for (std::size_t i = 1; i < rates.size(); ++i) {
    if (rates[i] < rates[i - 1]) {
      ++inversions;
      CHECK(rates[i - 1] - rates[i] <= 0.02);
    }
  }
  CHECK(inversions <= 1);
  CHECK(rates.back() >= 0.95); // strong alternative: near-full power
}

TEST_CASE("extremal-index experiment output") {
  ExperimentSpec spec;
  spec.processes = {ProcessSpec{ProcessSpec::Kind::armax, 0.25}};
  spec.families = {FamilyKind::c1};
  spec.betas = {0.5};
  spec.n = 1000;
  spec.k_list = {200};
  spec.q_list = {16, 32};
  spec.N = 10;
  spec.h = 0.2;
  spec.kappa = 0.1;
  spec.seed = 5;
  const ResultTable table = run_ei_experiment(spec);
  CHECK(table.schema == "hetx.mse.v1");
  CHECK(table.rows.size() == 4); // 2 block sizes x 2 estimators
  CHECK(table.find({{"q", "16"}, {"estimator", "theta2"}}, "theta_true") == "0.75");
  const double mse = std::stod(table.find({{"q", "32"}, {"estimator", "theta1"}}, "mse"));
  CHECK(mse >= 0.0);
  // determinism
  const ResultTable again = run_ei_experiment(spec);
  CHECK(again == table);
}

TEST_CASE("experiment writes table and config echo") {
  TempDir dir("hetx_exp_out");
  const std::string path =
      run_experiment_to_dir(tiny_rejection_spec(), "table1", dir.path.string());
  CHECK(fs::exists(path));
  CHECK(fs::exists(dir.path / "table1_config.json"));
  const std::string cfg = file_bytes(dir.path / "table1_config.json");
  CHECK(cfg.find("\"seed\": 99") != std::string::npos);
  CHECK_THROWS_AS(run_experiment_to_dir(tiny_rejection_spec(), "nope", dir.path.string()), error);
}

TEST_CASE("experiment spec json round-trip") {
  ExperimentSpec spec = tiny_rejection_spec();
  spec.q_list = {8, 16};
  const ExperimentSpec back = ExperimentSpec::from_json(spec.to_json());
  CHECK(back.to_json() == spec.to_json());
  CHECK_THROWS_AS(ExperimentSpec::from_json("{nope"), error);
  CHECK_THROWS_AS(ExperimentSpec::from_json("{\"processes\":[{\"kind\":\"weird\"}]}"), error);
}

TEST_CASE("analyze_csv end to end") {
  TempDir dir("hetx_analyze");
  // simulate a file through the CSV layer
  const fs::path input = dir.path / "input.csv";
  {
    Rng rng = make_stream(31, 0);
    std::ofstream out(input);
    out << "obs\n";
    for (int i = 0; i < 600; ++i) out << rng.frechet1() << "\n";
  }
  AnalyzeOptions opts;
  opts.input_path = input.string();
  opts.column = "obs";
  opts.k = 60;
  opts.r = 4;
  opts.q = 20;
  opts.h = 0.15;
  opts.kappa = 0.1;
  opts.B = 100;
  opts.seed = 17;
  opts.selfnorm_table = shipped("selfnorm_quantiles.csv");
  opts.out_dir = (dir.path / "out").string();
  const std::string report = analyze_csv(opts);
  CHECK(report.find("\"CvM-boot\"") != std::string::npos);
  CHECK(report.find("\"obs\"") != std::string::npos);
  CHECK(report.find("theta2") != std::string::npos);
  CHECK(fs::exists(dir.path / "out" / "report.json"));
  CHECK(fs::exists(dir.path / "out" / "scedasis_curve.csv"));
  CHECK(fs::exists(dir.path / "out" / "cn_path.csv"));
  CHECK(fs::exists(dir.path / "out" / "bootstrap_replicates.csv"));
  // the curve file re-reads as numeric columns
  const CsvColumn chat = read_csv_column((dir.path / "out" / "scedasis_curve.csv").string(), "chat");
  CHECK(chat.values.size() == 514);

  opts.k = 0;
  CHECK_THROWS_AS(analyze_csv(opts), error);
}

TEST_CASE("failed replicates are excluded and the cell is flagged") {
  // with two blocks and Rademacher multipliers the self-normalization
  // denominator degenerates for half of the draws, so replicates fail
  ExperimentSpec spec;
  spec.processes = {ProcessSpec{ProcessSpec::Kind::indep, 0.0}};
  spec.families = {FamilyKind::c1};
  spec.betas = {1.0};
  spec.n = 16;
  spec.k_list = {1};
  spec.r_list = {8};
  spec.B = 20;
  spec.N = 40;
  spec.seed = 1;
  spec.selfnorm_table = shipped("selfnorm_quantiles.csv");
  const ResultTable table = run_rejection_experiment(spec);
  const int n_failed = std::stoi(table.find({{"method", "boot-cvm"}}, "n_failed"));
  const int n_used = std::stoi(table.find({{"method", "boot-cvm"}}, "n_used"));
  CHECK(n_failed > 0);
  CHECK(n_used + n_failed == 40);
  CHECK(table.find({{"method", "boot-cvm"}}, "flagged") == "1");
}

TEST_CASE("bootstrap p-values are roughly uniform under the null") {
  // p-value calibration at the k/n = 5% operating point: KS distance of 100
  // p-values against uniform stays below 0.15 (the test is conservative for
  // much larger exceedance fractions)
  std::vector<double> pvalues;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng = make_stream(777, static_cast<std::uint64_t>(rep));
    std::vector<double> values(2000);
    for (auto& v : values) v = rng.frechet1();
    BootstrapConfig cfg;
    cfg.r = 4;
    cfg.B = 199;
    cfg.seed = derive_stream_seed(778, static_cast<std::uint64_t>(rep));
    pvalues.push_back(bootstrap_test(Series(values), 100, cfg, Statistic::cvm).p_value);
  }
  CHECK(ks_distance_uniform(pvalues) < 0.15);
}

} // TEST_SUITE
