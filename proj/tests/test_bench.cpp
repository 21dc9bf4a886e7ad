#include <sstream>

#include "doctest.h"

#include "eel/bench.hpp"
#include "oracles.hpp"

using namespace eel;

namespace {

ExperimentConfig tiny(Method m) {
  ExperimentConfig cfg;
  cfg.method = m;
  cfg.folds = 3;
  cfg.runs = 2;
  cfg.seed = 77;
  cfg.eel.ga.population_size = 20;
  cfg.eel.ga.max_evaluations = 200;
  cfg.lms.max_epochs = 50;
  cfg.boost.max_rounds = 20;
  return cfg;
}

Dataset small_data() {
  std::mt19937_64 rng(5);
  return oracle::linear_dataset(rng, 60, 3, 0.1);
}

std::string without_wall_time(ExperimentReport r) {
  for (auto& rec : r.records) rec.wall_time = 0.0;
  return report_to_json(r).dump();
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "dataset = data/x.csv\n"
      "method = on-eel\n"
      "folds=5\n"
      "population_size = 60  # trailing comment\n"
      "mutation_scope = gene\n"
      "lms_sign = verbatim\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.dataset == "data/x.csv");
  CHECK(cfg.method == Method::on_eel);
  CHECK(cfg.folds == 5);
  CHECK(cfg.eel.ga.population_size == 60);
  CHECK(cfg.eel.ga.mutation_scope == MutationScope::gene);
  CHECK(cfg.lms.sign == LmsSign::verbatim);

  ExperimentConfig c;
  CHECK_THROWS_AS(c.set("nonsense", "1"), std::invalid_argument);
  CHECK_THROWS_AS(c.set("folds", "ten"), std::invalid_argument);
  CHECK_THROWS_AS(c.set("method", "svm"), std::invalid_argument);
  std::istringstream bad("folds 3\n");
  CHECK_THROWS(parse_config(bad));
  c.folds = 1;
  CHECK_THROWS(c.validate());
  c.folds = 2;
  c.runs = 0;
  CHECK_THROWS(c.validate());

  ExperimentConfig desk;
  desk.set("profile", "desk");
  CHECK(desk.eel.ga.population_size == 100);
  CHECK(desk.eel.ga.max_evaluations == 20000);
  CHECK(desk.runs == 3);
  CHECK(desk.boost.max_rounds == 200);
}

TEST_CASE("seeds and fold plans") {
  CHECK(cell_seed(1, 0, 0) != cell_seed(1, 0, 1));
  CHECK(cell_seed(1, 2, 3) == cell_seed(1, 2, 3));
  CHECK(cell_seed(1, 2, 3) != cell_seed(2, 2, 3));
  const auto data = small_data();
  const auto a = run_experiment(data, tiny(Method::lms));
  const auto b = run_experiment(data, tiny(Method::boost));
  CHECK(a.fold_seed == b.fold_seed);
}

TEST_CASE("experiment shape and aggregation") {
  const auto data = small_data();
  auto cfg = tiny(Method::off_eel);
  cfg.folds = 2;
  cfg.runs = 1;
  const auto r = run_experiment(data, cfg);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].fold == 0);
  CHECK(r.records[1].fold == 1);
  for (const auto& rec : r.records) {
    CHECK(rec.ensemble_size.has_value());
    CHECK(rec.train_error >= 0.0);
    CHECK(rec.test_error <= 1.0);
  }
  auto copy = r;
  summarize_records(copy);
  CHECK(std::abs(copy.test_error.mean - r.test_error.mean) <= 1e-12);
  CHECK(std::abs(copy.test_error.stddev - r.test_error.stddev) <= 1e-12);
  CHECK(r.test_error.mean == doctest::Approx((r.records[0].test_error + r.records[1].test_error) / 2));
}

TEST_CASE("reports are deterministic and independent of the worker count") {
  const auto data = small_data();
  for (Method m : {Method::lms, Method::ga, Method::boost, Method::off_eel, Method::on_eel}) {
    auto cfg = tiny(m);
    const auto a = run_experiment(data, cfg);
    cfg.workers = 3;
    const auto b = run_experiment(data, cfg);
    CHECK(without_wall_time(a) == without_wall_time(b));
    CHECK(a.records.size() == 6);
  }
}

TEST_CASE("report formats") {
  const auto data = small_data();
  auto r = run_experiment(data, tiny(Method::off_eel));
  r.dataset = "toy";

  const auto back = report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
  CHECK(back == r);

  std::ostringstream csv;
  emit_report(r, ReportFormat::csv, csv);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  CHECK(lines == 1 + r.folds * r.runs);

  std::ostringstream md;
  emit_report(r, ReportFormat::markdown, md, &r);
  const auto row = md.str();
  CHECK(row.rfind("| off-eel |", 0) == 0);
  std::size_t bars = 0;
  for (char c : row) bars += c == '|';
  CHECK(bars == 6);
  CHECK(row.find("1.00") != std::string::npos);

  CHECK_THROWS(emit_report(r, ReportFormat::json, std::filesystem::path("/nonexistent/dir/r.json")));
}

TEST_CASE("comparisons") {
  const auto data = small_data();
  const auto a = run_experiment(data, tiny(Method::off_eel));
  const auto self = compare_reports(a, a);
  CHECK(self.pairs == 6);
  CHECK(self.train_error_p == 1.0);
  CHECK(self.test_error_p == 1.0);
  CHECK(self.ensemble_size_p == 1.0);
  const auto b = run_experiment(data, tiny(Method::lms));
  const auto c = compare_reports(a, b);
  CHECK(c.test_error_p >= 0.0);
  CHECK(c.test_error_p <= 1.0);
  CHECK(!c.ensemble_size_p.has_value());
  CHECK(compare_reports(a, b, true).pairs == 3);

  auto other = tiny(Method::lms);
  other.seed = 78;
  CHECK_THROWS(compare_reports(a, run_experiment(data, other)));
}

TEST_CASE("target discretization") {
  std::istringstream in("a,medv\n1,18.77\n2,18.78\n3,23.74\n4,30\n5,5\n");
  std::ostringstream out;
  const std::vector<double> t{18.77, 23.74};
  discretize_target(in, out, t);
  CHECK(out.str() == "a,class\n1,0\n2,1\n3,1\n4,2\n5,0\n");
  std::ostringstream sink;
  const std::vector<double> unsorted{3.0, 1.0};
  std::istringstream any("1,2\n");
  CHECK_THROWS(discretize_target(any, sink, unsorted));
}

TEST_CASE("failures carry the cell") {
  const Dataset tiny_data({0.0, 1.0, 2.0, 3.0, 4.0, 5.0}, 1, {0, 0, 0, 1, 1, 1}, 2);
  auto cfg = tiny(Method::ga);
  cfg.eel.ga.max_evaluations = 10;
  CHECK_THROWS_WITH(run_experiment(tiny_data, cfg), doctest::Contains("fold 0 run 0"));
}
