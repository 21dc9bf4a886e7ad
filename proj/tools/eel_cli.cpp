#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eel/bench.hpp"
#include "eel/kernels.hpp"

namespace {

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string cell; std::getline(ss, cell, ',');) {
    out.push_back(std::stod(cell));
  }
  return out;
}

int run_command(const std::string& config_path, const std::string& dataset,
                const std::string& method, const std::string& profile,
                const std::optional<std::uint64_t>& seed, const std::optional<std::size_t>& workers,
                const std::vector<std::string>& overrides, const std::string& out_path,
                const std::string& format, const std::string& telemetry_path,
                const std::string& models_path) {
  eel::ExperimentConfig cfg;
  if (!profile.empty()) {
    cfg.apply_profile(eel::parse_profile(profile));
  }
  if (!config_path.empty()) {
    cfg = eel::load_config(config_path, cfg);
  }
  if (!dataset.empty()) {
    cfg.dataset = dataset;
  }
  if (!method.empty()) {
    cfg.method = eel::parse_method(method);
  }
  if (seed) {
    cfg.seed = *seed;
  }
  if (workers) {
    cfg.workers = *workers;
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }

  eel::ExperimentHooks hooks;
  std::ofstream telemetry;
  if (!telemetry_path.empty()) {
    telemetry.open(telemetry_path);
    if (!telemetry) {
      throw std::runtime_error("cannot write " + telemetry_path);
    }
    telemetry << "fold,run,generation,evaluations,best_fitness,ensemble_size,train_error\n";
    hooks.telemetry = [&](std::size_t fold, std::size_t run, const eel::GenerationStats& s) {
      telemetry << fold << ',' << run << ',' << s.generation << ',' << s.evaluations << ','
                << s.best_fitness << ',' << s.ensemble_size << ',' << s.train_error << '\n';
    };
  }
  nlohmann::json models = nlohmann::json::array();
  if (!models_path.empty()) {
    hooks.model = [&](std::size_t fold, std::size_t run, const nlohmann::json& m) {
      models.push_back({{"fold", fold}, {"run", run}, {"model", m}});
    };
  }

  std::cerr << "kernels: " << eel::kernels::isa_name(eel::kernels::active_isa()) << '\n';
  const auto report = eel::run_experiment(cfg, hooks);
  const auto fmt = eel::parse_report_format(format);
  if (out_path.empty() || out_path == "-") {
    if (fmt == eel::ReportFormat::markdown) {
      std::cout << eel::markdown_header();
    }
    eel::emit_report(report, fmt, std::cout);
  } else {
    eel::emit_report(report, fmt, std::filesystem::path(out_path));
  }
  if (!models_path.empty()) {
    std::ofstream out(models_path);
    if (!out) {
      throw std::runtime_error("cannot write " + models_path);
    }
    out << models.dump() << '\n';
  }
  std::cerr << eel::method_name(cfg.method) << ": train " << report.train_error.mean << " test "
            << report.test_error.mean << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary ensembles of linear classifiers"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Cross-validate one method on one dataset");
  std::string config_path, dataset, method, profile, out_path, format = "json", telemetry_path,
                                                               models_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::vector<std::string> overrides;
  run->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  run->add_option("--dataset", dataset, "CSV dataset (label in the last column by default)");
  run->add_option("--method", method, "lms | ga | boost | off-eel | on-eel");
  run->add_option("--profile", profile, "paper | desk (applied before the config file)");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--workers", workers, "Concurrent cells; results do not depend on it");
  run->add_option("--set", overrides, "Extra key=value settings (repeatable)");
  run->add_option("--out", out_path, "Report path ('-' or omitted: stdout)");
  run->add_option("--format", format, "json | csv | markdown");
  run->add_option("--telemetry", telemetry_path, "Per-generation CSV log");
  run->add_option("--models", models_path, "Trained models as JSON");

  auto* compare = app.add_subcommand("compare", "Paired t-tests between two JSON reports");
  std::string report_a, report_b;
  bool per_fold = false;
  compare->add_option("--a", report_a, "First report")->required()->check(CLI::ExistingFile);
  compare->add_option("--b", report_b, "Second report")->required()->check(CLI::ExistingFile);
  compare->add_flag("--per-fold", per_fold, "Pair fold means instead of single runs");

  auto* prep = app.add_subcommand("prep-bos", "Discretize a continuous target into classes");
  std::string thresholds, in_path, prep_out;
  int target_column = -1;
  prep->add_option("--thresholds", thresholds, "Ascending cut points, comma separated")->required();
  prep->add_option("--in", in_path, "Input CSV")->required()->check(CLI::ExistingFile);
  prep->add_option("--out", prep_out, "Output CSV")->required();
  prep->add_option("--target-column", target_column, "Target column (negative: from the end)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return run_command(config_path, dataset, method, profile, seed, workers, overrides,
                         out_path, format, telemetry_path, models_path);
    }
    if (*compare) {
      const auto a = eel::load_report(report_a);
      const auto b = eel::load_report(report_b);
      const auto c = eel::compare_reports(a, b, per_fold);
      nlohmann::json j{{"a", a.method},
                       {"b", b.method},
                       {"pairs", c.pairs},
                       {"train_error_p", c.train_error_p},
                       {"test_error_p", c.test_error_p},
                       {"ensemble_size_p", c.ensemble_size_p ? nlohmann::json(*c.ensemble_size_p)
                                                             : nlohmann::json(nullptr)}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*prep) {
      std::ifstream in(in_path);
      std::ofstream out(prep_out);
      if (!out) {
        throw std::runtime_error("cannot write " + prep_out);
      }
      const auto cuts = parse_thresholds(thresholds);
      eel::discretize_target(in, out, cuts, target_column);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
