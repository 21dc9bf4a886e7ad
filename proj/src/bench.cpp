#include "eel/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eel/ensemble.hpp"
#include "eel/fitness.hpp"
#include "eel/random.hpp"
#include "eel/serialize.hpp"

namespace eel {
namespace {

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  value = trim(value);
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("config: " + std::string(key) + " expects an integer, got '" +
                                std::string(value) + "'");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0.0;
  value = trim(value);
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
    throw std::invalid_argument("config: " + std::string(key) + " expects a real, got '" +
                                std::string(value) + "'");
  }
  return out;
}

template <typename Enum>
Enum parse_choice(std::string_view key, std::string_view value,
                  std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  value = trim(value);
  for (const auto& [name, e] : choices) {
    if (name == value) {
      return e;
    }
  }
  throw std::invalid_argument("config: unknown value '" + std::string(value) + "' for " +
                              std::string(key));
}

std::string_view normalization_name(Normalization n) {
  return n == Normalization::per_fold ? "per-fold" : "global";
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::lms:
      return "lms";
    case Method::ga:
      return "ga";
    case Method::boost:
      return "boost";
    case Method::off_eel:
      return "off-eel";
    case Method::on_eel:
      return "on-eel";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  return parse_choice<Method>("method", name,
                              {{"lms", Method::lms},
                               {"ga", Method::ga},
                               {"boost", Method::boost},
                               {"off-eel", Method::off_eel},
                               {"on-eel", Method::on_eel}});
}

Profile parse_profile(std::string_view name) {
  return parse_choice<Profile>("profile", name, {{"paper", Profile::paper}, {"desk", Profile::desk}});
}

void ExperimentConfig::apply_profile(Profile profile) {
  if (profile == Profile::desk) {
    eel.ga.population_size = 100;
    eel.ga.max_evaluations = 20000;
    folds = 10;
    runs = 3;
    boost.max_rounds = 200;
    return;
  }
  eel.ga.population_size = 500;
  eel.ga.max_evaluations = 100000;
  folds = 10;
  runs = 10;
  boost.max_rounds = 2000;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  auto& ga = eel.ga;
  if (key == "dataset") {
    dataset = std::string(trim(value));
  } else if (key == "label_column") {
    label_column = parse_integer<int>(key, value);
  } else if (key == "method") {
    method = parse_method(trim(value));
  } else if (key == "profile") {
    apply_profile(parse_profile(trim(value)));
  } else if (key == "folds") {
    folds = parse_integer<std::size_t>(key, value);
  } else if (key == "runs") {
    runs = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "normalization") {
    normalization = parse_choice<Normalization>(
        key, value, {{"per-fold", Normalization::per_fold}, {"global", Normalization::global}});
  } else if (key == "workers") {
    workers = parse_integer<std::size_t>(key, value);
  } else if (key == "population_size") {
    ga.population_size = parse_integer<std::size_t>(key, value);
  } else if (key == "max_evaluations") {
    ga.max_evaluations = parse_integer<std::size_t>(key, value);
  } else if (key == "tournament_size") {
    ga.tournament_size = parse_integer<std::size_t>(key, value);
  } else if (key == "init_low") {
    ga.init_low = parse_real(key, value);
  } else if (key == "init_high") {
    ga.init_high = parse_real(key, value);
  } else if (key == "sbx_probability") {
    ga.sbx_probability = parse_real(key, value);
  } else if (key == "sbx_eta") {
    ga.sbx_eta = parse_real(key, value);
  } else if (key == "mutation_probability") {
    ga.mutation_probability = parse_real(key, value);
  } else if (key == "mutation_sigma") {
    ga.mutation_sigma = parse_real(key, value);
  } else if (key == "mutation_scope") {
    ga.mutation_scope = parse_choice<MutationScope>(
        key, value, {{"individual", MutationScope::individual}, {"gene", MutationScope::gene}});
  } else if (key == "gamma") {
    eel.fitness.gamma = parse_real(key, value);
  } else if (key == "dedup") {
    eel.dedup = parse_choice<DedupMode>(
        key, value, {{"genome", DedupMode::genome}, {"phenotype", DedupMode::phenotype}});
  } else if (key == "lms_max_epochs") {
    lms.max_epochs = parse_integer<std::size_t>(key, value);
  } else if (key == "lms_epsilon") {
    lms.stop_epsilon = parse_real(key, value);
  } else if (key == "lms_sign") {
    lms.sign = parse_choice<LmsSign>(
        key, value, {{"corrected", LmsSign::corrected}, {"verbatim", LmsSign::verbatim}});
  } else if (key == "boost_rounds") {
    boost.max_rounds = parse_integer<std::size_t>(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::validate() const {
  if (folds < 2) {
    throw std::invalid_argument("config: folds must be at least 2");
  }
  if (runs < 1) {
    throw std::invalid_argument("config: runs must be at least 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("config: workers must be at least 1");
  }
  if (!(eel.fitness.gamma >= 0.0)) {
    throw std::invalid_argument("config: gamma must be nonnegative");
  }
  if (method == Method::ga || method == Method::off_eel || method == Method::on_eel) {
    eel.ga.validate();
  }
  if (lms.max_epochs < 1 || !(lms.stop_epsilon > 0.0)) {
    throw std::invalid_argument("config: lms_max_epochs >= 1 and lms_epsilon > 0 required");
  }
  if (boost.max_rounds < 1) {
    throw std::invalid_argument("config: boost_rounds must be at least 1");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  const auto& ga = eel.ga;
  auto integer = [](auto v) { return std::to_string(v); };
  return {
      {"dataset", dataset},
      {"label_column", std::to_string(label_column)},
      {"method", std::string(method_name(method))},
      {"folds", integer(folds)},
      {"runs", integer(runs)},
      {"seed", integer(seed)},
      {"normalization", std::string(normalization_name(normalization))},
      {"population_size", integer(ga.population_size)},
      {"max_evaluations", integer(ga.max_evaluations)},
      {"tournament_size", integer(ga.tournament_size)},
      {"init_low", format_number(ga.init_low)},
      {"init_high", format_number(ga.init_high)},
      {"sbx_probability", format_number(ga.sbx_probability)},
      {"sbx_eta", format_number(ga.sbx_eta)},
      {"mutation_probability", format_number(ga.mutation_probability)},
      {"mutation_sigma", format_number(ga.mutation_sigma)},
      {"mutation_scope", ga.mutation_scope == MutationScope::individual ? "individual" : "gene"},
      {"gamma", format_number(eel.fitness.gamma)},
      {"dedup", eel.dedup == DedupMode::genome ? "genome" : "phenotype"},
      {"lms_max_epochs", integer(lms.max_epochs)},
      {"lms_epsilon", format_number(lms.stop_epsilon)},
      {"lms_sign", lms.sign == LmsSign::corrected ? "corrected" : "verbatim"},
      {"boost_rounds", integer(boost.max_rounds)},
  };
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    base.set(trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot read " + path.string());
  }
  return parse_config(in, std::move(base));
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t fold, std::size_t run) noexcept {
  return derive_seed(master, fold + 1, run + 1);
}

std::uint64_t fold_plan_seed(std::uint64_t master) noexcept {
  return derive_seed(master, 0, 0xf01d);
}

void summarize_records(ExperimentReport& report) {
  std::vector<double> train;
  std::vector<double> test;
  std::vector<double> sizes;
  for (const auto& r : report.records) {
    train.push_back(r.train_error);
    test.push_back(r.test_error);
    if (r.ensemble_size) {
      sizes.push_back(*r.ensemble_size);
    }
  }
  report.train_error = summarize(train);
  report.test_error = summarize(test);
  report.ensemble_size.reset();
  if (!sizes.empty()) {
    report.ensemble_size = summarize(sizes);
  }
}

namespace {

struct CellResult {
  double train_error = 0.0;
  double test_error = 0.0;
  std::optional<double> ensemble_size;
  nlohmann::json model;
};

template <typename Decide>
double cell_error(const Decide& decide, const Dataset& data) {
  return error_rate(decide, data);
}

CellResult run_cell(const Dataset& train, const Dataset& test, const ExperimentConfig& cfg,
                    std::uint64_t seed, const Telemetry& telemetry) {
  CellResult out;
  switch (cfg.method) {
    case Method::lms: {
      Rng rng(seed);
      const auto model = lms_train(train, cfg.lms, rng);
      out.train_error = error_rate(predict_all(model.classifier, train), train.labels());
      out.test_error = error_rate(predict_all(model.classifier, test), test.labels());
      out.model = model.classifier;
      break;
    }
    case Method::ga: {
      GAConfig ga = cfg.eel.ga;
      ga.seed = seed;
      const auto best = ga_single(train, ga, telemetry);
      out.train_error = error_rate(predict_all(best, train), train.labels());
      out.test_error = error_rate(predict_all(best, test), test.labels());
      out.model = best;
      break;
    }
    case Method::boost: {
      const auto result = adaboost_train(train, cfg.boost);
      const std::size_t classes = train.classes();
      auto decide = [&](std::span<const double> x) {
        return weighted_vote(result.model, x, classes);
      };
      out.train_error = cell_error(decide, train);
      out.test_error = cell_error(decide, test);
      out.ensemble_size = static_cast<double>(result.model.size());
      out.model = result.model;
      break;
    }
    case Method::off_eel:
    case Method::on_eel: {
      EELConfig eel = cfg.eel;
      eel.ga.seed = seed;
      eel.strategy = cfg.method == Method::off_eel ? Strategy::off : Strategy::on;
      const Ensemble ensemble = cfg.method == Method::off_eel ? off_eel(train, eel, telemetry)
                                                              : on_eel(train, eel, telemetry);
      out.train_error = error_rate(majority_vote_all(ensemble, train), train.labels());
      out.test_error = error_rate(majority_vote_all(ensemble, test), test.labels());
      out.ensemble_size = static_cast<double>(ensemble.size());
      out.model = ensemble;
      break;
    }
  }
  return out;
}

std::vector<std::string> assumptions_for(const ExperimentConfig& cfg) {
  std::vector<std::string> out;
  out.push_back(cfg.normalization == Normalization::per_fold
                    ? "normalization fitted on the training folds of each cell"
                    : "normalization fitted once on the whole dataset");
  switch (cfg.method) {
    case Method::lms:
      out.push_back(cfg.lms.sign == LmsSign::corrected
                        ? "lms update sign corrected to descend the squared error"
                        : "lms update sign taken verbatim (ascent direction)");
      break;
    case Method::boost:
      out.push_back("ensemble size counts boosting rounds (one stump each)");
      break;
    case Method::on_eel:
      out.push_back("on-eel runs max_evaluations / population_size generations");
      [[fallthrough]];
    case Method::ga:
    case Method::off_eel:
      out.push_back(cfg.eel.ga.mutation_scope == MutationScope::individual
                        ? "mutation probability applies per offspring"
                        : "mutation probability applies per gene");
      out.push_back("no elitism; offspring replace the parents");
      break;
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& cfg,
                                const ExperimentHooks& hooks) {
  cfg.validate();
  ExperimentReport report;
  report.method = std::string(method_name(cfg.method));
  report.dataset = cfg.dataset;
  report.examples = data.size();
  report.features = data.features();
  report.class_names = data.class_names();
  report.folds = cfg.folds;
  report.runs = cfg.runs;
  report.master_seed = cfg.seed;
  report.fold_seed = fold_plan_seed(cfg.seed);
  report.config = cfg.echo();
  report.assumptions = assumptions_for(cfg);

  const FoldPlan plan = stratified_kfold(data, cfg.folds, report.fold_seed);
  std::optional<NormParams> global;
  if (cfg.normalization == Normalization::global) {
    global = fit_normalizer(data);
  }

  const std::size_t cells = cfg.folds * cfg.runs;
  std::vector<RunRecord> records(cells);
  std::mutex hook_mutex;
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(cells);

  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t fold = cell / cfg.runs;
      const std::size_t run = cell % cfg.runs;
      try {
        const auto train_idx = plan.train_indices(fold);
        const auto test_idx = plan.test_indices(fold);
        const Dataset train_raw = data.subset(train_idx);
        const Dataset test_raw = data.subset(test_idx);
        const NormParams params = global ? *global : fit_normalizer(train_raw);
        const Dataset train = apply_normalizer(params, train_raw);
        const Dataset test = apply_normalizer(params, test_raw);

        Telemetry telemetry;
        if (hooks.telemetry) {
          telemetry = [&, fold, run](const GenerationStats& s) {
            std::lock_guard lock(hook_mutex);
            hooks.telemetry(fold, run, s);
          };
        }
        const std::uint64_t seed = cell_seed(cfg.seed, fold, run);
        const auto start = std::chrono::steady_clock::now();
        const CellResult result = run_cell(train, test, cfg, seed, telemetry);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        records[cell] = RunRecord{fold, run, seed, result.train_error, result.test_error,
                                  result.ensemble_size, elapsed.count()};
        if (hooks.model) {
          std::lock_guard lock(hook_mutex);
          hooks.model(fold, run, result.model);
        }
      } catch (const std::exception& e) {
        failures[cell] = std::make_exception_ptr(std::runtime_error(
            "fold " + std::to_string(fold) + " run " + std::to_string(run) + ": " + e.what()));
      }
    }
  };

  const std::size_t threads = std::min(cfg.workers, cells);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  for (const auto& f : failures) {
    if (f) {
      std::rethrow_exception(f);
    }
  }
  report.records = std::move(records);
  summarize_records(report);
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const ExperimentHooks& hooks) {
  if (cfg.dataset.empty()) {
    throw std::invalid_argument("config: no dataset given");
  }
  CsvOptions options;
  options.label_column = cfg.label_column;
  return run_experiment(load_csv(cfg.dataset, options), cfg, hooks);
}

namespace {

nlohmann::json summary_json(const Summary& s) {
  return nlohmann::json{{"mean", s.mean}, {"std", s.stddev}};
}

Summary summary_from(const nlohmann::json& j) {
  return Summary{j.at("mean").get<double>(), j.at("std").get<double>()};
}

}  // namespace

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json config = nlohmann::json::array();
  for (const auto& [k, v] : report.config) {
    config.push_back(nlohmann::json::array({k, v}));
  }
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"fold", r.fold},
                       {"run", r.run},
                       {"seed", r.seed},
                       {"train_error", r.train_error},
                       {"test_error", r.test_error},
                       {"ensemble_size", r.ensemble_size ? nlohmann::json(*r.ensemble_size)
                                                         : nlohmann::json(nullptr)},
                       {"wall_time", r.wall_time}});
  }
  return nlohmann::json{
      {"method", report.method},
      {"dataset", report.dataset},
      {"examples", report.examples},
      {"features", report.features},
      {"class_names", report.class_names},
      {"folds", report.folds},
      {"runs", report.runs},
      {"master_seed", report.master_seed},
      {"fold_seed", report.fold_seed},
      {"config", std::move(config)},
      {"assumptions", report.assumptions},
      {"summary",
       {{"train_error", summary_json(report.train_error)},
        {"test_error", summary_json(report.test_error)},
        {"ensemble_size", report.ensemble_size ? summary_json(*report.ensemble_size)
                                               : nlohmann::json(nullptr)}}},
      {"records", std::move(records)},
  };
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport report;
  report.method = j.at("method").get<std::string>();
  report.dataset = j.at("dataset").get<std::string>();
  report.examples = j.at("examples").get<std::size_t>();
  report.features = j.at("features").get<std::size_t>();
  report.class_names = j.at("class_names").get<std::vector<std::string>>();
  report.folds = j.at("folds").get<std::size_t>();
  report.runs = j.at("runs").get<std::size_t>();
  report.master_seed = j.at("master_seed").get<std::uint64_t>();
  report.fold_seed = j.at("fold_seed").get<std::uint64_t>();
  for (const auto& kv : j.at("config")) {
    report.config.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
  }
  report.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  for (const auto& r : j.at("records")) {
    RunRecord rec;
    rec.fold = r.at("fold").get<std::size_t>();
    rec.run = r.at("run").get<std::size_t>();
    rec.seed = r.at("seed").get<std::uint64_t>();
    rec.train_error = r.at("train_error").get<double>();
    rec.test_error = r.at("test_error").get<double>();
    if (!r.at("ensemble_size").is_null()) {
      rec.ensemble_size = r.at("ensemble_size").get<double>();
    }
    rec.wall_time = r.at("wall_time").get<double>();
    report.records.push_back(rec);
  }
  const auto& summary = j.at("summary");
  report.train_error = summary_from(summary.at("train_error"));
  report.test_error = summary_from(summary.at("test_error"));
  if (!summary.at("ensemble_size").is_null()) {
    report.ensemble_size = summary_from(summary.at("ensemble_size"));
  }
  return report;
}

ExperimentReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("report: cannot read " + path.string());
  }
  return report_from_json(nlohmann::json::parse(in));
}

ReportFormat parse_report_format(std::string_view name) {
  return parse_choice<ReportFormat>(
      "format", name,
      {{"json", ReportFormat::json}, {"csv", ReportFormat::csv}, {"markdown", ReportFormat::markdown}});
}

std::string markdown_header() {
  return "| Method | Train error | Test error | Test error p-value | Ensemble size |\n"
         "|---|---|---|---|---|\n";
}

namespace {

std::string percent(const Summary& s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << 100.0 * s.mean << "% (" << 100.0 * s.stddev
      << "%)";
  return out.str();
}

}  // namespace

void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out,
                 const ExperimentReport* reference) {
  switch (format) {
    case ReportFormat::json:
      out << report_to_json(report).dump(2) << '\n';
      return;
    case ReportFormat::csv:
      out << "fold,run,seed,train_error,test_error,ensemble_size,wall_time\n";
      for (const auto& r : report.records) {
        out << r.fold << ',' << r.run << ',' << r.seed << ',' << format_number(r.train_error)
            << ',' << format_number(r.test_error) << ','
            << (r.ensemble_size ? format_number(*r.ensemble_size) : std::string()) << ','
            << format_number(r.wall_time) << '\n';
      }
      return;
    case ReportFormat::markdown: {
      std::string p = "--";
      if (reference != nullptr) {
        std::ostringstream ps;
        ps << std::fixed << std::setprecision(2) << compare_reports(report, *reference).test_error_p;
        p = ps.str();
      }
      std::string size = "--";
      if (report.ensemble_size) {
        std::ostringstream ss;
        ss << std::fixed << std::setprecision(1) << report.ensemble_size->mean << " ("
           << report.ensemble_size->stddev << ")";
        size = ss.str();
      }
      out << "| " << report.method << " | " << percent(report.train_error) << " | "
          << percent(report.test_error) << " | " << p << " | " << size << " |\n";
      return;
    }
  }
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path, const ExperimentReport* reference) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("report: cannot write " + path.string());
  }
  emit_report(report, format, out, reference);
  if (!out) {
    throw std::runtime_error("report: write failed for " + path.string());
  }
}

Comparison compare_reports(const ExperimentReport& a, const ExperimentReport& b, bool per_fold) {
  if (a.folds != b.folds || a.runs != b.runs || a.fold_seed != b.fold_seed ||
      a.examples != b.examples || a.records.size() != b.records.size()) {
    throw std::invalid_argument("compare: reports do not share folds and runs");
  }
  std::map<std::pair<std::size_t, std::size_t>, const RunRecord*> b_cells;
  for (const auto& r : b.records) {
    b_cells[{r.fold, r.run}] = &r;
  }

  std::vector<double> a_train, b_train, a_test, b_test, a_size, b_size;
  bool sizes = true;
  for (const auto& ra : a.records) {
    const auto it = b_cells.find({ra.fold, ra.run});
    if (it == b_cells.end()) {
      throw std::invalid_argument("compare: unmatched cell");
    }
    const RunRecord& rb = *it->second;
    a_train.push_back(ra.train_error);
    b_train.push_back(rb.train_error);
    a_test.push_back(ra.test_error);
    b_test.push_back(rb.test_error);
    if (ra.ensemble_size && rb.ensemble_size) {
      a_size.push_back(*ra.ensemble_size);
      b_size.push_back(*rb.ensemble_size);
    } else {
      sizes = false;
    }
  }

  if (per_fold) {
    // Mean over the runs of each fold.
    auto fold_means = [&](const ExperimentReport& rep, auto field) {
      std::vector<double> sum(rep.folds, 0.0);
      std::vector<double> count(rep.folds, 0.0);
      for (const auto& r : rep.records) {
        if (auto v = field(r)) {
          sum[r.fold] += *v;
          count[r.fold] += 1.0;
        }
      }
      for (std::size_t f = 0; f < rep.folds; ++f) {
        sum[f] /= count[f] > 0.0 ? count[f] : 1.0;
      }
      return sum;
    };
    auto train_of = [](const RunRecord& r) { return std::optional<double>(r.train_error); };
    auto test_of = [](const RunRecord& r) { return std::optional<double>(r.test_error); };
    auto size_of = [](const RunRecord& r) { return r.ensemble_size; };
    a_train = fold_means(a, train_of);
    b_train = fold_means(b, train_of);
    a_test = fold_means(a, test_of);
    b_test = fold_means(b, test_of);
    if (sizes) {
      a_size = fold_means(a, size_of);
      b_size = fold_means(b, size_of);
    }
  }

  Comparison c;
  c.pairs = a_test.size();
  c.train_error_p = paired_ttest(a_train, b_train);
  c.test_error_p = paired_ttest(a_test, b_test);
  if (sizes && !a_size.empty()) {
    c.ensemble_size_p = paired_ttest(a_size, b_size);
  }
  return c;
}

void discretize_target(std::istream& in, std::ostream& out, std::span<const double> thresholds,
                       int target_column) {
  if (thresholds.empty() || !std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("discretize: thresholds must be nonempty and ascending");
  }
  bool first = true;
  for (std::string line; std::getline(in, line);) {
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      cells.push_back(cell);
    }
    const long col = target_column < 0 ? static_cast<long>(cells.size()) + target_column
                                       : target_column;
    if (col < 0 || col >= static_cast<long>(cells.size())) {
      throw std::out_of_range("discretize: target column out of range");
    }
    auto& cell = cells[static_cast<std::size_t>(col)];
    const auto view = trim(cell);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
    const bool numeric = ec == std::errc{} && ptr == view.data() + view.size() && !view.empty();
    if (!numeric) {
      if (!first) {
        throw std::invalid_argument("discretize: non-numeric target '" + cell + "'");
      }
      cell = "class";
    } else {
      std::size_t k = 0;
      while (k < thresholds.size() && v > thresholds[k]) {
        ++k;
      }
      cell = std::to_string(k);
    }
    first = false;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "," : "") << cells[c];
    }
    out << '\n';
  }
}

}  // namespace eel
