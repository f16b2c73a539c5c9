// Copyright 2026 The fedmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run single experiments, sweep parameter grids,
// compute the exact mining oracle, and pretty-print saved reports.
//
// Exit codes: 0 success, 2 configuration error, 3 owner supply
// exhausted (partial result written), 4 I/O error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fedmine/data.hpp"
#include "fedmine/report.hpp"
#include "fedmine/runtime.hpp"

namespace {

using fedmine::ExperimentConfig;
using fedmine::ExperimentResult;
using fedmine::LocalData;
using fedmine::Pattern;
using fedmine::PatternKind;
using fedmine::PatternUniverse;
using fedmine::SyntheticSpec;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitIo = 4;

constexpr std::uint64_t kDatasetTag = 0x44415441;

struct CommonOptions {
  std::string config_path;

  std::string kind = "itemset";
  double f = 0.05;
  double epsilon = 2.0;
  int K = 50;
  int P = 1000;
  std::int64_t tau = 0;  // 0 -> 20 * P
  double eta_g = 0.01;
  double eta_s = 0.01;
  std::string strategy = "reusing";
  std::uint64_t seed = 1;
  std::size_t max_length = 10;
  std::size_t owner_cap = 0;  // 0 -> dataset size
  bool with_replacement = false;
  std::string noise = "on";
  bool exhaustive = false;
  int degree = 0;

  std::string dataset_path;
  std::string id_map_path;
  std::size_t owners = 0;
  std::uint32_t universe = 0;
  double zipf = 1.1;
  double background_mean = 8.0;
  std::vector<std::string> plant;

  std::string out;
  std::string csv;
};

std::filesystem::path output_dir() {
  if (const char* dir = std::getenv("FEDMINE_OUT_DIR")) {
    return std::filesystem::path(dir);
  }
  return std::filesystem::path(".");
}

void apply_json_config(const std::string& path, CommonOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad config file " + path + ": " + e.what());
  }
  auto get = [&config](const char* key, auto& slot) {
    if (config.contains(key)) slot = config.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("kind", options.kind);
  get("f", options.f);
  get("epsilon", options.epsilon);
  get("K", options.K);
  get("P", options.P);
  get("tau", options.tau);
  get("eta_g", options.eta_g);
  get("eta_s", options.eta_s);
  get("strategy", options.strategy);
  get("seed", options.seed);
  get("max_length", options.max_length);
  get("owner_cap", options.owner_cap);
  get("with_replacement", options.with_replacement);
  get("noise", options.noise);
  get("exhaustive", options.exhaustive);
  get("degree", options.degree);
  get("dataset", options.dataset_path);
  get("id_map", options.id_map_path);
  get("owners", options.owners);
  get("universe", options.universe);
  get("zipf", options.zipf);
  get("background_mean", options.background_mean);
  get("plant", options.plant);
  get("out", options.out);
  get("csv", options.csv);
}

void add_common_options(CLI::App& app, CommonOptions& options) {
  app.add_option("--config", options.config_path,
                 "JSON config file; explicit flags override its values");
  app.add_option("--kind", options.kind, "item | itemset | sequence");
  app.add_option("--f", options.f, "target frequency in (0,1)");
  app.add_option("--epsilon", options.epsilon, "privacy budget");
  app.add_option("--K", options.K, "max candidates per owner");
  app.add_option("--P", options.P, "responders per candidate per round");
  app.add_option("--tau", options.tau,
                 "max responses per candidate (0 = 20*P)");
  app.add_option("--eta-g", options.eta_g, "noise-bound confidence parameter");
  app.add_option("--eta-s", options.eta_s,
                 "sampling-bound confidence parameter");
  app.add_option("--strategy", options.strategy,
                 "vanilla | padding | reusing");
  app.add_option("--seed", options.seed, "experiment seed");
  app.add_option("--max-length", options.max_length, "pattern length cap");
  app.add_option("--owner-cap", options.owner_cap,
                 "cap on unique owners (0 = dataset size)");
  app.add_flag("--with-replacement", options.with_replacement,
               "recycle owners under fresh ids when the population runs out");
  app.add_option("--noise", options.noise, "on | off");
  app.add_flag("--exhaustive", options.exhaustive,
               "all owners answer all candidates (requires --noise off)");
  app.add_option("--degree", options.degree,
                 "masking graph degree (0 = 2*ceil(log2 N))");
  app.add_option("--dataset", options.dataset_path,
                 "dataset file, one owner per line");
  app.add_option("--id-map", options.id_map_path,
                 "write the dataset's (token, id) map to this file");
  app.add_option("--owners", options.owners, "synthetic: owner count");
  app.add_option("--universe", options.universe, "synthetic: universe size");
  app.add_option("--zipf", options.zipf, "synthetic: background Zipf exponent");
  app.add_option("--bg-mean", options.background_mean,
                 "synthetic: mean background items per owner");
  app.add_option("--plant", options.plant,
                 "synthetic: planted pattern, e.g. 1,2@0.3 (repeatable)");
  app.add_option("--out", options.out, "report path (JSON)");
  app.add_option("--csv", options.csv, "CSV path (appended)");
}

PatternKind parse_kind(const std::string& kind) {
  return fedmine::pattern_kind_from_string(kind);
}

std::pair<Pattern, double> parse_plant(PatternKind kind,
                                       const std::string& text) {
  const std::size_t at = text.rfind('@');
  if (at == std::string::npos || at == 0 || at + 1 == text.size()) {
    throw std::invalid_argument("planted pattern must look like 1,2@0.3: '" +
                                text + "'");
  }
  Pattern pattern = Pattern::parse(kind, text.substr(0, at));
  double frequency = 0.0;
  try {
    frequency = std::stod(text.substr(at + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad planted frequency in '" + text + "'");
  }
  return {std::move(pattern), frequency};
}

struct PreparedDataset {
  std::vector<LocalData> owners;
  PatternUniverse universe;
  nlohmann::ordered_json info;
};

PreparedDataset prepare_dataset(const CommonOptions& options,
                                std::uint64_t seed) {
  const PatternKind kind = parse_kind(options.kind);
  PreparedDataset prepared;
  prepared.universe.kind = kind;
  prepared.universe.max_length = options.max_length;
  if (!options.dataset_path.empty()) {
    fedmine::DatasetLoadResult loaded =
        fedmine::load_dataset(options.dataset_path, kind);
    prepared.owners = std::move(loaded.owners);
    prepared.universe.size =
        std::max(loaded.universe_size, options.universe);
    if (!options.id_map_path.empty()) {
      fedmine::write_id_map(options.id_map_path, loaded.id_map);
    }
    prepared.info["source"] = "file";
    prepared.info["path"] = options.dataset_path;
    prepared.info["owners"] = prepared.owners.size();
    return prepared;
  }
  if (options.owners == 0 || options.universe == 0) {
    throw std::invalid_argument(
        "either --dataset or --owners plus --universe is required");
  }
  SyntheticSpec spec;
  spec.owner_count = options.owners;
  spec.universe_size = options.universe;
  spec.kind = kind;
  spec.zipf_exponent = options.zipf;
  spec.background_mean = options.background_mean;
  for (const std::string& text : options.plant) {
    spec.planted.push_back(parse_plant(kind, text));
  }
  fedmine::Rng rng(fedmine::derive_seed(seed, {kDatasetTag}));
  prepared.owners = fedmine::generate_synthetic(spec, rng);
  prepared.universe.size = options.universe;
  prepared.info["source"] = "synthetic";
  prepared.info["owners"] = spec.owner_count;
  prepared.info["universe"] = spec.universe_size;
  prepared.info["zipf"] = spec.zipf_exponent;
  prepared.info["background_mean"] = spec.background_mean;
  nlohmann::ordered_json planted = nlohmann::ordered_json::array();
  for (const auto& [pattern, frequency] : spec.planted) {
    nlohmann::ordered_json row;
    row["pattern"] = pattern.to_string();
    row["frequency"] = frequency;
    planted.push_back(std::move(row));
  }
  prepared.info["planted"] = planted;
  return prepared;
}

ExperimentConfig build_config(const CommonOptions& options,
                              const PatternUniverse& universe,
                              std::uint64_t seed) {
  if (options.noise != "on" && options.noise != "off") {
    throw std::invalid_argument("--noise must be 'on' or 'off'");
  }
  const std::int64_t tau =
      options.tau > 0 ? options.tau : 20 * static_cast<std::int64_t>(options.P);
  fedmine::AnalystConfig analyst;
  analyst.noise = {options.epsilon, options.K, options.P};
  analyst.target_frequency = options.f;
  analyst.response_cap = tau;
  analyst.eta_geometric = options.eta_g;
  analyst.eta_sampling = options.eta_s;
  analyst.strategy = fedmine::strategy_from_string(options.strategy);
  ExperimentConfig config;
  config.analyst = analyst;
  config.universe = universe;
  config.seed = seed;
  if (options.owner_cap > 0) config.owner_cap = options.owner_cap;
  config.secure_agg_degree = options.degree;
  config.noise_enabled = options.noise == "on";
  config.exhaustive = options.exhaustive;
  config.with_replacement = options.with_replacement;
  config.validate();
  return config;
}

void append_csv_row(const std::filesystem::path& path, const std::string& row) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw std::runtime_error("cannot open CSV file: " + path.string());
  }
  if (fresh) out << fedmine::csv_header() << '\n';
  out << row << '\n';
  if (!out) throw std::runtime_error("failed writing CSV: " + path.string());
}

int cmd_run(const CommonOptions& options) {
  PreparedDataset prepared = prepare_dataset(options, options.seed);
  ExperimentConfig config =
      build_config(options, prepared.universe, options.seed);
  const ExperimentResult result =
      fedmine::run_experiment(config, prepared.owners);
  const std::string status = result.exhausted ? "exhausted" : "ok";

  const std::filesystem::path report_path =
      options.out.empty()
          ? output_dir() / ("run-" + std::to_string(options.seed) + ".json")
          : std::filesystem::path(options.out);
  {
    std::ofstream out(report_path);
    if (!out) {
      throw std::runtime_error("cannot open report file: " +
                               report_path.string());
    }
    out << fedmine::make_run_report(config, prepared.info, result).dump(2)
        << '\n';
    if (!out) {
      throw std::runtime_error("failed writing report: " +
                               report_path.string());
    }
  }
  if (!options.csv.empty()) {
    append_csv_row(options.csv, fedmine::csv_row(config, result, status));
  }

  std::cout << "mined " << result.mined.size() << " patterns (truth "
            << result.truth_size << "), f1 "
            << fedmine::format_double(result.f1) << ", owners "
            << result.unique_owners << ", rounds " << result.rounds << ", "
            << status << "\nreport: " << report_path.string() << '\n';
  return result.exhausted ? kExitExhausted : kExitOk;
}

int cmd_oracle(const CommonOptions& options, const std::string& out_path) {
  if (options.dataset_path.empty()) {
    throw std::invalid_argument("oracle requires --dataset");
  }
  if (!(options.f > 0.0) || !(options.f < 1.0)) {
    throw std::invalid_argument("oracle target frequency must be in (0,1)");
  }
  const PatternKind kind = parse_kind(options.kind);
  fedmine::DatasetLoadResult loaded =
      fedmine::load_dataset(options.dataset_path, kind);
  if (!options.id_map_path.empty()) {
    fedmine::write_id_map(options.id_map_path, loaded.id_map);
  }
  PatternUniverse universe{std::max(loaded.universe_size, options.universe),
                           kind, options.max_length};
  const std::set<Pattern> frequent =
      fedmine::exact_fpm(loaded.owners, options.f, universe);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      throw std::runtime_error("cannot open output file: " + out_path);
    }
    out = &file;
  }
  for (const Pattern& p : frequent) {
    *out << p.to_string() << ' ' << fedmine::support_count(loaded.owners, p)
         << '\n';
  }
  return kExitOk;
}

struct SweepOptions {
  std::vector<double> f_grid;
  std::vector<double> epsilon_grid;
  std::vector<int> k_grid;
  std::vector<std::string> strategies;
  int seeds = 1;
  std::uint64_t seed_base = 1;
  int jobs = 1;
};

int cmd_sweep(const CommonOptions& common, const SweepOptions& sweep) {
  if (sweep.seeds < 1) {
    throw std::invalid_argument("--seeds must be >= 1");
  }
  std::vector<double> fs =
      sweep.f_grid.empty() ? std::vector<double>{common.f} : sweep.f_grid;
  std::vector<double> epsilons = sweep.epsilon_grid.empty()
                                     ? std::vector<double>{common.epsilon}
                                     : sweep.epsilon_grid;
  std::vector<int> ks =
      sweep.k_grid.empty() ? std::vector<int>{common.K} : sweep.k_grid;
  std::vector<std::string> strategies = sweep.strategies.empty()
                                            ? std::vector<std::string>{common.strategy}
                                            : sweep.strategies;

  struct Cell {
    CommonOptions options;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double f : fs) {
    for (double epsilon : epsilons) {
      for (int k : ks) {
        for (const std::string& strategy : strategies) {
          for (int s = 0; s < sweep.seeds; ++s) {
            CommonOptions cell = common;
            cell.f = f;
            cell.epsilon = epsilon;
            cell.K = k;
            cell.strategy = strategy;
            cells.push_back({std::move(cell), sweep.seed_base + s});
          }
        }
      }
    }
  }

  // Datasets depend only on the seed, so cells sharing a seed share a
  // dataset; prepare them up front and run cells read-only in parallel.
  std::map<std::uint64_t, PreparedDataset> datasets;
  for (int s = 0; s < sweep.seeds; ++s) {
    const std::uint64_t seed = sweep.seed_base + s;
    datasets.emplace(seed, prepare_dataset(common, seed));
  }

  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= cells.size()) return;
      const Cell& cell = cells[index];
      const PreparedDataset& dataset = datasets.at(cell.seed);
      try {
        ExperimentConfig config =
            build_config(cell.options, dataset.universe, cell.seed);
        const ExperimentResult result =
            fedmine::run_experiment(config, dataset.owners);
        rows[index] = fedmine::csv_row(
            config, result, result.exhausted ? "exhausted" : "ok");
      } catch (const std::exception& e) {
        // Record the failure and keep sweeping.
        ExperimentResult empty;
        try {
          ExperimentConfig config =
              build_config(cell.options, dataset.universe, cell.seed);
          rows[index] = fedmine::csv_row(config, empty,
                                         std::string("error: ") + e.what());
        } catch (const std::exception&) {
          rows[index] = "error: " + std::string(e.what());
        }
        failures.fetch_add(1);
      }
    }
  };
  const int jobs = std::max(1, sweep.jobs);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  const std::filesystem::path csv_path =
      common.csv.empty() ? output_dir() / "sweep.csv"
                         : std::filesystem::path(common.csv);
  for (const std::string& row : rows) append_csv_row(csv_path, row);
  std::cout << "wrote " << rows.size() << " rows to " << csv_path.string();
  if (failures.load() > 0) std::cout << " (" << failures.load() << " failed)";
  std::cout << '\n';
  return kExitOk;
}

int cmd_report(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) {
    throw std::runtime_error("cannot open report file: " + in_path);
  }
  nlohmann::json report;
  try {
    in >> report;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad report file " + in_path + ": " + e.what());
  }
  const auto& config = report.at("config");
  const auto& result = report.at("result");
  std::cout << "build " << report.value("build", std::string("?")) << ", schema "
            << report.value("schema_version", 0) << '\n'
            << "kind " << config.value("kind", std::string("?")) << ", f "
            << config.value("f", 0.0) << ", epsilon "
            << config.value("epsilon", 0.0) << ", K " << config.value("K", 0)
            << ", P " << config.value("P", 0) << ", tau "
            << config.value("tau", 0) << ", strategy "
            << config.value("strategy", std::string("?")) << ", seed "
            << config.value("seed", 0) << '\n'
            << "mined " << result.at("mined").size() << " patterns, truth "
            << result.value("truth_size", 0) << '\n'
            << "precision " << result.value("precision", 0.0) << ", recall "
            << result.value("recall", 0.0) << ", f1 "
            << result.value("f1", 0.0) << '\n'
            << "owners " << result.value("unique_owners", 0) << ", rounds "
            << result.value("rounds", 0)
            << (result.value("exhausted", false) ? ", EXHAUSTED (partial)"
                                                 : "")
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated frequent pattern mining simulator"};
  app.require_subcommand(1);

  CommonOptions run_options;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_common_options(*run, run_options);

  CommonOptions sweep_common;
  SweepOptions sweep_options;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid");
  add_common_options(*sweep, sweep_common);
  sweep->add_option("--f-grid", sweep_options.f_grid, "frequencies to sweep")
      ->delimiter(',');
  sweep->add_option("--epsilon-grid", sweep_options.epsilon_grid,
                    "epsilons to sweep")
      ->delimiter(',');
  sweep->add_option("--K-grid", sweep_options.k_grid, "budgets to sweep")
      ->delimiter(',');
  sweep->add_option("--strategies", sweep_options.strategies,
                    "strategies to sweep")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_options.seeds, "repeats per cell");
  sweep->add_option("--seed-base", sweep_options.seed_base, "first seed");
  sweep->add_option("--jobs", sweep_options.jobs, "parallel workers");

  CommonOptions oracle_options;
  std::string oracle_out;
  CLI::App* oracle =
      app.add_subcommand("oracle", "exact frequent patterns of a dataset");
  oracle->add_option("--dataset", oracle_options.dataset_path,
                     "dataset file, one owner per line");
  oracle->add_option("--id-map", oracle_options.id_map_path,
                     "write the dataset's (token, id) map to this file");
  oracle->add_option("--kind", oracle_options.kind,
                     "item | itemset | sequence");
  oracle->add_option("--f", oracle_options.f, "target frequency in (0,1)");
  oracle->add_option("--max-length", oracle_options.max_length,
                     "pattern length cap");
  oracle->add_option("--universe", oracle_options.universe,
                     "universe override");
  oracle->add_option("--out", oracle_out, "output file (default stdout)");

  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "summarize a saved report");
  report->add_option("--in", report_in, "report JSON file")->required();

  try {
    // First pass picks up --config so the file's values become defaults
    // that explicit flags then override.
    for (CLI::App* sub : {run, sweep}) {
      CommonOptions* options = sub == run ? &run_options : &sweep_common;
      CLI::App probe("probe");
      probe.allow_extras();
      std::string config_path;
      probe.add_option("--config", config_path, "");
      std::vector<std::string> args;
      for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
      if (!args.empty() && args.front() == sub->get_name()) {
        args.erase(args.begin());
        std::reverse(args.begin(), args.end());
        probe.parse(args);
        if (!config_path.empty()) apply_json_config(config_path, *options);
      }
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    if (run->parsed()) return cmd_run(run_options);
    if (sweep->parsed()) return cmd_sweep(sweep_common, sweep_options);
    if (oracle->parsed()) return cmd_oracle(oracle_options, oracle_out);
    if (report->parsed()) return cmd_report(report_in);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
