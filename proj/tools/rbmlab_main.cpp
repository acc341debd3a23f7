#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbmlab/checkpoint.hpp"
#include "rbmlab/harness.hpp"
#include "rbmlab/plot.hpp"
#include "rbmlab/sample_io.hpp"

namespace {

using namespace rbmlab;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string backend;
  double temperature = 0.0;
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool long_run = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool wants_backend = true) {
  cmd->add_option("--config", opts.config_path, "experiment config file")->required();
  cmd->add_option("--out-dir", opts.out_dir, "output directory");
  auto* seed_opt = cmd->add_option("--seed", opts.seed, "master seed override");
  seed_opt->each([&opts](const std::string&) { opts.has_seed = true; });
  if (wants_backend) {
    cmd->add_option("--backend", opts.backend, "emulator | exact | import");
    cmd->add_option("--temperature", opts.temperature,
                    "replace the configured temperature list with one value");
    cmd->add_flag("--long-run", opts.long_run,
                  "100000 Gibbs updates with a single replicate");
  }
}

ExperimentConfig load_config(const CommonOpts& opts) {
  ExperimentConfig cfg = parse_experiment_config(opts.config_path);
  if (opts.has_seed) cfg.master_seed = opts.seed;
  if (!opts.backend.empty()) {
    if (opts.backend == "emulator") {
      cfg.backend = Backend::emulator;
    } else if (opts.backend == "exact") {
      cfg.backend = Backend::exact;
    } else if (opts.backend == "import") {
      cfg.backend = Backend::import_file;
    } else {
      throw CLI::ValidationError("--backend must be emulator, exact, or import");
    }
  }
  if (opts.temperature != 0.0) {
    cfg.temperatures = {opts.temperature};
  }
  if (opts.long_run) {
    cfg.gibbs_updates = 100000;
    cfg.replicates = 1;
  }
  return cfg;
}

const char* kind_name(ModelKind kind) {
  return kind == ModelKind::cd1 ? "cd1" : "naive";
}

int run_train(const CommonOpts& opts, const std::string& out_path) {
  const ExperimentConfig cfg = load_config(opts);
  const RbmParams model = replicate_model(cfg, 0);

  Checkpoint cp;
  cp.params = model;
  cp.kind = cfg.checkpoint_path.empty() ? kind_name(cfg.model_kind) : "none";
  cp.seed = cfg.master_seed;
  cp.epoch = cfg.resolved_train_config().epochs;

  std::filesystem::create_directories(opts.out_dir);
  const std::string path =
      out_path.empty() ? (std::filesystem::path(opts.out_dir) / "model.ckpt").string()
                       : out_path;
  save_checkpoint(path, cp);
  std::cout << "wrote " << path << " (" << model.n << " visible, " << model.m
            << " hidden)\n";
  return 0;
}

int run_init_samples(const CommonOpts& opts, const std::string& out_path,
                     std::size_t count_override) {
  ExperimentConfig cfg = load_config(opts);
  if (count_override) cfg.chain_count = count_override;
  cfg.validate();

  const RbmParams model = replicate_model(cfg, 0);
  const double t = cfg.init_strategy == InitStrategy::classical || cfg.temperatures.empty()
                       ? 1.0
                       : cfg.temperatures.front();
  const StateBatch batch = build_initial_chains(cfg, model, cfg.init_strategy, t, 0);

  std::map<std::string, std::string> meta;
  switch (cfg.init_strategy) {
    case InitStrategy::classical:
      meta["device"] = "classical";
      break;
    case InitStrategy::annealer:
    case InitStrategy::hybrid: {
      meta["device"] = cfg.backend == Backend::exact
                           ? "exact"
                           : (cfg.backend == Backend::import_file ? "import" : "emulator");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", t);
      meta["temperature"] = buf;
      meta["spin_reversal_transforms"] = std::to_string(cfg.spin_reversal_transforms);
      break;
    }
  }
  if (cfg.init_strategy == InitStrategy::hybrid) meta["device"] += "+classical";

  std::filesystem::create_directories(opts.out_dir);
  const std::string path =
      out_path.empty()
          ? (std::filesystem::path(opts.out_dir) / "init_samples.txt").string()
          : out_path;
  export_samples(path, batch, meta);
  std::cout << "wrote " << path << " (" << batch.chains << " samples of width "
            << batch.width << ")\n";
  return 0;
}

int run_run(const CommonOpts& opts) {
  const ExperimentConfig cfg = load_config(opts);
  const ExperimentResult result = run_experiment(cfg);
  write_experiment_outputs(result, opts.out_dir);
  for (const MetricsSeries& series : result.series) {
    const AggregateRow& last = series.aggregates.back();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%s: %zu replicates, final step %llu, median precision %.4g\n",
                  series.label.c_str(), series.by_replicate.size(),
                  static_cast<unsigned long long>(last.step), last.precision.median);
    std::cout << buf;
  }
  std::cout << "wrote metrics to " << opts.out_dir << "\n";
  return 0;
}

int run_eval(const CommonOpts& opts, const std::string& samples_path) {
  const ExperimentConfig cfg = load_config(opts);
  const PositiveSet x = cfg.dataset == DatasetKind::bas
                            ? bas_positives(cfg.dataset_n)
                            : shifter_positives(cfg.dataset_n);
  const std::size_t dn = cfg.dataset_n;
  const DistanceFn dist =
      cfg.dataset == DatasetKind::bas
          ? DistanceFn([dn](std::span<const std::uint8_t> b) {
              return bas_edit_distance(b, dn);
            })
          : DistanceFn([dn](std::span<const std::uint8_t> b) {
              return shifter_edit_distance(b, dn);
            });

  const SampleFile file = import_samples(samples_path, cfg.visible_units());
  const MetricsRecord rec = evaluate_samples(file.batch, x, dist, cfg.top_k);

  MetricsSeries series;
  series.label = "eval";
  series.steps = {0};
  series.by_replicate = {{rec}};
  compute_aggregates(series);

  std::filesystem::create_directories(opts.out_dir);
  const auto path = std::filesystem::path(opts.out_dir) / "eval.csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_metrics_csv(out, series);

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu samples: precision %.6g, recall %.6g, med %.6g, top%zu %llu\n",
                file.batch.chains, rec.precision, rec.recall, rec.med, cfg.top_k,
                static_cast<unsigned long long>(rec.top_k));
  std::cout << buf << "wrote " << path.string() << "\n";
  return 0;
}

int run_bench(std::size_t n, std::size_t m, std::size_t chains, std::size_t updates,
              std::size_t repetitions, const std::string& checkpoint_path) {
  RbmParams params(n, m);
  if (!checkpoint_path.empty()) params = load_checkpoint(checkpoint_path).params;
  const BenchReport report = bench_gibbs(params, chains, updates, repetitions);
  std::cout << format_bench_report(report);
  return 0;
}

int run_plot(const std::vector<std::string>& inputs, const std::string& out_dir) {
  std::vector<MetricsSeries> series;
  series.reserve(inputs.size());
  for (const std::string& path : inputs) series.push_back(read_metrics_csv(path));
  plot_series(series, out_dir);
  std::cout << "wrote plots to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling laboratory for restricted Boltzmann machines"};
  app.require_subcommand(1);

  CommonOpts train_opts, init_opts, run_opts, eval_opts;
  std::string train_out, init_out, eval_samples;
  std::size_t init_count = 0;

  auto* train_cmd = app.add_subcommand("train", "train a model and save a checkpoint");
  add_common(train_cmd, train_opts, false);
  train_cmd->add_option("--out", train_out, "checkpoint path (default out-dir/model.ckpt)");

  auto* init_cmd =
      app.add_subcommand("init-samples", "generate initial chain states to a sample file");
  add_common(init_cmd, init_opts);
  init_cmd->add_option("--out", init_out, "sample file path");
  init_cmd->add_option("--count", init_count, "number of samples");

  auto* run_cmd = app.add_subcommand("run", "run the configured experiment");
  add_common(run_cmd, run_opts);

  auto* eval_cmd = app.add_subcommand("eval", "metrics for an existing sample file");
  add_common(eval_cmd, eval_opts, false);
  eval_cmd->add_option("samples", eval_samples, "sample file to evaluate")->required();

  std::size_t bench_n = 144, bench_m = 144, bench_chains = 10000, bench_updates = 5,
              bench_reps = 5;
  std::string bench_checkpoint;
  auto* bench_cmd = app.add_subcommand("bench", "block Gibbs throughput benchmark");
  bench_cmd->add_option("--n", bench_n, "visible units");
  bench_cmd->add_option("--m", bench_m, "hidden units");
  bench_cmd->add_option("--chains", bench_chains, "chain count");
  bench_cmd->add_option("--updates", bench_updates, "updates per repetition");
  bench_cmd->add_option("--repetitions", bench_reps, "repetitions");
  bench_cmd->add_option("--checkpoint", bench_checkpoint, "model checkpoint to time");

  std::vector<std::string> plot_inputs;
  std::string plot_out = ".";
  auto* plot_cmd = app.add_subcommand("plot", "render metric curves from metrics CSVs");
  plot_cmd->add_option("inputs", plot_inputs, "metrics_*.csv files")->required();
  plot_cmd->add_option("--out-dir", plot_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) return run_train(train_opts, train_out);
    if (init_cmd->parsed()) return run_init_samples(init_opts, init_out, init_count);
    if (run_cmd->parsed()) return run_run(run_opts);
    if (eval_cmd->parsed()) return run_eval(eval_opts, eval_samples);
    if (bench_cmd->parsed()) {
      return run_bench(bench_n, bench_m, bench_chains, bench_updates, bench_reps,
                       bench_checkpoint);
    }
    if (plot_cmd->parsed()) return run_plot(plot_inputs, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
