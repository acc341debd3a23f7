#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rbmlab/datasets.hpp"
#include "rbmlab/metrics.hpp"
#include "rbmlab/rbm.hpp"
#include "rbmlab/training.hpp"

namespace rbmlab {

enum class DatasetKind { bas, shifter };
enum class ModelKind { naive, cd1 };
enum class InitStrategy { classical, annealer, hybrid };
enum class Backend { emulator, exact, import_file };

// Metrics are recorded at every update up to dense_until, then every
// sparse_stride updates.
struct ScheduleSpec {
  std::uint64_t dense_until = 100;
  std::uint64_t sparse_stride = 10;
};

std::vector<std::uint64_t> schedule_steps(const ScheduleSpec& spec,
                                          std::uint64_t gibbs_updates);

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::bas;
  std::size_t dataset_n = 12;
  ModelKind model_kind = ModelKind::cd1;
  std::size_t replicates = 5;
  std::size_t training_set_size = 0;  // 0 = dataset default (512 bas, 256 shifter)
  std::size_t chain_count = 0;        // 0 = dataset default (40000 bas, 4000 shifter)
  std::size_t hidden_units = 0;       // 0 = dataset default (n*n bas, 2n+3 shifter)
  InitStrategy init_strategy = InitStrategy::classical;
  std::vector<double> temperatures;  // one series per T for annealer/hybrid
  std::uint64_t gibbs_updates = 1000;
  std::uint64_t master_seed = 0;
  Backend backend = Backend::emulator;
  std::string import_path;      // backend import_file only
  std::string checkpoint_path;  // when set, load this model instead of training
  ScheduleSpec schedule;

  // Training knobs; 0/negative means "dataset default".
  double learning_rate = 0.0;
  std::size_t epochs = 0;
  std::size_t batch_size = 0;
  std::size_t negative_chain_count = 0;
  double init_scale = 0.1;  // stddev of the Gaussian weight/bias init

  // Annealer-emulator knobs.
  std::size_t sa_sweeps = 1000;
  std::size_t spin_reversal_transforms = 10;

  std::size_t top_k = 10;

  void validate() const;  // throws std::invalid_argument
  // Resolved copies of the 0-defaulted fields.
  std::size_t resolved_training_set_size() const;
  std::size_t resolved_chain_count() const;
  std::size_t resolved_hidden_units() const;
  TrainConfig resolved_train_config() const;
  std::size_t visible_units() const;
};

// Flat key=value text; '#' comments. Unknown keys are errors.
ExperimentConfig parse_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config_text(const std::string& text,
                                              const std::string& origin);

struct MetricAggregate {
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// One value per replicate; NaN in any replicate poisons all three stats.
MetricAggregate aggregate(std::vector<double> values);

struct AggregateRow {
  std::uint64_t step = 0;
  MetricAggregate precision, recall, pcdd_literal, pcdd_l2, med, top_k;
};

struct MetricsSeries {
  std::string label;  // e.g. "classical", "annealer_T8"
  std::vector<std::uint64_t> steps;
  // by_replicate[r][k] is the record of replicate r at steps[k].
  std::vector<std::vector<MetricsRecord>> by_replicate;
  std::vector<AggregateRow> aggregates;
};

void compute_aggregates(MetricsSeries& series);

struct ExperimentResult {
  std::vector<MetricsSeries> series;
};

// Per replicate: sample a training set, train a model, then for each series
// build the initial chains and run scheduled Gibbs updates, recording
// metrics (step 0 included). Fully determined by (config, master_seed).
ExperimentResult run_experiment(const ExperimentConfig& config);

// The trained model (or configured checkpoint) a given replicate runs with.
RbmParams replicate_model(const ExperimentConfig& config, std::size_t replicate);

// The exact batch run_experiment starts the (strategy, temperature) series
// from for this replicate. temperature is ignored for classical.
StateBatch build_initial_chains(const ExperimentConfig& config, const RbmParams& model,
                                InitStrategy strategy, double temperature,
                                std::size_t replicate);

// Columns: replicate,step,precision,recall,pcdd_literal,pcdd_l2,med,top10.
// Doubles print with %.17g so output bytes are reproducible.
void write_metrics_csv(std::ostream& out, const MetricsSeries& series);
void write_aggregates_csv(std::ostream& out, const MetricsSeries& series);
// Writes metrics_<label>.csv and aggregates_<label>.csv per series.
void write_experiment_outputs(const ExperimentResult& result,
                              const std::string& out_dir);

MetricsRecord evaluate_samples(const StateBatch& g, const PositiveSet& x,
                               const DistanceFn& dist, std::size_t k = 10);

// Inverse of write_metrics_csv; label is taken from the filename stem
// (metrics_<label>.csv) and aggregates are recomputed.
MetricsSeries read_metrics_csv(const std::string& path);

struct BenchReport {
  std::size_t n = 0, m = 0;
  std::size_t chain_count = 0;
  std::size_t updates_per_repetition = 0;
  std::size_t repetitions = 0;
  double mean_seconds_per_update = 0.0;
  double stddev_seconds_per_update = 0.0;
  double samples_per_second = 0.0;
  // Device budget per sample, for the comparison line.
  double anneal_us = 20.0;
  double delay_us = 20.0;
  double readout_us = 214.0;
  double annealer_seconds() const {
    return (anneal_us + delay_us + readout_us) * 1e-6 * static_cast<double>(chain_count);
  }
};

BenchReport bench_gibbs(const RbmParams& params, std::size_t chain_count,
                        std::size_t updates, std::size_t repetitions = 5);
std::string format_bench_report(const BenchReport& report);

}  // namespace rbmlab
