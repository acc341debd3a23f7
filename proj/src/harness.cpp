#include "rbmlab/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rbmlab/checkpoint.hpp"
#include "rbmlab/exact.hpp"
#include "rbmlab/ising.hpp"
#include "rbmlab/rng.hpp"
#include "rbmlab/sample_io.hpp"
#include "rbmlab/samplers.hpp"

namespace rbmlab {

std::vector<std::uint64_t> schedule_steps(const ScheduleSpec& spec,
                                          std::uint64_t gibbs_updates) {
  if (spec.dense_until < 1 || spec.sparse_stride < 1) {
    throw std::invalid_argument("schedule parameters must be positive");
  }
  std::vector<std::uint64_t> steps;
  for (std::uint64_t s = 0; s <= gibbs_updates && s <= spec.dense_until; ++s) {
    steps.push_back(s);
  }
  for (std::uint64_t s = spec.dense_until + spec.sparse_stride; s <= gibbs_updates;
       s += spec.sparse_stride) {
    steps.push_back(s);
  }
  return steps;
}

std::size_t ExperimentConfig::visible_units() const {
  return dataset == DatasetKind::bas ? dataset_n * dataset_n : 2 * dataset_n + 3;
}

namespace {

std::size_t dataset_member_count(DatasetKind kind, std::size_t n) {
  return kind == DatasetKind::bas ? 2 * (std::size_t{1} << n) - 2
                                  : 3 * (std::size_t{1} << n);
}

}  // namespace

std::size_t ExperimentConfig::resolved_training_set_size() const {
  if (training_set_size) return training_set_size;
  const std::size_t preferred = dataset == DatasetKind::bas ? 512 : 256;
  return std::min(preferred, dataset_member_count(dataset, dataset_n));
}

std::size_t ExperimentConfig::resolved_chain_count() const {
  if (chain_count) return chain_count;
  return dataset == DatasetKind::bas ? 40000 : 4000;
}

std::size_t ExperimentConfig::resolved_hidden_units() const {
  if (hidden_units) return hidden_units;
  return visible_units();
}

TrainConfig ExperimentConfig::resolved_train_config() const {
  TrainConfig tc;
  tc.learning_rate = learning_rate > 0.0 ? learning_rate : 0.05;
  tc.epochs = epochs ? epochs : (dataset == DatasetKind::bas ? 2000 : 4000);
  tc.batch_size = batch_size ? batch_size : resolved_training_set_size();
  tc.negative_chain_count = negative_chain_count;
  if (model_kind == ModelKind::cd1) {
    tc.negative_phase_kind = NegativePhaseKind::cd;
    tc.gibbs_updates_negative = 1;
  } else {
    tc.negative_phase_kind = NegativePhaseKind::naive;
    tc.gibbs_updates_negative = 50;
  }
  return tc;
}

void ExperimentConfig::validate() const {
  if (dataset == DatasetKind::bas) {
    if (dataset_n < 1 || dataset_n > 16) {
      throw std::invalid_argument("image side must be in [1, 16]");
    }
  } else if (dataset_n < 1 || dataset_n > 12) {
    throw std::invalid_argument("pattern width must be in [1, 12]");
  }
  if (replicates < 1) throw std::invalid_argument("need at least one replicate");
  if (resolved_chain_count() < 1) throw std::invalid_argument("need at least one chain");
  if (resolved_training_set_size() > dataset_member_count(dataset, dataset_n)) {
    throw std::invalid_argument("training set larger than the positive set");
  }
  if (resolved_hidden_units() < 1) throw std::invalid_argument("need hidden units");
  if (init_strategy != InitStrategy::classical) {
    if (temperatures.empty()) {
      throw std::invalid_argument("annealer and hybrid runs need temperatures");
    }
    for (double t : temperatures) {
      if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("temperatures must be positive reals");
      }
    }
  }
  if (backend == Backend::import_file && import_path.empty()) {
    throw std::invalid_argument("import backend needs a sample file path");
  }
  if (backend == Backend::exact && visible_units() > 20) {
    throw std::invalid_argument("exact backend is limited to 20 visible units");
  }
  if (schedule.dense_until < 1 || schedule.sparse_stride < 1) {
    throw std::invalid_argument("schedule parameters must be positive");
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw std::invalid_argument("init scale must be a finite non-negative real");
  }
  if (sa_sweeps < 1) throw std::invalid_argument("annealing needs at least one sweep");
  if (spin_reversal_transforms < 1) throw std::invalid_argument("need at least one gauge");
  if (top_k < 1) throw std::invalid_argument("top-k needs k >= 1");
  resolved_train_config().validate();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument(where + ": not a number: " + s);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument(where + ": not a non-negative integer: " + s);
  }
  return v;
}

}  // namespace

ExperimentConfig parse_experiment_config_text(const std::string& text,
                                              const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const std::string where = origin + ":" + std::to_string(line_no);

    if (key == "dataset") {
      if (value == "bas") {
        cfg.dataset = DatasetKind::bas;
      } else if (value == "shifter") {
        cfg.dataset = DatasetKind::shifter;
      } else {
        throw std::invalid_argument(where + ": unknown dataset: " + value);
      }
    } else if (key == "n") {
      cfg.dataset_n = parse_u64(value, where);
    } else if (key == "model") {
      if (value == "cd1") {
        cfg.model_kind = ModelKind::cd1;
      } else if (value == "naive") {
        cfg.model_kind = ModelKind::naive;
      } else {
        throw std::invalid_argument(where + ": unknown model kind: " + value);
      }
    } else if (key == "replicates") {
      cfg.replicates = parse_u64(value, where);
    } else if (key == "training_set_size") {
      cfg.training_set_size = parse_u64(value, where);
    } else if (key == "chain_count") {
      cfg.chain_count = parse_u64(value, where);
    } else if (key == "hidden_units") {
      cfg.hidden_units = parse_u64(value, where);
    } else if (key == "init") {
      if (value == "classical") {
        cfg.init_strategy = InitStrategy::classical;
      } else if (value == "annealer") {
        cfg.init_strategy = InitStrategy::annealer;
      } else if (value == "hybrid") {
        cfg.init_strategy = InitStrategy::hybrid;
      } else {
        throw std::invalid_argument(where + ": unknown init strategy: " + value);
      }
    } else if (key == "temperatures") {
      cfg.temperatures.clear();
      for (const auto& item : split(value, ',')) {
        cfg.temperatures.push_back(parse_double(trim(item), where));
      }
    } else if (key == "gibbs_updates") {
      cfg.gibbs_updates = parse_u64(value, where);
    } else if (key == "seed") {
      cfg.master_seed = parse_u64(value, where);
    } else if (key == "backend") {
      if (value == "emulator") {
        cfg.backend = Backend::emulator;
      } else if (value == "exact") {
        cfg.backend = Backend::exact;
      } else if (value == "import") {
        cfg.backend = Backend::import_file;
      } else {
        throw std::invalid_argument(where + ": unknown backend: " + value);
      }
    } else if (key == "import_path") {
      cfg.import_path = value;
    } else if (key == "checkpoint") {
      cfg.checkpoint_path = value;
    } else if (key == "dense_until") {
      cfg.schedule.dense_until = parse_u64(value, where);
    } else if (key == "sparse_stride") {
      cfg.schedule.sparse_stride = parse_u64(value, where);
    } else if (key == "learning_rate") {
      cfg.learning_rate = parse_double(value, where);
    } else if (key == "epochs") {
      cfg.epochs = parse_u64(value, where);
    } else if (key == "batch_size") {
      cfg.batch_size = parse_u64(value, where);
    } else if (key == "negative_chain_count") {
      cfg.negative_chain_count = parse_u64(value, where);
    } else if (key == "init_scale") {
      cfg.init_scale = parse_double(value, where);
    } else if (key == "sa_sweeps") {
      cfg.sa_sweeps = parse_u64(value, where);
    } else if (key == "spin_reversal_transforms") {
      cfg.spin_reversal_transforms = parse_u64(value, where);
    } else if (key == "top_k") {
      cfg.top_k = parse_u64(value, where);
    } else {
      throw std::invalid_argument(where + ": unknown key: " + key);
    }
  }
  return cfg;
}

ExperimentConfig parse_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config_text(text.str(), path);
}

MetricAggregate aggregate(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate of no values");
  for (double v : values) {
    if (std::isnan(v)) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      return {nan, nan, nan};
    }
  }
  std::sort(values.begin(), values.end());
  MetricAggregate out;
  out.min = values.front();
  out.max = values.back();
  const std::size_t mid = values.size() / 2;
  out.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return out;
}

void compute_aggregates(MetricsSeries& series) {
  series.aggregates.clear();
  series.aggregates.reserve(series.steps.size());
  const std::size_t reps = series.by_replicate.size();
  std::vector<double> vals(reps);
  for (std::size_t k = 0; k < series.steps.size(); ++k) {
    AggregateRow row;
    row.step = series.steps[k];
    const auto gather = [&](auto field) {
      for (std::size_t r = 0; r < reps; ++r) {
        vals[r] = field(series.by_replicate[r][k]);
      }
      return aggregate(vals);
    };
    row.precision = gather([](const MetricsRecord& m) { return m.precision; });
    row.recall = gather([](const MetricsRecord& m) { return m.recall; });
    row.pcdd_literal = gather([](const MetricsRecord& m) { return m.pcdd_literal; });
    row.pcdd_l2 = gather([](const MetricsRecord& m) { return m.pcdd_l2; });
    row.med = gather([](const MetricsRecord& m) { return m.med; });
    row.top_k =
        gather([](const MetricsRecord& m) { return static_cast<double>(m.top_k); });
    series.aggregates.push_back(row);
  }
}

namespace {

struct SeriesDesc {
  InitStrategy strategy;
  double temperature;  // unused for classical
  std::string label;
  std::uint64_t strategy_salt;
  std::uint64_t t_key;
};

std::string format_temperature(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::vector<SeriesDesc> make_series_descs(const ExperimentConfig& cfg) {
  std::vector<SeriesDesc> out;
  if (cfg.init_strategy == InitStrategy::classical) {
    out.push_back({InitStrategy::classical, 0.0, "classical", 1, 0});
    return out;
  }
  const bool hybrid = cfg.init_strategy == InitStrategy::hybrid;
  for (double t : cfg.temperatures) {
    SeriesDesc d;
    d.strategy = cfg.init_strategy;
    d.temperature = t;
    d.label = (hybrid ? std::string("hybrid_T") : std::string("annealer_T")) +
              format_temperature(t);
    d.strategy_salt = hybrid ? 3 : 2;
    d.t_key = std::bit_cast<std::uint64_t>(t);
    out.push_back(d);
  }
  return out;
}

StateBatch resample_rows(const StateBatch& src, std::size_t count, std::uint64_t seed) {
  StateBatch out(count, src.width);
  for (std::size_t c = 0; c < count; ++c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t pick = rng.next_below(src.chains);
    std::copy(src.row(pick).begin(), src.row(pick).end(), out.row(c).begin());
  }
  return out;
}

StateBatch annealer_batch(const RbmParams& model, const ExperimentConfig& cfg,
                          double temperature, std::size_t count, std::uint64_t seed) {
  switch (cfg.backend) {
    case Backend::exact:
      return exact_boltzmann_init(model, Temperature(temperature), count,
                                  derive_seed(seed, stream::exact_init));
    case Backend::import_file: {
      const SampleFile file = import_samples(cfg.import_path, model.n);
      if (file.batch.chains == count) return file.batch;
      return resample_rows(file.batch, count, derive_seed(seed, stream::import_resample));
    }
    case Backend::emulator:
    default: {
      const IsingModel ising = rbm_to_ising(model, Temperature(temperature));
      SaConfig sa = default_sa_config(Temperature(temperature));
      sa.sweeps = cfg.sa_sweeps;
      const SpinBatch spins = spin_reversal_ensemble(
          ising, sa, count, cfg.spin_reversal_transforms, seed);
      return spins_to_visible(spins, model.n);
    }
  }
}

StateBatch make_init(const RbmParams& model, const ExperimentConfig& cfg,
                     const SeriesDesc& desc, std::size_t count, std::uint64_t sseed) {
  switch (desc.strategy) {
    case InitStrategy::classical:
      return uniform_init(count, model.n, derive_seed(sseed, stream::chain_init));
    case InitStrategy::annealer:
      return annealer_batch(model, cfg, desc.temperature, count,
                            derive_seed(sseed, stream::chain_init));
    case InitStrategy::hybrid:
    default: {
      const StateBatch classical =
          uniform_init(count, model.n, derive_seed(sseed, stream::classical_half));
      const StateBatch annealer = annealer_batch(
          model, cfg, desc.temperature, count, derive_seed(sseed, stream::annealer_half));
      return hybrid_mix(classical, annealer, count,
                        derive_seed(sseed, stream::hybrid_pick));
    }
  }
}

RbmParams init_params(std::size_t n, std::size_t m, double scale, std::uint64_t seed) {
  RbmParams params(n, m);
  Rng rng(seed);
  for (auto& x : params.a) x = scale * rng.next_gaussian();
  for (auto& x : params.b) x = scale * rng.next_gaussian();
  for (auto& x : params.w) x = scale * rng.next_gaussian();
  return params;
}

PositiveSet build_positive_set(const ExperimentConfig& cfg) {
  return cfg.dataset == DatasetKind::bas ? bas_positives(cfg.dataset_n)
                                         : shifter_positives(cfg.dataset_n);
}

DistanceFn build_distance(const ExperimentConfig& cfg) {
  const std::size_t dn = cfg.dataset_n;
  if (cfg.dataset == DatasetKind::bas) {
    return [dn](std::span<const std::uint8_t> bits) { return bas_edit_distance(bits, dn); };
  }
  return [dn](std::span<const std::uint8_t> bits) {
    return shifter_edit_distance(bits, dn);
  };
}

RbmParams replicate_model_with_set(const ExperimentConfig& config, const PositiveSet& x,
                                   std::size_t replicate) {
  if (!config.checkpoint_path.empty()) {
    Checkpoint loaded = load_checkpoint(config.checkpoint_path);
    if (loaded.params.n != config.visible_units()) {
      throw std::invalid_argument("checkpoint width does not match the dataset");
    }
    return loaded.params;
  }
  const std::uint64_t seed_r =
      derive_seed(config.master_seed, stream::replicate, replicate);
  const StateBatch train_set = sample_training_set(
      x, config.resolved_training_set_size(), derive_seed(seed_r, stream::training_set));
  const RbmParams start =
      init_params(config.visible_units(), config.resolved_hidden_units(),
                  config.init_scale, derive_seed(seed_r, stream::weight_init));
  return train(start, train_set, config.resolved_train_config(),
               derive_seed(seed_r, stream::train_negative));
}

}  // namespace

RbmParams replicate_model(const ExperimentConfig& config, std::size_t replicate) {
  config.validate();
  if (replicate >= config.replicates) {
    throw std::invalid_argument("replicate index out of range");
  }
  const PositiveSet x = build_positive_set(config);
  return replicate_model_with_set(config, x, replicate);
}

StateBatch build_initial_chains(const ExperimentConfig& config, const RbmParams& model,
                                InitStrategy strategy, double temperature,
                                std::size_t replicate) {
  SeriesDesc desc;
  desc.strategy = strategy;
  desc.temperature = temperature;
  desc.strategy_salt =
      strategy == InitStrategy::classical ? 1 : (strategy == InitStrategy::annealer ? 2 : 3);
  desc.t_key =
      strategy == InitStrategy::classical ? 0 : std::bit_cast<std::uint64_t>(temperature);
  const std::uint64_t seed_r =
      derive_seed(config.master_seed, stream::replicate, replicate);
  const std::uint64_t sseed = derive_seed(seed_r, 0x10 + desc.strategy_salt, desc.t_key);
  return make_init(model, config, desc, config.resolved_chain_count(), sseed);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  const PositiveSet x = build_positive_set(config);
  const DistanceFn dist = build_distance(config);
  const std::vector<std::uint64_t> steps =
      schedule_steps(config.schedule, config.gibbs_updates);
  const std::vector<SeriesDesc> descs = make_series_descs(config);

  ExperimentResult result;
  result.series.resize(descs.size());
  for (std::size_t s = 0; s < descs.size(); ++s) {
    result.series[s].label = descs[s].label;
    result.series[s].steps = steps;
    result.series[s].by_replicate.assign(config.replicates, {});
  }

  for (std::size_t r = 0; r < config.replicates; ++r) {
    const RbmParams model = replicate_model_with_set(config, x, r);

    for (std::size_t s = 0; s < descs.size(); ++s) {
      const SeriesDesc& desc = descs[s];
      StateBatch batch =
          build_initial_chains(config, model, desc.strategy, desc.temperature, r);

      auto& records = result.series[s].by_replicate[r];
      records.reserve(steps.size());
      std::size_t next = 0;
      if (!steps.empty() && steps[next] == 0) {
        records.push_back(compute_metrics(0, batch, x, dist, config.top_k));
        ++next;
      }
      const std::uint64_t seed_r = derive_seed(config.master_seed, stream::replicate, r);
      const std::uint64_t update_seed = derive_seed(
          derive_seed(seed_r, 0x10 + desc.strategy_salt, desc.t_key), stream::chain_updates);
      for (std::uint64_t u = 1; u <= config.gibbs_updates && next < steps.size(); ++u) {
        batch = gibbs_update(model, batch, update_seed, u - 1);
        if (u == steps[next]) {
          records.push_back(compute_metrics(u, batch, x, dist, config.top_k));
          ++next;
        }
      }
    }
  }

  for (auto& series : result.series) compute_aggregates(series);
  return result;
}

namespace {

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_metrics_csv(std::ostream& out, const MetricsSeries& series) {
  out << "replicate,step,precision,recall,pcdd_literal,pcdd_l2,med,top10\n";
  for (std::size_t r = 0; r < series.by_replicate.size(); ++r) {
    for (const MetricsRecord& rec : series.by_replicate[r]) {
      out << r << ',' << rec.step << ',' << csv_double(rec.precision) << ','
          << csv_double(rec.recall) << ',' << csv_double(rec.pcdd_literal) << ','
          << csv_double(rec.pcdd_l2) << ',' << csv_double(rec.med) << ',' << rec.top_k
          << '\n';
    }
  }
}

void write_aggregates_csv(std::ostream& out, const MetricsSeries& series) {
  out << "step";
  for (const char* metric :
       {"precision", "recall", "pcdd_literal", "pcdd_l2", "med", "top10"}) {
    out << ',' << metric << "_median," << metric << "_min," << metric << "_max";
  }
  out << '\n';
  for (const AggregateRow& row : series.aggregates) {
    out << row.step;
    for (const MetricAggregate* agg :
         {&row.precision, &row.recall, &row.pcdd_literal, &row.pcdd_l2, &row.med,
          &row.top_k}) {
      out << ',' << csv_double(agg->median) << ',' << csv_double(agg->min) << ','
          << csv_double(agg->max);
    }
    out << '\n';
  }
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const MetricsSeries& series : result.series) {
    const auto metrics_path =
        std::filesystem::path(out_dir) / ("metrics_" + series.label + ".csv");
    std::ofstream metrics(metrics_path);
    if (!metrics) throw std::runtime_error("cannot write " + metrics_path.string());
    write_metrics_csv(metrics, series);

    const auto agg_path =
        std::filesystem::path(out_dir) / ("aggregates_" + series.label + ".csv");
    std::ofstream agg(agg_path);
    if (!agg) throw std::runtime_error("cannot write " + agg_path.string());
    write_aggregates_csv(agg, series);
  }
}

MetricsRecord evaluate_samples(const StateBatch& g, const PositiveSet& x,
                               const DistanceFn& dist, std::size_t k) {
  return compute_metrics(0, g, x, dist, k);
}

MetricsSeries read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metrics file: " + path);
  std::string header;
  if (!std::getline(in, header) ||
      header != "replicate,step,precision,recall,pcdd_literal,pcdd_l2,med,top10") {
    throw std::runtime_error(path + ": unrecognized metrics header");
  }

  MetricsSeries series;
  std::string stem = std::filesystem::path(path).stem().string();
  if (stem.rfind("metrics_", 0) == 0) stem = stem.substr(8);
  series.label = stem;

  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 8) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 8 columns");
    }
    const std::string where = path + ":" + std::to_string(line_no);
    const std::size_t r = parse_u64(cells[0], where);
    MetricsRecord rec;
    rec.step = parse_u64(cells[1], where);
    rec.precision = parse_double(cells[2], where);
    rec.recall = parse_double(cells[3], where);
    rec.pcdd_literal = parse_double(cells[4], where);
    rec.pcdd_l2 = parse_double(cells[5], where);
    rec.med = parse_double(cells[6], where);
    rec.top_k = parse_u64(cells[7], where);
    if (r >= series.by_replicate.size()) series.by_replicate.resize(r + 1);
    series.by_replicate[r].push_back(rec);
  }
  if (series.by_replicate.empty()) throw std::runtime_error(path + ": no records");

  for (const MetricsRecord& rec : series.by_replicate[0]) series.steps.push_back(rec.step);
  for (const auto& records : series.by_replicate) {
    if (records.size() != series.steps.size()) {
      throw std::runtime_error(path + ": replicates disagree on recorded steps");
    }
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (records[k].step != series.steps[k]) {
        throw std::runtime_error(path + ": replicates disagree on recorded steps");
      }
    }
  }
  compute_aggregates(series);
  return series;
}

BenchReport bench_gibbs(const RbmParams& params, std::size_t chain_count,
                        std::size_t updates, std::size_t repetitions) {
  params.validate();
  if (chain_count < 1 || updates < 1 || repetitions < 1) {
    throw std::invalid_argument("benchmark needs chains, updates, and repetitions");
  }
  BenchReport report;
  report.n = params.n;
  report.m = params.m;
  report.chain_count = chain_count;
  report.updates_per_repetition = updates;
  report.repetitions = repetitions;

  StateBatch batch = uniform_init(chain_count, params.n, 0x9b5);
  batch = gibbs_update(params, batch, 0x9b6, 0);  // warm-up

  std::vector<double> per_update(repetitions);
  std::uint64_t counter = 1;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t u = 0; u < updates; ++u) {
      batch = gibbs_update(params, batch, 0x9b6, counter++);
    }
    const auto t1 = std::chrono::steady_clock::now();
    per_update[rep] =
        std::chrono::duration<double>(t1 - t0).count() / static_cast<double>(updates);
  }

  double mean = 0.0;
  for (double v : per_update) mean += v;
  mean /= static_cast<double>(repetitions);
  double var = 0.0;
  for (double v : per_update) var += (v - mean) * (v - mean);
  var = repetitions > 1 ? var / static_cast<double>(repetitions - 1) : 0.0;

  report.mean_seconds_per_update = mean;
  report.stddev_seconds_per_update = std::sqrt(var);
  report.samples_per_second = static_cast<double>(chain_count) / mean;
  return report;
}

std::string format_bench_report(const BenchReport& report) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "block Gibbs throughput: %zu visible x %zu hidden, %zu chains\n",
                report.n, report.m, report.chain_count);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "mean per full update: %.4g ms (stddev %.2g ms) over %zu repetitions "
                "of %zu updates\n",
                report.mean_seconds_per_update * 1e3,
                report.stddev_seconds_per_update * 1e3, report.repetitions,
                report.updates_per_repetition);
  out += buf;
  std::snprintf(buf, sizeof buf, "chain throughput: %.4g samples/s\n",
                report.samples_per_second);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "device budget: %g + %g + %g us per sample -> %.3g s per %zu samples\n",
                report.anneal_us, report.delay_us, report.readout_us,
                report.annealer_seconds(), report.chain_count);
  out += buf;
  return out;
}

}  // namespace rbmlab
