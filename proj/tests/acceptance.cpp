// End-to-end acceptance checks. Each criterion prints exactly one line,
// PASS or FAIL, with the measured quantities and the pinned tolerance.
// The process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rbmlab/datasets.hpp"
#include "rbmlab/exact.hpp"
#include "rbmlab/harness.hpp"
#include "rbmlab/ising.hpp"
#include "rbmlab/metrics.hpp"
#include "rbmlab/rbm.hpp"
#include "rbmlab/rng.hpp"
#include "rbmlab/samplers.hpp"
#include "rbmlab/state.hpp"
#include "rbmlab/training.hpp"

namespace fs = std::filesystem;
using namespace rbmlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

// criterion 1: conditional probabilities against direct evaluation
Outcome check_conditionals() {
  double max_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(derive_seed(0xac01, trial));
    const std::size_t n = 2 + rng.next_below(9);
    const std::size_t m = 2 + rng.next_below(9);
    const auto params = fixture::random_model(n, m, derive_seed(0xac01, trial, 1), 2.0);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<std::uint8_t> v(n), h(m);
      for (auto& bit : v) bit = static_cast<std::uint8_t>(rng.next_u64() & 1u);
      for (auto& bit : h) bit = static_cast<std::uint8_t>(rng.next_u64() & 1u);
      const auto ph = hidden_probs(params, v);
      const auto ph_ref = oracle::hidden_cond(params, v);
      for (std::size_t j = 0; j < m; ++j)
        max_err = std::max(max_err, std::abs(ph[j] - ph_ref[j]));
      const auto pv = visible_probs(params, h);
      const auto pv_ref = oracle::visible_cond(params, h);
      for (std::size_t i = 0; i < n; ++i)
        max_err = std::max(max_err, std::abs(pv[i] - pv_ref[i]));
    }
  }
  return {max_err <= 1e-12,
          format("conditionals on 100 random models, max abs err %.2e (limit 1e-12)",
                 max_err)};
}

// criterion 2: long-run visible marginal of the Gibbs chain
Outcome check_stationarity() {
  const auto params = fixture::random_model(4, 3, 0xac02, 1.0);
  const std::size_t chains = 1000, burn_in = 1000, collect = 1000;
  auto batch = uniform_init(chains, 4, derive_seed(0xac02, 1));
  std::vector<double> hist(16, 0.0);
  for (std::size_t u = 0; u < burn_in + collect; ++u) {
    batch = gibbs_update(params, batch, derive_seed(0xac02, 2), u);
    if (u < burn_in) continue;
    for (std::size_t c = 0; c < chains; ++c) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < 4; ++i)
        idx |= static_cast<std::size_t>(batch.bits[c * 4 + i]) << i;
      hist[idx] += 1.0;
    }
  }
  const double total = static_cast<double>(chains * collect);
  for (auto& x : hist) x /= total;
  const auto marginal = exact_visible_marginal(params);
  const double tv = oracle::tv_distance(hist, marginal);
  return {tv <= 0.02,
          format("visible marginal of 1e6 samples after 1e3 burn-in updates, "
                 "TV %.4f (limit 0.02)",
                 tv)};
}

// criterion 3: exact negative phase against finite differences
Outcome check_gradient() {
  double max_rel = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto params = fixture::random_model(3, 2, derive_seed(0xac03, trial), 1.5);
    const std::size_t rows = 6;
    const auto data = fixture::random_batch(rows, 3, derive_seed(0xac03, trial, 1));
    std::vector<std::vector<std::uint8_t>> rows_copy;
    for (std::size_t r = 0; r < rows; ++r)
      rows_copy.emplace_back(data.bits.begin() + r * 3, data.bits.begin() + (r + 1) * 3);
    const auto pos = positive_phase(params, data);
    const auto neg = exact_negative_phase(params);
    std::vector<double> grad;
    for (std::size_t i = 0; i < 3; ++i) grad.push_back(pos.v_mean[i] - neg.v_mean[i]);
    for (std::size_t j = 0; j < 2; ++j) grad.push_back(pos.h_mean[j] - neg.h_mean[j]);
    for (std::size_t c = 0; c < 6; ++c) grad.push_back(pos.vh_mean[c] - neg.vh_mean[c]);
    const auto fd = oracle::ll_gradient_fd(params, rows_copy, 1e-5);
    for (std::size_t c = 0; c < grad.size(); ++c) {
      const double reference = fd[c] / static_cast<double>(rows);
      const double rel =
          std::abs(grad[c] - reference) / std::max(1e-3, std::abs(reference));
      max_rel = std::max(max_rel, rel);
    }
  }
  return {max_rel <= 1e-4,
          format("likelihood gradient vs finite differences on 20 models, "
                 "max rel err %.2e (limit 1e-4)",
                 max_rel)};
}

// criterion 4: spin-model image reproduces the Boltzmann table; gauge is exact
Outcome check_spin_model() {
  double max_err = 0.0;
  const double temps[3] = {1.0, 8.0, 64.0};
  for (int trial = 0; trial < 10; ++trial) {
    const auto params = fixture::random_model(3, 2, derive_seed(0xac04, trial), 1.5);
    for (const double t : temps) {
      const auto table = exact_boltzmann_table(params, Temperature(t));
      const auto ising = rbm_to_ising(params, Temperature(t));
      std::vector<double> weights(32);
      double z = 0.0;
      for (std::size_t idx = 0; idx < 32; ++idx) {
        std::vector<std::int8_t> spins(5);
        for (std::size_t k = 0; k < 5; ++k)
          spins[k] = (idx >> k) & 1u ? std::int8_t{1} : std::int8_t{-1};
        weights[idx] = std::exp(-ising_energy(ising, spins));
        z += weights[idx];
      }
      for (std::size_t idx = 0; idx < 32; ++idx)
        max_err = std::max(max_err, std::abs(weights[idx] / z - table[idx]));
    }
  }

  int exact_models = 0;
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng(derive_seed(0xac04, trial, 2));
    IsingModel ising;
    ising.spins = 10;
    ising.fields.resize(10);
    for (auto& f : ising.fields) f = 4.0 * rng.next_unit() - 2.0;
    for (std::uint32_t i = 0; i < 10; ++i)
      for (std::uint32_t j = i + 1; j < 10; ++j)
        ising.couplings.push_back({i, j, 2.0 * rng.next_unit() - 1.0});
    ising.validate();
    const auto gauge = random_gauge(10, derive_seed(0xac04, trial, 3));
    const auto flipped = apply_gauge(ising, gauge);
    bool identical = true;
    std::vector<std::int8_t> s(10), sg(10);
    for (std::size_t mask = 0; mask < 1024; ++mask) {
      for (std::size_t k = 0; k < 10; ++k) {
        s[k] = (mask >> k) & 1u ? std::int8_t{1} : std::int8_t{-1};
        sg[k] = static_cast<std::int8_t>(gauge.g[k] * s[k]);
      }
      if (ising_energy(flipped, sg) != ising_energy(ising, s)) identical = false;
    }
    if (identical) ++exact_models;
  }

  return {max_err <= 1e-12 && exact_models == 5,
          format("spin-model probabilities max err %.2e (limit 1e-12); gauge "
                 "energies bitwise identical on %d/5 models",
                 max_err, exact_models)};
}

// criterion 5: dataset member counts
Outcome check_dataset_counts() {
  const std::size_t bas12 = bas_positives(12).members.size();
  const std::size_t bas4 = bas_positives(4).members.size();
  const auto shifter8 = shifter_positives(8);
  const bool pass =
      bas12 == 8190 && bas4 == 30 && shifter8.members.size() == 768 && shifter8.dim == 19;
  return {pass, format("member counts %zu / %zu / %zu, string width %zu "
                       "(expected 8190 / 30 / 768, width 19)",
                       bas12, bas4, shifter8.members.size(), shifter8.dim)};
}

// criterion 6: closed-form distance equals exhaustive nearest-member search
Outcome check_edit_distance() {
  const auto set = bas_positives(4);
  std::vector<std::uint64_t> packed;
  for (const auto& member : set.members) {
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < 16; ++i)
      word |= static_cast<std::uint64_t>(member[i]) << i;
    packed.push_back(word);
  }
  std::size_t mismatches = 0;
  for (std::uint64_t image = 0; image < 65536; ++image) {
    std::vector<std::uint8_t> bits(16);
    for (std::size_t i = 0; i < 16; ++i)
      bits[i] = static_cast<std::uint8_t>((image >> i) & 1u);
    if (bas_edit_distance(bits, 4) != oracle::nearest_hamming(image, packed))
      ++mismatches;
  }
  return {mismatches == 0,
          format("closed-form distance vs exhaustive search on all 65536 4x4 "
                 "images, %zu mismatches",
                 mismatches)};
}

// criterion 7: annealing emulator reaches the Boltzmann distribution
Outcome check_annealing_fidelity() {
  const auto params = fixture::random_model(3, 2, 0xac07, 1.0);
  const double temps[2] = {1.0, 8.0};
  double tv[2] = {0.0, 0.0};
  for (int which = 0; which < 2; ++which) {
    const Temperature t(temps[which]);
    const auto ising = rbm_to_ising(params, t);
    auto config = default_sa_config(t);
    config.sweeps = 2000;
    const std::size_t chains = 100000;
    const auto spins = sa_sample(ising, config, chains, derive_seed(0xac07, which));
    std::vector<double> hist(32, 0.0);
    for (std::size_t c = 0; c < chains; ++c) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < 5; ++k)
        if (spins.spins[c * 5 + k] > 0) idx |= std::size_t{1} << k;
      hist[idx] += 1.0;
    }
    for (auto& x : hist) x /= static_cast<double>(chains);
    const auto table = exact_boltzmann_table(params, t);
    tv[which] = oracle::tv_distance(hist, table);
  }
  return {tv[0] <= 0.05 && tv[1] <= 0.05,
          format("annealed sample TV vs enumeration: %.4f at T=1, %.4f at T=8 "
                 "(limit 0.05, 2000 sweeps, 1e5 chains)",
                 tv[0], tv[1])};
}

// criterion 8: metric identities and the uniform top-10 reference
Outcome check_metric_identities() {
  const auto set = bas_positives(3);
  const DistanceFn dist = [](std::span<const std::uint8_t> bits) {
    return bas_edit_distance(bits, 3);
  };
  double max_identity_err = 0.0;
  bool equivalences_hold = true;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(0xac08, trial));
    StateBatch mixed(400, set.dim);
    for (std::size_t r = 0; r < 400; ++r) {
      if (rng.next_unit() < 0.6) {
        const auto& member = set.members[rng.next_below(set.members.size())];
        std::copy(member.begin(), member.end(), mixed.bits.begin() + r * set.dim);
      } else {
        for (std::size_t i = 0; i < set.dim; ++i)
          mixed.bits[r * set.dim + i] = static_cast<std::uint8_t>(rng.next_u64() & 1u);
      }
    }
    const auto tally = tally_samples(mixed, set, dist);
    const double lhs = precision(tally) * static_cast<double>(tally.total);
    const double rhs =
        pcdd_literal(tally, set) * static_cast<double>(set.members.size());
    max_identity_err = std::max(max_identity_err, std::abs(lhs - rhs));

    StateBatch pure(50, set.dim);
    for (std::size_t r = 0; r < 50; ++r) {
      const auto& member = set.members[rng.next_below(set.members.size())];
      std::copy(member.begin(), member.end(), pure.bits.begin() + r * set.dim);
    }
    const auto pure_tally = tally_samples(pure, set, dist);
    if (!(med(pure_tally) == 0.0 && precision(pure_tally) == 1.0))
      equivalences_hold = false;
    StateBatch tainted = pure;
    tainted.bits[0] ^= 1u;  // one flipped bit leaves the set, its members are 3 apart
    const auto tainted_tally = tally_samples(tainted, set, dist);
    if (!(med(tainted_tally) > 0.0 && precision(tainted_tally) < 1.0))
      equivalences_hold = false;
  }

  int below_150 = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(derive_seed(0xac08, trial, 2));
    SampleTally tally;
    tally.member_counts.assign(8190, 0);
    for (int draw = 0; draw < 40000; ++draw) ++tally.member_counts[rng.next_below(8190)];
    tally.positive_count = 40000;
    tally.total = 40000;
    below_150 += top_k_concentration(tally, 10) < 150 ? 1 : 0;
  }

  const bool pass = max_identity_err <= 1e-9 && equivalences_hold && below_150 >= 99;
  return {pass, format("count identity err %.1e (limit 1e-9); zero-distance and "
                       "full-precision coincide; top-10 of 40000 uniform draws "
                       "under 150 in %d/100 trials (need 99)",
                       max_identity_err, below_150)};
}

ExperimentConfig desk_scale_config() {
  ExperimentConfig config;
  config.dataset = DatasetKind::bas;
  config.dataset_n = 4;
  config.hidden_units = 16;
  config.model_kind = ModelKind::cd1;
  config.replicates = 5;
  config.gibbs_updates = 100;
  config.master_seed = 20260816;
  config.schedule = ScheduleSpec{1, 99};  // records steps 0, 1, 100
  return config;
}

double median_precision_at(const MetricsSeries& series, std::uint64_t step) {
  for (std::size_t k = 0; k < series.steps.size(); ++k)
    if (series.steps[k] == step) return series.aggregates[k].precision.median;
  throw std::runtime_error("step missing from series");
}

// criterion 9: Boltzmann-initialized chains lead early, uniform catches up
Outcome check_init_strategies() {
  auto warm = desk_scale_config();
  warm.init_strategy = InitStrategy::annealer;
  warm.backend = Backend::exact;
  warm.temperatures = {2.0};
  const auto warm_series = run_experiment(warm).series.at(0);

  auto cold = desk_scale_config();
  cold.init_strategy = InitStrategy::classical;
  const auto cold_series = run_experiment(cold).series.at(0);

  const double warm_1 = median_precision_at(warm_series, 1);
  const double cold_1 = median_precision_at(cold_series, 1);
  const double warm_100 = median_precision_at(warm_series, 100);
  const double cold_100 = median_precision_at(cold_series, 100);
  const bool pass = warm_1 > cold_1 && cold_100 >= warm_100 - 0.05;
  return {pass, format("median precision at step 1: %.3f Boltzmann-initialized vs "
                       "%.3f uniform; at step 100: %.3f vs %.3f (tolerance 0.05)",
                       warm_1, cold_1, warm_100, cold_100)};
}

// criterion 10: long negative-phase training holds up at long sampling times
Outcome check_training_kinds() {
  auto slow = desk_scale_config();
  slow.model_kind = ModelKind::naive;
  const auto slow_series = run_experiment(slow).series.at(0);

  const auto fast_series = run_experiment(desk_scale_config()).series.at(0);

  const double slow_100 = median_precision_at(slow_series, 100);
  const double fast_100 = median_precision_at(fast_series, 100);
  return {slow_100 >= fast_100,
          format("median precision at step 100: %.3f with 50-update negative "
                 "phase vs %.3f with single-update negative phase",
                 slow_100, fast_100)};
}

// criterion 11: csv outputs are identical across thread counts
Outcome check_thread_determinism() {
  const auto dir = fixture::scratch_dir("acceptance_threads");
  const fs::path cfg_path = dir / "fixture.cfg";
  {
    std::ofstream out(cfg_path);
    out << "dataset = bas\n"
           "n = 3\n"
           "hidden_units = 9\n"
           "replicates = 2\n"
           "training_set_size = 12\n"
           "chain_count = 400\n"
           "gibbs_updates = 10\n"
           "init = hybrid\n"
           "backend = emulator\n"
           "temperatures = 2\n"
           "sa_sweeps = 60\n"
           "spin_reversal_transforms = 3\n"
           "learning_rate = 0.1\n"
           "epochs = 80\n"
           "batch_size = 12\n"
           "dense_until = 5\n"
           "sparse_stride = 5\n";
  }
  const auto run_at = [&](int threads, const fs::path& out_dir) {
    const std::string command =
        "env OMP_NUM_THREADS=" + std::to_string(threads) + " \"" + RBMLAB_CLI_PATH +
        "\" run --config \"" + cfg_path.string() + "\" --seed 7 --out-dir \"" +
        out_dir.string() + "\" > \"" + (out_dir.string() + ".log") + "\" 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  };
  const fs::path d1 = dir / "threads1", d4 = dir / "threads4";
  fs::create_directories(d1);
  fs::create_directories(d4);
  if (!run_at(1, d1) || !run_at(4, d4)) {
    return {false, "cli run failed under OMP_NUM_THREADS=1 or =4"};
  }
  std::size_t files = 0, equal = 0;
  for (const auto& entry : fs::directory_iterator(d1)) {
    if (entry.path().extension() != ".csv") continue;
    ++files;
    if (fs::exists(d4 / entry.path().filename()) &&
        slurp(entry.path()) == slurp(d4 / entry.path().filename()))
      ++equal;
  }
  fs::remove_all(dir);
  return {files > 0 && files == equal,
          format("%zu/%zu csv outputs byte-identical between 1 and 4 threads",
                 equal, files)};
}

// criterion 12: throughput report with the fixed per-sample device budget
Outcome check_bench_report() {
  const auto params = fixture::random_model(144, 144, 0xac0c, 0.05);
  const auto report = bench_gibbs(params, 10000, 3, 3);
  const auto text = format_bench_report(report);
  const bool pass = report.mean_seconds_per_update > 0.0 &&
                    text.find("144 visible x 144 hidden") != std::string::npos &&
                    text.find("10000 chains") != std::string::npos &&
                    text.find("chain throughput") != std::string::npos &&
                    text.find("20 + 20 + 214 us per sample") != std::string::npos &&
                    text.find("2.54 s per 10000 samples") != std::string::npos;
  return {pass, format("throughput report complete, %.4g ms per full update, "
                       "fixed budget line present",
                       report.mean_seconds_per_update * 1e3)};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*check)();
  };
  const Entry entries[] = {
      {"conditional probabilities", check_conditionals},
      {"chain stationarity", check_stationarity},
      {"likelihood gradient", check_gradient},
      {"spin-model image and gauge", check_spin_model},
      {"dataset counts", check_dataset_counts},
      {"edit distance", check_edit_distance},
      {"annealing fidelity", check_annealing_fidelity},
      {"metric identities", check_metric_identities},
      {"initialization strategies", check_init_strategies},
      {"training kinds", check_training_kinds},
      {"thread determinism", check_thread_determinism},
      {"throughput report", check_bench_report},
  };
  int failures = 0;
  int index = 0;
  for (const auto& entry : entries) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = entry.check();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d (%s): %s  %s  [%.1f s]\n", index, entry.name,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
