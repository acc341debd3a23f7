#include "rbmlab/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbmlab/exact.hpp"
#include "rbmlab/rng.hpp"
#include "rbmlab/samplers.hpp"

namespace rbmlab {

void TrainConfig::validate() const {
  // learning_rate 0 is admitted so that the documented no-op behavior is
  // reachable; anything negative is rejected.
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be a finite non-negative real");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (gibbs_updates_negative < 1) {
    throw std::invalid_argument("negative phase needs at least one update");
  }
  if (batch_size < 1) throw std::invalid_argument("batch size must be at least 1");
}

namespace {

// Stats of a visible batch with hidden units taken as probabilities.
// The per-cell sums run over rows in index order regardless of schedule,
// so parallel and serial results are bit-identical.
PhaseStats stats_from_states(const RbmParams& params, const StateBatch& batch) {
  const std::size_t rows = batch.chains, n = params.n, m = params.m;
  if (rows == 0) throw std::invalid_argument("phase statistics need at least one state");
  if (batch.width != n) throw std::invalid_argument("batch width does not match the model");

  std::vector<double> probs(rows * m);
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < static_cast<long long>(rows); ++r) {
    hidden_probs_into(params, batch.row(r), {probs.data() + r * m, m});
  }

  PhaseStats out;
  out.n = n;
  out.m = m;
  out.vh_mean.assign(n * m, 0.0);
  out.v_mean.assign(n, 0.0);
  out.h_mean.assign(m, 0.0);

#pragma omp parallel for schedule(static)
  for (long long cell = 0; cell < static_cast<long long>(n * m); ++cell) {
    const std::size_t i = cell / m, j = cell % m;
    double acc = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (batch.at(r, i)) acc += probs[r * m + j];
    }
    out.vh_mean[cell] = acc / static_cast<double>(rows);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t r = 0; r < rows; ++r) acc += batch.at(r, i);
    out.v_mean[i] = acc / static_cast<double>(rows);
  }
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < rows; ++r) acc += probs[r * m + j];
    out.h_mean[j] = acc / static_cast<double>(rows);
  }
  return out;
}

}  // namespace

PhaseStats positive_phase(const RbmParams& params, const StateBatch& data) {
  return stats_from_states(params, data);
}

namespace reference {

PhaseStats positive_phase(const RbmParams& params, const StateBatch& data) {
  const std::size_t rows = data.chains, n = params.n, m = params.m;
  if (rows == 0) throw std::invalid_argument("phase statistics need at least one state");
  if (data.width != n) throw std::invalid_argument("batch width does not match the model");

  PhaseStats out;
  out.n = n;
  out.m = m;
  out.vh_mean.assign(n * m, 0.0);
  out.v_mean.assign(n, 0.0);
  out.h_mean.assign(m, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto p = hidden_probs(params, data.row(r));
    for (std::size_t i = 0; i < n; ++i) {
      if (!data.at(r, i)) continue;
      for (std::size_t j = 0; j < m; ++j) out.vh_mean[i * m + j] += p[j];
    }
    for (std::size_t i = 0; i < n; ++i) out.v_mean[i] += data.at(r, i);
    for (std::size_t j = 0; j < m; ++j) out.h_mean[j] += p[j];
  }
  for (double& x : out.vh_mean) x /= static_cast<double>(rows);
  for (double& x : out.v_mean) x /= static_cast<double>(rows);
  for (double& x : out.h_mean) x /= static_cast<double>(rows);
  return out;
}

}  // namespace reference

PhaseStats negative_phase_cd(const RbmParams& params, const StateBatch& data,
                             std::size_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("negative phase needs at least one update");
  StateBatch chains = data;
  for (std::size_t u = 0; u < k; ++u) {
    chains = gibbs_update(params, chains, seed, u);
  }
  return stats_from_states(params, chains);
}

PhaseStats negative_phase_naive(const RbmParams& params, std::size_t chain_count,
                                std::size_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("negative phase needs at least one update");
  if (chain_count < 1) throw std::invalid_argument("need at least one chain");
  StateBatch chains = uniform_init(chain_count, params.n, derive_seed(seed, 1));
  const std::uint64_t update_seed = derive_seed(seed, 2);
  for (std::size_t u = 0; u < k; ++u) {
    chains = gibbs_update(params, chains, update_seed, u);
  }
  return stats_from_states(params, chains);
}

PhaseStats exact_negative_phase(const RbmParams& params) {
  const auto table = exact_boltzmann_table(params);
  const std::size_t n = params.n, m = params.m;
  PhaseStats out;
  out.n = n;
  out.m = m;
  out.vh_mean.assign(n * m, 0.0);
  out.v_mean.assign(n, 0.0);
  out.h_mean.assign(m, 0.0);
  for (std::size_t s = 0; s < table.size(); ++s) {
    const double p = table[s];
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s >> i & 1)) continue;
      out.v_mean[i] += p;
      for (std::size_t j = 0; j < m; ++j) {
        if (s >> (n + j) & 1) out.vh_mean[i * m + j] += p;
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (s >> (n + j) & 1) out.h_mean[j] += p;
    }
  }
  return out;
}

RbmParams train(RbmParams params, const StateBatch& data, const TrainConfig& config,
                std::uint64_t seed) {
  params.validate();
  config.validate();
  if (data.chains == 0) throw std::invalid_argument("training needs at least one example");
  if (data.width != params.n) {
    throw std::invalid_argument("training data width does not match the model");
  }

  const std::size_t rows = data.chains;
  const std::size_t batch_size = config.batch_size < rows ? config.batch_size : rows;
  const std::size_t batches = (rows + batch_size - 1) / batch_size;
  const std::size_t neg_chains =
      config.negative_chain_count ? config.negative_chain_count : batch_size;
  const double lr = config.learning_rate;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t bi = 0; bi < batches; ++bi) {
      const std::size_t lo = bi * batch_size;
      const std::size_t hi = lo + batch_size < rows ? lo + batch_size : rows;
      StateBatch batch(hi - lo, params.n);
      std::copy(data.bits.begin() + lo * params.n, data.bits.begin() + hi * params.n,
                batch.bits.begin());

      const std::uint64_t step_seed = derive_seed(seed, epoch, bi);
      const PhaseStats pos = positive_phase(params, batch);
      const PhaseStats neg =
          config.negative_phase_kind == NegativePhaseKind::cd
              ? negative_phase_cd(params, batch, config.gibbs_updates_negative, step_seed)
              : negative_phase_naive(params, neg_chains, config.gibbs_updates_negative,
                                     step_seed);

      for (std::size_t i = 0; i < params.n; ++i) {
        params.a[i] += lr * (pos.v_mean[i] - neg.v_mean[i]);
      }
      for (std::size_t j = 0; j < params.m; ++j) {
        params.b[j] += lr * (pos.h_mean[j] - neg.h_mean[j]);
      }
      for (std::size_t c = 0; c < params.n * params.m; ++c) {
        params.w[c] += lr * (pos.vh_mean[c] - neg.vh_mean[c]);
      }
    }

    for (double x : params.a) {
      if (std::abs(x) > 1e6) throw std::runtime_error("training diverged: visible bias");
    }
    for (double x : params.b) {
      if (std::abs(x) > 1e6) throw std::runtime_error("training diverged: hidden bias");
    }
    for (double x : params.w) {
      if (std::abs(x) > 1e6) throw std::runtime_error("training diverged: weight");
    }
  }
  return params;
}

}  // namespace rbmlab
