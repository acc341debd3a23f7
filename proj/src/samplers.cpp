#include "rbmlab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbmlab/exact.hpp"
#include "rbmlab/rng.hpp"

namespace rbmlab {

StateBatch uniform_init(std::size_t chain_count, std::size_t width, std::uint64_t seed) {
  if (chain_count < 1 || width < 1) {
    throw std::invalid_argument("need at least one chain and one unit");
  }
  StateBatch out(chain_count, width);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chain_count); ++c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    auto row = out.row(c);
    for (std::size_t i = 0; i < width; ++i) row[i] = rng.bernoulli(0.5) ? 1 : 0;
  }
  return out;
}

void SaConfig::validate() const {
  if (sweeps < 1) throw std::invalid_argument("annealing needs at least one sweep");
  if (!(beta_initial > 0.0) || !(beta_final > 0.0)) {
    throw std::invalid_argument("inverse temperatures must be positive");
  }
  if (beta_initial > beta_final) {
    throw std::invalid_argument("annealing must not heat up");
  }
}

SaConfig default_sa_config(Temperature t) {
  SaConfig cfg;
  cfg.sweeps = 1000;
  cfg.beta_initial = std::min(0.1 / t.value, 1.0);
  cfg.beta_final = 1.0;
  return cfg;
}

namespace {

std::vector<double> beta_schedule(const SaConfig& config) {
  std::vector<double> betas(config.sweeps);
  if (config.sweeps == 1) {
    betas[0] = config.beta_final;
    return betas;
  }
  const double ratio = config.beta_final / config.beta_initial;
  const double denom = static_cast<double>(config.sweeps - 1);
  for (std::size_t t = 0; t < config.sweeps; ++t) {
    betas[t] = config.beta_initial * std::pow(ratio, static_cast<double>(t) / denom);
  }
  return betas;
}

// One chain: uniform random spins, then sequential-site Metropolis sweeps.
void anneal_chain(const IsingModel& ising, const IsingAdjacency& adj,
                  std::span<const double> betas, std::uint64_t chain_seed,
                  std::span<std::int8_t> s) {
  Rng rng(chain_seed);
  const std::size_t width = ising.spins;
  for (std::size_t k = 0; k < width; ++k) s[k] = (rng.next_u64() & 1) ? 1 : -1;
  for (const double beta : betas) {
    for (std::size_t k = 0; k < width; ++k) {
      double local = ising.fields[k];
      for (std::size_t e = adj.start[k]; e < adj.start[k + 1]; ++e) {
        local += adj.entries[e].value * s[adj.entries[e].other];
      }
      // ΔH for flipping s_k
      const double delta = -2.0 * s[k] * local;
      if (delta <= 0.0 || rng.next_unit() < std::exp(-beta * delta)) {
        s[k] = -s[k];
      }
    }
  }
}

}  // namespace

SpinBatch sa_sample(const IsingModel& ising, const SaConfig& config,
                    std::size_t chain_count, std::uint64_t seed) {
  ising.validate();
  config.validate();
  if (chain_count < 1) throw std::invalid_argument("need at least one chain");
  const IsingAdjacency adj = build_adjacency(ising);
  const std::vector<double> betas = beta_schedule(config);
  SpinBatch out(chain_count, ising.spins);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chain_count); ++c) {
    anneal_chain(ising, adj, betas, derive_seed(seed, static_cast<std::uint64_t>(c)),
                 out.row(c));
  }
  return out;
}

namespace reference {

SpinBatch sa_sample(const IsingModel& ising, const SaConfig& config,
                    std::size_t chain_count, std::uint64_t seed) {
  ising.validate();
  config.validate();
  if (chain_count < 1) throw std::invalid_argument("need at least one chain");
  const IsingAdjacency adj = build_adjacency(ising);
  const std::vector<double> betas = beta_schedule(config);
  SpinBatch out(chain_count, ising.spins);
  for (std::size_t c = 0; c < chain_count; ++c) {
    anneal_chain(ising, adj, betas, derive_seed(seed, c), out.row(c));
  }
  return out;
}

}  // namespace reference

SpinBatch spin_reversal_ensemble(const IsingModel& ising, const SaConfig& config,
                                 std::size_t chain_count, std::size_t r,
                                 std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("need at least one gauge");
  if (chain_count < 1) throw std::invalid_argument("need at least one chain");
  SpinBatch out(chain_count, ising.spins);
  const std::size_t base = chain_count / r;
  const std::size_t rem = chain_count % r;
  std::size_t offset = 0;
  for (std::size_t g = 0; g < r; ++g) {
    const std::size_t count = base + (g < rem ? 1 : 0);
    if (count == 0) continue;
    const GaugeVector gauge = random_gauge(ising.spins, derive_seed(seed, stream::gauge, g));
    const IsingModel gauged = apply_gauge(ising, gauge);
    const SpinBatch raw =
        sa_sample(gauged, config, count, derive_seed(seed, stream::sa_chains, g));
    const SpinBatch fixed = ungauge_samples(raw, gauge);
    std::copy(fixed.spins.begin(), fixed.spins.end(),
              out.spins.begin() + offset * ising.spins);
    offset += count;
  }
  return out;
}

StateBatch exact_boltzmann_init(const RbmParams& params, Temperature t,
                                std::size_t chain_count, std::uint64_t seed) {
  if (chain_count < 1) throw std::invalid_argument("need at least one chain");
  const std::vector<double> marginal = exact_visible_marginal(params, t);
  std::vector<double> cdf(marginal.size());
  double acc = 0.0;
  for (std::size_t s = 0; s < marginal.size(); ++s) {
    acc += marginal[s];
    cdf[s] = acc;
  }
  cdf.back() = 1.0;

  StateBatch out(chain_count, params.n);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chain_count); ++c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const double u = rng.next_unit();
    const std::size_t pick =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    auto row = out.row(c);
    for (std::size_t i = 0; i < params.n; ++i) row[i] = (pick >> i) & 1;
  }
  return out;
}

StateBatch spins_to_visible(const SpinBatch& spins, std::size_t n) {
  if (n > spins.width) throw std::invalid_argument("fewer spins than visible units");
  StateBatch out(spins.chains, n);
  for (std::size_t c = 0; c < spins.chains; ++c) {
    const auto src = spins.row(c);
    auto dst = out.row(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] > 0 ? 1 : 0;
  }
  return out;
}

StateBatch hybrid_mix(const StateBatch& a, const StateBatch& b,
                      std::size_t chain_count, std::uint64_t seed) {
  if (a.width != b.width) throw std::invalid_argument("pool widths differ");
  if (a.chains == 0 && b.chains == 0) throw std::invalid_argument("empty pools");
  if (chain_count < 1) throw std::invalid_argument("need at least one chain");
  const std::size_t pool = a.chains + b.chains;
  StateBatch out(chain_count, a.width);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chain_count); ++c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const std::size_t pick = rng.next_below(pool);
    const auto src = pick < a.chains ? a.row(pick) : b.row(pick - a.chains);
    std::copy(src.begin(), src.end(), out.row(c).begin());
  }
  return out;
}

}  // namespace rbmlab
