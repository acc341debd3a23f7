#pragma once

#include <cstdint>
#include <vector>

#include "rbmlab/ising.hpp"
#include "rbmlab/rbm.hpp"
#include "rbmlab/state.hpp"

namespace rbmlab {

// i.i.d. fair-coin bits; chain c draws from its own derived stream.
StateBatch uniform_init(std::size_t chain_count, std::size_t width, std::uint64_t seed);

struct SaConfig {
  std::size_t sweeps = 1000;
  double beta_initial = 0.1;
  double beta_final = 1.0;  // temperature lives in the Ising coefficients

  void validate() const;  // throws std::invalid_argument
};

// beta_initial chosen so the opening sweeps are hot relative to coefficients
// already divided by T; target beta stays 1.
SaConfig default_sa_config(Temperature t);

// Independent single-spin-flip Metropolis anneals from uniform random spins,
// geometric beta schedule over `sweeps` full sweeps, sequential site order.
// Returned spins are the final states.
SpinBatch sa_sample(const IsingModel& ising, const SaConfig& config,
                    std::size_t chain_count, std::uint64_t seed);

namespace reference {
SpinBatch sa_sample(const IsingModel& ising, const SaConfig& config,
                    std::size_t chain_count, std::uint64_t seed);
}

// Splits chains into R contiguous groups, anneals each under its own random
// gauge, and pools the ungauged results.
SpinBatch spin_reversal_ensemble(const IsingModel& ising, const SaConfig& config,
                                 std::size_t chain_count, std::size_t r,
                                 std::uint64_t seed);

// Exact i.i.d. draws from the model's Boltzmann distribution at temperature
// T, marginalized to the visible units. Requires n <= 20.
StateBatch exact_boltzmann_init(const RbmParams& params, Temperature t,
                                std::size_t chain_count, std::uint64_t seed);

// v_i = (s_i + 1) / 2 for the first n spins of each chain.
StateBatch spins_to_visible(const SpinBatch& spins, std::size_t n);

// Each output chain is an independent uniform pick from the pooled rows of
// a and b.
StateBatch hybrid_mix(const StateBatch& a, const StateBatch& b,
                      std::size_t chain_count, std::uint64_t seed);

}  // namespace rbmlab
