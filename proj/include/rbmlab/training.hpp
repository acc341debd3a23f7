#pragma once

#include <cstdint>
#include <vector>

#include "rbmlab/rbm.hpp"
#include "rbmlab/state.hpp"

namespace rbmlab {

enum class NegativePhaseKind { naive, cd };

struct TrainConfig {
  double learning_rate = 0.05;
  std::size_t epochs = 2000;
  NegativePhaseKind negative_phase_kind = NegativePhaseKind::cd;
  std::size_t gibbs_updates_negative = 1;  // 50 for naive, 1 for CD-1
  std::size_t negative_chain_count = 0;    // 0 means "use batch_size"
  std::size_t batch_size = 512;

  void validate() const;  // throws std::invalid_argument
};

// Gradient expectations. vh_mean[i*m + j] = <v_i h_j>, with h given v taken
// as exact conditional probabilities rather than samples.
struct PhaseStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> vh_mean;  // n*m
  std::vector<double> v_mean;   // n
  std::vector<double> h_mean;   // m
};

// Mean over `data` rows of (v, p(h|v)) outer products. Errors on empty data.
PhaseStats positive_phase(const RbmParams& params, const StateBatch& data);

// Chains start at the data rows, run k full Gibbs updates, then stats are
// taken from the final visible states with hidden probabilities.
PhaseStats negative_phase_cd(const RbmParams& params, const StateBatch& data,
                             std::size_t k, std::uint64_t seed);

// Chains start uniformly at random.
PhaseStats negative_phase_naive(const RbmParams& params, std::size_t chain_count,
                                std::size_t k, std::uint64_t seed);

// Statistics of the exact model distribution; negative phase with the
// enumeration backend. Requires n + m <= 20.
PhaseStats exact_negative_phase(const RbmParams& params);

namespace reference {
PhaseStats positive_phase(const RbmParams& params, const StateBatch& data);
}

// Plain gradient ascent: per batch, params += lr * (positive - negative),
// with a, b driven by the v_mean/h_mean differences. Aborts if any
// parameter magnitude exceeds 1e6.
RbmParams train(RbmParams params, const StateBatch& data, const TrainConfig& config,
                std::uint64_t seed);

}  // namespace rbmlab
