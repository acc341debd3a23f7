#pragma once

#include <cstdint>
#include <vector>

#include "rbmlab/rbm.hpp"
#include "rbmlab/state.hpp"

namespace rbmlab {

// H(s) = sum_i fields[i] s_i + sum_{i<j} J_ij s_i s_j over spins in {-1,+1}.
struct IsingModel {
  struct Coupling {
    std::uint32_t i;  // i < j always
    std::uint32_t j;
    double value;
  };

  std::size_t spins = 0;
  std::vector<double> fields;
  std::vector<Coupling> couplings;  // sorted by (i, j), keys distinct
  double offset = 0.0;

  void validate() const;  // throws std::invalid_argument
};

// Neighbor lists for single-spin-flip sweeps: for each spin, the (other
// endpoint, J) pairs of its couplings.
struct IsingAdjacency {
  std::vector<std::size_t> start;  // spins + 1 offsets into entries
  struct Entry {
    std::uint32_t other;
    double value;
  };
  std::vector<Entry> entries;
};
IsingAdjacency build_adjacency(const IsingModel& ising);

double ising_energy(const IsingModel& ising, std::span<const std::int8_t> spins);

// Image of the RBM Boltzmann distribution at temperature T under the
// bijection v_i = (s_i+1)/2, h_j = (s_{n+j}+1)/2:
//   H(s) + offset = E(v, h) / T   for every state.
// Couplings only between visible spin i and hidden spin n+j; exact zeros
// in the scaled weights produce no coupling entry.
IsingModel rbm_to_ising(const RbmParams& params, Temperature t);

struct GaugeVector {
  std::vector<std::int8_t> g;  // entries in {-1, +1}
};

GaugeVector random_gauge(std::size_t spins, std::uint64_t seed);

// fields_i -> g_i fields_i, J_ij -> g_i g_j J_ij. Then H_g(g*s) = H(s)
// exactly (sign flips are exact in floating point).
IsingModel apply_gauge(const IsingModel& ising, const GaugeVector& g);
// s_i -> g_i s_i per chain.
SpinBatch ungauge_samples(const SpinBatch& spins, const GaugeVector& g);

struct RangeLimits {
  double h_max = 4.0;
  double j_max = 1.0;
};

// Out-of-range coefficients, reported but never clamped.
struct RangeReport {
  struct Violation {
    bool is_coupling;
    std::uint32_t i;
    std::uint32_t j;  // = i for a field
    double value;
    double limit;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};
RangeReport check_ranges(const IsingModel& ising, const RangeLimits& limits);

}  // namespace rbmlab
