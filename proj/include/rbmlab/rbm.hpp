#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "rbmlab/state.hpp"

namespace rbmlab {

// Sampling temperature; beta = 1/T.
struct Temperature {
  double value = 1.0;
  explicit Temperature(double t);
  double beta() const { return 1.0 / value; }
};

// Restricted Boltzmann machine parameters: visible biases a (length n),
// hidden biases b (length m), weights w (n x m, row-major).
// E(v, h) = -sum_i a_i v_i - sum_j b_j h_j - sum_ij w_ij v_i h_j.
struct RbmParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> a;  // n
  std::vector<double> b;  // m
  std::vector<double> w;  // n*m, w[i*m + j]

  RbmParams() = default;
  RbmParams(std::size_t n_, std::size_t m_)
      : n(n_), m(m_), a(n_, 0.0), b(m_, 0.0), w(n_ * m_, 0.0) {}

  double weight(std::size_t i, std::size_t j) const { return w[i * m + j]; }
  double& weight(std::size_t i, std::size_t j) { return w[i * m + j]; }

  // Throws std::invalid_argument on inconsistent dimensions or non-finite
  // entries.
  void validate() const;
};

// Numerically stable logistic; saturates to 0/1 in double precision for
// |x| beyond ~37 without touching the parameters.
inline double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double energy(const RbmParams& params, std::span<const std::uint8_t> v,
              std::span<const std::uint8_t> h);

// p(h_j = 1 | v) = logistic(b_j + sum_i w_ij v_i)
std::vector<double> hidden_probs(const RbmParams& params, std::span<const std::uint8_t> v);
// p(v_i = 1 | h) = logistic(a_i + sum_j w_ij h_j)
std::vector<double> visible_probs(const RbmParams& params, std::span<const std::uint8_t> h);

void hidden_probs_into(const RbmParams& params, std::span<const std::uint8_t> v,
                       std::span<double> out);
void visible_probs_into(const RbmParams& params, std::span<const std::uint8_t> h,
                        std::span<double> out);

// Batch kernels, parallel over chains. The stream for chain c of a call
// with (seed, update_index) is derive_seed(seed, c, update_index); a full
// Gibbs update draws the m hidden bits first, then the n visible bits,
// from that one stream.
StateBatch sample_hidden(const RbmParams& params, const StateBatch& v_batch,
                         std::uint64_t seed, std::uint64_t update_index = 0);
StateBatch sample_visible(const RbmParams& params, const StateBatch& h_batch,
                          std::uint64_t seed, std::uint64_t update_index = 0);
StateBatch gibbs_update(const RbmParams& params, const StateBatch& v_batch,
                        std::uint64_t seed, std::uint64_t update_index);

// Serial reference implementations of the same contracts, written as plain
// per-unit loops over the public conditional-probability API. The parallel
// kernels must match these bit for bit.
namespace reference {
StateBatch sample_hidden(const RbmParams& params, const StateBatch& v_batch,
                         std::uint64_t seed, std::uint64_t update_index = 0);
StateBatch sample_visible(const RbmParams& params, const StateBatch& h_batch,
                          std::uint64_t seed, std::uint64_t update_index = 0);
StateBatch gibbs_update(const RbmParams& params, const StateBatch& v_batch,
                        std::uint64_t seed, std::uint64_t update_index);
}  // namespace reference

// Returns (a/T, b/T, w/T): Boltzmann weights exp(-E/T) of the input equal
// exp(-E') of the result.
RbmParams scale_temperature(const RbmParams& params, Temperature t);

}  // namespace rbmlab
