#pragma once

#include <cstdint>
#include <vector>

#include "rbmlab/rbm.hpp"

namespace rbmlab {

// Brute-force quantities for desk-scale models. All enumerate the smaller
// layer analytically where possible; size guards throw std::invalid_argument.

// log Z at temperature T. Requires n + m <= 24.
double log_partition_function(const RbmParams& params, Temperature t = Temperature(1.0));

// Z itself; computed in the log domain, so it only overflows if Z does.
double exact_partition_function(const RbmParams& params, Temperature t = Temperature(1.0));

// Mean is not taken: returns the summed log-likelihood over `data`.
// Requires n + m <= 24.
double exact_log_likelihood(const RbmParams& params,
                            const std::vector<std::vector<std::uint8_t>>& data,
                            Temperature t = Temperature(1.0));

// Full joint distribution p(v, h) at temperature T, indexed by
// sum_i v_i 2^i + sum_j h_j 2^(n+j). Requires n + m <= 20.
std::vector<double> exact_boltzmann_table(const RbmParams& params,
                                          Temperature t = Temperature(1.0));

// Marginal p(v) over all 2^n visible states, indexed by sum_i v_i 2^i, with
// the hidden layer summed out analytically. Requires n <= 20 only, so this
// covers models whose joint table would be out of reach.
std::vector<double> exact_visible_marginal(const RbmParams& params,
                                           Temperature t = Temperature(1.0));

}  // namespace rbmlab
