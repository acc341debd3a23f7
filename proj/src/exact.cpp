#include "rbmlab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbmlab {

namespace {

double softplus(double x) {
  // log(1 + e^x) without overflow on either side
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// log Z at T=1 by enumerating the smaller layer and summing the other one
// out analytically.
double log_partition_unit(const RbmParams& params) {
  params.validate();
  if (params.n + params.m > 24) {
    throw std::invalid_argument("partition function enumeration limited to n+m <= 24");
  }
  const bool over_hidden = params.m <= params.n;
  const std::size_t outer = over_hidden ? params.m : params.n;
  const std::size_t inner = over_hidden ? params.n : params.m;
  const std::size_t count = std::size_t{1} << outer;

  std::vector<double> terms(count);
  std::vector<double> acc(inner);
  for (std::size_t mask = 0; mask < count; ++mask) {
    double lin = 0.0;
    if (over_hidden) {
      for (std::size_t i = 0; i < inner; ++i) acc[i] = params.a[i];
      for (std::size_t j = 0; j < outer; ++j) {
        if (!(mask >> j & 1)) continue;
        lin += params.b[j];
        for (std::size_t i = 0; i < inner; ++i) acc[i] += params.w[i * params.m + j];
      }
    } else {
      for (std::size_t j = 0; j < inner; ++j) acc[j] = params.b[j];
      for (std::size_t i = 0; i < outer; ++i) {
        if (!(mask >> i & 1)) continue;
        lin += params.a[i];
        const double* row = params.w.data() + i * params.m;
        for (std::size_t j = 0; j < inner; ++j) acc[j] += row[j];
      }
    }
    double t = lin;
    for (std::size_t k = 0; k < inner; ++k) t += softplus(acc[k]);
    terms[mask] = t;
  }

  const double peak = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

}  // namespace

double log_partition_function(const RbmParams& params, Temperature t) {
  return log_partition_unit(scale_temperature(params, t));
}

double exact_partition_function(const RbmParams& params, Temperature t) {
  return std::exp(log_partition_function(params, t));
}

double exact_log_likelihood(const RbmParams& params,
                            const std::vector<std::vector<std::uint8_t>>& data,
                            Temperature t) {
  const RbmParams scaled = scale_temperature(params, t);
  const double log_z = log_partition_unit(scaled);
  double total = 0.0;
  for (const auto& v : data) {
    if (v.size() != scaled.n) {
      throw std::invalid_argument("data vector width does not match the model");
    }
    // log sum_h e^{-E(v,h)} = a.v + sum_j softplus(b_j + (w^T v)_j)
    double lp = 0.0;
    std::vector<double> acc(scaled.b);
    for (std::size_t i = 0; i < scaled.n; ++i) {
      if (!v[i]) continue;
      lp += scaled.a[i];
      const double* row = scaled.w.data() + i * scaled.m;
      for (std::size_t j = 0; j < scaled.m; ++j) acc[j] += row[j];
    }
    for (std::size_t j = 0; j < scaled.m; ++j) lp += softplus(acc[j]);
    total += lp - log_z;
  }
  return total;
}

std::vector<double> exact_boltzmann_table(const RbmParams& params, Temperature t) {
  const RbmParams scaled = scale_temperature(params, t);
  scaled.validate();
  if (scaled.n + scaled.m > 20) {
    throw std::invalid_argument("joint enumeration limited to n+m <= 20");
  }
  const std::size_t n = scaled.n, m = scaled.m;
  const std::size_t states = std::size_t{1} << (n + m);
  std::vector<double> neg_energy(states);

  std::vector<std::uint8_t> v(n), h(m);
  for (std::size_t vmask = 0; vmask < (std::size_t{1} << n); ++vmask) {
    for (std::size_t i = 0; i < n; ++i) v[i] = (vmask >> i) & 1;
    for (std::size_t hmask = 0; hmask < (std::size_t{1} << m); ++hmask) {
      for (std::size_t j = 0; j < m; ++j) h[j] = (hmask >> j) & 1;
      neg_energy[vmask | (hmask << n)] = -energy(scaled, v, h);
    }
  }

  const double peak = *std::max_element(neg_energy.begin(), neg_energy.end());
  double z = 0.0;
  for (double e : neg_energy) z += std::exp(e - peak);
  std::vector<double> table(states);
  for (std::size_t s = 0; s < states; ++s) {
    table[s] = std::exp(neg_energy[s] - peak) / z;
  }
  return table;
}

std::vector<double> exact_visible_marginal(const RbmParams& params, Temperature t) {
  const RbmParams scaled = scale_temperature(params, t);
  scaled.validate();
  if (scaled.n > 20) {
    throw std::invalid_argument("visible enumeration limited to n <= 20");
  }
  const std::size_t n = scaled.n, m = scaled.m;
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> lp(states);
  std::vector<double> acc(m);
  for (std::size_t vmask = 0; vmask < states; ++vmask) {
    double lin = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc[j] = scaled.b[j];
    for (std::size_t i = 0; i < n; ++i) {
      if (!(vmask >> i & 1)) continue;
      lin += scaled.a[i];
      const double* row = scaled.w.data() + i * m;
      for (std::size_t j = 0; j < m; ++j) acc[j] += row[j];
    }
    for (std::size_t j = 0; j < m; ++j) lin += softplus(acc[j]);
    lp[vmask] = lin;
  }
  const double peak = *std::max_element(lp.begin(), lp.end());
  double z = 0.0;
  for (double x : lp) z += std::exp(x - peak);
  std::vector<double> marginal(states);
  for (std::size_t s = 0; s < states; ++s) {
    marginal[s] = std::exp(lp[s] - peak) / z;
  }
  return marginal;
}

}  // namespace rbmlab
