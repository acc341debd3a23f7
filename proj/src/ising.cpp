#include "rbmlab/ising.hpp"

#include <cmath>
#include <stdexcept>

#include "rbmlab/rng.hpp"

namespace rbmlab {

void IsingModel::validate() const {
  if (fields.size() != spins) {
    throw std::invalid_argument("field vector length does not match spin count");
  }
  for (double f : fields) {
    if (!std::isfinite(f)) throw std::invalid_argument("non-finite field");
  }
  const Coupling* prev = nullptr;
  for (const auto& c : couplings) {
    if (c.i >= c.j || c.j >= spins) {
      throw std::invalid_argument("coupling key must satisfy i < j < spin count");
    }
    if (!std::isfinite(c.value)) throw std::invalid_argument("non-finite coupling");
    if (prev && !(prev->i < c.i || (prev->i == c.i && prev->j < c.j))) {
      throw std::invalid_argument("couplings must be sorted with distinct keys");
    }
    prev = &c;
  }
}

IsingAdjacency build_adjacency(const IsingModel& ising) {
  IsingAdjacency adj;
  std::vector<std::size_t> degree(ising.spins, 0);
  for (const auto& c : ising.couplings) {
    ++degree[c.i];
    ++degree[c.j];
  }
  adj.start.assign(ising.spins + 1, 0);
  for (std::size_t k = 0; k < ising.spins; ++k) adj.start[k + 1] = adj.start[k] + degree[k];
  adj.entries.resize(adj.start.back());
  std::vector<std::size_t> cursor(adj.start.begin(), adj.start.end() - 1);
  for (const auto& c : ising.couplings) {
    adj.entries[cursor[c.i]++] = {c.j, c.value};
    adj.entries[cursor[c.j]++] = {c.i, c.value};
  }
  return adj;
}

double ising_energy(const IsingModel& ising, std::span<const std::int8_t> spins) {
  if (spins.size() != ising.spins) {
    throw std::invalid_argument("spin vector length does not match the model");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < ising.spins; ++k) {
    acc += ising.fields[k] * spins[k];
  }
  for (const auto& c : ising.couplings) {
    acc += c.value * spins[c.i] * spins[c.j];
  }
  return acc;
}

IsingModel rbm_to_ising(const RbmParams& params, Temperature t) {
  params.validate();
  const RbmParams p = scale_temperature(params, t);
  const std::size_t n = p.n, m = p.m;

  // v_i = (s_i+1)/2, h_j = (s_{n+j}+1)/2 expands -a.v - b.h - v^T w h into
  // fields, couplings, and a constant; each weight contributes w/4 to its
  // coupling, both endpoint fields, and the offset.
  IsingModel ising;
  ising.spins = n + m;
  ising.fields.assign(n + m, 0.0);
  double offset = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    ising.fields[i] = -p.a[i] / 2.0;
    offset += -p.a[i] / 2.0;
  }
  for (std::size_t j = 0; j < m; ++j) {
    ising.fields[n + j] = -p.b[j] / 2.0;
    offset += -p.b[j] / 2.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double q = -p.w[i * m + j] / 4.0;
      if (q != 0.0) {
        ising.couplings.push_back({static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(n + j), q});
      }
      ising.fields[i] += q;
      ising.fields[n + j] += q;
      offset += q;
    }
  }
  ising.offset = offset;
  return ising;
}

GaugeVector random_gauge(std::size_t spins, std::uint64_t seed) {
  GaugeVector g;
  g.g.resize(spins);
  Rng rng(seed);
  for (auto& s : g.g) s = (rng.next_u64() & 1) ? 1 : -1;
  return g;
}

IsingModel apply_gauge(const IsingModel& ising, const GaugeVector& g) {
  if (g.g.size() != ising.spins) {
    throw std::invalid_argument("gauge length does not match spin count");
  }
  IsingModel out = ising;
  for (std::size_t k = 0; k < out.spins; ++k) out.fields[k] *= g.g[k];
  for (auto& c : out.couplings) c.value *= g.g[c.i] * g.g[c.j];
  return out;
}

SpinBatch ungauge_samples(const SpinBatch& spins, const GaugeVector& g) {
  if (g.g.size() != spins.width) {
    throw std::invalid_argument("gauge length does not match sample width");
  }
  SpinBatch out = spins;
  for (std::size_t c = 0; c < out.chains; ++c) {
    auto row = out.row(c);
    for (std::size_t k = 0; k < out.width; ++k) row[k] *= g.g[k];
  }
  return out;
}

RangeReport check_ranges(const IsingModel& ising, const RangeLimits& limits) {
  RangeReport report;
  for (std::size_t k = 0; k < ising.spins; ++k) {
    if (std::abs(ising.fields[k]) > limits.h_max) {
      report.violations.push_back({false, static_cast<std::uint32_t>(k),
                                   static_cast<std::uint32_t>(k), ising.fields[k],
                                   limits.h_max});
    }
  }
  for (const auto& c : ising.couplings) {
    if (std::abs(c.value) > limits.j_max) {
      report.violations.push_back({true, c.i, c.j, c.value, limits.j_max});
    }
  }
  return report;
}

}  // namespace rbmlab
