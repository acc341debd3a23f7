#include "rbmlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rbmlab {

namespace {

void check_inputs(const StateBatch& g, const PositiveSet& x) {
  if (g.chains == 0) throw std::invalid_argument("metrics need at least one sample");
  if (g.width != x.dim) throw std::invalid_argument("sample width does not match the set");
  if (x.members.empty()) throw std::invalid_argument("positive set is empty");
}

}  // namespace

SampleTally tally_samples(const StateBatch& g, const PositiveSet& x,
                          const DistanceFn& dist) {
  check_inputs(g, x);
  SampleTally out;
  out.member_counts.assign(x.members.size(), 0);
  out.total = g.chains;

#pragma omp parallel
  {
    std::vector<std::uint64_t> counts(x.members.size(), 0);
    std::uint64_t positives = 0, dist_sum = 0;
#pragma omp for schedule(static) nowait
    for (long long c = 0; c < static_cast<long long>(g.chains); ++c) {
      const std::size_t id = x.find(g.row(c));
      if (id != PositiveSet::npos) {
        ++counts[id];
        ++positives;
      } else if (dist) {
        dist_sum += static_cast<std::uint64_t>(dist(g.row(c)));
      }
    }
#pragma omp critical
    {
      for (std::size_t k = 0; k < counts.size(); ++k) out.member_counts[k] += counts[k];
      out.positive_count += positives;
      out.negative_distance_sum += dist_sum;
    }
  }
  return out;
}

namespace reference {

SampleTally tally_samples(const StateBatch& g, const PositiveSet& x,
                          const DistanceFn& dist) {
  check_inputs(g, x);
  SampleTally out;
  out.member_counts.assign(x.members.size(), 0);
  out.total = g.chains;
  for (std::size_t c = 0; c < g.chains; ++c) {
    const std::size_t id = x.find(g.row(c));
    if (id != PositiveSet::npos) {
      ++out.member_counts[id];
      ++out.positive_count;
    } else if (dist) {
      out.negative_distance_sum += static_cast<std::uint64_t>(dist(g.row(c)));
    }
  }
  return out;
}

}  // namespace reference

double precision(const SampleTally& t) {
  return static_cast<double>(t.positive_count) / static_cast<double>(t.total);
}

double precision(const StateBatch& g, const PositiveSet& x) {
  return precision(tally_samples(g, x, nullptr));
}

double recall(const SampleTally& t, const PositiveSet& x) {
  std::size_t seen = 0;
  for (std::uint64_t c : t.member_counts) seen += c > 0;
  return static_cast<double>(seen) / static_cast<double>(x.members.size());
}

double recall(const StateBatch& g, const PositiveSet& x) {
  return recall(tally_samples(g, x, nullptr), x);
}

double pcdd_literal(const SampleTally& t, const PositiveSet& x) {
  return static_cast<double>(t.positive_count) / static_cast<double>(x.members.size());
}

double pcdd_literal(const StateBatch& g, const PositiveSet& x) {
  return pcdd_literal(tally_samples(g, x, nullptr), x);
}

double pcdd_l2(const SampleTally& t, const PositiveSet& x) {
  if (t.positive_count == 0) {
    throw std::domain_error("no positive samples: positive-case distribution undefined");
  }
  const double n_pos = static_cast<double>(t.positive_count);
  const double uniform = 1.0 / static_cast<double>(x.members.size());
  double acc = 0.0;
  for (std::uint64_t c : t.member_counts) {
    const double d = static_cast<double>(c) / n_pos - uniform;
    acc += d * d;
  }
  return std::sqrt(acc);
}

double pcdd_l2(const StateBatch& g, const PositiveSet& x) {
  return pcdd_l2(tally_samples(g, x, nullptr), x);
}

double med(const SampleTally& t) {
  return static_cast<double>(t.negative_distance_sum) / static_cast<double>(t.total);
}

double med(const StateBatch& g, const PositiveSet& x, const DistanceFn& dist) {
  if (!dist) throw std::invalid_argument("mean edit distance needs a distance oracle");
  return med(tally_samples(g, x, dist));
}

std::uint64_t top_k_concentration(const SampleTally& t, std::size_t k) {
  std::vector<std::uint64_t> counts = t.member_counts;
  const std::size_t take = k < counts.size() ? k : counts.size();
  std::partial_sort(counts.begin(), counts.begin() + take, counts.end(),
                    std::greater<std::uint64_t>());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < take; ++i) acc += counts[i];
  return acc;
}

std::uint64_t top_k_concentration(const StateBatch& g, const PositiveSet& x,
                                  std::size_t k) {
  return top_k_concentration(tally_samples(g, x, nullptr), k);
}

MetricsRecord compute_metrics(std::uint64_t step, const StateBatch& g,
                              const PositiveSet& x, const DistanceFn& dist,
                              std::size_t k) {
  const SampleTally t = tally_samples(g, x, dist);
  MetricsRecord rec;
  rec.step = step;
  rec.precision = precision(t);
  rec.recall = recall(t, x);
  rec.pcdd_literal = pcdd_literal(t, x);
  rec.pcdd_l2 = t.positive_count == 0 ? std::numeric_limits<double>::quiet_NaN()
                                      : pcdd_l2(t, x);
  rec.med = med(t);
  rec.top_k = top_k_concentration(t, k);
  return rec;
}

}  // namespace rbmlab
