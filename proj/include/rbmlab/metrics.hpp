#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rbmlab/datasets.hpp"
#include "rbmlab/state.hpp"

namespace rbmlab {

using DistanceFn = std::function<int(std::span<const std::uint8_t>)>;

// One pass over a sample batch against a positive set: per-member counts,
// the positive mass, and the summed edit distance of the negatives.
struct SampleTally {
  std::vector<std::uint64_t> member_counts;  // |X| entries
  std::uint64_t positive_count = 0;          // with multiplicity
  std::uint64_t total = 0;                   // |G|
  std::uint64_t negative_distance_sum = 0;
};

// `dist` is only invoked on rows that are not members; pass nullptr when no
// med value is needed (negative_distance_sum then stays 0).
SampleTally tally_samples(const StateBatch& g, const PositiveSet& x,
                          const DistanceFn& dist);

namespace reference {
SampleTally tally_samples(const StateBatch& g, const PositiveSet& x,
                          const DistanceFn& dist);
}

// Fraction of samples, counted with multiplicity, that are members of X.
double precision(const SampleTally& t);
double precision(const StateBatch& g, const PositiveSet& x);

// Fraction of X's members generated at least once.
double recall(const SampleTally& t, const PositiveSet& x);
double recall(const StateBatch& g, const PositiveSet& x);

// Positive sample count divided by |X|; equals precision * |G| / |X|.
double pcdd_literal(const SampleTally& t, const PositiveSet& x);
double pcdd_literal(const StateBatch& g, const PositiveSet& x);

// L2 distance between the positives' empirical distribution and uniform:
// sqrt(sum_x (c_x/N - 1/|X|)^2) with N the positive mass. Throws
// std::domain_error when N = 0.
double pcdd_l2(const SampleTally& t, const PositiveSet& x);
double pcdd_l2(const StateBatch& g, const PositiveSet& x);

// Mean edit distance of the negatives, divided by |G| (all samples, not
// just the negatives).
double med(const SampleTally& t);
double med(const StateBatch& g, const PositiveSet& x, const DistanceFn& dist);

// Sum of the k largest per-member counts.
std::uint64_t top_k_concentration(const SampleTally& t, std::size_t k);
std::uint64_t top_k_concentration(const StateBatch& g, const PositiveSet& x,
                                  std::size_t k);

struct MetricsRecord {
  std::uint64_t step = 0;
  double precision = 0.0;
  double recall = 0.0;
  double pcdd_literal = 0.0;
  double pcdd_l2 = 0.0;  // NaN when the batch has no positive samples
  double med = 0.0;
  std::uint64_t top_k = 0;
};

MetricsRecord compute_metrics(std::uint64_t step, const StateBatch& g,
                              const PositiveSet& x, const DistanceFn& dist,
                              std::size_t k = 10);

}  // namespace rbmlab
