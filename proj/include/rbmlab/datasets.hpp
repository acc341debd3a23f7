#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbmlab/state.hpp"

namespace rbmlab {

// Enumerated positive examples of a dataset, with membership lookup.
struct PositiveSet {
  std::string name;  // "bas" or "shifter"
  std::size_t dim = 0;
  std::vector<std::vector<std::uint8_t>> members;
  std::unordered_map<std::string, std::size_t> index;  // packed bits -> member id

  bool contains(std::span<const std::uint8_t> bits) const;
  // Member id for a bit pattern, or npos.
  std::size_t find(std::span<const std::uint8_t> bits) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// n x n images whose rows are all constant, union those whose columns are.
// 2*2^n - 2 distinct members. Requires 1 <= n <= 16.
PositiveSet bas_positives(std::size_t n);
bool bas_is_positive(std::span<const std::uint8_t> image, std::size_t n);
// min(per-row repair cost, per-column repair cost); each row/column repairs
// to its majority value.
int bas_edit_distance(std::span<const std::uint8_t> image, std::size_t n);

// Strings control ++ original ++ shifted(original) of width 2n+3. Controls
// are one-hot: 100 = cyclic left shift, 010 = no shift, 001 = cyclic right.
// 3*2^n members. Requires 1 <= n <= 12.
PositiveSet shifter_positives(std::size_t n);
bool shifter_is_positive(std::span<const std::uint8_t> bits, std::size_t n);
// Brute-force min Hamming distance to the enumerated members.
int shifter_edit_distance(std::span<const std::uint8_t> bits, std::size_t n);

// Uniform sample of `count` members without replacement.
// Errors if count > |members|.
StateBatch sample_training_set(const PositiveSet& set, std::size_t count,
                               std::uint64_t seed);

}  // namespace rbmlab
