#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rbmlab {

// A batch of independent binary chain states, row-major: one row per chain,
// entries are exactly 0 or 1.
struct StateBatch {
  std::size_t chains = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> bits;  // chains * width

  StateBatch() = default;
  StateBatch(std::size_t chains_, std::size_t width_)
      : chains(chains_), width(width_), bits(chains_ * width_, 0) {}

  std::span<std::uint8_t> row(std::size_t c) {
    return {bits.data() + c * width, width};
  }
  std::span<const std::uint8_t> row(std::size_t c) const {
    return {bits.data() + c * width, width};
  }
  std::uint8_t at(std::size_t c, std::size_t i) const { return bits[c * width + i]; }
  std::uint8_t& at(std::size_t c, std::size_t i) { return bits[c * width + i]; }
};

// Spin-valued counterpart with entries in {-1, +1}.
struct SpinBatch {
  std::size_t chains = 0;
  std::size_t width = 0;
  std::vector<std::int8_t> spins;  // chains * width

  SpinBatch() = default;
  SpinBatch(std::size_t chains_, std::size_t width_)
      : chains(chains_), width(width_), spins(chains_ * width_, -1) {}

  std::span<std::int8_t> row(std::size_t c) {
    return {spins.data() + c * width, width};
  }
  std::span<const std::int8_t> row(std::size_t c) const {
    return {spins.data() + c * width, width};
  }
  std::int8_t at(std::size_t c, std::size_t i) const { return spins[c * width + i]; }
  std::int8_t& at(std::size_t c, std::size_t i) { return spins[c * width + i]; }
};

// Packs a 0/1 row into bytes, LSB first; used as a hash key for exact
// pattern lookup and counting.
std::string pack_bits(std::span<const std::uint8_t> bits);

// Packs into 64-bit words for XOR/popcount Hamming scans.
void pack_words(std::span<const std::uint8_t> bits, std::span<std::uint64_t> out);
std::size_t words_for(std::size_t width);

int hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// Throws std::invalid_argument if any entry is not 0/1.
void validate_binary(const StateBatch& batch);

}  // namespace rbmlab
