#include "rbmlab/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "rbmlab/rng.hpp"

namespace rbmlab {

std::string pack_bits(std::span<const std::uint8_t> bits) {
  std::string out((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      out[i / 8] |= static_cast<char>(1u << (i % 8));
    }
  }
  return out;
}

std::size_t words_for(std::size_t width) { return (width + 63) / 64; }

void pack_words(std::span<const std::uint8_t> bits, std::span<std::uint64_t> out) {
  for (auto& w : out) w = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      out[i / 64] |= 1ULL << (i % 64);
    }
  }
}

int hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  int d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d += std::popcount(a[k] ^ b[k]);
  }
  return d;
}

void validate_binary(const StateBatch& batch) {
  if (batch.bits.size() != batch.chains * batch.width) {
    throw std::invalid_argument("state batch storage does not match its dimensions");
  }
  for (std::uint8_t v : batch.bits) {
    if (v > 1) {
      throw std::invalid_argument("state batch entry is not 0/1");
    }
  }
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double r = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * r;
  has_spare_ = true;
  return u * r;
}

}  // namespace rbmlab
