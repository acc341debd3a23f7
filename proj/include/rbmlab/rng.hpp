#pragma once

#include <cstdint>

namespace rbmlab {

// Counter-style pseudo-random stream built on the splitmix64 update.
// One Rng per (seed, chain, update) key gives every Markov chain its own
// stream, so results cannot depend on how chains are scheduled across
// threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform integer in [0, bound); unbiased (Lemire multiply-shift with
  // rejection). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Standard normal via Box-Muller; avoids implementation-defined
  // std::normal_distribution so trained models are byte-reproducible.
  double next_gaussian();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Decorrelated child seed for the stream identified by (seed, a, b).
// Each salt is mixed through the full 64-bit finalizer before combining,
// so nearby indices land far apart in seed space.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = seed;
  h = detail::mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = detail::mix64(h ^ (b + 0xbf58476d1ce4e5b9ULL));
  return h;
}

// Salt registry for the top-level stream purposes. Every consumer derives
// from a distinct salt so streams never alias across subsystems.
namespace stream {
inline constexpr std::uint64_t replicate = 0x01;
inline constexpr std::uint64_t training_set = 0x02;
inline constexpr std::uint64_t weight_init = 0x03;
inline constexpr std::uint64_t train_negative = 0x04;
inline constexpr std::uint64_t chain_init = 0x05;
inline constexpr std::uint64_t chain_updates = 0x06;
inline constexpr std::uint64_t sa_chains = 0x07;
inline constexpr std::uint64_t gauge = 0x08;
inline constexpr std::uint64_t hybrid_pick = 0x09;
inline constexpr std::uint64_t exact_init = 0x0a;
inline constexpr std::uint64_t classical_half = 0x0b;
inline constexpr std::uint64_t annealer_half = 0x0c;
inline constexpr std::uint64_t import_resample = 0x0d;
}  // namespace stream

}  // namespace rbmlab
