#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rbmlab/rbm.hpp"
#include "rbmlab/rng.hpp"
#include "rbmlab/state.hpp"

namespace fixture {

// random model with parameters uniform in [-scale, scale]
inline rbmlab::RbmParams random_model(std::size_t n, std::size_t m, std::uint64_t seed,
                                      double scale = 1.0) {
  rbmlab::RbmParams params(n, m);
  rbmlab::Rng rng(seed);
  for (auto& x : params.a) x = scale * (2.0 * rng.next_unit() - 1.0);
  for (auto& x : params.b) x = scale * (2.0 * rng.next_unit() - 1.0);
  for (auto& x : params.w) x = scale * (2.0 * rng.next_unit() - 1.0);
  return params;
}

inline rbmlab::StateBatch random_batch(std::size_t count, std::size_t width, std::uint64_t seed) {
  rbmlab::StateBatch batch(count, width);
  rbmlab::Rng rng(seed);
  for (auto& bit : batch.bits) bit = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  return batch;
}

// fresh scratch directory under the system temp root, removed by the caller
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("rbmlab_" + tag + "_" + std::to_string(++counter));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixture
