#pragma once

#include <cstdint>
#include <string>

#include "rbmlab/rbm.hpp"

namespace rbmlab {

// Model checkpoint: a textual header line
//   rbm <n> <m> <kind> <seed> <epoch>
// followed by the visible biases, hidden biases, and row-major weights as
// whitespace-separated decimals round-tripping doubles exactly.
struct Checkpoint {
  RbmParams params;
  std::string kind;  // "cd1", "naive", or "none"
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
};

void save_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::string& path);  // throws std::runtime_error

}  // namespace rbmlab
