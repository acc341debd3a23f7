#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rbmlab/state.hpp"

namespace rbmlab {

// Sample files hold one example per line as '0'/'1' characters; lines
// starting with '#' carry "key = value" metadata. Recognized keys include
// device, temperature, spin_reversal_transforms, anneal_time_us, delay_us,
// readout_us; others are preserved verbatim.
struct SampleFile {
  StateBatch batch;
  std::map<std::string, std::string> metadata;
};

// Throws std::runtime_error on malformed lines or ragged widths. If
// expected_width is nonzero, every line must have exactly that width.
SampleFile import_samples(const std::string& path, std::size_t expected_width = 0);

void export_samples(const std::string& path, const StateBatch& batch,
                    const std::map<std::string, std::string>& metadata);

}  // namespace rbmlab
