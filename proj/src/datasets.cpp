#include "rbmlab/datasets.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rbmlab/rng.hpp"

namespace rbmlab {

bool PositiveSet::contains(std::span<const std::uint8_t> bits) const {
  return find(bits) != npos;
}

std::size_t PositiveSet::find(std::span<const std::uint8_t> bits) const {
  if (bits.size() != dim) return npos;
  const auto it = index.find(pack_bits(bits));
  return it == index.end() ? npos : it->second;
}

namespace {

void add_member(PositiveSet& set, std::vector<std::uint8_t> member) {
  const std::string key = pack_bits(member);
  if (set.index.emplace(key, set.members.size()).second) {
    set.members.push_back(std::move(member));
  }
}

}  // namespace

PositiveSet bas_positives(std::size_t n) {
  if (n < 1 || n > 16) throw std::invalid_argument("image side must be in [1, 16]");
  PositiveSet set;
  set.name = "bas";
  set.dim = n * n;
  // row-constant images first, then column-constant; the two all-equal
  // images appear once
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::uint8_t> img(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint8_t bit = (mask >> r) & 1;
      for (std::size_t c = 0; c < n; ++c) img[r * n + c] = bit;
    }
    add_member(set, std::move(img));
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::uint8_t> img(n * n);
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint8_t bit = (mask >> c) & 1;
      for (std::size_t r = 0; r < n; ++r) img[r * n + c] = bit;
    }
    add_member(set, std::move(img));
  }
  return set;
}

bool bas_is_positive(std::span<const std::uint8_t> image, std::size_t n) {
  if (image.size() != n * n) return false;
  bool rows_ok = true;
  for (std::size_t r = 0; r < n && rows_ok; ++r) {
    for (std::size_t c = 1; c < n; ++c) {
      if (image[r * n + c] != image[r * n]) {
        rows_ok = false;
        break;
      }
    }
  }
  if (rows_ok) return true;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 1; r < n; ++r) {
      if (image[r * n + c] != image[c]) return false;
    }
  }
  return true;
}

int bas_edit_distance(std::span<const std::uint8_t> image, std::size_t n) {
  if (image.size() != n * n) throw std::invalid_argument("image size is not n*n");
  // repairing to the nearest row-constant image fixes each row to its
  // majority value independently; columns symmetrically
  int row_cost = 0;
  for (std::size_t r = 0; r < n; ++r) {
    int ones = 0;
    for (std::size_t c = 0; c < n; ++c) ones += image[r * n + c];
    row_cost += std::min(ones, static_cast<int>(n) - ones);
  }
  int col_cost = 0;
  for (std::size_t c = 0; c < n; ++c) {
    int ones = 0;
    for (std::size_t r = 0; r < n; ++r) ones += image[r * n + c];
    col_cost += std::min(ones, static_cast<int>(n) - ones);
  }
  return std::min(row_cost, col_cost);
}

namespace {

// control bit 0 = shift left, 1 = no shift, 2 = shift right; shifts are
// cyclic over the n original bits
std::size_t shift_pattern(std::size_t o, std::size_t n, std::size_t control) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t src;
    if (control == 0) {
      src = (i + 1) % n;
    } else if (control == 1) {
      src = i;
    } else {
      src = (i + n - 1) % n;
    }
    out |= ((o >> src) & 1) << i;
  }
  return out;
}

}  // namespace

PositiveSet shifter_positives(std::size_t n) {
  if (n < 1 || n > 12) throw std::invalid_argument("pattern width must be in [1, 12]");
  PositiveSet set;
  set.name = "shifter";
  set.dim = 2 * n + 3;
  for (std::size_t control = 0; control < 3; ++control) {
    for (std::size_t o = 0; o < (std::size_t{1} << n); ++o) {
      std::vector<std::uint8_t> bits(set.dim, 0);
      bits[control] = 1;
      for (std::size_t i = 0; i < n; ++i) bits[3 + i] = (o >> i) & 1;
      const std::size_t shifted = shift_pattern(o, n, control);
      for (std::size_t i = 0; i < n; ++i) bits[3 + n + i] = (shifted >> i) & 1;
      add_member(set, std::move(bits));
    }
  }
  return set;
}

bool shifter_is_positive(std::span<const std::uint8_t> bits, std::size_t n) {
  if (bits.size() != 2 * n + 3) return false;
  const int control_sum = bits[0] + bits[1] + bits[2];
  if (control_sum != 1) return false;
  const std::size_t control = bits[0] ? 0 : (bits[1] ? 1 : 2);
  std::size_t o = 0;
  for (std::size_t i = 0; i < n; ++i) o |= static_cast<std::size_t>(bits[3 + i]) << i;
  const std::size_t expect = shift_pattern(o, n, control);
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[3 + n + i] != ((expect >> i) & 1)) return false;
  }
  return true;
}

int shifter_edit_distance(std::span<const std::uint8_t> bits, std::size_t n) {
  const std::size_t dim = 2 * n + 3;
  if (bits.size() != dim) throw std::invalid_argument("string width is not 2n+3");
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    word |= static_cast<std::uint64_t>(bits[i]) << i;
  }
  int best = static_cast<int>(dim);
  for (std::size_t control = 0; control < 3; ++control) {
    const std::uint64_t control_word = std::uint64_t{1} << control;
    for (std::size_t o = 0; o < (std::size_t{1} << n); ++o) {
      const std::uint64_t member = control_word |
                                   (static_cast<std::uint64_t>(o) << 3) |
                                   (static_cast<std::uint64_t>(shift_pattern(o, n, control))
                                    << (3 + n));
      const int d = std::popcount(word ^ member);
      if (d < best) best = d;
    }
  }
  return best;
}

StateBatch sample_training_set(const PositiveSet& set, std::size_t count,
                               std::uint64_t seed) {
  if (count > set.members.size()) {
    throw std::invalid_argument("requested more training examples than the set holds");
  }
  std::vector<std::size_t> ids(set.members.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  Rng rng(seed);
  StateBatch out(count, set.dim);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t j = t + rng.next_below(ids.size() - t);
    std::swap(ids[t], ids[j]);
    const auto& member = set.members[ids[t]];
    std::copy(member.begin(), member.end(), out.row(t).begin());
  }
  return out;
}

}  // namespace rbmlab
