#include "rbmlab/checkpoint.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rbmlab {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
  cp.params.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << "rbm " << cp.params.n << ' ' << cp.params.m << ' ' << cp.kind << ' '
      << cp.seed << ' ' << cp.epoch << '\n';
  for (std::size_t i = 0; i < cp.params.n; ++i) {
    out << format_double(cp.params.a[i]) << (i + 1 < cp.params.n ? ' ' : '\n');
  }
  for (std::size_t j = 0; j < cp.params.m; ++j) {
    out << format_double(cp.params.b[j]) << (j + 1 < cp.params.m ? ' ' : '\n');
  }
  for (std::size_t i = 0; i < cp.params.n; ++i) {
    for (std::size_t j = 0; j < cp.params.m; ++j) {
      out << format_double(cp.params.weight(i, j)) << (j + 1 < cp.params.m ? ' ' : '\n');
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string magic;
  Checkpoint cp;
  std::size_t n = 0, m = 0;
  if (!(in >> magic >> n >> m >> cp.kind >> cp.seed >> cp.epoch) || magic != "rbm") {
    throw std::runtime_error("malformed checkpoint header: " + path);
  }
  if (n < 1 || m < 1 || n > 4096 || m > 4096) {
    throw std::runtime_error("implausible checkpoint dimensions: " + path);
  }
  cp.params = RbmParams(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> cp.params.a[i])) throw std::runtime_error("truncated checkpoint: " + path);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!(in >> cp.params.b[j])) throw std::runtime_error("truncated checkpoint: " + path);
  }
  for (std::size_t c = 0; c < n * m; ++c) {
    if (!(in >> cp.params.w[c])) throw std::runtime_error("truncated checkpoint: " + path);
  }
  cp.params.validate();
  return cp;
}

}  // namespace rbmlab
