#include "rbmlab/rbm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rbmlab/rng.hpp"

namespace rbmlab {

Temperature::Temperature(double t) : value(t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("temperature must be a positive finite real");
  }
}

void RbmParams::validate() const {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("model needs at least one visible and one hidden unit");
  }
  if (a.size() != n || b.size() != m || w.size() != n * m) {
    throw std::invalid_argument("parameter storage does not match model dimensions");
  }
  for (double x : a) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite visible bias");
  }
  for (double x : b) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite hidden bias");
  }
  for (double x : w) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite weight");
  }
}

double energy(const RbmParams& params, std::span<const std::uint8_t> v,
              std::span<const std::uint8_t> h) {
  if (v.size() != params.n || h.size() != params.m) {
    throw std::invalid_argument("state dimensions do not match the model");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < params.n; ++i) {
    if (v[i]) acc += params.a[i];
  }
  for (std::size_t j = 0; j < params.m; ++j) {
    if (h[j]) acc += params.b[j];
  }
  for (std::size_t i = 0; i < params.n; ++i) {
    if (!v[i]) continue;
    const double* row = params.w.data() + i * params.m;
    for (std::size_t j = 0; j < params.m; ++j) {
      if (h[j]) acc += row[j];
    }
  }
  return -acc;
}

void hidden_probs_into(const RbmParams& params, std::span<const std::uint8_t> v,
                       std::span<double> out) {
  for (std::size_t j = 0; j < params.m; ++j) out[j] = params.b[j];
  for (std::size_t i = 0; i < params.n; ++i) {
    if (!v[i]) continue;
    const double* row = params.w.data() + i * params.m;
    for (std::size_t j = 0; j < params.m; ++j) out[j] += row[j];
  }
  for (std::size_t j = 0; j < params.m; ++j) out[j] = logistic(out[j]);
}

void visible_probs_into(const RbmParams& params, std::span<const std::uint8_t> h,
                        std::span<double> out) {
  for (std::size_t i = 0; i < params.n; ++i) {
    double acc = params.a[i];
    const double* row = params.w.data() + i * params.m;
    for (std::size_t j = 0; j < params.m; ++j) {
      if (h[j]) acc += row[j];
    }
    out[i] = logistic(acc);
  }
}

std::vector<double> hidden_probs(const RbmParams& params, std::span<const std::uint8_t> v) {
  if (v.size() != params.n) {
    throw std::invalid_argument("visible state dimension does not match the model");
  }
  std::vector<double> out(params.m);
  hidden_probs_into(params, v, out);
  return out;
}

std::vector<double> visible_probs(const RbmParams& params, std::span<const std::uint8_t> h) {
  if (h.size() != params.m) {
    throw std::invalid_argument("hidden state dimension does not match the model");
  }
  std::vector<double> out(params.n);
  visible_probs_into(params, h, out);
  return out;
}

namespace {

void check_batch_width(const StateBatch& batch, std::size_t width, const char* what) {
  if (batch.width != width) {
    throw std::invalid_argument(std::string(what) + " batch width does not match the model");
  }
}

}  // namespace

StateBatch sample_hidden(const RbmParams& params, const StateBatch& v_batch,
                         std::uint64_t seed, std::uint64_t update_index) {
  check_batch_width(v_batch, params.n, "visible");
  StateBatch out(v_batch.chains, params.m);
#pragma omp parallel
  {
    std::vector<double> p(params.m);
#pragma omp for schedule(static)
    for (long long c = 0; c < static_cast<long long>(v_batch.chains); ++c) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c), update_index));
      hidden_probs_into(params, v_batch.row(c), p);
      auto h = out.row(c);
      for (std::size_t j = 0; j < params.m; ++j) h[j] = rng.bernoulli(p[j]) ? 1 : 0;
    }
  }
  return out;
}

StateBatch sample_visible(const RbmParams& params, const StateBatch& h_batch,
                          std::uint64_t seed, std::uint64_t update_index) {
  check_batch_width(h_batch, params.m, "hidden");
  StateBatch out(h_batch.chains, params.n);
#pragma omp parallel
  {
    std::vector<double> p(params.n);
#pragma omp for schedule(static)
    for (long long c = 0; c < static_cast<long long>(h_batch.chains); ++c) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c), update_index));
      visible_probs_into(params, h_batch.row(c), p);
      auto v = out.row(c);
      for (std::size_t i = 0; i < params.n; ++i) v[i] = rng.bernoulli(p[i]) ? 1 : 0;
    }
  }
  return out;
}

StateBatch gibbs_update(const RbmParams& params, const StateBatch& v_batch,
                        std::uint64_t seed, std::uint64_t update_index) {
  check_batch_width(v_batch, params.n, "visible");
  StateBatch out(v_batch.chains, params.n);
#pragma omp parallel
  {
    std::vector<double> p(params.m > params.n ? params.m : params.n);
    std::vector<std::uint8_t> h(params.m);
#pragma omp for schedule(static)
    for (long long c = 0; c < static_cast<long long>(v_batch.chains); ++c) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c), update_index));
      hidden_probs_into(params, v_batch.row(c), {p.data(), params.m});
      for (std::size_t j = 0; j < params.m; ++j) h[j] = rng.bernoulli(p[j]) ? 1 : 0;
      visible_probs_into(params, h, {p.data(), params.n});
      auto v = out.row(c);
      for (std::size_t i = 0; i < params.n; ++i) v[i] = rng.bernoulli(p[i]) ? 1 : 0;
    }
  }
  return out;
}

namespace reference {

StateBatch sample_hidden(const RbmParams& params, const StateBatch& v_batch,
                         std::uint64_t seed, std::uint64_t update_index) {
  check_batch_width(v_batch, params.n, "visible");
  StateBatch out(v_batch.chains, params.m);
  for (std::size_t c = 0; c < v_batch.chains; ++c) {
    Rng rng(derive_seed(seed, c, update_index));
    const auto p = hidden_probs(params, v_batch.row(c));
    for (std::size_t j = 0; j < params.m; ++j) out.at(c, j) = rng.bernoulli(p[j]) ? 1 : 0;
  }
  return out;
}

StateBatch sample_visible(const RbmParams& params, const StateBatch& h_batch,
                          std::uint64_t seed, std::uint64_t update_index) {
  check_batch_width(h_batch, params.m, "hidden");
  StateBatch out(h_batch.chains, params.n);
  for (std::size_t c = 0; c < h_batch.chains; ++c) {
    Rng rng(derive_seed(seed, c, update_index));
    const auto p = visible_probs(params, h_batch.row(c));
    for (std::size_t i = 0; i < params.n; ++i) out.at(c, i) = rng.bernoulli(p[i]) ? 1 : 0;
  }
  return out;
}

StateBatch gibbs_update(const RbmParams& params, const StateBatch& v_batch,
                        std::uint64_t seed, std::uint64_t update_index) {
  check_batch_width(v_batch, params.n, "visible");
  StateBatch out(v_batch.chains, params.n);
  std::vector<std::uint8_t> h(params.m);
  for (std::size_t c = 0; c < v_batch.chains; ++c) {
    Rng rng(derive_seed(seed, c, update_index));
    const auto ph = hidden_probs(params, v_batch.row(c));
    for (std::size_t j = 0; j < params.m; ++j) h[j] = rng.bernoulli(ph[j]) ? 1 : 0;
    const auto pv = visible_probs(params, h);
    for (std::size_t i = 0; i < params.n; ++i) out.at(c, i) = rng.bernoulli(pv[i]) ? 1 : 0;
  }
  return out;
}

}  // namespace reference

RbmParams scale_temperature(const RbmParams& params, Temperature t) {
  RbmParams out = params;
  for (double& x : out.a) x /= t.value;
  for (double& x : out.b) x /= t.value;
  for (double& x : out.w) x /= t.value;
  return out;
}

}  // namespace rbmlab
