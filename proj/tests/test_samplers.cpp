#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "rbmlab/exact.hpp"
#include "rbmlab/ising.hpp"
#include "rbmlab/rng.hpp"
#include "rbmlab/samplers.hpp"

using namespace rbmlab;

namespace {

// empirical distribution of full spin states, index bit k set iff s_k = +1
std::vector<double> spin_histogram(const SpinBatch& batch) {
  std::vector<double> hist(std::size_t{1} << batch.width, 0.0);
  for (std::size_t c = 0; c < batch.chains; ++c) {
    std::size_t mask = 0;
    for (std::size_t k = 0; k < batch.width; ++k)
      if (batch.at(c, k) > 0) mask |= std::size_t{1} << k;
    hist[mask] += 1.0;
  }
  for (auto& x : hist) x /= static_cast<double>(batch.chains);
  return hist;
}

std::vector<double> visible_histogram(const StateBatch& batch) {
  std::vector<double> hist(std::size_t{1} << batch.width, 0.0);
  for (std::size_t c = 0; c < batch.chains; ++c) {
    std::size_t mask = 0;
    for (std::size_t k = 0; k < batch.width; ++k)
      if (batch.at(c, k)) mask |= std::size_t{1} << k;
    hist[mask] += 1.0;
  }
  for (auto& x : hist) x /= static_cast<double>(batch.chains);
  return hist;
}

}  // namespace

TEST_CASE("uniform init draws reproducible fair coins") {
  const auto a = uniform_init(20000, 8, 5);
  const auto b = uniform_init(20000, 8, 5);
  CHECK(a.bits == b.bits);
  CHECK(uniform_init(20000, 8, 6).bits != a.bits);
  for (std::size_t i = 0; i < 8; ++i) {
    double mean = 0.0;
    for (std::size_t c = 0; c < a.chains; ++c) mean += a.at(c, i);
    mean /= static_cast<double>(a.chains);
    CHECK(std::abs(mean - 0.5) < 0.02);
  }
  CHECK_THROWS_AS(uniform_init(0, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_init(8, 0, 1), std::invalid_argument);
}

TEST_CASE("annealing config validation and defaults") {
  SaConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.sweeps = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SaConfig{};
  cfg.beta_initial = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SaConfig{};
  cfg.beta_initial = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  const auto at1 = default_sa_config(Temperature(1.0));
  CHECK(at1.sweeps == 1000);
  CHECK(at1.beta_initial == 0.1);
  CHECK(at1.beta_final == 1.0);
  CHECK(default_sa_config(Temperature(8.0)).beta_initial == doctest::Approx(0.0125));
  CHECK(default_sa_config(Temperature(0.05)).beta_initial == 1.0);
}

TEST_CASE("annealed sampling is reproducible and thread-count invariant") {
  auto p = fixture::random_model(4, 3, 6000, 1.0);
  const auto ising = rbm_to_ising(p, Temperature(1.0));
  SaConfig cfg;
  cfg.sweeps = 50;
  const auto want = reference::sa_sample(ising, cfg, 101, 9);
  for (int t : {1, 3, 4}) {
    omp_set_num_threads(t);
    CHECK(sa_sample(ising, cfg, 101, 9).spins == want.spins);
  }
  omp_set_num_threads(omp_get_num_procs());
  CHECK(sa_sample(ising, cfg, 101, 10).spins != want.spins);
  for (auto s : want.spins) CHECK((s == 1 || s == -1));
}

TEST_CASE("annealed samples approach the boltzmann distribution") {
  auto p = fixture::random_model(3, 2, 6100, 1.0);
  const auto ising = rbm_to_ising(p, Temperature(1.0));
  SaConfig cfg;
  cfg.sweeps = 200;
  const auto spins = sa_sample(ising, cfg, 20000, 11);
  const auto got = spin_histogram(spins);
  const auto want = exact_boltzmann_table(p, Temperature(1.0));
  CHECK(oracle::tv_distance(got, want) < 0.08);
}

TEST_CASE("the gauge ensemble pools per-group annealed chains in order") {
  auto p = fixture::random_model(4, 3, 6200, 1.2);
  const auto ising = rbm_to_ising(p, Temperature(2.0));
  SaConfig cfg;
  cfg.sweeps = 30;
  const std::size_t chains = 10, r = 3;
  const std::uint64_t seed = 77;
  const auto got = spin_reversal_ensemble(ising, cfg, chains, r, seed);
  REQUIRE(got.chains == chains);

  std::size_t offset = 0;
  for (std::size_t g = 0; g < r; ++g) {
    const std::size_t count = chains / r + (g < chains % r ? 1 : 0);
    const auto gauge = random_gauge(ising.spins, derive_seed(seed, stream::gauge, g));
    const auto raw = sa_sample(apply_gauge(ising, gauge), cfg, count,
                               derive_seed(seed, stream::sa_chains, g));
    const auto fixed = ungauge_samples(raw, gauge);
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t k = 0; k < ising.spins; ++k)
        CHECK(got.at(offset + c, k) == fixed.at(c, k));
    offset += count;
  }
  CHECK(offset == chains);
}

TEST_CASE("gauge count barely moves the sampled energy statistics") {
  auto p = fixture::random_model(3, 2, 6300, 1.0);
  const auto ising = rbm_to_ising(p, Temperature(1.0));
  SaConfig cfg;
  cfg.sweeps = 200;
  const auto one = spin_reversal_ensemble(ising, cfg, 20000, 1, 13);
  const auto ten = spin_reversal_ensemble(ising, cfg, 20000, 10, 13);
  const auto mean_energy = [&](const SpinBatch& batch) {
    double acc = 0.0;
    for (std::size_t c = 0; c < batch.chains; ++c)
      acc += ising_energy(ising, batch.row(c));
    return acc / static_cast<double>(batch.chains);
  };
  CHECK(std::abs(mean_energy(one) - mean_energy(ten)) < 0.1);

  const auto got = spin_histogram(ten);
  const auto want = exact_boltzmann_table(p, Temperature(1.0));
  CHECK(oracle::tv_distance(got, want) < 0.08);
}

TEST_CASE("exact initialization draws the visible marginal") {
  auto p = fixture::random_model(3, 2, 6400, 1.5);
  const auto batch = exact_boltzmann_init(p, Temperature(2.0), 50000, 15);
  CHECK(batch.chains == 50000);
  CHECK(batch.width == 3);
  const auto got = visible_histogram(batch);
  const auto want = exact_visible_marginal(p, Temperature(2.0));
  CHECK(oracle::tv_distance(got, want) < 0.02);
}

TEST_CASE("exact initialization commutes with temperature folding, bitwise") {
  auto p = fixture::random_model(4, 3, 6500, 1.5);
  const auto direct = exact_boltzmann_init(p, Temperature(4.0), 500, 17);
  const auto folded =
      exact_boltzmann_init(scale_temperature(p, Temperature(4.0)), Temperature(1.0), 500, 17);
  CHECK(direct.bits == folded.bits);
}

TEST_CASE("spin projections keep the visible prefix") {
  SpinBatch spins(3, 5);
  const std::int8_t rows[3][5] = {
      {1, -1, 1, -1, 1}, {-1, -1, -1, 1, 1}, {1, 1, 1, -1, -1}};
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < 5; ++k) spins.at(c, k) = rows[c][k];
  const auto v = spins_to_visible(spins, 3);
  CHECK(v.chains == 3);
  CHECK(v.width == 3);
  const std::uint8_t want[3][3] = {{1, 0, 1}, {0, 0, 0}, {1, 1, 1}};
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < 3; ++k) CHECK(v.at(c, k) == want[c][k]);
  CHECK_THROWS_AS(spins_to_visible(spins, 6), std::invalid_argument);
}

TEST_CASE("hybrid mixing picks whole rows uniformly from both pools") {
  StateBatch zeros(30, 4), ones(10, 4);
  for (auto& bit : ones.bits) bit = 1;
  const auto mix = hybrid_mix(zeros, ones, 20000, 19);
  CHECK(mix.chains == 20000);
  std::size_t from_ones = 0;
  for (std::size_t c = 0; c < mix.chains; ++c) {
    const auto row = mix.row(c);
    const bool all0 = std::all_of(row.begin(), row.end(), [](auto b) { return b == 0; });
    const bool all1 = std::all_of(row.begin(), row.end(), [](auto b) { return b == 1; });
    CHECK((all0 || all1));
    if (all1) ++from_ones;
  }
  const double frac = static_cast<double>(from_ones) / 20000.0;
  CHECK(std::abs(frac - 0.25) < 0.02);

  CHECK(hybrid_mix(zeros, ones, 100, 19).bits == hybrid_mix(zeros, ones, 100, 19).bits);
  StateBatch wrong(5, 3);
  CHECK_THROWS_AS(hybrid_mix(zeros, wrong, 10, 1), std::invalid_argument);
}
