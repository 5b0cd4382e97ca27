#include "bellmark/error.hpp"
#include "bellmark/tableau.hpp"

#include "dense.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace bellmark;

namespace {

constexpr Gate1 kGates[] = {Gate1::I,        Gate1::H, Gate1::S, Gate1::SDag, Gate1::SqrtX,
                            Gate1::SqrtXDag, Gate1::X, Gate1::Y, Gate1::Z};

PauliString random_hermitian(std::size_t n, std::mt19937_64& rng) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.set_letter(q, kLetters[rng() & 3U]);
  }
  return (rng() & 1U) ? p.negated() : p;
}

StabilizerTableau plus_state(std::size_t n) {
  StabilizerTableau t(n);
  for (std::size_t q = 0; q < n; ++q) {
    t.apply(Gate1::H, q);
  }
  return t;
}

} // namespace

TEST(Tableau, RandomCliffordCircuitsMatchDenseOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    StabilizerTableau t(n);
    densetest::Vec v = densetest::zero_state(n);
    for (int step = 0; step < 40; ++step) {
      if (n > 1 && rng() % 3 == 0) {
        const std::size_t a = rng() % n;
        std::size_t b = rng() % n;
        if (a == b) {
          b = (b + 1) % n;
        }
        t.apply_cz(a, b);
        densetest::apply_cz(v, a, b);
      } else {
        const Gate1 g = kGates[rng() % 9];
        const std::size_t q = rng() % n;
        t.apply(g, q);
        densetest::apply1(v, g, q);
      }
    }
    ASSERT_TRUE(t.check_invariants());
    for (std::size_t r = 0; r < n; ++r) {
      EXPECT_NEAR(densetest::expectation(v, t.stabilizer(r)), 1.0, 1e-9);
    }
    for (int k = 0; k < 30; ++k) {
      const auto p = random_hermitian(n, rng);
      EXPECT_NEAR(densetest::expectation(v, p), t.expectation(p), 1e-9) << p.str();
    }
  }
}

TEST(Tableau, HadamardsGivePlusState) {
  const auto t = plus_state(4);
  for (std::size_t q = 0; q < 4; ++q) {
    EXPECT_EQ(t.expectation(PauliString::single(4, q, 'X')), 1);
    EXPECT_EQ(t.expectation(PauliString::single(4, q, 'Z')), 0);
  }
}

TEST(Tableau, CzOnEdgesPreparesGraphState) {
  const auto g = ConnectivityGraph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 4}});
  auto t = plus_state(5);
  for (const auto& [a, b] : g.edges()) {
    t.apply_cz(a, b);
  }
  EXPECT_TRUE(is_graph_state(t, g));
  EXPECT_FALSE(is_graph_state(t, ConnectivityGraph::path(5)));
}

TEST(Tableau, CzTwiceIsIdentity) {
  auto t = plus_state(3);
  t.apply_cz(0, 2);
  t.apply_cz(0, 2);
  EXPECT_TRUE(is_graph_state(t, ConnectivityGraph(3)));
}

TEST(Tableau, MeasureStabilizerIsDeterministic) {
  const auto g = ConnectivityGraph::path(4);
  auto t = plus_state(4);
  for (const auto& [a, b] : g.edges()) {
    t.apply_cz(a, b);
  }
  Rng rng(1);
  const auto gens = graph_stabilizers(g);
  for (const auto& s : gens) {
    const auto r = t.measure(s, rng);
    EXPECT_TRUE(r.deterministic);
    EXPECT_EQ(r.outcome, 1);
    const auto neg = t.measure(s.negated(), rng);
    EXPECT_TRUE(neg.deterministic);
    EXPECT_EQ(neg.outcome, -1);
  }
  const auto product = gens[0] * gens[1] * gens[3];
  EXPECT_EQ(t.measure(product, rng).outcome, product.sign() * product.sign());
  EXPECT_TRUE(t.check_invariants());
}

TEST(Tableau, RandomMeasurementIsUnbiasedAndCollapses) {
  Rng rng(99);
  int plus = 0;
  const int shots = 10000;
  for (int s = 0; s < shots; ++s) {
    auto t = plus_state(1);
    const auto r = t.measure_z(0, rng);
    EXPECT_FALSE(r.deterministic);
    plus += r.outcome == 1 ? 1 : 0;
    const auto again = t.measure_z(0, rng);
    EXPECT_TRUE(again.deterministic);
    EXPECT_EQ(again.outcome, r.outcome);
  }
  // 5 sigma binomial band around shots / 2.
  EXPECT_NEAR(plus, shots / 2, 5.0 * std::sqrt(shots / 4.0));
}

TEST(Tableau, MeasurementAgreesWithDenseProbabilities) {
  std::mt19937_64 rng(5);
  Rng mrng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    StabilizerTableau t(n);
    densetest::Vec v = densetest::zero_state(n);
    for (int step = 0; step < 25; ++step) {
      if (rng() % 3 == 0) {
        const std::size_t a = rng() % n;
        const std::size_t b = (a + 1 + rng() % (n - 1)) % n;
        t.apply_cz(a, b);
        densetest::apply_cz(v, a, b);
      } else {
        const Gate1 g = kGates[rng() % 9];
        const std::size_t q = rng() % n;
        t.apply(g, q);
        densetest::apply1(v, g, q);
      }
    }
    const auto obs = random_hermitian(n, rng);
    if (obs.is_identity()) {
      continue;
    }
    const double dense_exp = densetest::expectation(v, obs);
    auto copy = t;
    const auto r = copy.measure(obs, mrng);
    EXPECT_EQ(r.deterministic, std::abs(dense_exp) > 0.5);
    if (r.deterministic) {
      EXPECT_NEAR(r.outcome, dense_exp, 1e-9);
    } else {
      EXPECT_NEAR(dense_exp, 0.0, 1e-9);
      EXPECT_EQ(copy.expectation(obs), r.outcome);
    }
    EXPECT_TRUE(copy.check_invariants());
  }
}

TEST(Tableau, NonHermitianObservableThrows) {
  StabilizerTableau t(1);
  Rng rng(1);
  EXPECT_THROW((void)t.measure(PauliString::parse("+iX"), rng), Error);
}

TEST(Tableau, InvalidIndicesThrow) {
  StabilizerTableau t(2);
  EXPECT_THROW(t.apply(Gate1::H, 2), Error);
  EXPECT_THROW(t.apply_cz(0, 0), Error);
  EXPECT_THROW(t.apply_cz(0, 5), Error);
}

TEST(Noise, ZeroProbabilityLeavesStateUnchanged) {
  Rng rng(4);
  for (int s = 0; s < 1000; ++s) {
    auto t = plus_state(2);
    apply_depolarizing1(t, 0, 0.0, rng);
    apply_depolarizing2(t, 0, 1, 0.0, rng);
    EXPECT_EQ(t.expectation(PauliString::parse("+XX")), 1);
    EXPECT_EQ(apply_readout_flip(1, 0.0, rng), 1);
  }
}

TEST(Noise, ForcedSingleQubitErrorGivesMinusOneThird) {
  Rng rng(12);
  const int shots = 100000;
  long sum = 0;
  for (int s = 0; s < shots; ++s) {
    auto t = plus_state(1);
    apply_depolarizing1(t, 0, 1.0, rng);
    sum += t.expectation(PauliString::parse("+X"));
  }
  // Density-matrix channel rho -> (1 - p) rho + p/3 sum_P P rho P at p = 1.
  densetest::Vec plus = densetest::zero_state(1);
  densetest::apply1(plus, Gate1::H, 0);
  const densetest::Mat rho = plus * plus.adjoint();
  densetest::Mat out = densetest::Mat::Zero(2, 2);
  for (const char* letter : {"+X", "+Y", "+Z"}) {
    const auto m = densetest::pauli_matrix(PauliString::parse(letter));
    out += m * rho * m.adjoint() / 3.0;
  }
  const double exact = (out * densetest::pauli_matrix(PauliString::parse("+X"))).trace().real();
  EXPECT_NEAR(exact, -1.0 / 3.0, 1e-12);
  const double mean = static_cast<double>(sum) / shots;
  const double sd = std::sqrt((1.0 - mean * mean) / shots);
  EXPECT_NEAR(mean, exact, 5 * sd);
}

TEST(Noise, TwoQubitChannelScaledToUniformFullyDepolarizes) {
  Rng rng(13);
  const int shots = 100000;
  long xx = 0;
  long zi = 0;
  for (int s = 0; s < shots; ++s) {
    auto t = plus_state(2);
    t.apply_cz(0, 1);
    apply_depolarizing2(t, 0, 1, 15.0 / 16.0, rng);
    xx += t.expectation(PauliString::parse("+XZ"));
    zi += t.expectation(PauliString::parse("+ZX"));
  }
  const double bound = 5.0 / std::sqrt(static_cast<double>(shots));
  EXPECT_NEAR(static_cast<double>(xx) / shots, 0.0, bound);
  EXPECT_NEAR(static_cast<double>(zi) / shots, 0.0, bound);
}

TEST(Noise, ProbabilityOutOfRangeThrows) {
  StabilizerTableau t(2);
  Rng rng(1);
  EXPECT_THROW(apply_depolarizing1(t, 0, 1.5, rng), Error);
  EXPECT_THROW(apply_depolarizing2(t, 0, 1, -0.1, rng), Error);
  EXPECT_THROW((void)apply_readout_flip(1, 2.0, rng), Error);
}

TEST(Noise, ReadoutFlipFrequency) {
  Rng rng(21);
  const int shots = 100000;
  int flipped = 0;
  for (int s = 0; s < shots; ++s) {
    flipped += apply_readout_flip(1, 0.1, rng) == -1 ? 1 : 0;
  }
  EXPECT_NEAR(flipped, 0.1 * shots, 5 * std::sqrt(shots * 0.09));
}
