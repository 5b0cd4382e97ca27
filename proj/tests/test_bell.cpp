#include "bellmark/bell.hpp"
#include "bellmark/error.hpp"
#include "bellmark/term_index.hpp"

#include "dense.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

using namespace bellmark;

TEST(BellBounds, ClosedForms) {
  auto b = bell_bounds(Family::GHZ, 3);
  EXPECT_EQ(b.Q, 4);
  EXPECT_EQ(b.C, 2);
  EXPECT_EQ(b.D, 2);
  b = bell_bounds(Family::GHZ, 4);
  EXPECT_EQ(b.Q, 8);
  EXPECT_EQ(b.C, 4);
  EXPECT_EQ(b.D, 2);
  b = bell_bounds(Family::LC, 6);
  EXPECT_EQ(b.Q, 16);
  EXPECT_EQ(b.C, 4);
  EXPECT_EQ(b.D, 4);
  b = bell_bounds(Family::LC, 18);
  EXPECT_EQ(b.Q, 4096);
  EXPECT_EQ(b.C, 64);
  EXPECT_EQ(b.D, 64);
  EXPECT_DOUBLE_EQ(b.alpha_min(), 1.0 / 64);
}

TEST(BellBounds, InvalidSizes) {
  EXPECT_THROW((void)bell_bounds(Family::LC, 7), Error);
  EXPECT_THROW((void)bell_bounds(Family::LC, 0), Error);
  EXPECT_THROW((void)bell_bounds(Family::GHZ, 1), Error);
}

TEST(BellBounds, GhzRatioGrowsAsSqrtTwoPerQubit) {
  for (std::size_t n = 3; n < 40; ++n) {
    const auto b = bell_bounds(Family::GHZ, n);
    const double expect = n % 2 ? std::pow(2.0, (n - 1) / 2.0) : std::pow(2.0, n / 2.0 - 1);
    EXPECT_DOUBLE_EQ(b.D, expect);
    EXPECT_DOUBLE_EQ(b.Q / b.C, b.D);
  }
}

TEST(BellOperator, TermCounts) {
  EXPECT_EQ(BellOperator::standard(Family::GHZ, 3).term_count(), 4);
  EXPECT_EQ(BellOperator::standard(Family::LC, 6).term_count(), 16);
  const auto lc51 = BellOperator::standard(Family::LC, 51);
  EXPECT_EQ(lc51.index_bits(), 34U);
  EXPECT_EQ(lc51.term_count(), std::pow(4.0, 17));
  const auto lc108 = BellOperator::standard(Family::LC, 108);
  EXPECT_EQ(lc108.index_bits(), 72U);
  EXPECT_FALSE(lc108.term_count_exact().has_value());
}

TEST(BellOperator, GhzTermExamples) {
  const auto op = BellOperator::standard(Family::GHZ, 3);
  EXPECT_EQ(op.term(0).str(), "+XZZ");
  EXPECT_EQ(op.term(1).str(), "+YYZ");
  const densetest::Mat prod =
      densetest::pauli_matrix(op.generators()[0]) * densetest::pauli_matrix(op.generators()[1]);
  EXPECT_TRUE(prod.isApprox(densetest::pauli_matrix(op.term(1))));
}

TEST(BellOperator, LcFullBlockIsProductOfGenerators) {
  const auto op = BellOperator::standard(Family::LC, 3);
  EXPECT_EQ(op.term(0).str(), "+ZXZ");
  const densetest::Mat prod = densetest::pauli_matrix(op.generators()[0]) *
                              densetest::pauli_matrix(op.generators()[1]) *
                              densetest::pauli_matrix(op.generators()[2]);
  EXPECT_TRUE(prod.isApprox(densetest::pauli_matrix(op.term(3))));
  EXPECT_EQ(op.term(3).str(), "-YXY");
}

// The sum of all terms must equal the product form written with generators.
TEST(BellOperator, TermSumEqualsProductForm) {
  for (auto [family, n] : {std::pair{Family::GHZ, 3}, {Family::GHZ, 4}, {Family::GHZ, 5},
                           {Family::LC, 3}, {Family::LC, 6}}) {
    const auto op = BellOperator::standard(family, static_cast<std::size_t>(n));
    const auto& g = op.generators();
    const auto dim = Eigen::Index{1} << n;
    const densetest::Mat id = densetest::Mat::Identity(dim, dim);
    densetest::Mat product = id;
    if (family == Family::GHZ) {
      product = densetest::pauli_matrix(g[0]);
      for (int k = 1; k < n; ++k) {
        product = (product * (id + densetest::pauli_matrix(g[k]))).eval();
      }
    } else {
      for (int b = 0; b < n / 3; ++b) {
        product = (product * (id + densetest::pauli_matrix(g[3 * b])) *
                   densetest::pauli_matrix(g[3 * b + 1]) *
                   (id + densetest::pauli_matrix(g[3 * b + 2])))
                      .eval();
      }
    }
    densetest::Mat sum = densetest::Mat::Zero(dim, dim);
    std::set<std::string> seen;
    const auto m = *op.term_count_exact();
    for (std::uint64_t j = 0; j < m; ++j) {
      const auto t = op.term(j);
      EXPECT_TRUE(t.is_hermitian());
      EXPECT_TRUE(seen.insert(t.str()).second) << "duplicate term " << t.str();
      sum += densetest::pauli_matrix(t);
    }
    EXPECT_TRUE(sum.isApprox(product)) << family_name(family) << n;

    // Every term stabilizes the ideal graph state.
    const auto state = densetest::graph_state(op.graph());
    EXPECT_NEAR(densetest::expectation(state, op.term(m - 1)), 1.0, 1e-12);
    EXPECT_NEAR((state.adjoint() * sum * state)(0, 0).real(), op.bounds().Q, 1e-9);
  }
}

TEST(BellOperator, ClassicalBoundByExhaustiveSearch) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto op = BellOperator::standard(Family::GHZ, n);
    EXPECT_EQ(lhv_bruteforce_bound(op), static_cast<std::int64_t>(op.bounds().C)) << n;
  }
  EXPECT_EQ(lhv_bruteforce_bound(BellOperator::standard(Family::LC, 3)), 2);
  EXPECT_EQ(lhv_bruteforce_bound(BellOperator::standard(Family::LC, 6)), 4);
}

TEST(BellOperator, QubitMapRelabelsTerms) {
  const auto op = BellOperator::build(Family::LC, ConnectivityGraph::path(3), {4, 0, 2});
  EXPECT_EQ(op.qubit_map(), (std::vector<Vertex>{4, 0, 2}));
  // Vertex k of the state sits on device qubit map[k]; the term keeps the
  // state's vertex numbering, the map is used when measuring.
  EXPECT_EQ(op.term(0).str(), "+ZXZ");
}

TEST(BellOperator, NonStandardShapes) {
  const auto star = ConnectivityGraph::star(4, 2);
  const auto op = BellOperator::build(Family::GHZ, star);
  EXPECT_EQ(op.ghz_center(), 2U);
  EXPECT_EQ(op.term(0).str(), "+ZZXZ");
  const auto path = ConnectivityGraph(3, {{0, 2}, {2, 1}});
  const auto lc = BellOperator::build(Family::LC, path);
  EXPECT_EQ(lc.order(), (std::vector<Vertex>{0, 2, 1}));
  EXPECT_THROW((void)BellOperator::build(Family::LC, ConnectivityGraph::path(4)), Error);
  EXPECT_THROW((void)BellOperator::build(Family::GHZ, ConnectivityGraph::path(4)), Error);
}

TEST(BellOperator, WideIndicesBuildHermitianTerms) {
  const auto op = BellOperator::standard(Family::LC, 108);
  TermIndex j(op.index_bits());
  for (unsigned k = 0; k < op.index_bits(); k += 5) {
    j.set_bit(k, true);
  }
  const auto t = op.term(j);
  EXPECT_TRUE(t.is_hermitian());
  EXPECT_EQ(t.size(), 108U);
  const auto hex = j.hex();
  EXPECT_EQ(TermIndex::from_hex(op.index_bits(), hex), j);
}

TEST(TermIndex, HexRoundTripAndOrdering) {
  EXPECT_EQ(TermIndex(8, 0).hex(), "0");
  EXPECT_EQ(TermIndex(8, 0xab).hex(), "ab");
  EXPECT_EQ(TermIndex::from_hex(8, "ab").value(), 0xabU);
  EXPECT_THROW((void)TermIndex::from_hex(4, "ff"), Error);
  EXPECT_LT(TermIndex(70, 5), TermIndex(70, 9));
  TermIndex big(70);
  big.set_bit(69, true);
  EXPECT_GT(big, TermIndex(70, ~std::uint64_t{0}));
  EXPECT_THROW((void)big.value(), Error);
}
