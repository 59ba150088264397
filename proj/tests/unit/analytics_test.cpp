#include "hqkd/analytics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hqkd;

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  // 0.11 log2(1/0.11) + 0.89 log2(1/0.89) = 0.350287 + 0.149629
  EXPECT_NEAR(binary_entropy(0.11), 0.4999160, 1e-7);
  EXPECT_NEAR(binary_entropy(0.11), -0.11 * std::log2(0.11) - 0.89 * std::log2(0.89), 1e-15);
}

TEST(BinaryEntropy, Symmetric) {
  for (int i = 1; i < 50; ++i) {
    const double d = i / 100.0;
    EXPECT_NEAR(binary_entropy(d), binary_entropy(1.0 - d), 1e-14);
  }
}

TEST(KeyLength, Examples) {
  EXPECT_EQ(em_final({800, 0.0}), 100.0);
  EXPECT_EQ(nem_final({800, 0.0}), 400.0);
  EXPECT_EQ(combined_key_length(1600, 0.0), 500.0);
  EXPECT_NEAR(em_final({1600, 0.11}), 200.0 * (1.0 - 0.4999160), 2e-5);
  EXPECT_EQ(combined_key_length_procedure(1600, 0.0), 300.0);
}

TEST(KeyLength, HalfQberZeroesEverything) {
  for (double n : {1.0, 800.0, 1e6}) {
    EXPECT_EQ(em_final({n, 0.5}), 0.0);
    EXPECT_EQ(nem_final({n, 0.5}), 0.0);
    EXPECT_EQ(combined_key_length(n, 0.5), 0.0);
  }
}

TEST(KeyLength, CombinedIsTheMixture) {
  for (int i = 0; i <= 50; ++i) {
    const double d = i / 100.0;
    EXPECT_NEAR(combined_key_length(1000, d), 0.5 * em_final({1000, d}) + 0.5 * nem_final({1000, d}),
                1e-9);
  }
}

TEST(KeyLength, RejectsBadInputs) {
  EXPECT_THROW(em_final({100, 0.6}), std::invalid_argument);
  EXPECT_THROW(nem_final({-1, 0.1}), std::invalid_argument);
}

TEST(Conclusive, Probabilities) {
  EXPECT_DOUBLE_EQ(b92_conclusive_probability_analytic(), 0.5);
  EXPECT_NEAR(conclusive_probability(make_plus(), make_plus()), 0.0, 1e-15);
  EXPECT_NEAR(conclusive_probability(StateVector(1), StateVector::basis_state(1, 1)), 1.0, 1e-15);
}

TEST(EstimateQber, Examples) {
  SiftedKey same{{0, 1, 1}, {0, 1, 1}, {0, 1, 2}};
  SiftedKey flipped{{0, 1, 1}, {1, 0, 0}, {0, 1, 2}};
  EXPECT_EQ(estimate_qber(same), 0.0);
  EXPECT_EQ(estimate_qber(flipped), 1.0);
  EXPECT_THROW(estimate_qber(SiftedKey{}), std::invalid_argument);
}

TEST(Paradox, Report) {
  const auto r = ghz_paradox_report();
  EXPECT_EQ(r.quantum_product, -1.0);
  EXPECT_EQ(r.lhv_product, 1);
  for (const auto& [c, v] : r.quantum_expectations) EXPECT_EQ(v, target_product(c));
}

TEST(Paradox, EveryPredeterminedAssignmentGivesPlusOne) {
  for (int m = 0; m < 64; ++m) {
    auto v = [m](int bit) { return (m >> bit) & 1 ? -1 : 1; };
    EXPECT_EQ(lhv_product(v(0), v(1), v(2), v(3), v(4), v(5)), 1);
  }
}
