#include <gtest/gtest.h>

#include <gonstab/gon_coefficients.hpp>

#include "oracles.hpp"

using namespace gonstab;

TEST(pairwise_distance, matches_vertex_geometry) {
  EXPECT_DOUBLE_EQ(pairwise_distance(4, 2), 2.0);
  EXPECT_NEAR(pairwise_distance(4, 1), oracle::vertex_distance(4, 1), 1e-12);
  EXPECT_NEAR(pairwise_distance(4, 1), 1.41421356, 1e-8);
  EXPECT_NEAR(pairwise_distance(6, 2), 1.73205081, 1e-8);
  EXPECT_THROW(pairwise_distance(4, 0), gonstab::domain_error);
  EXPECT_THROW(pairwise_distance(4, 4), gonstab::domain_error);
}

TEST(sigma_n, small_values_and_monotone) {
  EXPECT_DOUBLE_EQ(sigma_n(2), 0.5);
  EXPECT_NEAR(sigma_n(3), 2.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(sigma_n(4), 1.9142, 5e-5);
  EXPECT_NEAR(sigma_n(27), 29.4038, 5e-5);
  for (int n = 3; n <= 64; ++n) EXPECT_GT(sigma_n(n), sigma_n(n - 1));
  EXPECT_THROW(sigma_n(1), gonstab::domain_error);
}

TEST(trig_sums, reference_values) {
  auto t = trig_sums(3, 1);
  EXPECT_NEAR(t.P, 0.144338, 1e-6);
  EXPECT_NEAR(t.S, 0.144338, 1e-6);
  EXPECT_NEAR(t.Q, 0.0, 1e-15);
  EXPECT_NEAR(t.P / 2, 0.0722, 5e-5);
  t = trig_sums(4, 2);
  EXPECT_NEAR(t.P, 0.478553, 1e-6);
  EXPECT_NEAR(t.Q, 0.228553, 1e-6);
  t = trig_sums(8, 1);
  EXPECT_NEAR(t.P, 1.54803, 1e-5);
  EXPECT_THROW(trig_sums(8, 5), gonstab::domain_error);
}

TEST(trig_sums, agree_with_direct_summation) {
  for (int n = 2; n <= 40; ++n)
    for (int l = 1; l <= n / 2; ++l) {
      double P, S, Q;
      oracle::brute_trig(n, l, P, S, Q);
      auto t = trig_sums(n, l);
      EXPECT_NEAR(t.P, P, 1e-12 * (1 + std::abs(P)));
      EXPECT_NEAR(t.S, S, 1e-12 * (1 + std::abs(S)));
      EXPECT_NEAR(t.Q, Q, 1e-12 * (1 + std::abs(Q)));
    }
}

TEST(trig_sums, structural_invariants) {
  for (int n = 2; n <= 64; ++n) {
    auto t = trig_sums(n, 1);
    EXPECT_NEAR(t.Q, 0.0, 1e-12);
    EXPECT_NEAR(t.P, t.S, 1e-12);
    for (int l = 2; l <= n / 2; ++l) {
      auto u = trig_sums(n, l);
      EXPECT_GE(u.P, u.S - 1e-12) << n << " " << l;
      EXPECT_GT(u.Q, 0.0) << n << " " << l;
    }
  }
}

TEST(global_coefficients, examples) {
  auto g = global_coefficients({4, 0.0, 0.0});
  EXPECT_NEAR(g.d_check, 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(g.d_check, 0.7071, 1e-4);
  g = global_coefficients({12, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(g.d_check, 6.0);
  g = global_coefficients({3, 1.0, 0.0});
  EXPECT_NEAR(g.lambda, 1.57735, 1e-5);
  EXPECT_EQ(g.q_max, 0.0);
  for (int n = 3; n <= 30; ++n) {
    auto h = global_coefficients({n, 0.7, 0.2});
    EXPECT_GT(h.sigma_n, 0);
    EXPECT_GT(h.lambda, 0);
    EXPECT_LE(h.d_check, h.d_hat);
    EXPECT_NEAR(h.a0, -2 * h.b0, 1e-13);
  }
}

TEST(global_coefficients, q_max_ranges) {
  // n = 6: full range includes l = 3, the odd part stops at l = 2
  double full = q_max(6, q_max_range::full), odd = q_max(6, q_max_range::odd_part);
  EXPECT_DOUBLE_EQ(full, std::max(trig_sums(6, 2).Q, trig_sums(6, 3).Q));
  EXPECT_DOUBLE_EQ(odd, trig_sums(6, 2).Q);
}

TEST(block_coefficients, identities) {
  auto b = block_coefficients({4, 0.0, 0.0}, 2);
  EXPECT_NEAR(b.a, -0.207106, 1e-6);
  EXPECT_NEAR(b.b, 1.164214, 1e-6);
  b = block_coefficients({4, 10.0, 0.0}, 2);
  EXPECT_NEAR(b.a + b.b, 10.957107, 1e-6);
  for (int n = 3; n <= 20; ++n)
    for (double m : {0.0, 0.3, 7.0, 1e4}) {
      auto c = block_coefficients({n, m, 0.0}, 1);
      EXPECT_NEAR(c.a - c.b, 3 * m, 1e-12 * (1 + m));
      for (int l = 1; l <= n / 2; ++l) {
        auto d = block_coefficients({n, m, 0.0}, l);
        EXPECT_NEAR(d.a + d.b, 2 * d.P + m, 1e-12 * (1 + m));
        EXPECT_NEAR(d.a - d.b, 3 * (m - 2 * d.Q), 1e-12 * (1 + m));
      }
    }
  EXPECT_THROW(block_coefficients({4, 0.0, 0.0}, 3), gonstab::domain_error);
  EXPECT_THROW(block_coefficients({4, -1.0, 0.0}, 1), gonstab::domain_error);
  EXPECT_THROW(block_coefficients({4, 0.0, 1.0}, 1), gonstab::domain_error);
}

TEST(consistency_identities, inequalities_and_harmonic_sum) {
  for (int n = 3; n <= 64; ++n) EXPECT_LE(consistency_identities(n).p1_identity_residual, 1e-10);
  for (int n = 9; n <= 27; ++n) {
    auto r = consistency_identities(n);
    EXPECT_TRUE(r.four_dcheck_ge_sigma) << n;
    EXPECT_TRUE(r.mixed_inequality) << n;
  }
  auto r8 = consistency_identities(8);
  EXPECT_FALSE(r8.four_dcheck_ge_sigma && r8.mixed_inequality);
  auto r28 = consistency_identities(28);
  ASSERT_TRUE(r28.has_harmonic);
  EXPECT_NEAR(r28.harmonic_sum, 1.0123, 5e-5);
  EXPECT_GE(r28.harmonic_sum, 1.0);
}

TEST(sums, large_n_is_accepted_and_capped) {
  EXPECT_NO_THROW(sigma_n(100000));
  EXPECT_THROW(sigma_n(max_ring + 1), gonstab::domain_error);
}
