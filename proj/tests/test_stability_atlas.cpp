#include <gtest/gtest.h>

#include <tuple>

#include <gonstab/stability_atlas.hpp>

using namespace gonstab;

TEST(thresholds, paper_rows) {
  auto t3 = thresholds(3);
  ASSERT_EQ(t3.blocks.size(), 1u);
  EXPECT_TRUE(t3.blocks[0].closed_left);
  EXPECT_NEAR(t3.blocks[0].upper, 0.0722, 5e-5);
  auto t4 = thresholds(4);
  EXPECT_EQ(t4.blocks[1].lower, 0.0);
  EXPECT_FALSE(t4.blocks[1].contains(0.0));
  EXPECT_NEAR(t4.blocks[1].upper, 1.7755, 5e-5);
  auto t8 = thresholds(8);
  EXPECT_NEAR(t8.blocks[3].lower, 2.8969, 5e-5);
  EXPECT_NEAR(t8.blocks[3].upper, 15.6593, 5e-5);
  EXPECT_DOUBLE_EQ(t8.beta0, 0.7237);
  EXPECT_THROW(thresholds(2), gonstab::domain_error);
}

TEST(thresholds, intervals_are_sane) {
  for (int n = 3; n <= 40; ++n)
    for (auto& b : thresholds(n).blocks)
      if (b.nonempty()) EXPECT_LT(b.lower, b.upper);
}

TEST(thresholds, block_three_of_the_hexagon) {
  // the formula's left endpoint is (3Q - P)/2; the printed table value is the other branch of the min
  auto s = trig_sums(6, 3);
  EXPECT_NEAR(thresholds(6).blocks[2].lower, (3 * s.Q - s.P) / 2, 1e-14);
  EXPECT_NEAR(thresholds(6).blocks[2].lower, 0.9226, 5e-5);
}

TEST(reproduce_tables, sigma_and_intervals) {
  auto s = reproduce_tables("sigma");
  EXPECT_EQ(s.rows.size(), 24u);
  EXPECT_LE(s.max_deviation, 5e-5);
  auto d = reproduce_tables("dcheck");
  EXPECT_LE(d.max_deviation, 1e-4);
  EXPECT_THROW(reproduce_tables("instability"), golden_mismatch);
  auto i = reproduce_tables("instability", false);
  int bad = 0;
  for (auto& r : i.rows) bad += r.deviation > 5e-4;
  EXPECT_EQ(bad, 1);
  EXPECT_THROW(reproduce_tables("nope"), gonstab::domain_error);
}

TEST(large_m_certificates, examples) {
  auto a = large_m_certificates(9, 0.8, 0.0, 32);
  ASSERT_EQ(a.blocks[0].l, 1);
  EXPECT_TRUE(a.blocks[0].positive);
  auto b = large_m_certificates(28, 0.9, 0.01, 48);
  EXPECT_TRUE(b.blocks[0].positive);
  auto c = large_m_certificates(6, 0.5, std::nullopt, 32);
  EXPECT_NEAR(c.m, 1.1 * c.threshold, 1e-12);
  ASSERT_EQ(c.blocks.size(), 2u);
  for (auto& x : c.blocks) EXPECT_TRUE(x.positive) << x.l;
}

TEST(m1_proxy_n8, block_one_positive_from_zero_mass) {
  for (double e : {0.0, 0.5}) EXPECT_EQ(m1_proxy_n8(e, 32), 0.0);
}

TEST(sweep, closed_form_and_monodromy_agree) {
  sweep_options o;
  o.margin = false;
  auto r = sweep(4, {0.0, 0.085, 0.17}, {0.0, 0.5, 0.9}, o);
  EXPECT_EQ(r.disagreements, 0);
  for (auto& c : r.cells)
    if (c.block == 1) {
      EXPECT_EQ(c.verdict, "Hyperbolic") << c.m << " " << c.e;
      EXPECT_GT(c.max_log_multiplier, 0);
    }
  auto r5 = sweep(5, {0.28}, {0.0, 0.5}, o);
  for (auto& c : r5.cells)
    if (c.block == 2) EXPECT_EQ(c.verdict, "Hyperbolic");
}

TEST(sweep, ordering_and_margin) {
  sweep_options o;
  o.K = 16;
  o.rho_grid = 16;
  o.threads = 3;
  auto r = sweep(3, {0.05, 0.01}, {0.5, 0.0}, o);
  ASSERT_EQ(r.cells.size(), 4u);
  EXPECT_EQ(r.cells[0].m, 0.01);
  EXPECT_EQ(r.cells[0].e, 0.0);
  EXPECT_EQ(r.cells[3].m, 0.05);
  for (auto& c : r.cells) EXPECT_GT(c.margin, 0);
  EXPECT_THROW(sweep(3, {0.1}, {0.995}, o), gonstab::domain_error);
  o.allow_extreme_e = true;
  EXPECT_NO_THROW(sweep(3, {0.1}, {0.995}, {engine::closed_form, 1e-12, 16, 16, false, 1, true}));
}

TEST(sweep, large_mass_stability) {
  sweep_options o;
  o.margin = false;
  o.mode = engine::monodromy;
  auto r = sweep(10, {1e3, 1e5}, {0.0, 0.5}, o);
  for (auto& c : r.cells)
    if (c.m == 1e5 || c.e == 0.0) EXPECT_EQ(c.verdict, "LinearlyStable") << c.m << " " << c.e << " " << c.block;
}

// the mass needed for stability grows with e: m = 1e3 is not enough at e = 0.5
TEST(sweep, eccentric_resonance_matches_index_criterion) {
  scenario s{10, 1e3, 0.5};
  auto g = gon_verdict(s);
  EXPECT_EQ(g.verdict_overall, overall::unstable);
  for (int l = 1; l <= 5; ++l) {
    auto R = reduced_block_of(s, l).R;
    int p1 = index_and_nullity(R, s.e, boundary_twist::from_rho(0.0)).phi;
    int pm = index_and_nullity(R, s.e, boundary_twist::from_rho(0.5)).phi;
    bool index_stable = std::abs(p1 - pm) == R.rows();
    EXPECT_EQ(index_stable, g.blocks[l - 1].v == verdict::linearly_stable) << l;
  }
  EXPECT_EQ(g.blocks[1].v, verdict::mixed);
}

TEST(sweep, monotone_escape_n8) {
  for (double e : {0.0, 0.5})
    for (double m : {1e4, 1e5, 1e6}) EXPECT_EQ(gon_verdict({8, m, e}).verdict_overall, overall::stable) << m << " " << e;
  // 10 max(2 Q_max, m1 proxy) lies below the circular critical mass
  double base = 10 * std::max(thresholds(8).large_m_threshold, m1_proxy_n8(0.0, 32));
  EXPECT_LT(base, 100);
  EXPECT_EQ(gon_verdict({8, base, 0.0}).verdict_overall, overall::unstable);
}

// circular critical mass of the ring, about 0.41 n^3
TEST(sweep, circular_critical_mass) {
  for (auto [n, lo, hi] : std::vector<std::tuple<int, double, double>>{{7, 130, 150}, {8, 200, 225}, {10, 400, 440}}) {
    EXPECT_EQ(gon_verdict({n, lo, 0.0}).verdict_overall, overall::unstable) << n;
    EXPECT_EQ(gon_verdict({n, hi, 0.0}).verdict_overall, overall::stable) << n;
  }
}
