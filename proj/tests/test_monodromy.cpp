#include <gtest/gtest.h>

#include <gonstab/monodromy.hpp>

#include "oracles.hpp"

using namespace gonstab;

namespace {

MatLD exact_e0(const MatrixXd& R) {
  coefficient_path p(R, 0.0);
  int d = p.dim();
  MatLD JB = j_standard<ld>(d) * p.B<ld>(0);
  return oracle::expm(JB * (2 * std::numbers::pi_v<ld>));
}

double max_abs_unit_deviation(const std::vector<cplx>& mu) {
  double d = 0;
  for (auto z : mu) d = std::max(d, std::abs(std::abs(z) - 1));
  return d;
}

}  // namespace

TEST(integrate_monodromy, kepler_point_has_triple_kernel) {
  auto r = integrate_monodromy(path_of(two_param_block{0.5, 1.5}, 0.0), 1e-12);
  EXPECT_EQ(kernel_dimension(r.gamma_ld, 1.0, 1e-7 * r.gamma_2pi.cwiseAbs().maxCoeff()), 3);
}

TEST(integrate_monodromy, matches_matrix_exponential_at_e0) {
  for (double a : {0.0, 0.75, 1.5, 2.25, 3.0})
    for (double b : {0.0, 0.75, 1.5, 2.25, 3.0}) {
      auto R = two_param_block{a, b}.matrix();
      auto r = integrate_monodromy(coefficient_path(R, 0.0), 1e-12);
      MatLD E = exact_e0(R);
      double diff = static_cast<double>((r.gamma_ld - E).cwiseAbs().maxCoeff());
      double scale = std::max(1.0, static_cast<double>(E.cwiseAbs().maxCoeff()));
      EXPECT_LE(diff / scale, 1e-8) << a << " " << b;
    }
}

TEST(integrate_monodromy, symplectic_and_unimodular) {
  for (double e : {0.0, 0.5, 0.9}) {
    auto r = integrate_monodromy(path_of(reduced_block_of({6, 3.0, e}, 2), e), 1e-11);
    EXPECT_LE(r.symplectic_residual_normalized, 100 * 1e-11);
    EXPECT_LE(r.det_residual, 1e-9);
  }
  // hyperbolic point: the raw residual grows with |gamma|^2
  auto r = integrate_monodromy(path_of(two_param_block{0.7, 0.4}, 0.3), 1e-11);
  EXPECT_LE(r.symplectic_residual_normalized, 1e-9);
  EXPECT_LE(r.symplectic_residual, 1e-9 * std::max(1.0, std::pow(r.gamma_2pi.cwiseAbs().maxCoeff(), 2)));
}

TEST(integrate_monodromy, multipliers_closed_under_conjugation_and_inversion) {
  for (auto [n, m, e] : std::vector<std::tuple<int, double, double>>{{3, 0.05, 0.7}, {5, 0.28, 0.4}, {8, 20.0, 0.6}}) {
    for (int l = 1; l <= n / 2; ++l) {
      auto r = integrate_monodromy(path_of(reduced_block_of({n, m, e}, l), e), 1e-12);
      for (auto z : r.multipliers) {
        double best_c = 1e300, best_i = 1e300;
        for (auto w : r.multipliers) {
          best_c = std::min(best_c, std::abs(w - std::conj(z)));
          best_i = std::min(best_i, std::abs(w - 1.0 / z));
        }
        EXPECT_LE(best_c, 1e-7 * std::max(1.0, std::abs(z)));
        EXPECT_LE(best_i, 1e-7 * std::max(1.0, std::abs(1.0 / z)));
      }
    }
  }
}

TEST(integrate_monodromy, rejects_bad_tolerance) {
  EXPECT_THROW(integrate_monodromy(path_of(two_param_block{0.5, 0.5}, 0.1), 1e-3), gonstab::domain_error);
  EXPECT_THROW(integrate_monodromy(path_of(two_param_block{0.5, 0.5}, 0.1), 1e-15), gonstab::domain_error);
}

TEST(integrate_monodromy, extreme_eccentricity_fails_loudly_or_stays_accurate) {
  try {
    auto r = integrate_monodromy(path_of(two_param_block{0.5, 1.0}, 0.999), 1e-12);
    EXPECT_LE(r.symplectic_residual_normalized, 1e-6);
  } catch (const integration_failure&) {
    SUCCEED();
  }
}

TEST(e0_spectrum, closed_form_examples) {
  auto q = e0_spectrum(0.5, 1.5);
  std::vector<double> mags;
  for (auto z : q.z) mags.push_back(std::abs(z));
  std::sort(mags.begin(), mags.end());
  EXPECT_NEAR(mags[0], 0, 1e-12);
  EXPECT_NEAR(mags[1], 0, 1e-12);
  EXPECT_NEAR(mags[2], 1, 1e-12);
  EXPECT_NEAR(mags[3], 1, 1e-12);
  for (auto z : e0_spectrum(0, 0).z) {
    EXPECT_NEAR(z.real(), 0, 1e-15);
    EXPECT_NEAR(std::abs(z.imag()), 1, 1e-15);
  }
  for (auto z : e0_spectrum(2, 0).z) EXPECT_GT(std::abs(z.real()), 0.1);
}

TEST(e0_spectrum, agrees_with_integrated_multipliers) {
  for (double a : {0.2, 1.3, 2.7})
    for (double b : {0.1, 1.1, 2.9}) {
      auto r = integrate_monodromy(path_of(two_param_block{a, b}, 0.0), 1e-12);
      auto expect = e0_multipliers(a, b);
      for (auto z : expect) {
        double best = 1e300;
        for (auto w : r.multipliers) best = std::min(best, std::abs(w - z) / std::max(1.0, std::abs(z)));
        EXPECT_LE(best, 1e-6) << a << " " << b;
      }
    }
}

TEST(reciprocal_multipliers, cross_check_on_separated_spectra) {
  for (auto R : {two_param_block{2.0, 0.5}.matrix(), two_param_block{0.3, 0.2}.matrix(),
                 reduced_block_of({5, 0.28, 0.4}, 2).R}) {
    auto r = integrate_monodromy(coefficient_path(R, 0.4), 1e-12);
    auto alt = reciprocal_multipliers(r.gamma_ld);
    ASSERT_EQ(alt.size(), r.multipliers.size());
    for (auto z : alt) {
      double best = 1e300;
      for (auto w : r.multipliers) best = std::min(best, std::abs(w - z) / std::max(1.0, std::abs(z)));
      EXPECT_LE(best, 1e-6);
    }
  }
}

TEST(classify, rotation_and_hyperbolic_matrices) {
  monodromy_report rot;
  rot.dim = 1;
  rot.gamma_ld = MatLD(2, 2);
  rot.gamma_ld << std::cos(2.0L), -std::sin(2.0L), std::sin(2.0L), std::cos(2.0L);
  rot.gamma_2pi = rot.gamma_ld.cast<double>();
  rot.multipliers = eigenvalues_ld(rot.gamma_ld);
  classify(rot);
  EXPECT_EQ(rot.v, verdict::linearly_stable);
  ASSERT_EQ(rot.krein.size(), 2u);
  EXPECT_NE(rot.krein[0].p, rot.krein[1].p);

  monodromy_report hyp;
  hyp.dim = 1;
  hyp.gamma_ld = MatLD::Zero(2, 2);
  hyp.gamma_ld(0, 0) = 2;
  hyp.gamma_ld(1, 1) = 0.5;
  hyp.gamma_2pi = hyp.gamma_ld.cast<double>();
  hyp.multipliers = eigenvalues_ld(hyp.gamma_ld);
  classify(hyp);
  EXPECT_EQ(hyp.v, verdict::hyperbolic);

  monodromy_report shear;
  shear.dim = 1;
  shear.gamma_ld = MatLD::Identity(2, 2);
  shear.gamma_ld(0, 1) = 1;
  shear.gamma_2pi = shear.gamma_ld.cast<double>();
  shear.multipliers = eigenvalues_ld(shear.gamma_ld);
  classify(shear);
  EXPECT_EQ(shear.v, verdict::on_boundary);

  monodromy_report shear_rot;  // Jordan block at a non-real unit multiplier
  shear_rot.dim = 2;
  MatLD Rt(2, 2);
  Rt << std::cos(1.0L), -std::sin(1.0L), std::sin(1.0L), std::cos(1.0L);
  shear_rot.gamma_ld = MatLD::Zero(4, 4);
  shear_rot.gamma_ld.block(0, 0, 2, 2) = Rt;
  shear_rot.gamma_ld.block(2, 2, 2, 2) = Rt;
  shear_rot.gamma_ld.block(0, 2, 2, 2) = Rt;
  shear_rot.gamma_2pi = shear_rot.gamma_ld.cast<double>();
  shear_rot.multipliers = eigenvalues_ld(shear_rot.gamma_ld);
  classify(shear_rot);
  EXPECT_EQ(shear_rot.v, verdict::spectrally_stable_not_linearly_stable);
}

TEST(gon_verdict, paper_examples) {
  auto g = gon_verdict({3, 0.05, 0.7});
  EXPECT_EQ(g.blocks[0].v, verdict::hyperbolic);
  auto g5 = gon_verdict({5, 0.28, 0.4});
  EXPECT_EQ(g5.blocks[1].v, verdict::hyperbolic);
  auto g4 = gon_verdict({4, 0.1, 0.3});
  EXPECT_EQ(g4.blocks[0].v, verdict::hyperbolic);
  EXPECT_EQ(g4.verdict_overall, overall::unstable);
  auto g10 = gon_verdict({10, 1e4, 0.5}, 1e-12, 2);
  for (auto& b : g10.blocks) EXPECT_EQ(b.v, verdict::linearly_stable);
  EXPECT_EQ(g10.verdict_overall, overall::stable);
}

TEST(gon_verdict, large_mass_krein_definite) {
  auto g = gon_verdict({10, 1e6, 0.5});
  for (auto& b : g.blocks) {
    EXPECT_EQ(b.v, verdict::linearly_stable);
    for (auto& k : b.krein) EXPECT_TRUE(k.definite());
  }
}
