#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <string>
#include <vector>

#include "ode.hpp"
#include "operator_blocks.hpp"
#include "parallel.hpp"

namespace gonstab {

using ld = long double;
using MatLD = Eigen::Matrix<ld, -1, -1>;
using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;

enum class verdict { linearly_stable, spectrally_stable_not_linearly_stable, hyperbolic, mixed, on_boundary };

inline const char* to_string(verdict v) {
  switch (v) {
    case verdict::linearly_stable: return "LinearlyStable";
    case verdict::spectrally_stable_not_linearly_stable: return "SpectrallyStableNotLinearlyStable";
    case verdict::hyperbolic: return "Hyperbolic";
    case verdict::mixed: return "Mixed";
    default: return "OnBoundary";
  }
}

struct krein_datum {
  cplx multiplier;
  int p = 0, q = 0;
  std::vector<double> form_values;
  bool definite() const { return p * q == 0 && p + q > 0; }
};

struct monodromy_report {
  int dim = 0;  // d, gamma is 2d x 2d
  MatLD gamma_ld;
  MatrixXd gamma_2pi;
  std::vector<cplx> multipliers;
  double symplectic_residual = 0;             // |g^T J g - J|_max
  double symplectic_residual_normalized = 0;  // divided by max(1, |g|_max^2)
  double det_residual = 0;
  double rel_tol = 0;
  ode_stats stats;
  verdict v = verdict::mixed;
  std::vector<krein_datum> krein;
  double max_log_multiplier = 0;
};

struct classify_options {
  double tol_circle = 1e-7;
  double tol_semisimple = -1;  // <0: 1e-7 * |gamma|_max
  double tol_cluster = 1e-7;
  double tol_krein = 1e-10;
};

inline std::vector<cplx> eigenvalues_ld(const MatLD& g) {
  Eigen::EigenSolver<MatLD> es(g, false);
  if (es.info() != Eigen::Success) throw convergence_failure("eigenvalue iteration failed");
  std::vector<cplx> out;
  for (int i = 0; i < g.rows(); ++i) {
    auto z = es.eigenvalues()(i);
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

// characteristic polynomial by Faddeev-LeVerrier: returns c with p(x) = sum c[k] x^(N-k), c[0] = 1
inline std::vector<ld> charpoly(const MatLD& A) {
  int N = static_cast<int>(A.rows());
  std::vector<ld> c(N + 1, 0);
  c[0] = 1;
  MatLD Mk = MatLD::Zero(N, N);
  MatLD I = MatLD::Identity(N, N);
  for (int k = 1; k <= N; ++k) {
    Mk = A * Mk + c[k - 1] * I;
    c[k] = -(A * Mk).trace() / ld(k);
  }
  return c;
}

// multipliers through mu = x + 1/x on the palindromic characteristic polynomial
inline std::vector<cplx> reciprocal_multipliers(const MatLD& g) {
  auto c = charpoly(g);
  int N = static_cast<int>(g.rows()), d = N / 2;
  // p(x)/x^d = c[d] + sum_{k=1..d} c[d-k] (x^k + x^-k); x^k + x^-k = T_k(mu)
  std::vector<std::vector<ld>> T(d + 1, std::vector<ld>(d + 1, 0));
  T[0][0] = 2;
  if (d >= 1) T[1][1] = 1;
  for (int k = 2; k <= d; ++k) {
    for (int j = 0; j < d; ++j) T[k][j + 1] += T[k - 1][j];
    for (int j = 0; j <= d; ++j) T[k][j] -= T[k - 2][j];
  }
  std::vector<ld> q(d + 1, 0);  // q[j] coefficient of mu^j
  q[0] += c[d];
  for (int k = 1; k <= d; ++k)
    for (int j = 0; j <= d; ++j) q[j] += c[d - k] * T[k][j];
  MatLD comp = MatLD::Zero(d, d);
  for (int j = 0; j < d; ++j) comp(0, j) = -q[d - 1 - j] / q[d];
  for (int j = 1; j < d; ++j) comp(j, j - 1) = 1;
  std::vector<cplx> out;
  Eigen::EigenSolver<MatLD> es(comp, false);
  for (int i = 0; i < d; ++i) {
    std::complex<ld> mu(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
    std::complex<ld> disc = std::sqrt(mu * mu - std::complex<ld>(4));
    for (auto x : {(mu + disc) / ld(2), (mu - disc) / ld(2)}) out.emplace_back(double(x.real()), double(x.imag()));
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

inline MatLD symplectic_j(int d) { return j_standard<ld>(d); }

inline monodromy_report integrate_monodromy(const coefficient_path& path, double rel_tol = 1e-12) {
  require(rel_tol >= 1e-13 && rel_tol <= 1e-6, "rel_tol must be in [1e-13, 1e-6]");
  int d = path.dim();
  MatLD J = symplectic_j(d);
  auto F = [&](ld t) -> MatLD { return J * path.B<ld>(t); };
  monodromy_report r;
  r.dim = d;
  r.rel_tol = rel_tol;
  ld two_pi = 2 * std::numbers::pi_v<ld>;
  r.gamma_ld = integrate_linear<ld>(F, ld(0), two_pi, MatLD::Identity(2 * d, 2 * d), ld(rel_tol), &r.stats);
  r.gamma_2pi = r.gamma_ld.cast<double>();
  ld gmax = r.gamma_ld.cwiseAbs().maxCoeff();
  r.symplectic_residual =
      static_cast<double>((r.gamma_ld.transpose() * J * r.gamma_ld - J).cwiseAbs().maxCoeff());
  r.symplectic_residual_normalized = r.symplectic_residual / std::max(1.0, double(gmax * gmax));
  r.det_residual = static_cast<double>(std::abs(r.gamma_ld.determinant() - 1));
  r.multipliers = eigenvalues_ld(r.gamma_ld);
  for (auto z : r.multipliers) r.max_log_multiplier = std::max(r.max_log_multiplier, std::abs(std::log(std::abs(z))));
  return r;
}

// singular values and right singular vectors of (g - z I) in long double
struct shifted_svd {
  Eigen::Matrix<ld, -1, 1> s;
  Eigen::Matrix<std::complex<ld>, -1, -1> V;
};

inline shifted_svd svd_shifted(const MatLD& g, cplx z) {
  using MC = Eigen::Matrix<std::complex<ld>, -1, -1>;
  MC A = g.cast<std::complex<ld>>();
  A.diagonal().array() -= std::complex<ld>(z.real(), z.imag());
  Eigen::JacobiSVD<MC> svd(A, Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixV()};
}

inline int kernel_dimension(const MatLD& g, cplx omega, double tol) {
  auto sv = svd_shifted(g, omega);
  int k = 0;
  for (int i = 0; i < sv.s.size(); ++i)
    if (sv.s(i) <= tol) ++k;
  return k;
}

inline void classify(monodromy_report& r, const classify_options& opt = {}) {
  double gnorm = r.gamma_2pi.cwiseAbs().maxCoeff();
  double tol_ss = opt.tol_semisimple < 0 ? 1e-7 * gnorm : opt.tol_semisimple;
  const auto& mu = r.multipliers;
  int N = static_cast<int>(mu.size());

  // clusters of nearly equal multipliers
  std::vector<int> owner(N, -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < N; ++i) {
    if (owner[i] >= 0) continue;
    owner[i] = static_cast<int>(clusters.size());
    clusters.push_back({i});
    for (int j = i + 1; j < N; ++j)
      if (owner[j] < 0 && std::abs(mu[j] - mu[i]) <= opt.tol_cluster * std::max(1.0, std::abs(mu[i]))) {
        owner[j] = owner[i];
        clusters.back().push_back(j);
      }
  }

  bool any_on = false, all_on = true, semisimple = true, boundary = false;
  r.krein.clear();
  MatLD J = symplectic_j(r.dim);
  for (auto& cl : clusters) {
    cplx z = 0;
    for (int i : cl) z += mu[i];
    z /= double(cl.size());
    bool on = std::abs(std::abs(z) - 1.0) <= opt.tol_circle;
    any_on |= on;
    all_on &= on;
    if (std::abs(z - 1.0) <= opt.tol_circle || std::abs(z + 1.0) <= opt.tol_circle) boundary = true;
    auto sv = svd_shifted(r.gamma_ld, z);
    int geo = 0;
    for (int i = 0; i < sv.s.size(); ++i)
      if (sv.s(i) <= tol_ss) ++geo;
    if (geo < static_cast<int>(cl.size())) semisimple = false;
    if (!on) continue;
    // eigenspace: right singular vectors of the smallest singular values
    int k = std::max<int>(1, std::min<int>(geo, static_cast<int>(cl.size())));
    int M = static_cast<int>(sv.s.size());
    auto V = sv.V.rightCols(k);
    using MC = Eigen::Matrix<std::complex<ld>, -1, -1>;
    MC form = V.adjoint() * (std::complex<ld>(0, -1) * J.cast<std::complex<ld>>()) * V;
    MC herm = (form + form.adjoint()) / ld(2);
    Eigen::SelfAdjointEigenSolver<MC> es(herm);
    krein_datum kd;
    kd.multiplier = z;
    for (int i = 0; i < k; ++i) {
      double v = static_cast<double>(es.eigenvalues()(i));
      kd.form_values.push_back(v);
      if (v > opt.tol_krein) ++kd.p;
      else if (v < -opt.tol_krein) ++kd.q;
    }
    (void)M;
    r.krein.push_back(kd);
  }

  if (boundary) r.v = verdict::on_boundary;
  else if (all_on) r.v = semisimple ? verdict::linearly_stable : verdict::spectrally_stable_not_linearly_stable;
  else if (!any_on) r.v = verdict::hyperbolic;
  else r.v = verdict::mixed;
}

struct e0_quad {
  std::complex<double> z[4];
};

inline e0_quad e0_spectrum(double alpha, double beta) {
  require(alpha >= 0 && beta >= 0, "e0_spectrum needs alpha, beta >= 0");
  using C = std::complex<double>;
  C s = std::sqrt(C(beta * beta - 4 * alpha));
  C r1 = std::sqrt(C(alpha - 1) + s), r2 = std::sqrt(C(alpha - 1) - s);
  return {{r1, -r1, r2, -r2}};
}

inline std::vector<cplx> e0_multipliers(double alpha, double beta) {
  auto q = e0_spectrum(alpha, beta);
  std::vector<cplx> out;
  for (auto z : q.z) out.push_back(std::exp(2.0 * pi * z));
  return out;
}

enum class overall { stable, unstable, inconclusive };

inline const char* to_string(overall o) {
  return o == overall::stable ? "Stable" : o == overall::unstable ? "Unstable" : "Inconclusive";
}

struct gon_report {
  scenario s;
  std::vector<monodromy_report> blocks;  // l = 1..floor(n/2)
  overall verdict_overall = overall::inconclusive;
};

inline gon_report gon_verdict(const scenario& s, double rel_tol = 1e-12, int threads = 1,
                              const classify_options& opt = {}) {
  validate(s);
  require(s.n >= 3, "gon_verdict needs n >= 3");
  gon_report g;
  g.s = s;
  g.blocks = parallel_map(static_cast<std::size_t>(s.n / 2), threads, [&](std::size_t i) {
    int l = static_cast<int>(i) + 1;
    try {
      auto r = integrate_monodromy(path_of(reduced_block_of(s, l), s.e), rel_tol);
      classify(r, opt);
      return r;
    } catch (integration_failure& f) {
      throw integration_failure(std::string("block ") + std::to_string(l) + ": " + f.what(), l);
    }
  });
  bool all_stable = true, any_bad = false;
  for (auto& b : g.blocks) {
    all_stable &= b.v == verdict::linearly_stable;
    any_bad |= b.v == verdict::hyperbolic || b.v == verdict::mixed;
  }
  g.verdict_overall = all_stable ? overall::stable : any_bad ? overall::unstable : overall::inconclusive;
  return g;
}

}  // namespace gonstab
