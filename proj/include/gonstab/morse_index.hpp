#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "monodromy.hpp"
#include "operator_blocks.hpp"
#include "parallel.hpp"

namespace gonstab {

inline constexpr double beta0_constant = 0.7237;

struct boundary_twist {
  double rho = 0;  // in [0,1)
  static boundary_twist from_rho(double r) {
    double x = r - std::floor(r);
    if (x >= 1.0) x = 0.0;
    return {x};
  }
  static boundary_twist from_omega(cplx w) {
    require(std::abs(std::abs(w) - 1.0) < 1e-12, "omega must lie on the unit circle");
    return from_rho(std::arg(w) / (2.0 * pi));
  }
  cplx omega() const {
    if (rho == 0.0) return 1.0;
    if (rho == 0.5) return -1.0;
    return std::polar(1.0, 2.0 * pi * rho);
  }
  // frequency shift with the truncation window centered on the lowest modes
  double centered() const { return rho > 0.5 ? rho - 1.0 : rho; }
};

inline std::vector<double> re_fourier_coefficients(double e, int K) {
  require(e >= 0 && e < 1, "e must be in [0,1)");
  require(K >= 0, "K must be >= 0");
  std::vector<double> c(2 * K + 1, 0.0);
  double s = std::sqrt(1.0 - e * e);
  c[0] = 1.0 / s;
  if (e == 0.0) return c;
  double b = e / (1.0 + s);  // (1 - sqrt(1-e^2)) / e without cancellation
  double p = 1.0 / s;
  for (int k = 1; k <= 2 * K; ++k) {
    p *= -b;
    c[k] = p;
  }
  return c;
}

inline MatC assemble_hermitian(const MatrixXd& R, double e, const boundary_twist& tw, int K) {
  require(R.rows() == R.cols() && R.rows() % 2 == 0, "R must be square of even size");
  require(K >= 8, "K must be >= 8");
  int d = static_cast<int>(R.rows()), W = 2 * K + 1;
  auto c = re_fourier_coefficients(e, K);
  MatrixXd Jd = j_small(d);
  MatC H = MatC::Zero(d * W, d * W);
  double r0 = tw.centered();
  for (int j = 0; j < W; ++j) {
    for (int k = 0; k < W; ++k) {
      double ck = c[std::abs(j - k)];
      if (ck != 0.0) H.block(d * j, d * k, d, d) = (ck * R).cast<cplx>();
    }
    double f = (j - K) + r0;
    H.block(d * j, d * j, d, d).diagonal().array() += f * f;
    H.block(d * j, d * j, d, d) += cplx(0, -2.0 * f) * Jd.cast<cplx>();
  }
  return H;
}

inline constexpr double default_null_factor = 1e-10;

inline double null_threshold(const MatC& H, double factor = default_null_factor) {
  return factor * (1.0 + H.cwiseAbs().maxCoeff());
}

enum class backend { eigen, inertia };

struct counts {
  int phi = 0, nu = 0;
  double min_eig = std::numeric_limits<double>::quiet_NaN();
  double eps = 0;
};

inline int negative_count_ldlt(const MatC& H, double shift) {
  MatC A = H;
  A.diagonal().array() -= shift;
  Eigen::LDLT<MatC> f(A);
  int k = 0;
  for (int i = 0; i < f.vectorD().size(); ++i)
    if (f.vectorD()(i).real() < 0) ++k;
  return k;
}

inline counts count_spectrum(const MatC& H, backend b = backend::eigen) {
  counts c;
  c.eps = null_threshold(H);
  if (b == backend::eigen) {
    Eigen::SelfAdjointEigenSolver<MatC> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw convergence_failure("Hermitian eigenvalue iteration failed");
    const auto& w = es.eigenvalues();
    c.min_eig = w(0);
    for (int i = 0; i < w.size(); ++i) {
      if (w(i) < -c.eps) ++c.phi;
      else if (w(i) <= c.eps) ++c.nu;
    }
  } else {
    c.phi = negative_count_ldlt(H, -c.eps);
    c.nu = negative_count_ldlt(H, c.eps) - c.phi;
  }
  return c;
}

// smallest eigenvalue by bisection on LDLT inertia
inline double smallest_eigenvalue_bisect(const MatC& H, double tol = 1e-10) {
  double hi = H.cwiseAbs().rowwise().sum().maxCoeff();
  double lo = -hi;
  while (hi - lo > tol * (1.0 + std::abs(lo))) {
    double mid = 0.5 * (lo + hi);
    if (negative_count_ldlt(H, mid) > 0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

struct index_result {
  int phi = 0, nu = 0;
  double min_eig = 0;
  int K = 0;
  bool converged = false;
  std::vector<std::pair<int, std::pair<int, int>>> history;  // K -> (phi, nu)
};

inline index_result index_and_nullity(const MatrixXd& R, double e, const boundary_twist& tw, int K = 64,
                                      backend b = backend::eigen) {
  auto at = [&](int k) { return count_spectrum(assemble_hermitian(R, e, tw, k), b); };
  index_result r;
  auto c1 = at(K);
  auto c2 = at(2 * K);
  r.history = {{K, {c1.phi, c1.nu}}, {2 * K, {c2.phi, c2.nu}}};
  if (c1.phi == c2.phi && c1.nu == c2.nu) {
    r.phi = c1.phi;
    r.nu = c1.nu;
    r.min_eig = c1.min_eig;
    r.K = K;
    r.converged = true;
    return r;
  }
  auto c4 = at(4 * K);
  r.history.push_back({4 * K, {c4.phi, c4.nu}});
  if (c2.phi == c4.phi && c2.nu == c4.nu) {
    r.phi = c2.phi;
    r.nu = c2.nu;
    r.min_eig = c2.min_eig;
    r.K = 2 * K;
    r.converged = true;
    return r;
  }
  throw convergence_failure("Morse counts differ at K=" + std::to_string(K) + ", " + std::to_string(2 * K) +
                            ", " + std::to_string(4 * K));
}

inline index_result index_ab(double alpha, double beta, double e, const boundary_twist& tw, int K = 64) {
  return index_and_nullity(two_param_block{alpha, beta}.matrix(), e, tw, K);
}

struct certificate {
  bool is_positive = false;
  double min_margin = 0;
  double worst_rho = 0;
  double eps = 0;
  std::vector<std::pair<double, double>> margins;  // (rho, smallest eigenvalue)
};

// grid rho = k/size on [0,1); only [0,1/2] is evaluated since omega and conj(omega) share spectra
inline std::vector<double> rho_grid(int size) {
  require(size >= 16, "rho grid size must be >= 16");
  std::vector<double> g;
  for (int k = 0; 2 * k <= size; ++k) g.push_back(double(k) / size);
  if (g.back() != 0.5) g.push_back(0.5);
  return g;
}

inline certificate positivity_certificate(const MatrixXd& R, double e, int grid_size = 64, int K = 64,
                                          int threads = 1) {
  auto grid = rho_grid(grid_size);
  auto res = parallel_map(grid.size(), threads, [&](std::size_t i) {
    auto H = assemble_hermitian(R, e, boundary_twist::from_rho(grid[i]), K);
    auto c = count_spectrum(H);
    return std::pair<double, double>{c.min_eig, c.eps};
  });
  certificate c;
  c.is_positive = true;
  c.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto [m, eps] = res[i];
    c.margins.push_back({grid[i], m});
    c.eps = std::max(c.eps, eps);
    if (m <= eps) c.is_positive = false;
    if (m < c.min_margin) {
      c.min_margin = m;
      c.worst_rho = grid[i];
    }
  }
  return c;
}

// e = 0 degenerate curves
inline bool hyperbolic_region(double alpha, double beta) {
  double s = 2.0 * std::sqrt(alpha);
  return beta < s || (beta >= s && beta < alpha + 1 && alpha > 1);
}

inline std::array<double, 4> curve_values(double a) {
  return {a + 1, std::sqrt(a * a + 4 * a), std::sqrt(a * a + 2.5 * a + 9.0 / 16), std::sqrt(a * a + 6.5 * a + 25.0 / 16)};
}

inline const char* curve_name(int id) {
  static const char* names[] = {"omega1_k0", "omega1_k1", "omegam1_k1/2", "omegam1_k3/2"};
  return names[id];
}

inline int curve_expected_nullity(int id, double alpha) {
  if (id <= 1) return std::abs(alpha - 0.5) < 1e-12 ? 3 : (id == 0 ? 1 : 2);
  return 2;
}

struct curve_point {
  double alpha = 0;
  int curve_id = 0;
  double beta = 0;
  int nullity = 0;
  int expected = 0;
  bool hyperbolic = false;
};

struct degenerate_curves_t {
  std::vector<curve_point> points;
  bool all_match = true;
};

inline degenerate_curves_t degenerate_curves(const std::vector<double>& alpha_grid, int K = 16, bool check = true,
                                             int threads = 1) {
  std::vector<std::pair<double, int>> jobs;
  for (double a : alpha_grid) {
    require(a >= 0, "alpha grid must be nonnegative");
    for (int id = 0; id < 4; ++id) jobs.push_back({a, id});
  }
  degenerate_curves_t out;
  out.points = parallel_map(jobs.size(), threads, [&](std::size_t i) {
    auto [a, id] = jobs[i];
    curve_point p;
    p.alpha = a;
    p.curve_id = id;
    p.beta = curve_values(a)[id];
    p.expected = curve_expected_nullity(id, a);
    p.hyperbolic = hyperbolic_region(a, p.beta);
    if (check) {
      auto c = count_spectrum(assemble_hermitian(two_param_block{a, p.beta}.matrix(), 0.0,
                                                 boundary_twist::from_rho(id <= 1 ? 0.0 : 0.5), K));
      p.nullity = c.nu;
    } else {
      p.nullity = -1;
    }
    return p;
  });
  if (check)
    for (auto& p : out.points) out.all_match &= p.nullity == p.expected;
  return out;
}

struct comparison_report {
  int phi_upper = 0, phi_block = 0, phi_lower = 0;
  bool sandwich = false;
  bool monotone_alpha = true, monotone_beta = true;
  std::string counterexample;
};

inline comparison_report comparison_checks(const scenario& s, int l, const boundary_twist& tw, int K = 64,
                                           bool throw_on_violation = true) {
  auto R = reduced_block_of(s, l).R;
  auto p = bounding_blocks(s, l);
  comparison_report r;
  r.phi_block = index_and_nullity(R, s.e, tw, K).phi;
  r.phi_lower = index_and_nullity(p.lower_full, s.e, tw, K).phi;
  r.phi_upper = index_and_nullity(p.upper_full, s.e, tw, K).phi;
  r.sandwich = r.phi_upper <= r.phi_block && r.phi_block <= r.phi_lower;
  if (!r.sandwich)
    r.counterexample = "sandwich: upper " + std::to_string(r.phi_upper) + ", block " + std::to_string(r.phi_block) +
                       ", lower " + std::to_string(r.phi_lower);

  // index is nonincreasing in alpha and nondecreasing in beta
  const double as[] = {0.5, 1.0, 1.5}, bs[] = {0.5, 1.0, 1.5, 2.0};
  int phi[3][4];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) phi[i][j] = index_ab(as[i], bs[j], s.e, tw, K).phi;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i > 0 && phi[i][j] > phi[i - 1][j]) {
        r.monotone_alpha = false;
        r.counterexample += " alpha-monotonicity at (" + std::to_string(as[i]) + "," + std::to_string(bs[j]) + ")";
      }
      if (j > 0 && phi[i][j] < phi[i][j - 1]) {
        r.monotone_beta = false;
        r.counterexample += " beta-monotonicity at (" + std::to_string(as[i]) + "," + std::to_string(bs[j]) + ")";
      }
    }
  if (throw_on_violation && !(r.sandwich && r.monotone_alpha && r.monotone_beta))
    throw property_violation(r.counterexample);
  return r;
}

struct comparison_instance {
  bool precondition = false;    // 0 <= e0 <= e, 1 + a0 - b0 > 0, a0, b0, a > 0, b >= 0
  bool ratio_condition = false;  // (b/b0)(1+e0)/(1+e) < 1
  bool shift_condition = false;  // b(e-e0)/(b0(1+e)) < a - (b/b0) a0
  int phi_lhs = 0, phi_rhs = 0;  // phi(a,b,e), phi(a0,b0,e0)
  bool conclusion = false;
};

inline comparison_instance comparison_instance_check(double a0, double b0, double e0, double a, double b, double e,
                                                     const boundary_twist& tw, int K = 64) {
  comparison_instance c;
  c.precondition = 0 <= e0 && e0 <= e && 1 + a0 - b0 > 0 && a0 > 0 && b0 > 0 && a > 0 && b >= 0;
  c.ratio_condition = b / b0 * (1 + e0) / (1 + e) < 1;
  c.shift_condition = b * (e - e0) / (b0 * (1 + e)) < a - b / b0 * a0;
  c.phi_lhs = index_ab(a, b, e, tw, K).phi;
  c.phi_rhs = index_ab(a0, b0, e0, tw, K).phi;
  c.conclusion = c.phi_lhs <= c.phi_rhs;
  return c;
}

// both readings of the index-difference stability criterion
struct index_difference_report {
  std::vector<int> phi_one, phi_minus_one, dims;
  bool full_reading = false;  // |sum phi_1 - sum phi_-1| = n
  std::vector<bool> block_reading;  // |phi_-1 - phi_1| = block dim
};

inline index_difference_report index_difference(const scenario& s, int K = 64) {
  index_difference_report r;
  int t1 = 0, tm = 0;
  for (int l = 1; l <= s.n / 2; ++l) {
    auto R = reduced_block_of(s, l).R;
    int p1 = index_and_nullity(R, s.e, boundary_twist::from_rho(0.0), K).phi;
    int pm = index_and_nullity(R, s.e, boundary_twist::from_rho(0.5), K).phi;
    r.phi_one.push_back(p1);
    r.phi_minus_one.push_back(pm);
    r.dims.push_back(static_cast<int>(R.rows()));
    r.block_reading.push_back(std::abs(pm - p1) == R.rows());
    t1 += p1;
    tm += pm;
  }
  r.full_reading = std::abs(t1 - tm) == s.n;
  return r;
}

// n = 8 family in eta = 1/m
struct eta_family {
  double sigma, p1;
  int n = 8;
  double alpha(double eta) const { return (4 * p1 * eta + 1) / (sigma * eta + 2); }
  double beta(double eta) const { return 3 * std::sqrt(1 + n * eta) / (sigma * eta + 2); }
  double gamma(double eta) const { return (n / 2.0 - 2 * p1) * eta / (sigma * eta + 2); }
  static MatrixXd assemble(double a, double b, double g) {
    MatrixXd R = MatrixXd::Identity(4, 4) * (1 + a);
    R(0, 0) -= b;
    R(1, 1) += b;
    R(2, 2) += b;
    R(3, 3) -= b;
    for (int i = 0; i < 2; ++i) {
      R(i, i) += g;
      R(i + 2, i + 2) += g;
      R(i, i + 2) += g;
      R(i + 2, i) += g;
    }
    return R;
  }
  MatrixXd R(double eta) const { return assemble(alpha(eta), beta(eta), gamma(eta)); }
  MatrixXd dR() const {
    auto d = derivatives();
    MatrixXd D = assemble(d[0], d[1], d[2]);
    D.diagonal().array() -= 1.0;
    return D;
  }
  std::array<double, 3> derivatives() const {
    return {(8 * p1 - sigma) / 4, 3 * (n - sigma) / 4, (n / 2.0 - 2 * p1) / 2};
  }
};

inline eta_family make_eta_family(int n = 8) {
  eta_family f{sigma_n(n), trig_sums(n, 1).P};
  f.n = n;
  return f;
}

struct perturbation_report {
  double alpha_p = 0, beta_p = 0, gamma_p = 0;
  double combo_minus = 0, combo_plus = 0, combo_square = 0;  // a'+g'-b', a'+g'+b', (a'+g')^2-b'^2
  std::vector<double> fd_slopes;        // six smallest eigenvalues
  std::vector<double> analytic_slopes;  // degenerate perturbation on the kernel
  int kernel_dim = 0;
  double e = 0, eta_step = 0;
};

inline perturbation_report perturbation_derivative_n8(double e, double eta_step = 1e-4, int K = 64,
                                                      bool throw_on_violation = true) {
  require(eta_step > 0 && eta_step <= 1e-3, "eta_step must be in (0, 1e-3]");
  auto f = make_eta_family(8);
  perturbation_report r;
  r.e = e;
  r.eta_step = eta_step;
  auto d = f.derivatives();
  r.alpha_p = d[0];
  r.beta_p = d[1];
  r.gamma_p = d[2];
  r.combo_minus = d[0] + d[2] - d[1];
  r.combo_plus = d[0] + d[2] + d[1];
  r.combo_square = (d[0] + d[2]) * (d[0] + d[2]) - d[1] * d[1];

  auto tw = boundary_twist::from_rho(0.0);
  MatC H0 = assemble_hermitian(f.R(0.0), e, tw, K);
  MatC H1 = assemble_hermitian(f.R(eta_step), e, tw, K);
  Eigen::SelfAdjointEigenSolver<MatC> es0(H0);
  Eigen::SelfAdjointEigenSolver<MatC> es1(H1, Eigen::EigenvaluesOnly);
  double eps = null_threshold(H0);
  for (int i = 0; i < 6; ++i) r.fd_slopes.push_back((es1.eigenvalues()(i) - es0.eigenvalues()(i)) / eta_step);
  for (int i = 0; i < es0.eigenvalues().size(); ++i)
    if (std::abs(es0.eigenvalues()(i)) <= eps) ++r.kernel_dim;
  MatC V = es0.eigenvectors().leftCols(6);
  MatC Hd = assemble_hermitian(f.dR(), e, tw, K);
  // the derivative operator carries no differential part
  MatC Hz = assemble_hermitian(MatrixXd::Zero(4, 4), e, tw, K);
  MatC P = V.adjoint() * (Hd - Hz) * V;
  Eigen::SelfAdjointEigenSolver<MatC> ep((P + P.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  for (int i = 0; i < 6; ++i) r.analytic_slopes.push_back(ep.eigenvalues()(i));
  if (throw_on_violation)
    for (double s : r.fd_slopes)
      if (!(s > 0)) throw property_violation("nonpositive eigenvalue slope " + std::to_string(s));
  return r;
}

}  // namespace gonstab
