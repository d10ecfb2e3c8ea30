#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nbody_reduction.hpp"

namespace gonstab {

struct reduced_block {
  int l = 1;
  int dim = 4;
  MatrixXd R;
};

struct two_param_block {
  double alpha = 0;
  double beta = 0;
  MatrixXd matrix() const {
    MatrixXd R = MatrixXd::Zero(2, 2);
    R(0, 0) = 1 + alpha + beta;
    R(1, 1) = 1 + alpha - beta;
    return R;
  }
};

inline int block_dim(int n, int l) { return 2 * l == n ? 2 : 4; }

inline reduced_block reduced_block_of(const scenario& s, int l) {
  validate(s);
  require(s.n >= 3, "reduced blocks need n >= 3");
  require(l >= 1 && l <= s.n / 2, "l must be in 1..floor(n/2)");
  double lambda = 0.5 * sigma_n(s.n) + s.m;
  MatrixXd U = closed_form_block(s.n, s.m, std::to_string(l));
  reduced_block b;
  b.l = l;
  b.dim = static_cast<int>(U.rows());
  b.R = MatrixXd::Identity(b.dim, b.dim) + U / lambda;
  return b;
}

// T = (1/sqrt2)[[I, I], [-I, I]]
inline MatrixXd decoupling_frame() {
  MatrixXd T(4, 4);
  T << 1, 0, 1, 0,
       0, 1, 0, 1,
      -1, 0, 1, 0,
       0, -1, 0, 1;
  return T / std::sqrt(2.0);
}

struct bounding_pair {
  std::vector<two_param_block> lower, upper;
  MatrixXd lower_full, upper_full;  // in the coordinates of R_l
};

inline bounding_pair bounding_blocks(const scenario& s, int l) {
  validate(s);
  require(s.n >= 3, "bounding blocks need n >= 3");
  require(l >= 1 && l <= s.n / 2, "l must be in 1..floor(n/2)");
  auto g = global_coefficients(s);
  double lambda = g.lambda;
  bounding_pair p;
  auto diag2 = [](const two_param_block& x, const two_param_block& y) {
    MatrixXd D = MatrixXd::Zero(4, 4);
    D.block(0, 0, 2, 2) = x.matrix();
    D.block(2, 2, 2, 2) = y.matrix();
    return D;
  };
  if (l == 1) {
    double beta = 3.0 * std::sqrt(s.m * (s.m + s.n)) / (2.0 * lambda);
    two_param_block lo{(g.d_check + 0.5 * s.m) / lambda, beta};
    two_param_block hi{(g.d_hat + 0.5 * s.m) / lambda, beta};
    p.lower = {lo, {lo.alpha, -beta}};
    p.upper = {hi, {hi.alpha, -beta}};
    MatrixXd T = decoupling_frame();
    // the T-frame pairs (alpha, -beta) with the first half
    p.lower_full = T * diag2(p.lower[1], p.lower[0]) * T.transpose();
    p.upper_full = T * diag2(p.upper[1], p.upper[0]) * T.transpose();
    return p;
  }
  auto bc = block_coefficients(s, l);
  double beta = (bc.a - bc.b) / (2.0 * lambda);
  if (2 * l == s.n) {
    two_param_block x{(bc.a + bc.b) / (2.0 * lambda), beta};
    p.lower = {x};
    p.upper = {x};
    p.lower_full = p.upper_full = x.matrix();
    return p;
  }
  double S = std::abs(bc.S);
  two_param_block lo{(bc.a + bc.b - 2 * S) / (2.0 * lambda), beta};
  two_param_block hi{(bc.a + bc.b + 2 * S) / (2.0 * lambda), beta};
  p.lower = {lo};
  p.upper = {hi};
  p.lower_full = diag2(lo, lo);
  p.upper_full = diag2(hi, hi);
  return p;
}

// smallest eigenvalues of R - lower and upper - R
inline std::pair<double, double> sandwich_margins(const scenario& s, int l) {
  auto R = reduced_block_of(s, l).R;
  auto p = bounding_blocks(s, l);
  Eigen::SelfAdjointEigenSolver<MatrixXd> lo(R - p.lower_full), hi(p.upper_full - R);
  return {lo.eigenvalues().minCoeff(), hi.eigenvalues().minCoeff()};
}

inline double r_e(double e, double theta) {
  require(e >= 0 && e < 1, "e must be in [0,1)");
  return 1.0 / (1.0 + e * std::cos(theta));
}

// block-diagonal J2 of size d
template <class Scalar = double>
Eigen::Matrix<Scalar, -1, -1> j_small(int d) {
  Eigen::Matrix<Scalar, -1, -1> J = Eigen::Matrix<Scalar, -1, -1>::Zero(d, d);
  for (int i = 0; i + 1 < d; i += 2) {
    J(i, i + 1) = -1;
    J(i + 1, i) = 1;
  }
  return J;
}

// [[0, -I], [I, 0]] of size 2d
template <class Scalar = double>
Eigen::Matrix<Scalar, -1, -1> j_standard(int d) {
  Eigen::Matrix<Scalar, -1, -1> J = Eigen::Matrix<Scalar, -1, -1>::Zero(2 * d, 2 * d);
  J.block(0, d, d, d) = -Eigen::Matrix<Scalar, -1, -1>::Identity(d, d);
  J.block(d, 0, d, d) = Eigen::Matrix<Scalar, -1, -1>::Identity(d, d);
  return J;
}

struct coefficient_path {
  MatrixXd R;
  double e = 0;

  coefficient_path(MatrixXd r, double ecc) : R(std::move(r)), e(ecc) {
    require(R.rows() == R.cols() && R.rows() % 2 == 0, "R must be square of even size");
    require((R - R.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1 + R.cwiseAbs().maxCoeff()), "R must be symmetric");
    require(e >= 0 && e < 1, "e must be in [0,1)");
  }
  int dim() const { return static_cast<int>(R.rows()); }

  template <class Scalar = double>
  Eigen::Matrix<Scalar, -1, -1> B(Scalar theta) const {
    using std::cos;
    int d = dim();
    using Mat = Eigen::Matrix<Scalar, -1, -1>;
    Mat out(2 * d, 2 * d);
    Mat J = j_small<Scalar>(d);
    Mat I = Mat::Identity(d, d);
    Scalar r = Scalar(1) / (Scalar(1) + Scalar(e) * cos(theta));
    out.block(0, 0, d, d) = I;
    out.block(0, d, d, d) = -J;
    out.block(d, 0, d, d) = J;
    out.block(d, d, d, d) = I - r * R.cast<Scalar>();
    return out;
  }
};

inline coefficient_path path_of(const reduced_block& b, double e) { return {b.R, e}; }
inline coefficient_path path_of(const two_param_block& b, double e) { return {b.matrix(), e}; }

struct full_assembly {
  MatrixXd R;
  std::vector<std::pair<int, int>> spans;  // per block l = 1.. : (offset, dim)
};

inline full_assembly assemble_full(const scenario& s) {
  full_assembly f;
  std::vector<MatrixXd> parts;
  int total = 0;
  for (int l = 1; l <= s.n / 2; ++l) {
    parts.push_back(reduced_block_of(s, l).R);
    f.spans.push_back({total, static_cast<int>(parts.back().rows())});
    total += static_cast<int>(parts.back().rows());
  }
  f.R = MatrixXd::Zero(total, total);
  for (size_t i = 0; i < parts.size(); ++i)
    f.R.block(f.spans[i].first, f.spans[i].first, f.spans[i].second, f.spans[i].second) = parts[i];
  return f;
}

inline MatrixXd extract_block(const full_assembly& f, int l) {
  auto [o, d] = f.spans.at(l - 1);
  return f.R.block(o, o, d, d);
}

}  // namespace gonstab
