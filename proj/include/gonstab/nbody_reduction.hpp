#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gon_coefficients.hpp"

namespace gonstab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct gon_configuration {
  int n = 0;
  double m = 0;
  std::vector<Eigen::Vector2d> positions;  // body 0 is the center
  VectorXd masses;                         // per coordinate, size 2(n+1)
  double cc_residual = 0;
};

inline Eigen::Matrix2d j2() {
  Eigen::Matrix2d J;
  J << 0, -1, 1, 0;
  return J;
}

// blockdiag(J2, ..., J2)
inline MatrixXd big_j(int bodies) {
  MatrixXd J = MatrixXd::Zero(2 * bodies, 2 * bodies);
  for (int i = 0; i < bodies; ++i) J.block<2, 2>(2 * i, 2 * i) = j2();
  return J;
}

inline VectorXd potential_gradient(const std::vector<Eigen::Vector2d>& pos,
                                   const std::vector<double>& mass) {
  int N = static_cast<int>(pos.size());
  VectorXd g = VectorXd::Zero(2 * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      Eigen::Vector2d r = pos[i] - pos[j];
      double d = r.norm();
      if (d < 1e-12) throw collision_error("bodies " + std::to_string(i) + " and " + std::to_string(j) + " collide");
      g.segment<2>(2 * i) -= mass[i] * mass[j] * r / (d * d * d);
    }
  return g;
}

inline std::vector<double> body_masses(const gon_configuration& c) {
  std::vector<double> w(c.n + 1);
  for (int i = 0; i <= c.n; ++i) w[i] = c.masses(2 * i);
  return w;
}

inline gon_configuration build_configuration(int n, double m) {
  require(n >= 2 && n <= 4096, "build_configuration needs 2 <= n <= 4096");
  require(m >= 0 && std::isfinite(m), "m must be >= 0");
  gon_configuration c;
  c.n = n;
  c.m = m;
  c.positions.push_back({0.0, 0.0});
  for (int k = 1; k <= n; ++k) {
    double t = 2.0 * pi * k / n;
    c.positions.push_back({std::cos(t), std::sin(t)});
  }
  c.masses = VectorXd::Ones(2 * (n + 1));
  c.masses(0) = c.masses(1) = m;

  double lambda = 0.5 * sigma_n(n) + m;
  VectorXd g = potential_gradient(c.positions, body_masses(c));
  double res = 0;
  for (int i = 0; i <= n; ++i)
    res = std::max(res, (lambda * c.masses(2 * i) * c.positions[i] + g.segment<2>(2 * i)).norm());
  c.cc_residual = res;
  if (res > 1e-9)
    throw assertion_failure("central configuration residual " + std::to_string(res) + " exceeds 1e-9");
  return c;
}

inline MatrixXd potential_hessian(const gon_configuration& c) {
  int N = c.n + 1;
  auto w = body_masses(c);
  MatrixXd H = MatrixXd::Zero(2 * N, 2 * N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      Eigen::Vector2d r = c.positions[i] - c.positions[j];
      double d = r.norm();
      if (d < 1e-12) throw collision_error("bodies " + std::to_string(i) + " and " + std::to_string(j) + " collide");
      Eigen::Vector2d u = r / d;
      Eigen::Matrix2d B = w[i] * w[j] / (d * d * d) * (3.0 * u * u.transpose() - Eigen::Matrix2d::Identity());
      B = 0.5 * (B + B.transpose()).eval();
      H.block<2, 2>(2 * i, 2 * i) += B;
      H.block<2, 2>(2 * j, 2 * j) += B;
      H.block<2, 2>(2 * i, 2 * j) -= B;
      H.block<2, 2>(2 * j, 2 * i) -= B;
    }
  return H;
}

struct column_label {
  std::string block;  // "cen", "kep", "1", "2", ...
  std::string name;
};

struct reduction_basis {
  int n = 0;
  double m = 0;
  MatrixXd A;
  std::vector<column_label> labels;
  std::vector<std::pair<std::string, std::pair<int, int>>> blocks;  // id -> (first column, width)
};

inline reduction_basis build_basis(int n, double m) {
  require(m > 0, "build_basis needs m > 0");
  require(n >= 3 && n <= 4096, "build_basis needs 3 <= n <= 4096");
  int D = 2 * (n + 1);
  MatrixXd Jn = big_j(n + 1);
  VectorXd a(D), c(D), vh(D), wh(D);
  a.setZero();
  c.setZero();
  wh.setZero();
  for (int k = 0; k <= n; ++k) c(2 * k) = 1.0;
  vh = c;
  vh(0) = -n / m;
  for (int k = 1; k <= n; ++k) {
    double t = 2.0 * pi * k / n;
    a(2 * k) = std::cos(t);
    a(2 * k + 1) = std::sin(t);
    wh(2 * k) = std::cos(2 * t);
    wh(2 * k + 1) = std::sin(2 * t);
  }
  reduction_basis b;
  b.n = n;
  b.m = m;
  std::vector<VectorXd> cols;
  auto push_block = [&](const std::string& id, std::vector<std::pair<VectorXd, std::string>> vs) {
    b.blocks.push_back({id, {static_cast<int>(cols.size()), static_cast<int>(vs.size())}});
    for (auto& [v, nm] : vs) {
      cols.push_back(v);
      b.labels.push_back({id, nm});
    }
  };
  double sc = 1.0 / std::sqrt(m + n), sa = 1.0 / std::sqrt(double(n));
  push_block("cen", {{c * sc, "c"}, {Jn * c * sc, "Jc"}});
  push_block("kep", {{a * sa, "a"}, {Jn * a * sa, "Ja"}});
  double sv = std::sqrt(m / (double(n) * n + m * n));
  push_block("1", {{vh * sv, "v1"}, {Jn * vh * sv, "Jv1"}, {wh * sa, "w1"}, {Jn * wh * sa, "Jw1"}});
  for (int l = 2; l <= n / 2; ++l) {
    VectorXd v = VectorXd::Zero(D), w = VectorXd::Zero(D);
    for (int k = 1; k <= n; ++k) {
      double t = 2.0 * pi * k / n;
      double tl = 2.0 * pi * double((static_cast<long long>(k) * l) % n) / n;
      v.segment<2>(2 * k) = std::cos(tl) * Eigen::Vector2d(std::cos(t), std::sin(t));
      w.segment<2>(2 * k) = std::sin(tl) * Eigen::Vector2d(std::cos(t), std::sin(t));
    }
    std::string id = std::to_string(l);
    if (2 * l == n) {
      v /= std::sqrt(double(n));
      push_block(id, {{v, "v"}, {Jn * v, "Jv"}});
    } else {
      v *= std::sqrt(2.0 / n);
      w *= std::sqrt(2.0 / n);
      push_block(id, {{v, "v"}, {Jn * v, "Jv"}, {w, "w"}, {Jn * w, "Jw"}});
    }
  }
  b.A.resize(D, static_cast<int>(cols.size()));
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) b.A.col(i) = cols[i];
  return b;
}

// closed forms of the blocks of A^T U'' A
inline MatrixXd closed_form_block(int n, double m, const std::string& id) {
  scenario s{n, m, 0.0};
  auto g = global_coefficients(s);
  if (id == "kep") {
    MatrixXd U = MatrixXd::Zero(2, 2);
    U(0, 0) = g.a0;
    U(1, 1) = g.b0;
    return U;
  }
  int l = std::stoi(id);
  auto bc = block_coefficients(s, l);
  if (l == 1) {
    double h = 0.5 * (n + m), q = 0.5 * m + g.two_p1, t = 1.5 * std::sqrt(m * (m + n));
    MatrixXd U(4, 4);
    U << h, 0, t, 0,
         0, h, 0, -t,
         t, 0, q, 0,
         0, -t, 0, q;
    return U;
  }
  if (2 * l == n) {
    MatrixXd U = MatrixXd::Zero(2, 2);
    U(0, 0) = bc.a;
    U(1, 1) = bc.b;
    return U;
  }
  double A = bc.a, B = bc.b, S = bc.S;
  MatrixXd U(4, 4);
  U << A, 0, 0, S,
       0, B, -S, 0,
       0, -S, A, 0,
       S, 0, 0, B;
  return U;
}

struct block_diagonal_report {
  int n = 0;
  double m = 0;
  std::vector<std::pair<std::string, MatrixXd>> blocks;
  double off_block_residual = 0;
  std::map<std::string, double> closed_form_residual;
  double orthonormality_residual = 0;  // |A^T M A - I|
  double commute_residual = 0;         // |A J - J A|
  double cc_residual = 0;
};

inline block_diagonal_report reduce_and_verify(int n, double m, bool throw_on_failure = true) {
  auto cfg = build_configuration(n, m);
  auto basis = build_basis(n, m);
  MatrixXd H = potential_hessian(cfg);
  const MatrixXd& A = basis.A;
  MatrixXd U = A.transpose() * H * A;
  int D = static_cast<int>(A.cols());

  block_diagonal_report r;
  r.n = n;
  r.m = m;
  r.cc_residual = cfg.cc_residual;
  r.orthonormality_residual =
      (A.transpose() * cfg.masses.asDiagonal() * A - MatrixXd::Identity(D, D)).cwiseAbs().maxCoeff();
  MatrixXd Jn = big_j(n + 1);
  r.commute_residual = (A * big_j(D / 2) - Jn * A).cwiseAbs().maxCoeff();

  MatrixXd mask = MatrixXd::Ones(D, D);
  for (auto& [id, span] : basis.blocks) {
    auto [c0, w] = span;
    MatrixXd blk = U.block(c0, c0, w, w);
    r.blocks.push_back({id, blk});
    mask.block(c0, c0, w, w).setZero();
    if (id != "cen")
      r.closed_form_residual[id] = (blk - closed_form_block(n, m, id)).cwiseAbs().maxCoeff();
  }
  r.off_block_residual = (U.cwiseProduct(mask)).cwiseAbs().maxCoeff();

  if (throw_on_failure) {
    if (r.off_block_residual > 1e-9)
      throw verification_failure("off-block residual " + std::to_string(r.off_block_residual), r.off_block_residual, "off");
    for (auto& [id, res] : r.closed_form_residual)
      if (res > 1e-9)
        throw verification_failure("block " + id + " closed-form residual " + std::to_string(res), res, id);
  }
  return r;
}

// rotation by 2pi/n of every body combined with the cyclic shift k -> k+1 of the ring
inline MatrixXd shift_symmetry(int n) {
  int D = 2 * (n + 1);
  double t = 2.0 * pi / n;
  Eigen::Matrix2d R;
  R << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  MatrixXd S = MatrixXd::Zero(D, D);
  S.block<2, 2>(0, 0) = R;
  for (int k = 1; k <= n; ++k) {
    int to = k % n + 1;
    S.block<2, 2>(2 * to, 2 * k) = R;
  }
  return S;
}

}  // namespace gonstab
