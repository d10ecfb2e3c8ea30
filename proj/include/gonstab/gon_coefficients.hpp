#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gonstab {

inline constexpr double pi = std::numbers::pi;
inline constexpr int max_ring = 1000000;

struct scenario {
  int n = 3;
  double m = 0.0;
  double e = 0.0;
};

inline void validate(const scenario& s) {
  require(s.n >= 2 && s.n <= max_ring, "n must be in [2, 1e6], got " + std::to_string(s.n));
  require(s.m >= 0.0 && std::isfinite(s.m), "m must be finite and >= 0");
  require(s.e >= 0.0 && s.e < 1.0, "e must be in [0,1)");
}

// pairwise (tree) accumulation of f(j), j = lo..hi-1
template <class F>
double tree_sum(int lo, int hi, const F& f) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (int j = lo; j < hi; ++j) s += f(j);
    return s;
  }
  int mid = lo + (hi - lo) / 2;
  return tree_sum(lo, mid, f) + tree_sum(mid, hi, f);
}

inline double pairwise_distance(int n, int j) {
  require(n >= 2 && n <= max_ring, "n out of range");
  require(j >= 1 && j <= n - 1, "j must be in 1..n-1");
  return 2.0 * std::sin(pi * j / n);
}

inline double sigma_n(int n) {
  require(n >= 2 && n <= max_ring, "sigma_n needs n >= 2");
  return 0.5 * tree_sum(1, n, [n](int i) { return 1.0 / std::sin(pi * i / n); });
}

struct trig_triple {
  double P = 0, S = 0, Q = 0;
};

inline trig_triple trig_sums(int n, int l) {
  require(n >= 2 && n <= max_ring, "n out of range");
  require(l >= 1 && l <= n / 2, "l must be in 1..floor(n/2)");
  auto term = [n, l](int j, int which) {
    double d = pairwise_distance(n, j);
    double d3 = 2.0 * d * d * d;
    double tj = 2.0 * pi * j / n;
    // reduce j*l mod n before forming the angle
    double tjl = 2.0 * pi * static_cast<double>((static_cast<long long>(j) * l) % n) / n;
    switch (which) {
      case 0: return (1.0 - std::cos(tjl) * std::cos(tj)) / d3;
      case 1: return std::sin(tjl) * std::sin(tj) / d3;
      default: return (std::cos(tj) - std::cos(tjl)) / d3;
    }
  };
  trig_triple t;
  t.P = tree_sum(1, n, [&](int j) { return term(j, 0); });
  t.S = tree_sum(1, n, [&](int j) { return term(j, 1); });
  t.Q = tree_sum(1, n, [&](int j) { return term(j, 2); });
  return t;
}

enum class q_max_range { full, odd_part };

inline double q_max(int n, q_max_range r = q_max_range::full) {
  int hi = r == q_max_range::full ? n / 2 : (n - 1) / 2;
  double q = 0.0;
  for (int l = 2; l <= hi; ++l) q = std::max(q, trig_sums(n, l).Q);
  return q;
}

struct global_coefficients_t {
  double sigma_n = 0, lambda = 0, d_check = 0, d_hat = 0, q_max = 0, a0 = 0, b0 = 0;
  double two_p1 = 0;
};

inline global_coefficients_t global_coefficients(const scenario& s,
                                                 q_max_range r = q_max_range::full) {
  validate(s);
  global_coefficients_t g;
  g.sigma_n = sigma_n(s.n);
  g.lambda = 0.5 * g.sigma_n + s.m;
  g.two_p1 = 2.0 * trig_sums(s.n, 1).P;
  g.d_check = std::min(g.two_p1, 0.5 * s.n);
  g.d_hat = std::max(g.two_p1, 0.5 * s.n);
  g.q_max = q_max(s.n, r);
  g.a0 = g.sigma_n + 2.0 * s.m;
  g.b0 = -0.5 * g.sigma_n - s.m;
  return g;
}

struct block_coefficients_t {
  int l = 1;
  double P = 0, S = 0, Q = 0, a = 0, b = 0;
};

inline block_coefficients_t block_coefficients(const scenario& s, int l) {
  validate(s);
  require(l >= 1 && l <= s.n / 2, "l must be in 1..floor(n/2)");
  auto t = trig_sums(s.n, l);
  block_coefficients_t c;
  c.l = l;
  c.P = t.P;
  c.S = t.S;
  c.Q = t.Q;
  c.a = t.P - 3.0 * t.Q + 2.0 * s.m;
  c.b = t.P + 3.0 * t.Q - s.m;
  return c;
}

inline double d_check(int n) { return global_coefficients({n, 0.0, 0.0}).d_check; }

struct identity_report {
  int n = 0;
  double p1_identity_residual = 0;
  bool four_dcheck_ge_sigma = false;
  bool mixed_inequality = false;  // (4/3)ď + (2/3)σ > n
  bool has_harmonic = false;
  double harmonic_sum = 0;
};

inline identity_report consistency_identities(int n) {
  require(n >= 3 && n <= max_ring, "consistency_identities needs n >= 3");
  auto g = global_coefficients({n, 0.0, 0.0});
  identity_report r;
  r.n = n;
  r.p1_identity_residual =
      std::abs(g.two_p1 - g.sigma_n + 0.5 / std::tan(pi / (2.0 * n)));
  r.four_dcheck_ge_sigma = 4.0 * g.d_check >= g.sigma_n;
  r.mixed_inequality = (4.0 / 3.0) * g.d_check + (2.0 / 3.0) * g.sigma_n > n;
  if (n >= 28) {
    r.has_harmonic = true;
    r.harmonic_sum = tree_sum(1, n / 2, [](int i) { return 1.0 / (pi * i); });
  }
  return r;
}

}  // namespace gonstab
