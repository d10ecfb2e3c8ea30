#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "golden_tables.hpp"
#include "monodromy.hpp"
#include "morse_index.hpp"

namespace gonstab {

struct block_interval {
  int l = 1;
  double lower = 0, upper = 0;
  bool closed_left = false;
  bool nonempty() const { return lower < upper; }
  bool contains(double m) const { return (closed_left ? m >= lower : m > lower) && m < upper; }
};

struct threshold_table {
  int n = 0;
  std::vector<block_interval> blocks;
  double beta0 = beta0_constant;
  double large_m_threshold = 0;  // 2 Q_max
};

inline threshold_table thresholds(int n, q_max_range r = q_max_range::full) {
  require(n >= 3 && n <= max_ring, "thresholds need n >= 3");
  threshold_table t;
  t.n = n;
  double sigma = sigma_n(n), b0 = beta0_constant;
  t.large_m_threshold = 2.0 * q_max(n, r);
  t.blocks.push_back({1, 0.0, 0.5 * trig_sums(n, 1).P, true});
  for (int l = 2; l <= n / 2; ++l) {
    auto s = trig_sums(n, l);
    double S = 2 * l == n ? 0.0 : s.S;
    double w = std::min(sigma, 4 * (s.P - S));
    double zeta = std::min((3 * s.Q + S - s.P) / 2, (6 * s.Q - b0 * w) / (3 + 2 * b0));
    double xi = std::max(3 * s.Q + s.P - S, (6 * s.Q + b0 * w) / (3 - 2 * b0));
    t.blocks.push_back({l, std::max(0.0, zeta), xi, false});
  }
  return t;
}

struct table_row {
  int n = 0, block = 0, side = 0;
  double computed = 0, paper = 0, deviation = 0;
  std::string provenance;
};

struct table_report {
  std::string which;
  std::vector<table_row> rows;
  double max_deviation = 0;
};

inline table_report reproduce_tables(const std::string& which, bool throw_on_mismatch = true) {
  table_report t;
  t.which = which;
  auto add = [&](const golden::entry& g, double v) {
    table_row r{g.n, g.block, g.side, v, g.value, std::abs(v - g.value), std::string(g.provenance)};
    t.max_deviation = std::max(t.max_deviation, r.deviation);
    t.rows.push_back(r);
  };
  if (which == "sigma") {
    for (auto& g : golden::sigma) add(g, sigma_n(g.n));
  } else if (which == "dcheck") {
    for (auto& g : golden::dcheck) add(g, d_check(g.n));
  } else if (which == "instability") {
    for (auto& g : golden::instability) {
      auto b = thresholds(g.n).blocks.at(g.block - 1);
      add(g, g.side == 0 ? b.lower : b.upper);
    }
  } else {
    throw domain_error("unknown table '" + which + "' (sigma, dcheck, instability)");
  }
  if (throw_on_mismatch && t.max_deviation > 5e-4)
    throw golden_mismatch(which + " table deviates by " + std::to_string(t.max_deviation), t.max_deviation);
  return t;
}

struct block_certificate {
  int l = 0;
  bool positive = false;
  double min_eig = 0;
};

struct large_m_report {
  int n = 0;
  double e = 0, threshold = 0, m = 0;
  std::vector<block_certificate> blocks;
};

// positivity at omega = 1 of every block l >= 2, and of block 1 for n >= 9
inline large_m_report large_m_certificates(int n, double e, std::optional<double> m_sample = std::nullopt, int K = 64) {
  require(n >= 4, "large_m_certificates needs n >= 4");
  large_m_report r;
  r.n = n;
  r.e = e;
  r.threshold = 2.0 * q_max(n);
  r.m = m_sample ? *m_sample : 1.1 * r.threshold;
  for (int l = n >= 9 ? 1 : 2; l <= n / 2; ++l) {
    auto R = reduced_block_of({n, r.m, e}, l).R;
    auto c = count_spectrum(assemble_hermitian(R, e, boundary_twist::from_rho(0.0), K));
    r.blocks.push_back({l, c.phi == 0 && c.nu == 0, c.min_eig});
  }
  return r;
}

// smallest m in [0, hi] above which block 1 of n = 8 is positive at omega = 1 (NaN if not positive at hi)
inline double m1_proxy_n8(double e, int K = 64, double hi = 1e3) {
  auto positive = [&](double m) {
    auto R = reduced_block_of({8, m, e}, 1).R;
    auto c = count_spectrum(assemble_hermitian(R, e, boundary_twist::from_rho(0.0), K));
    return c.phi == 0 && c.nu == 0;
  };
  if (!positive(hi)) return std::numeric_limits<double>::quiet_NaN();
  if (positive(0.0)) return 0.0;
  double lo = 0.0;
  for (int it = 0; it < 50 && hi - lo > 1e-6 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (positive(mid) ? hi : lo) = mid;
  }
  return hi;
}

enum class engine { closed_form, monodromy, both };

inline engine parse_engine(const std::string& s) {
  if (s == "closed_form" || s == "closed-form") return engine::closed_form;
  if (s == "monodromy") return engine::monodromy;
  if (s == "both") return engine::both;
  throw domain_error("unknown sweep mode '" + s + "'");
}

inline const char* to_string(engine e) {
  return e == engine::closed_form ? "closed_form" : e == engine::monodromy ? "monodromy" : "both";
}

struct sweep_options {
  engine mode = engine::both;
  double rel_tol = 1e-12;
  int K = 64;
  int rho_grid = 64;
  bool margin = true;
  int threads = 1;
  bool allow_extreme_e = false;
};

struct sweep_cell {
  int n = 0;
  double m = 0, e = 0;
  int block = 0;
  std::string verdict;  // engine verdict; closed-form "Hyperbolic" or "Undetermined"
  std::string closed_form;
  double max_log_multiplier = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::quiet_NaN();
  bool consistent = true;
  bool exploratory = false;
  std::string error;
};

struct sweep_result {
  std::vector<sweep_cell> cells;  // sorted by (m, e, block)
  std::vector<std::pair<double, double>> m1_proxy;  // n = 8: (e, proxy)
  int disagreements = 0;
};

inline sweep_result sweep(int n, const std::vector<double>& ms, const std::vector<double>& es,
                          const sweep_options& opt = {}) {
  require(n >= 3, "sweep needs n >= 3");
  for (double e : es) require(e >= 0 && e < 1 && (e <= 0.99 || opt.allow_extreme_e), "e out of range (e <= 0.99 unless extreme e is allowed)");
  for (double m : ms) require(m >= 0 && std::isfinite(m), "m must be finite and >= 0");
  auto th = thresholds(n);
  struct job {
    double m, e;
    int l;
  };
  std::vector<job> jobs;
  std::vector<double> msorted = ms, esorted = es;
  std::sort(msorted.begin(), msorted.end());
  std::sort(esorted.begin(), esorted.end());
  for (double m : msorted)
    for (double e : esorted)
      for (int l = 1; l <= n / 2; ++l) jobs.push_back({m, e, l});

  sweep_result out;
  out.cells = parallel_map(jobs.size(), opt.threads, [&](std::size_t i) {
    auto [m, e, l] = jobs[i];
    sweep_cell c;
    c.n = n;
    c.m = m;
    c.e = e;
    c.block = l;
    bool cf_hyp = th.blocks[l - 1].contains(m);
    c.closed_form = cf_hyp ? "Hyperbolic" : "Undetermined";
    bool large_m = (l >= 2 && m > th.large_m_threshold) || (l == 1 && n >= 9);
    c.exploratory = !cf_hyp && !large_m;
    try {
      auto R = reduced_block_of({n, m, e}, l).R;
      if (opt.mode != engine::closed_form) {
        auto r = integrate_monodromy(coefficient_path(R, e), opt.rel_tol);
        classify(r);
        c.verdict = to_string(r.v);
        c.max_log_multiplier = r.max_log_multiplier;
        if (opt.mode == engine::both) c.consistent = !cf_hyp || r.v == verdict::hyperbolic;
      } else {
        c.verdict = c.closed_form;
      }
      if (opt.margin) c.margin = positivity_certificate(R, e, opt.rho_grid, opt.K).min_margin;
    } catch (std::exception& ex) {
      c.error = ex.what();
      c.verdict = "Error";
    }
    return c;
  });
  for (auto& c : out.cells) out.disagreements += c.consistent ? 0 : 1;
  if (n == 8)
    for (double e : esorted) out.m1_proxy.push_back({e, m1_proxy_n8(e, opt.K)});
  return out;
}

}  // namespace gonstab
