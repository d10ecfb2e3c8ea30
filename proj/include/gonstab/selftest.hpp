#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "stability_atlas.hpp"

namespace gonstab {

struct check_result {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

inline check_result check_tables() {
  auto s = reproduce_tables("sigma", false), d = reproduce_tables("dcheck", false);
  check_result c{"tables sigma/dcheck", s.max_deviation <= 5e-5 && d.max_deviation <= 5e-5, ""};
  c.detail = "sigma max dev " + fmt(s.max_deviation) + ", dcheck max dev " + fmt(d.max_deviation);
  for (auto& r : d.rows)
    if (r.deviation > 5e-5) c.detail += "; dcheck n=" + std::to_string(r.n) + " " + fmt(r.computed) + " vs " + fmt(r.paper);
  return c;
}

inline check_result check_intervals() {
  auto t = reproduce_tables("instability", false);
  check_result c{"instability intervals", t.max_deviation <= 5e-4, "max dev " + fmt(t.max_deviation)};
  for (auto& r : t.rows)
    if (r.deviation > 5e-4)
      c.detail += "; n=" + std::to_string(r.n) + " block " + std::to_string(r.block) + (r.side ? " right " : " left ") +
                  fmt(r.computed) + " vs " + fmt(r.paper);
  return c;
}

inline check_result check_reduction() {
  double off = 0, cf = 0, orth = 0, comm = 0;
  for (int n = 3; n <= 12; ++n)
    for (double m : {0.1, 1.0, 10.0, 1000.0}) {
      auto r = reduce_and_verify(n, m, false);
      off = std::max(off, r.off_block_residual);
      orth = std::max(orth, r.orthonormality_residual);
      comm = std::max(comm, r.commute_residual);
      for (auto& [id, v] : r.closed_form_residual) cf = std::max(cf, v);
    }
  return {"reduction fidelity", off <= 1e-9 && cf <= 1e-9 && orth <= 1e-10 && comm <= 1e-10,
          "off-block " + fmt(off) + ", closed-form " + fmt(cf) + ", A^T M A " + fmt(orth) + ", AJ-JA " + fmt(comm)};
}

inline check_result check_cc_residuals() {
  double worst = 0;
  for (int n = 3; n <= 12; ++n)
    for (double m : {0.0, 0.0722, 1.0, 100.0}) worst = std::max(worst, build_configuration(n, m).cc_residual);
  return {"central configuration residuals", worst <= 1e-9, "max " + fmt(worst)};
}

inline check_result check_kernel_facts(int K = 64) {
  check_result c{"kernel facts", true, ""};
  auto one = boundary_twist::from_rho(0.0), half = boundary_twist::from_rho(0.5);
  for (double e : {0.0, 0.3, 0.6, 0.9}) {
    auto a = index_ab(0, 0, e, one, K), b = index_ab(0.5, 1.5, e, one, K), d = index_ab(0.5, 1.5, e, half, K);
    bool ok = a.nu == 2 && a.phi == 0 && b.nu == 3 && b.phi == 0 && d.phi == 2 && d.nu == 0 && a.converged &&
              b.converged && d.converged && a.K == K && b.K == K && d.K == K;
    c.pass &= ok;
    c.detail += "e=" + fmt(e) + ": (" + std::to_string(a.phi) + "," + std::to_string(a.nu) + ") (" +
                std::to_string(b.phi) + "," + std::to_string(b.nu) + ") (" + std::to_string(d.phi) + "," +
                std::to_string(d.nu) + ")" + (ok ? "" : " MISMATCH") + "; ";
  }
  return c;
}

// the spectral operator and the Hamiltonian flow must use the same conventions
inline check_result check_orientation() {
  check_result c{"orientation", true, ""};
  struct pt {
    MatrixXd R;
    double e;
    double rho;
  };
  auto f = make_eta_family(8);
  std::vector<pt> pts = {{two_param_block{0.5, 1.5}.matrix(), 0.4, 0.0},
                         {two_param_block{0.0, 0.0}.matrix(), 0.7, 0.0},
                         {two_param_block{1.0, std::sqrt(1.0 + 2.5 + 9.0 / 16)}.matrix(), 0.0, 0.5},
                         {f.R(0.0), 0.5, 0.0},
                         {reduced_block_of({7, 2.0, 0.3}, 2).R, 0.3, 0.25}};
  for (auto& p : pts) {
    auto tw = boundary_twist::from_rho(p.rho);
    int nu_f = count_spectrum(assemble_hermitian(p.R, p.e, tw, 48)).nu;
    auto r = integrate_monodromy(coefficient_path(p.R, p.e), 1e-12);
    int nu_m = kernel_dimension(r.gamma_ld, tw.omega(), 1e-7 * std::max(1.0, r.gamma_2pi.cwiseAbs().maxCoeff()));
    c.pass &= nu_f == nu_m;
    c.detail += std::to_string(nu_f) + "/" + std::to_string(nu_m) + " ";
  }
  double worst = 0;
  for (double a : {0.3, 1.7})
    for (double b : {0.4, 2.2}) {
      auto r = integrate_monodromy(path_of(two_param_block{a, b}, 0.0), 1e-12);
      for (auto z : e0_multipliers(a, b)) {
        double best = 1e300;
        for (auto w : r.multipliers) best = std::min(best, std::abs(w - z) / std::max(1.0, std::abs(z)));
        worst = std::max(worst, best);
      }
    }
  c.pass &= worst <= 1e-6;
  c.detail += "| e=0 closed-form multiplier mismatch " + fmt(worst);
  return c;
}

inline std::vector<check_result> run_selftest() {
  return {check_orientation(), check_cc_residuals(), check_tables(), check_intervals(), check_reduction(),
          check_kernel_facts()};
}

}  // namespace gonstab
