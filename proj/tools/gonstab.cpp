#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <gonstab/gonstab.hpp>

using namespace gonstab;
using nlohmann::json;

namespace {

struct globals {
  bool json_out = false;
  std::string out;
  double rel_tol = 1e-12;
  int modes = 0;  // 0: per-command default
  int rho_grid = 64;
  int threads = 1;
  bool allow_extreme_e = false;
  int modes_or(int d) const { return modes > 0 ? modes : d; }
};

globals G;

json mat(const Eigen::MatrixXd& A) {
  json rows = json::array();
  for (int i = 0; i < A.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < A.cols(); ++j) r.push_back(A(i, j));
    rows.push_back(r);
  }
  return rows;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void render(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) render(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    bool matrix = j[0].is_array() && (j[0].empty() || !j[0][0].is_structured());
    if (matrix) {
      os << prefix << ":\n";
      for (auto& r : j) {
        os << "   ";
        for (auto& x : r) os << " " << std::setw(13) << x.dump();
        os << "\n";
      }
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) render(os, j[i], prefix + "[" + std::to_string(i) + "]");
    }
  } else {
    os << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit_text(const std::string& s) {
  if (G.out.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(G.out);
  if (!f) throw std::runtime_error("cannot open " + G.out);
  f << s;
}

void emit(const json& j) {
  if (G.json_out) return emit_text(j.dump(2) + "\n");
  std::ostringstream os;
  os.precision(10);
  render(os, j, "");
  emit_text(os.str());
}

void check_e(double e) {
  require(e >= 0 && e < 1, "e must be in [0,1)");
  require(e <= 0.99 || G.allow_extreme_e, "e > 0.99 needs --allow-extreme-e");
}

boundary_twist parse_omega(const std::string& s) {
  if (s == "1") return boundary_twist::from_rho(0.0);
  if (s == "-1") return boundary_twist::from_rho(0.5);
  if (s.rfind("rho=", 0) == 0) {
    double r = std::stod(s.substr(4));
    require(r >= 0 && r < 1, "rho must be in [0,1)");
    return boundary_twist::from_rho(r);
  }
  throw domain_error("omega must be 1, -1 or rho=R");
}

std::vector<double> parse_range(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) v.push_back(std::stod(tok));
  require(v.size() == 3, "range must be lo:hi:step");
  double lo = v[0], hi = v[1], st = v[2];
  require(std::isfinite(lo) && std::isfinite(hi) && st > 0 && hi >= lo, "range needs finite lo <= hi and step > 0");
  std::vector<double> out;
  int count = static_cast<int>(std::floor((hi - lo) / st + 1e-9));
  require(count < 1000000, "range has too many points");
  for (int i = 0; i <= count; ++i) out.push_back(lo + i * st);
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  if (s.find(':') != std::string::npos) return parse_range(s);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  require(!out.empty(), "empty list");
  return out;
}

std::string sci(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string plain(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

json monodromy_json(int l, const monodromy_report& r) {
  json j;
  j["block"] = l;
  j["dim"] = r.dim;
  j["verdict"] = to_string(r.v);
  j["multipliers"] = json::array();
  for (auto z : r.multipliers) j["multipliers"].push_back(cplx_json(z));
  j["max_log_multiplier"] = r.max_log_multiplier;
  j["symplectic_residual"] = r.symplectic_residual;
  j["symplectic_residual_normalized"] = r.symplectic_residual_normalized;
  j["det_residual"] = r.det_residual;
  j["rel_tol"] = r.rel_tol;
  j["steps"] = {{"accepted", r.stats.accepted}, {"rejected", r.stats.rejected}, {"h_min", r.stats.h_min}};
  j["krein"] = json::array();
  for (auto& k : r.krein)
    j["krein"].push_back({{"multiplier", cplx_json(k.multiplier)},
                          {"p", k.p},
                          {"q", k.q},
                          {"form_values", k.form_values},
                          {"definite", k.definite()}});
  return j;
}

json index_json(const index_result& r) {
  json h = json::array();
  for (auto& [k, pn] : r.history) h.push_back({{"K", k}, {"phi", pn.first}, {"nu", pn.second}});
  return {{"phi", r.phi}, {"nu", r.nu}, {"min_eig", r.min_eig}, {"K", r.K}, {"converged", r.converged}, {"history", h}};
}

json certificate_json(const certificate& c) {
  return {{"kind", "sampled-certificate"},
          {"is_positive", c.is_positive},
          {"min_margin", c.min_margin},
          {"worst_rho", c.worst_rho},
          {"eps_null", c.eps},
          {"grid", G.rho_grid}};
}

std::vector<int> block_list(int n, int block) {
  std::vector<int> ls;
  if (block > 0) {
    require(block <= n / 2, "block must be in 1..floor(n/2)");
    ls.push_back(block);
  } else {
    for (int l = 1; l <= n / 2; ++l) ls.push_back(l);
  }
  return ls;
}

int cmd_coeffs(int n, double m, const std::string& range) {
  auto r = range == "odd" ? q_max_range::odd_part : q_max_range::full;
  auto g = global_coefficients({n, m, 0.0}, r);
  json j;
  j["n"] = n;
  j["m"] = m;
  j["sigma_n"] = g.sigma_n;
  j["lambda"] = g.lambda;
  j["d_check"] = g.d_check;
  j["d_hat"] = g.d_hat;
  j["q_max"] = g.q_max;
  j["q_max_range"] = range;
  j["a0"] = g.a0;
  j["b0"] = g.b0;
  j["two_p1"] = g.two_p1;
  j["blocks"] = json::array();
  for (int l = 1; l <= n / 2; ++l) {
    auto b = block_coefficients({n, m, 0.0}, l);
    j["blocks"].push_back({{"l", b.l}, {"P", b.P}, {"S", b.S}, {"Q", b.Q}, {"a", b.a}, {"b", b.b}});
  }
  auto id = consistency_identities(n);
  j["identities"] = {{"p1_identity_residual", id.p1_identity_residual},
                     {"four_dcheck_ge_sigma", id.four_dcheck_ge_sigma},
                     {"mixed_inequality", id.mixed_inequality},
                     {"has_harmonic", id.has_harmonic},
                     {"harmonic_sum", id.harmonic_sum}};
  emit(j);
  return 0;
}

int cmd_blocks(int n, double m, int block) {
  json j;
  j["n"] = n;
  j["m"] = m;
  j["blocks"] = json::array();
  for (int l : block_list(n, block)) {
    scenario s{n, m, 0.0};
    auto b = reduced_block_of(s, l);
    auto p = bounding_blocks(s, l);
    auto [lo, hi] = sandwich_margins(s, l);
    json pairs_lo = json::array(), pairs_hi = json::array();
    for (auto& t : p.lower) pairs_lo.push_back({{"alpha", t.alpha}, {"beta", t.beta}});
    for (auto& t : p.upper) pairs_hi.push_back({{"alpha", t.alpha}, {"beta", t.beta}});
    j["blocks"].push_back({{"l", l},
                           {"dim", b.dim},
                           {"R", mat(b.R)},
                           {"lower", pairs_lo},
                           {"upper", pairs_hi},
                           {"margin_lower", lo},
                           {"margin_upper", hi}});
  }
  emit(j);
  return 0;
}

int cmd_verify(int n, double m, bool full) {
  auto r = reduce_and_verify(n, m, true);
  json j;
  j["n"] = n;
  j["m"] = m;
  j["off_block_residual"] = r.off_block_residual;
  j["closed_form_residual"] = r.closed_form_residual;
  j["orthonormality_residual"] = r.orthonormality_residual;
  j["commute_residual"] = r.commute_residual;
  j["cc_residual"] = r.cc_residual;
  if (full) {
    j["blocks"] = json::array();
    for (auto& [id, B] : r.blocks) j["blocks"].push_back({{"id", id}, {"matrix", mat(B)}});
  }
  emit(j);
  return 0;
}

int cmd_monodromy(int n, double m, double e, int block) {
  check_e(e);
  scenario s{n, m, e};
  validate(s);
  json j;
  j["n"] = n;
  j["m"] = m;
  j["e"] = e;
  j["blocks"] = json::array();
  if (block > 0) {
    auto ls = block_list(n, block);
    auto r = integrate_monodromy(path_of(reduced_block_of(s, block), e), G.rel_tol);
    classify(r);
    j["blocks"].push_back(monodromy_json(block, r));
  } else {
    auto g = gon_verdict(s, G.rel_tol, G.threads);
    for (std::size_t i = 0; i < g.blocks.size(); ++i) j["blocks"].push_back(monodromy_json(int(i) + 1, g.blocks[i]));
    j["overall"] = to_string(g.verdict_overall);
  }
  emit(j);
  return 0;
}

int cmd_morse(int n, double m, double e, const std::string& omega, int block, bool cert) {
  check_e(e);
  auto tw = parse_omega(omega);
  json j;
  j["n"] = n;
  j["m"] = m;
  j["e"] = e;
  j["rho"] = tw.rho;
  j["blocks"] = json::array();
  for (int l : block_list(n, block)) {
    auto R = reduced_block_of({n, m, e}, l).R;
    json b = index_json(index_and_nullity(R, e, tw, G.modes_or(64)));
    b["block"] = l;
    if (cert) b["positivity"] = certificate_json(positivity_certificate(R, e, G.rho_grid, G.modes_or(64), G.threads));
    j["blocks"].push_back(b);
  }
  emit(j);
  return 0;
}

int cmd_morse_ab(double a, double b, double e, const std::string& omega, bool cert) {
  check_e(e);
  auto tw = parse_omega(omega);
  json j = index_json(index_ab(a, b, e, tw, G.modes_or(64)));
  j["alpha"] = a;
  j["beta"] = b;
  j["e"] = e;
  j["rho"] = tw.rho;
  if (cert)
    j["positivity"] =
        certificate_json(positivity_certificate(two_param_block{a, b}.matrix(), e, G.rho_grid, G.modes_or(64), G.threads));
  emit(j);
  return 0;
}

int cmd_curves(const std::string& range, bool check) {
  auto grid = parse_range(range);
  for (double a : grid) require(a >= 0, "alpha must be >= 0");
  auto c = degenerate_curves(grid, G.modes_or(16), check, G.threads);
  if (G.json_out) {
    json j = json::array();
    for (auto& p : c.points)
      j.push_back({{"alpha", p.alpha},
                   {"beta_curve_id", p.curve_id},
                   {"curve", curve_name(p.curve_id)},
                   {"beta", num(p.beta)},
                   {"nullity", p.nullity},
                   {"expected", p.expected}});
    emit(json{{"points", j}, {"all_match", c.all_match}});
  } else {
    std::ostringstream os;
    os << "alpha,beta_curve_id,beta,nullity_check\n";
    for (auto& p : c.points) {
      std::string chk = !check ? "skipped" : p.nullity == p.expected ? "ok" : "FAIL";
      os << plain(p.alpha) << "," << p.curve_id << "," << plain(p.beta) << "," << chk << "\n";
    }
    emit_text(os.str());
  }
  return check && !c.all_match ? 1 : 0;
}

int cmd_thresholds(int n, const std::string& range) {
  auto t = thresholds(n, range == "odd" ? q_max_range::odd_part : q_max_range::full);
  json j;
  j["n"] = n;
  j["beta0"] = beta0_constant;
  j["large_m_threshold"] = t.large_m_threshold;
  j["blocks"] = json::array();
  for (auto& b : t.blocks)
    j["blocks"].push_back({{"l", b.l},
                           {"lower", b.lower},
                           {"upper", b.upper},
                           {"closed_left", b.closed_left},
                           {"nonempty", b.nonempty()}});
  emit(j);
  return 0;
}

int cmd_tables(const std::string& which) {
  std::vector<std::string> ws = which == "all" ? std::vector<std::string>{"sigma", "dcheck", "instability"}
                                               : std::vector<std::string>{which};
  json j;
  j["golden_version"] = golden::version;
  bool ok = true;
  for (auto& w : ws) {
    auto t = reproduce_tables(w, false);
    double tol = w == "instability" ? 5e-4 : 5e-5;
    json rows = json::array();
    for (auto& r : t.rows)
      rows.push_back({{"n", r.n},
                      {"block", r.block},
                      {"side", r.side ? "right" : "left"},
                      {"computed", r.computed},
                      {"paper", r.paper},
                      {"deviation", r.deviation},
                      {"provenance", r.provenance}});
    j[w] = {{"max_deviation", t.max_deviation}, {"tolerance", tol}, {"pass", t.max_deviation <= tol}, {"rows", rows}};
    ok &= t.max_deviation <= tol;
  }
  emit(j);
  return ok ? 0 : 1;
}

int cmd_sweep(int n, const std::string& ms, const std::string& es, const std::string& mode, bool no_margin) {
  sweep_options o;
  o.mode = parse_engine(mode);
  o.rel_tol = G.rel_tol;
  o.K = G.modes_or(64);
  o.rho_grid = G.rho_grid;
  o.margin = !no_margin;
  o.threads = G.threads;
  o.allow_extreme_e = G.allow_extreme_e;
  auto m = parse_list(ms), e = parse_list(es);
  for (double x : e) check_e(x);
  auto r = sweep(n, m, e, o);

  json side;
  side["config"] = {{"n", n},
                    {"engine", to_string(o.mode)},
                    {"rel_tol", o.rel_tol},
                    {"K", o.K},
                    {"rho_grid", o.rho_grid},
                    {"margin", o.margin},
                    {"null_factor", default_null_factor},
                    {"beta0", beta0_constant},
                    {"golden_version", golden::version}};
  side["m1_proxy"] = json::array();
  for (auto& [ee, p] : r.m1_proxy) side["m1_proxy"].push_back({{"e", ee}, {"m1_proxy", p}});
  side["disagreements"] = r.disagreements;
  side["exploratory"] = json::array();
  side["errors"] = json::array();
  for (auto& c : r.cells) {
    if (c.exploratory) side["exploratory"].push_back({{"m", c.m}, {"e", c.e}, {"block", c.block}});
    if (!c.error.empty()) side["errors"].push_back({{"m", c.m}, {"e", c.e}, {"block", c.block}, {"error", c.error}});
  }

  if (G.json_out) {
    json cells = json::array();
    for (auto& c : r.cells)
      cells.push_back({{"n", c.n},
                       {"m", c.m},
                       {"e", c.e},
                       {"block", c.block},
                       {"verdict", c.verdict},
                       {"closed_form", c.closed_form},
                       {"max_log_multiplier", num(c.max_log_multiplier)},
                       {"margin", num(c.margin)},
                       {"consistent", c.consistent},
                       {"exploratory", c.exploratory},
                       {"error", c.error}});
    side["cells"] = cells;
    emit(side);
  } else {
    std::ostringstream os;
    os << "n,m,e,block,verdict,max_log_multiplier,margin\n";
    for (auto& c : r.cells)
      os << c.n << "," << plain(c.m) << "," << plain(c.e) << "," << c.block << "," << c.verdict << ","
         << plain(c.max_log_multiplier) << "," << sci(c.margin) << "\n";
    emit_text(os.str());
    if (!G.out.empty()) {
      std::ofstream f(G.out + ".json");
      f << side.dump(2) << "\n";
    }
  }
  return r.disagreements == 0 ? 0 : 1;
}

int cmd_selftest() {
  auto checks = run_selftest();
  bool ok = true;
  json j = json::array();
  std::ostringstream os;
  for (auto& c : checks) {
    ok &= c.pass;
    j.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  if (G.json_out) emit(json{{"checks", j}, {"pass", ok}});
  else emit_text(os.str() + (ok ? "selftest passed\n" : "selftest FAILED\n"));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability of elliptic relative equilibria of the (1+n)-gon"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", G.json_out, "JSON output");
  app.add_option("--out", G.out, "write output to PATH");
  app.add_option("--rel-tol", G.rel_tol, "integrator relative tolerance")->check(CLI::Range(1e-13, 1e-6));
  app.add_option("--modes", G.modes, "Fourier truncation K")->check(CLI::Range(8, 4096));
  app.add_option("--rho-grid", G.rho_grid, "rho grid size for positivity certificates")->check(CLI::Range(16, 100000));
  app.add_option("--threads", G.threads, "worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("--allow-extreme-e", G.allow_extreme_e, "allow e > 0.99");

  int n = 0, block = 0;
  double m = 1.0, e = 0.0, alpha = 0, beta = 0;
  std::string range = "full", omega = "1", arange, which = "all", ms, es = "0", mode = "both";
  bool full = false, cert = false, no_check = false, no_margin = false;

  auto add_n = [&](CLI::App* c) { c->add_option("--n", n, "number of ring bodies")->required()->check(CLI::Range(2, max_ring)); };
  auto add_m = [&](CLI::App* c) { c->add_option("--m", m, "central mass")->check(CLI::NonNegativeNumber); };

  auto* coeffs = app.add_subcommand("coeffs", "ring coefficients");
  add_n(coeffs);
  add_m(coeffs);
  coeffs->add_option("--q-range", range, "Q_max range")->check(CLI::IsMember({"full", "odd"}));

  auto* blocks = app.add_subcommand("blocks", "reduced blocks and bounding pairs");
  add_n(blocks);
  add_m(blocks);
  blocks->add_option("--block", block);

  auto* verify = app.add_subcommand("verify-reduction", "check the symplectic block reduction");
  add_n(verify);
  add_m(verify);
  verify->add_flag("--full", full, "include block matrices");

  auto* mono = app.add_subcommand("monodromy", "monodromy matrices and verdicts");
  add_n(mono);
  add_m(mono);
  mono->add_option("--e", e)->required();
  mono->add_option("--block", block);

  auto* morse = app.add_subcommand("morse", "Morse index and nullity of the reduced blocks");
  add_n(morse);
  add_m(morse);
  morse->add_option("--e", e)->required();
  morse->add_option("--omega", omega, "1, -1 or rho=R");
  morse->add_option("--block", block);
  morse->add_flag("--certificate", cert, "sampled positivity certificate over the rho grid");

  auto* mab = app.add_subcommand("morse-ab", "Morse index and nullity of the two-parameter operator");
  mab->add_option("--alpha", alpha)->required()->check(CLI::NonNegativeNumber);
  mab->add_option("--beta", beta)->required()->check(CLI::NonNegativeNumber);
  mab->add_option("--e", e)->required();
  mab->add_option("--omega", omega, "1, -1 or rho=R");
  mab->add_flag("--certificate", cert);

  auto* curves = app.add_subcommand("curves", "degenerate curves of the e = 0 two-parameter system");
  curves->add_option("--alpha-range", arange, "lo:hi:step")->required();
  curves->add_flag("--no-check", no_check, "skip the nullity check");

  auto* th = app.add_subcommand("thresholds", "closed-form instability intervals");
  add_n(th);
  th->add_option("--q-range", range)->check(CLI::IsMember({"full", "odd"}));

  auto* tables = app.add_subcommand("tables", "reproduce the golden tables");
  tables->add_option("which", which)->check(CLI::IsMember({"sigma", "dcheck", "instability", "all"}));

  auto* sw = app.add_subcommand("sweep", "stability sweep over (m, e)");
  add_n(sw);
  sw->add_option("--m", ms, "list a,b,c or range lo:hi:step")->required();
  sw->add_option("--e", es, "list or range");
  sw->add_option("--engine", mode)->check(CLI::IsMember({"closed_form", "monodromy", "both"}));
  sw->add_flag("--no-margin", no_margin, "skip positivity margins");

  auto* st = app.add_subcommand("selftest", "orientation, residual and golden checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*coeffs) return cmd_coeffs(n, m, range);
    if (*blocks) return cmd_blocks(n, m, block);
    if (*verify) return cmd_verify(n, m, full);
    if (*mono) return cmd_monodromy(n, m, e, block);
    if (*morse) return cmd_morse(n, m, e, omega, block, cert);
    if (*mab) return cmd_morse_ab(alpha, beta, e, omega, cert);
    if (*curves) return cmd_curves(arange, !no_check);
    if (*th) return cmd_thresholds(n, range);
    if (*tables) return cmd_tables(which);
    if (*sw) return cmd_sweep(n, ms, es, mode, no_margin);
    if (*st) return cmd_selftest();
  } catch (const domain_error& x) {
    std::cerr << "error: " << x.what() << "\n";
    return 2;
  } catch (const std::exception& x) {
    std::cerr << "error: " << x.what() << "\n";
    return 3;
  }
  return 0;
}
