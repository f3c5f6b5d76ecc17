// crsphere: command-line driver for the sublaplacian spectral toolkit.
//
// Subcommands: spectrum, zonal, norms, kernel scan, kernel decay, fh-check,
// poisson-demo, strichartz quotient, strichartz growth-fit,
// strichartz duhamel, acceptance.
//
// Exit codes: 0 success, 1 validation error, 2 resolution-flag failure
// (a refinement/convergence check tripped or an acceptance criterion failed).
//
// Config file: flat `key = value` lines (see README); flags override file.

#include <charconv>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crsphere.hpp"
#include "crsphere/acceptance.hpp"
#include "crsphere/config.hpp"

namespace {

using crsphere::Complex;
using crsphere::Config;
using crsphere::CutoffSet;
using crsphere::ordered_json;
using crsphere::ZonalSpectralData;

// shortest round-trip decimal form, locale independent
std::string num(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// stdout unless --out was given
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output path: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const ordered_json& j, const std::string& out_path) {
  OutStream out(out_path);
  out.get() << j.dump(2) << "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

// coefficient CSV shared by `norms` and the strichartz subcommands:
//   ell,ellp,re,im
ZonalSpectralData read_coefficients(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file: " + path);
  ZonalSpectralData u{n, {}};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("ell", 0) == 0) continue;  // header
    std::stringstream ss(line);
    std::string f0, f1, f2, f3;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
        !std::getline(ss, f3, ','))
      throw std::invalid_argument("bad coefficient row at line " + std::to_string(lineno));
    u.coeff[{std::stoi(f0), std::stoi(f1)}] = Complex{std::stod(f2), std::stod(f3)};
  }
  if (u.coeff.empty()) throw std::invalid_argument("no coefficients in " + path);
  return u;
}

int cmd_spectrum(int n, int cap, const std::string& out_path) {
  OutStream out(out_path);
  auto& os = out.get();
  os << "ell,ellp,lambda,mu,dim,N,beta\n";
  for (int ell = 0; ell <= cap; ++ell) {
    for (int ellp = 0; ellp <= cap; ++ellp) {
      const auto ed = crsphere::eigen_data({ell, ellp}, n);
      os << ell << ',' << ellp << ',' << ed.lambda << ',' << ed.mu << ',' << ed.dim << ','
         << ed.N << ',' << ed.beta << "\n";
    }
  }
  return 0;
}

int cmd_zonal(int n, int ell, int ellp, int n_theta, int n_omega, const std::string& out_path) {
  const auto grid = crsphere::make_disk_grid(n, n_theta, n_omega);
  const auto zb = crsphere::zonal_block({ell, ellp}, n);
  OutStream out(out_path);
  auto& os = out.get();
  os << "theta,omega,re,im,abs\n";
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_omega; ++j) {
      const Complex z = zb.eval(grid.omega[j], grid.theta[i]);
      os << num(grid.theta[i]) << ',' << num(grid.omega[j]) << ',' << num(z.real()) << ','
         << num(z.imag()) << ',' << num(std::abs(z)) << "\n";
    }
  }
  return 0;
}

int cmd_norms(const std::string& in_path, int n, double r_cone, double r_edge, double M,
              const std::string& out_path) {
  const auto u = read_coefficients(in_path, n);
  ordered_json j;
  j["n"] = n;
  j["blocks"] = u.coeff.size();
  j["l2"] = crsphere::norm_w(u, 0.0);
  j["w"] = {{"1", crsphere::norm_w(u, 1.0)}, {"2", crsphere::norm_w(u, 2.0)}};
  j["h"] = {{"1", crsphere::norm_h(u, 1.0)}, {"2", crsphere::norm_h(u, 2.0)}};
  j["mixed"] = {{"r_cone", r_cone},
                {"r_edge", r_edge},
                {"M", M},
                {"value", crsphere::norm_mixed(u, r_cone, r_edge, M)}};
  emit_json(j, out_path);
  return 0;
}

int cmd_kernel_scan(double t, double h, int n, const std::string& loc_name, int n_theta,
                    int n_omega, const CutoffSet& cs, const std::string& out_path) {
  const auto loc = crsphere::localization_from_string(loc_name);
  const auto scan = crsphere::sup_scan(t, h, n, loc, cs, n_theta, n_omega);
  const auto floor = crsphere::l2_lower_bound(h, n, cs);
  ordered_json j;
  j["t"] = t;
  j["h"] = h;
  j["n"] = n;
  j["localization"] = loc_name;
  j["grid"] = {{"theta", n_theta}, {"omega", n_omega}};
  j["term_count"] = scan.term_count;
  j["sup_abs"] = scan.sup_abs;
  j["argmax_theta"] = scan.argmax_theta;
  j["argmax_omega"] = scan.argmax_omega;
  j["sup_scaled_qhalf"] = scan.sup_abs * std::pow(t, n + 1.0);
  j["l2_floor"] = floor.value;
  emit_json(j, out_path);
  return 0;
}

int cmd_kernel_decay(double h, int n, double s, const std::string& loc_name, int times,
                     int n_theta, int n_omega, const CutoffSet& cs, const std::string& out_path) {
  const auto loc = crsphere::localization_from_string(loc_name);
  const auto prof = crsphere::decay_profile(h, n, s, loc, times, cs, n_theta, n_omega);
  OutStream out(out_path);
  auto& os = out.get();
  os << "t,sup,sup_scaled\n";
  for (const auto& row : prof.rows)
    os << num(row.t) << ',' << num(row.sup) << ',' << num(row.sup_scaled) << "\n";
  std::cerr << "window [" << num(h * h) << ", " << num(std::pow(h, s)) << "]"
            << (prof.window_ok ? "" : " (empty; single sample at h^2)") << ", slope "
            << num(prof.slope) << ", scaled range [" << num(prof.min_scaled) << ", "
            << num(prof.max_scaled) << "]\n";
  return 0;
}

int cmd_fh_check(int alpha, int beta, const std::vector<int>& ells, double theta_lo,
                 double theta_hi, const std::string& out_path) {
  const auto rows = crsphere::fh_remainder_check(alpha, beta, ells, theta_lo, theta_hi);
  OutStream out(out_path);
  auto& os = out.get();
  os << "ell,N,sup_scaled,argmax_theta\n";
  for (const auto& row : rows)
    os << row.ell << ',' << num(row.N) << ',' << num(row.sup_scaled) << ','
       << num(row.argmax_theta) << "\n";
  return 0;
}

int cmd_poisson(const std::vector<double>& mus, const std::vector<double>& eps_factors, int L,
                const std::string& symbol_name, const CutoffSet& cs,
                const std::string& out_path) {
  crsphere::Symbol sigma;
  if (symbol_name == "unit")
    sigma = crsphere::unit_symbol();
  else if (symbol_name == "s0")
    sigma = crsphere::s0_test_symbol();
  else
    throw std::invalid_argument("unknown symbol: " + symbol_name + " (use unit or s0)");
  const auto rows = crsphere::poisson_bound_sweep(mus, eps_factors, L, cs.phi, sigma);
  OutStream out(out_path);
  auto& os = out.get();
  os << "mu,delta,eps,sum_abs,bound,ratio,skipped\n";
  for (const auto& row : rows)
    os << num(row.mu) << ',' << num(row.delta) << ',' << num(row.eps) << ',' << num(row.sum_abs)
       << ',' << num(row.bound) << ',' << num(row.ratio) << ',' << (row.skipped ? 1 : 0) << "\n";
  return 0;
}

int cmd_quotient(const std::string& in_path, int ell, int ellp, int n, double p, double s,
                 double M, double t0, double t1, int n_theta, int n_omega, int time_samples,
                 const std::string& out_path) {
  ZonalSpectralData u{n, {}};
  if (!in_path.empty()) {
    u = read_coefficients(in_path, n);
  } else {
    if (ell < 0 || ellp < 0)
      throw std::invalid_argument("provide --in or a nonnegative --ell/--ellp block");
    u.coeff[{ell, ellp}] = Complex{1.0, 0.0};
  }
  const auto grid = crsphere::make_disk_grid(n, n_theta, n_omega);
  const auto r = crsphere::strichartz_quotient(u, p, s, M, t0, t1, grid, time_samples);
  ordered_json j;
  j["p"] = p;
  j["q"] = r.q;
  j["s"] = s;
  j["M"] = M;
  j["interval"] = {t0, t1};
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator;
  j["value"] = r.value;
  j["converged"] = r.converged;
  j["s_below_threshold"] = r.s_below_threshold;
  emit_json(j, out_path);
  if (r.s_below_threshold)
    std::cerr << "note: s sits below the dispersive threshold for n=" << n << "\n";
  return r.converged ? 0 : 2;
}

int cmd_growth_fit(const std::string& family_name, double q, int n, const std::vector<int>& ells,
                   int n_theta, const std::string& out_path) {
  crsphere::ZonalFamily family;
  if (family_name == "diag")
    family = crsphere::ZonalFamily::Diag;
  else if (family_name == "holo")
    family = crsphere::ZonalFamily::Holo;
  else
    throw std::invalid_argument("unknown family: " + family_name + " (use diag or holo)");
  const auto fit = crsphere::eigenfunction_growth_fit(family, q, n, ells, n_theta);
  const auto ex = crsphere::optimality_exponents(q, n);
  ordered_json j;
  j["family"] = family_name;
  j["q"] = q;
  j["n"] = n;
  j["ells"] = ells;
  j["slope"] = fit.slope;
  j["predicted"] = family_name == "diag" ? ex.growth_cone() : ex.growth_edge();
  j["alpha"] = ex.alpha;
  j["beta"] = ex.beta;
  ordered_json pts = ordered_json::array();
  for (const auto& pt : fit.points) pts.push_back({pt.first, pt.second});
  j["points_log_lambda_log_ratio"] = std::move(pts);
  j["converged"] = fit.converged;
  emit_json(j, out_path);
  return fit.converged ? 0 : 2;
}

int cmd_duhamel(const std::string& in_path, int n, double t, int time_samples,
                const std::string& out_path) {
  const auto f0 = read_coefficients(in_path, n);
  const auto r = crsphere::duhamel([&](double) { return f0; }, n, t, time_samples);
  ordered_json j;
  j["n"] = n;
  j["t"] = t;
  j["forcing"] = "constant in time (coefficients from --in)";
  ordered_json rows = ordered_json::array();
  for (const auto& [idx, c] : r.value.coeff) {
    ordered_json row;
    row["ell"] = idx.ell;
    row["ellp"] = idx.ellp;
    row["re"] = c.real();
    row["im"] = c.imag();
    rows.push_back(std::move(row));
  }
  j["coefficients"] = std::move(rows);
  j["converged"] = r.converged;
  emit_json(j, out_path);
  return r.converged ? 0 : 2;
}

int cmd_acceptance(const crsphere::AcceptanceOptions& opts, const std::string& out_path) {
  const auto report = crsphere::run_acceptance(opts, std::cerr);
  emit_json(report.to_json(), out_path);
  return report.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  // the config file provides defaults; flags always override
  Config cfg;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
    if (!path.empty()) {
      try {
        cfg = Config::load(path);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
      }
    }
  }
  const auto sget = [&cfg](const std::string& key, const std::string& fb) {
    auto it = cfg.values().find(key);
    return it == cfg.values().end() ? fb : it->second;
  };

  CutoffSet cs;
  try {
    cs = crsphere::cutoffs_from_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"sublaplacian spectral toolkit for complex spheres"};
  app.require_subcommand(1);
  // --h is a real flag (frequency scale), so help keeps only its long form
  app.set_help_flag("--help", "print help");
  const auto sub = [](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");
    return cmd;
  };
  std::string config_path;  // parsed above; registered so CLI11 accepts it
  app.add_option("--config", config_path, "flat key=value config file (flags override)");

  int n = cfg.get_int("n", 1);
  double h = cfg.get_double("h", 0.1);
  double t = cfg.get_double("t", 0.01);
  double s = cfg.get_double("s", 4.0 / 3.0);
  double M = cfg.get_double("M", 4.0);
  double p = cfg.get_double("p", 2.0);
  double q = cfg.get_double("q", 6.0);
  int grid_theta = cfg.get_int("grid.theta", 180);
  int grid_omega = cfg.get_int("grid.omega", 256);
  std::string localization = sget("localization", "cone");
  std::string out_path = sget("out", "");
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 20260815));

  // spectrum
  auto* sp = sub(app.add_subcommand("spectrum", "eigenvalue/dimension table as CSV"));
  int cap = 20;
  sp->add_option("--n", n, "complex dimension n of S^{2n+1}");
  sp->add_option("--cap", cap, "max bidegree");
  sp->add_option("--out", out_path, "output path (default stdout)");

  // zonal
  auto* zo = sub(app.add_subcommand("zonal", "evaluate a zonal eigenfunction on the disk grid"));
  int ell = 1, ellp = 1;
  zo->add_option("--n", n);
  zo->add_option("--ell", ell)->required();
  zo->add_option("--ellp", ellp)->required();
  int zo_theta = 64, zo_omega = 16;
  zo->add_option("--grid-theta", zo_theta);
  zo->add_option("--grid-omega", zo_omega);
  zo->add_option("--out", out_path);

  // norms
  auto* no = sub(app.add_subcommand("norms", "Sobolev norms of a coefficient CSV"));
  std::string in_path;
  double r_cone = 1.0, r_edge = 0.5;
  no->add_option("--in", in_path, "coefficient CSV: ell,ellp,re,im")->required();
  no->add_option("--n", n);
  no->add_option("--r-cone", r_cone, "cone weight order of the mixed norm");
  no->add_option("--r-edge", r_edge, "edge weight order of the mixed norm");
  no->add_option("--M", M, "cone aperture");
  no->add_option("--out", out_path);

  // kernel scan|decay
  auto* ke = sub(app.add_subcommand("kernel", "frequency-localized propagator kernels"));
  ke->require_subcommand(1);
  auto* ks = sub(ke->add_subcommand("scan", "sup over the grid at one time"));
  ks->add_option("--n", n);
  ks->add_option("--h", h, "frequency scale in (0,1]");
  ks->add_option("--t", t, "time");
  ks->add_option("--localization", localization, "full|cone|edge|diag|plus|minus");
  ks->add_option("--grid-theta", grid_theta);
  ks->add_option("--grid-omega", grid_omega);
  ks->add_option("--out", out_path);
  auto* kd = sub(ke->add_subcommand("decay", "sup decay across the time window [h^2, h^s]"));
  int times = 12;
  kd->add_option("--n", n);
  kd->add_option("--h", h);
  kd->add_option("--s", s, "window exponent: t runs up to h^s");
  kd->add_option("--localization", localization);
  kd->add_option("--times", times, "number of log-spaced times");
  kd->add_option("--grid-theta", grid_theta);
  kd->add_option("--grid-omega", grid_omega);
  kd->add_option("--out", out_path);

  // fh-check
  auto* fh = sub(app.add_subcommand("fh-check", "Bessel comparison remainder sweep as CSV"));
  int alpha = 0, beta = 0;
  std::string ells_text = "20,40,80,160";
  double theta_lo = 0.01, theta_hi = 1.2;
  fh->add_option("--alpha", alpha);
  fh->add_option("--beta", beta);
  fh->add_option("--ells", ells_text, "comma-separated degree list");
  fh->add_option("--theta-lo", theta_lo);
  fh->add_option("--theta-hi", theta_hi);
  fh->add_option("--out", out_path);

  // poisson-demo
  auto* po = sub(app.add_subcommand("poisson-demo", "oscillatory sum vs envelope as CSV"));
  std::string mus_text = "0.1,0.25,0.5", eps_text = "1,0.5,0.1,0.01", symbol_name = "unit";
  int L = 3;
  po->add_option("--mus", mus_text, "phases (must avoid integers)");
  po->add_option("--eps-factors", eps_text, "eps as multiples of delta = dist(mu, Z)");
  po->add_option("--L", L, "envelope order");
  po->add_option("--symbol", symbol_name, "unit|s0");
  po->add_option("--out", out_path);

  // strichartz quotient|growth-fit|duhamel
  auto* str = sub(app.add_subcommand("strichartz", "space-time norms and probes"));
  str->require_subcommand(1);
  auto* sq = sub(str->add_subcommand("quotient", "space-time norm over mixed Sobolev norm"));
  double t0 = 0.0, t1 = 1.0;
  int time_samples = 32, q_theta = 256, q_omega = 8;
  int sq_ell = -1, sq_ellp = -1;
  sq->add_option("--in", in_path, "coefficient CSV (else --ell/--ellp unit block)");
  sq->add_option("--ell", sq_ell);
  sq->add_option("--ellp", sq_ellp);
  sq->add_option("--n", n);
  sq->add_option("--p", p, "time exponent (q follows by admissibility)");
  sq->add_option("--s", s, "regularity in the denominator");
  sq->add_option("--M", M);
  sq->add_option("--t0", t0);
  sq->add_option("--t1", t1);
  sq->add_option("--grid-theta", q_theta);
  sq->add_option("--grid-omega", q_omega);
  sq->add_option("--time-samples", time_samples);
  sq->add_option("--out", out_path);
  auto* sg = sub(str->add_subcommand("growth-fit", "L^q/L^2 growth slope of a zonal family"));
  std::string family = "diag", fit_ells_text = "8,16,32,64";
  int fit_theta = 384;
  sg->add_option("--family", family, "diag|holo");
  sg->add_option("--q", q, "Lebesgue exponent");
  sg->add_option("--n", n);
  sg->add_option("--ells", fit_ells_text);
  sg->add_option("--grid-theta", fit_theta);
  sg->add_option("--out", out_path);
  auto* sd = sub(str->add_subcommand("duhamel", "inhomogeneous integral for constant forcing"));
  sd->add_option("--in", in_path, "forcing coefficients: ell,ellp,re,im")->required();
  sd->add_option("--n", n);
  sd->add_option("--t", t, "final time (> 0)");
  sd->add_option("--time-samples", time_samples);
  sd->add_option("--out", out_path);

  // acceptance
  auto* ac = sub(app.add_subcommand("acceptance", "run the criteria suite, emit a JSON scorecard"));
  bool quick = false, skip_det = false;
  ac->add_option("--n", n);
  ac->add_flag("--quick", quick, "reduced grids and caps");
  ac->add_flag("--skip-determinism", skip_det, "used by the nested determinism runs");
  ac->add_option("--seed", seed);
  ac->add_option("--out", out_path, "scorecard path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(n, cap, out_path);
    if (zo->parsed()) return cmd_zonal(n, ell, ellp, zo_theta, zo_omega, out_path);
    if (no->parsed()) return cmd_norms(in_path, n, r_cone, r_edge, M, out_path);
    if (ke->parsed() && ks->parsed())
      return cmd_kernel_scan(t, h, n, localization, grid_theta, grid_omega, cs, out_path);
    if (ke->parsed() && kd->parsed())
      return cmd_kernel_decay(h, n, s, localization, times, grid_theta, grid_omega, cs, out_path);
    if (fh->parsed())
      return cmd_fh_check(alpha, beta, parse_int_list(ells_text), theta_lo, theta_hi, out_path);
    if (po->parsed())
      return cmd_poisson(parse_double_list(mus_text), parse_double_list(eps_text), L, symbol_name,
                         cs, out_path);
    if (str->parsed() && sq->parsed())
      return cmd_quotient(in_path, sq_ell, sq_ellp, n, p, s, M, t0, t1, q_theta, q_omega,
                          time_samples, out_path);
    if (str->parsed() && sg->parsed())
      return cmd_growth_fit(family, q, n, parse_int_list(fit_ells_text), fit_theta, out_path);
    if (str->parsed() && sd->parsed()) return cmd_duhamel(in_path, n, t, time_samples, out_path);
    if (ac->parsed()) {
      crsphere::AcceptanceOptions opts;
      opts.n = n;
      opts.quick = quick;
      opts.skip_determinism = skip_det;
      opts.seed = seed;
      opts.cli_path = argv[0];
      return cmd_acceptance(opts, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "no subcommand\n";
  return 1;
}
