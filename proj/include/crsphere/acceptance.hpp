#pragma once

// Acceptance suite shared by the CLI `acceptance` subcommand and the ctest
// harness.  Each criterion computes a statistic with pinned tolerances and
// records a one-line detail plus the raw numbers.  Everything here must be
// byte-deterministic across runs and thread counts: no clocks, no
// iteration-order-dependent reductions.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#if !defined(_WIN32)
#include <sys/wait.h>
#endif

#include <json.hpp>

#include "crsphere/asymptotics.hpp"
#include "crsphere/cutoffs.hpp"
#include "crsphere/geometry.hpp"
#include "crsphere/kernel.hpp"
#include "crsphere/sobolev.hpp"
#include "crsphere/spectrum.hpp"
#include "crsphere/strichartz.hpp"
#include "crsphere/zonal.hpp"

namespace crsphere {

using ordered_json = nlohmann::ordered_json;

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  bool skipped = false;
  std::string detail;
  ordered_json stats = ordered_json::object();
};

struct AcceptanceOptions {
  int n = 1;  // recorded; the criteria pin their own dimension sets
  bool quick = false;
  bool skip_determinism = false;
  std::uint64_t seed = 20260815ull;
  std::string cli_path;  // self path, used by the determinism criterion
};

struct AcceptanceReport {
  bool quick = false;
  int n = 1;
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass = true;

  ordered_json to_json() const {
    ordered_json j;
    j["suite"] = "crsphere-acceptance";
    j["schema_version"] = 1;
    j["quick"] = quick;
    j["n"] = n;
    j["seed"] = seed;
    ordered_json arr = ordered_json::array();
    for (const auto& c : criteria) {
      ordered_json e;
      e["id"] = c.id;
      e["title"] = c.title;
      e["pass"] = c.pass;
      e["skipped"] = c.skipped;
      e["detail"] = c.detail;
      e["stats"] = c.stats;
      arr.push_back(std::move(e));
    }
    j["criteria"] = std::move(arr);
    j["all_pass"] = all_pass;
    return j;
  }
};

namespace acceptance_detail {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Addition-only binomial table: an oracle for the dimension formula that
// shares no arithmetic with the library's product-form implementation.
class PascalTable {
 public:
  explicit PascalTable(int rows) : c_(static_cast<std::size_t>(rows) + 1) {
    for (int m = 0; m <= rows; ++m) {
      auto& row = c_[static_cast<std::size_t>(m)];
      row.assign(static_cast<std::size_t>(m) + 1, 1);
      for (int k = 1; k < m; ++k)
        row[static_cast<std::size_t>(k)] = c_[m - 1][k - 1] + c_[m - 1][k];
    }
  }
  std::int64_t choose(int m, int k) const {
    if (k < 0 || k > m || m < 0) return 0;
    return c_[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
  }

 private:
  std::vector<std::vector<std::int64_t>> c_;
};

inline std::int64_t dim_oracle(const PascalTable& pt, int ell, int ellp, int n) {
  const std::int64_t full = pt.choose(ell + n, n) * pt.choose(ellp + n, n);
  const std::int64_t sub =
      (ell >= 1 && ellp >= 1) ? pt.choose(ell - 1 + n, n) * pt.choose(ellp - 1 + n, n) : 0;
  return full - sub;
}

// ---- A1: exact spectral table ------------------------------------------

inline CriterionResult a1_spectral_table(bool quick) {
  CriterionResult r{"A1", "spectral table exactness"};
  const int cap = quick ? 24 : 50;
  PascalTable pt(cap + 4);
  std::int64_t checked = 0, mismatches = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int ell = 0; ell <= cap; ++ell) {
      for (int ellp = 0; ellp <= cap; ++ellp) {
        const auto ed = eigen_data({ell, ellp}, n);
        const std::int64_t lam = 2ll * ell * ellp + static_cast<std::int64_t>(n) * (ell + ellp);
        const std::int64_t sum = ell + ellp;
        const std::int64_t mu = sum * (sum + 2ll * n);
        const std::int64_t dim = dim_oracle(pt, ell, ellp, n);
        ++checked;
        if (ed.lambda != lam || ed.mu != mu || ed.dim != dim || ed.N != sum + n ||
            ed.beta != std::abs(ell - ellp))
          ++mismatches;
      }
    }
  }
  r.pass = mismatches == 0;
  r.detail = std::to_string(checked) + " triples over n in {1,2,3}, cap " + std::to_string(cap) +
             ", mismatches " + std::to_string(mismatches);
  r.stats["checked"] = checked;
  r.stats["mismatches"] = mismatches;
  r.stats["cap"] = cap;
  return r;
}

// ---- A2: reproducing mass and orthogonality ----------------------------

inline CriterionResult a2_zonal_mass_orthogonality(bool quick) {
  CriterionResult r{"A2", "zonal mass and orthogonality"};
  const int cap = quick ? 12 : 40;
  const int n_theta = quick ? 320 : 768;
  const std::vector<int> dims = quick ? std::vector<int>{1} : std::vector<int>{1, 2};
  double worst_mass = 0.0, worst_orth = 0.0;
  for (int n : dims) {
    const auto grid = make_disk_grid(n, n_theta, 4);
    const double omega_s = surface_area(n);
    const int count = (cap + 1) * (cap + 1);
    std::vector<std::vector<double>> profile(static_cast<std::size_t>(count));
    std::vector<double> mass(static_cast<std::size_t>(count));
    std::vector<int> phase(static_cast<std::size_t>(count));
    for (int ell = 0; ell <= cap; ++ell) {
      for (int ellp = 0; ellp <= cap; ++ellp) {
        const int id = ell * (cap + 1) + ellp;
        const auto zb = zonal_block({ell, ellp}, n);
        auto& row = profile[static_cast<std::size_t>(id)];
        row.resize(static_cast<std::size_t>(n_theta));
        for (int i = 0; i < n_theta; ++i) row[static_cast<std::size_t>(i)] = zb.theta_factor(grid.theta[i]);
        std::vector<double> parts(static_cast<std::size_t>(n_theta));
        for (int i = 0; i < n_theta; ++i)
          parts[static_cast<std::size_t>(i)] = grid.theta_weight[i] * row[i] * row[i];
        mass[static_cast<std::size_t>(id)] = tree_sum(parts);
        phase[static_cast<std::size_t>(id)] = zb.phase;
        const double target = static_cast<double>(eigen_data({ell, ellp}, n).dim) / omega_s;
        worst_mass = std::max(worst_mass, std::abs(mass[id] - target) / target);
      }
    }
    // same-phase pairs: the angular integral is 1, so the theta Gram decides
    for (int s = -cap; s <= cap; ++s) {
      std::vector<int> group;
      for (int id = 0; id < count; ++id)
        if (phase[static_cast<std::size_t>(id)] == s) group.push_back(id);
      for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          const auto& fa = profile[static_cast<std::size_t>(group[a])];
          const auto& fb = profile[static_cast<std::size_t>(group[b])];
          std::vector<double> parts(static_cast<std::size_t>(n_theta));
          for (int i = 0; i < n_theta; ++i)
            parts[static_cast<std::size_t>(i)] = grid.theta_weight[i] * fa[i] * fb[i];
          const double ip = std::abs(tree_sum(parts));
          worst_orth = std::max(
              ip / std::sqrt(mass[static_cast<std::size_t>(group[a])] *
                             mass[static_cast<std::size_t>(group[b])]),
              worst_orth);
        }
      }
    }
    // cross-phase pairs: bounded by the discrete angular average of
    // e^{i (s_a - s_b) omega}, which vanishes for 0 < |ds| < n_omega
    const int n_omega = 4 * cap + 8;
    for (int ds = 1; ds <= 2 * cap; ++ds) {
      Complex acc{0.0, 0.0};
      for (int j = 0; j < n_omega; ++j) {
        const double ang = 2.0 * kPi * ds * j / n_omega;
        acc += Complex{std::cos(ang), std::sin(ang)};
      }
      worst_orth = std::max(worst_orth, std::abs(acc) / n_omega);
    }
  }
  const bool mass_ok = worst_mass <= 1e-6;
  const bool orth_ok = worst_orth <= 1e-8;
  r.pass = mass_ok && orth_ok;
  r.detail = "mass rel err " + fmt(worst_mass) + " (tol 1e-6), orthogonality " + fmt(worst_orth) +
             " (tol 1e-8), cap " + std::to_string(cap);
  r.stats["max_mass_rel_err"] = worst_mass;
  r.stats["max_orthogonality"] = worst_orth;
  r.stats["cap"] = cap;
  r.stats["n_theta"] = n_theta;
  return r;
}

// ---- A3: pointwise zonal bound -----------------------------------------

inline CriterionResult a3_zonal_bound(bool quick) {
  CriterionResult r{"A3", "pointwise zonal bound"};
  const int cap = quick ? 16 : 60;
  const int n_theta = quick ? 96 : 180;
  const int n_omega = quick ? 64 : 256;
  const auto grid = make_disk_grid(1, n_theta, n_omega);
  const double omega_s = surface_area(1);
  double worst = 0.0;
  int worst_ell = 0, worst_ellp = 0;
  for (int ell = 0; ell <= cap; ++ell) {
    for (int ellp = 0; ellp <= cap; ++ellp) {
      const auto zb = zonal_block({ell, ellp}, 1);
      const double d = static_cast<double>(eigen_data({ell, ellp}, 1).dim);
      double mx = 0.0;
      // |Z| is independent of the angular coordinate, so the omega axis of
      // the grid contributes identical columns; scan the theta axis once
      for (int i = 0; i < n_theta; ++i) mx = std::max(mx, std::abs(zb.theta_factor(grid.theta[i])));
      const double ratio = mx * omega_s / d;
      if (ratio > worst) {
        worst = ratio;
        worst_ell = ell;
        worst_ellp = ellp;
      }
    }
  }
  r.pass = worst <= 1.0 + 1e-9;
  r.detail = "max |Z| omega/d = " + fmt(worst) + " at (" + std::to_string(worst_ell) + "," +
             std::to_string(worst_ellp) + "), grid " + std::to_string(n_theta) + "x" +
             std::to_string(n_omega);
  r.stats["max_ratio"] = worst;
  r.stats["cap"] = cap;
  return r;
}

// ---- A4: hyperbolic counting bound -------------------------------------

inline CriterionResult a4_counting_bound(bool quick) {
  CriterionResult r{"A4", "hyperbolic counting bound"};
  std::vector<double> bs{1e2, 1e3, 1e4};
  if (!quick) bs.push_back(1e5);
  double lo = 1e300, hi = 0.0;
  ordered_json rows = ordered_json::array();
  for (double b : bs) {
    for (double a : {b / 2.0, 1.0}) {
      const auto hsum = hyperbolic_sum(a, b, 1);
      lo = std::min(lo, hsum.bound_ratio);
      hi = std::max(hi, hsum.bound_ratio);
      ordered_json row;
      row["a"] = a;
      row["b"] = b;
      row["sum"] = hsum.sum;
      row["ratio"] = hsum.bound_ratio;
      rows.push_back(std::move(row));
    }
  }
  r.pass = lo > 0.0 && hi / lo < 3.0;
  r.detail = "ratio interval [" + fmt(lo) + ", " + fmt(hi) + "], spread " + fmt(hi / lo) +
             " (tol < 3)";
  r.stats["min_ratio"] = lo;
  r.stats["max_ratio"] = hi;
  r.stats["spread"] = hi / lo;
  r.stats["rows"] = std::move(rows);
  return r;
}

// ---- A5: spectral window L2 floor --------------------------------------

inline CriterionResult a5_l2_floor(bool quick) {
  CriterionResult r{"A5", "spectral window L2 floor"};
  std::vector<double> hs{0.2, 0.1, 0.05};
  if (!quick) hs.push_back(0.025);
  double lo = 1e300, hi = 0.0;
  ordered_json rows = ordered_json::array();
  for (double h : hs) {
    const auto f = l2_lower_bound(h, 1);
    lo = std::min(lo, f.value);
    hi = std::max(hi, f.value);
    ordered_json row;
    row["h"] = h;
    row["value"] = f.value;
    rows.push_back(std::move(row));
  }
  r.pass = lo > 0.0 && hi / lo < 4.0;
  r.detail = "h^{n+1} sqrt(sum) in [" + fmt(lo) + ", " + fmt(hi) + "], spread " + fmt(hi / lo) +
             " (tol < 4)";
  r.stats["min_value"] = lo;
  r.stats["max_value"] = hi;
  r.stats["spread"] = hi / lo;
  r.stats["rows"] = std::move(rows);
  return r;
}

// ---- A6: dispersive decay on the cone and edge windows -----------------

// Diagnostic fit: slope of log sup vs log t over the longest initial run
// of strictly decreasing sup values.  The integer spectrum partially
// realigns later in the window (t/h^2 of a few), lifting sup back up, so
// this isolates the pre-revival decay segment.
inline double decreasing_prefix_slope(const std::vector<DecayRow>& rows) {
  std::size_t m = 1;
  while (m < rows.size() && rows[m].sup < rows[m - 1].sup) ++m;
  m = std::max<std::size_t>(m, 2);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(rows[i].t);
    const double y = std::log(std::max(rows[i].sup, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double md = static_cast<double>(m);
  return (md * sxy - sx * sy) / (md * sxx - sx * sx);
}

inline CriterionResult a6_dispersive_decay(bool quick) {
  CriterionResult r{"A6", "dispersive kernel decay"};
  const std::vector<double> hs = quick ? std::vector<double>{0.2, 0.1}
                                       : std::vector<double>{0.2, 0.1, 0.05};
  const int times = quick ? 6 : 12;
  const int n_theta = quick ? 96 : 180;
  const int n_omega = quick ? 128 : 256;
  double cone_lo = 1e300, cone_hi = 0.0, edge_lo = 1e300, edge_hi = 0.0;
  double worst_slope = -1e300, worst_prefix = -1e300;
  ordered_json rows = ordered_json::array();
  bool windows_ok = true;
  for (double h : hs) {
    const auto cone = decay_profile(h, 1, 4.0 / 3.0, Localization::Cone, times,
                                    CutoffSet::defaults(), n_theta, n_omega);
    windows_ok = windows_ok && cone.window_ok;
    cone_lo = std::min(cone_lo, cone.max_scaled);
    cone_hi = std::max(cone_hi, cone.max_scaled);
    worst_slope = std::max(worst_slope, cone.slope);
    const double prefix = decreasing_prefix_slope(cone.rows);
    worst_prefix = std::max(worst_prefix, prefix);
    const auto edge = decay_profile_window(h, 1, Localization::Edge, 0.5 * h * h, h * h, times,
                                           CutoffSet::defaults(), n_theta, n_omega);
    edge_lo = std::min(edge_lo, edge.max_scaled);
    edge_hi = std::max(edge_hi, edge.max_scaled);
    ordered_json row;
    row["h"] = h;
    row["cone_max_scaled"] = cone.max_scaled;
    row["cone_slope"] = cone.slope;
    row["cone_prefix_slope"] = prefix;
    row["edge_max_scaled"] = edge.max_scaled;
    rows.push_back(std::move(row));
  }
  const double cone_spread = cone_hi / cone_lo;
  const double edge_spread = edge_hi / edge_lo;
  const bool slope_ok = worst_slope <= -1.5;
  r.pass = windows_ok && cone_spread < 6.0 && edge_spread < 6.0 && slope_ok;
  r.detail = "cone sup*t^2 spread " + fmt(cone_spread) + " (tol < 6), worst slope " +
             fmt(worst_slope) + " (tol <= -1.5), edge spread " + fmt(edge_spread) + " (tol < 6)";
  if (!slope_ok) {
    // The envelope statistic above is the theorem-shaped quantity and is
    // stable; the raw least-squares fit mixes the slow onset at t ~ h^2
    // (phases lambda*t of order one) with partial revivals of the integer
    // spectrum near t ~ h^{4/3}, so it lands well above the ideal -Q/2.
    r.detail += "; full-window fit is flattened by onset near t=h^2 and spectral revivals near "
                "t=h^{4/3}; pre-revival segment slopes reach " +
                fmt(worst_prefix);
  }
  r.stats["cone_spread"] = cone_spread;
  r.stats["edge_spread"] = edge_spread;
  r.stats["worst_cone_slope"] = worst_slope;
  r.stats["worst_cone_prefix_slope"] = worst_prefix;
  r.stats["rows"] = std::move(rows);
  return r;
}

// ---- A7: compact-set sup away from the pole ----------------------------

inline CriterionResult a7_compact_regime(bool quick) {
  CriterionResult r{"A7", "compact-set kernel bound"};
  const std::vector<double> hs = quick ? std::vector<double>{0.2, 0.1}
                                       : std::vector<double>{0.2, 0.1, 0.05};
  const int times = quick ? 5 : 8;
  const int n_theta = quick ? 96 : 180;
  const int n_omega = quick ? 128 : 256;
  double lo = 1e300, hi = 0.0;
  ordered_json rows = ordered_json::array();
  for (double h : hs) {
    const double t_lo = h * h, t_hi = std::pow(h, 4.0 / 3.0);
    double stat = 0.0;
    for (int k = 0; k < times; ++k) {
      const double t =
          std::exp(std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * k / (times - 1));
      const auto scan = sup_scan(t, h, 1, Localization::Full, CutoffSet::defaults(), n_theta,
                                 n_omega);
      stat = std::max(stat, sup_restricted(scan, 0.3) * h * h);
    }
    lo = std::min(lo, stat);
    hi = std::max(hi, stat);
    ordered_json row;
    row["h"] = h;
    row["max_scaled"] = stat;
    rows.push_back(std::move(row));
  }
  r.pass = lo > 0.0 && hi / lo < 4.0;
  r.detail = "sup_{theta>=0.3}|K_full| h^2 in [" + fmt(lo) + ", " + fmt(hi) + "], spread " +
             fmt(hi / lo) + " (tol < 4)";
  r.stats["min"] = lo;
  r.stats["max"] = hi;
  r.stats["spread"] = hi / lo;
  r.stats["rows"] = std::move(rows);
  return r;
}

// ---- A8: oscillatory-sum envelope stability ----------------------------

inline CriterionResult a8_poisson_envelope(bool) {
  CriterionResult r{"A8", "oscillatory sum envelope"};
  const std::vector<double> mus{0.1, 0.25, 0.5};
  const std::vector<double> base{1.0, 0.5, 0.1, 0.01};
  std::vector<double> extended = base;
  extended.push_back(0.001);
  const auto phi = CutoffSet::defaults().phi;
  bool ok = true;
  std::string parts;
  ordered_json stats = ordered_json::object();
  const char* names[2] = {"unit", "s0"};
  const Symbol symbols[2] = {unit_symbol(), s0_test_symbol()};
  for (int k = 0; k < 2; ++k) {
    double c_base = 0.0, c_ext = 0.0;
    for (const auto& row : poisson_bound_sweep(mus, base, 3, phi, symbols[k]))
      if (!row.skipped) c_base = std::max(c_base, row.ratio);
    for (const auto& row : poisson_bound_sweep(mus, extended, 3, phi, symbols[k]))
      if (!row.skipped) c_ext = std::max(c_ext, row.ratio);
    const double drift = (c_ext - c_base) / c_base;
    ok = ok && std::isfinite(c_base) && c_base > 0.0 && drift < 0.2;
    if (k) parts += ", ";
    parts += std::string(names[k]) + ": C=" + fmt(c_base) + " drift " + fmt(drift);
    stats[names[k]] = {{"constant", c_base}, {"extended", c_ext}, {"drift", drift}};
  }
  r.pass = ok;
  r.detail = parts + " (tol drift < 0.2)";
  r.stats = std::move(stats);
  return r;
}

// ---- A9: Bessel comparison remainder -----------------------------------

inline CriterionResult a9_fh_remainder(bool quick) {
  CriterionResult r{"A9", "Bessel comparison remainder"};
  const std::vector<int> ells = quick ? std::vector<int>{20, 40, 80}
                                      : std::vector<int>{20, 40, 80, 160};
  const std::pair<int, int> params[] = {{0, 0}, {0, 5}, {1, 3}, {2, 0}};
  bool ok = true;
  double worst_spread = 0.0;
  ordered_json stats = ordered_json::array();
  for (const auto& [alpha, beta] : params) {
    const auto rows = fh_remainder_check(alpha, beta, ells);
    double lo = 1e300, hi = 0.0;
    for (const auto& row : rows) {
      lo = std::min(lo, row.sup_scaled);
      hi = std::max(hi, row.sup_scaled);
    }
    const double spread = hi / lo;
    worst_spread = std::max(worst_spread, spread);
    ok = ok && spread < 3.0;
    ordered_json e;
    e["alpha"] = alpha;
    e["beta"] = beta;
    e["min"] = lo;
    e["max"] = hi;
    e["spread"] = spread;
    stats.push_back(std::move(e));
  }
  r.pass = ok;
  r.detail = "worst scaled-remainder spread " + fmt(worst_spread) + " (tol < 3) over 4 (alpha,beta) pairs";
  r.stats["pairs"] = std::move(stats);
  r.stats["worst_spread"] = worst_spread;
  return r;
}

// ---- A10: dyadic partition of unity ------------------------------------

inline CriterionResult a10_lp_partition(bool quick) {
  CriterionResult r{"A10", "dyadic partition of unity"};
  const int J = 10;
  const int points = quick ? 2000 : 10000;
  const auto [low, bands] = lp_partition(J);
  const double top = std::ldexp(1.0, 2 * J - 1);  // 4^J / 2
  double worst = 0.0;
  for (int k = -1; k < points; ++k) {
    // k = -1 probes lambda = 0; the rest is a log grid of [1e-3, 4^J/2]
    const double lam = k < 0 ? 0.0 : 1e-3 * std::pow(top / 1e-3, static_cast<double>(k) / (points - 1));
    double sum = low.eval(lam);
    for (const auto& band : bands) sum += band.eval(lam);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  r.pass = worst <= 1e-12;
  r.detail = "max |partition - 1| = " + fmt(worst) + " on " + std::to_string(points) +
             " log points of [0, 2^19], J=10 (tol 1e-12)";
  r.stats["max_defect"] = worst;
  r.stats["points"] = points;
  return r;
}

// ---- A11: space-time norm identity and quotient sweep ------------------

inline CriterionResult a11_strichartz(bool quick) {
  CriterionResult r{"A11", "space-time norms and quotients"};
  // single-block product identity
  ZonalSpectralData u{1, {}};
  u.coeff[{3, 3}] = Complex{0.8, -0.6};
  const auto id_grid = make_disk_grid(1, 192, 4);
  const auto st = spacetime_norm(u, 2.0, 4.0, 0.0, 0.7, 8, id_grid);
  const double expected = std::sqrt(0.7) * lq_norm(u, id_grid, 4.0);
  const double id_err = std::abs(st.value - expected) / expected;

  // diagonal quotient sweep
  const std::vector<int> ells = quick ? std::vector<int>{4, 8, 16}
                                      : std::vector<int>{4, 8, 16, 32, 64};
  const auto grid = make_disk_grid(1, quick ? 192 : 320, 4);
  std::vector<double> q_values;
  ordered_json rows = ordered_json::array();
  bool all_converged = st.converged;
  for (int ell : ells) {
    ZonalSpectralData v{1, {}};
    v.coeff[{ell, ell}] = Complex{1.0, 0.0};
    const auto quo = strichartz_quotient(v, 2.0, 4.0 / 3.0, 4.0, 0.0, 0.5, grid);
    all_converged = all_converged && quo.converged;
    q_values.push_back(quo.value);
    ordered_json row;
    row["ell"] = ell;
    row["quotient"] = quo.value;
    rows.push_back(std::move(row));
  }
  const double trend = q_values.back() / q_values.front();
  r.pass = id_err <= 1e-6 && trend < 2.0 && all_converged;
  r.detail = "identity rel err " + fmt(id_err) + " (tol 1e-6), quotient last/first " + fmt(trend) +
             " (tol < 2)";
  r.stats["identity_rel_err"] = id_err;
  r.stats["quotient_trend"] = trend;
  r.stats["rows"] = std::move(rows);
  return r;
}

// ---- A12: eigenfunction growth exponents -------------------------------

inline CriterionResult a12_growth_exponents(bool quick) {
  CriterionResult r{"A12", "eigenfunction growth exponents"};
  const std::vector<int> ells = quick ? std::vector<int>{8, 16, 32}
                                      : std::vector<int>{8, 16, 32, 64};
  const int n_theta = quick ? 256 : 384;
  const auto ex = optimality_exponents(6.0, 1);
  const double diag_target = ex.growth_cone();  // 1/12
  const double holo_target = ex.growth_edge();  // 1/3
  const auto diag = eigenfunction_growth_fit(ZonalFamily::Diag, 6.0, 1, ells, n_theta);
  const auto holo = eigenfunction_growth_fit(ZonalFamily::Holo, 6.0, 1, ells, n_theta);
  const double diag_err = std::abs(diag.slope - diag_target);
  const double holo_err = std::abs(holo.slope - holo_target);
  r.pass = diag.converged && holo.converged && diag_err <= 0.05 && holo_err <= 0.05;
  r.detail = "diag slope " + fmt(diag.slope) + " vs 1/12 (err " + fmt(diag_err) +
             "), holo slope " + fmt(holo.slope) + " vs 1/3 (err " + fmt(holo_err) +
             ") (tol 0.05)";
  r.stats["diag_slope"] = diag.slope;
  r.stats["diag_target"] = diag_target;
  r.stats["holo_slope"] = holo.slope;
  r.stats["holo_target"] = holo_target;
  return r;
}

// ---- A13: byte determinism across runs and thread counts ---------------

inline bool read_file_bytes(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

inline CriterionResult a13_determinism(const AcceptanceOptions& opts) {
  CriterionResult r{"A13", "determinism across threads"};
  if (opts.skip_determinism || opts.cli_path.empty()) {
    r.skipped = true;
    r.pass = true;
    r.detail = "determinism check disabled for nested run";
    return r;
  }
  const std::string base = "/tmp/crsphere_det_" + std::to_string(opts.seed);
  const int threads[3] = {1, 1, 4};
  std::string bytes[3];
  bool ok = true;
  std::string why;
  for (int k = 0; k < 3; ++k) {
    const std::string out = base + "_" + std::to_string(k) + ".json";
    std::remove(out.c_str());
    const std::string cmd = "CRSPHERE_THREADS=" + std::to_string(threads[k]) + " \"" +
                            opts.cli_path + "\" acceptance --quick --skip-determinism --seed " +
                            std::to_string(opts.seed) + " --out \"" + out + "\" >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
#if defined(_WIN32)
    const int code = rc;
#else
    const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#endif
    // 0 = all criteria pass, 2 = some criterion failed; either way the
    // scorecard is complete and byte-comparison is meaningful.
    if (code != 0 && code != 2) {
      ok = false;
      why = "nested run " + std::to_string(k) + " exited " + std::to_string(code);
      break;
    }
    if (!read_file_bytes(out, bytes[k])) {
      ok = false;
      why = "nested run " + std::to_string(k) + " wrote no scorecard";
      break;
    }
    std::remove(out.c_str());
  }
  if (ok) {
    if (bytes[0] != bytes[1]) {
      ok = false;
      why = "repeat run differs at equal thread count";
    } else if (bytes[0] != bytes[2]) {
      ok = false;
      why = "scorecard differs between CRSPHERE_THREADS=1 and 4";
    }
  }
  r.pass = ok;
  r.detail = ok ? "3 nested quick runs byte-identical (threads 1,1,4), " +
                      std::to_string(bytes[0].size()) + " bytes"
                : why;
  r.stats["runs"] = 3;
  return r;
}

}  // namespace acceptance_detail

/// Runs the full criteria suite.  `log` receives one line per criterion.
inline AcceptanceReport run_acceptance(const AcceptanceOptions& opts, std::ostream& log) {
  using namespace acceptance_detail;
  AcceptanceReport rep;
  rep.quick = opts.quick;
  rep.n = opts.n;
  rep.seed = opts.seed;
  const bool q = opts.quick;
  std::vector<CriterionResult> results;
  results.push_back(a1_spectral_table(q));
  results.push_back(a2_zonal_mass_orthogonality(q));
  results.push_back(a3_zonal_bound(q));
  results.push_back(a4_counting_bound(q));
  results.push_back(a5_l2_floor(q));
  results.push_back(a6_dispersive_decay(q));
  results.push_back(a7_compact_regime(q));
  results.push_back(a8_poisson_envelope(q));
  results.push_back(a9_fh_remainder(q));
  results.push_back(a10_lp_partition(q));
  results.push_back(a11_strichartz(q));
  results.push_back(a12_growth_exponents(q));
  results.push_back(a13_determinism(opts));
  for (auto& c : results) {
    log << c.id << " " << c.title << ": "
        << (c.skipped ? "skip" : (c.pass ? "pass" : "FAIL")) << " - " << c.detail << "\n";
    rep.all_pass = rep.all_pass && c.pass;
    rep.criteria.push_back(std::move(c));
  }
  log << (rep.all_pass ? "all criteria pass" : "criteria FAILED") << "\n";
  return rep;
}

}  // namespace crsphere
