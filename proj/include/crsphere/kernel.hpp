#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "crsphere/cutoffs.hpp"
#include "crsphere/geometry.hpp"
#include "crsphere/spectrum.hpp"
#include "crsphere/summation.hpp"
#include "crsphere/zonal.hpp"

namespace crsphere {

/// Spectral localization of the propagator kernel.  Cone/Edge split by the
/// smooth ratio profile psi(ellp/ell); Diag/Plus/Minus further split the
/// cone by the difference cutoffs eta(ellp - ell).
enum class Localization { Full, Cone, Edge, Diag, Plus, Minus };

inline const char* to_string(Localization loc) {
  switch (loc) {
    case Localization::Full: return "full";
    case Localization::Cone: return "cone";
    case Localization::Edge: return "edge";
    case Localization::Diag: return "diag";
    case Localization::Plus: return "plus";
    case Localization::Minus: return "minus";
  }
  return "?";
}

inline Localization localization_from_string(const std::string& s) {
  if (s == "full") return Localization::Full;
  if (s == "cone") return Localization::Cone;
  if (s == "edge") return Localization::Edge;
  if (s == "diag") return Localization::Diag;
  if (s == "plus") return Localization::Plus;
  if (s == "minus") return Localization::Minus;
  throw std::invalid_argument("unknown localization: " + s);
}

/// psi(ellp/ell) with the ell = 0 ray assigned ratio weight 0, so both rays
/// land in the edge piece.
inline double localization_weight(Localization loc, int ell, int ellp, const CutoffSet& cs) {
  const double psi =
      ell == 0 ? 0.0 : cs.psi.eval(static_cast<double>(ellp) / static_cast<double>(ell));
  switch (loc) {
    case Localization::Full: return 1.0;
    case Localization::Cone: return psi;
    case Localization::Edge: return 1.0 - psi;
    case Localization::Diag: return cs.eta.eta0.eval(static_cast<double>(ellp - ell)) * psi;
    case Localization::Plus: return cs.eta.plus.eval(static_cast<double>(ellp - ell)) * psi;
    case Localization::Minus: return cs.eta.minus.eval(static_cast<double>(ellp - ell)) * psi;
  }
  return 0.0;
}

/// One summand of the localized kernel at frequency scale h:
/// amplitude * e^{i t lambda} * Z_block(point).
struct KernelTerm {
  int ell;
  int ellp;
  double lambda;
  double amplitude;  // phi(h^2 lambda) * localization weight, >= 0
  ZonalBlock blk;
};

/// Terms of the annulus sup phi(h^2 .) in lexicographic (ell, ellp) order;
/// zero-amplitude terms are dropped.
inline std::vector<KernelTerm> kernel_terms(double h, int n, Localization loc,
                                            const CutoffSet& cs) {
  if (!(h > 0.0)) throw std::invalid_argument("kernel_terms: h > 0 required");
  const auto ann = enumerate_annulus(cs.phi.support_lo(), cs.phi.support_hi(), h, n);
  std::vector<KernelTerm> terms;
  terms.reserve(ann.size());
  for (const auto& ed : ann) {
    const double lambda = static_cast<double>(ed.lambda);
    const double amp =
        cs.phi.eval(h * h * lambda) * localization_weight(loc, ed.idx.ell, ed.idx.ellp, cs);
    if (amp == 0.0) continue;
    terms.push_back({ed.idx.ell, ed.idx.ellp, lambda, amp, zonal_block(ed.idx, n)});
  }
  return terms;
}

/// Kernel value at one disk point (reference path: direct tree sum over the
/// lexicographically ordered terms).
inline Complex kernel_value(double t, double h, int n, double omega_angle, double theta,
                            Localization loc, const CutoffSet& cs = CutoffSet::defaults()) {
  const auto terms = kernel_terms(h, n, loc, cs);
  std::vector<Complex> vals;
  vals.reserve(terms.size());
  for (const auto& tm : terms) {
    const double arg = t * tm.lambda;
    vals.push_back(Complex{std::cos(arg), std::sin(arg)} * tm.amplitude *
                   tm.blk.eval(omega_angle, theta));
  }
  return tree_sum(vals);
}

inline Complex kernel_value(double t, double h, int n, const DiskPoint& p, Localization loc,
                            const CutoffSet& cs = CutoffSet::defaults()) {
  return kernel_value(t, h, n, p.omega_angle, p.theta, loc, cs);
}

/// Full-grid kernel scan.  values is theta-major over the scan grid.
struct KernelScan {
  double t = 0.0;
  double h = 1.0;
  int n = 1;
  Localization loc = Localization::Full;
  ScanGrid grid;
  std::vector<Complex> values;
  double sup_abs = 0.0;
  double argmax_theta = 0.0;
  double argmax_omega = 0.0;
  std::size_t term_count = 0;
};

namespace detail {

/// Evaluates the scan row at fixed theta.  The angular sum is factorized:
/// terms sharing the signed phase s = ellp - ell are merged (in term order)
/// into G_s, then K(omega) = sum_s G_s e^{i s omega} is swept with a phase
/// recurrence over the contiguous s range.
inline void scan_row(const std::vector<KernelTerm>& terms, const std::vector<Complex>& phase_t,
                     double theta, const std::vector<double>& omegas, int s_min, int s_max,
                     Complex* out_row) {
  const int span = s_max - s_min + 1;
  std::vector<Complex> G(static_cast<std::size_t>(span), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double d = terms[k].blk.theta_factor(theta);
    if (d != 0.0) G[static_cast<std::size_t>(terms[k].blk.phase - s_min)] += phase_t[k] * d;
  }
  const std::size_t n_omega = omegas.size();
  for (std::size_t j = 0; j < n_omega; ++j) {
    const double w = omegas[j];
    const Complex step{std::cos(w), std::sin(w)};
    Complex cur{std::cos(s_min * w), std::sin(s_min * w)};
    Complex acc{0.0, 0.0};
    for (int s = 0; s < span; ++s) {
      acc += G[static_cast<std::size_t>(s)] * cur;
      cur *= step;
    }
    out_row[j] = acc;
  }
}

}  // namespace detail

inline KernelScan sup_scan(double t, double h, int n, Localization loc,
                           const CutoffSet& cs = CutoffSet::defaults(), int n_theta = 180,
                           int n_omega = 256) {
  KernelScan scan;
  scan.t = t;
  scan.h = h;
  scan.n = n;
  scan.loc = loc;
  scan.grid = make_scan_grid(n_theta, n_omega);
  const auto terms = kernel_terms(h, n, loc, cs);
  scan.term_count = terms.size();
  scan.values.assign(static_cast<std::size_t>(n_theta) * n_omega, Complex{0.0, 0.0});
  if (terms.empty()) return scan;

  std::vector<Complex> phase_t(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double arg = t * terms[k].lambda;
    phase_t[k] = Complex{std::cos(arg), std::sin(arg)} * terms[k].amplitude;
  }
  int s_min = terms[0].blk.phase, s_max = terms[0].blk.phase;
  for (const auto& tm : terms) {
    s_min = std::min(s_min, tm.blk.phase);
    s_max = std::max(s_max, tm.blk.phase);
  }
  parallel_for(n_theta, [&](std::size_t i) {
    detail::scan_row(terms, phase_t, scan.grid.theta[i], scan.grid.omega, s_min, s_max,
                     scan.values.data() + i * static_cast<std::size_t>(n_omega));
  });
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_omega; ++j) {
      const double a = std::abs(scan.values[static_cast<std::size_t>(i) * n_omega + j]);
      if (a > scan.sup_abs) {
        scan.sup_abs = a;
        scan.argmax_theta = scan.grid.theta[i];
        scan.argmax_omega = scan.grid.omega[j];
      }
    }
  }
  return scan;
}

/// Sup over the sub-grid theta >= theta_min (compact-set statistic).
inline double sup_restricted(const KernelScan& scan, double theta_min) {
  double sup = 0.0;
  for (int i = 0; i < scan.grid.n_theta; ++i) {
    if (scan.grid.theta[i] < theta_min) continue;
    for (int j = 0; j < scan.grid.n_omega; ++j)
      sup = std::max(sup, std::abs(scan.values[static_cast<std::size_t>(i) * scan.grid.n_omega + j]));
  }
  return sup;
}

struct DecayRow {
  double t;
  double sup;
  double sup_scaled;  // sup * t^{Q/2}
};

struct DecayProfile {
  double h = 1.0;
  int n = 1;
  Localization loc = Localization::Cone;
  std::vector<DecayRow> rows;
  double slope = 0.0;       // least-squares slope of log sup vs log t
  double max_scaled = 0.0;
  double min_scaled = 0.0;
  bool window_ok = true;
  double argmax_theta = 0.0;
};

/// Sup decay over an explicit time window [t_lo, t_hi], log-spaced.
inline DecayProfile decay_profile_window(double h, int n, Localization loc, double t_lo,
                                         double t_hi, int num_times,
                                         const CutoffSet& cs = CutoffSet::defaults(),
                                         int n_theta = 180, int n_omega = 256) {
  if (!(t_lo > 0.0)) throw std::invalid_argument("decay_profile: t_lo > 0 required");
  if (num_times < 2) throw std::invalid_argument("decay_profile: num_times >= 2 required");
  DecayProfile prof;
  prof.h = h;
  prof.n = n;
  prof.loc = loc;
  prof.window_ok = t_hi > t_lo;
  if (!prof.window_ok) t_hi = t_lo;
  const int count = prof.window_ok ? num_times : 1;
  const double q_half = static_cast<double>(n) + 1.0;
  prof.min_scaled = 1e300;
  double sup_peak = 0.0;
  for (int k = 0; k < count; ++k) {
    const double logt = std::log(t_lo) + (count == 1 ? 0.0
                                                     : (std::log(t_hi) - std::log(t_lo)) * k /
                                                           (count - 1));
    const double t = std::exp(logt);
    const KernelScan scan = sup_scan(t, h, n, loc, cs, n_theta, n_omega);
    const double scaled = scan.sup_abs * std::pow(t, q_half);
    prof.rows.push_back({t, scan.sup_abs, scaled});
    prof.max_scaled = std::max(prof.max_scaled, scaled);
    prof.min_scaled = std::min(prof.min_scaled, scaled);
    if (scan.sup_abs > sup_peak) {
      sup_peak = scan.sup_abs;
      prof.argmax_theta = scan.argmax_theta;
    }
  }
  // Least-squares fit of log sup against log t.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : prof.rows) {
    const double x = std::log(r.t), y = std::log(std::max(r.sup, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(prof.rows.size());
  const double den = m * sxx - sx * sx;
  prof.slope = den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
  return prof;
}

/// Dispersive window [h^2, c h^s]; warns (window_ok = false) when empty.
inline DecayProfile decay_profile(double h, int n, double s, Localization loc,
                                  int num_times = 12, const CutoffSet& cs = CutoffSet::defaults(),
                                  int n_theta = 180, int n_omega = 256, double c_window = 1.0) {
  return decay_profile_window(h, n, loc, h * h, c_window * std::pow(h, s), num_times, cs, n_theta,
                              n_omega);
}

/// L2 mass of the window: value = h^{n+1} sqrt(sum phi(h^2 lambda)^2 dim),
/// which stays comparable to 1 across h.  raw_sum is the unscaled sum.
struct L2Floor {
  double raw_sum;
  double value;
};

inline L2Floor l2_lower_bound(double h, int n, const CutoffSet& cs = CutoffSet::defaults()) {
  if (!(h > 0.0)) throw std::invalid_argument("l2_lower_bound: h > 0 required");
  const auto ann = enumerate_annulus(cs.phi.support_lo(), cs.phi.support_hi(), h, n);
  std::vector<double> parts;
  parts.reserve(ann.size());
  for (const auto& ed : ann) {
    const double w = cs.phi.eval(h * h * static_cast<double>(ed.lambda));
    parts.push_back(w * w * static_cast<double>(ed.dim));
  }
  const double raw = tree_sum(parts);
  return {raw, std::pow(h, n + 1) * std::sqrt(raw)};
}

}  // namespace crsphere
