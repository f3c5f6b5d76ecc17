#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "crsphere/geometry.hpp"
#include "crsphere/sobolev.hpp"
#include "crsphere/spectrum.hpp"
#include "crsphere/summation.hpp"
#include "crsphere/zonal.hpp"

namespace crsphere {

/// Schroedinger flow on spectral data: c -> e^{i t lambda} c, exactly unitary
/// blockwise.
inline ZonalSpectralData evolve(const ZonalSpectralData& u, double t) {
  ZonalSpectralData out{u.n, {}};
  for (const auto& [idx, c] : u.coeff) {
    const double arg = t * static_cast<double>(eigen_data(idx, u.n).lambda);
    out.coeff.emplace(idx, c * Complex{std::cos(arg), std::sin(arg)});
  }
  return out;
}

/// Scale-invariant admissibility 2/p + Q/q = Q/2 solved for q.
inline double admissible_q(double p, int Q) {
  if (!(p >= 2.0)) throw std::invalid_argument("admissible_q: p >= 2 required");
  if (Q < 4) throw std::invalid_argument("admissible_q: Q >= 4 required");
  const double den = p * Q - 4.0;
  return 2.0 * p * Q / den;
}

struct SpacetimeNorm {
  double value = 0.0;
  bool converged = true;
  int samples = 0;
};

namespace detail {

struct BlockTable {
  std::vector<double> theta_factor;  // per theta row
  int phase;
  double lambda;
  Complex c;
};

inline std::vector<BlockTable> block_tables(const ZonalSpectralData& u, const DiskGrid& grid) {
  std::vector<BlockTable> tabs;
  tabs.reserve(u.coeff.size());
  for (const auto& [idx, c] : u.coeff) {
    const auto blk = zonal_block(idx, u.n);
    BlockTable tab;
    tab.phase = blk.phase;
    tab.lambda = static_cast<double>(eigen_data(idx, u.n).lambda);
    tab.c = c;
    tab.theta_factor.resize(grid.n_theta);
    for (int i = 0; i < grid.n_theta; ++i) tab.theta_factor[i] = blk.theta_factor(grid.theta[i]);
    tabs.push_back(std::move(tab));
  }
  return tabs;
}

/// L^q norm of sum_b f_b * D_b(theta) e^{i s_b omega} over the disk grid.
inline double lq_of_combination(const std::vector<BlockTable>& tabs,
                                const std::vector<Complex>& fb, const DiskGrid& grid, double q) {
  std::vector<double> theta_part(grid.n_theta);
  parallel_for(grid.n_theta, [&](std::size_t i) {
    std::vector<double> vals;
    vals.reserve(grid.n_omega);
    for (int j = 0; j < grid.n_omega; ++j) {
      Complex v{0.0, 0.0};
      for (std::size_t b = 0; b < tabs.size(); ++b) {
        const double arg = tabs[b].phase * grid.omega[j];
        v += fb[b] * tabs[b].theta_factor[i] * Complex{std::cos(arg), std::sin(arg)};
      }
      vals.push_back(std::pow(std::abs(v), q));
    }
    theta_part[i] = tree_sum(vals) * grid.point_weight(static_cast<int>(i));
  });
  return std::pow(tree_sum(theta_part), 1.0 / q);
}

}  // namespace detail

/// L^q norm over the disk of the synthesized function.
inline double lq_norm(const ZonalSpectralData& u, const DiskGrid& grid, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q >= 1 required");
  const auto tabs = detail::block_tables(u, grid);
  std::vector<Complex> fb(tabs.size());
  for (std::size_t b = 0; b < tabs.size(); ++b) fb[b] = tabs[b].c;
  return detail::lq_of_combination(tabs, fb, grid, q);
}

/// Mixed-norm || e^{itL} u0 ||_{L^p([t0,t1], L^q)} by composite trapezoid in
/// time over L^q space norms.  The sample count starts at eight points per
/// fastest beat period and doubles until the result moves by less than 0.5%.
inline SpacetimeNorm spacetime_norm(const ZonalSpectralData& u0, double p, double q, double t0,
                                    double t1, int time_samples, const DiskGrid& grid) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("spacetime_norm: p,q >= 1 required");
  if (!(t1 > t0)) throw std::invalid_argument("spacetime_norm: empty time interval");
  const auto tabs = detail::block_tables(u0, grid);
  double max_gap = 0.0;
  for (const auto& a : tabs)
    for (const auto& b : tabs) max_gap = std::max(max_gap, std::abs(a.lambda - b.lambda));
  int samples = std::max(time_samples, 8);
  if (max_gap > 0.0) {
    const double per_period = 8.0 * (t1 - t0) * max_gap / (2.0 * kPi);
    if (per_period > samples) samples = static_cast<int>(std::min(per_period + 1.0, 1e6));
  }

  const auto eval = [&](int S) {
    std::vector<double> gp(S + 1);
    std::vector<Complex> fb(tabs.size());
    for (int k = 0; k <= S; ++k) {
      const double t = t0 + (t1 - t0) * k / S;
      for (std::size_t b = 0; b < tabs.size(); ++b) {
        const double arg = t * tabs[b].lambda;
        fb[b] = tabs[b].c * Complex{std::cos(arg), std::sin(arg)};
      }
      gp[k] = std::pow(detail::lq_of_combination(tabs, fb, grid, q), p);
    }
    const double dt = (t1 - t0) / S;
    double integral = 0.5 * (gp.front() + gp.back());
    for (int k = 1; k < S; ++k) integral += gp[k];
    return std::pow(integral * dt, 1.0 / p);
  };

  double prev = eval(samples);
  for (int iter = 0; iter < 6; ++iter) {
    samples *= 2;
    const double next = eval(samples);
    const double change = std::abs(next - prev) / std::max(next, 1e-300);
    prev = next;
    if (change < 0.005) return {next, true, samples};
  }
  return {prev, false, samples};
}

struct StrichartzQuotient {
  double numerator = 0.0;
  double denominator = 0.0;
  double value = 0.0;
  double q = 0.0;
  bool converged = true;
  bool s_below_threshold = false;
};

/// Ratio of the dispersive space-time norm to the mixed smoothing norm with
/// exponents (s/p, 2/p).  Warns (does not reject) when s sits below the
/// dispersive threshold 2n/(n+1) (4/3 at n=1).
inline StrichartzQuotient strichartz_quotient(const ZonalSpectralData& u0, double p, double s,
                                              double M, double t0, double t1,
                                              const DiskGrid& grid, int time_samples = 32) {
  const int Q = 2 * u0.n + 2;
  StrichartzQuotient out;
  out.q = admissible_q(p, Q);
  // the generic threshold 2n/(n+1) is replaced by 4/3 in the lowest dimension
  const double s_threshold = (u0.n == 1) ? 4.0 / 3.0 : 2.0 * u0.n / (u0.n + 1.0);
  out.s_below_threshold = s < s_threshold - 1e-12;
  const double den = norm_mixed(u0, s / p, 2.0 / p, M);
  if (!(den > 0.0)) throw std::domain_error("strichartz_quotient: zero data");
  const auto st = spacetime_norm(u0, p, out.q, t0, t1, time_samples, grid);
  out.numerator = st.value;
  out.denominator = den;
  out.value = st.value / den;
  out.converged = st.converged;
  return out;
}

/// Sharp eigenfunction-growth exponents as functions of 1/q, with the branch
/// point at q = 2(2n+1)/(2n-1): alpha controls the projection growth and
/// beta the extra frequency factor; cone blocks grow like
/// (1+lambda)^{alpha+beta/2}, edge blocks like (1+lambda)^{alpha+beta}.
struct OptimalityExponents {
  double alpha;
  double beta;
  double q_branch;
  double growth_cone() const { return alpha + beta / 2.0; }
  double growth_edge() const { return alpha + beta; }
};

inline OptimalityExponents optimality_exponents(double q, int n) {
  if (!(q >= 2.0)) throw std::invalid_argument("optimality_exponents: q >= 2 required");
  if (n < 1) throw std::invalid_argument("optimality_exponents: n >= 1 required");
  OptimalityExponents e{};
  e.q_branch = 2.0 * (2.0 * n + 1.0) / (2.0 * n - 1.0);
  if (q >= e.q_branch) {
    e.alpha = n * (0.5 - 1.0 / q) - 0.5;
    e.beta = 0.5;
  } else {
    e.alpha = 0.5 * (1.0 / q - 0.5);
    e.beta = (n + 0.5) * (0.5 - 1.0 / q);
  }
  return e;
}

enum class ZonalFamily { Diag, Holo };

struct GrowthFit {
  double slope = 0.0;
  std::vector<std::pair<double, double>> points;  // (log lambda, log ratio)
  bool converged = true;
};

/// Fits log(||Z||_q / ||Z||_2) against log(lambda) along a zonal family.
/// Both norms come from the same theta quadrature; |Z| is angle-independent,
/// so the angular integral is exact.
inline GrowthFit eigenfunction_growth_fit(ZonalFamily family, double q, int n,
                                          const std::vector<int>& ells, int n_theta = 384) {
  if (ells.size() < 2) throw std::invalid_argument("growth_fit: need at least two degrees");
  const auto fit_at = [&](int nt) {
    const DiskGrid grid = make_disk_grid(n, nt, 4);
    GrowthFit f;
    for (int ell : ells) {
      const SpectralIndex idx =
          family == ZonalFamily::Diag ? SpectralIndex{ell, ell} : SpectralIndex{ell, 0};
      const auto blk = zonal_block(idx, n);
      const auto ed = eigen_data(idx, n);
      std::vector<double> vq(grid.n_theta), v2(grid.n_theta);
      for (int i = 0; i < grid.n_theta; ++i) {
        const double a = std::abs(blk.theta_factor(grid.theta[i]));
        vq[i] = grid.theta_weight[i] * std::pow(a, q);
        v2[i] = grid.theta_weight[i] * a * a;
      }
      const double lq = std::pow(tree_sum(vq), 1.0 / q);
      const double l2 = std::sqrt(tree_sum(v2));
      f.points.emplace_back(std::log(static_cast<double>(ed.lambda)), std::log(lq / l2));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : f.points) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(f.points.size());
    f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return f;
  };
  GrowthFit coarse = fit_at(n_theta);
  GrowthFit fine = fit_at(2 * n_theta);
  fine.converged = std::abs(fine.slope - coarse.slope) < 1e-3;
  return fine;
}

/// Duhamel integral int_0^t e^{i (t - tau) L} f(tau) dtau, blockwise
/// trapezoid with doubling until coefficients settle to 1e-8 relative.
inline Checked<ZonalSpectralData> duhamel(const std::function<ZonalSpectralData(double)>& f,
                                          int n, double t, int time_samples = 64) {
  if (!(t > 0.0)) throw std::invalid_argument("duhamel: t > 0 required");
  const auto eval = [&](int S) {
    ZonalSpectralData acc{n, {}};
    const double dt = t / S;
    for (int k = 0; k <= S; ++k) {
      const double tau = t * k / S;
      const double w = (k == 0 || k == S) ? 0.5 * dt : dt;
      const ZonalSpectralData fk = f(tau);
      for (const auto& [idx, c] : fk.coeff) {
        const double arg = (t - tau) * static_cast<double>(eigen_data(idx, n).lambda);
        acc.coeff[idx] += w * c * Complex{std::cos(arg), std::sin(arg)};
      }
    }
    return acc;
  };
  int S = std::max(time_samples, 8);
  ZonalSpectralData prev = eval(S);
  for (int iter = 0; iter < 12; ++iter) {
    S *= 2;
    ZonalSpectralData next = eval(S);
    double change = 0.0, scale = 0.0;
    for (const auto& [idx, c] : next.coeff) {
      scale = std::max(scale, std::abs(c));
      const auto it = prev.coeff.find(idx);
      const Complex old = it == prev.coeff.end() ? Complex{0.0, 0.0} : it->second;
      change = std::max(change, std::abs(c - old));
    }
    prev = std::move(next);
    if (change <= 1e-8 * std::max(scale, 1e-12)) return {std::move(prev), true};
  }
  return {std::move(prev), false};
}

}  // namespace crsphere
