#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "crsphere/geometry.hpp"
#include "crsphere/specfun.hpp"
#include "crsphere/spectrum.hpp"
#include "crsphere/summation.hpp"

namespace crsphere {

using Complex = std::complex<double>;

/// Factorized form of the zonal function of one bidegree:
///   Z(omega, theta) = scale * e^{i omega * phase} * damped(theta),
/// damped(theta) = (cos theta)^beta P_m^{(n-1,beta)}(cos 2 theta), m = min.
/// The signed phase ellp - ell distinguishes Z(l,l') from Z(l',l) = conj;
/// distinct bidegrees are then mutually orthogonal on the sphere.
struct ZonalBlock {
  int m;
  int beta;
  int phase;
  double scale;  // (dim / omega_S) * m! (n-1)! / (m+n-1)!
  int n;

  double theta_factor(double theta) const {
    return scale * jacobi_damped(m, n - 1, beta, theta);
  }
  Complex eval(double omega_angle, double theta) const {
    const double d = theta_factor(theta);
    const double arg = phase * omega_angle;
    return {d * std::cos(arg), d * std::sin(arg)};
  }
};

inline ZonalBlock zonal_block(SpectralIndex idx, int n) {
  const auto ed = eigen_data(idx, n);
  const int m = std::min(idx.ell, idx.ellp);
  double pref = 1.0;
  for (int j = 1; j <= n - 1; ++j) pref *= static_cast<double>(j) / (m + j);
  return {m, ed.beta, idx.ellp - idx.ell,
          static_cast<double>(ed.dim) / surface_area(n) * pref, n};
}

/// Zonal function value at a disk point.
inline Complex zonal_eval(SpectralIndex idx, int n, double omega_angle, double theta) {
  return zonal_block(idx, n).eval(omega_angle, theta);
}

inline Complex zonal_eval(SpectralIndex idx, int n, const DiskPoint& p) {
  return zonal_eval(idx, n, p.omega_angle, p.theta);
}

/// |Z| * omega_S / dim at a point; the sharp global bound is 1, attained at
/// the pole.  Independent of the angle, since |e^{i phase omega}| = 1.
inline double zonal_bound_ratio(SpectralIndex idx, int n, double theta) {
  const auto ed = eigen_data(idx, n);
  const auto blk = zonal_block(idx, n);
  return std::abs(blk.theta_factor(theta)) * surface_area(n) / static_cast<double>(ed.dim);
}

/// Spectral coefficients of a pole-zonal function.  std::map keeps block
/// iteration in lexicographic order, which fixes every summation order.
struct ZonalSpectralData {
  int n = 1;
  std::map<SpectralIndex, Complex> coeff;
};

/// Samples of sum_blocks c * Z_block on a disk grid, theta-major order.
inline std::vector<Complex> synthesize(const ZonalSpectralData& u, const DiskGrid& grid) {
  std::vector<Complex> out(static_cast<std::size_t>(grid.n_theta) * grid.n_omega, Complex{0.0, 0.0});
  struct Term {
    ZonalBlock blk;
    Complex c;
  };
  std::vector<Term> terms;
  terms.reserve(u.coeff.size());
  for (const auto& [idx, c] : u.coeff) terms.push_back({zonal_block(idx, u.n), c});
  parallel_for(grid.n_theta, [&](std::size_t i) {
    std::vector<Complex> phase_sum(grid.n_omega);
    for (const auto& t : terms) {
      const double d = t.blk.theta_factor(grid.theta[i]);
      if (d == 0.0 && t.blk.beta != 0) continue;
      for (int j = 0; j < grid.n_omega; ++j) {
        const double arg = t.blk.phase * grid.omega[j];
        out[i * grid.n_omega + j] += t.c * Complex{d * std::cos(arg), d * std::sin(arg)};
      }
    }
  });
  return out;
}

/// Quadrature of f(point) over the disk grid (deterministic tree order).
template <typename F>
Complex quad_complex(const DiskGrid& grid, F&& f) {
  std::vector<Complex> vals;
  vals.reserve(static_cast<std::size_t>(grid.n_theta) * grid.n_omega);
  for (int i = 0; i < grid.n_theta; ++i) {
    const double w = grid.point_weight(i);
    for (int j = 0; j < grid.n_omega; ++j)
      vals.push_back(w * f(i, j));
  }
  return tree_sum(vals);
}

template <typename F>
double quad_real(const DiskGrid& grid, F&& f) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(grid.n_theta) * grid.n_omega);
  for (int i = 0; i < grid.n_theta; ++i) {
    const double w = grid.point_weight(i);
    for (int j = 0; j < grid.n_omega; ++j)
      vals.push_back(w * f(i, j));
  }
  return tree_sum(vals);
}

/// Coefficient of the given bidegree recovered from grid samples:
///   c = (omega_S / dim) * <u, Z_idx>_quadrature,
/// using that each zonal block has squared L2 norm dim / omega_S.
inline Complex project_block(const std::vector<Complex>& samples, const DiskGrid& grid,
                             SpectralIndex idx, int n) {
  if (samples.size() != static_cast<std::size_t>(grid.n_theta) * grid.n_omega)
    throw std::invalid_argument("project_block: sample count does not match grid");
  const auto blk = zonal_block(idx, n);
  const auto ed = eigen_data(idx, n);
  const Complex inner = quad_complex(grid, [&](int i, int j) {
    const Complex z = blk.eval(grid.omega[j], grid.theta[i]);
    return samples[static_cast<std::size_t>(i) * grid.n_omega + j] * std::conj(z);
  });
  return inner * (surface_area(n) / static_cast<double>(ed.dim));
}

template <typename T>
struct Checked {
  T value{};
  bool converged = true;
};

/// Projection with a refinement check: evaluates the functional form of u on
/// the given grid and on one with doubled resolution, and flags divergence
/// beyond 1e-6.
template <typename F>
Checked<Complex> project_block_checked(F&& u, SpectralIndex idx, int n, int n_theta = 256,
                                       int n_omega = 256) {
  const DiskGrid coarse = make_disk_grid(n, n_theta, n_omega);
  const DiskGrid fine = make_disk_grid(n, 2 * n_theta, 2 * n_omega);
  const auto eval_on = [&](const DiskGrid& g) {
    std::vector<Complex> s(static_cast<std::size_t>(g.n_theta) * g.n_omega);
    for (int i = 0; i < g.n_theta; ++i)
      for (int j = 0; j < g.n_omega; ++j)
        s[static_cast<std::size_t>(i) * g.n_omega + j] = u(g.omega[j], g.theta[i]);
    return project_block(s, g, idx, n);
  };
  const Complex c0 = eval_on(coarse);
  const Complex c1 = eval_on(fine);
  const double scale = std::max(1.0, std::abs(c1));
  return {c1, std::abs(c1 - c0) <= 1e-6 * scale};
}

}  // namespace crsphere
