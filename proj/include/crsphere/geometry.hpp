#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crsphere {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = kPi / 2.0;

/// Ambient data of the unit sphere S^{2n+1} in C^{n+1}: homogeneous
/// dimension Q = 2n+2 and total surface measure omega = 2 pi^{n+1} / n!.
struct SphereGeometry {
  int n;
  int Q;
  double omega;
};

inline double surface_area(int n) {
  if (n < 1) throw std::invalid_argument("surface_area: n >= 1 required");
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return 2.0 * std::pow(kPi, n + 1) / fact;
}

inline SphereGeometry sphere_geometry(int n) {
  return {n, 2 * n + 2, surface_area(n)};
}

/// Koranyi distance d(z,w) = |1 - <z,w>|^{1/2} expressed through the inner
/// product, which lies in the closed unit disk.
inline double koranyi_distance(std::complex<double> inner) {
  if (std::abs(inner) > 1.0 + 1e-12)
    throw std::invalid_argument("koranyi_distance: |inner| > 1");
  return std::sqrt(std::abs(1.0 - inner));
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// three-term recurrence.  Machine-precision for the sizes used here.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m >= 1 required");
  std::vector<double> x(m), w(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return {std::move(x), std::move(w)};
}

/// A node of the pushforward of surface measure under z -> <z, w0>, i.e. a
/// point e^{i omega_angle} cos(theta) of the closed unit disk with its
/// quadrature weight.
struct DiskPoint {
  double omega_angle;
  double theta;
  double weight;
};

/// Product quadrature on the disk: Gauss-Legendre in theta on [0, pi/2]
/// against the density (sin theta)^{2n-1} cos(theta), uniform (trapezoid on
/// the periodic circle) in the angle.  The density constant is fixed by
/// normalization: constants integrate to surface_area(n) by construction.
struct DiskGrid {
  int n = 1;
  int n_theta = 0;
  int n_omega = 0;
  std::vector<double> theta;
  std::vector<double> theta_weight;  // marginal weights, sum = surface_area(n)
  std::vector<double> omega;
  double point_weight_scale = 0.0;   // per-point weight = theta_weight / n_omega

  double point_weight(int i_theta) const { return theta_weight[i_theta] / n_omega; }

  std::vector<DiskPoint> points() const {
    std::vector<DiskPoint> out;
    out.reserve(static_cast<std::size_t>(n_theta) * n_omega);
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_omega; ++j)
        out.push_back({omega[j], theta[i], theta_weight[i] / n_omega});
    return out;
  }
};

inline DiskGrid make_disk_grid(int n, int n_theta = 256, int n_omega = 256) {
  if (n < 1) throw std::invalid_argument("disk_grid: n >= 1 required");
  if (n_theta < 2 || n_omega < 2) throw std::invalid_argument("disk_grid: grid too small");
  DiskGrid g;
  g.n = n;
  g.n_theta = n_theta;
  g.n_omega = n_omega;
  auto [x, wgl] = gauss_legendre(n_theta);
  g.theta.resize(n_theta);
  g.theta_weight.resize(n_theta);
  double raw_total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double th = 0.5 * kHalfPi * (x[i] + 1.0);
    g.theta[i] = th;
    const double density = std::pow(std::sin(th), 2 * n - 1) * std::cos(th);
    g.theta_weight[i] = density * wgl[i];
    raw_total += g.theta_weight[i];
  }
  const double scale = surface_area(n) / raw_total;
  for (double& tw : g.theta_weight) tw *= scale;
  g.omega.resize(n_omega);
  for (int j = 0; j < n_omega; ++j) g.omega[j] = 2.0 * kPi * j / n_omega;
  g.point_weight_scale = scale;
  return g;
}

/// Flat point list form of make_disk_grid.
inline std::vector<DiskPoint> disk_grid(int n, int n_theta = 256, int n_omega = 256) {
  return make_disk_grid(n, n_theta, n_omega).points();
}

/// Unweighted scan grid for sup-norm sweeps: theta follows a square-root
/// stretch (dense near the pole, where propagator kernels peak), the angle
/// is uniform.
struct ScanGrid {
  int n_theta = 0;
  int n_omega = 0;
  std::vector<double> theta;
  std::vector<double> omega;
};

inline ScanGrid make_scan_grid(int n_theta = 180, int n_omega = 256) {
  if (n_theta < 2 || n_omega < 1) throw std::invalid_argument("scan_grid: grid too small");
  ScanGrid g;
  g.n_theta = n_theta;
  g.n_omega = n_omega;
  g.theta.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    const double u = static_cast<double>(i) / (n_theta - 1);
    g.theta[i] = kHalfPi * u * u;
  }
  g.omega.resize(n_omega);
  for (int j = 0; j < n_omega; ++j) g.omega[j] = 2.0 * kPi * j / n_omega;
  return g;
}

}  // namespace crsphere
