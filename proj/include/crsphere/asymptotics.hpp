#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "crsphere/cutoffs.hpp"
#include "crsphere/geometry.hpp"
#include "crsphere/specfun.hpp"
#include "crsphere/summation.hpp"

namespace crsphere {

/// Damped Jacobi side of the Bessel comparison:
///   (sin theta)^{alpha+1/2} (cos theta)^{beta+1/2} P_l^{(alpha,beta)}(cos 2 theta).
inline double fh_lhs(int ell, int alpha, int beta, double theta) {
  return std::pow(std::sin(theta), alpha + 0.5) * std::sqrt(std::cos(theta)) *
         jacobi_damped(ell, alpha, beta, theta);
}

/// Leading Bessel term of the same quantity:
///   (Gamma(l+alpha+1)/l!) * theta^{1/2} * J_alpha(N theta) / N^alpha,
/// with N = 2l + alpha + beta + 1.
inline double fh_leading(int ell, int alpha, int beta, double theta) {
  // half-angle convention: the Bessel order-alpha term carries (N/2)^{-alpha},
  // not N^{-alpha}; the ratio lhs/leading otherwise converges to 2^alpha
  const double N = 2.0 * ell + alpha + beta + 1.0;
  return gamma_ratio(ell, alpha) * std::sqrt(theta) * bessel_j(alpha, N * theta) /
         std::pow(0.5 * N, alpha);
}

struct FhRemainderRow {
  int ell;
  double N;
  double sup_scaled;  // sup_theta |lhs - leading| * N^{alpha+3/2} / (pref * theta^{3/2})
  double argmax_theta;
};

/// Scaled first-order remainder of the Bessel comparison over a theta grid.
/// Boundedness of sup_scaled across doubling degrees is the empirical form
/// of the O(N^{-(alpha+3/2)}) remainder rate.
inline std::vector<FhRemainderRow> fh_remainder_check(int alpha, int beta,
                                                      const std::vector<int>& ells,
                                                      double theta_min = 0.01,
                                                      double theta_max = 1.2,
                                                      int num_theta = 240) {
  if (!(theta_min > 0.0) || !(theta_max > theta_min) || theta_max >= kHalfPi)
    throw std::invalid_argument("fh_remainder_check: theta range must sit inside (0, pi/2)");
  std::vector<FhRemainderRow> rows;
  rows.reserve(ells.size());
  for (int ell : ells) {
    const double N = 2.0 * ell + alpha + beta + 1.0;
    const double pref = gamma_ratio(ell, alpha);
    double sup = 0.0, arg = theta_min;
    for (int k = 0; k < num_theta; ++k) {
      const double th = theta_min + (theta_max - theta_min) * k / (num_theta - 1);
      const double diff = std::abs(fh_lhs(ell, alpha, beta, th) - fh_leading(ell, alpha, beta, th));
      const double scaled = diff * std::pow(N, alpha + 1.5) / (pref * std::pow(th, 1.5));
      if (scaled > sup) {
        sup = scaled;
        arg = th;
      }
    }
    rows.push_back({ell, N, sup, arg});
  }
  return rows;
}

using Symbol = std::function<std::complex<double>(std::int64_t)>;

inline Symbol unit_symbol() {
  return [](std::int64_t) { return std::complex<double>{1.0, 0.0}; };
}

/// Bounded symbol with symbol-class decay, used to exercise the sweep.
inline Symbol s0_test_symbol() {
  return [](std::int64_t k) {
    const double kd = static_cast<double>(k);
    return std::complex<double>{kd / std::sqrt(1.0 + kd * kd), 0.0};
  };
}

/// sum_k e^{2 pi i mu k} phi(eps k) sigma(k).  phi must be supported in
/// (a, b) with a > 0, so the sum is finite: k in (a/eps, b/eps).
/// The phase is reduced mod 1 in long double, so integer shifts of mu that
/// are exactly representable leave the sum bit-identical.
inline std::complex<double> oscillatory_sum(double mu, double eps, const CutoffProfile& phi,
                                            const Symbol& sigma, std::int64_t k_max = 1 << 26) {
  if (!(eps > 0.0)) throw std::invalid_argument("oscillatory_sum: eps > 0 required");
  if (!(phi.support_lo() > 0.0))
    throw std::invalid_argument("oscillatory_sum: profile support must avoid 0");
  const double a = phi.support_lo(), b = phi.support_hi();
  // compare before casting: b/eps can overflow int64 for tiny eps
  if (b / eps > static_cast<double>(k_max))
    throw std::invalid_argument("oscillatory_sum: range exceeds k_max");
  const std::int64_t k_lo = static_cast<std::int64_t>(std::ceil(a / eps));
  const std::int64_t k_hi = static_cast<std::int64_t>(std::floor(b / eps));
  const long double mu_red = static_cast<long double>(mu) - std::nearbyint(mu);
  std::vector<std::complex<double>> vals;
  vals.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, k_hi - k_lo + 1)));
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double w = phi.eval(eps * static_cast<double>(k));
    if (w == 0.0) continue;
    long double r = mu_red * static_cast<long double>(k);
    r -= std::nearbyint(r);
    const double arg = 2.0 * kPi * static_cast<double>(r);
    vals.push_back(std::complex<double>{std::cos(arg), std::sin(arg)} * w *
                   sigma(k));
  }
  return tree_sum(vals);
}

struct PoissonRow {
  double mu;
  double delta;  // dist(mu, Z)
  double eps;
  double sum_abs;
  double bound;  // max(eps^{L-1} / delta^L, 1)
  double ratio;
  bool skipped;  // eps > delta: outside the regime, not evaluated
};

/// Sweeps |oscillatory_sum| against the stationary-phase-free envelope
/// max(eps^{L-1}/delta^L, 1) for eps <= delta = dist(mu, Z).
inline std::vector<PoissonRow> poisson_bound_sweep(const std::vector<double>& mus,
                                                   const std::vector<double>& eps_factors,
                                                   int L, const CutoffProfile& phi,
                                                   const Symbol& sigma) {
  if (L < 2) throw std::invalid_argument("poisson_bound_sweep: L >= 2 required");
  std::vector<PoissonRow> rows;
  for (double mu : mus) {
    const double delta = std::abs(mu - std::nearbyint(mu));
    if (!(delta > 0.0)) throw std::invalid_argument("poisson_bound_sweep: mu must avoid Z");
    for (double f : eps_factors) {
      const double eps = delta * f;
      PoissonRow row{mu, delta, eps, 0.0, 0.0, 0.0, false};
      if (eps > delta * (1.0 + 1e-12)) {
        row.skipped = true;
        rows.push_back(row);
        continue;
      }
      row.sum_abs = std::abs(oscillatory_sum(mu, eps, phi, sigma));
      row.bound = std::max(std::pow(eps, L - 1) / std::pow(delta, L), 1.0);
      row.ratio = row.sum_abs / row.bound;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace crsphere
