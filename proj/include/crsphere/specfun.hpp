#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crsphere {

namespace detail {

/// Value represented as mantissa * 2^exp2 so Jacobi recurrences with large
/// parameters can run past the double range and be recombined with a damping
/// factor afterwards.
struct Scaled {
  double mantissa;
  long exp2;
};

/// Three-term recurrence in the degree for P_l^{(a,b)}(x).  Rescales the
/// running pair by exact powers of two, so no precision is lost to scaling.
inline Scaled jacobi_scaled(int ell, double alpha, double beta, double x) {
  if (ell < 0) throw std::invalid_argument("jacobi: negative degree");
  if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("jacobi: parameters must exceed -1");
  if (std::abs(x) > 1.0 + 1e-12) throw std::invalid_argument("jacobi: |x| > 1");
  x = std::clamp(x, -1.0, 1.0);

  double pm1 = 1.0;  // P_0
  if (ell == 0) return {pm1, 0};
  double p = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);  // P_1
  long e = 0;
  constexpr double kHuge = 0x1p900, kTiny = 0x1p-900;
  for (int m = 2; m <= ell; ++m) {
    const double ab = alpha + beta;
    const double c0 = 2.0 * m + ab;
    const double c1 = 2.0 * m * (m + ab) * (c0 - 2.0);
    const double c2 = (c0 - 1.0) * (c0 * (c0 - 2.0) * x + alpha * alpha - beta * beta);
    const double c3 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * c0;
    const double next = (c2 * p - c3 * pm1) / c1;
    pm1 = p;
    p = next;
    const double mag = std::max(std::abs(p), std::abs(pm1));
    if (mag > kHuge) {
      p *= kTiny;
      pm1 *= kTiny;
      e += 900;
    } else if (mag < kTiny && mag > 0.0) {
      p *= kHuge;
      pm1 *= kHuge;
      e -= 900;
    }
  }
  return {p, e};
}

}  // namespace detail

/// Jacobi polynomial P_l^{(alpha,beta)}(x), |x| <= 1.
/// Throws std::overflow_error if the value exceeds the double range.
inline double jacobi_p(int ell, double alpha, double beta, double x) {
  const auto s = detail::jacobi_scaled(ell, alpha, beta, x);
  if (s.exp2 > 2000) throw std::overflow_error("jacobi_p: value overflows double");
  const double r = std::ldexp(s.mantissa, static_cast<int>(std::clamp<long>(s.exp2, -2200, 2200)));
  if (!std::isfinite(r)) throw std::overflow_error("jacobi_p: value overflows double");
  return r;
}

/// Damped evaluation (cos theta)^beta * P_l^{(alpha,beta)}(cos 2 theta) for
/// theta in [0, pi/2].  The damping is folded in through the binary exponent,
/// so the product is finite even where either factor alone over/underflows.
inline double jacobi_damped(int ell, double alpha, int beta, double theta) {
  if (theta < -1e-12 || theta > 1.5707963267948966 + 1e-12)
    throw std::invalid_argument("jacobi_damped: theta outside [0, pi/2]");
  if (beta < 0) throw std::invalid_argument("jacobi_damped: beta < 0");
  const double c = std::cos(theta);
  const auto s = detail::jacobi_scaled(ell, alpha, static_cast<double>(beta), std::cos(2.0 * theta));
  if (c <= 0.0) {
    const double base = std::ldexp(s.mantissa, static_cast<int>(std::clamp<long>(s.exp2, -2200, 2200)));
    return beta == 0 ? base : 0.0;
  }
  if (s.exp2 == 0) {
    const double d = std::pow(c, static_cast<double>(beta));
    const double r = s.mantissa * d;
    if (!std::isfinite(r)) throw std::overflow_error("jacobi_damped: overflow");
    return r;
  }
  // value = mantissa * 2^(e + beta*log2 c); split the exponent into integer
  // and fractional parts to stay inside the double range.
  const double t = static_cast<double>(s.exp2) + static_cast<double>(beta) * std::log2(c);
  if (t < -1100.0) return 0.0;
  if (t > 1020.0) throw std::overflow_error("jacobi_damped: overflow");
  const double ti = std::nearbyint(t);
  return std::ldexp(s.mantissa * std::exp2(t - ti), static_cast<int>(ti));
}

/// |P_l^{(alpha,beta)}(cos theta)| divided by the sharpest applicable
/// envelope with constant 1.  Near the +1 end (theta <= pi/2) the envelopes
/// are l^alpha and l^{-1/2} theta^{-alpha-1/2}; near -1 they are l^beta and
/// l^{-1/2} (pi-theta)^{-beta-1/2}.  Degree 0 compares against max(1,l)^a = 1.
inline double jacobi_bound_ratio(int ell, double alpha, double beta, double theta) {
  if (theta <= 0.0 || theta >= 3.141592653589793 + 1e-12)
    throw std::invalid_argument("jacobi_bound_ratio: theta outside (0, pi)");
  const double av = std::abs(jacobi_p(ell, alpha, beta, std::cos(theta)));
  const double el = std::max(1, ell);
  double rhs;
  if (theta <= 1.5707963267948966) {
    rhs = (ell == 0) ? 1.0
                     : std::min(std::pow(el, alpha),
                                std::pow(el, -0.5) * std::pow(theta, -alpha - 0.5));
  } else {
    rhs = (ell == 0) ? 1.0
                     : std::min(std::pow(el, beta),
                                std::pow(el, -0.5) * std::pow(3.141592653589793 - theta, -beta - 0.5));
  }
  return av / rhs;
}

/// Gamma(d + alpha + 1) / d!  for integer alpha >= 0: the rising product
/// (d+1)(d+2)...(d+alpha).  Empty product for alpha = 0.
inline double gamma_ratio(int d, int alpha) {
  if (d < 0 || alpha < 0) throw std::invalid_argument("gamma_ratio: negative argument");
  double r = 1.0;
  for (int j = 1; j <= alpha; ++j) {
    r *= static_cast<double>(d) + static_cast<double>(j);
    if (!std::isfinite(r)) throw std::overflow_error("gamma_ratio: overflow");
  }
  return r;
}

namespace detail {

inline long double bessel_series(int nu, long double x) {
  // Ascending series; safe for x < 14 where cancellation costs < 5 digits,
  // well inside long-double headroom.
  const long double half = 0.5L * x;
  long double term = 1.0L;
  for (int k = 1; k <= nu; ++k) term *= half / static_cast<long double>(k);
  long double sum = term;
  const long double hh = half * half;
  for (int m = 1; m <= 400; ++m) {
    term *= -hh / (static_cast<long double>(m) * static_cast<long double>(nu + m));
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-22L + 1e-4940L) break;
  }
  return sum;
}

inline long double bessel_hankel01(int nu, long double x) {
  // Large-argument (Hankel) expansion for orders 0 and 1; truncated at the
  // smallest term.  For x >= 14 the optimal truncation error is ~exp(-2x).
  const long double mu = 4.0L * nu * nu;
  long double p = 1.0L, q = 0.0L, a = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    const long double a_next = a * (mu - odd * odd) / (8.0L * k * x);
    if (std::abs(a_next) >= std::abs(a) && k > 2) break;
    a = a_next;
    const int r = k % 4;
    if (r == 0) p += a;
    else if (r == 1) q += a;
    else if (r == 2) p -= a;
    else q -= a;
  }
  const long double chi = x - (2.0L * nu + 1.0L) * 0.78539816339744830961L;
  return std::sqrt(2.0L / (3.14159265358979323846L * x)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

inline long double bessel_miller(int nu, long double x) {
  // Downward recurrence normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1;
  // the standard route when nu > x and the upward recurrence is unstable.
  const int start = nu + static_cast<int>(std::ceil(std::sqrt(40.0 * nu))) + 16;
  long double jp1 = 0.0L, jc = 1e-300L, norm = 0.0L, out = 0.0L;
  for (int k = start; k >= 1; --k) {
    const long double jm1 = (2.0L * k / x) * jc - jp1;
    jp1 = jc;
    jc = jm1;  // J_{k-1} up to normalization
    if (std::abs(jc) > 1e280L) {
      jc *= 1e-280L;
      jp1 *= 1e-280L;
      norm *= 1e-280L;
      out *= 1e-280L;
    }
    const int order = k - 1;
    if (order == nu) out = jc;
    if (order % 2 == 0) norm += (order == 0 ? 1.0L : 2.0L) * jc;
  }
  return out / norm;
}

}  // namespace detail

/// Bessel function J_nu(x) for integer nu >= 0 and x >= 0.
/// Series below x = 14; Hankel expansion plus upward recurrence when
/// nu <= x; Miller's normalized downward recurrence when nu > x.
inline double bessel_j(int nu, double x) {
  if (nu < 0) throw std::invalid_argument("bessel_j: negative order");
  if (x < 0.0) throw std::invalid_argument("bessel_j: negative argument");
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  const long double lx = static_cast<long double>(x);
  if (x < 14.0) return static_cast<double>(detail::bessel_series(nu, lx));
  if (nu <= 1) return static_cast<double>(detail::bessel_hankel01(nu, lx));
  if (static_cast<double>(nu) <= x) {
    long double jm1 = detail::bessel_hankel01(0, lx);
    long double jc = detail::bessel_hankel01(1, lx);
    for (int k = 1; k < nu; ++k) {
      const long double jp1 = (2.0L * k / lx) * jc - jm1;
      jm1 = jc;
      jc = jp1;
    }
    return static_cast<double>(jc);
  }
  return static_cast<double>(detail::bessel_miller(nu, lx));
}

}  // namespace crsphere
