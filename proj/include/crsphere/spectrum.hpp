#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace crsphere {

/// Bidegree (ell, ellp) labeling one joint eigenspace.
struct SpectralIndex {
  int ell;
  int ellp;
  friend auto operator<=>(const SpectralIndex&, const SpectralIndex&) = default;
};

/// Joint spectral data of one bidegree: sublaplacian eigenvalue lambda,
/// Laplace-Beltrami eigenvalue mu, eigenspace dimension, the combined
/// frequency N = ell + ellp + n and the angular offset beta = |ellp - ell|.
struct EigenData {
  SpectralIndex idx;
  std::int64_t lambda;
  std::int64_t mu;
  std::int64_t dim;
  std::int64_t N;
  int beta;
};

namespace detail {

/// C(m, k) for small k, exact in extended integers.
inline __int128 binom_small(std::int64_t m, int k) {
  __int128 num = 1;
  for (int j = 0; j < k; ++j) num *= (m - j);
  for (int j = 2; j <= k; ++j) num /= j;
  return num;
}

}  // namespace detail

/// dim H^{l,l'} = n (l+l'+n)/(l l') C(l+n-1, n) C(l'+n-1, n) for l,l' >= 1;
/// C(l+n, n) on the rays l l' = 0.  Exact integer arithmetic throughout.
inline std::int64_t eigenspace_dim(int ell, int ellp, int n) {
  if (ell < 0 || ellp < 0 || n < 1) throw std::invalid_argument("eigenspace_dim: bad index");
  if (ell == 0 || ellp == 0) {
    const std::int64_t top = std::max(ell, ellp);
    return static_cast<std::int64_t>(detail::binom_small(top + n, n));
  }
  __int128 num = static_cast<__int128>(n) * (ell + ellp + n);
  num *= detail::binom_small(ell + n - 1, n);
  num *= detail::binom_small(ellp + n - 1, n);
  const __int128 den = static_cast<__int128>(ell) * ellp;
  if (num % den != 0) throw std::logic_error("eigenspace_dim: non-integer dimension");
  return static_cast<std::int64_t>(num / den);
}

inline EigenData eigen_data(SpectralIndex idx, int n) {
  if (idx.ell < 0 || idx.ellp < 0) throw std::invalid_argument("eigen_data: negative degree");
  if (n < 1) throw std::invalid_argument("eigen_data: n >= 1 required");
  const std::int64_t l = idx.ell, lp = idx.ellp;
  EigenData d;
  d.idx = idx;
  d.lambda = 2 * l * lp + n * (l + lp);
  d.mu = (l + lp) * (l + lp + 2 * n);
  d.dim = eigenspace_dim(idx.ell, idx.ellp, n);
  d.N = l + lp + n;
  d.beta = static_cast<int>(lp > l ? lp - l : l - lp);
  return d;
}

/// Lattice region selectors.  The cone is the strict two-sided sector
/// ell/M < ellp < M*ell; the edge is its complement (it contains the rays).
struct Region {
  enum class Kind { All, Cone, Edge, Diag, Upper, Lower };
  Kind kind = Kind::All;
  double M = 4.0;

  static Region all() { return {Kind::All, 0.0}; }
  static Region cone(double M) { return {Kind::Cone, M}; }
  static Region edge(double M) { return {Kind::Edge, M}; }
  static Region diag() { return {Kind::Diag, 0.0}; }
  static Region upper() { return {Kind::Upper, 0.0}; }
  static Region lower() { return {Kind::Lower, 0.0}; }

  bool contains(int ell, int ellp) const {
    switch (kind) {
      case Kind::All: return true;
      case Kind::Cone: return ell < M * ellp && ellp < M * ell;
      case Kind::Edge: return !(ell < M * ellp && ellp < M * ell);
      case Kind::Diag: return ell == ellp;
      case Kind::Upper: return ellp > ell;
      case Kind::Lower: return ellp < ell;
    }
    return false;
  }
};

/// All bidegrees with lambda in the half-open annulus (a/h^2, b/h^2],
/// filtered by the region, in lexicographic (ell, ellp) order.
inline std::vector<EigenData> enumerate_annulus(double a, double b, double h, int n,
                                                Region region = Region::all()) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("enumerate_annulus: need 0 < a < b");
  if (!(h > 0.0)) throw std::invalid_argument("enumerate_annulus: h > 0 required");
  if (n < 1) throw std::invalid_argument("enumerate_annulus: n >= 1 required");
  const long double lo = static_cast<long double>(a) / (static_cast<long double>(h) * h);
  const long double hi = static_cast<long double>(b) / (static_cast<long double>(h) * h);
  std::vector<EigenData> out;
  for (std::int64_t ell = 0; static_cast<long double>(n) * ell <= hi; ++ell) {
    for (std::int64_t ellp = 0;; ++ellp) {
      const std::int64_t lambda = 2 * ell * ellp + n * (ell + ellp);
      if (static_cast<long double>(lambda) > hi) break;
      if (static_cast<long double>(lambda) > lo &&
          region.contains(static_cast<int>(ell), static_cast<int>(ellp)))
        out.push_back(eigen_data({static_cast<int>(ell), static_cast<int>(ellp)}, n));
    }
  }
  return out;
}

/// Sum of (ell + ellp) over lambda in (a, b], with the ratio against the
/// counting envelope b * (b - a + log(b + 1)).
struct HyperbolicSum {
  std::int64_t sum;
  double bound_ratio;
};

inline HyperbolicSum hyperbolic_sum(double a, double b, int n) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("hyperbolic_sum: need 0 < a < b");
  if (n < 1) throw std::invalid_argument("hyperbolic_sum: n >= 1 required");
  std::int64_t sum = 0;
  for (std::int64_t ell = 0; static_cast<double>(n) * ell <= b; ++ell) {
    for (std::int64_t ellp = 0;; ++ellp) {
      const std::int64_t lambda = 2 * ell * ellp + n * (ell + ellp);
      if (static_cast<double>(lambda) > b) break;
      if (static_cast<double>(lambda) > a) sum += ell + ellp;
    }
  }
  const double envelope = b * (b - a + std::log(b + 1.0));
  return {sum, static_cast<double>(sum) / envelope};
}

}  // namespace crsphere
