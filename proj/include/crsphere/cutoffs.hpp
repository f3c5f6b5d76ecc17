#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crsphere {

namespace detail {

inline double smooth_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

/// C^infinity step: 0 for x <= 0, 1 for x >= 1, strictly monotone between.
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double g = smooth_g(x);
  return g / (g + smooth_g(1.0 - x));
}

}  // namespace detail

/// A compactly supported C^infinity cutoff built from exp(-1/x) steps.
/// Values are exactly 0 off the support and exactly 1 on the plateau.
class CutoffProfile {
 public:
  enum class Kind {
    Bump,      // 0 | rise on (a,a2) | 1 on [a2,b2] | fall on (b2,b) | 0
    LowPass,   // 1 on (-inf, b2], fall on (b2, b), 0 beyond
    HighPass,  // complement of LowPass with the same knees
    EvenBump,  // LowPass applied to |x| (even plateau around 0)
    EtaPlus,   // (1 - EvenBump(x)) restricted to x > 0
    EtaMinus,  // (1 - EvenBump(x)) restricted to x < 0
    LpBand     // chi(scale*x) - chi(4*scale*x) with chi = LowPass(1,4)
  };

  CutoffProfile() = default;
  CutoffProfile(Kind k, double a, double a2, double b2, double b, double scale = 1.0)
      : kind_(k), a_(a), a2_(a2), b2_(b2), b_(b), scale_(scale) {}

  double operator()(double x) const { return eval(x); }

  double eval(double x) const {
    switch (kind_) {
      case Kind::Bump:
        if (x <= a_ || x >= b_) return 0.0;
        if (x < a2_) return detail::smooth_step((x - a_) / (a2_ - a_));
        if (x <= b2_) return 1.0;
        return detail::smooth_step((b_ - x) / (b_ - b2_));
      case Kind::LowPass: return lowpass(x);
      case Kind::HighPass: return 1.0 - lowpass(x);
      case Kind::EvenBump: return lowpass(std::abs(x));
      case Kind::EtaPlus: return x > 0.0 ? 1.0 - lowpass(x) : 0.0;
      case Kind::EtaMinus: return x < 0.0 ? 1.0 - lowpass(-x) : 0.0;
      case Kind::LpBand: {
        const double y = scale_ * x;
        return chi_lp(y) - chi_lp(4.0 * y);
      }
    }
    return 0.0;
  }

  Kind kind() const { return kind_; }
  double support_lo() const { return a_; }
  double support_hi() const { return b_; }
  double plateau_lo() const { return a2_; }
  double plateau_hi() const { return b2_; }
  double scale() const { return scale_; }

 private:
  double lowpass(double x) const {
    if (x <= b2_) return 1.0;
    if (x >= b_) return 0.0;
    return detail::smooth_step((b_ - x) / (b_ - b2_));
  }
  static double chi_lp(double x) {
    if (x <= 1.0) return 1.0;
    if (x >= 4.0) return 0.0;
    return detail::smooth_step((4.0 - x) / 3.0);
  }

  Kind kind_ = Kind::Bump;
  double a_ = 0.0, a2_ = 0.0, b2_ = 0.0, b_ = 1.0;
  double scale_ = 1.0;
};

/// Bump equal to 1 on [a2, b2], supported in (a, b).
inline CutoffProfile make_bump(double a, double a2, double b2, double b) {
  if (!(a < a2 && a2 <= b2 && b2 < b))
    throw std::invalid_argument("make_bump: need a < a2 <= b2 < b");
  return {CutoffProfile::Kind::Bump, a, a2, b2, b};
}

/// 1 on (-inf, plateau_end], 0 on [support_end, inf).
inline CutoffProfile make_lowpass(double plateau_end, double support_end) {
  if (!(plateau_end < support_end))
    throw std::invalid_argument("make_lowpass: need plateau_end < support_end");
  return {CutoffProfile::Kind::LowPass, 0.0, 0.0, plateau_end, support_end};
}

inline CutoffProfile make_highpass(double plateau_end, double support_end) {
  if (!(plateau_end < support_end))
    throw std::invalid_argument("make_highpass: need plateau_end < support_end");
  return {CutoffProfile::Kind::HighPass, 0.0, 0.0, plateau_end, support_end};
}

/// Difference-lattice cutoffs: eta0 is even, 1 for |xi| <= 1/4, 0 for
/// |xi| >= 1/2; eta_plus/eta_minus split 1 - eta0 between the half-lines,
/// so eta0 + eta_plus + eta_minus = 1 on the whole line.
struct EtaFamily {
  CutoffProfile eta0{CutoffProfile::Kind::EvenBump, 0.0, 0.0, 0.25, 0.5};
  CutoffProfile plus{CutoffProfile::Kind::EtaPlus, 0.0, 0.0, 0.25, 0.5};
  CutoffProfile minus{CutoffProfile::Kind::EtaMinus, 0.0, 0.0, 0.25, 0.5};
};

inline EtaFamily eta_family() { return {}; }

/// Cone ratio profile: supported in (1/M, M), 1 on [2/M, M/2].
inline CutoffProfile cone_profile(double M) {
  if (!(M > 2.0)) throw std::invalid_argument("cone_profile: M > 2 required");
  return make_bump(1.0 / M, 2.0 / M, M / 2.0, M);
}

/// Littlewood-Paley partition: lowpass chi plus bands
/// psi_j(x) = chi(4^-j x) - chi(4^-j+1 x), j = 1..J, summing to 1 on
/// [0, 4^J].  Shared knees are evaluated bit-identically, so the telescoping
/// cancellation is exact in floating point.
inline std::pair<CutoffProfile, std::vector<CutoffProfile>> lp_partition(int J) {
  if (J < 1) throw std::invalid_argument("lp_partition: J >= 1 required");
  CutoffProfile low = make_lowpass(1.0, 4.0);
  std::vector<CutoffProfile> bands;
  bands.reserve(J);
  double scale = 1.0;
  for (int j = 1; j <= J; ++j) {
    scale *= 0.25;
    bands.emplace_back(CutoffProfile::Kind::LpBand, 0.0, 0.0, 1.0, 4.0, scale);
  }
  return {low, std::move(bands)};
}

/// The cutoff suite used by the localized kernels: spectral window phi,
/// cone ratio profile psi, difference cutoffs eta, and the cone aperture M
/// plus the compact-window aperture M1.
struct CutoffSet {
  CutoffProfile phi = make_bump(1.0, 1.5, 3.0, 4.0);
  CutoffProfile psi = cone_profile(4.0);
  EtaFamily eta{};
  double M = 4.0;
  double M1 = 11.0;

  static CutoffSet defaults() { return {}; }
};

}  // namespace crsphere
