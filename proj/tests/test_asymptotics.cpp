#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "crsphere/asymptotics.hpp"

using namespace crsphere;

TEST(FhComparison, DegreeZeroSmallAngleCoefficient) {
  // lhs - leading = -theta^{5/2}/12 + O(theta^{9/2}) at l=0, alpha=beta=0
  for (double theta : {2e-3, 5e-3, 1e-2}) {
    const double diff = fh_lhs(0, 0, 0, theta) - fh_leading(0, 0, 0, theta);
    EXPECT_NEAR(diff / std::pow(theta, 2.5), -1.0 / 12.0, 0.02 / 12.0) << theta;
  }
}

TEST(FhComparison, LeadingTermDominatesAtSmallAngle) {
  for (int ell : {5, 12, 30}) {
    for (int alpha : {0, 1}) {
      const double theta = 0.05;
      const double lhs = fh_lhs(ell, alpha, 2, theta);
      const double lead = fh_leading(ell, alpha, 2, theta);
      EXPECT_NEAR(lhs / lead, 1.0, 0.05) << "l=" << ell << " alpha=" << alpha;
    }
  }
}

TEST(FhComparison, ScaledRemainderBoundedAcrossDegreeDoubling) {
  const std::vector<int> ells{20, 40, 80};
  const std::pair<int, int> params[] = {{0, 0}, {1, 3}};
  for (const auto& [alpha, beta] : params) {
    const auto rows = fh_remainder_check(alpha, beta, ells);
    ASSERT_EQ(rows.size(), ells.size());
    double lo = 1e300, hi = 0.0;
    for (const auto& r : rows) {
      EXPECT_GT(r.sup_scaled, 0.0);
      lo = std::min(lo, r.sup_scaled);
      hi = std::max(hi, r.sup_scaled);
      EXPECT_GE(r.argmax_theta, 0.01);
      EXPECT_LE(r.argmax_theta, 1.2);
    }
    EXPECT_LT(hi / lo, 3.0) << "alpha=" << alpha << " beta=" << beta;
  }
}

TEST(FhComparison, RejectsBadThetaRange) {
  EXPECT_THROW(fh_remainder_check(0, 0, {10}, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(fh_remainder_check(0, 0, {10}, 0.5, 1.6), std::invalid_argument);
}

namespace {

// plain-loop reference without phase reduction
std::complex<double> oscillatory_reference(double mu, double eps, const CutoffProfile& phi) {
  std::complex<double> acc{0.0, 0.0};
  const auto a = phi.support_lo(), b = phi.support_hi();
  for (std::int64_t k = static_cast<std::int64_t>(std::ceil(a / eps));
       k <= static_cast<std::int64_t>(std::floor(b / eps)); ++k) {
    const double w = phi.eval(eps * static_cast<double>(k));
    if (w == 0.0) continue;
    acc += std::polar(w, 2.0 * kPi * mu * static_cast<double>(k));
  }
  return acc;
}

}  // namespace

TEST(OscillatorySum, MatchesPlainLoopReference) {
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  for (double mu : {0.3, 0.45}) {
    for (double eps : {1e-2, 1e-3}) {
      const auto fast = oscillatory_sum(mu, eps, phi, unit_symbol());
      const auto ref = oscillatory_reference(mu, eps, phi);
      EXPECT_NEAR(std::abs(fast - ref), 0.0, 1e-9 * std::max(1.0, std::abs(ref)))
          << "mu=" << mu << " eps=" << eps;
    }
  }
}

TEST(OscillatorySum, DyadicIntegerShiftsAreExact) {
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  const double mu = 0.3125;  // dyadic: mu + k is exactly representable
  const auto base = oscillatory_sum(mu, 1e-3, phi, unit_symbol());
  for (double shift : {1.0, 2.0, 16.0, -5.0}) {
    const auto shifted = oscillatory_sum(mu + shift, 1e-3, phi, unit_symbol());
    EXPECT_EQ(base.real(), shifted.real()) << shift;
    EXPECT_EQ(base.imag(), shifted.imag()) << shift;
  }
}

TEST(OscillatorySum, GenericShiftsAgreeToRounding) {
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  const auto base = oscillatory_sum(0.3, 1e-3, phi, unit_symbol());
  const auto shifted = oscillatory_sum(7.3, 1e-3, phi, unit_symbol());
  // fl(7.3) - 7 and fl(0.3) differ by ~5e-16, amplified by k <= 4e3 terms
  EXPECT_NEAR(std::abs(base - shifted), 0.0, 1e-7);
}

TEST(OscillatorySum, SymbolWeighting) {
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  const auto s0 = s0_test_symbol();
  // the S0 symbol tends to 1 at large k, so small eps brings the two sums together
  const auto a = oscillatory_sum(0.25, 1e-4, phi, unit_symbol());
  const auto b = oscillatory_sum(0.25, 1e-4, phi, s0);
  EXPECT_NEAR(std::abs(a - b) / std::max(1.0, std::abs(a)), 0.0, 1e-4);
  for (std::int64_t k : {1, 5, 100}) {
    const double kd = static_cast<double>(k);
    EXPECT_DOUBLE_EQ(s0(k).real(), kd / std::sqrt(1.0 + kd * kd));
  }
}

TEST(OscillatorySum, RejectsProfilesTouchingZero) {
  const auto low = make_lowpass(1.0, 4.0);
  EXPECT_THROW(oscillatory_sum(0.3, 1e-2, low, unit_symbol()), std::invalid_argument);
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  EXPECT_THROW(oscillatory_sum(0.3, 1e-30, phi, unit_symbol()), std::invalid_argument);
}

TEST(PoissonSweep, RatiosStayBelowEnvelope) {
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  for (const auto& sigma : {unit_symbol(), s0_test_symbol()}) {
    const auto rows = poisson_bound_sweep({0.1, 0.25, 0.5}, {1.0, 0.5, 0.1, 0.01}, 3, phi, sigma);
    ASSERT_EQ(rows.size(), 12u);
    for (const auto& r : rows) {
      EXPECT_FALSE(r.skipped);
      EXPECT_GE(r.bound, 1.0);
      EXPECT_LT(r.ratio, 10.0) << "mu=" << r.mu << " eps=" << r.eps;
    }
  }
}

TEST(PoissonSweep, OutOfRegimeRowsAreSkipped) {
  const auto phi = make_bump(1.0, 1.5, 3.0, 4.0);
  const auto rows = poisson_bound_sweep({0.25}, {2.0, 1.0}, 3, phi, unit_symbol());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].skipped);
  EXPECT_FALSE(rows[1].skipped);
  EXPECT_THROW(poisson_bound_sweep({1.0}, {1.0}, 3, phi, unit_symbol()),
               std::invalid_argument);
}
