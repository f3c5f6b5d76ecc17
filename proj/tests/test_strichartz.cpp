#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "crsphere/strichartz.hpp"

using namespace crsphere;

namespace {

ZonalSpectralData single_block(SpectralIndex idx, Complex c, int n = 1) {
  ZonalSpectralData u{n, {}};
  u.coeff[idx] = c;
  return u;
}

}  // namespace

TEST(Evolve, UnitaryBlockwisePhases) {
  auto u = single_block({1, 1}, {1.0, 0.0});
  u.coeff[{2, 0}] = {0.0, 2.0};
  const double t = 0.37;
  const auto v = evolve(u, t);
  // lambda(1,1)=4, lambda(2,0)=2 at n=1
  const Complex e4{std::cos(4.0 * t), std::sin(4.0 * t)};
  const Complex e2{std::cos(2.0 * t), std::sin(2.0 * t)};
  EXPECT_NEAR(std::abs(v.coeff.at({1, 1}) - e4), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v.coeff.at({2, 0}) - Complex{0.0, 2.0} * e2), 0.0, 1e-15);
  EXPECT_NEAR(norm_w(v, 1.5), norm_w(u, 1.5), 1e-13 * norm_w(u, 1.5));
  const auto w = evolve(u, 0.0);
  EXPECT_EQ(w.coeff.at({1, 1}), u.coeff.at({1, 1}));
}

TEST(AdmissibleQ, ScalingRelation) {
  EXPECT_DOUBLE_EQ(admissible_q(2.0, 4), 4.0);
  EXPECT_NEAR(admissible_q(4.0, 4), 8.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(admissible_q(2.0, 6), 3.0);
  for (double p : {2.0, 3.0, 5.5, 40.0}) {
    for (int Q : {4, 6, 8}) {
      const double q = admissible_q(p, Q);
      EXPECT_NEAR(2.0 / p + Q / q, Q / 2.0, 1e-12);
    }
  }
  EXPECT_THROW(admissible_q(1.5, 4), std::invalid_argument);
}

TEST(LqNorm, SingleBlockAgainstDirectQuadrature) {
  const SpectralIndex idx{2, 1};
  const Complex c{0.6, -0.8};  // |c| = 1
  const auto u = single_block(idx, c);
  const auto grid = make_disk_grid(1, 256, 8);
  const auto blk = zonal_block(idx, 1);
  for (double q : {2.0, 4.0, 6.0}) {
    const double direct = std::pow(quad_real(grid, [&](int i, int) {
      return std::pow(std::abs(blk.theta_factor(grid.theta[i])), q);
    }), 1.0 / q);
    EXPECT_NEAR(lq_norm(u, grid, q) / (std::abs(c) * direct), 1.0, 1e-10) << q;
  }
  EXPECT_NEAR(lq_norm(u, grid, 2.0) / norm_w(u, 0.0), 1.0, 1e-9);
}

TEST(SpacetimeNorm, SingleBlockProductIdentity) {
  const auto u = single_block({3, 3}, {0.0, 1.7});
  const auto grid = make_disk_grid(1, 192, 4);
  const double p = 2.0, q = 4.0, t1 = 0.7;
  const auto st = spacetime_norm(u, p, q, 0.0, t1, 8, grid);
  EXPECT_TRUE(st.converged);
  const double expected = std::pow(t1, 1.0 / p) * lq_norm(u, grid, q);
  EXPECT_NEAR(st.value / expected, 1.0, 1e-10);
}

TEST(SpacetimeNorm, TwoBlockL2IsTimeInvariant) {
  auto u = single_block({1, 1}, {1.0, 0.0});
  u.coeff[{2, 2}] = {0.5, 0.5};
  const auto grid = make_disk_grid(1, 128, 4);
  const auto st = spacetime_norm(u, 2.0, 2.0, 0.0, 1.0, 8, grid);
  EXPECT_TRUE(st.converged);
  EXPECT_NEAR(st.value / norm_w(u, 0.0), 1.0, 1e-9);
  EXPECT_GE(st.samples, 10);  // beat of the lambda gap 8 forces extra samples
}

TEST(SpacetimeNorm, RefinementStable) {
  auto u = single_block({1, 1}, {1.0, 0.0});
  u.coeff[{2, 2}] = {0.5, 0.5};
  u.coeff[{1, 2}] = {0.0, -0.3};
  const auto grid = make_disk_grid(1, 96, 16);
  const auto coarse = spacetime_norm(u, 2.0, 4.0, 0.0, 1.0, 16, grid);
  const auto fine = spacetime_norm(u, 2.0, 4.0, 0.0, 1.0, 256, grid);
  EXPECT_TRUE(coarse.converged);
  EXPECT_TRUE(fine.converged);
  EXPECT_NEAR(coarse.value / fine.value, 1.0, 5e-3);
}

TEST(Quotient, SingleDiagBlockClosedForm) {
  const SpectralIndex idx{4, 4};
  const auto u = single_block(idx, {1.0, 0.0});
  const auto grid = make_disk_grid(1, 256, 4);
  const auto r = strichartz_quotient(u, 2.0, 4.0 / 3.0, 4.0, 0.0, 1.0, grid);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.s_below_threshold);
  EXPECT_DOUBLE_EQ(r.q, 4.0);
  const double lam = static_cast<double>(eigen_data(idx, 1).lambda);
  const double expected_den = std::pow(1.0 + lam, 1.0 / 3.0) * norm_w(u, 0.0);
  EXPECT_NEAR(r.denominator / expected_den, 1.0, 1e-12);
  EXPECT_NEAR(r.numerator / lq_norm(u, grid, 4.0), 1.0, 1e-9);
  EXPECT_NEAR(r.value, r.numerator / r.denominator, 1e-15);

  const auto low = strichartz_quotient(u, 2.0, 1.0, 4.0, 0.0, 1.0, grid);
  EXPECT_TRUE(low.s_below_threshold);

  ZonalSpectralData empty{1, {}};
  EXPECT_THROW(strichartz_quotient(empty, 2.0, 4.0 / 3.0, 4.0, 0.0, 1.0, grid),
               std::domain_error);
}

TEST(OptimalityExponents, ContinuousAtBranchWithFrozenGrowthRates) {
  const double q0 = 6.0;  // 2(2n+1)/(2n-1) at n=1
  const auto e = optimality_exponents(q0, 1);
  EXPECT_DOUBLE_EQ(e.q_branch, 6.0);
  EXPECT_NEAR(e.alpha, -1.0 / 6.0, 1e-15);
  EXPECT_NEAR(e.beta, 0.5, 1e-15);
  EXPECT_NEAR(e.growth_cone(), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(e.growth_edge(), 1.0 / 3.0, 1e-15);
  // approach from below: the subcritical formulas give the same limit
  const auto sub = optimality_exponents(q0 - 1e-9, 1);
  EXPECT_NEAR(sub.alpha, e.alpha, 1e-9);
  EXPECT_NEAR(sub.beta, e.beta, 1e-8);
  // a supercritical sample
  const auto sup = optimality_exponents(10.0, 2);
  EXPECT_NEAR(sup.q_branch, 10.0 / 3.0, 1e-15);
  EXPECT_NEAR(sup.alpha, 2.0 * (0.5 - 0.1) - 0.5, 1e-15);
  EXPECT_THROW(optimality_exponents(1.5, 1), std::invalid_argument);
}

TEST(GrowthFit, HolomorphicFamilySlopeIsOneThird) {
  const auto fit = eigenfunction_growth_fit(ZonalFamily::Holo, 6.0, 1, {8, 16, 32, 64}, 256);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.slope, 1.0 / 3.0, 0.05);
  ASSERT_EQ(fit.points.size(), 4u);
  for (std::size_t k = 1; k < fit.points.size(); ++k)
    EXPECT_GT(fit.points[k].second, fit.points[k - 1].second);
}

TEST(Duhamel, ConstantForcingClosedForm) {
  const Complex c{0.4, 1.1};
  const double t = 0.8;
  const auto f = [&](double) {
    ZonalSpectralData g{1, {}};
    g.coeff[{1, 1}] = c;
    g.coeff[{0, 0}] = {1.0, 0.0};
    return g;
  };
  const auto r = duhamel(f, 1, t, 16);
  EXPECT_TRUE(r.converged);
  const double lam = 4.0;
  const Complex i_lam{0.0, lam};
  const Complex expected = c * (Complex{std::cos(t * lam), std::sin(t * lam)} - 1.0) / i_lam;
  EXPECT_NEAR(std::abs(r.value.coeff.at({1, 1}) - expected), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(r.value.coeff.at({0, 0}) - Complex{t, 0.0}), 0.0, 1e-10);
}

TEST(Duhamel, OscillatingForcingClosedForm) {
  const double t = 0.6, omega = 1.0, lam = 4.0;
  const auto f = [&](double tau) {
    ZonalSpectralData g{1, {}};
    g.coeff[{1, 1}] = Complex{std::cos(omega * tau), std::sin(omega * tau)};
    return g;
  };
  const auto r = duhamel(f, 1, t, 16);
  EXPECT_TRUE(r.converged);
  const Complex eit{std::cos(t * lam), std::sin(t * lam)};
  const Complex i_gap{0.0, omega - lam};
  const Complex egap{std::cos(t * (omega - lam)), std::sin(t * (omega - lam))};
  const Complex expected = eit * (egap - 1.0) / i_gap;
  EXPECT_NEAR(std::abs(r.value.coeff.at({1, 1}) - expected), 0.0, 1e-8);
  EXPECT_THROW(duhamel(f, 1, 0.0), std::invalid_argument);
}
