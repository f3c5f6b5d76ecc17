#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "crsphere/zonal.hpp"

using namespace crsphere;

namespace {

double l2sq_quad(SpectralIndex idx, int n, const DiskGrid& grid) {
  const auto blk = zonal_block(idx, n);
  return quad_real(grid, [&](int i, int) {
    const double v = blk.theta_factor(grid.theta[i]);
    return v * v;
  });
}

Complex inner_quad(SpectralIndex a, SpectralIndex b, int n, const DiskGrid& grid) {
  const auto ba = zonal_block(a, n);
  const auto bb = zonal_block(b, n);
  return quad_complex(grid, [&](int i, int j) {
    return ba.eval(grid.omega[j], grid.theta[i]) *
           std::conj(bb.eval(grid.omega[j], grid.theta[i]));
  });
}

}  // namespace

TEST(Zonal, PoleValueIsDimOverArea) {
  EXPECT_NEAR(zonal_eval({1, 1}, 1, 0.0, 0.0).real(), 3.0 / (2.0 * kPi * kPi), 1e-15);
  for (int n : {1, 2}) {
    for (auto idx : {SpectralIndex{1, 1}, {3, 2}, {0, 4}, {5, 5}, {2, 0}}) {
      const auto ed = eigen_data(idx, n);
      const Complex z = zonal_eval(idx, n, 0.0, 0.0);
      EXPECT_NEAR(z.real(), static_cast<double>(ed.dim) / surface_area(n),
                  1e-12 * z.real());
      EXPECT_EQ(z.imag(), 0.0);
    }
  }
}

TEST(Zonal, SquaredMassEqualsDimOverArea) {
  for (int n : {1, 2}) {
    const auto grid = make_disk_grid(n, 512, 8);
    for (auto idx : {SpectralIndex{1, 1}, {3, 2}, {0, 4}, {5, 5}, {12, 7}}) {
      const auto ed = eigen_data(idx, n);
      const double mass = l2sq_quad(idx, n, grid);
      const double expected = static_cast<double>(ed.dim) / surface_area(n);
      EXPECT_NEAR(mass / expected, 1.0, 1e-9) << "n=" << n << " (" << idx.ell << "," << idx.ellp << ")";
    }
  }
}

TEST(Zonal, DistinctBlocksOrthogonal) {
  const int n = 1;
  const auto grid = make_disk_grid(n, 256, 64);
  const std::pair<SpectralIndex, SpectralIndex> pairs[] = {
      {{1, 2}, {2, 1}},  // opposite angular phases
      {{1, 1}, {2, 2}},  // same phase, different radial profile
      {{1, 3}, {0, 2}},  // same phase +2
      {{2, 0}, {0, 2}},  // phases -2 and +2
      {{4, 1}, {1, 4}},
  };
  for (const auto& [a, b] : pairs) {
    const double na = std::sqrt(l2sq_quad(a, n, grid));
    const double nb = std::sqrt(l2sq_quad(b, n, grid));
    const double cross = std::abs(inner_quad(a, b, n, grid));
    EXPECT_LE(cross / (na * nb), 1e-8)
        << "(" << a.ell << "," << a.ellp << ") vs (" << b.ell << "," << b.ellp << ")";
  }
}

TEST(Zonal, SwapConjugatesPointwise) {
  for (int n : {1, 2}) {
    for (auto idx : {SpectralIndex{1, 2}, {0, 3}, {4, 1}}) {
      const SpectralIndex swp{idx.ellp, idx.ell};
      for (double th : {0.0, 0.4, 1.1}) {
        for (double om : {0.0, 0.9, 2.0 * kPi - 0.3}) {
          const Complex z = zonal_eval(idx, n, om, th);
          const Complex w = zonal_eval(swp, n, om, th);
          EXPECT_NEAR(w.real(), z.real(), 1e-14 * std::max(1.0, std::abs(z)));
          EXPECT_NEAR(w.imag(), -z.imag(), 1e-14 * std::max(1.0, std::abs(z)));
        }
      }
    }
  }
}

TEST(Zonal, BoundRatioPeaksAtPole) {
  for (int n : {1, 2}) {
    double global = 0.0;
    for (int ell = 0; ell <= 25; ++ell) {
      for (int ellp = 0; ellp <= 25; ++ellp) {
        EXPECT_NEAR(zonal_bound_ratio({ell, ellp}, n, 0.0), 1.0, 1e-12);
        for (int k = 1; k <= 120; ++k) {
          const double th = kHalfPi * k / 120.0;
          global = std::max(global, zonal_bound_ratio({ell, ellp}, n, th));
        }
      }
    }
    EXPECT_LE(global, 1.0 + 1e-9) << "n=" << n;
  }
}

TEST(Zonal, SynthesizeProjectRoundTrip) {
  ZonalSpectralData u{1, {}};
  u.coeff[{1, 1}] = {1.0, 2.0};
  u.coeff[{2, 1}] = {0.0, -0.5};
  u.coeff[{1, 3}] = {0.7, 0.0};
  u.coeff[{0, 2}] = {2.0, -1.0};
  u.coeff[{4, 4}] = {0.0, 1.0};
  const auto grid = make_disk_grid(1, 192, 48);
  const auto samples = synthesize(u, grid);
  ASSERT_EQ(samples.size(), static_cast<std::size_t>(192 * 48));
  for (const auto& [idx, c] : u.coeff) {
    const Complex got = project_block(samples, grid, idx, 1);
    EXPECT_NEAR(std::abs(got - c), 0.0, 1e-9 * std::max(1.0, std::abs(c)))
        << "(" << idx.ell << "," << idx.ellp << ")";
  }
  const Complex absent = project_block(samples, grid, {3, 1}, 1);
  EXPECT_LE(std::abs(absent), 1e-9);
}

TEST(Zonal, ProjectCheckedConvergesOnSmoothData) {
  const SpectralIndex idx{2, 1};
  const Complex c{0.3, -1.2};
  const auto blk = zonal_block(idx, 1);
  const auto u = [&](double om, double th) { return c * blk.eval(om, th); };
  const auto r = project_block_checked(u, idx, 1, 96, 32);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.value - c), 0.0, 1e-9);
}

TEST(Zonal, ProjectRejectsMismatchedSampleCount) {
  const auto grid = make_disk_grid(1, 32, 16);
  std::vector<Complex> wrong(10);
  EXPECT_THROW(project_block(wrong, grid, {1, 1}, 1), std::invalid_argument);
}
