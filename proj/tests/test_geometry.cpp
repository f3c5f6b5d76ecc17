#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "crsphere/geometry.hpp"
#include "crsphere/summation.hpp"
#include "crsphere/zonal.hpp"

using namespace crsphere;

namespace {

// Monte-Carlo volume of the unit ball in R^d from a seeded uniform sample of
// the enclosing cube; the sphere area is then d * volume.
double mc_sphere_area(int d, std::size_t samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::size_t inside = 0;
  std::vector<double> x(d);
  for (std::size_t s = 0; s < samples; ++s) {
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const double v = unif(rng);
      r2 += v * v;
    }
    if (r2 <= 1.0) ++inside;
  }
  const double cube = std::pow(2.0, d);
  return d * cube * static_cast<double>(inside) / static_cast<double>(samples);
}

// E |<z, e1>|^{2a} for z uniform on the unit sphere of C^{n+1}, via Gaussian
// normalization.  Closed form: n! a! / (n+a)!.
double mc_first_coordinate_moment(int n, int a, std::size_t samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dim = 2 * (n + 1);
  std::vector<double> g(dim);
  double acc = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double r2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      g[k] = gauss(rng);
      r2 += g[k] * g[k];
    }
    const double w2 = (g[0] * g[0] + g[1] * g[1]) / r2;
    acc += std::pow(w2, a);
  }
  return acc / static_cast<double>(samples);
}

double moment_closed_form(int n, int a) {
  double r = 1.0;
  for (int j = 1; j <= a; ++j) r *= static_cast<double>(j) / (n + j);
  return r;  // n! a! / (n+a)!
}

}  // namespace

TEST(SurfaceArea, ClosedFormValues) {
  EXPECT_NEAR(surface_area(1), 2.0 * kPi * kPi, 1e-13);
  EXPECT_NEAR(surface_area(2), std::pow(kPi, 3), 1e-13);
  EXPECT_NEAR(surface_area(3), std::pow(kPi, 4) / 3.0, 1e-13);
  EXPECT_THROW(surface_area(0), std::invalid_argument);
}

TEST(SurfaceArea, MatchesMonteCarloBallVolume) {
  for (int n : {1, 2}) {
    const double mc = mc_sphere_area(2 * n + 2, 4'000'000, 777u + n);
    EXPECT_NEAR(mc / surface_area(n), 1.0, 5e-3) << "n=" << n;
  }
}

TEST(SphereGeometry, Fields) {
  const auto g = sphere_geometry(2);
  EXPECT_EQ(g.n, 2);
  EXPECT_EQ(g.Q, 6);
  EXPECT_DOUBLE_EQ(g.omega, surface_area(2));
}

TEST(Koranyi, DistanceFromInnerProduct) {
  EXPECT_DOUBLE_EQ(koranyi_distance({1.0, 0.0}), 0.0);
  EXPECT_NEAR(koranyi_distance({-1.0, 0.0}), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(koranyi_distance({0.0, 0.0}), 1.0, 1e-15);
  // |1 - i| = sqrt(2)
  EXPECT_NEAR(koranyi_distance({0.0, 1.0}), std::pow(2.0, 0.25), 1e-15);
  EXPECT_THROW(koranyi_distance({1.5, 0.0}), std::invalid_argument);
}

TEST(GaussLegendre, KnownSmallRules) {
  const auto [x2, w2] = gauss_legendre(2);
  EXPECT_NEAR(x2[0], -1.0 / std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(x2[1], 1.0 / std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(w2[0], 1.0, 1e-13);
  EXPECT_NEAR(w2[1], 1.0, 1e-13);

  const auto [x3, w3] = gauss_legendre(3);
  EXPECT_NEAR(x3[1], 0.0, 1e-13);
  EXPECT_NEAR(x3[2], std::sqrt(0.6), 1e-13);
  EXPECT_NEAR(w3[1], 8.0 / 9.0, 1e-13);
  EXPECT_NEAR(w3[0], 5.0 / 9.0, 1e-13);
}

TEST(GaussLegendre, ExactForPolynomialsBelowTwiceOrder) {
  const int m = 8;
  const auto [x, w] = gauss_legendre(m);
  for (int k = 0; k <= 2 * m - 1; ++k) {
    double q = 0.0;
    for (int i = 0; i < m; ++i) q += w[i] * std::pow(x[i], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    EXPECT_NEAR(q, exact, 1e-14) << "degree " << k;
  }
}

TEST(DiskGrid, WeightsSumToSurfaceArea) {
  for (int n : {1, 2, 3}) {
    const auto g = make_disk_grid(n, 128, 32);
    const double total = tree_sum(g.theta_weight);
    EXPECT_NEAR(total / surface_area(n), 1.0, 1e-13) << "n=" << n;
    double pts = 0.0;
    for (const auto& p : g.points()) pts += p.weight;
    EXPECT_NEAR(pts / surface_area(n), 1.0, 1e-12) << "n=" << n;
  }
}

TEST(DiskGrid, MomentsMatchClosedForm) {
  for (int n : {1, 2}) {
    const auto g = make_disk_grid(n, 256, 8);
    for (int a = 0; a <= 6; ++a) {
      const double q = quad_real(g, [&](int i, int) {
        return std::pow(std::cos(g.theta[i]), 2 * a);
      });
      const double exact = surface_area(n) * moment_closed_form(n, a);
      EXPECT_NEAR(q / exact, 1.0, 1e-12) << "n=" << n << " a=" << a;
    }
  }
}

TEST(DiskGrid, MomentsMatchMonteCarlo) {
  for (int n : {1, 2}) {
    for (int a : {1, 2, 3}) {
      const double mc = mc_first_coordinate_moment(n, a, 2'000'000, 9000u + 10u * n + a);
      EXPECT_NEAR(mc / moment_closed_form(n, a), 1.0, 5e-3) << "n=" << n << " a=" << a;
    }
  }
}

TEST(DiskGrid, RejectsBadArguments) {
  EXPECT_THROW(make_disk_grid(0, 16, 16), std::invalid_argument);
  EXPECT_THROW(make_disk_grid(1, 1, 16), std::invalid_argument);
}

TEST(ScanGrid, CoversClosedQuadrantDenselyNearPole) {
  const auto g = make_scan_grid(180, 256);
  ASSERT_EQ(g.n_theta, 180);
  EXPECT_DOUBLE_EQ(g.theta.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.theta.back(), kHalfPi);
  for (int i = 1; i < g.n_theta; ++i) EXPECT_GT(g.theta[i], g.theta[i - 1]);
  // square-root stretch: first half of the indices covers a quarter of the range
  EXPECT_NEAR(g.theta[89] / kHalfPi, std::pow(89.0 / 179.0, 2.0), 1e-12);
  ASSERT_EQ(g.n_omega, 256);
  EXPECT_DOUBLE_EQ(g.omega.front(), 0.0);
  EXPECT_NEAR(g.omega[255], 2.0 * kPi * 255.0 / 256.0, 1e-15);
}

TEST(TreeSum, DependsOnlyOnElementOrder) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> v(1000);
  for (auto& x : v) x = unif(rng);
  const double s1 = tree_sum(v);
  const double s2 = tree_sum(std::span<const double>(v.data(), v.size()));
  EXPECT_EQ(s1, s2);
  // plain left fold generally differs in the last bits, tree_sum must not
  std::vector<double> w(v);
  const double s3 = tree_sum(w);
  EXPECT_EQ(s1, s3);
}
