#include <gtest/gtest.h>

#include <cmath>

#include "crsphere/sobolev.hpp"

using namespace crsphere;

namespace {

ZonalSpectralData sample_data() {
  ZonalSpectralData u{1, {}};
  u.coeff[{1, 1}] = {1.0, 0.5};
  u.coeff[{3, 2}] = {-0.2, 0.9};
  u.coeff[{5, 0}] = {0.8, 0.0};
  u.coeff[{0, 2}] = {0.0, -1.1};
  u.coeff[{6, 6}] = {0.4, 0.4};
  return u;
}

}  // namespace

TEST(Sobolev, OrderZeroIsPlainL2OnBothScales) {
  const auto u = sample_data();
  const double w0 = norm_w(u, 0.0);
  const double h0 = norm_h(u, 0.0);
  EXPECT_NEAR(w0, h0, 1e-14 * w0);
  double acc = 0.0;
  for (const auto& [idx, c] : u.coeff)
    acc += std::norm(c) * static_cast<double>(eigen_data(idx, 1).dim) / surface_area(1);
  EXPECT_NEAR(w0, std::sqrt(acc), 1e-12 * w0);
}

TEST(Sobolev, L2NormMatchesQuadratureOfSynthesis) {
  const auto u = sample_data();
  const auto grid = make_disk_grid(1, 256, 32);
  const auto samples = synthesize(u, grid);
  const double quad = std::sqrt(quad_real(grid, [&](int i, int j) {
    return std::norm(samples[static_cast<std::size_t>(i) * grid.n_omega + j]);
  }));
  EXPECT_NEAR(quad / norm_w(u, 0.0), 1.0, 1e-10);
}

TEST(Sobolev, WeightMonotoneInOrder) {
  const auto u = sample_data();
  EXPECT_LE(norm_w(u, 0.5), norm_w(u, 1.0));
  EXPECT_LE(norm_w(u, 1.0), norm_w(u, 2.0));
  EXPECT_LE(norm_h(u, 0.5), norm_h(u, 1.0));
}

TEST(Sobolev, ScaleComparisonInclusions) {
  // lambda <= mu gives |u|_{W^r} <= |u|_{H^r};  1+mu <= (1+lambda)^2 gives
  // |u|_{H^s} <= |u|_{W^{2s}}; both with constant 1
  const auto u = sample_data();
  for (double r : {0.5, 1.0, 1.75}) {
    EXPECT_LE(norm_w(u, r), norm_h(u, r) * (1.0 + 1e-14));
    EXPECT_LE(norm_h(u, r), norm_w(u, 2.0 * r) * (1.0 + 1e-14));
  }
}

TEST(Sobolev, ConeEdgeSplitIsAPartition) {
  const auto u = sample_data();
  const auto [cone, edge] = project_cone_edge(u, 4.0);
  EXPECT_EQ(cone.coeff.size() + edge.coeff.size(), u.coeff.size());
  for (const auto& [idx, c] : u.coeff) {
    const bool in_cone = cone.coeff.count(idx) == 1;
    const bool in_edge = edge.coeff.count(idx) == 1;
    EXPECT_NE(in_cone, in_edge);
    EXPECT_EQ(in_cone ? cone.coeff.at(idx) : edge.coeff.at(idx), c);
  }
  // rays must land on the edge side
  EXPECT_EQ(edge.coeff.count({5, 0}), 1u);
  EXPECT_EQ(edge.coeff.count({0, 2}), 1u);
  EXPECT_EQ(cone.coeff.count({6, 6}), 1u);
}

TEST(Sobolev, MixedNormCombinesParts) {
  const auto u = sample_data();
  const double r = 1.25, s = 0.5, M = 4.0;
  const auto [cone, edge] = project_cone_edge(u, M);
  const double combined = std::hypot(norm_w(cone, r), norm_w(edge, s));
  EXPECT_NEAR(norm_mixed(u, r, s, M) / combined, 1.0, 1e-13);
  // pure-exponent degeneracies
  EXPECT_NEAR(norm_mixed(u, r, r, M), norm_w(u, r), 1e-13 * norm_w(u, r));
}

TEST(Sobolev, EmbeddingReportStableUnderCapDoubling) {
  const auto rep = embedding_report(4.0, 400, 1);
  // cone: (1+mu)/(1+lambda) approaches (M+1)^2/(2M) = 25/8 at the sector wall
  EXPECT_GT(rep.cone_ratio_min, 1.0 - 1e-12);
  EXPECT_LT(rep.cone_ratio_max, 25.0 / 8.0 + 1e-6);
  EXPECT_GT(rep.cone_ratio_max, 3.0);
  EXPECT_NEAR(rep.cone_ratio_max, rep.cone_ratio_max_halfcap, 0.05 * rep.cone_ratio_max);
  // low-min strip: (1+lambda)/sqrt(1+mu) pinched between constants
  EXPECT_GT(rep.lowmin_ratio_min, 0.9);
  EXPECT_LT(rep.lowmin_ratio_max, 2.0 * 4.0 + 1.0 + 1.0);
  EXPECT_NEAR(rep.lowmin_ratio_max, rep.lowmin_ratio_max_halfcap,
              0.05 * rep.lowmin_ratio_max);
}

TEST(Sobolev, MixedNormRejectsBadAperture) {
  const auto u = sample_data();
  EXPECT_THROW(norm_mixed(u, 1.0, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(project_cone_edge(u, 1.0), std::invalid_argument);
}
