#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crsphere/spectrum.hpp"
#include "crsphere/summation.hpp"
#include "crsphere/zonal.hpp"

namespace crsphere {

namespace detail {

template <typename W>
double weighted_l2(const ZonalSpectralData& u, W&& weight) {
  std::vector<double> parts;
  parts.reserve(u.coeff.size());
  for (const auto& [idx, c] : u.coeff) {
    const auto ed = eigen_data(idx, u.n);
    const double block_l2sq = std::norm(c) * static_cast<double>(ed.dim) / surface_area(u.n);
    parts.push_back(weight(ed) * block_l2sq);
  }
  return std::sqrt(tree_sum(parts));
}

}  // namespace detail

/// Sobolev norm of the sublaplacian scale: weights (1 + lambda)^r.
inline double norm_w(const ZonalSpectralData& u, double r) {
  return detail::weighted_l2(u, [r](const EigenData& ed) {
    return std::pow(1.0 + static_cast<double>(ed.lambda), r);
  });
}

/// Sobolev norm of the Laplace-Beltrami scale: weights (1 + mu)^s.
inline double norm_h(const ZonalSpectralData& u, double s) {
  return detail::weighted_l2(u, [s](const EigenData& ed) {
    return std::pow(1.0 + static_cast<double>(ed.mu), s);
  });
}

/// Splits u into its cone part (ell/M < ellp < M ell, strict) and the
/// complementary edge part.
inline std::pair<ZonalSpectralData, ZonalSpectralData> project_cone_edge(
    const ZonalSpectralData& u, double M) {
  if (!(M > 1.0)) throw std::invalid_argument("project_cone_edge: M > 1 required");
  const Region cone = Region::cone(M);
  ZonalSpectralData in{u.n, {}}, out{u.n, {}};
  for (const auto& [idx, c] : u.coeff)
    (cone.contains(idx.ell, idx.ellp) ? in : out).coeff.emplace(idx, c);
  return {std::move(in), std::move(out)};
}

/// Mixed norm: (1+lambda)^r on the cone, (1+lambda)^s on the edge.
inline double norm_mixed(const ZonalSpectralData& u, double r, double s, double M) {
  if (!(M > 1.0)) throw std::invalid_argument("norm_mixed: M > 1 required");
  const Region cone = Region::cone(M);
  return detail::weighted_l2(u, [&](const EigenData& ed) {
    const double expo = cone.contains(ed.idx.ell, ed.idx.ellp) ? r : s;
    return std::pow(1.0 + static_cast<double>(ed.lambda), expo);
  });
}

/// Empirical comparability constants of the two spectral scales:
/// on the cone (1+mu)/(1+lambda) stays bounded; where min(ell,ellp) <= M,
/// (1+lambda)/sqrt(1+mu) is pinched between constants.  Values are reported
/// at the cap and at cap/2 so stability under refinement is observable.
struct EmbeddingReport {
  double cone_ratio_min = 0.0;
  double cone_ratio_max = 0.0;
  double cone_ratio_max_halfcap = 0.0;
  double lowmin_ratio_min = 0.0;
  double lowmin_ratio_max = 0.0;
  double lowmin_ratio_max_halfcap = 0.0;
};

inline EmbeddingReport embedding_report(double M, int lattice_cap, int n) {
  if (!(M > 1.0) || lattice_cap < 4) throw std::invalid_argument("embedding_report: bad inputs");
  EmbeddingReport rep;
  rep.cone_ratio_min = rep.lowmin_ratio_min = 1e300;
  const Region cone = Region::cone(M);
  for (int pass = 0; pass < 2; ++pass) {
    const int cap = pass == 0 ? lattice_cap / 2 : lattice_cap;
    double cone_max = 0.0, lowmin_max = 0.0;
    for (int ell = 0; ell <= cap; ++ell) {
      for (int ellp = 0; ellp <= cap; ++ellp) {
        if (ell == 0 && ellp == 0) continue;
        const auto ed = eigen_data({ell, ellp}, n);
        const double lam = 1.0 + static_cast<double>(ed.lambda);
        const double mu = 1.0 + static_cast<double>(ed.mu);
        if (cone.contains(ell, ellp)) {
          const double r = mu / lam;
          cone_max = std::max(cone_max, r);
          if (pass == 1) rep.cone_ratio_min = std::min(rep.cone_ratio_min, r);
        }
        if (std::min(ell, ellp) <= M) {
          const double r = lam / std::sqrt(mu);
          lowmin_max = std::max(lowmin_max, r);
          if (pass == 1) rep.lowmin_ratio_min = std::min(rep.lowmin_ratio_min, r);
        }
      }
    }
    if (pass == 0) {
      rep.cone_ratio_max_halfcap = cone_max;
      rep.lowmin_ratio_max_halfcap = lowmin_max;
    } else {
      rep.cone_ratio_max = cone_max;
      rep.lowmin_ratio_max = lowmin_max;
    }
  }
  return rep;
}

}  // namespace crsphere
