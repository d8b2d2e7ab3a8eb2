#pragma once

#include <optional>
#include <string>
#include <vector>

#include "urn/distribution.hpp"
#include "urn/group.hpp"
#include "urn/simplex_map.hpp"

namespace urn {

inline constexpr double kFixedPointTolerance = 1e-10;

struct FixedPoint {
  Distribution point;
  /// 1 off the support, 0 on it. All zeros for interior points.
  Eigen::VectorXd boundary;
  std::string label;

  bool on_boundary() const { return (boundary.array() > 0.0).any(); }
};

struct FixedPointSet {
  std::vector<FixedPoint> points;
  std::optional<std::size_t> attracting_index;
  /// Set when no attracting point exists or the listing is not exhaustive.
  std::string note;

  const Distribution* attracting() const {
    return attracting_index ? &points[*attracting_index].point : nullptr;
  }
  /// Boundary points other than the attracting one.
  std::vector<std::size_t> repelling_boundary() const;
  double min_pairwise_distance() const;
};

/// 0/1 indicator of the complement of a support.
Eigen::VectorXd boundary_vector(const Distribution& q);

/// sup-norm residual |T(q) - q|
double fixed_point_residual(const SimplexMap& map, const Distribution& q);

/// Fixed points of the convolution, parity or genotype map.
///
/// Convolution: the uniform distributions over every subgroup, attracting point
/// uniform over G. Parity (k >= 2): the point mass on 0, uniform, and the point mass
/// on 1 when k is odd; attracting point uniform. Genotype: p_A in {0, 1}, plus
/// t/(s+t) when s and t are both non-zero with the same sign; the attracting point
/// follows the sign pattern of (s, t) and is absent when s = t = 0 or both are
/// negative.
///
/// Each listed point is checked against kFixedPointTolerance. Custom maps are not
/// supported.
FixedPointSet find_fixed_points(const SimplexMap& map,
                                std::size_t subgroup_cap = kDefaultSubgroupCap);

}  // namespace urn
