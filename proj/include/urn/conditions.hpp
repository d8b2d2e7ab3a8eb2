#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "urn/distribution.hpp"
#include "urn/fixed_points.hpp"
#include "urn/schedule.hpp"
#include "urn/simplex_map.hpp"

namespace urn {

/// Outcome of one sampled convergence-hypothesis check.
struct ConditionReport {
  std::string condition;
  bool pass = false;
  double worst_value = 0.0;
  Eigen::VectorXd witness;  // empty when the check has no witness point
  std::vector<std::pair<std::string, double>> parameters;
  std::string note;
};

struct ContractionOptions {
  std::size_t samples = 10000;
  double exclusion_radius = 1e-3;
  std::uint64_t seed = 20240501;
  /// Ratios within this of 1 count as 1; identity-like maps round to 1 +- ulp.
  double tolerance = 1e-12;
  /// Candidate centre when the fixed-point set has no attracting point.
  std::optional<Distribution> center;
};

/// Worst ratio |T(p) - q0| / |p - q0| over Dirichlet(1,...,1) samples of the
/// simplex, skipping samples within exclusion_radius of a listed fixed point.
/// Passes iff the worst ratio is < 1 - tolerance. Euclidean norm throughout.
///
/// Throws NoAttractingPoint without an attracting point or explicit centre, and
/// AllSamplesExcluded when nothing survives the exclusion.
ConditionReport check_contraction(const SimplexMap& map, const FixedPointSet& fps,
                                  const ContractionOptions& options = {});

struct BoundaryOptions {
  std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4};
  std::size_t samples_per_radius = 2000;
  double margin = 1e-3;
  std::uint64_t seed = 20240502;
};

/// For every non-attracting boundary fixed point q_j with indicator c_j:
/// requires <c_j, p0> > 0 and, at each probe radius r, the minimum of
/// <c_j, T(p)> / <c_j, p> over sampled p with |p - q_j| <= r and <c_j, p> > 0.
/// Passes iff every per-radius minimum is >= 1 + margin.
///
/// Throws InitialMassZero when <c_j, p0> = 0 and InvalidArgument when there is
/// no boundary point to probe.
ConditionReport check_boundary_repulsion(const SimplexMap& map, const FixedPointSet& fps,
                                         const Distribution& p0,
                                         const BoundaryOptions& options = {});

struct GrowthOptions {
  std::int64_t horizon = 1000;
  /// Steps skipped before taking the maximum ratio. 0 checks every step.
  std::int64_t burn_in = 0;
};

/// C_emp = max k_{n+1}/k_n over the horizon against d_min, the smallest
/// pairwise distance among fixed points. Passes iff C_emp - 1 < d_min; with
/// fewer than two fixed points the distance condition is vacuous and passes.
ConditionReport check_growth_ratio(const GrowthSchedule& schedule, const FixedPointSet& fps,
                                   const GrowthOptions& options = {});

/// Uniform sample of the simplex.
Eigen::VectorXd sample_dirichlet(Index size, std::mt19937_64& rng);

}  // namespace urn
