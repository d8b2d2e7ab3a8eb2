#include "urn/conditions.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "urn/error.hpp"

namespace urn {

namespace {

std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

Eigen::VectorXd sample_dirichlet(Index size, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd x(size);
  for (Index i = 0; i < size; ++i) x[i] = expo(rng);
  return x / x.sum();
}

ConditionReport check_contraction(const SimplexMap& map, const FixedPointSet& fps,
                                  const ContractionOptions& options) {
  const Distribution* center = options.center ? &*options.center : fps.attracting();
  if (!center)
    throw Error(Errc::NoAttractingPoint,
                fps.note.empty() ? "fixed-point set has no attracting point" : fps.note);
  if (options.samples < 1) throw Error(Errc::InvalidArgument, "samples must be >= 1");

  const Eigen::VectorXd& q0 = center->weights();
  std::mt19937_64 rng(options.seed);
  double worst = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd witness;
  std::size_t kept = 0;

  for (std::size_t s = 0; s < options.samples; ++s) {
    const Eigen::VectorXd p = sample_dirichlet(map.dimension(), rng);
    bool near_fixed = (p - q0).norm() < options.exclusion_radius;
    for (const auto& fp : fps.points)
      near_fixed = near_fixed || (p - fp.point.weights()).norm() < options.exclusion_radius;
    if (near_fixed) continue;
    ++kept;
    const double ratio = (map.apply<double>(p) - q0).norm() / (p - q0).norm();
    if (ratio > worst) {
      worst = ratio;
      witness = p;
    }
  }
  if (kept == 0)
    throw Error(Errc::AllSamplesExcluded, "every sample fell within the exclusion radius");

  ConditionReport r;
  r.condition = "contraction";
  r.worst_value = worst;
  r.pass = worst < 1.0 - options.tolerance;
  r.witness = std::move(witness);
  r.parameters = {{"samples", static_cast<double>(options.samples)},
                  {"kept", static_cast<double>(kept)},
                  {"exclusion_radius", options.exclusion_radius},
                  {"tolerance", options.tolerance}};
  if (!r.pass) r.note = "ratio reached " + shortest(worst) + " >= 1";
  return r;
}

ConditionReport check_boundary_repulsion(const SimplexMap& map, const FixedPointSet& fps,
                                         const Distribution& p0, const BoundaryOptions& options) {
  const auto targets = fps.repelling_boundary();
  if (targets.empty()) throw Error(Errc::InvalidArgument, "no non-attracting boundary fixed point");
  if (p0.size() != map.dimension())
    throw Error(Errc::InvalidArgument, "p0 has the wrong number of labels");
  if (options.radii.empty()) throw Error(Errc::InvalidArgument, "no probe radii");
  for (std::size_t i = 0; i + 1 < options.radii.size(); ++i)
    if (!(options.radii[i + 1] < options.radii[i]))
      throw Error(Errc::InvalidArgument, "probe radii must be strictly decreasing");
  if (options.samples_per_radius < 1)
    throw Error(Errc::InvalidArgument, "samples_per_radius must be >= 1");

  for (std::size_t j : targets) {
    const auto& fp = fps.points[j];
    if (!(fp.boundary.dot(p0.weights()) > 0.0))
      throw Error(Errc::InitialMassZero, "p0 puts no mass off the support of " + fp.label);
  }

  ConditionReport r;
  r.condition = "boundary_repulsion";
  r.worst_value = std::numeric_limits<double>::infinity();
  r.pass = true;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t j : targets) {
    const auto& fp = fps.points[j];
    const Eigen::VectorXd& q = fp.point.weights();
    for (double radius : options.radii) {
      double min_ratio = std::numeric_limits<double>::infinity();
      Eigen::VectorXd min_at;
      for (std::size_t s = 0; s < options.samples_per_radius; ++s) {
        // Walk from q toward a uniform simplex point; convexity keeps p feasible.
        const Eigen::VectorXd d = sample_dirichlet(map.dimension(), rng);
        const double span = (d - q).norm();
        if (span == 0.0) continue;
        const double lambda = std::min(1.0, radius / span) * (1.0 - unit(rng));
        const Eigen::VectorXd p = (1.0 - lambda) * q + lambda * d;
        const double escaped = fp.boundary.dot(p);
        if (!(escaped > 0.0)) continue;
        const double ratio = fp.boundary.dot(map.apply<double>(p)) / escaped;
        if (ratio < min_ratio) {
          min_ratio = ratio;
          min_at = p;
        }
      }
      r.parameters.emplace_back("min_ratio[" + fp.label + ",r=" + shortest(radius) + "]", min_ratio);
      if (!(min_ratio >= 1.0 + options.margin)) r.pass = false;
      if (min_ratio < r.worst_value) {
        r.worst_value = min_ratio;
        r.witness = min_at;
      }
    }
    r.parameters.emplace_back("initial_mass[" + fp.label + "]", fp.boundary.dot(p0.weights()));
  }
  r.parameters.emplace_back("margin", options.margin);
  r.parameters.emplace_back("samples_per_radius", static_cast<double>(options.samples_per_radius));
  if (!r.pass) r.note = "a probe radius had minimum ratio below 1 + margin";
  return r;
}

ConditionReport check_growth_ratio(const GrowthSchedule& schedule, const FixedPointSet& fps,
                                   const GrowthOptions& options) {
  if (options.horizon < 1) throw Error(Errc::InvalidArgument, "horizon must be >= 1");
  if (options.burn_in < 0 || options.burn_in >= options.horizon)
    throw Error(Errc::InvalidArgument, "burn_in must lie in [0, horizon)");

  const auto ks = schedule.materialize(options.horizon);
  double worst = 1.0;
  std::int64_t worst_n = 0;
  for (std::size_t n = static_cast<std::size_t>(options.burn_in); n + 1 < ks.size(); ++n) {
    if (ks[n + 1] < ks[n] + 1)
      throw Error(Errc::NonIncreasingSchedule, "k_" + std::to_string(n + 1) + " <= k_" + std::to_string(n));
    const double ratio = static_cast<double>(ks[n + 1]) / static_cast<double>(ks[n]);
    if (ratio > worst) {
      worst = ratio;
      worst_n = static_cast<std::int64_t>(n);
    }
  }

  ConditionReport r;
  r.condition = "growth_ratio";
  r.worst_value = worst;
  r.parameters = {{"horizon", static_cast<double>(options.horizon)},
                  {"burn_in", static_cast<double>(options.burn_in)},
                  {"C_emp", worst},
                  {"argmax_n", static_cast<double>(worst_n)}};
  if (fps.points.size() < 2) {
    r.pass = true;
    r.note = "fewer than two fixed points: distance condition is vacuous";
    return r;
  }
  const double d_min = fps.min_pairwise_distance();
  r.parameters.emplace_back("d_min", d_min);
  r.pass = worst - 1.0 < d_min;
  if (!r.pass)
    r.note = "C_emp - 1 = " + shortest(worst - 1.0) + " is not below d_min = " + shortest(d_min);
  return r;
}

}  // namespace urn
