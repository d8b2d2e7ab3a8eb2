#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "urn/distribution.hpp"
#include "urn/error.hpp"
#include "urn/schedule.hpp"
#include "urn/simplex_map.hpp"
#include "urn/urn.hpp"

namespace urn {

/// One evaluation of E[Z_{n+1} | F_n] for Z_n = |p_n - q0|^2 against the
/// allowance xi_n = (k_{n+1} - k_n) / k_{n+1}^2.
struct DriftRecord {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t next_k = 0;
  double z = 0.0;
  double xi = 0.0;
  double expected_next_z = 0.0;
  /// E[Z_{n+1} | F_n] - Z_n
  double drift = 0.0;
  /// 0 for exact records
  double drift_stderr = 0.0;
  /// max(0, Z_n + xi_n - E[Z_{n+1} | F_n])
  double zeta = 0.0;
  bool exact = false;
  /// drift <= xi. Decided in rational arithmetic for exact records; for
  /// Monte Carlo records, the estimate is within 3 standard errors of the bound.
  bool within_bound = false;
};

inline constexpr std::size_t kDriftOutcomeCap = 100'000;
inline constexpr std::size_t kLawOutcomeCap = 1'000'000;

/// C(m + d - 1, d - 1), saturating at max size_t.
std::size_t composition_count(std::int64_t m, Index d);

/// Calls f(c) for every c in N^d with sum m, in lexicographically decreasing order.
void for_each_composition(std::int64_t m, Index d, const std::function<void(const Counts&)>& f);

/// Exhaustive enumeration of the Multinomial(next_k - k_n, T(p_n)) batch in
/// rational arithmetic; q0 is taken exactly from its count backing when present.
/// Throws TooManyOutcomes above outcome_cap and Unsupported for custom maps.
DriftRecord exact_conditional_drift(const Snapshot& state, const SimplexMap& map, std::int64_t next_k,
                                    const Distribution& q0, std::size_t outcome_cap = kDriftOutcomeCap);

/// Sample mean over independent batches; replicate r draws from a generator
/// seeded with derive_seed(seed, r).
DriftRecord monte_carlo_drift(const Snapshot& state, const SimplexMap& map, std::int64_t next_k,
                              const Distribution& q0, std::size_t replicates, std::uint64_t seed);

/// splitmix64 of (root, index): independent per-replicate streams.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

struct MonitorOptions {
  /// Every snapshot with n < window is checked; after that only n = 2^j.
  std::int64_t window = 200;
  bool log_checkpoints = true;
  std::size_t outcome_cap = kDriftOutcomeCap;
  /// > 0 falls back to Monte Carlo where enumeration is too large; 0 skips.
  std::size_t mc_replicates = 0;
  std::uint64_t seed = 7;
  /// Indicators c_j whose 1 / <c_j, p_n> series is reported.
  std::vector<Eigen::VectorXd> boundary;
};

struct InverseMassSeries {
  Eigen::VectorXd boundary;
  std::vector<std::pair<std::int64_t, double>> values;  // (n, 1 / <c_j, p_n>), inf at zero mass
};

struct MonitorReport {
  std::vector<DriftRecord> records;
  /// Sum of xi_i for i < records[r].n + 1, aligned with records.
  std::vector<double> xi_partial;
  /// (n, Z_n) at every snapshot
  std::vector<std::pair<std::int64_t, double>> z_series;
  std::vector<InverseMassSeries> boundary_series;
  /// Sum of xi_n over every step of the trajectory.
  double sum_xi = 0.0;
  /// 1 / k_0, the integral bound on the full series.
  double xi_bound = 0.0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
};

/// Checks E[Z_{n+1} | F_n] <= Z_n + xi_n along a recorded trajectory, using the
/// trajectory's own schedule for k_{n+1}. Needs at least two snapshots.
MonitorReport drift_monitor(const Trajectory& trajectory, const SimplexMap& map, const Distribution& q0,
                            const MonitorOptions& options = {});

struct ConvergenceVerdict {
  Distribution target;
  Distribution estimated_limit;
  double threshold = 0.0;
  std::size_t window = 0;
  double final_distance = 0.0;
  double final_tv = 0.0;
  double window_max_distance = 0.0;
  double window_max_tv = 0.0;
  bool converged = false;
};

/// converged iff the Euclidean distance to target stays <= threshold over the
/// last `window` snapshots. Throws InvalidArgument with fewer snapshots.
ConvergenceVerdict convergence_verdict(const Trajectory& trajectory, const Distribution& target,
                                       double threshold = 0.02, std::size_t window = 10);

template <typename Scalar>
struct LawPoint {
  Counts counts;
  Scalar probability;
};

namespace detail {

struct CountsLess {
  bool operator()(const Counts& a, const Counts& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// m! / prod c_i! * prod w_i^c_i, built from binomial factors to stay in range.
template <typename Scalar>
Scalar multinomial_probability(const Counts& c, const Vector<Scalar>& w) {
  Scalar prob(1);
  std::int64_t seen = 0;
  for (Index i = 0; i < c.size(); ++i) {
    for (std::int64_t j = 1; j <= c[i]; ++j) {
      prob *= Scalar(seen + j) / Scalar(j);
      prob *= w[i];
    }
    seen += c[i];
  }
  return prob;
}

}  // namespace detail

/// Full law of the counts after `steps` steps, by expanding the multinomial tree
/// exactly. Points are sorted by counts. Throws TooManyOutcomes when the total
/// number of expanded (state, batch) pairs would exceed outcome_cap.
template <typename Scalar = double>
std::vector<LawPoint<Scalar>> exact_distribution(const Snapshot& initial, const SimplexMap& map,
                                                 const GrowthSchedule& schedule, std::int64_t steps,
                                                 std::size_t outcome_cap = kLawOutcomeCap) {
  if (steps < 0) throw Error(Errc::InvalidArgument, "steps must be >= 0");
  std::map<Counts, Scalar, detail::CountsLess> law;
  law.emplace(initial.counts, Scalar(1));
  std::int64_t total = initial.total;
  std::size_t expanded = 0;

  for (std::int64_t s = 0; s < steps; ++s) {
    const auto next = schedule.next(initial.n + s, total);
    if (!next) throw Error(Errc::InvalidArgument, "schedule ends before the requested step");
    const std::int64_t m = *next - total;
    const std::size_t per_state = composition_count(m, map.dimension());
    if (per_state > outcome_cap || law.size() * per_state > outcome_cap - expanded)
      throw Error(Errc::TooManyOutcomes, "law expansion exceeds " + std::to_string(outcome_cap));
    expanded += law.size() * per_state;

    std::map<Counts, Scalar, detail::CountsLess> next_law;
    for (const auto& [counts, mass] : law) {
      const Vector<Scalar> p = counts.template cast<Scalar>() / Scalar(total);
      const Vector<Scalar> w = map.apply<Scalar>(p);
      for_each_composition(m, map.dimension(), [&](const Counts& batch) {
        const Scalar prob = detail::multinomial_probability(batch, w);
        if (prob == Scalar(0)) return;
        auto [it, inserted] = next_law.try_emplace(counts + batch, Scalar(0));
        it->second += mass * prob;
      });
    }
    law = std::move(next_law);
    total = *next;
  }

  std::vector<LawPoint<Scalar>> out;
  out.reserve(law.size());
  for (auto& [counts, prob] : law) out.push_back({counts, prob});
  return out;
}

struct OraclePointCheck {
  Counts counts;
  double probability = 0.0;
  double frequency = 0.0;
  double sigma = 0.0;
  bool within = false;
};

struct OracleComparison {
  std::vector<OraclePointCheck> points;
  std::size_t runs = 0;
  /// Engine outcomes the exact law gives probability zero.
  std::size_t outside_support = 0;
  bool pass = false;
};

/// Runs the engine `runs` times for `steps` steps from config.initial (run r seeded
/// with derive_seed(root_seed, r)) and checks every support point's frequency is
/// within `sigmas` binomial standard errors of its exact probability.
OracleComparison compare_law_with_engine(const std::vector<LawPoint<double>>& law, const RunConfig& config,
                                         std::int64_t steps, std::size_t runs, std::uint64_t root_seed,
                                         double sigmas = 3.0);

}  // namespace urn
