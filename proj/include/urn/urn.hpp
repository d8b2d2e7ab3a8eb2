#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "urn/distribution.hpp"
#include "urn/schedule.hpp"
#include "urn/simplex_map.hpp"
#include "urn/types.hpp"

namespace urn {

/// The generator behind every trajectory. Reproducibility holds per build: the
/// engine is portable, but std::binomial_distribution is library-specific.
using Rng = std::mt19937_64;

inline constexpr std::string_view kRngName = "mt19937_64";
inline constexpr std::string_view kSamplerName = "sequential-binomial/libstdc++";

/// (n, k_n, counts) at one step.
struct Snapshot {
  std::int64_t n = 0;
  std::int64_t total = 0;
  Counts counts;

  Distribution empirical() const { return Distribution::from_counts(counts); }
  bool operator==(const Snapshot& o) const {
    return n == o.n && total == o.total && counts == o.counts;
  }
};

/// Ball counts, urn size and generator state. p_n is always counts / total,
/// derived on demand and never stored.
struct UrnState {
  Counts counts;
  std::int64_t total = 0;
  std::int64_t step = 0;
  Rng rng;

  UrnState(Counts initial, std::uint64_t seed);

  Distribution empirical() const { return Distribution::from_counts(counts); }
  Snapshot snapshot() const { return {step, total, counts}; }
};

/// Multinomial(m, T(p_n)) by sequential binomial conditioning in label order:
/// c_i ~ Binomial(m - c_0 - ... - c_{i-1}, w_i / (w_i + ... + w_last)).
/// Consumes state.rng only.
Counts sample_batch(UrnState& state, const SimplexMap& map, std::int64_t m);

/// One step of the recursion: draws k_{n+1} - k_n balls from T(p_n) and adds them.
/// Returns false, leaving the state untouched, when the schedule has no next size.
bool step(UrnState& state, const SimplexMap& map, const GrowthSchedule& schedule);

struct StopRule {
  std::optional<std::int64_t> max_steps;
  std::optional<std::int64_t> max_total;

  bool operator==(const StopRule&) const = default;
};

struct RunConfig {
  SimplexMap map;
  GrowthSchedule schedule;
  Counts initial;
  StopRule stop;
  std::int64_t stride = 1;
  std::uint64_t seed = 0;
};

struct Trajectory {
  std::uint64_t seed = 0;
  GrowthSchedule schedule;
  MapDescriptor map;
  std::vector<std::string> labels;
  std::int64_t stride = 1;
  /// n = 0, every stride-th step, and the terminal step (always last).
  std::vector<Snapshot> snapshots;

  const Snapshot& terminal() const { return snapshots.back(); }
};

/// Throws InvalidConfig when the initial counts, stride or stop rule are unusable.
void validate(const RunConfig& config);

/// Runs until max_steps or max_total is reached, whichever comes first, or until
/// an explicit schedule runs out. Identical (config, seed) gives an identical
/// trajectory.
Trajectory run(const RunConfig& config);

/// One trajectory per seed, in seed order, each with a generator seeded from its
/// own seed alone. threads = 0 picks the hardware concurrency.
std::vector<Trajectory> run_sweep(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                                  unsigned threads = 0);

}  // namespace urn
