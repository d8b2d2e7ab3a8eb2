#include "urn/urn.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "urn/error.hpp"

namespace urn {

UrnState::UrnState(Counts initial, std::uint64_t seed)
    : counts(std::move(initial)), total(counts.sum()), step(0), rng(seed) {
  if ((counts.array() < 0).any() || total < 1)
    throw Error(Errc::InvalidArgument, "initial counts must be non-negative with a positive total");
}

Counts sample_batch(UrnState& state, const SimplexMap& map, std::int64_t m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "batch size must be >= 1");
  const Eigen::VectorXd p = state.counts.cast<double>() / static_cast<double>(state.total);
  const Eigen::VectorXd w = map.apply<double>(p).cwiseMax(0.0);
  const Index n = w.size();

  Counts out = Counts::Zero(n);
  std::int64_t remaining = m;
  double mass_left = w.sum();
  for (Index i = 0; i + 1 < n && remaining > 0; ++i) {
    const double prob = mass_left > 0.0 ? w[i] / mass_left : 0.0;
    std::int64_t c = 0;
    if (prob >= 1.0) {
      c = remaining;
    } else if (prob > 0.0) {
      std::binomial_distribution<std::int64_t> binom(remaining, prob);
      c = binom(state.rng);
    }
    out[i] = c;
    remaining -= c;
    mass_left -= w[i];
  }
  out[n - 1] += remaining;
  return out;
}

bool step(UrnState& state, const SimplexMap& map, const GrowthSchedule& schedule) {
  const auto next = schedule.next(state.step, state.total);
  if (!next) return false;
  const std::int64_t m = *next - state.total;
  if (m < 1)
    throw Error(Errc::NonIncreasingSchedule, "k_{n+1} = " + std::to_string(*next) +
                                                 " does not exceed k_n = " + std::to_string(state.total));
  state.counts += sample_batch(state, map, m);
  state.total = *next;
  ++state.step;
  return true;
}

void validate(const RunConfig& config) {
  const auto& c = config.initial;
  if (c.size() != config.map.dimension())
    throw Error(config.map.kind() == MapKind::Parity || config.map.kind() == MapKind::Genotype
                    ? Errc::NonBinaryStateSpace
                    : Errc::InvalidConfig,
                "initial counts have " + std::to_string(c.size()) + " labels, map has " +
                    std::to_string(config.map.dimension()));
  if ((c.array() < 0).any()) throw Error(Errc::InvalidConfig, "negative initial count");
  if (c.sum() != config.schedule.k0())
    throw Error(Errc::InvalidConfig, "initial counts sum to " + std::to_string(c.sum()) +
                                         " but k0 = " + std::to_string(config.schedule.k0()));
  if (config.stride < 1) throw Error(Errc::InvalidConfig, "stride must be >= 1");
  if (!config.stop.max_steps && !config.stop.max_total &&
      config.schedule.kind() != GrowthSchedule::Kind::Explicit)
    throw Error(Errc::InvalidConfig, "stop rule needs max_steps or max_total");
  if (config.stop.max_steps && *config.stop.max_steps < 0)
    throw Error(Errc::InvalidConfig, "max_steps must be >= 0");
}

Trajectory run(const RunConfig& config) {
  validate(config);
  Trajectory traj;
  traj.seed = config.seed;
  traj.schedule = config.schedule;
  traj.map = config.map.descriptor();
  traj.labels = config.map.labels();
  traj.stride = config.stride;

  UrnState state(config.initial, config.seed);
  traj.snapshots.push_back(state.snapshot());
  auto done = [&] {
    return (config.stop.max_steps && state.step >= *config.stop.max_steps) ||
           (config.stop.max_total && state.total >= *config.stop.max_total);
  };
  while (!done() && step(state, config.map, config.schedule)) {
    if (state.step % config.stride == 0) traj.snapshots.push_back(state.snapshot());
  }
  if (traj.snapshots.back().n != state.step) traj.snapshots.push_back(state.snapshot());
  return traj;
}

std::vector<Trajectory> run_sweep(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                                  unsigned threads) {
  if (seeds.empty()) throw Error(Errc::InvalidArgument, "sweep needs at least one seed");
  validate(config);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(seeds.size()));

  std::vector<std::optional<Trajectory>> slots(seeds.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < seeds.size();) {
      try {
        RunConfig cfg = config;
        cfg.seed = seeds[i];
        slots[i] = run(cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Trajectory> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace urn
