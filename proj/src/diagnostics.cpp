#include "urn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "urn/rational.hpp"

namespace urn {

namespace {

bool power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

void compositions(std::int64_t left, Index at, Counts& c, const std::function<void(const Counts&)>& f) {
  if (at == c.size() - 1) {
    c[at] = left;
    f(c);
    return;
  }
  for (std::int64_t v = left; v >= 0; --v) {
    c[at] = v;
    compositions(left - v, at + 1, c, f);
  }
}

}  // namespace

std::size_t composition_count(std::int64_t m, Index d) {
  // C(m + d - 1, d - 1) via the running product C(m + i, i), exact at each step.
  constexpr double cap = static_cast<double>(std::numeric_limits<std::size_t>::max() / 2);
  double acc = 1.0;
  for (Index i = 1; i < d; ++i) {
    acc = acc * static_cast<double>(m + i) / static_cast<double>(i);
    if (acc > cap) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(std::llround(acc));
}

void for_each_composition(std::int64_t m, Index d, const std::function<void(const Counts&)>& f) {
  if (d < 1 || m < 0) throw Error(Errc::InvalidArgument, "bad composition shape");
  Counts c = Counts::Zero(d);
  compositions(m, 0, c, f);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

DriftRecord exact_conditional_drift(const Snapshot& state, const SimplexMap& map, std::int64_t next_k,
                                    const Distribution& q0, std::size_t outcome_cap) {
  const std::int64_t m = next_k - state.total;
  if (m < 1) throw Error(Errc::InvalidArgument, "next_k must exceed the current total");
  const Index d = map.dimension();
  if (state.counts.size() != d || q0.size() != d)
    throw Error(Errc::InvalidArgument, "dimension mismatch between state, map and q0");
  if (composition_count(m, d) > outcome_cap)
    throw Error(Errc::TooManyOutcomes, "batch of " + std::to_string(m) + " over " + std::to_string(d) +
                                           " labels exceeds " + std::to_string(outcome_cap) + " outcomes");

  const RationalVector p = state.counts.cast<Rational>() / Rational(state.total);
  const RationalVector w = map.apply<Rational>(p);
  const RationalVector q = q0.exact_weights<Rational>();
  const Rational z = (p - q).squaredNorm();
  const Rational next_total(next_k);

  Rational expected(0);
  for_each_composition(m, d, [&](const Counts& batch) {
    const Rational prob = detail::multinomial_probability(batch, w);
    if (prob == 0) return;
    const RationalVector pn = (state.counts + batch).cast<Rational>() / next_total;
    expected += prob * (pn - q).squaredNorm();
  });

  const Rational xi = Rational(m) / (next_total * next_total);
  const Rational drift = expected - z;
  DriftRecord r;
  r.n = state.n;
  r.k = state.total;
  r.next_k = next_k;
  r.z = to_double(z);
  r.xi = to_double(xi);
  r.expected_next_z = to_double(expected);
  r.drift = to_double(drift);
  r.zeta = std::max(0.0, to_double(z + xi - expected));
  r.exact = true;
  r.within_bound = drift <= xi;
  return r;
}

DriftRecord monte_carlo_drift(const Snapshot& state, const SimplexMap& map, std::int64_t next_k,
                              const Distribution& q0, std::size_t replicates, std::uint64_t seed) {
  if (replicates < 100) throw Error(Errc::InvalidArgument, "Monte Carlo drift needs >= 100 replicates");
  const std::int64_t m = next_k - state.total;
  if (m < 1) throw Error(Errc::InvalidArgument, "next_k must exceed the current total");

  const Eigen::VectorXd q = q0.weights();
  const Eigen::VectorXd p = state.counts.cast<double>() / static_cast<double>(state.total);
  const double z = (p - q).squaredNorm();

  UrnState scratch(state.counts, 0);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    scratch.rng.seed(derive_seed(seed, r));
    const Counts batch = sample_batch(scratch, map, m);
    const Eigen::VectorXd pn = (state.counts + batch).cast<double>() / static_cast<double>(next_k);
    const double zn = (pn - q).squaredNorm();
    const double delta = zn - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (zn - mean);
  }
  const double var = m2 / static_cast<double>(replicates - 1);
  const double se = std::sqrt(var / static_cast<double>(replicates));

  DriftRecord rec;
  rec.n = state.n;
  rec.k = state.total;
  rec.next_k = next_k;
  rec.z = z;
  rec.xi = static_cast<double>(m) / (static_cast<double>(next_k) * static_cast<double>(next_k));
  rec.expected_next_z = mean;
  rec.drift = mean - z;
  rec.drift_stderr = se;
  rec.zeta = std::max(0.0, z + rec.xi - mean);
  rec.exact = false;
  rec.within_bound = rec.drift <= rec.xi + 3.0 * se;
  return rec;
}

MonitorReport drift_monitor(const Trajectory& trajectory, const SimplexMap& map, const Distribution& q0,
                            const MonitorOptions& options) {
  if (trajectory.snapshots.size() < 2)
    throw Error(Errc::InvalidArgument, "drift monitor needs at least two snapshots");
  const auto& schedule = trajectory.schedule;

  MonitorReport report;
  report.xi_bound = 1.0 / static_cast<double>(schedule.k0());
  for (const auto& c : options.boundary) report.boundary_series.push_back({c, {}});

  // Partial sums of xi over every step, walked alongside the snapshots.
  double xi_sum = 0.0;
  std::int64_t xi_n = 0;
  std::int64_t xi_k = schedule.k0();
  auto advance_xi = [&](std::int64_t upto) {
    for (; xi_n < upto; ++xi_n) {
      const auto next = schedule.next(xi_n, xi_k);
      if (!next) break;
      xi_sum += static_cast<double>(*next - xi_k) / (static_cast<double>(*next) * static_cast<double>(*next));
      xi_k = *next;
    }
  };

  const std::int64_t last_n = trajectory.terminal().n;
  for (const auto& snap : trajectory.snapshots) {
    const Eigen::VectorXd p = snap.counts.cast<double>() / static_cast<double>(snap.total);
    report.z_series.emplace_back(snap.n, (p - q0.weights()).squaredNorm());
    for (auto& series : report.boundary_series) {
      const double mass = series.boundary.dot(p);
      series.values.emplace_back(snap.n, mass > 0.0 ? 1.0 / mass : std::numeric_limits<double>::infinity());
    }

    const bool checkpoint = snap.n < options.window || (options.log_checkpoints && power_of_two(snap.n));
    if (!checkpoint || snap.n >= last_n) continue;
    const auto next_k = schedule.next(snap.n, snap.total);
    if (!next_k) continue;

    std::optional<DriftRecord> rec;
    if (composition_count(*next_k - snap.total, map.dimension()) <= options.outcome_cap)
      rec = exact_conditional_drift(snap, map, *next_k, q0, options.outcome_cap);
    else if (options.mc_replicates > 0)
      rec = monte_carlo_drift(snap, map, *next_k, q0, options.mc_replicates,
                              derive_seed(options.seed, static_cast<std::uint64_t>(snap.n)));
    if (!rec) {
      ++report.skipped;
      continue;
    }
    if (!rec->within_bound) ++report.violations;
    advance_xi(snap.n + 1);
    report.xi_partial.push_back(xi_sum);
    report.records.push_back(*rec);
  }
  advance_xi(last_n);
  report.sum_xi = xi_sum;
  return report;
}

ConvergenceVerdict convergence_verdict(const Trajectory& trajectory, const Distribution& target,
                                       double threshold, std::size_t window) {
  const auto& snaps = trajectory.snapshots;
  if (window < 1 || snaps.size() < window)
    throw Error(Errc::InvalidArgument, "trajectory has " + std::to_string(snaps.size()) +
                                           " snapshots, verdict window needs " + std::to_string(window));
  double max_dist = 0.0, max_tv = 0.0;
  for (std::size_t i = snaps.size() - window; i < snaps.size(); ++i) {
    const auto p = snaps[i].empirical();
    max_dist = std::max(max_dist, euclidean_distance(p, target));
    max_tv = std::max(max_tv, total_variation(p, target));
  }
  auto limit = trajectory.terminal().empirical();
  ConvergenceVerdict v{target, limit};
  v.threshold = threshold;
  v.window = window;
  v.final_distance = euclidean_distance(limit, target);
  v.final_tv = total_variation(limit, target);
  v.window_max_distance = max_dist;
  v.window_max_tv = max_tv;
  v.converged = max_dist <= threshold;
  return v;
}

OracleComparison compare_law_with_engine(const std::vector<LawPoint<double>>& law, const RunConfig& config,
                                         std::int64_t steps, std::size_t runs, std::uint64_t root_seed,
                                         double sigmas) {
  if (runs < 1) throw Error(Errc::InvalidArgument, "oracle comparison needs at least one run");
  std::map<Counts, std::size_t, detail::CountsLess> tally;
  for (std::size_t r = 0; r < runs; ++r) {
    UrnState state(config.initial, derive_seed(root_seed, r));
    for (std::int64_t s = 0; s < steps; ++s)
      if (!step(state, config.map, config.schedule))
        throw Error(Errc::InvalidArgument, "schedule ends before the requested step");
    ++tally[state.counts];
  }

  OracleComparison out;
  out.runs = runs;
  out.pass = true;
  std::size_t matched = 0;
  const double R = static_cast<double>(runs);
  for (const auto& lp : law) {
    OraclePointCheck c;
    c.counts = lp.counts;
    c.probability = lp.probability;
    auto it = tally.find(lp.counts);
    const std::size_t hits = it == tally.end() ? 0 : it->second;
    matched += hits;
    c.frequency = static_cast<double>(hits) / R;
    c.sigma = std::sqrt(lp.probability * (1.0 - lp.probability) / R);
    c.within = std::abs(c.frequency - c.probability) <= sigmas * c.sigma ||
               (c.sigma == 0.0 && c.frequency == c.probability);
    out.pass = out.pass && c.within;
    out.points.push_back(std::move(c));
  }
  out.outside_support = runs - matched;
  out.pass = out.pass && out.outside_support == 0;
  return out;
}

}  // namespace urn
