#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "urn/conditions.hpp"
#include "urn/diagnostics.hpp"
#include "urn/fixed_points.hpp"
#include "urn/group.hpp"
#include "urn/simplex_map.hpp"
#include "urn/urn.hpp"

namespace urn {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Cayley table files
//
//   {"name": "Z3", "elements": ["0","1","2"],
//    "table": [["0","1","2"], ["1","2","0"], ["2","0","1"]]}
//
// Rows and columns follow the order of "elements"; entries are labels.
// ---------------------------------------------------------------------------

CayleyData parse_cayley(const json& doc);
FiniteGroup load_cayley_file(const std::filesystem::path& path);
json cayley_to_json(const FiniteGroup& group);

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

struct GroupSpec {
  /// cyclic | dihedral | symmetric | direct_product | file
  std::string family = "cyclic";
  int n = 2;
  std::string path;
  std::vector<GroupSpec> factors;

  bool operator==(const GroupSpec&) const = default;
};

struct MapSpec {
  MapKind kind = MapKind::Convolution;
  GroupSpec group;
  int parity_k = 2;
  double s = 0.0;
  double t = 0.0;

  bool operator==(const MapSpec&) const = default;
};

/// Exactly one of: counts, labels (one ball per listed label), or p0 with k0.
struct InitialSpec {
  std::vector<std::int64_t> counts;
  std::vector<std::string> labels;
  std::vector<double> p0;
  std::int64_t k0 = 0;

  bool operator==(const InitialSpec&) const = default;
};

struct ScheduleSpec {
  /// unit | geometric | explicit
  std::string kind = "unit";
  double ratio = 1.05;
  std::vector<std::int64_t> values;

  bool operator==(const ScheduleSpec&) const = default;
};

struct CheckSpec {
  std::size_t samples = 10000;
  double exclusion_radius = 1e-3;
  double tolerance = 1e-12;
  std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4};
  std::size_t samples_per_radius = 2000;
  double margin = 1e-3;
  std::int64_t horizon = 1000;
  std::int64_t burn_in = 0;
  std::uint64_t seed = 20240501;
  /// Contraction centre used when no attracting fixed point exists; empty means uniform.
  std::vector<double> center;
  std::size_t subgroup_cap = kDefaultSubgroupCap;
  std::size_t symmetric_cap = 720;

  bool operator==(const CheckSpec&) const = default;
};

struct DiagnoseSpec {
  std::int64_t window = 200;
  double threshold = 0.02;
  std::size_t verdict_window = 10;
  /// Empty means the attracting fixed point.
  std::vector<double> target;
  std::size_t mc_replicates = 0;
  /// > 0 compares the exact law after this many steps with oracle_runs engine runs.
  std::int64_t oracle_steps = 0;
  std::size_t oracle_runs = 100000;

  bool operator==(const DiagnoseSpec&) const = default;
};

struct ExperimentConfig {
  MapSpec map;
  InitialSpec initial;
  ScheduleSpec schedule;
  StopRule stop;
  std::vector<std::uint64_t> seeds{1};
  std::int64_t stride = 1;
  std::string out_dir = "out";
  CheckSpec checks;
  DiagnoseSpec diagnose;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Z2 convolution urn from counts (1, 1), unit schedule, 1000 steps.
ExperimentConfig default_config();

/// Missing keys take their defaults; unknown keys and bad values throw InvalidConfig.
ExperimentConfig parse_config(const json& doc);
json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

/// FNV-1a over the canonical JSON of everything that shapes a trajectory
/// (map, initial state, schedule, stop rule, stride).
std::string config_digest(const ExperimentConfig& config);

/// Resolved, validated objects behind a config.
struct Experiment {
  SimplexMap map;
  RunConfig run;
  std::vector<std::string> labels;
};

/// Group file paths resolve against base_dir. Throws on any invalid field,
/// before anything is simulated.
Experiment build_experiment(const ExperimentConfig& config, const std::filesystem::path& base_dir = {});
FiniteGroup build_group(const GroupSpec& spec, const std::filesystem::path& base_dir, std::size_t symmetric_cap);

/// Largest-remainder rounding of p0 * k0 to integer counts summing to k0.
Counts counts_from_weights(const std::vector<double>& p0, std::int64_t k0);

// ---------------------------------------------------------------------------
// Trajectory CSV
//
//   # urn-trajectory digest=<hex> seed=<s> map=<desc> schedule=<desc> rng=<..> sampler=<..>
//   n,k_n,count_<label>...,p_<label>...
// ---------------------------------------------------------------------------

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const std::string& digest);
/// Restores seed, labels and snapshots; the schedule is taken from the caller.
Trajectory read_trajectory_csv(std::istream& in, const GrowthSchedule& schedule);

// ---------------------------------------------------------------------------
// Structured reports
// ---------------------------------------------------------------------------

json to_json(const ConditionReport& report);
json to_json(const FixedPointSet& fps, const std::vector<std::string>& labels);
json to_json(const DriftRecord& record);
json to_json(const ConvergenceVerdict& verdict);
json to_json(const MonitorReport& report);
json trajectory_summary(const Trajectory& trajectory);

}  // namespace urn
