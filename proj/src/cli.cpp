#include "urn/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "urn/conditions.hpp"
#include "urn/diagnostics.hpp"
#include "urn/error.hpp"
#include "urn/fixed_points.hpp"
#include "urn/io.hpp"

namespace urn {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string seeds;
  std::string seed_range;
  std::string out;
  std::int64_t stride = 0;
  bool quiet = false;
  std::vector<std::string> files;
};

struct Loaded {
  ExperimentConfig config;
  fs::path base_dir;
};

Loaded load(const Options& o) {
  Loaded l{default_config(), fs::current_path()};
  if (!o.config.empty()) {
    l.config = load_config(o.config);
    l.base_dir = fs::path(o.config).parent_path();
  }
  if (!o.seeds.empty() && !o.seed_range.empty())
    throw Error(Errc::InvalidArgument, "--seeds and --seed-range are mutually exclusive");
  if (!o.seeds.empty()) l.config.seeds = parse_seed_list(o.seeds);
  if (!o.seed_range.empty()) l.config.seeds = parse_seed_range(o.seed_range);
  if (o.stride != 0) {
    if (o.stride < 1) throw Error(Errc::InvalidArgument, "--stride must be >= 1");
    l.config.stride = o.stride;
  }
  if (!o.out.empty()) l.config.out_dir = o.out;
  return l;
}

Distribution to_distribution(const std::vector<double>& w, Index dim, const char* what) {
  if (static_cast<Index>(w.size()) != dim)
    throw Error(Errc::InvalidConfig, std::string(what) + " has the wrong number of labels");
  return Distribution::from_weights(Eigen::Map<const Eigen::VectorXd>(w.data(), dim), 1e-9);
}

std::optional<FixedPointSet> try_fixed_points(const ExperimentConfig& c, const Experiment& e) {
  try {
    return find_fixed_points(e.map, c.checks.subgroup_cap);
  } catch (const Error& err) {
    if (err.code() == Errc::SizeCapExceeded || err.code() == Errc::Unsupported) return std::nullopt;
    throw;
  }
}

/// diagnose.target if given, else the attracting fixed point.
std::optional<Distribution> resolve_target(const ExperimentConfig& c, const Experiment& e,
                                           const std::optional<FixedPointSet>& fps) {
  if (!c.diagnose.target.empty()) return to_distribution(c.diagnose.target, e.map.dimension(), "diagnose.target");
  if (fps && fps->attracting()) return *fps->attracting();
  return std::nullopt;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Io, "cannot write " + path.string());
  f << content;
  if (!f) throw Error(Errc::Io, "write failed for " + path.string());
}

int cmd_simulate(const Options& o, std::ostream& out) {
  auto [config, base] = load(o);
  const auto exp = build_experiment(config, base);
  const auto fps = try_fixed_points(config, exp);
  const auto target = resolve_target(config, exp, fps);
  const auto uniform = Distribution::uniform(exp.map.dimension());
  const auto digest = config_digest(config);

  const auto trajectories = run_sweep(exp.run, config.seeds);

  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());

  json runs = json::array();
  for (const auto& t : trajectories) {
    std::ostringstream csv;
    write_trajectory_csv(csv, t, digest);
    const auto name = "trajectory_seed" + std::to_string(t.seed) + ".csv";
    write_file(dir / name, csv.str());

    auto s = trajectory_summary(t);
    s["file"] = name;
    const auto p = t.terminal().empirical();
    s["tv_to_uniform"] = total_variation(p, uniform);
    if (target) s["tv_to_target"] = total_variation(p, *target);
    runs.push_back(std::move(s));
    if (!o.quiet)
      out << "seed " << t.seed << ": " << t.terminal().n << " steps, k = " << t.terminal().total
          << ", TV to uniform " << format_double(total_variation(p, uniform)) << '\n';
  }

  json summary = {{"digest", digest},
                  {"map", exp.map.descriptor().to_string()},
                  {"schedule", exp.run.schedule.to_string()},
                  {"rng", std::string(kRngName)},
                  {"sampler", std::string(kSamplerName)},
                  {"labels", exp.labels},
                  {"target", target ? json(std::vector<double>(target->weights().begin(), target->weights().end()))
                                    : json(nullptr)},
                  {"runs", runs},
                  {"config", to_json(config)}};
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  if (!o.quiet) out << "wrote " << trajectories.size() << " trajectories to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_fixed_points(const Options& o, std::ostream& out) {
  auto [config, base] = load(o);
  const auto exp = build_experiment(config, base);
  const auto fps = find_fixed_points(exp.map, config.checks.subgroup_cap);
  auto doc = to_json(fps, exp.labels);
  doc["map"] = exp.map.descriptor().to_string();
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto [config, base] = load(o);
  const auto exp = build_experiment(config, base);
  const auto fps = find_fixed_points(exp.map, config.checks.subgroup_cap);
  const auto& k = config.checks;

  std::vector<ConditionReport> reports;

  ContractionOptions contraction_opts;
  contraction_opts.samples = k.samples;
  contraction_opts.exclusion_radius = k.exclusion_radius;
  contraction_opts.tolerance = k.tolerance;
  contraction_opts.seed = k.seed;
  if (!fps.attracting())
    contraction_opts.center = k.center.empty() ? Distribution::uniform(exp.map.dimension())
                                 : to_distribution(k.center, exp.map.dimension(), "checks.center");
  auto contraction = check_contraction(exp.map, fps, contraction_opts);
  if (!fps.attracting())
    contraction.note = "no attracting fixed point (" + fps.note + "); ratio taken about the centre. " + contraction.note;
  if (!fps.attracting()) contraction.pass = false;
  reports.push_back(std::move(contraction));

  BoundaryOptions boundary_opts;
  boundary_opts.radii = k.radii;
  boundary_opts.samples_per_radius = k.samples_per_radius;
  boundary_opts.margin = k.margin;
  boundary_opts.seed = derive_seed(k.seed, 2);
  const auto p0 = Distribution::from_counts(exp.run.initial);
  if (fps.repelling_boundary().empty()) {
    ConditionReport r;
    r.condition = "boundary_repulsion";
    r.pass = true;
    r.note = "no non-attracting boundary fixed point";
    reports.push_back(std::move(r));
  } else {
    try {
      reports.push_back(check_boundary_repulsion(exp.map, fps, p0, boundary_opts));
    } catch (const Error& e) {
      if (e.code() != Errc::InitialMassZero) throw;
      ConditionReport r;
      r.condition = "boundary_repulsion";
      r.pass = false;
      r.note = e.what();
      reports.push_back(std::move(r));
    }
  }

  reports.push_back(check_growth_ratio(exp.run.schedule, fps, GrowthOptions{k.horizon, k.burn_in}));

  bool all = true;
  json doc = {{"map", exp.map.descriptor().to_string()}, {"schedule", exp.run.schedule.to_string()}};
  json rs = json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    rs.push_back(to_json(r));
  }
  doc["reports"] = rs;
  doc["pass"] = all;
  if (o.quiet) {
    for (const auto& r : reports) out << r.condition << ' ' << (r.pass ? "pass" : "FAIL") << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

std::string drift_table(const MonitorReport& r) {
  std::ostringstream csv;
  csv << "n,k_n,next_k,Z,xi,expected_next_Z,drift,drift_stderr,zeta,exact,within_bound,xi_partial_sum\n";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& d = r.records[i];
    csv << d.n << ',' << d.k << ',' << d.next_k << ',' << format_double(d.z) << ',' << format_double(d.xi) << ','
        << format_double(d.expected_next_z) << ',' << format_double(d.drift) << ',' << format_double(d.drift_stderr)
        << ',' << format_double(d.zeta) << ',' << d.exact << ',' << d.within_bound << ','
        << format_double(r.xi_partial[i]) << '\n';
  }
  return csv.str();
}

int cmd_diagnose(const Options& o, std::ostream& out) {
  if (o.files.empty()) throw Error(Errc::InvalidArgument, "diagnose needs at least one trajectory file");
  auto [config, base] = load(o);
  const auto exp = build_experiment(config, base);
  const auto fps = try_fixed_points(config, exp);
  const auto target = resolve_target(config, exp, fps);
  if (!target) throw Error(Errc::InvalidConfig, "no attracting fixed point: set diagnose.target");

  MonitorOptions mo;
  mo.window = config.diagnose.window;
  mo.mc_replicates = config.diagnose.mc_replicates;
  mo.seed = config.checks.seed;
  if (fps)
    for (std::size_t j : fps->repelling_boundary()) mo.boundary.push_back(fps->points[j].boundary);

  bool ok = true;
  json files = json::array();
  for (const auto& path : o.files) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open trajectory " + path);
    const auto traj = read_trajectory_csv(in, exp.run.schedule);
    if (static_cast<Index>(traj.labels.size()) != exp.map.dimension())
      throw Error(Errc::InvalidArgument, path + " does not match the configured map");

    const auto monitor = drift_monitor(traj, exp.map, *target, mo);
    const auto verdict =
        convergence_verdict(traj, *target, config.diagnose.threshold, config.diagnose.verdict_window);
    ok = ok && monitor.violations == 0 && verdict.converged;

    json m = to_json(monitor);
    m.erase("records");
    m["checked"] = monitor.records.size();
    files.push_back({{"file", path}, {"seed", traj.seed}, {"monitor", m}, {"verdict", to_json(verdict)}});
    if (!config.out_dir.empty() && !o.out.empty()) {
      std::error_code ec;
      fs::create_directories(o.out, ec);
      write_file(fs::path(o.out) / ("drift_" + fs::path(path).stem().string() + ".csv"), drift_table(monitor));
    }
    if (o.quiet)
      out << path << ": violations " << monitor.violations << ", converged " << (verdict.converged ? "yes" : "no")
          << '\n';
  }

  json doc = {{"files", files}};
  if (config.diagnose.oracle_steps > 0) {
    const auto steps = config.diagnose.oracle_steps;
    const auto law = exact_distribution(Snapshot{0, exp.run.initial.sum(), exp.run.initial}, exp.map,
                                        exp.run.schedule, steps);
    const auto cmp = compare_law_with_engine(law, exp.run, steps, config.diagnose.oracle_runs,
                                             derive_seed(config.checks.seed, 6));
    json pts = json::array();
    for (const auto& p : cmp.points)
      pts.push_back({{"counts", std::vector<std::int64_t>(p.counts.begin(), p.counts.end())},
                     {"probability", p.probability},
                     {"frequency", p.frequency},
                     {"sigma", p.sigma},
                     {"within_3_sigma", p.within}});
    doc["oracle"] = {{"steps", steps}, {"runs", cmp.runs}, {"points", pts},
                     {"outside_support", cmp.outside_support}, {"pass", cmp.pass}};
    ok = ok && cmp.pass;
  }
  doc["pass"] = ok;
  if (!o.quiet) out << doc.dump(2) << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto tok = text.substr(start, end - start);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw Error(Errc::InvalidArgument, "bad seed '" + tok + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(Errc::InvalidArgument, "seed range must look like N..M");
  const auto lo = parse_seed_list(text.substr(0, dots));
  const auto hi = parse_seed_list(text.substr(dots + 2));
  if (lo.size() != 1 || hi.size() != 1 || hi[0] < lo[0])
    throw Error(Errc::InvalidArgument, "bad seed range '" + text + "'");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = lo[0]; s <= hi[0]; ++s) out.push_back(s);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized urn process simulator and verifier", "urnsim"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Experiment config (JSON)");
    sub->add_flag("--quiet", o.quiet, "Terse output");
  };
  auto* simulate = app.add_subcommand("simulate", "Run a seed sweep and write trajectory CSVs");
  add_common(simulate);
  simulate->add_option("--seeds", o.seeds, "Comma-separated seeds");
  simulate->add_option("--seed-range", o.seed_range, "Inclusive seed range N..M");
  simulate->add_option("--out", o.out, "Output directory");
  simulate->add_option("--stride", o.stride, "Snapshot stride");

  auto* fixed = app.add_subcommand("fixed-points", "List the fixed points of the configured map");
  add_common(fixed);

  auto* verify = app.add_subcommand("verify", "Check contraction, boundary repulsion and growth ratio");
  add_common(verify);

  auto* diagnose = app.add_subcommand("diagnose", "Drift monitor and convergence verdict for trajectory files");
  add_common(diagnose);
  diagnose->add_option("files", o.files, "Trajectory CSV files");
  diagnose->add_option("--out", o.out, "Directory for drift tables");

  auto* defaults = app.add_subcommand("print-defaults", "Print the default config with every field explicit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (fixed->parsed()) return cmd_fixed_points(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (diagnose->parsed()) return cmd_diagnose(o, out);
    if (defaults->parsed()) {
      out << to_json(default_config()).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.input_error() ? kExitInvalidInput : kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitInvalidInput;
}

}  // namespace urn
