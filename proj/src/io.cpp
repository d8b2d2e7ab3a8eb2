#include "urn/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "urn/error.hpp"

namespace urn {

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error(Errc::InvalidConfig, what); }

void allow_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) bad_config(where + " must be an object");
  for (const auto& [key, _] : obj.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) bad_config("unknown key " + where + "." + key);
}

template <typename T>
void read(const json& obj, std::string_view key, T& into, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    into = it->template get<T>();
  } catch (const json::exception&) {
    bad_config(where + "." + std::string(key) + " has the wrong type");
  }
}

template <typename T>
void read_optional(const json& obj, std::string_view key, std::optional<T>& into, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (it->is_null()) {
    into.reset();
    return;
  }
  T v{};
  read(obj, key, v, where);
  into = v;
}

MapKind parse_kind(const std::string& s) {
  if (s == "convolution") return MapKind::Convolution;
  if (s == "parity") return MapKind::Parity;
  if (s == "genotype") return MapKind::Genotype;
  bad_config("map.kind must be convolution, parity or genotype, got '" + s + "'");
}

GroupSpec parse_group(const json& obj, const std::string& where) {
  allow_keys(obj, where, {"family", "n", "path", "factors"});
  GroupSpec g;
  read(obj, "family", g.family, where);
  read(obj, "n", g.n, where);
  read(obj, "path", g.path, where);
  if (auto it = obj.find("factors"); it != obj.end()) {
    if (!it->is_array()) bad_config(where + ".factors must be a list");
    for (std::size_t i = 0; i < it->size(); ++i)
      g.factors.push_back(parse_group((*it)[i], where + ".factors[" + std::to_string(i) + "]"));
  }
  static const std::set<std::string> families{"cyclic", "dihedral", "symmetric", "direct_product", "file"};
  if (!families.count(g.family)) bad_config(where + ".family '" + g.family + "' is not known");
  if (g.family == "cyclic" && g.n < 1) bad_config(where + ": cyclic needs n >= 1");
  if (g.family == "dihedral" && g.n < 3) bad_config(where + ": dihedral needs n >= 3");
  if (g.family == "symmetric" && g.n < 1) bad_config(where + ": symmetric needs n >= 1");
  if (g.family == "direct_product" && g.factors.size() != 2) bad_config(where + ": direct_product needs 2 factors");
  if (g.family == "file" && g.path.empty()) bad_config(where + ": file needs a path");
  return g;
}

json group_to_json(const GroupSpec& g) {
  json factors = json::array();
  for (const auto& f : g.factors) factors.push_back(group_to_json(f));
  return {{"family", g.family}, {"n", g.n}, {"path", g.path}, {"factors", factors}};
}

json optional_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(Errc::InvalidArgument, "not an integer: '" + s + "'");
  return v;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cayley files

CayleyData parse_cayley(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("elements") || !doc.contains("table"))
      throw Error(Errc::InvalidTable, "Cayley file needs 'elements' and 'table'");
    CayleyData raw;
    raw.elements = doc.at("elements").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < raw.elements.size(); ++i) index[raw.elements[i]] = static_cast<int>(i);
    for (const auto& row : doc.at("table")) {
      std::vector<int> r;
      for (const auto& cell : row) {
        const auto label = cell.get<std::string>();
        auto it = index.find(label);
        if (it == index.end()) throw Error(Errc::InvalidTable, "table entry '" + label + "' is not an element");
        r.push_back(it->second);
      }
      raw.table.push_back(std::move(r));
    }
    return raw;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidTable, std::string("malformed Cayley file: ") + e.what());
  }
}

FiniteGroup load_cayley_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidConfig, "cannot open Cayley file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidTable, path.string() + ": " + e.what());
  }
  auto g = validate_group(parse_cayley(doc));
  g.set_name(doc.value("name", path.stem().string()));
  return g;
}

json cayley_to_json(const FiniteGroup& group) {
  json table = json::array();
  for (Index i = 0; i < group.order(); ++i) {
    json row = json::array();
    for (Index j = 0; j < group.order(); ++j) row.push_back(group.label(group.multiply(i, j)));
    table.push_back(row);
  }
  return {{"name", group.name()}, {"elements", group.labels()}, {"table", table}};
}

// ---------------------------------------------------------------------------
// Config

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.map.kind = MapKind::Convolution;
  c.map.group = GroupSpec{"cyclic", 2, "", {}};
  c.initial.counts = {1, 1};
  c.stop.max_steps = 1000;
  return c;
}

ExperimentConfig parse_config(const json& doc) {
  allow_keys(doc, "config", {"map", "initial", "schedule", "stop", "seeds", "stride", "out_dir", "checks", "diagnose"});
  ExperimentConfig c = default_config();

  if (auto it = doc.find("map"); it != doc.end()) {
    allow_keys(*it, "map", {"kind", "group", "parity_k", "s", "t"});
    std::string kind = std::string(to_string(c.map.kind));
    read(*it, "kind", kind, "map");
    c.map.kind = parse_kind(kind);
    if (auto g = it->find("group"); g != it->end()) c.map.group = parse_group(*g, "map.group");
    read(*it, "parity_k", c.map.parity_k, "map");
    read(*it, "s", c.map.s, "map");
    read(*it, "t", c.map.t, "map");
  }
  if (c.map.kind == MapKind::Parity && c.map.parity_k < 1) bad_config("map.parity_k must be >= 1");
  if (c.map.kind == MapKind::Genotype && (!(c.map.s < 1.0) || !(c.map.t < 1.0)))
    throw Error(Errc::InvalidFitness, "map.s and map.t must be < 1");

  if (auto it = doc.find("initial"); it != doc.end()) {
    allow_keys(*it, "initial", {"counts", "labels", "p0", "k0"});
    c.initial = InitialSpec{};
    read(*it, "counts", c.initial.counts, "initial");
    read(*it, "labels", c.initial.labels, "initial");
    read(*it, "p0", c.initial.p0, "initial");
    read(*it, "k0", c.initial.k0, "initial");
  }
  const int routes = !c.initial.counts.empty() + !c.initial.labels.empty() + !c.initial.p0.empty();
  if (routes != 1) bad_config("initial needs exactly one of counts, labels or p0");
  if (!c.initial.p0.empty() && c.initial.k0 < 1) bad_config("initial.p0 needs k0 >= 1");

  if (auto it = doc.find("schedule"); it != doc.end()) {
    allow_keys(*it, "schedule", {"kind", "ratio", "values"});
    read(*it, "kind", c.schedule.kind, "schedule");
    read(*it, "ratio", c.schedule.ratio, "schedule");
    read(*it, "values", c.schedule.values, "schedule");
  }
  if (c.schedule.kind != "unit" && c.schedule.kind != "geometric" && c.schedule.kind != "explicit")
    bad_config("schedule.kind must be unit, geometric or explicit");
  if (c.schedule.kind == "geometric" && !(c.schedule.ratio > 1.0)) bad_config("schedule.ratio must be > 1");
  if (c.schedule.kind == "explicit" && c.schedule.values.empty()) bad_config("schedule.values is empty");

  if (auto it = doc.find("stop"); it != doc.end()) {
    allow_keys(*it, "stop", {"max_steps", "max_total"});
    c.stop = StopRule{};
    read_optional(*it, "max_steps", c.stop.max_steps, "stop");
    read_optional(*it, "max_total", c.stop.max_total, "stop");
  }

  read(doc, "seeds", c.seeds, "config");
  read(doc, "stride", c.stride, "config");
  read(doc, "out_dir", c.out_dir, "config");
  if (c.seeds.empty()) bad_config("seeds is empty");
  if (c.stride < 1) bad_config("stride must be >= 1");

  if (auto it = doc.find("checks"); it != doc.end()) {
    allow_keys(*it, "checks", {"samples", "exclusion_radius", "tolerance", "radii", "samples_per_radius", "margin",
                               "horizon", "burn_in", "seed", "center", "subgroup_cap", "symmetric_cap"});
    auto& k = c.checks;
    read(*it, "samples", k.samples, "checks");
    read(*it, "exclusion_radius", k.exclusion_radius, "checks");
    read(*it, "tolerance", k.tolerance, "checks");
    read(*it, "radii", k.radii, "checks");
    read(*it, "samples_per_radius", k.samples_per_radius, "checks");
    read(*it, "margin", k.margin, "checks");
    read(*it, "horizon", k.horizon, "checks");
    read(*it, "burn_in", k.burn_in, "checks");
    read(*it, "seed", k.seed, "checks");
    read(*it, "center", k.center, "checks");
    read(*it, "subgroup_cap", k.subgroup_cap, "checks");
    read(*it, "symmetric_cap", k.symmetric_cap, "checks");
  }
  {
    const auto& k = c.checks;
    if (k.samples < 1) bad_config("checks.samples must be >= 1");
    if (!(k.exclusion_radius >= 0)) bad_config("checks.exclusion_radius must be >= 0");
    if (k.radii.empty()) bad_config("checks.radii is empty");
    for (std::size_t i = 0; i + 1 < k.radii.size(); ++i)
      if (!(k.radii[i + 1] < k.radii[i])) bad_config("checks.radii must be strictly decreasing");
    if (k.samples_per_radius < 1) bad_config("checks.samples_per_radius must be >= 1");
    if (k.horizon < 1) bad_config("checks.horizon must be >= 1");
    if (k.burn_in < 0 || k.burn_in >= k.horizon) bad_config("checks.burn_in must lie in [0, horizon)");
  }

  if (auto it = doc.find("diagnose"); it != doc.end()) {
    allow_keys(*it, "diagnose", {"window", "threshold", "verdict_window", "target", "mc_replicates", "oracle_steps",
                                 "oracle_runs"});
    auto& d = c.diagnose;
    read(*it, "window", d.window, "diagnose");
    read(*it, "threshold", d.threshold, "diagnose");
    read(*it, "verdict_window", d.verdict_window, "diagnose");
    read(*it, "target", d.target, "diagnose");
    read(*it, "mc_replicates", d.mc_replicates, "diagnose");
    read(*it, "oracle_steps", d.oracle_steps, "diagnose");
    read(*it, "oracle_runs", d.oracle_runs, "diagnose");
  }
  {
    const auto& d = c.diagnose;
    if (d.window < 0) bad_config("diagnose.window must be >= 0");
    if (!(d.threshold >= 0)) bad_config("diagnose.threshold must be >= 0");
    if (d.verdict_window < 1) bad_config("diagnose.verdict_window must be >= 1");
    if (d.mc_replicates != 0 && d.mc_replicates < 100) bad_config("diagnose.mc_replicates must be 0 or >= 100");
    if (d.oracle_steps < 0) bad_config("diagnose.oracle_steps must be >= 0");
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json initial = json::object();
  if (!c.initial.counts.empty()) initial["counts"] = c.initial.counts;
  if (!c.initial.labels.empty()) initial["labels"] = c.initial.labels;
  if (!c.initial.p0.empty()) {
    initial["p0"] = c.initial.p0;
    initial["k0"] = c.initial.k0;
  }
  const auto& k = c.checks;
  const auto& d = c.diagnose;
  return {
      {"map",
       {{"kind", std::string(to_string(c.map.kind))},
        {"group", group_to_json(c.map.group)},
        {"parity_k", c.map.parity_k},
        {"s", c.map.s},
        {"t", c.map.t}}},
      {"initial", initial},
      {"schedule", {{"kind", c.schedule.kind}, {"ratio", c.schedule.ratio}, {"values", c.schedule.values}}},
      {"stop", {{"max_steps", optional_json(c.stop.max_steps)}, {"max_total", optional_json(c.stop.max_total)}}},
      {"seeds", c.seeds},
      {"stride", c.stride},
      {"out_dir", c.out_dir},
      {"checks",
       {{"samples", k.samples},
        {"exclusion_radius", k.exclusion_radius},
        {"tolerance", k.tolerance},
        {"radii", k.radii},
        {"samples_per_radius", k.samples_per_radius},
        {"margin", k.margin},
        {"horizon", k.horizon},
        {"burn_in", k.burn_in},
        {"seed", k.seed},
        {"center", k.center},
        {"subgroup_cap", k.subgroup_cap},
        {"symmetric_cap", k.symmetric_cap}}},
      {"diagnose",
       {{"window", d.window},
        {"threshold", d.threshold},
        {"verdict_window", d.verdict_window},
        {"target", d.target},
        {"mc_replicates", d.mc_replicates},
        {"oracle_steps", d.oracle_steps},
        {"oracle_runs", d.oracle_runs}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    bad_config(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

std::string config_digest(const ExperimentConfig& config) {
  const json full = to_json(config);
  const json shaping = {{"map", full["map"]},
                        {"initial", full["initial"]},
                        {"schedule", full["schedule"]},
                        {"stop", full["stop"]},
                        {"stride", full["stride"]}};
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : shaping.dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FiniteGroup build_group(const GroupSpec& spec, const std::filesystem::path& base_dir, std::size_t symmetric_cap) {
  if (spec.family == "cyclic") return cyclic_group(spec.n);
  if (spec.family == "dihedral") return dihedral_group(spec.n);
  if (spec.family == "symmetric") return symmetric_group(spec.n, symmetric_cap);
  if (spec.family == "direct_product") {
    if (spec.factors.size() != 2) bad_config("direct_product needs 2 factors");
    return direct_product(build_group(spec.factors[0], base_dir, symmetric_cap),
                          build_group(spec.factors[1], base_dir, symmetric_cap));
  }
  if (spec.family == "file") {
    std::filesystem::path p(spec.path);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_cayley_file(p);
  }
  bad_config("unknown group family '" + spec.family + "'");
}

Counts counts_from_weights(const std::vector<double>& p0, std::int64_t k0) {
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(p0.data(), static_cast<Index>(p0.size()));
  const auto d = Distribution::from_weights(w, 1e-9);
  const Eigen::VectorXd scaled = d.weights() * static_cast<double>(k0);
  Counts c(scaled.size());
  std::vector<std::pair<double, Index>> remainders;
  for (Index i = 0; i < scaled.size(); ++i) {
    c[i] = static_cast<std::int64_t>(std::floor(scaled[i]));
    remainders.emplace_back(scaled[i] - std::floor(scaled[i]), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::int64_t left = k0 - c.sum(), r = 0; left > 0; --left, ++r)
    c[remainders[static_cast<std::size_t>(r) % remainders.size()].second] += 1;
  return c;
}

Experiment build_experiment(const ExperimentConfig& config, const std::filesystem::path& base_dir) {
  std::optional<SimplexMap> map;
  switch (config.map.kind) {
    case MapKind::Convolution:
      map = convolution_map(std::make_shared<const FiniteGroup>(
          build_group(config.map.group, base_dir, config.checks.symmetric_cap)));
      break;
    case MapKind::Parity:
      map = parity_map(config.map.parity_k);
      break;
    case MapKind::Genotype:
      map = genotype_map(config.map.s, config.map.t);
      break;
    case MapKind::Custom:
      bad_config("custom maps cannot be configured from a file");
  }
  const auto labels = map->labels();
  const auto dim = static_cast<Index>(labels.size());
  const bool binary = config.map.kind != MapKind::Convolution;

  Counts initial;
  const auto& in = config.initial;
  if (!in.counts.empty()) {
    initial = Eigen::Map<const Counts>(in.counts.data(), static_cast<Index>(in.counts.size()));
  } else if (!in.labels.empty()) {
    initial = Counts::Zero(dim);
    for (const auto& l : in.labels) {
      auto it = std::find(labels.begin(), labels.end(), l);
      if (it == labels.end()) bad_config("initial label '" + l + "' is not an element");
      initial[it - labels.begin()] += 1;
    }
  } else {
    if (static_cast<Index>(in.p0.size()) != dim)
      throw Error(binary ? Errc::NonBinaryStateSpace : Errc::InvalidConfig, "initial.p0 has the wrong length");
    try {
      initial = counts_from_weights(in.p0, in.k0);
    } catch (const Error& e) {
      bad_config(std::string("initial.p0: ") + e.what());
    }
  }
  if (initial.size() != dim)
    throw Error(binary ? Errc::NonBinaryStateSpace : Errc::InvalidConfig,
                "initial state has " + std::to_string(initial.size()) + " labels, map has " + std::to_string(dim));
  if ((initial.array() < 0).any() || initial.sum() < 1) bad_config("initial counts must be >= 0 with a positive sum");

  const std::int64_t k0 = initial.sum();
  GrowthSchedule schedule;
  if (config.schedule.kind == "unit") {
    schedule = GrowthSchedule::unit(k0);
  } else if (config.schedule.kind == "geometric") {
    schedule = GrowthSchedule::geometric(k0, config.schedule.ratio);
  } else {
    schedule = GrowthSchedule::explicit_sizes(config.schedule.values);
    if (schedule.k0() != k0)
      bad_config("schedule.values[0] = " + std::to_string(schedule.k0()) + " but initial counts sum to " +
                 std::to_string(k0));
  }

  RunConfig run{*map, schedule, initial, config.stop, config.stride, config.seeds.front()};
  validate(run);
  return Experiment{*map, std::move(run), labels};
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t, const std::string& digest) {
  out << "# urn-trajectory digest=" << digest << " seed=" << t.seed << " map=" << t.map.to_string()
      << " schedule=" << t.schedule.to_string() << " rng=" << kRngName << " sampler=" << kSamplerName << '\n';
  out << "n,k_n";
  for (const auto& l : t.labels) out << ',' << csv_field("count_" + l);
  for (const auto& l : t.labels) out << ',' << csv_field("p_" + l);
  out << '\n';
  for (const auto& s : t.snapshots) {
    out << s.n << ',' << s.total;
    for (Index i = 0; i < s.counts.size(); ++i) out << ',' << s.counts[i];
    for (Index i = 0; i < s.counts.size(); ++i)
      out << ',' << format_double(static_cast<double>(s.counts[i]) / static_cast<double>(s.total));
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in, const GrowthSchedule& schedule) {
  Trajectory t;
  t.schedule = schedule;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# urn-trajectory", 0) != 0)
    throw Error(Errc::InvalidArgument, "missing trajectory header comment");
  {
    std::istringstream words(line);
    for (std::string w; words >> w;)
      if (w.rfind("seed=", 0) == 0) t.seed = static_cast<std::uint64_t>(std::stoull(w.substr(5)));
  }
  if (!std::getline(in, line)) throw Error(Errc::InvalidArgument, "missing column header");
  const auto header = split_csv(line);
  if (header.size() < 4 || header[0] != "n" || header[1] != "k_n" || (header.size() - 2) % 2 != 0)
    throw Error(Errc::InvalidArgument, "unexpected column header");
  const std::size_t d = (header.size() - 2) / 2;
  for (std::size_t i = 0; i < d; ++i) {
    const auto& h = header[2 + i];
    if (h.rfind("count_", 0) != 0) throw Error(Errc::InvalidArgument, "expected count column, got " + h);
    t.labels.push_back(h.substr(6));
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw Error(Errc::InvalidArgument, "row has " + std::to_string(f.size()) + " fields");
    Snapshot s;
    s.n = parse_int(f[0]);
    s.total = parse_int(f[1]);
    s.counts.resize(static_cast<Index>(d));
    for (std::size_t i = 0; i < d; ++i) s.counts[static_cast<Index>(i)] = parse_int(f[2 + i]);
    if (s.counts.sum() != s.total) throw Error(Errc::InvalidArgument, "row " + f[0] + ": counts do not sum to k_n");
    t.snapshots.push_back(std::move(s));
  }
  if (t.snapshots.empty()) throw Error(Errc::InvalidArgument, "trajectory has no rows");
  t.stride = t.snapshots.size() > 1 ? std::max<std::int64_t>(1, t.snapshots[1].n - t.snapshots[0].n) : 1;
  return t;
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const ConditionReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return {{"condition", r.condition},
          {"pass", r.pass},
          {"worst_value", r.worst_value},
          {"witness_point", vector_json(r.witness)},
          {"parameters", params},
          {"note", r.note}};
}

json to_json(const FixedPointSet& fps, const std::vector<std::string>& labels) {
  json points = json::array();
  for (const auto& fp : fps.points) {
    json support = json::array();
    for (Index i = 0; i < fp.point.size(); ++i)
      if (fp.point[i] > 0) support.push_back(labels[static_cast<std::size_t>(i)]);
    points.push_back({{"label", fp.label},
                      {"weights", vector_json(fp.point.weights())},
                      {"support", support},
                      {"boundary", fp.on_boundary()},
                      {"c", vector_json(fp.boundary)}});
  }
  return {{"labels", labels},
          {"points", points},
          {"attracting_index", fps.attracting_index ? json(*fps.attracting_index) : json(nullptr)},
          {"min_pairwise_distance", fps.points.size() > 1 ? json(fps.min_pairwise_distance()) : json(nullptr)},
          {"note", fps.note}};
}

json to_json(const DriftRecord& r) {
  return {{"n", r.n},         {"k", r.k},
          {"next_k", r.next_k}, {"Z", r.z},
          {"xi", r.xi},       {"expected_next_Z", r.expected_next_z},
          {"drift", r.drift}, {"drift_stderr", r.drift_stderr},
          {"zeta", r.zeta},   {"exact", r.exact},
          {"within_bound", r.within_bound}};
}

json to_json(const ConvergenceVerdict& v) {
  return {{"target", vector_json(v.target.weights())},
          {"estimated_limit", vector_json(v.estimated_limit.weights())},
          {"threshold", v.threshold},
          {"window", v.window},
          {"final_distance", v.final_distance},
          {"final_tv", v.final_tv},
          {"window_max_distance", v.window_max_distance},
          {"window_max_tv", v.window_max_tv},
          {"converged", v.converged}};
}

json to_json(const MonitorReport& r) {
  json records = json::array();
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    auto j = to_json(r.records[i]);
    j["xi_partial_sum"] = r.xi_partial[i];
    records.push_back(std::move(j));
  }
  json boundary = json::array();
  for (const auto& s : r.boundary_series) {
    json vals = json::array();
    for (const auto& [n, v] : s.values) vals.push_back({n, std::isfinite(v) ? json(v) : json(nullptr)});
    boundary.push_back({{"c", vector_json(s.boundary)}, {"inverse_mass", vals}});
  }
  return {{"records", records},   {"sum_xi", r.sum_xi},       {"xi_bound", r.xi_bound},
          {"violations", r.violations}, {"skipped", r.skipped}, {"boundary_series", boundary}};
}

json trajectory_summary(const Trajectory& t) {
  const auto& last = t.terminal();
  return {{"seed", t.seed},
          {"terminal_p", vector_json(last.empirical().weights())},
          {"terminal_k", last.total},
          {"steps", last.n}};
}

}  // namespace urn
