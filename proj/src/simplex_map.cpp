#include "urn/simplex_map.hpp"

#include <charconv>
#include <cmath>

namespace urn {

namespace {

std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Convolution: return "convolution";
    case MapKind::Parity: return "parity";
    case MapKind::Genotype: return "genotype";
    case MapKind::Custom: return "custom";
  }
  return "unknown";
}

std::string MapDescriptor::to_string() const {
  switch (kind) {
    case MapKind::Convolution: return "convolution(" + group + ")";
    case MapKind::Parity: return "parity(k=" + std::to_string(parity_k) + ")";
    case MapKind::Genotype: return "genotype(s=" + shortest(s) + ",t=" + shortest(t) + ")";
    case MapKind::Custom: return "custom(" + group + ")";
  }
  return "unknown";
}

ConvolutionMap::ConvolutionMap(std::shared_ptr<const FiniteGroup> group)
    : group_(std::move(group)) {
  if (!group_) throw Error(Errc::InvalidArgument, "convolution map needs a group");
  const Index n = group_->order();
  quotient_.resize(n, n);
  for (Index g = 0; g < n; ++g)
    for (Index h = 0; h < n; ++h)
      quotient_(g, h) = static_cast<int>(group_->multiply(g, group_->inverse(h)));
}

ParityMap::ParityMap(int k) : k_(k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "parity map needs k >= 1");
}

GenotypeMap::GenotypeMap(double s, double t) : s_(s), t_(t) {
  if (!(s < 1.0) || !(t < 1.0) || !std::isfinite(s) || !std::isfinite(t))
    throw Error(Errc::InvalidFitness,
                "fitness penalties need s < 1 and t < 1, got s=" + shortest(s) + " t=" + shortest(t));
}

CustomMap::CustomMap(Function fn, std::vector<std::string> labels, std::string name)
    : fn_(std::move(fn)), labels_(std::move(labels)), name_(std::move(name)) {
  if (!fn_) throw Error(Errc::InvalidArgument, "custom map needs a function");
  if (labels_.empty()) throw Error(Errc::InvalidArgument, "custom map needs labels");
}

Distribution SimplexMap::apply(const Distribution& p) const {
  if (p.size() != dimension())
    throw Error(Errc::InvalidArgument, "distribution has " + std::to_string(p.size()) +
                                           " labels, map expects " + std::to_string(dimension()));
  Eigen::VectorXd out = apply<double>(p.weights());
  // Rounding can leave a few ulp of negative mass on zero coordinates of custom maps.
  out = out.cwiseMax(0.0);
  return Distribution::from_weights(std::move(out));
}

MapKind SimplexMap::kind() const {
  return std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ConvolutionMap>) return MapKind::Convolution;
        else if constexpr (std::is_same_v<M, ParityMap>) return MapKind::Parity;
        else if constexpr (std::is_same_v<M, GenotypeMap>) return MapKind::Genotype;
        else return MapKind::Custom;
      },
      impl_);
}

MapDescriptor SimplexMap::descriptor() const {
  MapDescriptor d;
  d.kind = kind();
  if (auto* c = as<ConvolutionMap>()) d.group = c->group().name();
  if (auto* p = as<ParityMap>()) d.parity_k = p->k();
  if (auto* g = as<GenotypeMap>()) {
    d.s = g->s();
    d.t = g->t();
  }
  if (auto* u = as<CustomMap>()) d.group = u->name();
  return d;
}

std::vector<std::string> SimplexMap::labels() const {
  if (auto* c = as<ConvolutionMap>()) return c->group().labels();
  if (as<ParityMap>()) return {"0", "1"};
  if (as<GenotypeMap>()) return {"A", "a"};
  return as<CustomMap>()->labels();
}

Index SimplexMap::dimension() const {
  if (auto* c = as<ConvolutionMap>()) return c->dimension();
  if (auto* u = as<CustomMap>()) return static_cast<Index>(u->labels().size());
  return 2;
}

SimplexMap convolution_map(std::shared_ptr<const FiniteGroup> group) {
  return SimplexMap(ConvolutionMap(std::move(group)));
}

SimplexMap convolution_map(const FiniteGroup& group) {
  return convolution_map(std::make_shared<const FiniteGroup>(group));
}

SimplexMap parity_map(int k) { return SimplexMap(ParityMap(k)); }

SimplexMap genotype_map(double s, double t) { return SimplexMap(GenotypeMap(s, t)); }

SimplexMap custom_map(CustomMap::Function fn, std::vector<std::string> labels, std::string name) {
  return SimplexMap(CustomMap(std::move(fn), std::move(labels), std::move(name)));
}

}  // namespace urn
