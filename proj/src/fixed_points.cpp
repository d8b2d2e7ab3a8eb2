#include "urn/fixed_points.hpp"

#include <charconv>
#include <limits>

#include "urn/error.hpp"

namespace urn {

namespace {

std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

FixedPoint make_point(Distribution q, std::string label) {
  Eigen::VectorXd c = boundary_vector(q);
  return FixedPoint{std::move(q), std::move(c), std::move(label)};
}

Distribution allele_point(double p_major) {
  if (p_major == 0.0) return Distribution::point_mass(2, 1);
  if (p_major == 1.0) return Distribution::point_mass(2, 0);
  Eigen::VectorXd w(2);
  w << p_major, 1.0 - p_major;
  return Distribution::from_weights(w);
}

FixedPointSet convolution_points(const ConvolutionMap& m, std::size_t cap) {
  const auto& g = m.group();
  FixedPointSet out;
  for (const auto& h : enumerate_subgroups(g, cap)) {
    std::string label = "{";
    bool first = true;
    for (Index i : h.members()) {
      if (!first) label += ',';
      label += g.label(i);
      first = false;
    }
    out.points.push_back(make_point(Distribution::uniform_on(h.mask()), label + "}"));
  }
  out.attracting_index = out.points.size() - 1;  // uniform over G sorts last
  return out;
}

FixedPointSet parity_points(const ParityMap& m) {
  FixedPointSet out;
  out.points.push_back(make_point(Distribution::point_mass(2, 0), "p1=0"));
  if (m.k() == 1) {
    out.points.push_back(make_point(Distribution::point_mass(2, 1), "p1=1"));
    out.points.push_back(make_point(Distribution::uniform(2), "p1=0.5"));
    out.note = "k = 1 is the identity map: every point is fixed, listing is not exhaustive";
    return out;
  }
  // (1 - 2p)^k = 1 - 2p has roots 1 - 2p in {1, 0} and also -1 when k is odd.
  out.points.push_back(make_point(Distribution::uniform(2), "p1=0.5"));
  out.attracting_index = 1;
  if (m.k() % 2 == 1) out.points.push_back(make_point(Distribution::point_mass(2, 1), "p1=1"));
  return out;
}

FixedPointSet genotype_points(const GenotypeMap& m) {
  const double s = m.s(), t = m.t();
  FixedPointSet out;
  out.points.push_back(make_point(allele_point(0.0), "pA=0"));
  out.points.push_back(make_point(allele_point(1.0), "pA=1"));

  const bool same_sign = (s > 0 && t > 0) || (s < 0 && t < 0);
  if (same_sign) {
    const double q = t / (s + t);
    out.points.push_back(make_point(allele_point(q), "pA=" + shortest(q)));
  }

  if (s > 0 && t > 0) {
    out.attracting_index = 2;
  } else if (s <= 0 && t >= 0 && !(s == 0 && t == 0)) {
    out.attracting_index = 1;  // A never loses, so p_A -> 1
  } else if (s >= 0 && t <= 0 && !(s == 0 && t == 0)) {
    out.attracting_index = 0;
  } else if (s == 0 && t == 0) {
    out.note = "s = t = 0 is the identity map: every point is fixed, listing is not exhaustive";
  } else {
    out.note = "s and t both negative: the interior fixed point repels, no attracting point";
  }
  return out;
}

}  // namespace

Eigen::VectorXd boundary_vector(const Distribution& q) {
  Eigen::VectorXd c(q.size());
  for (Index i = 0; i < q.size(); ++i) c[i] = q[i] > 0.0 ? 0.0 : 1.0;
  return c;
}

double fixed_point_residual(const SimplexMap& map, const Distribution& q) {
  return (map.apply<double>(q.weights()) - q.weights()).lpNorm<Eigen::Infinity>();
}

std::vector<std::size_t> FixedPointSet::repelling_boundary() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (j != attracting_index && points[j].on_boundary()) out.push_back(j);
  return out;
}

double FixedPointSet::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::min(best, euclidean_distance(points[i].point, points[j].point));
  return best;
}

FixedPointSet find_fixed_points(const SimplexMap& map, std::size_t subgroup_cap) {
  FixedPointSet out;
  if (auto* c = map.as<ConvolutionMap>())
    out = convolution_points(*c, subgroup_cap);
  else if (auto* p = map.as<ParityMap>())
    out = parity_points(*p);
  else if (auto* g = map.as<GenotypeMap>())
    out = genotype_points(*g);
  else
    throw Error(Errc::Unsupported, "fixed points of custom maps are not known in closed form");

  for (const auto& fp : out.points) {
    const double r = fixed_point_residual(map, fp.point);
    if (!(r <= kFixedPointTolerance))
      throw Error(Errc::InvalidArgument, "candidate " + fp.label + " has residual " + shortest(r));
  }
  return out;
}

}  // namespace urn
