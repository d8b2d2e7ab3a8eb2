#include "urn/distribution.hpp"

#include <cmath>
#include <string>

#include "urn/error.hpp"

namespace urn {

Distribution Distribution::from_weights(Eigen::VectorXd weights, double tol) {
  if (weights.size() == 0) throw Error(Errc::InvalidDistribution, "empty weight vector");
  for (Index i = 0; i < weights.size(); ++i)
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw Error(Errc::InvalidDistribution, "weight " + std::to_string(i) + " is negative or not finite");
  const double sum = weights.sum();
  if (std::abs(sum - 1.0) > tol)
    throw Error(Errc::InvalidDistribution, "weights sum to " + std::to_string(sum));
  Distribution d;
  d.weights_ = std::move(weights);
  return d;
}

Distribution Distribution::from_counts(const Counts& counts) {
  if (counts.size() == 0) throw Error(Errc::InvalidDistribution, "empty count vector");
  if ((counts.array() < 0).any()) throw Error(Errc::InvalidDistribution, "negative count");
  const std::int64_t total = counts.sum();
  if (total <= 0) throw Error(Errc::InvalidDistribution, "counts sum to zero");
  Distribution d;
  d.weights_ = counts.cast<double>() / static_cast<double>(total);
  d.counts_ = counts;
  d.total_ = total;
  return d;
}

Distribution Distribution::uniform(Index size) {
  return from_counts(Counts::Ones(size));
}

Distribution Distribution::point_mass(Index size, Index at) {
  if (at < 0 || at >= size) throw Error(Errc::InvalidArgument, "point mass index out of range");
  Counts c = Counts::Zero(size);
  c[at] = 1;
  return from_counts(c);
}

Distribution Distribution::uniform_on(const Mask& support) {
  Counts c(static_cast<Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) c[static_cast<Index>(i)] = support[i] ? 1 : 0;
  return from_counts(c);
}

Mask Distribution::support() const {
  Mask m(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) m[static_cast<std::size_t>(i)] = weights_[i] > 0.0;
  return m;
}

double euclidean_distance(const Distribution& a, const Distribution& b) {
  return (a.weights() - b.weights()).norm();
}

double total_variation(const Distribution& a, const Distribution& b) {
  return 0.5 * (a.weights() - b.weights()).lpNorm<1>();
}

}  // namespace urn
