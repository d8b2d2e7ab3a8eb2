#pragma once

#include <optional>

#include "urn/types.hpp"

namespace urn {

inline constexpr double kSimplexTolerance = 1e-12;

/// A point of the probability simplex over a finite label set.
///
/// May carry exact backing (integer counts and their total); weights are then
/// counts[i] / total rounded once, and exact_weights<Rational>() recovers the
/// rational value with no rounding at all.
class Distribution {
 public:
  /// Validates non-negativity and sum-to-one within tol.
  static Distribution from_weights(Eigen::VectorXd weights, double tol = kSimplexTolerance);
  static Distribution from_counts(const Counts& counts);
  static Distribution uniform(Index size);
  static Distribution point_mass(Index size, Index at);
  /// Uniform over the true entries of the mask, exactly backed.
  static Distribution uniform_on(const Mask& support);

  Index size() const { return weights_.size(); }
  const Eigen::VectorXd& weights() const { return weights_; }
  double operator[](Index i) const { return weights_[i]; }

  bool has_exact() const { return counts_.has_value(); }
  const std::optional<Counts>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }

  /// Weights cast to Scalar; exact division of the counts when backing exists.
  template <typename Scalar>
  Vector<Scalar> exact_weights() const {
    Vector<Scalar> out(size());
    for (Index i = 0; i < size(); ++i) {
      if (counts_)
        out[i] = Scalar((*counts_)[i]) / Scalar(total_);
      else
        out[i] = Scalar(weights_[i]);
    }
    return out;
  }

  Mask support() const;

 private:
  Distribution() = default;

  Eigen::VectorXd weights_;
  std::optional<Counts> counts_;
  std::int64_t total_ = 0;
};

double euclidean_distance(const Distribution& a, const Distribution& b);
double total_variation(const Distribution& a, const Distribution& b);

}  // namespace urn
