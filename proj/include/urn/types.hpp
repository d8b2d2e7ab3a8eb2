#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace urn {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Ball counts per label. Totals stay well inside int64 at any practical urn size.
using Counts = Vector<std::int64_t>;

using Mask = std::vector<bool>;

}  // namespace urn
