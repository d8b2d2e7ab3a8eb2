#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urn {

/// Deterministic urn sizes k_0 < k_1 < ... with k_{n+1} >= k_n + 1.
///
/// Random sizes (an externally simulated birth process, say) come in through
/// explicit(); the engine never draws them itself, so k_{n+1} is known before
/// the batch for step n is sampled.
class GrowthSchedule {
 public:
  enum class Kind { Unit, Geometric, Explicit };

  /// unit(1)
  GrowthSchedule() = default;

  static GrowthSchedule unit(std::int64_t k0);
  /// k_{n+1} = max(k_n + 1, ceil(ratio * k_n)); ratio > 1.
  static GrowthSchedule geometric(std::int64_t k0, double ratio);
  /// values[0] is k_0. Throws NonIncreasingSchedule on any step of less than +1.
  static GrowthSchedule explicit_sizes(std::vector<std::int64_t> values);

  Kind kind() const { return kind_; }
  std::int64_t k0() const { return k0_; }
  double ratio() const { return ratio_; }
  const std::vector<std::int64_t>& values() const { return values_; }

  /// k_{n+1} given k_n at step n; nullopt once an explicit list is exhausted.
  std::optional<std::int64_t> next(std::int64_t n, std::int64_t k_n) const;

  /// k_0 .. k_horizon (shorter if an explicit list runs out).
  std::vector<std::int64_t> materialize(std::int64_t horizon) const;

  std::string to_string() const;

  bool operator==(const GrowthSchedule&) const = default;

 private:
  Kind kind_ = Kind::Unit;
  std::int64_t k0_ = 1;
  double ratio_ = 1.0;
  std::vector<std::int64_t> values_;
};

}  // namespace urn
