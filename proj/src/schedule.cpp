#include "urn/schedule.hpp"

#include <charconv>
#include <cmath>

#include "urn/error.hpp"

namespace urn {

GrowthSchedule GrowthSchedule::unit(std::int64_t k0) {
  if (k0 < 1) throw Error(Errc::InvalidArgument, "k0 must be positive");
  GrowthSchedule s;
  s.kind_ = Kind::Unit;
  s.k0_ = k0;
  return s;
}

GrowthSchedule GrowthSchedule::geometric(std::int64_t k0, double ratio) {
  if (k0 < 1) throw Error(Errc::InvalidArgument, "k0 must be positive");
  if (!(ratio > 1.0) || !std::isfinite(ratio))
    throw Error(Errc::InvalidArgument, "geometric schedule needs ratio > 1");
  GrowthSchedule s;
  s.kind_ = Kind::Geometric;
  s.k0_ = k0;
  s.ratio_ = ratio;
  return s;
}

GrowthSchedule GrowthSchedule::explicit_sizes(std::vector<std::int64_t> values) {
  if (values.empty()) throw Error(Errc::InvalidArgument, "explicit schedule is empty");
  if (values.front() < 1) throw Error(Errc::InvalidArgument, "k0 must be positive");
  for (std::size_t n = 0; n + 1 < values.size(); ++n)
    if (values[n + 1] < values[n] + 1)
      throw Error(Errc::NonIncreasingSchedule,
                  "k_" + std::to_string(n + 1) + " = " + std::to_string(values[n + 1]) +
                      " after k_" + std::to_string(n) + " = " + std::to_string(values[n]));
  GrowthSchedule s;
  s.kind_ = Kind::Explicit;
  s.k0_ = values.front();
  s.values_ = std::move(values);
  return s;
}

std::optional<std::int64_t> GrowthSchedule::next(std::int64_t n, std::int64_t k_n) const {
  switch (kind_) {
    case Kind::Unit:
      return k_n + 1;
    case Kind::Geometric: {
      const auto grown = static_cast<std::int64_t>(std::ceil(ratio_ * static_cast<double>(k_n)));
      return std::max(k_n + 1, grown);
    }
    case Kind::Explicit:
      if (n + 1 >= static_cast<std::int64_t>(values_.size())) return std::nullopt;
      return values_[static_cast<std::size_t>(n + 1)];
  }
  return std::nullopt;
}

std::vector<std::int64_t> GrowthSchedule::materialize(std::int64_t horizon) const {
  std::vector<std::int64_t> ks{k0_};
  for (std::int64_t n = 0; n < horizon; ++n) {
    auto k = next(n, ks.back());
    if (!k) break;
    ks.push_back(*k);
  }
  return ks;
}

std::string GrowthSchedule::to_string() const {
  switch (kind_) {
    case Kind::Unit:
      return "unit(k0=" + std::to_string(k0_) + ")";
    case Kind::Geometric: {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, ratio_);
      return "geometric(k0=" + std::to_string(k0_) + ",C=" + std::string(buf, end) + ")";
    }
    case Kind::Explicit:
      return "explicit(k0=" + std::to_string(k0_) + ",len=" + std::to_string(values_.size()) + ")";
  }
  return "unknown";
}

}  // namespace urn
