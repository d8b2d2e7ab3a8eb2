#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace urn {

enum class Errc {
  // group validation
  InvalidTable,
  NotLatinSquare,
  NotAssociative,
  NoIdentity,
  NoInverse,
  SizeCapExceeded,
  // maps and conditions
  InvalidDistribution,
  NonBinaryStateSpace,
  InvalidFitness,
  NoAttractingPoint,
  AllSamplesExcluded,
  InitialMassZero,
  // engine and diagnostics
  NonIncreasingSchedule,
  TooManyOutcomes,
  Unsupported,
  // plumbing
  InvalidArgument,
  InvalidConfig,
  Io,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

  // Input errors are the caller's fault (bad table, bad config, bad parameter).
  bool input_error() const noexcept;

 private:
  Errc code_;
};

}  // namespace urn
