#include "urn/error.hpp"

namespace urn {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidTable: return "InvalidTable";
    case Errc::NotLatinSquare: return "NotLatinSquare";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::NonBinaryStateSpace: return "NonBinaryStateSpace";
    case Errc::InvalidFitness: return "InvalidFitness";
    case Errc::NoAttractingPoint: return "NoAttractingPoint";
    case Errc::AllSamplesExcluded: return "AllSamplesExcluded";
    case Errc::InitialMassZero: return "InitialMassZero";
    case Errc::NonIncreasingSchedule: return "NonIncreasingSchedule";
    case Errc::TooManyOutcomes: return "TooManyOutcomes";
    case Errc::Unsupported: return "Unsupported";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

bool Error::input_error() const noexcept {
  switch (code_) {
    case Errc::TooManyOutcomes:
    case Errc::AllSamplesExcluded:
    case Errc::Unsupported:
    case Errc::Io:
      return false;
    default:
      return true;
  }
}

}  // namespace urn
