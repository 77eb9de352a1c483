#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cofix {

enum class ErrorKind {
  Domain,                  // point or mapping foreign to the space
  BoundViolation,          // coefficient tuple outside its admissible region
  ExhaustiveOnInfinite,    // "all pairs" requested on a Euclidean space
  Infeasible,              // no coefficient tuple satisfies the sampled pairs
  RangeInclusionFailure,   // SX or TX escapes fX
  ImageMismatch,           // fX != gX
  SectionUnavailable,      // f not injective on a Euclidean space
  NotConverged,            // solver stopped without a certified limit
  NonUniqueCoincidence,    // two distinct points of coincidence found
  LiftMismatch,            // Tv != v (or Tv != fv) while lifting
  LiftDisagreement,        // the two four-map lifts differ
  PreconditionFailure,     // a caller-side claim does not hold
  RepairFailure,           // generator could not produce a strict metric
  Schema,                  // malformed problem file
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `stage()` names the pipeline step
/// that raised it; it is empty outside the three/four-map pipelines.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message, std::string stage = {})
      : std::runtime_error(std::move(message)), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

  Error with_stage(std::string stage) const { return Error(kind_, what(), std::move(stage)); }

private:
  ErrorKind kind_;
  std::string stage_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::ExhaustiveOnInfinite: return "ExhaustiveOnInfinite";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::RangeInclusionFailure: return "RangeInclusionFailure";
    case ErrorKind::ImageMismatch: return "ImageMismatch";
    case ErrorKind::SectionUnavailable: return "SectionUnavailable";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::NonUniqueCoincidence: return "NonUniqueCoincidence";
    case ErrorKind::LiftMismatch: return "LiftMismatch";
    case ErrorKind::LiftDisagreement: return "LiftDisagreement";
    case ErrorKind::PreconditionFailure: return "PreconditionFailure";
    case ErrorKind::RepairFailure: return "RepairFailure";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

}  // namespace cofix
