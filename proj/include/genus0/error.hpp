#pragma once

#include <stdexcept>
#include <string>

namespace genus0 {

// Every failure the library can diagnose, one code per condition.
// Codes group into four classes that the CLI maps onto exit codes:
// parse (input could not be read), validation (input read but rejected),
// solver (iteration failed to converge or left its admissible region),
// certificate (a constructed object failed its own checks).
enum class ErrorCode {
  // parse
  ParseError,
  // validation
  NonSimplicial,
  NonManifoldEdge,
  BadLink,
  UnsupportedTopology,
  NotClosed,
  DegenerateLink,
  InadmissibleLengths,
  HypothesisViolated,
  OutOfRange,
  AtPole,
  ZeroVector,
  PoleNotVertex,
  NotInscribed,
  CoincidentMarks,
  MarksNotVertices,
  ArcTooLong,
  LevelTooLarge,
  TooLargeForExhaustive,
  // solver
  NotPositiveDefinite,
  NoAdmissibleStart,
  StuckLineSearch,
  MaxIterations,
  LeftAdmissibleRegion,
  HolonomyResidualExceeded,
  // certificate
  NotDelaunay,
  BoundaryNotConvex,
  NonConvexBoundary,
  CertificateFailure,
  InconsistentApex,
  EdgeDictionaryMismatch,
};

enum class ErrorClass { Parse, Validation, Solver, Certificate };

ErrorClass error_class(ErrorCode code);
const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

  // Pipeline stage that raised the error, filled in by uniformize() when it
  // wraps a stage failure. Empty for errors raised directly.
  const std::string& stage() const { return stage_; }
  void set_stage(const std::string& s) { stage_ = s; }

 private:
  ErrorCode code_;
  std::string stage_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace genus0
