#include "genus0/error.hpp"

namespace genus0 {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonSimplicial: return "NonSimplicial";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::BadLink: return "BadLink";
    case ErrorCode::UnsupportedTopology: return "UnsupportedTopology";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::DegenerateLink: return "DegenerateLink";
    case ErrorCode::InadmissibleLengths: return "InadmissibleLengths";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::PoleNotVertex: return "PoleNotVertex";
    case ErrorCode::NotInscribed: return "NotInscribed";
    case ErrorCode::CoincidentMarks: return "CoincidentMarks";
    case ErrorCode::MarksNotVertices: return "MarksNotVertices";
    case ErrorCode::ArcTooLong: return "ArcTooLong";
    case ErrorCode::LevelTooLarge: return "LevelTooLarge";
    case ErrorCode::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoAdmissibleStart: return "NoAdmissibleStart";
    case ErrorCode::StuckLineSearch: return "StuckLineSearch";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::LeftAdmissibleRegion: return "LeftAdmissibleRegion";
    case ErrorCode::HolonomyResidualExceeded: return "HolonomyResidualExceeded";
    case ErrorCode::NotDelaunay: return "NotDelaunay";
    case ErrorCode::BoundaryNotConvex: return "BoundaryNotConvex";
    case ErrorCode::NonConvexBoundary: return "NonConvexBoundary";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::InconsistentApex: return "InconsistentApex";
    case ErrorCode::EdgeDictionaryMismatch: return "EdgeDictionaryMismatch";
  }
  return "UnknownError";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return ErrorClass::Parse;
    case ErrorCode::NonSimplicial:
    case ErrorCode::NonManifoldEdge:
    case ErrorCode::BadLink:
    case ErrorCode::UnsupportedTopology:
    case ErrorCode::NotClosed:
    case ErrorCode::DegenerateLink:
    case ErrorCode::InadmissibleLengths:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::OutOfRange:
    case ErrorCode::AtPole:
    case ErrorCode::ZeroVector:
    case ErrorCode::PoleNotVertex:
    case ErrorCode::NotInscribed:
    case ErrorCode::CoincidentMarks:
    case ErrorCode::MarksNotVertices:
    case ErrorCode::ArcTooLong:
    case ErrorCode::LevelTooLarge:
    case ErrorCode::TooLargeForExhaustive:
      return ErrorClass::Validation;
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NoAdmissibleStart:
    case ErrorCode::StuckLineSearch:
    case ErrorCode::MaxIterations:
    case ErrorCode::LeftAdmissibleRegion:
    case ErrorCode::HolonomyResidualExceeded:
      return ErrorClass::Solver;
    case ErrorCode::NotDelaunay:
    case ErrorCode::BoundaryNotConvex:
    case ErrorCode::NonConvexBoundary:
    case ErrorCode::CertificateFailure:
    case ErrorCode::InconsistentApex:
    case ErrorCode::EdgeDictionaryMismatch:
      return ErrorClass::Certificate;
  }
  return ErrorClass::Validation;
}

}  // namespace genus0
