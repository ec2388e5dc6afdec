#include "ensemble_forge/error.hpp"

namespace ensemble_forge {

ErrorFamily family_of(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::FileNotFound:
    case ErrorKind::WriteFailed:
      return ErrorFamily::Io;
    case ErrorKind::ConfigInvalid:
    case ErrorKind::TooManyMembers:
    case ErrorKind::BadStep:
    case ErrorKind::SpecInvalid:
      return ErrorFamily::Config;
    default:
      return ErrorFamily::Validation;
  }
}

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::WriteFailed: return "WriteFailed";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::NegativeProbability: return "NegativeProbability";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::RowSumOutOfTolerance: return "RowSumOutOfTolerance";
    case ErrorKind::NonRectangular: return "NonRectangular";
    case ErrorKind::CsvParse: return "CsvParse";
    case ErrorKind::ManifestParse: return "ManifestParse";
    case ErrorKind::ArtifactParse: return "ArtifactParse";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DegenerateWeights: return "DegenerateWeights";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::TooManyMembers: return "TooManyMembers";
    case ErrorKind::BadStep: return "BadStep";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

}  // namespace ensemble_forge
