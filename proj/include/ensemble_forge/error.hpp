#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ensemble_forge {

enum class ErrorKind {
  // I/O
  FileNotFound,
  WriteFailed,
  // validation
  EmptyMatrix,
  NegativeProbability,
  NonFiniteValue,
  RowSumOutOfTolerance,
  NonRectangular,
  CsvParse,
  ManifestParse,
  ArtifactParse,
  ShapeMismatch,
  DuplicateId,
  LabelOutOfRange,
  LengthMismatch,
  DegenerateWeights,
  InvalidWeight,
  // configuration
  ConfigInvalid,
  TooManyMembers,
  BadStep,
  SpecInvalid,
};

/// Error families map onto process exit codes.
enum class ErrorFamily { Io = 2, Validation = 3, Config = 4 };

ErrorFamily family_of(ErrorKind kind) noexcept;
std::string_view kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  ErrorFamily family() const noexcept { return family_of(kind_); }
  int exit_code() const noexcept { return static_cast<int>(family()); }

 private:
  ErrorKind kind_;
};

}  // namespace ensemble_forge
