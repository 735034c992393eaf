#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace probkin {

enum class Errc {
  NotSquare,
  NotHermitian,
  NonFiniteEntry,
  NonFiniteDerivative,
  DimensionMismatch,
  WrongDimension,
  OutOfRangeProbability,
  InvalidDensityMatrix,
  InvalidMarginal,
  NonAdmissibleState,
  NotUnitary,
  EmptySet,
  InvalidKrausSet,
  WeightsNotNormalized,
  DiagonalOverflow,
  DegreeTooLarge,
  RangeExceeded,
  SchemaError,
  IoError,
};

std::string_view errc_name(Errc code) noexcept;

// Every library failure is reported as an Error carrying one of the codes
// above; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace probkin
