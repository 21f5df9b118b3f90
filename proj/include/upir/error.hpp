#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace upir {

enum class Errc {
  NotAPrimePower,
  Unsupported,
  DivisionByZero,
  ZeroVector,
  MalformedStructure,
  AxiomViolation,
  HigmanViolation,
  CollinearGenerators,
  Disconnected,
  NotDiameterBounded,
  DegeneratePartition,
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code);

/// Every failure in the library surfaces as this exception; `code()` is the
/// stable discriminator, `what()` carries the human-readable witness.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace upir
