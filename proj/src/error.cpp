#include "upir/error.hpp"

namespace upir {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotAPrimePower: return "NotAPrimePower";
    case Errc::Unsupported: return "Unsupported";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::MalformedStructure: return "MalformedStructure";
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::HigmanViolation: return "HigmanViolation";
    case Errc::CollinearGenerators: return "CollinearGenerators";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NotDiameterBounded: return "NotDiameterBounded";
    case Errc::DegeneratePartition: return "DegeneratePartition";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace upir
