#include "syncnet/error.hpp"

namespace syncnet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidEdge: return "InvalidEdge";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ScanTooShort: return "ScanTooShort";
    case Errc::NotStabilizable: return "NotStabilizable";
    case Errc::NotControllable: return "NotControllable";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::BlowUp: return "BlowUp";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace syncnet
