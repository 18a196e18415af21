#pragma once

#include <stdexcept>

namespace cvt {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CutoffTooSmall : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct NotPure : Error { using Error::Error; };
struct InvalidTransmittance : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct GridTooSmall : Error { using Error::Error; };
struct InvalidTau : Error { using Error::Error; };
struct NotRepresentable : Error { using Error::Error; };
struct OrderOutOfRange : Error { using Error::Error; };
struct UnsupportedSpec : Error { using Error::Error; };

}  // namespace cvt
