#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace relaxarea {

enum class ErrorCode {
  SingularPoint,
  OutOfDomain,
  StencilCrossesSingularity,
  InvalidParams,
  InvalidGeometry,
  NonFinite,
  NoConvergence,
  AmbiguousWinding,
  SingularOnLoop,
  DegreeMismatch,
  InsufficientData,
  IoFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  // Plaquette / face / cell index for errors tied to a lattice element.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::StencilCrossesSingularity: return "StencilCrossesSingularity";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AmbiguousWinding: return "AmbiguousWinding";
    case ErrorCode::SingularOnLoop: return "SingularOnLoop";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace relaxarea
