#pragma once

#include <stdexcept>
#include <string>

namespace windguide {

enum class Error {
  InvalidInput,
  UnsupportedWindModel,
  NotPlanar,
  NoAdmissibleRoot,
  AllCoefficientsZero,
  NonPositiveTgo,
  OutOfHorizon,
  ZeroInitialOffset,
  ZeroJerkCostate,
  InvalidReferenceTime,
  DivergedBeyondMaxTime,
};

class GuidanceError : public std::runtime_error {
 public:
  GuidanceError(Error code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Error code() const { return code_; }

 private:
  Error code_;
};

const char* error_name(Error code);

}  // namespace windguide
