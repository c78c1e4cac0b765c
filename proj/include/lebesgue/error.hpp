#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lebesgue {

enum class ErrorCode {
  IndeterminateSum,
  UnboundedSequence,
  CarrierMismatch,
  NotMeasurable,
  NotMeasurableMap,
  NotMeasurablePointwise,
  NegativeValue,
  NonMeasurableLevelSet,
  TooFewValues,
  NonMonotoneSequence,
  NotSigmaFinite,
  InvalidArgument,
  CapacityExceeded,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the kernel. The code is stable and the message
// names the offending object.
class KernelError : public std::runtime_error {
 public:
  KernelError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lebesgue
