#pragma once

#include <string>

#include "lebesgue/json_io.hpp"

namespace lebesgue {

inline constexpr const char* kReportVersion = "1.0.0";

struct CheckOutcome {
  io::Json report;
  std::string summary;
  bool passed = false;
};

/// Runs the Tonelli verifier and every requested audit on a parsed spec.
/// Throws NotSigmaFinite when a witness fails.
CheckOutcome run_check(const io::ProblemSpec& spec);

}  // namespace lebesgue
