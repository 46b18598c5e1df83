#ifndef PDMGK_VERIFY_HPP
#define PDMGK_VERIFY_HPP

#include "pdmgk/model.hpp"

#include <string>
#include <vector>

namespace pdmgk {

enum class Comparison {
  at_most, // passed iff measured <= threshold
  below,   // passed iff measured < threshold
};

struct CheckResult {
  std::string name;
  std::string claim_ref;
  double measured = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::at_most;
  bool passed = false;
  /// Empty unless the check could not be evaluated.
  std::string diagnostic;
};

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  /// Negative control: adds 0.1 to e_1 before the spectrum check.
  bool corrupt_spectrum = false;
};

struct VerificationReport {
  ModelParams params;
  VerifyLevel level = VerifyLevel::fast;
  std::vector<CheckResult> checks;
  bool overall = false;
};

VerificationReport run_battery(const ModelParams &params, VerifyLevel level,
                               const VerifyOptions &options = {});

/// Deterministic JSON document (schema_version "1"), no timings.
std::string report_to_json(const VerificationReport &report, int indent = 2);

const char *level_name(VerifyLevel level);
const char *convention_name(EnergyConvention c);

} // namespace pdmgk

#endif // PDMGK_VERIFY_HPP
