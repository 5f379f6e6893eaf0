#pragma once

#include <string>
#include <vector>

namespace elab {

enum class CheckStatus { Pass, Warn, Fail };

std::string to_string(CheckStatus s);

// One verified identity, residual, or inclusion.
struct CheckResult {
  std::string name;
  std::string anchor;  // which identity or bound this check pins down
  CheckStatus status = CheckStatus::Pass;
  double worst_residual = 0.0;
  std::string location;  // where the worst residual occurred, if anywhere
  std::string detail;

  static CheckResult pass(std::string name, std::string anchor,
                          double residual = 0.0, std::string location = "");
  static CheckResult fail(std::string name, std::string anchor,
                          double residual, std::string location = "",
                          std::string detail = "");
  static CheckResult warn(std::string name, std::string anchor,
                          std::string detail);
};

struct VerificationReport {
  std::string tool_version;
  std::string config_hash;
  std::vector<CheckResult> checks;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  bool any_fail() const;
  int count(CheckStatus s) const;

  std::string to_json() const;
  // One "status name residual" line per check.
  std::string to_text() const;
};

}  // namespace elab
