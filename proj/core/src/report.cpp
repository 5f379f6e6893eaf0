#include "elab/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace elab {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Warn:
      return "WARN";
    default:
      return "FAIL";
  }
}

CheckResult CheckResult::pass(std::string name, std::string anchor,
                              double residual, std::string location) {
  return {std::move(name), std::move(anchor), CheckStatus::Pass, residual,
          std::move(location), ""};
}

CheckResult CheckResult::fail(std::string name, std::string anchor,
                              double residual, std::string location,
                              std::string detail) {
  return {std::move(name), std::move(anchor), CheckStatus::Fail, residual,
          std::move(location), std::move(detail)};
}

CheckResult CheckResult::warn(std::string name, std::string anchor,
                              std::string detail) {
  return {std::move(name), std::move(anchor), CheckStatus::Warn, 0.0, "",
          std::move(detail)};
}

bool VerificationReport::any_fail() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return true;
  }
  return false;
}

int VerificationReport::count(CheckStatus s) const {
  int n = 0;
  for (const auto& c : checks) {
    if (c.status == s) ++n;
  }
  return n;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["config_hash"] = config_hash;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["status"] = to_string(c.status);
    e["worst_residual"] = c.worst_residual;
    e["location"] = c.location;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "[%s] %-34s residual=%.3e %s\n",
                  to_string(c.status).c_str(), c.name.c_str(),
                  c.worst_residual, c.detail.c_str());
    out += buf;
  }
  return out;
}

}  // namespace elab
