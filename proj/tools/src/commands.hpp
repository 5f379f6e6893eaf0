#pragma once

#include <string>

#include "elab/config.hpp"

namespace elab::tools {

// Exit codes across all commands: 0 all checks PASS or WARN, 2 any FAIL.
// Usage, configuration and I/O errors throw and map to exit code 1.
int cmd_check_structure(const RunConfig& cfg, const std::string& out_path);
int cmd_verify_flat(const RunConfig& cfg, const std::string& out_path);
int cmd_sample(const RunConfig& cfg, const std::string& out_cloud,
               const std::string& out_report, const std::string& in_cloud);
int cmd_solve_cauchy(const RunConfig& cfg, const std::string& problem,
                     int grid_n, const std::string& out_path);
int cmd_plot(const std::string& cloud_path, const std::string& plane,
             const std::string& out_path);

}  // namespace elab::tools
