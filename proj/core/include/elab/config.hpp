#pragma once

#include <cstdint>
#include <string>

#include "elab/frame.hpp"
#include "elab/integrator.hpp"
#include "elab/reachability.hpp"

namespace elab {

enum class RegionChoice { Flat, WeakGeneral };

struct ProbeParams {
  double delta = 0.05;
  double x_max = 1.0;
};

// Work sizes for the verify-flat command; the acceptance suite pins its own.
struct VerifySizes {
  int grid_n = 21;
  int oracle_points = 2000;
  int mc_paths = 200;
  int geodesics = 100;
  double oracle_tol = 1e-8;  // setting this below solver precision must fail
};

// Parsed run configuration. The JSON schema is strict: unknown keys are
// rejected at every level (see README for the full schema).
struct RunConfig {
  std::uint64_t seed = 0;
  FrameStructure frame = FrameStructure::flat();
  IntegratorConfig integrator{};
  SamplerConfig sampler{};
  RegionChoice regions = RegionChoice::Flat;
  double slack = 1e-7;
  ProbeParams probe{};
  VerifySizes verify{};
  std::string out_cloud;
  std::string out_report;

  // FNV-1a over a canonical rendering of the effective configuration
  // (including the seed), so reports are traceable to their inputs.
  std::string config_hash() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace elab
