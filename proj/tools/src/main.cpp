#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "elab/errors.hpp"
#include "elab/version.hpp"

namespace {

elab::RunConfig load_with_env_seed(const std::string& path) {
  elab::RunConfig cfg = elab::load_config(path);
  if (const char* env = std::getenv("ELAB_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw elab::ConfigError("ELAB_SEED must be a nonnegative integer");
    }
    cfg.seed = v;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engel sub-Lorentzian laboratory"};
  app.set_version_flag("--version", ELAB_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_path, out_cloud, out_report, in_cloud;
  std::string cloud_path, plane = "xw", problem = "ca1";
  int grid_n = 5;

  auto* check = app.add_subcommand("check-structure",
                                   "Growth vectors, frame constraints, and "
                                   "the Hamiltonian-type probe");
  check->add_option("--config", config_path, "JSON configuration")->required();
  check->add_option("--out", out_path, "write the report as JSON");

  auto* verify = app.add_subcommand(
      "verify-flat", "Run every identity suite for the flat structure");
  verify->add_option("--config", config_path, "JSON configuration")->required();
  verify->add_option("--out", out_path, "write the report as JSON");

  auto* sample = app.add_subcommand(
      "sample", "Sample a reachable cloud and audit it against the regions");
  sample->add_option("--config", config_path, "JSON configuration")->required();
  sample->add_option("--out-cloud", out_cloud, "write endpoints as CSV");
  sample->add_option("--out-report", out_report, "write the report as JSON");
  sample->add_option("--in-cloud", in_cloud,
                     "re-audit an existing cloud CSV without simulation");

  auto* solve = app.add_subcommand("solve-cauchy",
                                   "Evaluate a characteristic solution on a "
                                   "grid");
  solve->add_option("--config", config_path, "JSON configuration")->required();
  solve->add_option("--problem", problem, "ca1..ca6")->required();
  solve->add_option("--grid", grid_n, "grid points per axis")->required();
  solve->add_option("--out", out_path, "write values as CSV (default stdout)");

  auto* plot = app.add_subcommand("plot", "Render a cloud as a plane scatter");
  plot->add_option("--cloud", cloud_path, "cloud CSV")->required();
  plot->add_option("--plane", plane, "xy, xz, xw, or yz");
  plot->add_option("--out", out_path, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors are exit code 1; --help is 0
  }

  try {
    if (check->parsed()) {
      return elab::tools::cmd_check_structure(load_with_env_seed(config_path),
                                              out_path);
    }
    if (verify->parsed()) {
      return elab::tools::cmd_verify_flat(load_with_env_seed(config_path),
                                          out_path);
    }
    if (sample->parsed()) {
      return elab::tools::cmd_sample(load_with_env_seed(config_path), out_cloud,
                                     out_report, in_cloud);
    }
    if (solve->parsed()) {
      return elab::tools::cmd_solve_cauchy(load_with_env_seed(config_path),
                                           problem, grid_n, out_path);
    }
    if (plot->parsed()) {
      return elab::tools::cmd_plot(cloud_path, plane, out_path);
    }
  } catch (const elab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 1;
}
