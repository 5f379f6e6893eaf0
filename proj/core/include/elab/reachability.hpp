#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elab/barriers.hpp"
#include "elab/frame.hpp"
#include "elab/integrator.hpp"
#include "elab/path.hpp"
#include "elab/report.hpp"

namespace elab {

struct ControlPiece {
  double duration = 0.0;
  double u = 1.0;
  double v = 0.0;
};

// Piecewise-constant nonspacelike future-directed control schedule from a
// start point: every piece has duration > 0, u > 0 and u >= |v|.
class ControlPath {
 public:
  ControlPath(Point start, std::vector<ControlPiece> pieces);

  const Point& start() const { return start_; }
  const std::vector<ControlPiece>& pieces() const { return pieces_; }
  double total_duration() const;

 private:
  Point start_;
  std::vector<ControlPiece> pieces_;
};

enum class SampleStrategy { UniformHyperbolic, BangBang, Mixed };

struct SamplerConfig {
  long n_paths = 1000;
  int pieces_per_path = 3;
  double horizon = 1.0;
  SampleStrategy strategy = SampleStrategy::Mixed;
  double chi_max = 3.0;  // timelike draws use (cosh chi, sinh chi)
  Box4 box{{0.0, 1.2}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  Point start{};
};

struct CloudPoint {
  long path_id = 0;
  Point q;
  double length = 0.0;
  bool truncated = false;
};

struct ReachCloud {
  std::uint64_t seed = 0;
  std::string frame_id;
  Box4 box;
  std::vector<CloudPoint> endpoints;

  std::string to_csv() const;
  static ReachCloud from_csv(const std::string& text, std::uint64_t seed,
                             const std::string& frame_id, const Box4& box);
};

struct CloudPoint3 {
  long path_id = 0;
  Point3 q;
  double length = 0.0;
  bool truncated = false;
};

struct ReachCloud3 {
  std::uint64_t seed = 0;
  std::vector<CloudPoint3> endpoints;
};

// Integrates dq = u X(q) + v Y(q) piece by piece. The curve is truncated
// (and flagged) at the first box exit; the exit point is kept as the final
// sample.
SampledPath integrate_path(const FrameStructure& frame, const ControlPath& cp,
                           const IntegratorConfig& cfg = {},
                           const Box4& box = Box4{});

// Same control schedule driving the projected frame on (x, y, w).
SampledPath3 integrate_path3(const MartinetFrame& frame, const ControlPath& cp,
                             const IntegratorConfig& cfg = {},
                             const Box4& box = Box4{});

// The control draws behind a cloud; deterministic in (config, seed) with
// one independent substream per path.
std::vector<ControlPath> draw_control_paths(const SamplerConfig& sc,
                                            std::uint64_t seed);

ReachCloud sample_reachable(const FrameStructure& frame,
                            const SamplerConfig& sc, std::uint64_t seed,
                            const IntegratorConfig& cfg = {});

// Matched 3-space cloud: identical control draws, projected dynamics.
ReachCloud3 sample_reachable_martinet(const FrameStructure& frame,
                                      const SamplerConfig& sc,
                                      std::uint64_t seed,
                                      const IntegratorConfig& cfg = {});

struct InclusionViolation {
  long path_id = 0;
  Point q;
  std::string detail;
};

// Every endpoint must lie in the union of the eight flat cells.
CheckResult inclusion_check_flat(const ReachCloud& cloud, double slack,
                                 std::vector<InclusionViolation>* out = nullptr);

// Every endpoint must lie in {f1<=0, x>=0, z>=0} u {f2<=0, x>=0, z<=0}.
CheckResult inclusion_check_weak(const ReachCloud& cloud,
                                 const FrameStructure& frame, double slack,
                                 const IntegratorConfig& cfg = {},
                                 std::vector<InclusionViolation>* out = nullptr);

struct AbnormalProbe {
  double min_w = 0.0;
  double bound = 0.0;
  long n_in_slab = 0;
  bool empty = false;
  bool ok = false;
};

// One-sided obstruction placing the abnormal ray on the reachable-set
// boundary: endpoints with |y| <= delta and 0 <= x <= x_max must satisfy
// w >= -(x_max delta^2 + delta^3)/4 - slack. An empty slab is a warning,
// not a failure.
AbnormalProbe abnormal_boundary_probe(const ReachCloud& cloud, double delta,
                                      double x_max = 1.0, double slack = 1e-7);
CheckResult abnormal_probe_check(const AbnormalProbe& probe);

// f1 and g1 vanish identically along the (X+Y) ray {y=x, z=w=0}; f2 and g2
// along the (X-Y) ray. Checks both rays inside the cloud's box.
CheckResult null_ray_audit(const ReachCloud& cloud);

// Matched-seed four-dimensional and Martinet clouds must agree under
// drop-z. Throws SeedMismatch.
CheckResult projection_consistency(const ReachCloud& cloud4,
                                   const ReachCloud3& cloud3,
                                   double tol = 1e-8);

// Unique horizontal curve over path3 with z(0) = z0: re-integrates the
// frame with path3's piecewise-constant controls, so the z row
// dz = y(1+psi1)/2 u - x(1+psi1)/2 v is driven along the given curve.
// Sample times match path3.
SampledPath lift_curve(const FrameStructure& frame, const SampledPath3& path3,
                       double z0, const IntegratorConfig& cfg = {});

}  // namespace elab
