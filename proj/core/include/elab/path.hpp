#pragma once

#include <vector>

#include "elab/geometry.hpp"

namespace elab {

// Sample of a horizontal curve: position plus the frame controls (u, v)
// active on [t, t_next). The control columns of the last sample repeat the
// final piece.
struct PathSample {
  double t = 0.0;
  Point q;
  double u = 0.0;
  double v = 0.0;
};

struct SampledPath {
  std::vector<PathSample> samples;
  bool truncated = false;

  double duration() const {
    return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
  }
  const Point& endpoint() const { return samples.back().q; }
};

struct PathSample3 {
  double t = 0.0;
  Point3 q;
  double u = 0.0;
  double v = 0.0;
};

struct SampledPath3 {
  std::vector<PathSample3> samples;
  bool truncated = false;

  const Point3& endpoint() const { return samples.back().q; }
};

}  // namespace elab
