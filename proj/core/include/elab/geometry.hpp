#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "elab/errors.hpp"

namespace elab {

// A point of the base 4-space in coordinates (x, y, z, w).
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;

  std::array<double, 4> as_array() const { return {x, y, z, w}; }
  static Point from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
           std::isfinite(w);
  }
};

// A cotangent vector with components dual to (x, y, z, w).
struct Covector {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
  double pw = 0.0;

  std::array<double, 4> as_array() const { return {px, py, pz, pw}; }
  static Covector from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
  bool finite() const {
    return std::isfinite(px) && std::isfinite(py) && std::isfinite(pz) &&
           std::isfinite(pw);
  }
};

inline double pair(const Covector& p, const std::array<double, 4>& v) {
  return p.px * v[0] + p.py * v[1] + p.pz * v[2] + p.pw * v[3];
}

// Point and momentum together, a coordinate chart on T*R^4.
struct PhasePoint {
  Point q;
  Covector p;

  std::array<double, 8> as_array() const {
    return {q.x, q.y, q.z, q.w, p.px, p.py, p.pz, p.pw};
  }
  static PhasePoint from_array(const std::array<double, 8>& a) {
    return {{a[0], a[1], a[2], a[3]}, {a[4], a[5], a[6], a[7]}};
  }
  bool finite() const { return q.finite() && p.finite(); }
};

// A point of the Martinet quotient space in coordinates (x, y, w).
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;

  std::array<double, 3> as_array() const { return {x, y, w}; }
  static Point3 from_array(const std::array<double, 3>& a) {
    return {a[0], a[1], a[2]};
  }
};

inline Point3 drop_z(const Point& q) { return {q.x, q.y, q.w}; }

// Axis-aligned box in (x, y, z, w); infinities allowed on any side.
struct Box4 {
  std::array<double, 2> x{-std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
  std::array<double, 2> y{-std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
  std::array<double, 2> z{-std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
  std::array<double, 2> w{-std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};

  bool contains(const Point& q, double tol = 0.0) const {
    return q.x >= x[0] - tol && q.x <= x[1] + tol && q.y >= y[0] - tol &&
           q.y <= y[1] + tol && q.z >= z[0] - tol && q.z <= z[1] + tol &&
           q.w >= w[0] - tol && q.w <= w[1] + tol;
  }

  // Signed margin to the boundary: positive inside, negative outside.
  double margin(const Point& q) const {
    double m = std::numeric_limits<double>::infinity();
    m = std::min(m, q.x - x[0]);
    m = std::min(m, x[1] - q.x);
    m = std::min(m, q.y - y[0]);
    m = std::min(m, y[1] - q.y);
    m = std::min(m, q.z - z[0]);
    m = std::min(m, z[1] - q.z);
    m = std::min(m, q.w - w[0]);
    m = std::min(m, w[1] - q.w);
    return m;
  }

  Box4 with_unbounded_z() const {
    Box4 b = *this;
    b.z = {-std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
    return b;
  }
};

std::string format_point(const Point& q);

}  // namespace elab
