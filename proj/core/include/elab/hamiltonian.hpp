#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "elab/frame.hpp"
#include "elab/integrator.hpp"
#include "elab/path.hpp"

namespace elab {

// Geodesic Hamiltonian machinery for a fixed frame. Momentum pairings
// hX = <p, X(q)> and hY = <p, Y(q)> drive everything:
//   H(q, p) = -hX^2/2 + hY^2/2,
// and the geodesic's frame controls are (u, v) = (-hX, hY). Position
// derivatives of the pairings are exact polynomial evaluations.
class HamiltonianSystem {
 public:
  explicit HamiltonianSystem(const FrameStructure& frame);

  double hamiltonian(const PhasePoint& pp) const;
  // (hX, hY) at the phase point.
  std::pair<double, double> pairings(const PhasePoint& pp) const;
  std::array<double, 8> rhs(const std::array<double, 8>& state) const;

  const FrameStructure& frame() const { return frame_; }

 private:
  FrameStructure frame_;
  std::array<std::array<Poly4, 4>, 4> dx_;  // dx_[i][j] = d X_j / d q_i
  std::array<std::array<Poly4, 4>, 4> dy_;
};

double hamiltonian(const FrameStructure& frame, const PhasePoint& pp);

// Integral curve of the Hamiltonian vector field, sampled at the accepted
// steps of the adaptive integrator (cap cfg.max_step for denser output).
struct GeodesicArc {
  std::vector<std::pair<double, PhasePoint>> samples;
  double energy0 = 0.0;
  double max_drift = 0.0;

  const PhasePoint& endpoint() const { return samples.back().second; }
  std::string to_csv() const;
};

GeodesicArc hamiltonian_flow(const FrameStructure& frame, const PhasePoint& pp0,
                             double t_final, const IntegratorConfig& cfg = {});

// exp_q0(lambda): position after flowing the lift (q0, lambda) to time 1.
Point exp_map(const FrameStructure& frame, const Point& q0,
              const Covector& lambda, const IntegratorConfig& cfg = {});

// Trajectory of X from q0 (the abnormal curve through q0): closed form for
// the flat frame, integrated otherwise. Controls are (1, 0).
SampledPath abnormal_trajectory(const FrameStructure& frame, const Point& q0,
                                double t_final, int n_samples = 101,
                                const IntegratorConfig& cfg = {});

// Worst defect of Hamilton's equations along the given sampled phase curve
// (finite-difference time derivatives against the Hamiltonian vector
// field), plus the pairing defect |g(dq, X) - hX| + |g(dq, Y) - hY|.
// Returns +infinity when the momentum vanishes at a sample.
double lift_residual(const FrameStructure& frame, const GeodesicArc& curve);

// Integral of sqrt(u^2 - v^2) over the path's piecewise-constant controls.
// Throws NotNonspacelike when u < |v| beyond tolerance at a sample.
double sub_lorentzian_length(const SampledPath& path, double tol = 1e-12);

// Same for continuously sampled controls, by adaptive Simpson quadrature.
double sub_lorentzian_length(
    const std::function<std::pair<double, double>(double)>& controls,
    double t0, double t1, double quad_tol = 1e-10);

struct RadialBound {
  double length = 0.0;
  double delta_r1 = 0.0;
  bool ok = false;
};

// Testable consequence of the radial maximizer property in S1+ = {|y| < x}:
// the sub-Lorentzian length of a nonspacelike future-directed path cannot
// exceed the increase of R1 = sqrt(x^2 - y^2). Samples may touch the
// closure of S1+; anything beyond throws RegionViolation. Flat frame only.
RadialBound radial_bound_check(const FrameStructure& frame,
                               const SampledPath& path, double tol = 1e-6);

}  // namespace elab
