#include "elab/hamiltonian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>

#include "elab/errors.hpp"

namespace elab {

HamiltonianSystem::HamiltonianSystem(const FrameStructure& frame)
    : frame_(frame) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      dx_[i][j] = frame_.X().comp[j].derivative(i);
      dy_[i][j] = frame_.Y().comp[j].derivative(i);
    }
  }
}

std::pair<double, double> HamiltonianSystem::pairings(
    const PhasePoint& pp) const {
  auto xv = frame_.X().eval(pp.q);
  auto yv = frame_.Y().eval(pp.q);
  return {pair(pp.p, xv), pair(pp.p, yv)};
}

double HamiltonianSystem::hamiltonian(const PhasePoint& pp) const {
  auto [hx, hy] = pairings(pp);
  return -0.5 * hx * hx + 0.5 * hy * hy;
}

std::array<double, 8> HamiltonianSystem::rhs(
    const std::array<double, 8>& s) const {
  PhasePoint pp = PhasePoint::from_array(s);
  auto a = pp.q.as_array();
  auto pv = pp.p.as_array();

  auto xv = frame_.X().eval(pp.q);
  auto yv = frame_.Y().eval(pp.q);
  double hx = pair(pp.p, xv);
  double hy = pair(pp.p, yv);

  std::array<double, 8> out;
  for (int j = 0; j < 4; ++j) {
    out[j] = -hx * xv[j] + hy * yv[j];
  }
  for (int i = 0; i < 4; ++i) {
    double phx = 0.0, phy = 0.0;  // d hX / d q_i, d hY / d q_i
    for (int j = 0; j < 4; ++j) {
      if (!dx_[i][j].is_zero()) phx += pv[j] * dx_[i][j].eval(a);
      if (!dy_[i][j].is_zero()) phy += pv[j] * dy_[i][j].eval(a);
    }
    out[4 + i] = hx * phx - hy * phy;
  }
  return out;
}

double hamiltonian(const FrameStructure& frame, const PhasePoint& pp) {
  auto xv = frame.X().eval(pp.q);
  auto yv = frame.Y().eval(pp.q);
  double hx = pair(pp.p, xv);
  double hy = pair(pp.p, yv);
  return -0.5 * hx * hx + 0.5 * hy * hy;
}

std::string GeodesicArc::to_csv() const {
  std::string out = "t,x,y,z,w,px,py,pz,pw\n";
  char buf[256];
  for (const auto& [t, pp] : samples) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t,
                  pp.q.x, pp.q.y, pp.q.z, pp.q.w, pp.p.px, pp.p.py, pp.p.pz,
                  pp.p.pw);
    out += buf;
  }
  return out;
}

GeodesicArc hamiltonian_flow(const FrameStructure& frame, const PhasePoint& pp0,
                             double t_final, const IntegratorConfig& cfg) {
  if (!std::isfinite(t_final)) throw std::invalid_argument("t_final not finite");
  if (!pp0.finite()) throw std::invalid_argument("initial phase not finite");

  HamiltonianSystem sys(frame);
  GeodesicArc arc;
  arc.energy0 = sys.hamiltonian(pp0);
  arc.samples.push_back({0.0, pp0});

  if (t_final == 0.0) return arc;

  auto rhs = [&sys](double, const std::array<double, 8>& y) {
    return sys.rhs(y);
  };
  auto solver = make_dopri5<8>(rhs, cfg);
  solver.integrate(0.0, pp0.as_array(), t_final, [&](const auto& rec) {
    PhasePoint pp = PhasePoint::from_array(rec.y1);
    arc.samples.push_back({rec.t1, pp});
    arc.max_drift = std::max(arc.max_drift,
                             std::fabs(sys.hamiltonian(pp) - arc.energy0));
  });
  return arc;
}

Point exp_map(const FrameStructure& frame, const Point& q0,
              const Covector& lambda, const IntegratorConfig& cfg) {
  GeodesicArc arc = hamiltonian_flow(frame, {q0, lambda}, 1.0, cfg);
  return arc.endpoint().q;
}

SampledPath abnormal_trajectory(const FrameStructure& frame, const Point& q0,
                                double t_final, int n_samples,
                                const IntegratorConfig& cfg) {
  SampledPath path;
  if (n_samples < 2) n_samples = 2;

  if (frame.provenance() == Provenance::Flat) {
    for (int i = 0; i < n_samples; ++i) {
      double t = t_final * i / double(n_samples - 1);
      Point q{q0.x + t, q0.y, q0.z + 0.5 * q0.y * t,
              q0.w + 0.5 * q0.y * q0.y * t};
      path.samples.push_back({t, q, 1.0, 0.0});
    }
    return path;
  }

  auto rhs = [&frame](double, const std::array<double, 4>& y) {
    return frame.X().eval(Point::from_array(y));
  };
  auto solver = make_dopri5<4>(rhs, cfg);
  auto y = q0.as_array();
  double t = 0.0;
  path.samples.push_back({t, q0, 1.0, 0.0});
  for (int i = 1; i < n_samples; ++i) {
    double t_next = t_final * i / double(n_samples - 1);
    auto res = solver.integrate(t, y, t_next);
    t = res.t;
    y = res.y;
    path.samples.push_back({t, Point::from_array(y), 1.0, 0.0});
  }
  return path;
}

namespace {

// Finite-difference derivative of the sample sequence at index i.
// Prefers the five-point stencil on uniform spacing, falls back to the
// centered two-sided difference.
std::array<double, 8> fd_derivative(
    const std::vector<std::pair<double, PhasePoint>>& s, std::size_t i) {
  auto at = [&s](std::size_t k) { return s[k].second.as_array(); };
  double h1 = s[i].first - s[i - 1].first;
  double h2 = s[i + 1].first - s[i].first;
  bool uniform_5 = i >= 2 && i + 2 < s.size();
  if (uniform_5) {
    double hm = s[i - 1].first - s[i - 2].first;
    double hp = s[i + 2].first - s[i + 1].first;
    double h = h2;
    uniform_5 = std::fabs(h1 - h) < 1e-9 * std::max(1.0, h) &&
                std::fabs(hm - h) < 1e-9 * std::max(1.0, h) &&
                std::fabs(hp - h) < 1e-9 * std::max(1.0, h);
    if (uniform_5) {
      std::array<double, 8> d;
      auto m2 = at(i - 2), m1 = at(i - 1), p1 = at(i + 1), p2 = at(i + 2);
      for (int c = 0; c < 8; ++c) {
        d[c] = (m2[c] - 8.0 * m1[c] + 8.0 * p1[c] - p2[c]) / (12.0 * h);
      }
      return d;
    }
  }
  std::array<double, 8> d;
  auto m1 = at(i - 1), p1 = at(i + 1);
  for (int c = 0; c < 8; ++c) d[c] = (p1[c] - m1[c]) / (h1 + h2);
  return d;
}

}  // namespace

double lift_residual(const FrameStructure& frame, const GeodesicArc& curve) {
  const auto& s = curve.samples;
  if (s.size() < 2) throw std::invalid_argument("need at least 2 samples");

  HamiltonianSystem sys(frame);
  double worst = 0.0;

  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const PhasePoint& pp = s[i].second;
    auto pn = pp.p.as_array();
    double pnorm = std::sqrt(pn[0] * pn[0] + pn[1] * pn[1] + pn[2] * pn[2] +
                             pn[3] * pn[3]);
    if (pnorm == 0.0) return std::numeric_limits<double>::infinity();
    if (i == 0) continue;  // no centered difference at the ends

    auto dot = fd_derivative(s, i);

    // Hamilton defect.
    auto want = sys.rhs(pp.as_array());
    double ham = 0.0;
    for (int c = 0; c < 8; ++c) ham = std::max(ham, std::fabs(dot[c] - want[c]));

    // Pairing defect: frame coefficients of dq by least squares, then
    // g(dq, X) = -u against hX and g(dq, Y) = v against hY.
    auto xv = frame.X().eval(pp.q);
    auto yv = frame.Y().eval(pp.q);
    Eigen::Matrix<double, 4, 2> m;
    Eigen::Vector4d b;
    for (int c = 0; c < 4; ++c) {
      m(c, 0) = xv[c];
      m(c, 1) = yv[c];
      b(c) = dot[c];
    }
    Eigen::Vector2d uv =
        m.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(b);
    auto [hx, hy] = sys.pairings(pp);
    double il = std::fabs(-uv(0) - hx) + std::fabs(uv(1) - hy);

    worst = std::max(worst, ham + il);
  }
  return worst;
}

namespace {

double piece_speed(double u, double v, double tol) {
  if (u < std::fabs(v) - tol) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "control (%.6g, %.6g) is spacelike", u, v);
    throw NotNonspacelike(buf);
  }
  return std::sqrt(std::max(u * u - v * v, 0.0));
}

double simpson(const std::function<std::pair<double, double>(double)>& c,
               double a, double b, double fa, double fm, double fb,
               double tol, int depth, double tol_floor) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  auto speed = [&c, tol_floor](double t) {
    auto [u, v] = c(t);
    return piece_speed(u, v, tol_floor);
  };
  double flm = speed(lm), frm = speed(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(c, a, m, fa, flm, fm, 0.5 * tol, depth - 1, tol_floor) +
         simpson(c, m, b, fm, frm, fb, 0.5 * tol, depth - 1, tol_floor);
}

}  // namespace

double sub_lorentzian_length(const SampledPath& path, double tol) {
  const auto& s = path.samples;
  if (s.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    double dt = s[i + 1].t - s[i].t;
    total += dt * piece_speed(s[i].u, s[i].v, tol);
  }
  return total;
}

double sub_lorentzian_length(
    const std::function<std::pair<double, double>(double)>& controls,
    double t0, double t1, double quad_tol) {
  auto speed = [&controls](double t) {
    auto [u, v] = controls(t);
    return piece_speed(u, v, 1e-12);
  };
  double fa = speed(t0), fb = speed(t1), fm = speed(0.5 * (t0 + t1));
  return simpson(controls, t0, t1, fa, fm, fb, quad_tol, 40, 1e-12);
}

RadialBound radial_bound_check(const FrameStructure& frame,
                               const SampledPath& path, double tol) {
  if (frame.provenance() != Provenance::Flat) {
    throw Error("radial bound check is stated for the flat frame");
  }
  const auto& s = path.samples;
  if (s.size() < 2) throw std::invalid_argument("need at least 2 samples");

  constexpr double kEdge = 1e-12;
  for (const auto& ps : s) {
    if (ps.q.x < -kEdge || ps.q.x - std::fabs(ps.q.y) < -kEdge) {
      throw RegionViolation("sample " + format_point(ps.q) +
                            " left the closure of S1+");
    }
  }
  auto r1 = [](const Point& q) {
    return std::sqrt(std::max(q.x * q.x - q.y * q.y, 0.0));
  };

  RadialBound out;
  out.length = sub_lorentzian_length(path);
  out.delta_r1 = r1(s.back().q) - r1(s.front().q);
  out.ok = out.length <= out.delta_r1 + tol;
  return out;
}

}  // namespace elab
