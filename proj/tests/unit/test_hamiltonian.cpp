#include <doctest.h>

#include <cmath>

#include "elab/errors.hpp"
#include "elab/hamiltonian.hpp"
#include "elab/rng.hpp"

using namespace elab;

namespace {

// Fixed-step classical RK4, used as an independent cross-check.
std::array<double, 8> rk4_flow(const HamiltonianSystem& sys,
                               std::array<double, 8> y, double t_final,
                               int steps) {
  double h = t_final / steps;
  for (int s = 0; s < steps; ++s) {
    auto add = [&](const std::array<double, 8>& a,
                   const std::array<double, 8>& k, double w) {
      std::array<double, 8> r;
      for (int i = 0; i < 8; ++i) r[i] = a[i] + w * k[i];
      return r;
    };
    auto k1 = sys.rhs(y);
    auto k2 = sys.rhs(add(y, k1, h / 2));
    auto k3 = sys.rhs(add(y, k2, h / 2));
    auto k4 = sys.rhs(add(y, k3, h));
    for (int i = 0; i < 8; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
  }
  return y;
}

GeodesicArc abnormal_lift_arc(double y0, double z0, double w0, int n = 101) {
  GeodesicArc arc;
  arc.energy0 = -0.5;
  for (int i = 0; i < n; ++i) {
    double t = i / double(n - 1);
    PhasePoint pp{{t, y0, z0 + 0.5 * y0 * t, w0 + 0.5 * y0 * y0 * t},
                  {-1.0, 0.0, 0.0, 0.0}};
    arc.samples.push_back({t, pp});
  }
  return arc;
}

}  // namespace

TEST_SUITE_BEGIN("hamiltonian");

TEST_CASE("Hamiltonian values at reference covectors") {
  FrameStructure f = FrameStructure::flat();
  CHECK(hamiltonian(f, {{}, {-1, 0, 0, 0}}) == -0.5);
  CHECK(hamiltonian(f, {{}, {0, 0, 1, 0}}) == 0.0);
  double phi = 0.8;
  PhasePoint pp{{0, 0, 0.3, -0.7}, {-std::cosh(phi), std::sinh(phi), 0, 0}};
  CHECK(hamiltonian(f, pp) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("flow along the abnormal lift keeps momentum constant") {
  FrameStructure f = FrameStructure::flat();
  GeodesicArc arc = hamiltonian_flow(f, {{}, {-1, 0, 0, 0}}, 1.0);
  const PhasePoint& end = arc.endpoint();
  CHECK(end.q.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(end.q.y) < 1e-12);
  CHECK(std::fabs(end.q.z) < 1e-12);
  CHECK(std::fabs(end.q.w) < 1e-12);
  CHECK(end.p.px == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::fabs(end.p.py) + std::fabs(end.p.pz) + std::fabs(end.p.pw) <
        1e-12);
  CHECK(arc.max_drift < 1e-12);
}

TEST_CASE("hyperbolic covectors generate straight timelike lines") {
  FrameStructure f = FrameStructure::flat();
  double phi = 1.1, s = 0.8, z0 = 0.4, w0 = -0.2;
  PhasePoint pp{{0, 0, z0, w0}, {-std::cosh(phi), std::sinh(phi), 0, 0}};
  GeodesicArc arc = hamiltonian_flow(f, pp, s);
  const PhasePoint& end = arc.endpoint();
  CHECK(end.q.x == doctest::Approx(s * std::cosh(phi)).epsilon(1e-11));
  CHECK(end.q.y == doctest::Approx(s * std::sinh(phi)).epsilon(1e-11));
  CHECK(end.q.z == doctest::Approx(z0).epsilon(1e-12));
  CHECK(end.q.w == doctest::Approx(w0).epsilon(1e-12));
  CHECK(end.p.px == doctest::Approx(-std::cosh(phi)).epsilon(1e-11));
}

TEST_CASE("zero-time flow is the identity") {
  FrameStructure f = FrameStructure::flat();
  PhasePoint pp{{0.1, 0.2, 0.3, 0.4}, {0.5, -0.6, 0.7, -0.8}};
  GeodesicArc arc = hamiltonian_flow(f, pp, 0.0);
  CHECK(arc.samples.size() == 1);
  CHECK(arc.endpoint().q.x == pp.q.x);
  CHECK(arc.max_drift == 0.0);
}

TEST_CASE("adaptive flow agrees with a fixed-step RK4 reference") {
  FrameStructure f = FrameStructure::flat();
  HamiltonianSystem sys(f);
  PhasePoint pp{{0.05, -0.1, 0.2, 0.0}, {-0.9, 0.4, 0.8, -0.3}};
  GeodesicArc arc = hamiltonian_flow(f, pp, 1.0);
  auto ref = rk4_flow(sys, pp.as_array(), 1.0, 20000);
  auto got = arc.endpoint().as_array();
  for (int i = 0; i < 8; ++i) {
    CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-8));
  }
}

TEST_CASE("energy, p_z and p_w are conserved along random geodesics") {
  FrameStructure f = FrameStructure::flat();
  RandomStream rs(67);
  IntegratorConfig cfg;
  for (int i = 0; i < 25; ++i) {
    PhasePoint pp{{0, 0, 0, 0},
                  {rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
                   rs.uniform(-1, 1)}};
    GeodesicArc arc = hamiltonian_flow(f, pp, 1.0, cfg);
    CHECK(arc.max_drift <= 10.0 * cfg.rel_tol * 1.0);
    for (const auto& [t, s] : arc.samples) {
      CHECK(std::fabs(s.p.pz - pp.p.pz) <= cfg.abs_tol);
      CHECK(std::fabs(s.p.pw - pp.p.pw) <= cfg.abs_tol);
    }
  }
}

TEST_CASE("causal character is constant along geodesics") {
  FrameStructure f = FrameStructure::flat();
  HamiltonianSystem sys(f);
  RandomStream rs(71);
  for (int i = 0; i < 15; ++i) {
    PhasePoint pp{{0, 0, 0, 0},
                  {rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
                   rs.uniform(-1, 1)}};
    GeodesicArc arc = hamiltonian_flow(f, pp, 1.0);
    auto [hx0, hy0] = sys.pairings(pp);
    double g0 = -hx0 * hx0 + hy0 * hy0;
    for (const auto& [t, s] : arc.samples) {
      auto [hx, hy] = sys.pairings(s);
      double g = -hx * hx + hy * hy;
      CHECK(std::fabs(g - g0) < 1e-8);
      // Orientation is a causal notion: the sign of g(dq, X) is an
      // invariant only while the curve is nonspacelike.
      if (g0 < -1e-8 && std::fabs(hx0) > 1e-8) {
        CHECK(hx * hx0 > 0.0);
      }
    }
  }
}

TEST_CASE("exponential map homogeneity and semigroup property") {
  FrameStructure f = FrameStructure::flat();
  Covector lam{-0.8, 0.3, 0.5, -0.1};
  Point q0{0.1, -0.2, 0.0, 0.3};

  CHECK(exp_map(f, q0, Covector{}).x == q0.x);

  // gamma(t) = exp(t lambda): endpoint of the flow to time t.
  double t = 0.6;
  Covector scaled{t * lam.px, t * lam.py, t * lam.pz, t * lam.pw};
  Point via_exp = exp_map(f, q0, scaled);
  GeodesicArc arc = hamiltonian_flow(f, {q0, lam}, t);
  CHECK(via_exp.x == doctest::Approx(arc.endpoint().q.x).epsilon(1e-10));
  CHECK(via_exp.y == doctest::Approx(arc.endpoint().q.y).epsilon(1e-10));
  CHECK(via_exp.z == doctest::Approx(arc.endpoint().q.z).epsilon(1e-10));
  CHECK(via_exp.w == doctest::Approx(arc.endpoint().q.w).epsilon(1e-10));

  // Continuing the flow from the midpoint reaches the same endpoint.
  GeodesicArc first = hamiltonian_flow(f, {q0, lam}, 0.25);
  GeodesicArc second = hamiltonian_flow(f, first.endpoint(), 0.35);
  CHECK(second.endpoint().q.x ==
        doctest::Approx(arc.endpoint().q.x).epsilon(1e-9));
  CHECK(second.endpoint().q.w ==
        doctest::Approx(arc.endpoint().q.w).epsilon(1e-9));
}

TEST_CASE("abnormal trajectories") {
  FrameStructure f = FrameStructure::flat();
  SampledPath p = abnormal_trajectory(f, {0.0, 0.7, 0.0, 0.0}, 2.0);
  const Point& end = p.endpoint();
  CHECK(end.x == doctest::Approx(2.0));
  CHECK(end.y == 0.7);
  CHECK(end.z == doctest::Approx(0.5 * 0.7 * 2.0));
  CHECK(end.w == doctest::Approx(0.5 * 0.49 * 2.0));

  SampledPath ray = abnormal_trajectory(f, Point{}, 1.0);
  CHECK(ray.endpoint().x == doctest::Approx(1.0));
  CHECK(ray.endpoint().y == 0.0);

  // Normal-form frames keep {y=0} invariant along X.
  FrameStructure g = FrameStructure::normal_form(
      Poly4::monomial(0.08, {1, 0, 0, 0}), Poly4::monomial(0.05, {0, 1, 0, 0}),
      Poly4::monomial(0.07, {1, 0, 0, 0}));
  SampledPath py0 = abnormal_trajectory(g, {0.0, 0.0, 0.2, -0.1}, 1.0);
  for (const auto& s : py0.samples) {
    CHECK(std::fabs(s.q.y) <= 1e-9);
  }
}

TEST_CASE("lift residual vanishes on the constant-momentum abnormal lift") {
  FrameStructure f = FrameStructure::flat();
  RandomStream rs(83);
  for (int i = 0; i < 10; ++i) {
    GeodesicArc arc = abnormal_lift_arc(rs.uniform(-1, 1), rs.uniform(-1, 1),
                                        rs.uniform(-1, 1));
    CHECK(lift_residual(f, arc) <= 1e-9);
    for (const auto& [t, s] : arc.samples) {
      CHECK(hamiltonian(f, s) == doctest::Approx(-0.5).epsilon(1e-15));
    }
  }
}

TEST_CASE("a wrong momentum is flagged by the residual") {
  FrameStructure f = FrameStructure::flat();
  GeodesicArc arc = abnormal_lift_arc(0.5, 0.2, -0.3);
  for (auto& [t, s] : arc.samples) s.p.py = 0.1;
  CHECK(lift_residual(f, arc) > 0.05);
}

TEST_CASE("zero momentum is degenerate") {
  FrameStructure f = FrameStructure::flat();
  GeodesicArc arc;
  arc.samples = {{0.0, {}}, {0.5, {}}, {1.0, {}}};
  CHECK(std::isinf(lift_residual(f, arc)));
}

TEST_CASE("sub-Lorentzian length of reference controls") {
  SampledPath unit;
  for (int i = 0; i <= 10; ++i) unit.samples.push_back({0.3 * i, {}, 1.0, 0.0});
  CHECK(sub_lorentzian_length(unit) == doctest::Approx(3.0).epsilon(1e-15));

  SampledPath null;
  for (int i = 0; i <= 10; ++i) null.samples.push_back({0.2 * i, {}, 1.0, 1.0});
  CHECK(sub_lorentzian_length(null) == 0.0);

  double phi = 0.9;
  SampledPath hyp;
  for (int i = 0; i <= 4; ++i) {
    hyp.samples.push_back({0.25 * i, {}, std::cosh(phi), std::sinh(phi)});
  }
  CHECK(sub_lorentzian_length(hyp) == doctest::Approx(1.0).epsilon(1e-14));

  SampledPath bad;
  bad.samples = {{0.0, {}, 0.5, 1.0}, {1.0, {}, 0.5, 1.0}};
  CHECK_THROWS_AS(sub_lorentzian_length(bad), NotNonspacelike);
}

TEST_CASE("quadrature length matches a smooth closed form") {
  // Controls (cosh t, sinh t): the integrand is identically 1.
  double len = sub_lorentzian_length(
      [](double t) { return std::make_pair(std::cosh(t), std::sinh(t)); }, 0.0,
      1.0);
  CHECK(len == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("radial bound: equality cases and Monte Carlo") {
  FrameStructure f = FrameStructure::flat();

  // Radial timelike geodesics realize the bound with equality.
  double phi = 0.7;
  SampledPath radial;
  for (int i = 0; i <= 50; ++i) {
    double s = 0.02 * i;
    radial.samples.push_back({s,
                              {s * std::cosh(phi), s * std::sinh(phi), 0.1, 0.2},
                              std::cosh(phi), std::sinh(phi)});
  }
  RadialBound rb = radial_bound_check(f, radial);
  CHECK(rb.ok);
  CHECK(rb.length == doctest::Approx(rb.delta_r1).epsilon(1e-12));

  // The x-axis trajectory has y = 0, so R1 = x and length = duration.
  SampledPath axis;
  for (int i = 0; i <= 10; ++i) {
    axis.samples.push_back({0.1 * i, {1.0 + 0.1 * i, 0, 0, 0}, 1.0, 0.0});
  }
  rb = radial_bound_check(f, axis);
  CHECK(rb.ok);
  CHECK(rb.length == doctest::Approx(rb.delta_r1).epsilon(1e-12));

  // Random nonspacelike paths in S1+ never beat the radial increase.
  RandomStream rs(59);
  for (int trial = 0; trial < 50; ++trial) {
    SampledPath path;
    Point q{0.5, 0.0, 0.0, 0.0};
    double t = 0.0;
    path.samples.push_back({t, q, 1.0, 0.0});
    for (int k = 0; k < 6; ++k) {
      double chi = rs.uniform(-1.5, 1.5);
      double u = std::cosh(chi), v = std::sinh(chi);
      double d = rs.uniform(0.01, 0.1);
      // Flat x, y move linearly; z, w values do not matter for the bound.
      q = Point{q.x + u * d, q.y + v * d, 0.0, 0.0};
      t += d;
      path.samples.back().u = u;
      path.samples.back().v = v;
      path.samples.push_back({t, q, u, v});
    }
    RadialBound b = radial_bound_check(f, path);
    CHECK(b.ok);
  }

  SampledPath outside;
  outside.samples = {{0.0, {0.5, 0, 0, 0}, 1, 0}, {1.0, {0.2, 0.9, 0, 0}, 1, 0}};
  CHECK_THROWS_AS(radial_bound_check(f, outside), RegionViolation);
}

TEST_CASE("arc CSV export carries the full phase") {
  FrameStructure f = FrameStructure::flat();
  GeodesicArc arc = hamiltonian_flow(f, {{}, {-1, 0, 0, 0}}, 0.5);
  std::string csv = arc.to_csv();
  CHECK(csv.rfind("t,x,y,z,w,px,py,pz,pw\n", 0) == 0);
  CHECK(csv.find("-1") != std::string::npos);
}

TEST_SUITE_END();
