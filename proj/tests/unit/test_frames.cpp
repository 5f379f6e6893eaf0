#include <doctest.h>

#include <cmath>

#include "elab/errors.hpp"
#include "elab/frame.hpp"
#include "elab/reachability.hpp"
#include "elab/rng.hpp"
#include "elab/scalar_field.hpp"

using namespace elab;

namespace {

Poly4 mono(double c, int ex, int ey, int ez, int ew) {
  return Poly4::monomial(c, {ex, ey, ez, ew});
}

}  // namespace

TEST_SUITE_BEGIN("frames");

TEST_CASE("flat frame has the expected polynomial components") {
  FrameStructure f = FrameStructure::flat();
  CHECK(f.provenance() == Provenance::Flat);
  CHECK(f.X().comp[0] == Poly4(1.0));
  CHECK(f.X().comp[1].is_zero());
  CHECK(f.X().comp[2] == mono(0.5, 0, 1, 0, 0));
  CHECK(f.X().comp[3] == mono(0.5, 0, 2, 0, 0));
  CHECK(f.Y().comp[0].is_zero());
  CHECK(f.Y().comp[1] == Poly4(1.0));
  CHECK(f.Y().comp[2] == mono(-0.5, 1, 0, 0, 0));
  CHECK(f.Y().comp[3] == mono(-0.5, 1, 1, 0, 0));

  auto x0 = f.X().eval(Point{});
  CHECK(x0 == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("zero perturbation reproduces the flat frame") {
  FrameStructure f = FrameStructure::normal_form(Poly4{}, Poly4{}, Poly4{});
  CHECK(f.X() == FrameStructure::flat().X());
  CHECK(f.Y() == FrameStructure::flat().Y());
  CHECK(f.provenance() == Provenance::Flat);
}

TEST_CASE("forbidden coefficient monomials are rejected") {
  CHECK_THROWS_AS(
      FrameStructure::normal_form(Poly4{}, Poly4::variable(2), Poly4{}),
      ConstraintViolation);
  CHECK_THROWS_AS(
      FrameStructure::normal_form(Poly4{}, Poly4{}, Poly4::variable(3)),
      ConstraintViolation);
  // psi1 may depend on z through a mixed term.
  CHECK_NOTHROW(FrameStructure::normal_form(
      Poly4{}, Poly4::variable(0) * Poly4::variable(2), Poly4{}));
}

TEST_CASE("psi2 = x scales the w row of X by (1 + x)") {
  FrameStructure f =
      FrameStructure::normal_form(Poly4{}, Poly4{}, Poly4::variable(0));
  Poly4 expected = mono(0.5, 0, 2, 0, 0) + mono(0.5, 1, 2, 0, 0);
  CHECK(f.X().comp[3] == expected);
}

TEST_CASE("metric is the orthonormal pairing of frame coefficients") {
  Point q{0.3, -0.2, 0.1, 0.9};
  CHECK(metric({q, 1.0, 0.0}, {q, 1.0, 0.0}) == -1.0);
  CHECK(metric({q, 1.0, 1.0}, {q, 1.0, 1.0}) == 0.0);
  CHECK(metric({q, 1.0, 0.0}, {q, 0.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(metric({q, 1.0, 0.0}, {Point{}, 1.0, 0.0}),
                  BasePointMismatch);
}

TEST_CASE("causal classification") {
  Point q{};
  CHECK(classify({q, 1.0, 0.0}) ==
        CausalClass{CausalKind::Timelike, Orientation::Future});
  CHECK(classify({q, 1.0, 1.0}) ==
        CausalClass{CausalKind::Null, Orientation::Future});
  CHECK(classify({q, 0.0, 1.0}) ==
        CausalClass{CausalKind::Spacelike, Orientation::None});
  CHECK(classify({q, 0.0, 0.0}) ==
        CausalClass{CausalKind::Zero, Orientation::None});
  CHECK(classify({q, -2.0, 1.0}) ==
        CausalClass{CausalKind::Timelike, Orientation::Past});
}

TEST_CASE("classification is scale covariant") {
  RandomStream rs(5);
  Point q{};
  for (int i = 0; i < 100; ++i) {
    HorizontalVector v{q, rs.uniform(-2, 2), rs.uniform(-2, 2)};
    CausalClass c = classify(v);
    double s = rs.uniform(0.1, 3.0);
    CHECK(classify({q, s * v.u, s * v.v}) == c);
    CausalClass flipped = classify({q, -s * v.u, -s * v.v});
    CHECK(flipped.kind == c.kind);
    if (c.kind == CausalKind::Timelike || c.kind == CausalKind::Null) {
      CHECK(flipped.orientation != c.orientation);
    }
  }
}

TEST_CASE("flat bracket identities hold exactly") {
  FrameStructure f = FrameStructure::flat();
  VectorField xy = lie_bracket(f.X(), f.Y());
  CHECK(xy.comp[0].is_zero());
  CHECK(xy.comp[1].is_zero());
  CHECK(xy.comp[2] == Poly4(-1.0));
  CHECK(xy.comp[3] == mono(-1.5, 0, 1, 0, 0));

  CHECK(lie_bracket(f.X(), xy).is_zero());

  VectorField yxy = lie_bracket(f.Y(), xy);
  CHECK(yxy.comp[0].is_zero());
  CHECK(yxy.comp[1].is_zero());
  CHECK(yxy.comp[2].is_zero());
  CHECK(yxy.comp[3] == Poly4(-1.5));
}

TEST_CASE("bracket is antisymmetric, bilinear, and satisfies Jacobi") {
  FrameStructure f = FrameStructure::flat();
  const VectorField& a = f.X();
  const VectorField& b = f.Y();
  VectorField c = lie_bracket(a, b);

  CHECK(lie_bracket(b, a) == -1.0 * c);
  CHECK(lie_bracket(a + b, c) == lie_bracket(a, c) + lie_bracket(b, c));
  CHECK(lie_bracket(2.5 * a, b) == 2.5 * c);

  VectorField jacobi = lie_bracket(a, lie_bracket(b, c)) +
                       lie_bracket(b, lie_bracket(c, a)) +
                       lie_bracket(c, lie_bracket(a, b));
  CHECK(jacobi.is_zero());
}

TEST_CASE("growth vector of the flat frame is (2,3,4) everywhere") {
  FrameStructure f = FrameStructure::flat();
  RandomStream rs(11);
  for (int i = 0; i < 20; ++i) {
    Point q{rs.uniform(-5, 5), rs.uniform(-5, 5), rs.uniform(-5, 5),
            rs.uniform(-5, 5)};
    CHECK(growth_vector(f, q) == std::array<int, 3>{2, 3, 4});
  }
}

TEST_CASE("abelian frame has growth (2,2,2)") {
  CHECK(growth_vector(abelian_frame(), Point{}) == std::array<int, 3>{2, 2, 2});
}

TEST_CASE("dependent frame fields raise DegenerateFrame") {
  FrameStructure f = FrameStructure::flat();
  FrameStructure bad = FrameStructure::custom(f.X(), f.X());
  CHECK_THROWS_AS(growth_vector(bad, Point{}), DegenerateFrame);
  CHECK_THROWS_AS(growth_vector(f, Point{}, -1.0), std::invalid_argument);
}

TEST_CASE("small normal-form perturbations stay Engel on the unit box") {
  RandomStream rs(23);
  for (int trial = 0; trial < 10; ++trial) {
    // Random admissible low-degree coefficients below 0.1.
    auto coef = [&rs]() { return rs.uniform(-0.1, 0.1); };
    Poly4 phi = mono(coef(), rs.index(2), rs.index(2), rs.index(2), 0);
    Poly4 psi1 = mono(coef(), 1, rs.index(2), 0, rs.index(2));
    Poly4 psi2 = mono(coef(), rs.index(2), 1, 0, 0);
    FrameStructure f = FrameStructure::normal_form(phi, psi1, psi2);
    for (int i = 0; i < 20; ++i) {
      Point q{rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
              rs.uniform(-1, 1)};
      CHECK(growth_vector(f, q) == std::array<int, 3>{2, 3, 4});
    }
  }
}

TEST_CASE("the flat frame decomposes with f = 0 (Hamiltonian type friendly)") {
  FrameStructure f = FrameStructure::flat();
  auto probe = hamiltonian_type_probe(f.X(), f.Y(), Point{0.3, 0.1, 0.0, 0.0});
  CHECK(probe.decomposable);
  CHECK(probe.f == 0.0);
  CHECK(probe.g == 0.0);
  CHECK(probe.h == 0.0);
}

TEST_CASE("strictly abnormal fixture satisfies [V,[V,W]] = V exactly") {
  FrameStructure f = strictly_abnormal_frame();
  VectorField vw = lie_bracket(f.X(), f.Y());
  VectorField vvw = lie_bracket(f.X(), vw);
  CHECK(vvw == f.X());  // exact polynomial identity, so f = 1, g = h = 0

  RandomStream rs(3);
  for (int i = 0; i < 10; ++i) {
    Point q{rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
            rs.uniform(-1, 1)};
    auto probe = hamiltonian_type_probe(f.X(), f.Y(), q);
    CHECK(probe.decomposable);
    CHECK(probe.f == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(probe.g) < 1e-9);
    CHECK(std::fabs(probe.h) < 1e-9);
  }
}

TEST_CASE("probe requires an independent quadruple") {
  FrameStructure f = FrameStructure::flat();
  CHECK_THROWS_AS(hamiltonian_type_probe(f.X(), f.X(), Point{}), BasisFailure);
}

TEST_CASE("Martinet projection of the flat frame") {
  MartinetFrame m = martinet_projection(FrameStructure::flat());
  CHECK(m.X.comp[0] == Poly4(1.0));
  CHECK(m.X.comp[1].is_zero());
  CHECK(m.X.comp[2].is_zero());
  CHECK(m.X.comp[3] == mono(0.5, 0, 2, 0, 0));
  CHECK(m.Y.comp[1] == Poly4(1.0));
  CHECK(m.Y.comp[3] == mono(-0.5, 1, 1, 0, 0));
}

TEST_CASE("projection drops the z component pointwise") {
  FrameStructure f = FrameStructure::normal_form(
      Poly4::variable(0), Poly4{}, 0.5 * Poly4::variable(1));
  MartinetFrame m = martinet_projection(f);
  RandomStream rs(7);
  for (int i = 0; i < 20; ++i) {
    Point q{rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
            rs.uniform(-1, 1)};
    auto full = f.X().eval(q);
    auto proj = m.eval_x(drop_z(q));
    CHECK(proj[0] == doctest::Approx(full[0]).epsilon(1e-15));
    CHECK(proj[1] == doctest::Approx(full[1]).epsilon(1e-15));
    CHECK(proj[2] == doctest::Approx(full[3]).epsilon(1e-15));
  }
}

TEST_CASE("z-dependent coefficients block the projection") {
  FrameStructure f =
      FrameStructure::normal_form(Poly4::variable(2), Poly4{}, Poly4{});
  CHECK_THROWS_AS(martinet_projection(f), ZDependence);
  FrameStructure g = FrameStructure::normal_form(
      Poly4{}, Poly4{}, Poly4::variable(0) * Poly4::variable(2));
  CHECK_THROWS_AS(martinet_projection(g), ZDependence);
}

TEST_CASE("hyperbolic radial coordinates") {
  auto h = hyperbolic_radius(Point{2.0, 1.0, 0.0, 0.0});
  CHECK(h.region == HyperbolicRegion::S1plus);
  CHECK(h.r1.value() == doctest::Approx(std::sqrt(3.0)));
  CHECK_FALSE(h.r2.has_value());

  h = hyperbolic_radius(Point{-2.0, 1.0, 0.0, 0.0});
  CHECK(h.region == HyperbolicRegion::S1minus);
  CHECK(h.r1.value() == doctest::Approx(-std::sqrt(3.0)));

  h = hyperbolic_radius(Point{0.5, -1.0, 0.0, 0.0});
  CHECK(h.region == HyperbolicRegion::S2minus);
  CHECK(h.r2.value() == doctest::Approx(-std::sqrt(0.75)));

  h = hyperbolic_radius(Point{1.0, 1.0, 0.0, 0.0});
  CHECK(h.region == HyperbolicRegion::Cone);
  CHECK_FALSE(h.r1.has_value());
}

TEST_CASE("horizontal gradient of closed forms") {
  FrameStructure f = FrameStructure::flat();
  // grad f1 = (x - y)/2 (X - Y)
  auto g = horizontal_gradient(f, ScalarField::closed_form(FlatBarrier::F1),
                               Point{1.0, 0.5, 0.0, 0.0});
  CHECK(g.u == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.v == doctest::Approx(-0.25).epsilon(1e-15));

  // grad g3 = 3/4 y^2 (X + Y)
  auto g3 = horizontal_gradient(f, ScalarField::closed_form(FlatBarrier::G3),
                                Point{0.2, -0.4, 0.7, 0.1});
  CHECK(g3.u == doctest::Approx(0.75 * 0.16).epsilon(1e-15));
  CHECK(g3.v == doctest::Approx(0.75 * 0.16).epsilon(1e-15));

  auto zero = horizontal_gradient(
      f, ScalarField::polynomial(Poly4(3.0), Generator::XminusY), Point{});
  CHECK(zero.u == 0.0);
  CHECK(zero.v == 0.0);
}

TEST_CASE("gradient satisfies the defining pairing identity") {
  // The directional derivative of f along a horizontal vector equals the
  // metric pairing with the horizontal gradient; the derivative is taken
  // by an independent five-point stencil along a straight line.
  FrameStructure fr = FrameStructure::flat();
  RandomStream rs(29);
  for (FlatBarrier which :
       {FlatBarrier::F1, FlatBarrier::G1, FlatBarrier::G3}) {
    ScalarField field = ScalarField::closed_form(which);
    for (int i = 0; i < 10; ++i) {
      Point q{rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
              rs.uniform(-1, 1)};
      double a = rs.uniform(-1, 1), b = rs.uniform(-1, 1);
      auto xv = fr.X().eval(q);
      auto yv = fr.Y().eval(q);
      std::array<double, 4> dir;
      for (int k = 0; k < 4; ++k) dir[k] = a * xv[k] + b * yv[k];

      const double h = 1e-3;
      auto shift = [&](double s) {
        return field.eval(Point{q.x + s * dir[0], q.y + s * dir[1],
                                q.z + s * dir[2], q.w + s * dir[3]});
      };
      double fd = (shift(-2 * h) - 8 * shift(-h) + 8 * shift(h) -
                   shift(2 * h)) /
                  (12 * h);

      HorizontalVector grad = horizontal_gradient(fr, field, q);
      double paired = metric(grad, {q, a, b});
      CHECK(fd == doctest::Approx(paired).epsilon(1e-9));
    }
  }
}

TEST_CASE("lift of projected trajectories") {
  FrameStructure f = FrameStructure::flat();
  MartinetFrame m = martinet_projection(f);

  // Trajectory of the projected X from the origin lifts to the x-axis.
  ControlPath cpx(Point{}, {{1.0, 1.0, 0.0}});
  SampledPath3 p3 = integrate_path3(m, cpx);
  SampledPath lifted = lift_curve(f, p3, 0.0);
  const Point& end = lifted.endpoint();
  CHECK(end.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(end.y) < 1e-12);
  CHECK(std::fabs(end.z) < 1e-12);
  CHECK(std::fabs(end.w) < 1e-12);

  // The (X + Y) trajectory lifts with z identically zero: dz is driven by
  // (y - x)/2 which vanishes along y = x.
  ControlPath cpn(Point{}, {{1.0, 1.0, 1.0}});
  SampledPath3 p3n = integrate_path3(m, cpn);
  SampledPath liftedn = lift_curve(f, p3n, 0.0);
  const Point& endn = liftedn.endpoint();
  CHECK(endn.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(endn.y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(endn.z) < 1e-11);
  CHECK(std::fabs(endn.w) < 1e-11);
}

TEST_CASE("lift then project is the identity on samples") {
  FrameStructure f = FrameStructure::normal_form(
      mono(0.05, 1, 0, 0, 0), Poly4{}, mono(0.05, 1, 0, 0, 0));
  MartinetFrame m = martinet_projection(f);
  RandomStream rs(41);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ControlPiece> pieces;
    for (int k = 0; k < 3; ++k) {
      double chi = rs.uniform(-1.0, 1.0);
      pieces.push_back({rs.uniform(0.05, 0.3), std::cosh(chi), std::sinh(chi)});
    }
    ControlPath cp(Point{}, pieces);
    SampledPath3 p3 = integrate_path3(m, cp);
    SampledPath lifted = lift_curve(f, p3, 0.25);
    REQUIRE(lifted.samples.size() == p3.samples.size());
    CHECK(lifted.samples.front().q.z == 0.25);
    for (std::size_t i = 0; i < p3.samples.size(); ++i) {
      const Point& q4 = lifted.samples[i].q;
      const Point3& q3 = p3.samples[i].q;
      CHECK(std::fabs(q4.x - q3.x) < 1e-9);
      CHECK(std::fabs(q4.y - q3.y) < 1e-9);
      CHECK(std::fabs(q4.w - q3.w) < 1e-9);
      // Frame coefficients are carried over unchanged.
      CHECK(lifted.samples[i].u == p3.samples[i].u);
      CHECK(lifted.samples[i].v == p3.samples[i].v);
    }
  }
}

TEST_SUITE_END();
