#include "elab/scalar_field.hpp"

#include <cmath>

#include "elab/errors.hpp"

namespace elab {

namespace {

struct SpecRow {
  Generator gen;
  Surface surf;
  Datum datum;
  FlatBarrier flat;
};

// The six admissible combinations, in Cauchy-problem order.
constexpr SpecRow kSpecTable[6] = {
    {Generator::XminusY, Surface::Gamma1, Datum::PlusZ, FlatBarrier::F1},
    {Generator::XplusY, Surface::Gamma2, Datum::MinusZ, FlatBarrier::F2},
    {Generator::XminusY, Surface::Gamma1, Datum::PlusW, FlatBarrier::G1},
    {Generator::XplusY, Surface::Gamma2, Datum::PlusW, FlatBarrier::G2},
    {Generator::XplusY, Surface::Y0, Datum::MinusW, FlatBarrier::G3},
    {Generator::XminusY, Surface::Y0, Datum::MinusW, FlatBarrier::G4},
};

int find_spec(Generator g, Surface s, Datum d) {
  for (int i = 0; i < 6; ++i) {
    const SpecRow& r = kSpecTable[i];
    if (r.gen == g && r.surf == s && r.datum == d) return i + 1;
  }
  return 0;
}

Poly4 make_f1() {
  // z - (x^2 - y^2)/4
  return Poly4::variable(2) - Poly4::monomial(0.25, {2, 0, 0, 0}) +
         Poly4::monomial(0.25, {0, 2, 0, 0});
}
Poly4 make_f2() {
  return -Poly4::variable(2) - Poly4::monomial(0.25, {2, 0, 0, 0}) +
         Poly4::monomial(0.25, {0, 2, 0, 0});
}
Poly4 make_g1() {
  // w - (x^2 - y^2)(x + 3y)/16
  Poly4 q = Poly4::monomial(1.0, {2, 0, 0, 0}) - Poly4::monomial(1.0, {0, 2, 0, 0});
  Poly4 l = Poly4::variable(0) + 3.0 * Poly4::variable(1);
  return Poly4::variable(3) - Poly4(1.0 / 16.0) * q * l;
}
Poly4 make_g2() {
  Poly4 q = Poly4::monomial(1.0, {2, 0, 0, 0}) - Poly4::monomial(1.0, {0, 2, 0, 0});
  Poly4 l = Poly4::variable(0) - 3.0 * Poly4::variable(1);
  return Poly4::variable(3) - Poly4(1.0 / 16.0) * q * l;
}
Poly4 make_g3() {
  // -w - (x y^2 - y^3)/4
  return -Poly4::variable(3) - Poly4::monomial(0.25, {1, 2, 0, 0}) +
         Poly4::monomial(0.25, {0, 3, 0, 0});
}
Poly4 make_g4() {
  return -Poly4::variable(3) - Poly4::monomial(0.25, {1, 2, 0, 0}) -
         Poly4::monomial(0.25, {0, 3, 0, 0});
}

const Poly4 kFlatPolys[6] = {make_f1(), make_f2(), make_g1(),
                             make_g2(), make_g3(), make_g4()};
const char* kFlatNames[6] = {"f1", "f2", "g1", "g2", "g3", "g4"};

const FrameStructure& flat_frame() {
  static const FrameStructure f = FrameStructure::flat();
  return f;
}

}  // namespace

BarrierSpec::BarrierSpec(Generator g, Surface s, Datum d)
    : generator(g), surface(s), datum(d) {
  if (find_spec(g, s, d) == 0) {
    throw ConstraintViolation("not one of the six admissible Cauchy problems");
  }
}

BarrierSpec BarrierSpec::cauchy(int index) {
  if (index < 1 || index > 6) {
    throw ConstraintViolation("Cauchy problem index must be 1..6");
  }
  const SpecRow& r = kSpecTable[index - 1];
  return BarrierSpec(r.gen, r.surf, r.datum);
}

int BarrierSpec::index() const {
  return find_spec(generator, surface, datum);
}

std::string BarrierSpec::name() const {
  return "ca" + std::to_string(index());
}

const Poly4& flat_barrier_poly(FlatBarrier which) {
  return kFlatPolys[static_cast<int>(which)];
}

double flat_barrier(FlatBarrier which, const Point& q) {
  return flat_barrier_poly(which).eval(q);
}

FlatBarrier flat_barrier_for(const BarrierSpec& spec) {
  return kSpecTable[spec.index() - 1].flat;
}

BarrierSpec spec_for(FlatBarrier which) {
  for (int i = 0; i < 6; ++i) {
    if (kSpecTable[i].flat == which) return BarrierSpec::cauchy(i + 1);
  }
  throw ConstraintViolation("unmapped barrier");
}

std::string flat_barrier_name(FlatBarrier which) {
  return kFlatNames[static_cast<int>(which)];
}

ScalarField ScalarField::closed_form(FlatBarrier which) {
  ScalarField f(spec_for(which), flat_barrier_name(which));
  f.poly_ = flat_barrier_poly(which);
  return f;
}

ScalarField ScalarField::characteristic(const BarrierSpec& spec,
                                        const FrameStructure& frame) {
  ScalarField f(spec, spec.name());
  f.frame_ = std::make_shared<FrameStructure>(frame);
  return f;
}

ScalarField ScalarField::polynomial(const Poly4& p, Generator gen) {
  // Reuse ca1/ca2 slots purely to carry the generator choice.
  BarrierSpec spec =
      (gen == Generator::XminusY) ? BarrierSpec::cauchy(1) : BarrierSpec::cauchy(2);
  ScalarField f(spec, "poly");
  f.poly_ = p;
  return f;
}

const Poly4& ScalarField::poly() const {
  if (!poly_) throw Error("field has no polynomial form");
  return *poly_;
}

const FrameStructure& ScalarField::frame() const {
  if (!frame_) throw Error("field carries no frame");
  return *frame_;
}

double ScalarField::eval(const Point& q, const IntegratorConfig& cfg) const {
  if (poly_) return poly_->eval(q);
  return characteristic_solve(*this, q, cfg);
}

VectorField generator_field(const FrameStructure& frame, Generator gen) {
  return gen == Generator::XminusY ? frame.X() - frame.Y()
                                   : frame.X() + frame.Y();
}

double surface_value(Surface s, const Point& q) {
  switch (s) {
    case Surface::Gamma1:
      return q.y - q.x;
    case Surface::Gamma2:
      return q.y + q.x;
    default:
      return q.y;
  }
}

double datum_value(Datum d, const Point& q) {
  switch (d) {
    case Datum::PlusZ:
      return q.z;
    case Datum::MinusZ:
      return -q.z;
    case Datum::PlusW:
      return q.w;
    default:
      return -q.w;
  }
}

double characteristic_solve(const ScalarField& field, const Point& q,
                            const IntegratorConfig& cfg, double horizon) {
  const BarrierSpec& spec = field.spec();
  if (surface_value(spec.surface, q) == 0.0) {
    return datum_value(spec.datum, q);
  }
  const FrameStructure& frame = field.exact() ? flat_frame() : field.frame();

  VectorField gen = generator_field(frame, spec.generator);
  auto rhs = [&gen](double, const std::array<double, 4>& y) {
    return gen.eval(Point::from_array(y));
  };
  auto event = [&spec](double, const std::array<double, 4>& y) {
    return surface_value(spec.surface, Point::from_array(y));
  };

  auto solver = make_dopri5<4>(rhs, cfg);
  for (double t_end : {horizon, -horizon}) {
    auto res = solver.integrate(0.0, q.as_array(), t_end,
                                [](const auto&) {}, event);
    if (res.event_hit) {
      return datum_value(spec.datum, Point::from_array(res.y));
    }
  }
  throw NoBoundaryHit("characteristic from " + format_point(q) +
                      " missed the surface within |t| <= " +
                      std::to_string(horizon));
}

double pde_residual(const ScalarField& field, const Point& q,
                    const IntegratorConfig& cfg, double fd_step) {
  const FrameStructure& frame = field.exact() ? flat_frame() : field.frame();
  VectorField gen = generator_field(frame, field.spec().generator);

  if (field.exact()) {
    return std::fabs(gen.apply(field.poly()).eval(q));
  }

  auto g = gen.eval(q);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (g[i] == 0.0) continue;
    auto lo = q.as_array(), hi = q.as_array();
    lo[i] -= fd_step;
    hi[i] += fd_step;
    double dlo, dhi;
    try {
      dlo = field.eval(Point::from_array(lo), cfg);
      dhi = field.eval(Point::from_array(hi), cfg);
    } catch (const NoBoundaryHit&) {
      throw NonDifferentiable("stencil left the solvable patch at " +
                              format_point(q));
    }
    acc += g[i] * (dhi - dlo) / (2.0 * fd_step);
  }
  return std::fabs(acc);
}

Poly4 pde_residual_poly(const FrameStructure& frame, Generator gen,
                        const Poly4& f) {
  return generator_field(frame, gen).apply(f);
}

HorizontalVector horizontal_gradient(const FrameStructure& frame,
                                     const ScalarField& field, const Point& q,
                                     const GradientOptions& opts) {
  HorizontalVector out;
  out.base = q;
  if (field.exact()) {
    out.u = -frame.X().apply(field.poly()).eval(q);
    out.v = frame.Y().apply(field.poly()).eval(q);
    return out;
  }

  // Central-difference coordinate gradient, then pair with the frame.
  std::array<double, 4> grad{};
  for (int i = 0; i < 4; ++i) {
    auto lo = q.as_array(), hi = q.as_array();
    lo[i] -= opts.fd_step;
    hi[i] += opts.fd_step;
    try {
      double dlo = field.eval(Point::from_array(lo), opts.cfg);
      double dhi = field.eval(Point::from_array(hi), opts.cfg);
      grad[i] = (dhi - dlo) / (2.0 * opts.fd_step);
    } catch (const NoBoundaryHit&) {
      throw NonDifferentiable("stencil left the solvable patch at " +
                              format_point(q));
    }
  }
  auto xv = frame.X().eval(q);
  auto yv = frame.Y().eval(q);
  double xf = 0.0, yf = 0.0;
  for (int i = 0; i < 4; ++i) {
    xf += xv[i] * grad[i];
    yf += yv[i] * grad[i];
  }
  out.u = -xf;
  out.v = yf;
  return out;
}

std::pair<Poly4, Poly4> horizontal_gradient_poly(const FrameStructure& frame,
                                                 const Poly4& f) {
  return {-frame.X().apply(f), frame.Y().apply(f)};
}

}  // namespace elab
