#pragma once

#include <memory>
#include <optional>
#include <string>

#include "elab/frame.hpp"
#include "elab/integrator.hpp"
#include "elab/poly.hpp"

namespace elab {

enum class Generator { XminusY, XplusY };
enum class Surface { Gamma1, Gamma2, Y0 };  // {y=x}, {y=-x}, {y=0}
enum class Datum { PlusZ, MinusZ, PlusW, MinusW };

// One of the six admissible first-order Cauchy problems: the solution is
// constant along trajectories of the generator and restricts to the datum
// on the initial surface.
//
//   ca1: (X-Y) eta = 0, eta = z on {y=x}     -> f1
//   ca2: (X+Y) eta = 0, eta = -z on {y=-x}   -> f2
//   ca3: (X-Y) eta = 0, eta = w on {y=x}     -> g1
//   ca4: (X+Y) eta = 0, eta = w on {y=-x}    -> g2
//   ca5: (X+Y) eta = 0, eta = -w on {y=0}    -> g3
//   ca6: (X-Y) eta = 0, eta = -w on {y=0}    -> g4
struct BarrierSpec {
  Generator generator;
  Surface surface;
  Datum datum;

  // Throws ConstraintViolation unless the combination is one of the six.
  BarrierSpec(Generator g, Surface s, Datum d);

  static BarrierSpec cauchy(int index);  // 1..6
  int index() const;                     // 1..6
  std::string name() const;              // "ca1".."ca6"

  bool operator==(const BarrierSpec&) const = default;
};

// The closed-form solutions for the flat frame.
enum class FlatBarrier { F1, F2, G1, G2, G3, G4 };

const Poly4& flat_barrier_poly(FlatBarrier which);
double flat_barrier(FlatBarrier which, const Point& q);
FlatBarrier flat_barrier_for(const BarrierSpec& spec);
BarrierSpec spec_for(FlatBarrier which);
std::string flat_barrier_name(FlatBarrier which);

// Scalar function on 4-space. Closed-form and plain-polynomial fields
// evaluate and differentiate exactly; characteristic fields evaluate by
// integrating the generator to the initial surface.
class ScalarField {
 public:
  static ScalarField closed_form(FlatBarrier which);
  static ScalarField characteristic(const BarrierSpec& spec,
                                    const FrameStructure& frame);
  // A bare polynomial with an explicitly chosen generator (for residual
  // probes and tests).
  static ScalarField polynomial(const Poly4& p, Generator gen);

  bool exact() const { return poly_.has_value(); }
  const Poly4& poly() const;
  const BarrierSpec& spec() const { return spec_; }
  const FrameStructure& frame() const;

  double eval(const Point& q, const IntegratorConfig& cfg = {}) const;

  std::string name() const { return name_; }

 private:
  ScalarField(BarrierSpec spec, std::string name)
      : spec_(spec), name_(std::move(name)) {}

  BarrierSpec spec_;
  std::optional<Poly4> poly_;
  std::shared_ptr<const FrameStructure> frame_;
  std::string name_;
};

// Generator vector field of a spec for a given frame (X-Y or X+Y).
VectorField generator_field(const FrameStructure& frame, Generator gen);

// Signed surface coordinate: y-x, y+x, or y.
double surface_value(Surface s, const Point& q);
double datum_value(Datum d, const Point& q);

// Value of the characteristic solution at q: integrates the generator
// (forward, then backward) until the initial surface is crossed, and
// returns the datum there. Throws NoBoundaryHit when neither direction
// reaches the surface within the horizon.
double characteristic_solve(const ScalarField& field, const Point& q,
                            const IntegratorConfig& cfg = {},
                            double horizon = 4.0);

// |G(field)| at q, where G is the field's generator: exact derivatives for
// polynomial-backed fields, central differences otherwise.
double pde_residual(const ScalarField& field, const Point& q,
                    const IntegratorConfig& cfg = {}, double fd_step = 1e-4);

// G(f) as a polynomial, for exact identity checks.
Poly4 pde_residual_poly(const FrameStructure& frame, Generator gen,
                        const Poly4& f);

struct GradientOptions {
  IntegratorConfig cfg{};
  double fd_step = 1e-4;
};

// Frame coefficients (u, v) = (-X(f), Y(f)) at q. Characteristic fields
// use central differences; a stencil point that cannot be solved raises
// NonDifferentiable.
HorizontalVector horizontal_gradient(const FrameStructure& frame,
                                     const ScalarField& field, const Point& q,
                                     const GradientOptions& opts = {});

// Exact gradient coefficients as polynomials (closed-form fields only).
std::pair<Poly4, Poly4> horizontal_gradient_poly(const FrameStructure& frame,
                                                 const Poly4& f);

}  // namespace elab
