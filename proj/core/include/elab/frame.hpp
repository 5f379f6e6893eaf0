#pragma once

#include <array>
#include <optional>
#include <string>

#include "elab/vector_field.hpp"

namespace elab {

enum class Provenance { Flat, NormalForm, Custom };

// Orthonormal rank-2 frame {X, Y} on 4-space. X is timelike and fixes the
// time orientation, Y is spacelike; the Lorentzian metric on the span is
// declared by orthonormality, so metric values reduce to frame coefficients.
class FrameStructure {
 public:
  // X = ∂x + ½y ∂z + ½y² ∂w,  Y = ∂y − ½x ∂z − ½xy ∂w.
  static FrameStructure flat();

  // Frame with coefficient functions (phi, psi1, psi2):
  //   X = ∂x + yφ(y∂x + x∂y) + ½y(1+ψ₁)∂z + ½y²(1+ψ₂)∂w
  //   Y = ∂y − xφ(y∂x + x∂y) − ½x(1+ψ₁)∂z − ½xy(1+ψ₂)∂w
  // Requires psi1 to vanish on {x=y=0} and psi2 on {x=y=z=0}; with all
  // three zero this is exactly flat().
  static FrameStructure normal_form(const Poly4& phi, const Poly4& psi1,
                                    const Poly4& psi2);

  // Arbitrary polynomial pair declared orthonormal with X timelike.
  static FrameStructure custom(VectorField x, VectorField y,
                               std::string tag = "custom");

  const VectorField& X() const { return x_; }
  const VectorField& Y() const { return y_; }
  Provenance provenance() const { return provenance_; }
  const Poly4& phi() const { return phi_; }
  const Poly4& psi1() const { return psi1_; }
  const Poly4& psi2() const { return psi2_; }

  // True when phi and psi2 do not involve z, so the Martinet projection
  // is defined and the (x, y, w) dynamics decouple from z.
  bool z_free() const;

  const std::string& tag() const { return tag_; }

 private:
  FrameStructure() = default;

  VectorField x_, y_;
  Provenance provenance_ = Provenance::Custom;
  Poly4 phi_, psi1_, psi2_;  // meaningful for NormalForm only
  std::string tag_;
};

// Frame with both fields equal to a coordinate direction; growth (2,2,2).
FrameStructure abelian_frame();

// Engel frame whose abnormal curves are strictly abnormal: V = ∂x and
// W = ½x²∂x + ∂y + x∂z + xy∂w satisfy [V,[V,W]] = V with
// V ∧ W ∧ [V,W] ∧ [W,[V,W]] of determinant one everywhere, so the
// decomposition coefficient f is identically one.
FrameStructure strictly_abnormal_frame();

// Horizontal vector at a base point, stored as frame coefficients:
// vector = u·X + v·Y, so g(vector, vector) = −u² + v² exactly.
struct HorizontalVector {
  Point base;
  double u = 0.0;
  double v = 0.0;
};

enum class CausalKind { Timelike, Null, Spacelike, Zero };
enum class Orientation { Future, Past, None };

struct CausalClass {
  CausalKind kind = CausalKind::Zero;
  Orientation orientation = Orientation::None;

  bool operator==(const CausalClass&) const = default;
};

// g(a, b) = −a.u b.u + a.v b.v. Throws BasePointMismatch.
double metric(const HorizontalVector& a, const HorizontalVector& b);

// Causal character from the exact sign of −u² + v²; orientation from the
// sign of g(v, X) = −u for nonspacelike vectors.
CausalClass classify(const HorizontalVector& a);

// Ranks of span{X,Y}, span{X,Y,[X,Y]}, span{X,Y,[X,Y],[X,[X,Y]],[Y,[X,Y]]}
// at q. Singular values below rank_tol times the largest are treated as
// zero. Throws DegenerateFrame when the first rank is below 2.
std::array<int, 3> growth_vector(const FrameStructure& f, const Point& q,
                                 double rank_tol = 1e-8);

struct HamiltonianTypeProbe {
  bool decomposable = false;
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  double residual = 0.0;
};

// Least-squares decomposition [V,[V,W]](q) = f·V + g·W + h·[V,W] over the
// pointwise values. Requires V, W, [V,W], [W,[V,W]] independent at q
// (throws BasisFailure otherwise). A nonvanishing f along the abnormal
// trajectory certifies the structure is not of Hamiltonian type.
HamiltonianTypeProbe hamiltonian_type_probe(const VectorField& v,
                                            const VectorField& w,
                                            const Point& q, double tol = 1e-9);

// The quotient frame on (x, y, w). Components are stored as z-free Poly4
// values; the ∂z slots are identically zero.
struct MartinetFrame {
  VectorField X;
  VectorField Y;

  std::array<double, 3> eval_x(const Point3& q) const;
  std::array<double, 3> eval_y(const Point3& q) const;
};

// Projection along ∂z. Requires phi and psi2 free of z; throws ZDependence.
MartinetFrame martinet_projection(const FrameStructure& f);

enum class HyperbolicRegion { S1plus, S1minus, S2plus, S2minus, Cone };

// Hyperbolic radial coordinates of the (x, y) part: R1 = ±√(x²−y²) on
// |y| < |x| (sign of x), R2 = ±√(y²−x²) on |y| > |x| (sign of y).
struct HyperbolicRadius {
  HyperbolicRegion region = HyperbolicRegion::Cone;
  std::optional<double> r1;
  std::optional<double> r2;
};

HyperbolicRadius hyperbolic_radius(const Point& q);

}  // namespace elab
