#include "elab/frame.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "elab/errors.hpp"

namespace elab {

namespace {

const Poly4 kOne(1.0);
const Poly4 kX = Poly4::variable(0);
const Poly4 kY = Poly4::variable(1);
const Poly4 kHalf(0.5);

void check_psi_constraints(const Poly4& psi1, const Poly4& psi2) {
  for (const auto& t : psi1.terms()) {
    if (t.exp[0] == 0 && t.exp[1] == 0) {
      throw ConstraintViolation(
          "psi1 must vanish on {x=y=0}: forbidden term " +
          Poly4::monomial(t.coef, t.exp).to_string());
    }
  }
  for (const auto& t : psi2.terms()) {
    if (t.exp[0] == 0 && t.exp[1] == 0 && t.exp[2] == 0) {
      throw ConstraintViolation(
          "psi2 must vanish on {x=y=z=0}: forbidden term " +
          Poly4::monomial(t.coef, t.exp).to_string());
    }
  }
}

int rank_of(const Eigen::MatrixXd& m, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cutoff = rank_tol * sv(0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++r;
  }
  return r;
}

}  // namespace

FrameStructure FrameStructure::flat() {
  return normal_form(Poly4{}, Poly4{}, Poly4{});
}

FrameStructure FrameStructure::normal_form(const Poly4& phi, const Poly4& psi1,
                                           const Poly4& psi2) {
  check_psi_constraints(psi1, psi2);

  FrameStructure f;
  Poly4 one_psi1 = kOne + psi1;
  Poly4 one_psi2 = kOne + psi2;

  f.x_.comp[0] = kOne + kY * kY * phi;
  f.x_.comp[1] = kX * kY * phi;
  f.x_.comp[2] = kHalf * kY * one_psi1;
  f.x_.comp[3] = kHalf * kY * kY * one_psi2;

  f.y_.comp[0] = -(kX * kY * phi);
  f.y_.comp[1] = kOne - kX * kX * phi;
  f.y_.comp[2] = -(kHalf * kX * one_psi1);
  f.y_.comp[3] = -(kHalf * kX * kY * one_psi2);

  bool is_flat = phi.is_zero() && psi1.is_zero() && psi2.is_zero();
  f.provenance_ = is_flat ? Provenance::Flat : Provenance::NormalForm;
  f.phi_ = phi;
  f.psi1_ = psi1;
  f.psi2_ = psi2;
  f.tag_ = is_flat ? "flat" : "normal_form";
  return f;
}

FrameStructure FrameStructure::custom(VectorField x, VectorField y,
                                      std::string tag) {
  FrameStructure f;
  f.x_ = std::move(x);
  f.y_ = std::move(y);
  f.provenance_ = Provenance::Custom;
  f.tag_ = std::move(tag);
  return f;
}

bool FrameStructure::z_free() const {
  if (provenance_ == Provenance::Flat) return true;
  if (provenance_ == Provenance::NormalForm) {
    return phi_.independent_of(2) && psi2_.independent_of(2);
  }
  return false;
}

FrameStructure abelian_frame() {
  VectorField x, y;
  x.comp[0] = Poly4(1.0);
  y.comp[1] = Poly4(1.0);
  return FrameStructure::custom(std::move(x), std::move(y), "abelian");
}

FrameStructure strictly_abnormal_frame() {
  VectorField v, w;
  v.comp[0] = Poly4(1.0);
  w.comp[0] = Poly4::monomial(0.5, {2, 0, 0, 0});
  w.comp[1] = Poly4(1.0);
  w.comp[2] = Poly4::variable(0);
  w.comp[3] = Poly4::variable(0) * Poly4::variable(1);
  return FrameStructure::custom(std::move(v), std::move(w),
                                "strictly_abnormal");
}

double metric(const HorizontalVector& a, const HorizontalVector& b) {
  const Point &p = a.base, &q = b.base;
  if (p.x != q.x || p.y != q.y || p.z != q.z || p.w != q.w) {
    throw BasePointMismatch("horizontal vectors live at different points");
  }
  return -a.u * b.u + a.v * b.v;
}

CausalClass classify(const HorizontalVector& a) {
  if (a.u == 0.0 && a.v == 0.0) return {CausalKind::Zero, Orientation::None};
  double g = -a.u * a.u + a.v * a.v;
  if (g > 0.0) return {CausalKind::Spacelike, Orientation::None};
  CausalKind kind = (g < 0.0) ? CausalKind::Timelike : CausalKind::Null;
  // g(v, X) = -u; future directed iff that is negative.
  Orientation o = (a.u > 0.0) ? Orientation::Future : Orientation::Past;
  return {kind, o};
}

std::array<int, 3> growth_vector(const FrameStructure& f, const Point& q,
                                 double rank_tol) {
  if (!(rank_tol > 0.0)) throw std::invalid_argument("rank_tol must be > 0");

  VectorField xy = lie_bracket(f.X(), f.Y());
  VectorField xxy = lie_bracket(f.X(), xy);
  VectorField yxy = lie_bracket(f.Y(), xy);

  auto col = [&q](const VectorField& v) {
    auto a = v.eval(q);
    return Eigen::Vector4d(a[0], a[1], a[2], a[3]);
  };

  Eigen::MatrixXd m(4, 5);
  m.col(0) = col(f.X());
  m.col(1) = col(f.Y());
  m.col(2) = col(xy);
  m.col(3) = col(xxy);
  m.col(4) = col(yxy);

  int r1 = rank_of(m.leftCols(2), rank_tol);
  if (r1 < 2) {
    throw DegenerateFrame("frame fields dependent at " + format_point(q));
  }
  int r2 = rank_of(m.leftCols(3), rank_tol);
  int r3 = rank_of(m, rank_tol);
  return {r1, r2, r3};
}

HamiltonianTypeProbe hamiltonian_type_probe(const VectorField& v,
                                            const VectorField& w,
                                            const Point& q, double tol) {
  VectorField vw = lie_bracket(v, w);
  VectorField wvw = lie_bracket(w, vw);
  VectorField vvw = lie_bracket(v, vw);

  auto col = [&q](const VectorField& f) {
    auto a = f.eval(q);
    return Eigen::Vector4d(a[0], a[1], a[2], a[3]);
  };

  Eigen::Matrix4d basis;
  basis.col(0) = col(v);
  basis.col(1) = col(w);
  basis.col(2) = col(vw);
  basis.col(3) = col(wvw);
  if (rank_of(basis, 1e-10) < 4) {
    throw BasisFailure("V, W, [V,W], [W,[V,W]] dependent at " +
                       format_point(q));
  }

  Eigen::Vector4d target = col(vvw);
  Eigen::Matrix<double, 4, 3> span = basis.leftCols(3);
  Eigen::Vector3d coef =
      span.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(target);
  double residual = (span * coef - target).norm();

  HamiltonianTypeProbe out;
  out.f = coef(0);
  out.g = coef(1);
  out.h = coef(2);
  out.residual = residual;
  out.decomposable = residual <= tol;
  return out;
}

std::array<double, 3> MartinetFrame::eval_x(const Point3& q) const {
  Point q4{q.x, q.y, 0.0, q.w};
  auto a = X.eval(q4);
  return {a[0], a[1], a[3]};
}

std::array<double, 3> MartinetFrame::eval_y(const Point3& q) const {
  Point q4{q.x, q.y, 0.0, q.w};
  auto a = Y.eval(q4);
  return {a[0], a[1], a[3]};
}

MartinetFrame martinet_projection(const FrameStructure& f) {
  if (f.provenance() == Provenance::Custom) {
    throw ZDependence("projection requires a flat or normal-form frame");
  }
  if (!f.z_free()) {
    throw ZDependence("phi and psi2 must not depend on z");
  }
  MartinetFrame m;
  m.X = f.X();
  m.Y = f.Y();
  m.X.comp[2] = Poly4{};
  m.Y.comp[2] = Poly4{};
  return m;
}

HyperbolicRadius hyperbolic_radius(const Point& q) {
  double ax = std::fabs(q.x), ay = std::fabs(q.y);
  HyperbolicRadius out;
  if (ay < ax) {
    double r = std::sqrt(q.x * q.x - q.y * q.y);
    out.region = q.x > 0.0 ? HyperbolicRegion::S1plus : HyperbolicRegion::S1minus;
    out.r1 = q.x > 0.0 ? r : -r;
  } else if (ay > ax) {
    double r = std::sqrt(q.y * q.y - q.x * q.x);
    out.region = q.y > 0.0 ? HyperbolicRegion::S2plus : HyperbolicRegion::S2minus;
    out.r2 = q.y > 0.0 ? r : -r;
  } else {
    out.region = HyperbolicRegion::Cone;
  }
  return out;
}

}  // namespace elab
