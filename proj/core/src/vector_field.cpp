#include "elab/vector_field.hpp"

namespace elab {

Poly4 VectorField::apply(const Poly4& f) const {
  Poly4 out;
  for (int i = 0; i < 4; ++i) {
    if (!comp[i].is_zero()) out += comp[i] * f.derivative(i);
  }
  return out;
}

bool VectorField::is_zero() const {
  return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero() &&
         comp[3].is_zero();
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField out;
  for (int i = 0; i < 4; ++i) out.comp[i] = a.comp[i] + b.comp[i];
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField out;
  for (int i = 0; i < 4; ++i) out.comp[i] = a.comp[i] - b.comp[i];
  return out;
}

VectorField operator*(double s, const VectorField& v) {
  VectorField out;
  for (int i = 0; i < 4; ++i) out.comp[i] = s * v.comp[i];
  return out;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  // [A,B]_i = A(B_i) - B(A_i)
  VectorField out;
  for (int i = 0; i < 4; ++i) {
    out.comp[i] = a.apply(b.comp[i]) - b.apply(a.comp[i]);
  }
  return out;
}

}  // namespace elab
