#pragma once

#include <array>

#include "elab/poly.hpp"

namespace elab {

// Polynomial vector field on 4-space: components along ∂x, ∂y, ∂z, ∂w.
struct VectorField {
  std::array<Poly4, 4> comp;

  std::array<double, 4> eval(const Point& q) const {
    auto a = q.as_array();
    return {comp[0].eval(a), comp[1].eval(a), comp[2].eval(a),
            comp[3].eval(a)};
  }

  // Derivation: this applied to a scalar polynomial.
  Poly4 apply(const Poly4& f) const;

  bool operator==(const VectorField& rhs) const { return comp == rhs.comp; }
  bool is_zero() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& v);

// Exact commutator [A, B] by componentwise polynomial differentiation.
VectorField lie_bracket(const VectorField& a, const VectorField& b);

}  // namespace elab
