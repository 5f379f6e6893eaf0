#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "elab/geometry.hpp"

namespace elab {

// Sparse polynomial in the four coordinates (x, y, z, w).
//
// Terms are kept sorted by exponent tuple with exact-zero coefficients
// pruned, so structural equality of two Poly4 values is polynomial
// identity. All coefficient arithmetic is plain double arithmetic; the
// frame coefficients used throughout the library are dyadic rationals,
// for which sums, products and derivatives stay exact.
class Poly4 {
 public:
  using Exponents = std::array<int, 4>;

  struct Term {
    Exponents exp{0, 0, 0, 0};
    double coef = 0.0;
  };

  Poly4() = default;
  explicit Poly4(double constant);

  // c * x^e0 y^e1 z^e2 w^e3; exponents must be nonnegative.
  static Poly4 monomial(double coef, const Exponents& exp);
  // The coordinate function with the given axis (0=x, 1=y, 2=z, 3=w).
  static Poly4 variable(int axis);

  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  double eval(const std::array<double, 4>& at) const;
  double eval(const Point& q) const { return eval(q.as_array()); }

  // Exact partial derivative along the given axis.
  Poly4 derivative(int axis) const;

  // Exact substitution of a polynomial for one coordinate.
  Poly4 substitute(int axis, const Poly4& value) const;

  // True when no term involves the given axis.
  bool independent_of(int axis) const;

  double max_abs_coef() const;

  Poly4 operator-() const;
  Poly4& operator+=(const Poly4& rhs);
  Poly4& operator-=(const Poly4& rhs);
  friend Poly4 operator+(Poly4 lhs, const Poly4& rhs) { return lhs += rhs; }
  friend Poly4 operator-(Poly4 lhs, const Poly4& rhs) { return lhs -= rhs; }
  friend Poly4 operator*(const Poly4& lhs, const Poly4& rhs);
  friend Poly4 operator*(double s, const Poly4& p);
  friend Poly4 operator*(const Poly4& p, double s) { return s * p; }

  bool operator==(const Poly4& rhs) const { return terms_ == rhs.terms_; }
  bool operator!=(const Poly4& rhs) const { return !(*this == rhs); }

  // Human-readable form, e.g. "-0.25*x^2 + 0.25*y^2 + z".
  std::string to_string() const;

  // Builds from unsorted terms, merging duplicates.
  static Poly4 from_terms(const std::vector<Term>& terms);

 private:
  void normalize();

  std::vector<Term> terms_;  // sorted by exp, unique, coef != 0
};

inline bool operator==(const Poly4::Term& a, const Poly4::Term& b) {
  return a.exp == b.exp && a.coef == b.coef;
}

}  // namespace elab
