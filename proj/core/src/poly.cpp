#include "elab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace elab {

namespace {

double int_pow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_term(double coef, const Poly4::Exponents& exp) {
  if (!std::isfinite(coef)) throw std::invalid_argument("non-finite coefficient");
  for (int e : exp) {
    if (e < 0) throw std::invalid_argument("negative exponent");
  }
}

}  // namespace

Poly4::Poly4(double constant) {
  check_term(constant, {0, 0, 0, 0});
  if (constant != 0.0) terms_.push_back({{0, 0, 0, 0}, constant});
}

Poly4 Poly4::monomial(double coef, const Exponents& exp) {
  check_term(coef, exp);
  Poly4 p;
  if (coef != 0.0) p.terms_.push_back({exp, coef});
  return p;
}

Poly4 Poly4::variable(int axis) {
  if (axis < 0 || axis > 3) throw std::invalid_argument("axis out of range");
  Exponents e{0, 0, 0, 0};
  e[axis] = 1;
  return monomial(1.0, e);
}

int Poly4::degree() const {
  int d = -1;
  for (const Term& t : terms_) {
    d = std::max(d, t.exp[0] + t.exp[1] + t.exp[2] + t.exp[3]);
  }
  return d;
}

double Poly4::eval(const std::array<double, 4>& at) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    double m = t.coef;
    for (int i = 0; i < 4; ++i) {
      if (t.exp[i] != 0) m *= int_pow(at[i], t.exp[i]);
    }
    sum += m;
  }
  return sum;
}

Poly4 Poly4::derivative(int axis) const {
  if (axis < 0 || axis > 3) throw std::invalid_argument("axis out of range");
  Poly4 d;
  d.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.exp[axis] == 0) continue;
    Term dt = t;
    dt.coef = t.coef * t.exp[axis];
    dt.exp[axis] -= 1;
    d.terms_.push_back(dt);
  }
  d.normalize();
  return d;
}

Poly4 Poly4::substitute(int axis, const Poly4& value) const {
  if (axis < 0 || axis > 3) throw std::invalid_argument("axis out of range");
  // Cache powers of the replacement polynomial.
  std::vector<Poly4> powers{Poly4(1.0)};
  Poly4 out;
  for (const Term& t : terms_) {
    int e = t.exp[axis];
    while (static_cast<int>(powers.size()) <= e) {
      powers.push_back(powers.back() * value);
    }
    Term rest = t;
    rest.exp[axis] = 0;
    Poly4 base;
    base.terms_.push_back(rest);
    out += base * powers[e];
  }
  return out;
}

bool Poly4::independent_of(int axis) const {
  for (const Term& t : terms_) {
    if (t.exp[axis] != 0) return false;
  }
  return true;
}

double Poly4::max_abs_coef() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, std::fabs(t.coef));
  return m;
}

Poly4 Poly4::operator-() const {
  Poly4 p = *this;
  for (Term& t : p.terms_) t.coef = -t.coef;
  return p;
}

Poly4& Poly4::operator+=(const Poly4& rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  normalize();
  return *this;
}

Poly4& Poly4::operator-=(const Poly4& rhs) {
  return *this += -rhs;
}

Poly4 operator*(const Poly4& lhs, const Poly4& rhs) {
  std::map<Poly4::Exponents, double> acc;
  for (const Poly4::Term& a : lhs.terms_) {
    for (const Poly4::Term& b : rhs.terms_) {
      Poly4::Exponents e;
      for (int i = 0; i < 4; ++i) e[i] = a.exp[i] + b.exp[i];
      acc[e] += a.coef * b.coef;
    }
  }
  Poly4 out;
  out.terms_.reserve(acc.size());
  for (const auto& [e, c] : acc) {
    if (c != 0.0) out.terms_.push_back({e, c});
  }
  return out;
}

Poly4 operator*(double s, const Poly4& p) {
  if (!std::isfinite(s)) throw std::invalid_argument("non-finite scale");
  Poly4 out;
  if (s == 0.0) return out;
  out.terms_ = p.terms_;
  for (Poly4::Term& t : out.terms_) t.coef *= s;
  return out;
}

Poly4 Poly4::from_terms(const std::vector<Term>& terms) {
  Poly4 p;
  for (const Term& t : terms) check_term(t.coef, t.exp);
  p.terms_ = terms;
  p.normalize();
  return p;
}

void Poly4::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.coef == 0.0; }),
               merged.end());
  terms_ = std::move(merged);
}

std::string Poly4::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[4] = {"x", "y", "z", "w"};
  std::string s;
  bool first = true;
  for (const Term& t : terms_) {
    char buf[64];
    if (first) {
      std::snprintf(buf, sizeof(buf), "%g", t.coef);
      s += buf;
      first = false;
    } else {
      std::snprintf(buf, sizeof(buf), " %c %g", t.coef < 0 ? '-' : '+',
                    std::fabs(t.coef));
      s += buf;
    }
    for (int i = 0; i < 4; ++i) {
      if (t.exp[i] == 0) continue;
      s += "*";
      s += names[i];
      if (t.exp[i] > 1) {
        std::snprintf(buf, sizeof(buf), "^%d", t.exp[i]);
        s += buf;
      }
    }
  }
  return s;
}

std::string format_point(const Point& q) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "(%.12g, %.12g, %.12g, %.12g)", q.x, q.y,
                q.z, q.w);
  return buf;
}

}  // namespace elab
