// Dense univariate polynomials over Q.
#pragma once

#include "tvlnd/rational.hpp"

namespace tvl {

struct Poly {
  QVec c;  // c[i] is the coefficient of t^i; normalized: no trailing zeros

  Poly() = default;
  explicit Poly(QVec coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& v) { return Poly(QVec{v}); }
  static Poly t() { return Poly(QVec{Rat(0), Rat(1)}); }
  // (t - z)
  static Poly t_minus(const Rat& z) { return Poly(QVec{-z, Rat(1)}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return c.empty() ? -1 : int(c.size()) - 1; }
  Rat lead() const { return c.empty() ? Rat(0) : c.back(); }
  Rat at(size_t i) const { return i < c.size() ? c[i] : Rat(0); }

  bool operator==(const Poly& o) const { return c == o.c; }

  Poly operator+(const Poly& o) const {
    QVec r(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return Poly(r);
  }
  Poly operator-(const Poly& o) const {
    QVec r(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return Poly(r);
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    QVec r(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Poly(r);
  }
  Poly operator*(const Rat& s) const {
    QVec r = c;
    for (auto& x : r) x *= s;
    return Poly(r);
  }
  Poly operator-() const { return *this * Rat(-1); }

  Rat eval(const Rat& z) const {
    Rat v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
  }
  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    QVec r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = Rat(Int(i)) * c[i];
    return Poly(r);
  }
  Poly pow(unsigned long e) const {
    Poly r = constant(1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
};

// Quotient and remainder of a by b (b nonzero).
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::Internal, "poly division by zero");
  Poly r = a, q;
  q.c.assign(std::max(0, a.deg() - b.deg() + 1), Rat(0));
  while (!r.is_zero() && r.deg() >= b.deg()) {
    Rat f = r.lead() / b.lead();
    size_t k = size_t(r.deg() - b.deg());
    q.c[k] = f;
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i + k] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

// Monic gcd.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    Rat inv = 1 / a.lead();
    for (auto& x : a.c) x *= inv;
  }
  return a;
}

// Multiplicity of the root z in p (0 when p(z) != 0); p nonzero.
inline int root_order(Poly p, const Rat& z) {
  if (p.is_zero()) fail(ErrorCode::Internal, "root order of the zero polynomial");
  int k = 0;
  Poly lin = Poly::t_minus(z);
  while (p.eval(z) == 0) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) fail(ErrorCode::Internal, "inexact deflation");
    p = q;
    ++k;
  }
  return k;
}

inline std::string poly_str(const Poly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  for (size_t i = p.c.size(); i-- > 0;) {
    if (p.c[i] == 0) continue;
    Rat a = p.c[i];
    bool first = s.empty();
    if (!first) s += (a > 0 ? " + " : " - ");
    else if (a < 0)
      s += "-";
    Rat mag = abs(a);
    bool unit = (mag == 1) && i > 0;
    if (!unit) s += rat_str(mag);
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace tvl
