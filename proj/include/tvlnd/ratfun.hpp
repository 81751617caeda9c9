// Exact rational functions in one variable over Q, plus the factored form
// c * prod (t - z)^{n_z} used for divisor witnesses on genus-zero curves.
#pragma once

#include "tvlnd/poly1.hpp"

namespace tvl {

struct RatFun {
  Poly num, den;  // reduced, den monic-normalized nonzero

  RatFun() : num(), den(Poly::constant(1)) {}
  explicit RatFun(Poly n) : num(std::move(n)), den(Poly::constant(1)) {}
  RatFun(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { reduce(); }
  static RatFun constant(const Rat& v) { return RatFun(Poly::constant(v)); }
  static RatFun t() { return RatFun(Poly::t()); }

  void reduce() {
    if (den.is_zero()) fail(ErrorCode::Internal, "rational function with zero denominator");
    if (num.is_zero()) {
      den = Poly::constant(1);
      return;
    }
    Poly g = poly_gcd(num, den);
    if (g.deg() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
    Rat lead = den.lead();
    if (lead != 1) {
      Rat inv = 1 / lead;
      num = num * inv;
      den = den * inv;
    }
  }

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }

  RatFun operator+(const RatFun& o) const { return RatFun(num * o.den + o.num * den, den * o.den); }
  RatFun operator-(const RatFun& o) const { return RatFun(num * o.den - o.num * den, den * o.den); }
  RatFun operator*(const RatFun& o) const { return RatFun(num * o.num, den * o.den); }
  RatFun operator*(const Rat& s) const { return RatFun(num * s, den); }
  RatFun operator/(const RatFun& o) const {
    if (o.is_zero()) fail(ErrorCode::Internal, "division by the zero function");
    return RatFun(num * o.den, den * o.num);
  }
  RatFun operator-() const { return *this * Rat(-1); }

  RatFun derivative() const {
    return RatFun(num.derivative() * den - num * den.derivative(), den * den);
  }

  // Valuation at t = z (negative at poles); the zero function has no order.
  int ord_at(const Rat& z) const {
    if (is_zero()) fail(ErrorCode::Internal, "order of the zero function");
    return root_order(num, z) - root_order(den, z);
  }
  int ord_at_infinity() const {
    if (is_zero()) fail(ErrorCode::Internal, "order of the zero function");
    return den.deg() - num.deg();
  }

  // Leading coefficient: lc(num)/lc(den).
  Rat lead() const { return is_zero() ? Rat(0) : num.lead() / den.lead(); }

  // t^k for k of either sign.
  static RatFun t_pow(const Int& k) {
    if (k >= 0) {
      QVec c(size_t(k.get_ui()) + 1, Rat(0));
      c.back() = 1;
      return RatFun(Poly(c));
    }
    QVec c(size_t(Int(-k).get_ui()) + 1, Rat(0));
    c.back() = 1;
    return RatFun(Poly::constant(1), Poly(c));
  }
};

inline std::string ratfun_str(const RatFun& f, const std::string& var = "t") {
  if (f.is_zero()) return "0";
  std::string n = poly_str(f.num, var);
  if (f.den == Poly::constant(1)) return n;
  return "(" + n + ")/(" + poly_str(f.den, var) + ")";
}

// ---- factored form: scalar * prod (t - z)^{n_z} ----

struct FactoredFun {
  Rat scalar = 1;                // nonzero
  std::map<Rat, Int> orders;     // zero/pole orders at finite rational points

  RatFun expand() const {
    RatFun f = RatFun::constant(scalar);
    for (auto& [z, n] : orders) {
      if (n == 0) continue;
      Poly lin = Poly::t_minus(z);
      Poly p = lin.pow(std::abs(n.get_si()));
      f = (n > 0) ? f * RatFun(p) : f / RatFun(p);
    }
    return f;
  }

  // On P^1 the order at infinity is implicit: -sum of finite orders.
  Int implied_ord_at_infinity() const {
    Int s = 0;
    for (auto& [z, n] : orders) s += n;
    return -s;
  }
};

// Writes f as scalar * prod (t - z)^{n_z} if it factors completely over Q
// with all roots/poles among `points` (plus arbitrary rational roots of the
// numerator); nullopt when the denominator has a factor with no root among
// the given points.
inline std::optional<FactoredFun> factor_over_points(const RatFun& f, const std::vector<Rat>& points) {
  if (f.is_zero()) return std::nullopt;
  FactoredFun out;
  Poly num = f.num, den = f.den;
  std::vector<Rat> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (auto& z : pts) {
    int kn = root_order(num, z);
    int kd = root_order(den, z);
    if (kn) num = divmod(num, Poly::t_minus(z).pow(kn)).first;
    if (kd) den = divmod(den, Poly::t_minus(z).pow(kd)).first;
    if (kn - kd != 0) out.orders[z] = kn - kd;
  }
  if (den.deg() != 0) return std::nullopt;
  if (num.deg() != 0) return std::nullopt;
  out.scalar = num.lead() / den.lead();
  return out;
}

}  // namespace tvl
