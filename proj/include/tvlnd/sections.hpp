// Global sections H^0(C, O(D)) for integral divisors: explicit bases on the
// affine and projective line, exact dimension rules elsewhere.
#pragma once

#include "tvlnd/divisor.hpp"

namespace tvl {

struct DimReport {
  enum class Kind { Exact, Infinite, Indeterminate };
  Kind kind = Kind::Exact;
  Int dim = 0;       // Exact
  Int lower = 0, upper = 0;  // Indeterminate

  static DimReport exact(Int d) { return {Kind::Exact, std::move(d), 0, 0}; }
  static DimReport infinite() { return {Kind::Infinite, 0, 0, 0}; }
  static DimReport between(Int lo, Int hi) {
    return {Kind::Indeterminate, 0, std::move(lo), std::move(hi)};
  }
  bool operator==(const DimReport& o) const {
    return kind == o.kind && dim == o.dim && lower == o.lower && upper == o.upper;
  }
};

inline DimReport sections_dim(const QDivisor& d) {
  if (!d.integral()) fail(ErrorCode::NonIntegral, "sections_dim needs an integral divisor");
  if (d.curve.kind == Curve::Kind::AffineLine) return DimReport::infinite();
  Rat degq = d.degree();
  Int deg = degq.get_num();
  if (d.curve.kind == Curve::Kind::ProjectiveLine)
    return DimReport::exact(std::max(Int(0), Int(deg + 1)));
  int g = d.curve.genus;
  if (g == 0) return DimReport::exact(std::max(Int(0), Int(deg + 1)));
  if (deg < 0) return DimReport::exact(0);
  if (d.is_zero()) return DimReport::exact(1);
  if (deg >= 2 * g - 1) return DimReport::exact(Int(deg + 1 - g));
  if (g == 1 && deg >= 1) return DimReport::exact(deg);
  return DimReport::between(std::max(Int(0), Int(deg + 1 - g)), Int(deg + 1));
}

// Basis of sections on a genus-zero curve. On the affine line the space is
// the free K[t]-module cofactor * K[t]; the explicit basis is truncated at
// `degree_bound` powers of t. On P^1 the basis is finite.
struct SectionBasis {
  FactoredFun cofactor;         // prod (t - z)^{-d_z} over finite points
  std::optional<Int> max_power; // largest t-exponent; nullopt = none allowed beyond list
  bool affine_truncated = false;
  std::vector<RatFun> basis;    // cofactor * t^k
};

inline SectionBasis sections_basis(const QDivisor& d, const Int& degree_bound = 8) {
  if (!d.integral()) fail(ErrorCode::NonIntegral, "sections_basis needs an integral divisor");
  if (d.curve.kind == Curve::Kind::Abstract)
    fail(ErrorCode::UnsupportedCurve, "explicit bases exist only on rational curves");
  SectionBasis sb;
  for (auto& [p, v] : d.coeffs) {
    if (p.is_infinity()) continue;
    Int n = -v.get_num();
    if (n != 0) sb.cofactor.orders[p.z] = n;
  }
  RatFun cof = sb.cofactor.expand();
  if (d.curve.kind == Curve::Kind::AffineLine) {
    sb.affine_truncated = true;
    sb.max_power = degree_bound;
    for (Int k = 0; k <= degree_bound; ++k) sb.basis.push_back(cof * RatFun::t_pow(k));
    return sb;
  }
  // P^1: cofactor * t^k for 0 <= k <= deg(d); empty when deg < 0
  Int deg = d.degree().get_num();
  if (deg < 0) {
    sb.max_power = std::nullopt;
    return sb;
  }
  sb.max_power = deg;
  for (Int k = 0; k <= deg; ++k) sb.basis.push_back(cof * RatFun::t_pow(k));
  return sb;
}

// div(f) + d >= 0 on the relevant curve: poles only at points of d with
// positive coefficient, with multiplicities bounded by d.
inline bool section_member(const RatFun& f, const QDivisor& d) {
  if (f.is_zero()) return true;
  if (d.curve.kind == Curve::Kind::Abstract)
    fail(ErrorCode::UnsupportedCurve, "membership needs a rational curve");
  QDivisor fl = floor_div(d);
  Poly den = f.den;
  for (auto& [p, v] : fl.coeffs) {
    if (!p.is_scalar()) continue;
    int ord = f.ord_at(p.z);
    if (Rat(ord) + v < 0) return false;
    int k = root_order(den, p.z);
    if (k) den = divmod(den, Poly::t_minus(p.z).pow(k)).first;
  }
  if (den.deg() > 0) return false;  // a pole outside the allowed support
  if (d.curve.kind == Curve::Kind::ProjectiveLine) {
    Int ord_inf = f.ord_at_infinity();
    if (Rat(ord_inf) + fl.at(CurvePoint::infinity()) < 0) return false;
  }
  return true;
}

}  // namespace tvl
