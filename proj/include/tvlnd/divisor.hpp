// Q-divisors on curves and sigma-polyhedral divisors: evaluation, integral
// and fractional parts, properness, degree, normal quasifan, and principal
// shifts with their witnesses.
#pragma once

#include "tvlnd/curve.hpp"
#include "tvlnd/hilbert.hpp"
#include "tvlnd/ratfun.hpp"

namespace tvl {

struct QDivisor {
  Curve curve;
  std::map<CurvePoint, Rat> coeffs;  // zero coefficients never stored

  void set(const CurvePoint& p, const Rat& v) {
    if (v == 0)
      coeffs.erase(p);
    else
      coeffs[p] = v;
  }
  Rat at(const CurvePoint& p) const {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? Rat(0) : it->second;
  }
  Rat degree() const {
    Rat s = 0;
    for (auto& [p, v] : coeffs) s += v;
    return s;
  }
  bool integral() const {
    for (auto& [p, v] : coeffs)
      if (!rat_is_int(v)) return false;
    return true;
  }
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const QDivisor& o) const { return curve == o.curve && coeffs == o.coeffs; }

  QDivisor operator+(const QDivisor& o) const {
    QDivisor r = *this;
    for (auto& [p, v] : o.coeffs) r.set(p, r.at(p) + v);
    return r;
  }
  QDivisor operator-() const {
    QDivisor r;
    r.curve = curve;
    for (auto& [p, v] : coeffs) r.coeffs[p] = -v;
    return r;
  }
  QDivisor operator-(const QDivisor& o) const { return *this + (-o); }
  // coefficientwise >=
  bool dominates(const QDivisor& o) const {
    QDivisor d = *this - o;
    for (auto& [p, v] : d.coeffs)
      if (v < 0) return false;
    return true;
  }
};

// (floor, fractional) with floor + frac == d and frac coefficients in [0,1).
inline std::pair<QDivisor, QDivisor> floor_frac(const QDivisor& d) {
  QDivisor fl, fr;
  fl.curve = fr.curve = d.curve;
  for (auto& [p, v] : d.coeffs) {
    fl.set(p, Rat(rat_floor(v)));
    fr.set(p, rat_frac(v));
  }
  return {fl, fr};
}

inline QDivisor floor_div(const QDivisor& d) { return floor_frac(d).first; }

// ---- sigma-polyhedral divisors ----

struct PolyhedralDivisor {
  Curve curve;
  Cone sigma;  // pointed, N-side
  std::map<CurvePoint, TailedPoly> coeffs;  // coefficients equal to sigma omitted

  Cone weight_cone() const { return dual_cone(sigma); }

  const TailedPoly* coeff(const CurvePoint& p) const {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? nullptr : &it->second;
  }

  void set_coeff(const CurvePoint& p, const TailedPoly& tp) {
    check_point_on(curve, p);
    if (!(tp.tail == sigma)) fail(ErrorCode::TailMismatch, "coefficient tail differs from sigma");
    if (tp == neutral_poly(sigma))
      coeffs.erase(p);
    else
      coeffs[p] = tp;
  }
};

inline QDivisor evaluate(const PolyhedralDivisor& d, const ZVec& m) {
  if (!d.weight_cone().contains(m))
    fail(ErrorCode::OutsideWeightCone, "evaluate: " + vec_str(m) + " outside the weight cone");
  QDivisor out;
  out.curve = d.curve;
  for (auto& [p, tp] : d.coeffs) out.set(p, support_value(tp, m));
  return out;
}

inline TailedPoly deg_divisor(const PolyhedralDivisor& d) {
  TailedPoly acc = neutral_poly(d.sigma);
  for (auto& [p, tp] : d.coeffs) acc = minkowski_sum(acc, tp);
  return acc;
}

// Coarsest common refinement of the normal quasifans of all coefficients.
inline Quasifan divisor_quasifan(const PolyhedralDivisor& d) {
  std::vector<Quasifan> fans;
  for (auto& [p, tp] : d.coeffs) fans.push_back(normal_quasifan(tp));
  if (fans.empty()) {
    Quasifan qf;
    qf.support = d.weight_cone();
    qf.maximal_cones = {qf.support};
    return qf;
  }
  return common_refinement(fans);
}

// As above but ignoring the listed points (the punctured quasifan used when
// classifying over the projective line).
inline Quasifan divisor_quasifan_excluding(const PolyhedralDivisor& d,
                                           const std::vector<CurvePoint>& excluded) {
  std::vector<Quasifan> fans;
  for (auto& [p, tp] : d.coeffs) {
    bool skip = false;
    for (auto& e : excluded)
      if (e == p) skip = true;
    if (!skip) fans.push_back(normal_quasifan(tp));
  }
  if (fans.empty()) {
    Quasifan qf;
    qf.support = d.weight_cone();
    qf.maximal_cones = {qf.support};
    return qf;
  }
  return common_refinement(fans);
}

// ---- properness ----

struct ProperReport {
  enum class Verdict { Proper, NotProper, ProperAssumingPrincipality };
  Verdict verdict = Verdict::Proper;
  std::string reason;
  bool ok() const { return verdict != Verdict::NotProper; }
};

// The zero locus {h_{deg D} = 0} inside the weight cone, as the list of
// faces on which the support function vanishes identically.
inline std::vector<Cone> zero_locus_faces(const TailedPoly& degd, const Cone& weight_cone) {
  SupportFunction h = support_function(degd);
  std::vector<Cone> faces;
  for (auto& piece : h.pieces) {
    if (is_zero(piece.form)) {
      faces.push_back(piece.cone);
      continue;
    }
    ZMat eqs = piece.cone.eqs;
    eqs.push_back(primitive(piece.form));
    Cone f = cone_from_inequalities(piece.cone.n, piece.cone.side, piece.cone.facets, eqs);
    if (f.dim > 0) faces.push_back(f);
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  (void)weight_cone;
  return faces;
}

inline ProperReport is_proper(const PolyhedralDivisor& d) {
  ProperReport rep;
  if (!d.curve.projective()) {
    rep.reason = "curve is affine";
    return rep;
  }
  TailedPoly degd = deg_divisor(d);
  Cone sw = d.weight_cone();
  // (1) deg D must be a proper subset of sigma
  for (auto& v : degd.vertices) {
    if (!d.sigma.contains(v)) {
      rep.verdict = ProperReport::Verdict::NotProper;
      rep.reason = "condition (1): deg D is not contained in sigma (vertex " + vec_str(v) + ")";
      return rep;
    }
  }
  if (degd == neutral_poly(d.sigma)) {
    rep.verdict = ProperReport::Verdict::NotProper;
    rep.reason = "condition (1): deg D equals sigma";
    return rep;
  }
  // (2) on the zero locus of h_{deg D}: boundary position and principality
  bool assumed = false;
  for (auto& face : zero_locus_faces(degd, sw)) {
    if (face.dim == sw.dim) {
      rep.verdict = ProperReport::Verdict::NotProper;
      rep.reason = "condition (2): h_{deg D} vanishes on a full-dimensional cone";
      return rep;
    }
    if (face.dim == 0) continue;  // m = 0 has the zero divisor, principal
    // a convex zero face must sit inside a single facet of the weight cone
    bool on_boundary = false;
    for (auto& f : sw.facets) {
      bool inside = true;
      for (auto& g : face.generators())
        if (dot(f, g) != 0) inside = false;
      if (inside) {
        on_boundary = true;
        break;
      }
    }
    if (!on_boundary) {
      rep.verdict = ProperReport::Verdict::NotProper;
      rep.reason = "condition (2): h_{deg D} vanishes off the boundary of the weight cone";
      return rep;
    }
    // deg D(m) = h_{deg D}(m) = 0 on the face, so on P^1 a multiple of D(m)
    // is principal; on higher genus principality needs the Jacobian.
    if (d.curve.kind == Curve::Kind::Abstract && d.curve.genus >= 1) assumed = true;
  }
  if (assumed) {
    rep.verdict = ProperReport::Verdict::ProperAssumingPrincipality;
    rep.reason = "degree-zero evaluations assumed principal (genus >= 1)";
  } else {
    rep.reason = "conditions (1) and (2) verified";
  }
  return rep;
}

// ---- principal shifts ----

// Witness of the graded isomorphism f chi^m -> f * prod_z (t - z)^{<m, p_z>}
// chi^m induced by shifting coefficients by lattice vectors.
struct IsoWitness {
  std::map<CurvePoint, ZVec> shifts;  // point -> p_z
  bool identity() const {
    for (auto& [p, v] : shifts)
      if (!is_zero(v)) return false;
    return true;
  }
  // The multiplier attached to degree m (finite points only).
  FactoredFun multiplier(const ZVec& m) const {
    FactoredFun f;
    for (auto& [p, v] : shifts) {
      if (!p.is_scalar()) continue;
      Int e = dot(m, v);
      if (e != 0) f.orders[p.z] = e;
    }
    return f;
  }
};

inline std::pair<PolyhedralDivisor, IsoWitness> apply_principal_shift(
    const PolyhedralDivisor& d, const std::map<CurvePoint, ZVec>& shifts,
    std::optional<CurvePoint> balance_point = std::nullopt) {
  if (d.curve.kind == Curve::Kind::Abstract)
    fail(ErrorCode::UnsupportedCurve, "principal shifts need a rational curve");
  PolyhedralDivisor out = d;
  IsoWitness w;
  ZVec total = zvec_zero(d.sigma.n);
  for (auto& [p, v] : shifts) {
    check_point_on(d.curve, p);
    if (v.size() != d.sigma.n) fail(ErrorCode::NonLatticeShift, "shift has wrong rank");
    if (is_zero(v)) continue;
    const TailedPoly* tp = out.coeff(p);
    TailedPoly cur = tp ? *tp : neutral_poly(d.sigma);
    out.set_coeff(p, translate(cur, vneg(to_q(v))));
    w.shifts[p] = v;
    total = vadd(total, v);
  }
  if (d.curve.kind == Curve::Kind::ProjectiveLine && !is_zero(total)) {
    CurvePoint bp = balance_point.value_or(CurvePoint::infinity());
    if (shifts.count(bp))
      fail(ErrorCode::NonLatticeShift, "balance point cannot also be shifted");
    const TailedPoly* tp = out.coeff(bp);
    TailedPoly cur = tp ? *tp : neutral_poly(d.sigma);
    out.set_coeff(bp, translate(cur, to_q(total)));
  }
  return {out, w};
}

}  // namespace tvl
