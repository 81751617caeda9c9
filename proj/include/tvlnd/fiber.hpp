// Fiber-type homogeneous LNDs: the degree sets S_rho, the divisors D_e, the
// section spaces Phi_e, derivations (toric and complexity-one), existence
// and equivalence classes.
#pragma once

#include "tvlnd/algebra.hpp"

namespace tvl {

// S_rho = sigma_1^vee ∩ (H - mu) ∩ M for an extremal ray rho of sigma:
// height -1 with respect to the primitive generator of rho, nonnegative on
// every other extremal ray.
struct SRhoDescription {
  ZVec rho;        // primitive generator (N-side)
  ZMat other_rays; // the remaining extremal rays of sigma
  Cone tau;        // dual codimension-1 face of sigma^vee (M-side)
  Cone sigma;
};

inline SRhoDescription s_rho_description(const Cone& sigma, const ZVec& rho) {
  auto rep = canonical_ray_of(sigma, rho);
  if (!rep) fail(ErrorCode::NotExtremalRay, "not an extremal ray: " + vec_str(rho));
  SRhoDescription s;
  s.rho = *rep;
  s.sigma = sigma;
  for (auto& r : sigma.rays)
    if (!(r == *rep)) s.other_rays.push_back(r);
  s.tau = dual_face(sigma, *rep);
  return s;
}

inline bool s_rho_membership(const SRhoDescription& s, const ZVec& e) {
  if (dot(e, s.rho) != -1) return false;
  for (auto& r : s.other_rays)
    if (dot(e, r) < 0) return false;
  return true;
}

// Finite set G with S_rho = union of g + tau_M: the height-one generators of
// the homogenized semigroup over the polyhedron {height = -1} ∩ sigma_1^vee.
inline ZMat s_rho_module_generators(const SRhoDescription& s) {
  size_t n = s.rho.size();
  // cone over S_rho in M x Z: {(e, t) : <e, rho> = -t, <e, r> >= 0, t >= 0}
  ZMat ineqs, eqs;
  for (auto& r : s.other_rays) {
    ZVec row = r;
    row.push_back(0);
    ineqs.push_back(row);
  }
  ZVec tpos = zvec_zero(n + 1);
  tpos[n] = 1;
  ineqs.push_back(tpos);
  ZVec heq = s.rho;
  heq.push_back(1);
  eqs.push_back(heq);
  Cone hom = cone_from_inequalities(n + 1, Side::M, ineqs, eqs);
  ZMat out;
  for (auto& g : semigroup_generators(hom)) {
    if (g[n] == 1) out.push_back(ZVec(g.begin(), g.end() - 1));
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

// ---- toric derivations ----

struct ToricLND {
  ZVec rho;  // primitive
  ZVec e;    // in S_rho
  Rat scale = 1;
};

inline ToricLND make_toric_lnd(const Cone& sigma, const ZVec& rho, const ZVec& e, Rat scale = 1) {
  SRhoDescription s = s_rho_description(sigma, rho);
  if (!s_rho_membership(s, e))
    fail(ErrorCode::NotInSRho, "degree " + vec_str(e) + " is not in S_rho");
  if (scale == 0) fail(ErrorCode::Internal, "zero scale");
  return {s.rho, e, scale};
}

// d(chi^m) = scale * <m, rho> * chi^{m+e}.
inline std::pair<Rat, ZVec> toric_lnd_apply(const ToricLND& d, const Cone& weight_cone,
                                            const ZVec& m) {
  if (!weight_cone.contains(m))
    fail(ErrorCode::OutsideWeightCone, "toric apply outside the weight cone");
  return {d.scale * Rat(dot(m, d.rho)), vadd(m, d.e)};
}

// One entry per extremal ray; one equivalence class each.
inline std::vector<std::pair<ZVec, SRhoDescription>> toric_classify(const Cone& sigma) {
  if (!sigma.pointed()) fail(ErrorCode::NotPointed, "toric classification needs a pointed cone");
  std::vector<std::pair<ZVec, SRhoDescription>> out;
  for (auto& rho : sigma.rays) out.push_back({rho, s_rho_description(sigma, rho)});
  return out;
}

// ---- complexity-one fiber type ----

// D_e = -sum_z g_{1,z}(e) . z where g_{1,z} is the linear piece of h_z on
// the unique maximal cone of its normal quasifan containing tau.
inline QDivisor d_e_divisor(const GradedAlgebra& a, const SRhoDescription& s, const ZVec& e) {
  if (!s_rho_membership(s, e))
    fail(ErrorCode::NotInSRho, "degree " + vec_str(e) + " is not in S_rho");
  QDivisor out;
  out.curve = a.div.curve;
  for (auto& [p, tp] : a.div.coeffs) {
    SupportFunction h = support_function(tp);
    const LinearPiece& piece = h.piece_containing(s.tau);
    out.set(p, -dot(e, piece.form));
  }
  return out;
}

struct SectionSpace {
  QDivisor floor_minus_de;  // floor(-D_e)
  DimReport dim;
  std::optional<SectionBasis> basis;  // rational curves only
  bool nonempty() const {
    if (dim.kind == DimReport::Kind::Infinite) return true;
    if (dim.kind == DimReport::Kind::Exact) return dim.dim > 0;
    return dim.lower > 0;  // certain part only
  }
};

inline SectionSpace phi_e_space(const GradedAlgebra& a, const SRhoDescription& s, const ZVec& e,
                                const Int& degree_bound = 8) {
  QDivisor de = d_e_divisor(a, s, e);
  SectionSpace sp;
  sp.floor_minus_de = floor_div(-de);
  sp.dim = sections_dim(sp.floor_minus_de);
  if (a.div.curve.rational()) sp.basis = sections_basis(sp.floor_minus_de, degree_bound);
  return sp;
}

struct FiberLND {
  SRhoDescription srho;
  ZVec e;
  RatFun phi;  // in Phi_e
};

inline FiberLND make_fiber_lnd(const GradedAlgebra& a, const ZVec& rho, const ZVec& e,
                               const RatFun& phi) {
  SRhoDescription s = s_rho_description(a.div.sigma, rho);
  if (!s_rho_membership(s, e))
    fail(ErrorCode::NotInSRho, "degree " + vec_str(e) + " is not in S_rho");
  QDivisor de = d_e_divisor(a, s, e);
  if (!section_member(phi, floor_div(-de)))
    fail(ErrorCode::MembershipViolation, "phi is not a section of floor(-D_e)");
  return {s, e, phi};
}

// d(f chi^m) = <m, rho> * phi * f * chi^{m+e}.
inline HomogeneousElement fiber_lnd_apply(const GradedAlgebra& a, const FiberLND& d,
                                          const HomogeneousElement& x) {
  if (!a.div.curve.rational())
    fail(ErrorCode::UnsupportedCurve, "fiber apply needs function arithmetic on the curve");
  Rat m0 = Rat(dot(x.degree, d.srho.rho));
  ZVec deg = vadd(x.degree, d.e);
  RatFun f = d.phi * x.fn * m0;
  if (f.is_zero()) return {deg, f};
  if (!element_member(a, deg, f))
    fail(ErrorCode::MembershipViolation, "fiber image escapes its graded piece");
  return {deg, f};
}

// Does the ray rho intersect the polyhedron deg D?
inline bool ray_meets_poly(const TailedPoly& p, const ZVec& rho) {
  // H-representation via the homogenization facets
  size_t n = rho.size();
  ZMat gens;
  for (auto& v : p.vertices) {
    QVec h = v;
    h.push_back(1);
    gens.push_back(primitive(h));
  }
  for (auto& r : p.tail.rays) {
    ZVec h = r;
    h.push_back(0);
    gens.push_back(h);
  }
  Cone hom = cone_from_rays(n + 1, p.tail.side, gens);
  // lambda range for lambda * rho in P, lambda >= 0; each homogenization
  // inequality (a, c) reads a.x >= -c at height 1
  Rat lo = 0;
  std::optional<Rat> hi;
  ZMat rows = hom.facets;
  for (auto& e : hom.eqs) {
    rows.push_back(e);
    rows.push_back(vneg(e));
  }
  for (auto& normal : rows) {
    ZVec av(normal.begin(), normal.end() - 1);
    Rat coef = Rat(dot(av, rho));
    Rat rhs = -Rat(normal[n]);
    if (coef == 0) {
      if (rhs > 0) return false;
      continue;
    }
    Rat bound = rhs / coef;
    if (coef > 0)
      lo = std::max(lo, bound);
    else
      hi = hi ? std::min(*hi, bound) : bound;
    if (hi && lo > *hi) return false;
  }
  return true;
}

// Existence criterion: affine base always; projective base iff the ray
// misses deg D.
inline bool fiber_existence(const GradedAlgebra& a, const ZVec& rho) {
  auto rep = canonical_ray_of(a.div.sigma, rho);
  if (!rep) fail(ErrorCode::NotExtremalRay, "not an extremal ray: " + vec_str(rho));
  if (!a.div.curve.projective()) return true;
  return !ray_meets_poly(deg_divisor(a.div), *rep);
}

struct FiberClass {
  ZVec rho;
  SRhoDescription srho;
};

inline std::vector<FiberClass> fiber_equivalence_classes(const GradedAlgebra& a) {
  std::vector<FiberClass> out;
  for (auto& rho : a.div.sigma.rays)
    if (fiber_existence(a, rho)) out.push_back({rho, s_rho_description(a.div.sigma, rho)});
  return out;
}

}  // namespace tvl
