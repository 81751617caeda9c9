// Horizontal-type homogeneous LNDs on complexity-one algebras over the
// affine or projective line: admissible frames (maximal quasifan cones with
// at most one non-integral restriction), normalization, admissible degrees
// via the hat-cone, the exact decision of the floor conditions, derivation
// construction and kernels.
#pragma once

#include "tvlnd/fiber.hpp"

namespace tvl {

// ---- point relabeling ----

// t -> (a t + b) / (c t + d), restricted to maps sending Q-points to
// Q-points; used to move the exceptional points to 0 and infinity.
struct MobiusMap {
  Rat a = 1, b = 0, c = 0, d = 1;

  static MobiusMap identity() { return {}; }
  static MobiusMap shift(const Rat& z0) { return {1, -z0, 0, 1}; }  // t - z0
  // (t - z0)/(t - zinf)
  static MobiusMap two_point(const Rat& z0, const Rat& zinf) { return {1, -z0, 1, -zinf}; }
  // 1/(t - zinf): sends infinity to 0 and zinf to infinity
  static MobiusMap invert_at(const Rat& zinf) { return {0, 1, 1, -zinf}; }

  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  CurvePoint apply(const CurvePoint& p) const {
    if (p.kind == CurvePoint::Kind::Label)
      fail(ErrorCode::UnsupportedCurve, "cannot relabel an abstract point");
    if (p.is_infinity()) {
      if (c == 0) return CurvePoint::infinity();
      return CurvePoint::scalar(a / c);
    }
    Rat num = a * p.z + b, den = c * p.z + d;
    if (den == 0) return CurvePoint::infinity();
    return CurvePoint::scalar(num / den);
  }
  std::string str() const {
    return "t -> (" + rat_str(a) + "*t + " + rat_str(b) + ")/(" + rat_str(c) + "*t + " +
           rat_str(d) + ")";
  }
};

inline PolyhedralDivisor relabel_points(const PolyhedralDivisor& dv, const MobiusMap& mu) {
  PolyhedralDivisor out;
  out.curve = dv.curve;
  out.sigma = dv.sigma;
  for (auto& [p, tp] : dv.coeffs) {
    CurvePoint q = mu.apply(p);
    check_point_on(out.curve, q);
    if (out.coeffs.count(q)) fail(ErrorCode::Internal, "relabeling collided two points");
    out.coeffs[q] = tp;
  }
  return out;
}

// ---- frames ----

struct HorizontalFrame {
  Cone omega_dual;                    // maximal cone of the relevant quasifan
  CurvePoint z0;                      // exceptional point (original coordinates)
  std::optional<CurvePoint> z_inf;    // elliptic only
  bool generic_zinf = false;          // witness of the infinite family
};

namespace detail {

// The minimizing vertex of the coefficient at z on the (full-dimensional)
// cone, i.e. the linear form of h_z there; zero for unstored points.
inline QVec restriction_form(const PolyhedralDivisor& dv, const CurvePoint& z,
                             const Cone& omega_dual) {
  const TailedPoly* tp = dv.coeff(z);
  if (!tp) return qvec_zero(dv.sigma.n);
  SupportFunction h = support_function(*tp);
  return h.piece_containing(omega_dual).form;
}

inline bool form_is_integral(const QVec& f) {
  for (auto& x : f)
    if (!rat_is_int(x)) return false;
  return true;
}

// Points of the divisor support whose restriction to the cone is
// non-integral, excluding `excluded`.
inline std::vector<CurvePoint> non_integral_points(const PolyhedralDivisor& dv,
                                                   const Cone& omega_dual,
                                                   const std::vector<CurvePoint>& excluded) {
  std::vector<CurvePoint> bad;
  for (auto& [p, tp] : dv.coeffs) {
    bool skip = false;
    for (auto& e : excluded)
      if (e == p) skip = true;
    if (skip) continue;
    if (!form_is_integral(restriction_form(dv, p, omega_dual))) bad.push_back(p);
  }
  return bad;
}

inline CurvePoint default_z0(const std::vector<CurvePoint>& avoid) {
  for (Int k = 0;; ++k) {
    CurvePoint cand = CurvePoint::scalar(Rat(k));
    bool clash = false;
    for (auto& p : avoid)
      if (p == cand) clash = true;
    if (!clash) return cand;
  }
}

}  // namespace detail

// Frames satisfying condition (i) (and (i') over P^1). Over P^1 the generic
// choice of z_inf is reported once, with a concrete witness point off the
// divisor support, when some maximal cone of the full quasifan has at most
// one non-integral restriction.
inline std::vector<HorizontalFrame> admissible_frames(const GradedAlgebra& a) {
  const PolyhedralDivisor& dv = a.div;
  if (dv.curve.kind == Curve::Kind::Abstract)
    fail(ErrorCode::UnsupportedCurve, "horizontal LNDs exist only over A^1 and P^1");
  std::vector<HorizontalFrame> out;
  if (dv.curve.kind == Curve::Kind::AffineLine) {
    for (auto& omega : divisor_quasifan(dv).maximal_cones) {
      auto bad = detail::non_integral_points(dv, omega, {});
      if (bad.size() > 1) continue;
      HorizontalFrame fr;
      fr.omega_dual = omega;
      fr.z0 = bad.empty() ? detail::default_z0({}) : bad[0];
      out.push_back(fr);
    }
    return out;
  }
  // P^1: specific z_inf among the support points
  std::vector<CurvePoint> support;
  for (auto& [p, tp] : dv.coeffs) support.push_back(p);
  for (auto& zinf : support) {
    for (auto& omega : divisor_quasifan_excluding(dv, {zinf}).maximal_cones) {
      auto bad = detail::non_integral_points(dv, omega, {zinf});
      if (bad.size() > 1) continue;
      HorizontalFrame fr;
      fr.omega_dual = omega;
      fr.z_inf = zinf;
      fr.z0 = bad.empty() ? detail::default_z0({zinf}) : bad[0];
      out.push_back(fr);
    }
  }
  // generic z_inf: a point off the support
  {
    std::vector<CurvePoint> avoid = support;
    CurvePoint generic = detail::default_z0(avoid);
    bool has_inf = false;
    for (auto& p : support)
      if (p.is_infinity()) has_inf = true;
    if (!has_inf) generic = CurvePoint::infinity();
    for (auto& omega : divisor_quasifan(dv).maximal_cones) {
      auto bad = detail::non_integral_points(dv, omega, {});
      if (bad.size() > 1) continue;
      HorizontalFrame fr;
      fr.omega_dual = omega;
      fr.z_inf = generic;
      fr.generic_zinf = true;
      avoid.push_back(generic);
      fr.z0 = bad.empty() ? detail::default_z0(avoid) : bad[0];
      avoid.pop_back();
      out.push_back(fr);
    }
  }
  return out;
}

// ---- normalization ----

struct NormalizedFrame {
  GradedAlgebra alg;   // relabeled and shifted so z0 = 0, z_inf = inf,
                       // h_z|omega = 0 for all z in K*
  Cone omega_dual;
  bool elliptic = false;
  bool generic_zinf = false;
  QVec h;              // h(m) = <m, h>, the linear extension of h_0|omega
  Int d = 1;           // smallest positive integer with d*h integral
  ZMat L_basis;        // HNF basis of {m : h(m) in Z}
  ZVec m1;             // {h(m1)} = 1/d; zero when d = 1
  MobiusMap relabel;
  IsoWitness shift_witness;
  HorizontalFrame original;
  // caches filled by normalize_frame
  Cone sigma1_hat;                  // sigma_1 of the hat-cone construction
  std::vector<Cone> refinement_cells;  // maximal cones of the full quasifan
};

namespace detail {

inline ZVec solve_m1(const QVec& h, const Int& d, size_t n) {
  if (d == 1) return zvec_zero(n);
  for (Int shell = 1; shell <= 4 * d; ++shell) {
    ZMat shell_pts;
    ZVec x(n);
    auto rec = [&](auto&& self, size_t j) -> void {
      if (j == n) {
        if (linf_norm(x) == shell) shell_pts.push_back(x);
        return;
      }
      for (Int v = -shell; v <= shell; ++v) {
        x[j] = v;
        self(self, j + 1);
      }
    };
    rec(rec, 0);
    std::sort(shell_pts.begin(), shell_pts.end(), LexLess{});
    for (auto& m : shell_pts)
      if (rat_frac(dot(m, h)) == make_rat(1, d)) return m;
  }
  fail(ErrorCode::Internal, "no m1 with {h(m1)} = 1/d found");
}

// sigma_1 of the hat-cone construction: all extremal rays of sigma-hat
// except the one spanned by (h, 1). Over P^1 the hat cone also carries the
// infinity coefficient, widened to the tail omega, at height -1.
inline Cone hat_sigma_one(const NormalizedFrame& nf);

}  // namespace detail

inline NormalizedFrame normalize_frame(const GradedAlgebra& a, const HorizontalFrame& fr) {
  NormalizedFrame nf;
  nf.original = fr;
  nf.omega_dual = fr.omega_dual;
  nf.elliptic = a.div.curve.kind == Curve::Kind::ProjectiveLine;
  nf.generic_zinf = fr.generic_zinf;
  // move z0 to 0 (and z_inf to infinity)
  MobiusMap mu = MobiusMap::identity();
  if (!nf.elliptic) {
    if (!(fr.z0 == CurvePoint::scalar(0))) mu = MobiusMap::shift(fr.z0.z);
  } else {
    CurvePoint zinf = *fr.z_inf;
    if (fr.z0.is_infinity())
      mu = MobiusMap::invert_at(zinf.z);
    else if (zinf.is_infinity()) {
      if (!(fr.z0 == CurvePoint::scalar(0))) mu = MobiusMap::shift(fr.z0.z);
    } else
      mu = MobiusMap::two_point(fr.z0.z, zinf.z);
  }
  nf.relabel = mu;
  PolyhedralDivisor dv = mu.is_identity() ? a.div : relabel_points(a.div, mu);
  // kill the integral restrictions away from 0 and infinity
  std::map<CurvePoint, ZVec> shifts;
  for (auto& [p, tp] : dv.coeffs) {
    if (p.is_infinity()) continue;
    if (p.is_scalar() && p.z == 0) continue;
    QVec form = detail::restriction_form(dv, p, fr.omega_dual);
    if (is_zero(form)) continue;
    auto v = to_z(form);
    if (!v) fail(ErrorCode::Internal, "normalization hit a non-integral restriction");
    shifts[p] = *v;
  }
  auto [shifted, witness] = apply_principal_shift(dv, shifts);
  nf.shift_witness = witness;
  nf.alg = make_algebra(shifted);
  // frame data
  nf.h = detail::restriction_form(nf.alg.div, CurvePoint::scalar(0), fr.omega_dual);
  Int d = 1;
  for (auto& x : nf.h) d = lcm_int(d, x.get_den());
  nf.d = d;
  // L = {m : h(m) in Z} as the projection of ker(dh . m + d k = 0)
  size_t n = a.rank();
  if (d == 1) {
    ZMat id(n, zvec_zero(n));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    nf.L_basis = id;
  } else {
    ZVec row(n + 1);
    for (size_t i = 0; i < n; ++i) {
      Rat scaled = nf.h[i] * Rat(d);
      row[i] = scaled.get_num();
    }
    row[n] = d;
    ZMat ker = z_kernel({row});
    ZMat gens;
    for (auto& kv : ker) gens.push_back(ZVec(kv.begin(), kv.end() - 1));
    nf.L_basis = lattice_hnf(gens);
  }
  nf.m1 = detail::solve_m1(nf.h, nf.d, n);
  nf.sigma1_hat = detail::hat_sigma_one(nf);
  nf.refinement_cells = divisor_quasifan(nf.alg.div).maximal_cones;
  return nf;
}

inline Cone detail::hat_sigma_one(const NormalizedFrame& nf) {
  size_t n = nf.alg.rank();
  Cone omega = dual_cone(nf.omega_dual);  // N-side
  ZMat gens;
  for (auto& r : omega.rays) {
    ZVec g = r;
    g.push_back(0);
    gens.push_back(g);
  }
  for (auto& l : omega.lin) {
    ZVec g = l;
    g.push_back(0);
    gens.push_back(g);
    gens.push_back(vneg(g));
  }
  QVec rho_q = nf.h;
  rho_q.push_back(1);
  ZVec rho = primitive(rho_q);
  gens.push_back(rho);
  if (nf.elliptic) {
    const TailedPoly* dinf = nf.alg.div.coeff(CurvePoint::infinity());
    // Delta_inf widened to the tail omega: its support function on
    // omega_dual is h_inf restricted there
    TailedPoly delta_hat =
        dinf ? tailed_poly(dinf->vertices, omega) : neutral_poly(omega);
    for (auto& v : delta_hat.vertices) {
      QVec g = v;
      g.push_back(-1);
      gens.push_back(primitive(g));
    }
  }
  Cone hat = cone_from_rays(n + 1, Side::N, gens);
  auto rep = canonical_ray_of(hat, rho);
  if (!rep) fail(ErrorCode::Internal, "(h,1) is not an extremal ray of the hat cone");
  ZMat rest;
  for (auto& r : hat.rays)
    if (!(r == *rep)) rest.push_back(r);
  for (auto& l : hat.lin) {
    rest.push_back(l);
    rest.push_back(vneg(l));
  }
  return cone_from_rays(n + 1, Side::N, rest);
}

// Condition (ii): (e, -1/d - h(e)) lies in S_rho of the hat cone.
inline bool degree_admissible(const NormalizedFrame& nf, const ZVec& e) {
  if (!in_lattice(vadd(e, nf.m1), nf.L_basis)) return false;  // e in L - m1
  Rat r = Rat(-1, 1) / Rat(nf.d) - dot(e, nf.h);
  if (!rat_is_int(r)) return false;
  QVec er = to_q(e);
  er.push_back(r);
  for (auto& g : nf.sigma1_hat.generators())
    if (dot(to_q(g), er) < 0) return false;
  return true;
}

inline Int degree_r(const NormalizedFrame& nf, const ZVec& e) {
  Rat r = Rat(-1, 1) / Rat(nf.d) - dot(e, nf.h);
  if (!rat_is_int(r)) fail(ErrorCode::Internal, "r is not integral for an admissible degree");
  return r.get_num();
}

// ---- the floor conditions (iii)-(v) ----

struct ConditionReport {
  bool holds = true;
  std::string failed_condition;  // "z=<point>", "z=0", "z=inf"
  std::optional<ZVec> witness_m;
};

namespace detail {

struct CondSpec {
  std::string name;
  // phi = scale * h_z; the condition is floor(phi(m+e)) - floor(phi(m)) >= T
  CurvePoint z;
  Int scale = 1;
  Rat T = 1;
  enum class Guard { None, ValueNonzero, ValueBelowLinear } guard = Guard::None;
};

struct CellForm {
  Cone cell;
  QVec form;  // unscaled linear form of h_z on the cell
};

// All data needed to decide one condition exactly.
struct CondData {
  CondSpec spec;
  std::vector<CellForm> cells;  // refinement cells with h_z forms
  QVec h;            // the frame's linear extension (for the z=0 guard)
  Cone weight;       // sigma^vee
  Int D = 1;         // common denominator of everything in sight
};

inline Rat eval_h(const PolyhedralDivisor& dv, const CurvePoint& z, const ZVec& m) {
  const TailedPoly* tp = dv.coeff(z);
  if (!tp) return Rat(0);
  return support_value(*tp, m);
}

// Direct evaluation of the condition at a single m (guard included); true if
// the instance at m is satisfied.
inline bool condition_at(const NormalizedFrame& nf, const CondSpec& spec, const ZVec& e,
                         const ZVec& m) {
  const PolyhedralDivisor& dv = nf.alg.div;
  ZVec me = vadd(m, e);
  Rat hz_me = eval_h(dv, spec.z, me);
  if (spec.guard == CondSpec::Guard::ValueNonzero && hz_me == 0) return true;
  if (spec.guard == CondSpec::Guard::ValueBelowLinear && hz_me == dot(me, nf.h)) return true;
  Rat u = Rat(spec.scale) * hz_me;
  Rat v = Rat(spec.scale) * eval_h(dv, spec.z, m);
  return Rat(rat_floor(u)) - Rat(rat_floor(v)) >= spec.T;
}

inline std::vector<CondSpec> condition_specs(const NormalizedFrame& nf, const ZVec& e) {
  std::vector<CondSpec> specs;
  Rat dhe = Rat(nf.d) * dot(e, nf.h);
  if (!rat_is_int(dhe)) fail(ErrorCode::Internal, "d*h(e) is not integral");
  for (auto& [p, tp] : nf.alg.div.coeffs) {
    if (p.is_infinity()) continue;
    if (p.is_scalar() && p.z == 0) continue;
    CondSpec s;
    s.name = "z=" + point_str(p);
    s.z = p;
    s.scale = 1;
    s.T = 1;
    s.guard = CondSpec::Guard::ValueNonzero;
    specs.push_back(s);
  }
  if (nf.alg.div.coeff(CurvePoint::scalar(0))) {
    CondSpec s;
    s.name = "z=0";
    s.z = CurvePoint::scalar(0);
    s.scale = nf.d;
    s.T = Rat(1) + dhe;
    s.guard = CondSpec::Guard::ValueBelowLinear;
    specs.push_back(s);
  }
  if (nf.elliptic) {
    CondSpec s;
    s.name = "z=inf";
    s.z = CurvePoint::infinity();
    s.scale = nf.d;
    s.T = Rat(-1) - dhe;
    s.guard = CondSpec::Guard::None;
    specs.push_back(s);
  }
  return specs;
}

inline CondData condition_data(const NormalizedFrame& nf, const CondSpec& spec,
                               const std::vector<Cone>& refinement_cells) {
  CondData cd;
  cd.spec = spec;
  cd.h = nf.h;
  cd.weight = nf.alg.weight;
  const TailedPoly* tp = nf.alg.div.coeff(spec.z);
  SupportFunction sf;
  bool have = tp != nullptr;
  if (have) sf = support_function(*tp);
  Int D = nf.d;
  for (auto& cell : refinement_cells) {
    CellForm cf;
    cf.cell = cell;
    cf.form = have ? sf.piece_containing(cell).form : qvec_zero(nf.alg.rank());
    for (auto& x : cf.form) D = lcm_int(D, x.get_den());
    cd.cells.push_back(cf);
  }
  for (auto& x : nf.h) D = lcm_int(D, x.get_den());
  cd.D = D;
  return cd;
}

// Exact decision of "for all m in weight cone with m+e in weight cone:
// guard(m) => floor(phi(m+e)) - floor(phi(m)) >= T" via cell pairs and
// residue classes modulo D*M; complete because each linear piece dominates
// the function, making the floor-difference drift nonnegative on each cell.
inline std::optional<ZVec> condition_counterexample(const NormalizedFrame& nf, const CondData& cd,
                                                    const ZVec& e) {
  size_t n = nf.alg.rank();
  const Int& D = cd.D;
  Rat gran = make_rat(1, D);
  for (auto& c_minus : cd.cells) {
    for (auto& c_plus : cd.cells) {
      QVec gm = vscale(Rat(cd.spec.scale), c_minus.form);
      QVec gp = vscale(Rat(cd.spec.scale), c_plus.form);
      QVec drift = vsub(gp, gm);
      Rat gpe = dot(e, gp);
      // quick skip: the largest possible threshold is T - gpe + 1
      if (cd.spec.T - gpe + 1 <= 0) continue;
      // guard constraints that do not depend on the residue class
      HPoly base;
      base.n = n;
      for (auto& f : c_minus.cell.facets) base.add(to_q(f), 0);
      for (auto& q : c_minus.cell.eqs) {
        base.add(to_q(q), 0);
        base.add(to_q(vneg(q)), 0);
      }
      for (auto& f : c_plus.cell.facets) base.add(to_q(f), -Rat(dot(e, f)));
      for (auto& q : c_plus.cell.eqs) {
        base.add(to_q(q), -Rat(dot(e, q)));
        base.add(to_q(vneg(q)), Rat(dot(e, q)));
      }
      if (cd.spec.guard == CondSpec::Guard::ValueNonzero) {
        // h_z(m+e) <= -1/D, i.e. -form.(m) >= 1/D + form.(e)
        QVec row = vneg(c_plus.form);
        base.add(row, gran + dot(e, c_plus.form));
      } else if (cd.spec.guard == CondSpec::Guard::ValueBelowLinear) {
        // h(m+e) - h_z(m+e) >= 1/D
        QVec row = vsub(cd.h, c_plus.form);
        base.add(row, gran - dot(e, row));
      }
      // residue classes
      ZVec s(n, Int(0));
      auto rec = [&](auto&& self, size_t j) -> std::optional<ZVec> {
        if (j == n) {
          Rat fu = rat_frac(dot(vadd(s, e), gp));
          Rat fv = rat_frac(dot(s, gm));
          Rat tau = cd.spec.T - gpe + fu - fv;
          if (tau <= 0) return std::nullopt;  // drift >= 0 everywhere
          HPoly region = base;
          // drift(m) <= tau - 1/D
          region.add(vneg(drift), gran - tau);
          // substitute m = s + D u
          HPoly sub;
          sub.n = n;
          for (size_t i = 0; i < region.a.size(); ++i) {
            QVec row = vscale(Rat(D), region.a[i]);
            sub.add(row, region.b[i] - dot(s, region.a[i]));
          }
          auto u = some_lattice_point(sub);
          if (!u) return std::nullopt;
          ZVec m = s;
          for (size_t i = 0; i < n; ++i) m[i] += D * (*u)[i];
          return m;
        }
        for (Int v = 0; v < D; ++v) {
          s[j] = v;
          if (auto r = self(self, j + 1)) return r;
        }
        return std::nullopt;
      };
      if (auto m = rec(rec, 0)) {
        if (condition_at(nf, cd.spec, e, *m))
          fail(ErrorCode::Internal, "decision procedure produced a bogus witness");
        return m;
      }
    }
  }
  return std::nullopt;
}

// eq7-style sufficient test: every linear piece away from the frame cone
// pays at least the required increment on e.
inline bool sufficient_linear_test(const NormalizedFrame& nf, const ZVec& e) {
  for (auto& [p, tp] : nf.alg.div.coeffs) {
    if (p.is_infinity()) continue;
    SupportFunction sf = support_function(tp);
    bool at_zero = p.is_scalar() && p.z == 0;
    for (auto& piece : sf.pieces) {
      if (piece.cone.contains(nf.omega_dual)) continue;
      Rat ge = dot(e, piece.form);
      if (at_zero) {
        if (!(ge >= make_rat(1, nf.d) + dot(e, nf.h))) return false;
      } else {
        if (!(ge >= 1)) return false;
      }
    }
  }
  if (nf.elliptic && !nf.omega_dual.contains(e)) return false;
  return true;
}

}  // namespace detail

inline ConditionReport check_conditions(const NormalizedFrame& nf, const ZVec& e,
                                        const Int& scan_norm = 8) {
  ConditionReport rep;
  auto specs = detail::condition_specs(nf, e);
  // fast path 1: a small violating m settles the matter
  {
    ZVec m(nf.alg.rank());
    auto rec = [&](auto&& self, size_t j) -> bool {
      if (j == m.size()) {
        if (!nf.alg.weight.contains(m)) return false;
        ZVec me = vadd(m, e);
        if (!nf.alg.weight.contains(me)) return false;
        for (auto& spec : specs) {
          if (!detail::condition_at(nf, spec, e, m)) {
            rep.holds = false;
            rep.failed_condition = spec.name;
            rep.witness_m = m;
            return true;
          }
        }
        return false;
      }
      for (Int v = -scan_norm; v <= scan_norm; ++v) {
        m[j] = v;
        if (self(self, j + 1)) return true;
      }
      return false;
    };
    if (rec(rec, 0)) return rep;
  }
  // fast path 2: the sufficient linear inequalities
  if (detail::sufficient_linear_test(nf, e)) return rep;
  // exact decision per condition
  for (auto& spec : specs) {
    auto cd = detail::condition_data(nf, spec, nf.refinement_cells);
    if (auto m = detail::condition_counterexample(nf, cd, e)) {
      rep.holds = false;
      rep.failed_condition = spec.name;
      rep.witness_m = m;
      return rep;
    }
  }
  return rep;
}

// ---- the derivation ----

struct HorizontalLND {
  NormalizedFrame frame;
  ZVec e;
  Int r;
  Rat scale = 1;

  // coefficients h(mu_i) of the partial-derivative terms
  QVec nu_coeffs() const { return frame.h; }
};

inline HorizontalLND build_lnd(const NormalizedFrame& nf, const ZVec& e, const Rat& lambda = 1) {
  if (!degree_admissible(nf, e))
    fail(ErrorCode::ConditionViolated, "degree " + vec_str(e) + " is not admissible");
  auto rep = check_conditions(nf, e);
  if (!rep.holds)
    fail(ErrorCode::ConditionViolated,
         "conditions fail at " + rep.failed_condition + " for m = " + vec_str(*rep.witness_m));
  HorizontalLND lnd;
  lnd.frame = nf;
  lnd.e = e;
  lnd.r = degree_r(nf, e);
  lnd.scale = lambda;
  return lnd;
}

// d(f chi^m) = scale * t^r * (t f' + h(m) f) chi^{m+e}.
inline HomogeneousElement horizontal_apply(const HorizontalLND& lnd, const HomogeneousElement& x) {
  const GradedAlgebra& a = lnd.frame.alg;
  RatFun body = RatFun::t() * x.fn.derivative() + x.fn * dot(x.degree, lnd.frame.h);
  RatFun f = RatFun::t_pow(lnd.r) * body * lnd.scale;
  ZVec deg = vadd(x.degree, lnd.e);
  if (f.is_zero()) return {deg, f};
  if (!element_member(a, deg, f))
    fail(ErrorCode::MembershipViolation, "horizontal image escapes its graded piece");
  return {deg, f};
}

// ---- kernel ----

struct KernelDescription {
  Cone omega_dual;
  ZMat L_basis;
  ZMat degree_generators;                              // semigroup generators of omega_dual ∩ L
  std::vector<std::pair<ZVec, FactoredFun>> witnesses;  // phi_m per generator degree
};

inline KernelDescription horizontal_kernel(const NormalizedFrame& nf) {
  KernelDescription kd;
  kd.omega_dual = nf.omega_dual;
  kd.L_basis = nf.L_basis;
  size_t n = nf.alg.rank();
  // omega_dual in L-coordinates
  ZMat ineqs;
  for (auto& f : nf.omega_dual.facets) {
    ZVec row(nf.L_basis.size());
    for (size_t j = 0; j < nf.L_basis.size(); ++j) row[j] = dot(f, nf.L_basis[j]);
    ineqs.push_back(row);
  }
  ZMat eqs;
  for (auto& q : nf.omega_dual.eqs) {
    ZVec row(nf.L_basis.size());
    for (size_t j = 0; j < nf.L_basis.size(); ++j) row[j] = dot(q, nf.L_basis[j]);
    eqs.push_back(row);
  }
  Cone local = cone_from_inequalities(nf.L_basis.size(), Side::M, ineqs, eqs);
  for (auto& y : semigroup_generators(local)) {
    ZVec m = zvec_zero(n);
    for (size_t j = 0; j < nf.L_basis.size(); ++j) m = vadd(m, vscale(y[j], nf.L_basis[j]));
    kd.degree_generators.push_back(m);
  }
  std::sort(kd.degree_generators.begin(), kd.degree_generators.end(), LexLess{});
  for (auto& m : kd.degree_generators) {
    FactoredFun phi;
    Rat hm = dot(m, nf.h);
    if (!rat_is_int(hm)) fail(ErrorCode::Internal, "kernel degree outside L");
    if (hm != 0) phi.orders[Rat(0)] = -hm.get_num();
    kd.witnesses.push_back({m, phi});
  }
  return kd;
}

// ---- equivalence classes ----

struct HorizontalClass {
  HorizontalFrame frame;
  NormalizedFrame normalized;
  std::optional<ZVec> sample_e;  // certificate degree, when found
  std::optional<Int> sample_r;
  bool not_found_within_bound = false;
};

struct HorizontalClassReport {
  bool supported = true;  // false on non-rational curves
  std::string reason;
  bool infinite = false;
  std::optional<Cone> infinite_witness;
  std::vector<HorizontalClass> classes;
};

// Searches for an admissible certificate degree in growing max-norm shells.
inline std::optional<ZVec> find_sample_degree(const NormalizedFrame& nf, const Int& search_norm) {
  for (Int shell = 0; shell <= search_norm; ++shell) {
    ZMat cands;
    ZVec e(nf.alg.rank());
    auto rec = [&](auto&& self, size_t j) -> void {
      if (j == e.size()) {
        if (linf_norm(e) == shell) cands.push_back(e);
        return;
      }
      for (Int v = -shell; v <= shell; ++v) {
        e[j] = v;
        self(self, j + 1);
      }
    };
    rec(rec, 0);
    std::sort(cands.begin(), cands.end(), LexLess{});
    for (auto& cand : cands) {
      if (!degree_admissible(nf, cand)) continue;
      if (check_conditions(nf, cand).holds) return cand;
    }
  }
  return std::nullopt;
}

inline HorizontalClassReport horizontal_equivalence_classes(const GradedAlgebra& a,
                                                            const Int& search_norm = 24) {
  HorizontalClassReport rep;
  if (a.div.curve.kind == Curve::Kind::Abstract) {
    rep.supported = false;
    rep.reason = "curve is not rational";
    return rep;
  }
  // infinite family detection over P^1
  if (a.div.curve.kind == Curve::Kind::ProjectiveLine) {
    for (auto& omega : divisor_quasifan(a.div).maximal_cones) {
      if (detail::non_integral_points(a.div, omega, {}).size() <= 1) {
        rep.infinite = true;
        rep.infinite_witness = omega;
        break;
      }
    }
  }
  for (auto& fr : admissible_frames(a)) {
    HorizontalClass cls;
    cls.frame = fr;
    cls.normalized = normalize_frame(a, fr);
    cls.sample_e = find_sample_degree(cls.normalized, search_norm);
    if (cls.sample_e)
      cls.sample_r = degree_r(cls.normalized, *cls.sample_e);
    else
      cls.not_found_within_bound = true;
    rep.classes.push_back(std::move(cls));
  }
  return rep;
}

}  // namespace tvl
