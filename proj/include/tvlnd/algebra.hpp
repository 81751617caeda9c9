// The M-graded algebra attached to a proper polyhedral divisor on a curve:
// graded pieces, homogeneous elements with exact membership, distinguished
// generators phi_m, and a bounded generator search.
#pragma once

#include "tvlnd/sections.hpp"

namespace tvl {

struct GradedAlgebra {
  enum class Type { Elliptic, Parabolic, Hyperbolic, OtherNonElliptic };
  PolyhedralDivisor div;
  Cone weight;  // sigma^vee, M-side
  Type type = Type::Hyperbolic;

  size_t rank() const { return weight.n; }
};

inline GradedAlgebra::Type classify_type(const PolyhedralDivisor& d) {
  if (d.curve.projective()) return GradedAlgebra::Type::Elliptic;
  if (d.sigma.dim == d.sigma.n) return GradedAlgebra::Type::Parabolic;
  if (d.sigma.dim == 0) return GradedAlgebra::Type::Hyperbolic;
  return GradedAlgebra::Type::OtherNonElliptic;
}

inline GradedAlgebra make_algebra(const PolyhedralDivisor& d) {
  GradedAlgebra a;
  a.div = d;
  a.weight = d.weight_cone();
  a.type = classify_type(d);
  return a;
}

inline std::string type_str(GradedAlgebra::Type t) {
  switch (t) {
    case GradedAlgebra::Type::Elliptic: return "elliptic";
    case GradedAlgebra::Type::Parabolic: return "parabolic";
    case GradedAlgebra::Type::Hyperbolic: return "hyperbolic";
    case GradedAlgebra::Type::OtherNonElliptic: return "other-non-elliptic";
  }
  return "?";
}

// ---- homogeneous elements (rational curves) ----

struct HomogeneousElement {
  ZVec degree;
  RatFun fn;

  bool is_zero() const { return fn.is_zero(); }
};

inline bool element_member(const GradedAlgebra& a, const ZVec& m, const RatFun& f) {
  if (f.is_zero()) return true;
  if (!a.weight.contains(m)) return false;
  return section_member(f, evaluate(a.div, m));
}

inline HomogeneousElement make_element(const GradedAlgebra& a, const ZVec& m, const RatFun& f) {
  if (!a.weight.contains(m))
    fail(ErrorCode::OutsideWeightCone, "element degree outside the weight cone");
  if (!element_member(a, m, f))
    fail(ErrorCode::MembershipViolation,
         "function " + ratfun_str(f) + " is not a section in degree " + vec_str(m));
  return {m, f};
}

inline HomogeneousElement multiply(const GradedAlgebra& a, const HomogeneousElement& x,
                                   const HomogeneousElement& y) {
  ZVec deg = vadd(x.degree, y.degree);
  RatFun f = x.fn * y.fn;
  if (f.is_zero()) return {deg, f};
  if (!element_member(a, deg, f))
    fail(ErrorCode::MembershipViolation, "product escapes its graded piece");
  return {deg, f};
}

inline std::vector<HomogeneousElement> graded_piece(const GradedAlgebra& a, const ZVec& m,
                                                    const Int& degree_bound = 8) {
  if (!a.weight.contains(m))
    fail(ErrorCode::OutsideWeightCone, "graded piece outside the weight cone");
  QDivisor dm = floor_div(evaluate(a.div, m));
  SectionBasis sb = sections_basis(dm, degree_bound);
  std::vector<HomogeneousElement> out;
  for (auto& f : sb.basis) out.push_back({m, f});
  return out;
}

inline DimReport graded_dim(const GradedAlgebra& a, const ZVec& m) {
  if (!a.weight.contains(m))
    fail(ErrorCode::OutsideWeightCone, "graded piece outside the weight cone");
  return sections_dim(floor_div(evaluate(a.div, m)));
}

// phi_m with div(phi_m) + D(m) = 0 exactly (restricted to the affine part on
// P^1), normalized to leading coefficient 1.
struct DistinguishedGenerator {
  ZVec degree;
  FactoredFun phi;
};

inline DistinguishedGenerator distinguished_generator(const GradedAlgebra& a, const ZVec& m) {
  if (a.div.curve.kind == Curve::Kind::Abstract)
    fail(ErrorCode::UnsupportedCurve, "phi_m needs a rational curve");
  QDivisor dm = evaluate(a.div, m);
  DistinguishedGenerator g;
  g.degree = m;
  for (auto& [p, v] : dm.coeffs) {
    if (p.is_infinity()) continue;
    if (!rat_is_int(v))
      fail(ErrorCode::NonIntegralDivisor,
           "D(m) is not integral at " + point_str(p) + " for m = " + vec_str(m));
    Int n = -v.get_num();
    if (n != 0) g.phi.orders[p.z] = n;
  }
  return g;
}

// ---- bounded generator search (rational curves) ----

namespace detail {

// Per-degree echelonized span of functions, vectorized over the common
// denominator of the graded piece.
struct PieceSpan {
  FactoredFun denom;  // multiply by this to clear allowed poles
  RatFun denom_fn;
  size_t cap = 0;  // vector length
  QMat rows;       // echelon rows

  static PieceSpan create(const GradedAlgebra& a, const ZVec& m, size_t tcap) {
    PieceSpan ps;
    QDivisor dm = floor_div(evaluate(a.div, m));
    Int extra = 0;
    for (auto& [p, v] : dm.coeffs) {
      if (!p.is_scalar()) continue;
      if (v > 0) ps.denom.orders[p.z] = v.get_num();
      extra += abs(v.get_num());
    }
    ps.denom_fn = ps.denom.expand();
    ps.cap = tcap + size_t(extra.get_ui()) + 3;
    return ps;
  }

  std::optional<QVec> vectorize(const RatFun& f) const {
    RatFun g = f * denom_fn;
    if (!(g.den == Poly::constant(1))) return std::nullopt;
    if (g.num.deg() >= int(cap)) return std::nullopt;
    QVec v = qvec_zero(cap);
    for (size_t i = 0; i < g.num.c.size(); ++i) v[i] = g.num.c[i];
    return v;
  }

  // Returns true (and absorbs the vector) when f extends the span.
  bool extend(const QVec& vec_in) {
    QVec v = vec_in;
    for (auto& row : rows) {
      size_t p = 0;
      while (p < cap && row[p] == 0) ++p;
      if (p < cap && v[p] != 0) {
        Rat f = v[p] / row[p];
        for (size_t j = p; j < cap; ++j) v[j] -= f * row[j];
      }
    }
    if (is_zero(v)) return false;
    rows.push_back(v);
    std::sort(rows.begin(), rows.end(), [this](const QVec& x, const QVec& y) {
      size_t px = 0, py = 0;
      while (px < cap && x[px] == 0) ++px;
      while (py < cap && y[py] == 0) ++py;
      return px < py;
    });
    return true;
  }

  bool contains(const RatFun& f) const {
    auto vec = vectorize(f);
    if (!vec) return false;
    QVec v = *vec;
    for (auto& row : rows) {
      size_t p = 0;
      while (p < cap && row[p] == 0) ++p;
      if (p < cap && v[p] != 0) {
        Rat fac = v[p] / row[p];
        for (size_t j = p; j < cap; ++j) v[j] -= fac * row[j];
      }
    }
    return is_zero(v);
  }
};

// All products of a growing generator list, organized as per-degree spans.
// Only products that extend the span of their degree are kept, so closures
// terminate; degrees wander at most `box` in max-norm.
struct ProductCloser {
  const GradedAlgebra& a;
  Int box;
  size_t tcap;
  std::map<ZVec, PieceSpan, LexLess> spans;
  std::vector<HomogeneousElement> states;  // span-extending products
  std::vector<HomogeneousElement> gens;

  ProductCloser(const GradedAlgebra& alg, const Int& b, size_t t) : a(alg), box(b), tcap(t) {
    HomogeneousElement one{zvec_zero(a.rank()), RatFun::constant(1)};
    span_of(one.degree).extend(*span_of(one.degree).vectorize(one.fn));
    states.push_back(one);
  }

  PieceSpan& span_of(const ZVec& m) {
    auto it = spans.find(m);
    if (it == spans.end()) it = spans.emplace(m, PieceSpan::create(a, m, tcap)).first;
    return it->second;
  }

  bool covered(const HomogeneousElement& x) {
    auto it = spans.find(x.degree);
    return it != spans.end() && it->second.contains(x.fn);
  }

  void try_product(const HomogeneousElement& s, const HomogeneousElement& g,
                   std::deque<HomogeneousElement>& queue) {
    ZVec deg = vadd(s.degree, g.degree);
    if (linf_norm(deg) > box) return;
    if (!a.weight.contains(deg)) return;
    RatFun f = s.fn * g.fn;
    auto& sp = span_of(deg);
    auto vec = sp.vectorize(f);
    if (!vec) return;  // beyond the working truncation
    if (sp.extend(*vec)) queue.push_back({deg, f});
  }

  void close(std::deque<HomogeneousElement>& queue) {
    while (!queue.empty()) {
      HomogeneousElement cur = queue.front();
      queue.pop_front();
      states.push_back(cur);
      for (auto& g : gens) try_product(cur, g, queue);
    }
  }

  void add_gen(const HomogeneousElement& g) {
    gens.push_back(g);
    std::deque<HomogeneousElement> queue;
    size_t snapshot = states.size();
    for (size_t i = 0; i < snapshot; ++i) try_product(states[i], g, queue);
    close(queue);
  }
};

inline std::map<ZVec, PieceSpan, LexLess> product_spans(const GradedAlgebra& a,
                                                        const std::vector<HomogeneousElement>& gens,
                                                        const Int& box, size_t tcap) {
  ProductCloser pc(a, box, tcap);
  for (auto& g : gens) pc.add_gen(g);
  return std::move(pc.spans);
}

}  // namespace detail

// Homogeneous elements generating all graded pieces with degree coordinates
// up to `bound` and section degrees up to `t_bound`; bounded-search
// minimality (reported, not proved). Deterministic order.
inline std::vector<HomogeneousElement> generators_up_to(const GradedAlgebra& a, const Int& bound,
                                                        const Int& t_bound = 2) {
  if (a.div.curve.kind == Curve::Kind::Abstract)
    fail(ErrorCode::UnsupportedCurve, "use abstract_generators on abstract curves");
  size_t tcap = size_t(t_bound.get_ui()) + 2;
  Int box = bound + 2;  // wander slack for cancelling degrees
  // candidate degrees sorted by (max-norm, lex)
  ZMat degrees = lattice_points_in_cone_box(a.weight, bound);
  std::sort(degrees.begin(), degrees.end(), [](const ZVec& x, const ZVec& y) {
    Int nx = linf_norm(x), ny = linf_norm(y);
    if (nx != ny) return nx < ny;
    return lex_cmp(x, y) < 0;
  });
  std::vector<HomogeneousElement> gens;
  {
    detail::ProductCloser pc(a, box, tcap);
    // two passes: coverage only grows, the second pass verifies stability
    for (int pass = 0; pass < 2; ++pass) {
      for (auto& m : degrees) {
        if (is_zero(m) && a.div.curve.projective()) continue;
        for (auto& x : graded_piece(a, m, t_bound)) {
          if (pc.covered(x)) continue;
          pc.add_gen(x);
          gens.push_back(x);
        }
      }
    }
  }
  // drop generators expressible in the others, latest first
  for (size_t i = gens.size(); i-- > 0;) {
    std::vector<HomogeneousElement> rest;
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    detail::ProductCloser pc(a, box, tcap);
    for (auto& g : rest) pc.add_gen(g);
    if (pc.covered(gens[i])) gens.erase(gens.begin() + long(i));
  }
  std::sort(gens.begin(), gens.end(), [](const HomogeneousElement& x, const HomogeneousElement& y) {
    Int nx = linf_norm(x.degree), ny = linf_norm(y.degree);
    if (nx != ny) return nx < ny;
    if (x.degree != y.degree) return lex_cmp(x.degree, y.degree) < 0;
    return x.fn.num.deg() < y.fn.num.deg();
  });
  return gens;
}

// ---- abstract curves: pole-order model ----
//
// For a divisor supported at a single point P on a genus-1 curve, graded
// pieces are filtered by pole order at P with the Weierstrass gap at 1.
// Elements are tracked as (degree, pole order); membership asks the order to
// be realizable and within floor(D(m)).

struct AbstractElement {
  ZVec degree;
  Int pole_order;
};

inline bool abstract_order_realizable(const GradedAlgebra& a, const Int& k) {
  if (k < 0) return false;
  if (a.div.curve.genus == 1) return k != 1;
  if (a.div.curve.genus == 0) return true;
  fail(ErrorCode::UnsupportedCurve, "pole-order model implemented for genus <= 1");
}

inline const CurvePoint& abstract_single_point(const GradedAlgebra& a) {
  if (a.div.coeffs.size() != 1)
    fail(ErrorCode::UnsupportedCurve, "pole-order model needs a single-point divisor");
  return a.div.coeffs.begin()->first;
}

inline bool abstract_member(const GradedAlgebra& a, const ZVec& m, const Int& k) {
  if (!a.weight.contains(m)) return false;
  if (!abstract_order_realizable(a, k)) return false;
  QDivisor dm = floor_div(evaluate(a.div, m));
  return Rat(k) <= dm.at(abstract_single_point(a));
}

inline AbstractElement abstract_multiply(const GradedAlgebra& a, const AbstractElement& x,
                                         const AbstractElement& y) {
  AbstractElement r{vadd(x.degree, y.degree), x.pole_order + y.pole_order};
  if (!abstract_member(a, r.degree, r.pole_order))
    fail(ErrorCode::MembershipViolation, "abstract product escapes its graded piece");
  return r;
}

// Generator degrees with pole orders for the single-point genus-1 model:
// BFS over reachable (degree, order) pairs, emitting a generator whenever a
// realizable order in a piece is not a sum of reachable orders.
inline std::vector<AbstractElement> abstract_generators(const GradedAlgebra& a, const Int& bound) {
  const CurvePoint& pt = abstract_single_point(a);
  ZMat degrees = lattice_points_in_cone_box(a.weight, bound);
  std::sort(degrees.begin(), degrees.end(), [](const ZVec& x, const ZVec& y) {
    Int nx = linf_norm(x), ny = linf_norm(y);
    if (nx != ny) return nx < ny;
    return lex_cmp(x, y) < 0;
  });
  // reachable orders per degree from products of emitted generators
  std::map<ZVec, std::set<Int>, LexLess> reach;
  reach[zvec_zero(a.rank())] = {Int(0)};
  std::vector<AbstractElement> gens;
  bool changed = true;
  while (changed) {
    changed = false;
    // close reach under products with gens
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto& g : gens) {
        std::vector<std::pair<ZVec, Int>> add;
        for (auto& [m, orders] : reach) {
          ZVec dm = vadd(m, g.degree);
          if (linf_norm(dm) > bound || !a.weight.contains(dm)) continue;
          for (auto& k : orders) {
            Int dk = k + g.pole_order;
            QDivisor dd = floor_div(evaluate(a.div, dm));
            if (Rat(dk) > dd.at(pt)) continue;
            add.push_back({dm, dk});
          }
        }
        for (auto& [dm, dk] : add)
          if (reach[dm].insert(dk).second) grew = true;
      }
    }
    for (auto& m : degrees) {
      if (is_zero(m)) continue;
      QDivisor dm = floor_div(evaluate(a.div, m));
      Int cap_at = dm.at(pt).get_num();
      for (Int k = 0; k <= cap_at; ++k) {
        if (!abstract_order_realizable(a, k)) continue;
        if (reach.count(m) && reach[m].count(k)) continue;
        gens.push_back({m, k});
        reach[m].insert(k);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  std::sort(gens.begin(), gens.end(), [](const AbstractElement& x, const AbstractElement& y) {
    Int sx = 0, sy = 0;
    for (auto& c : x.degree) sx += abs(c);
    for (auto& c : y.degree) sy += abs(c);
    if (sx != sy) return sx < sy;
    if (x.degree != y.degree) return lex_cmp(x.degree, y.degree) < 0;
    return x.pole_order < y.pole_order;
  });
  return gens;
}

}  // namespace tvl
