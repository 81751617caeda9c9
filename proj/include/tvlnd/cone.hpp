// Rational polyhedral cones in double description: canonical extreme rays
// (representatives orthogonal to the lineality space), lineality lattice
// basis, primitive inner facet normals and span equations. Duality is a
// field swap, so dual(dual(c)) == c holds on the nose.
#pragma once

#include "tvlnd/linalg.hpp"

#include <set>

namespace tvl {

enum class Side { M, N };

inline Side flip(Side s) { return s == Side::M ? Side::N : Side::M; }

namespace detail {

// Extreme rays of {x : ineq x >= 0, eq x = 0} modulo its lineality space.
// Returns canonical primitive representatives (orthogonal to the lineality)
// and a rational basis of the lineality space.
struct RayResult {
  ZMat rays;
  QMat lineality;
};

inline RayResult enumerate_rays(const QMat& ineq, const QMat& eq, size_t n) {
  // lineality = null(ineq) ∩ null(eq)
  QMat all = ineq;
  for (auto& r : eq) all.push_back(r);
  QMat lin = all.empty() ? [&] {
    QMat id(n, qvec_zero(n));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }()
                         : nullspace(all);
  // search space W = null(eq) ∩ lin⊥
  QMat constraints = eq;
  for (auto& l : lin) constraints.push_back(l);
  QMat w;
  if (constraints.empty()) {
    w.assign(n, qvec_zero(n));
    for (size_t i = 0; i < n; ++i) w[i][i] = 1;
  } else {
    w = nullspace(constraints);
  }
  size_t k = w.size();
  RayResult out;
  out.lineality = lin;
  if (k == 0) return out;
  // restrict inequalities to W coordinates
  QMat a(ineq.size(), QVec(k));
  for (size_t i = 0; i < ineq.size(); ++i)
    for (size_t j = 0; j < k; ++j) a[i][j] = dot(ineq[i], w[j]);
  auto lift = [&](const QVec& y) {
    QVec v = qvec_zero(n);
    for (size_t j = 0; j < k; ++j) v = vadd(v, vscale(y[j], w[j]));
    return v;
  };
  std::set<ZVec, LexLess> found;
  auto consider = [&](const QVec& y) {
    for (auto& row : a)
      if (dot(row, y) < 0) return;
    ZVec v = primitive(lift(y));
    if (!is_zero(v)) found.insert(v);
  };
  if (k == 1) {
    QVec y{Rat(1)};
    consider(y);
    y[0] = -1;
    consider(y);
  } else {
    // every extreme ray has an active set of rank k-1
    std::vector<size_t> idx(ineq.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<size_t> sel;
    auto rec = [&](auto&& self, size_t start) -> void {
      if (sel.size() == k - 1) {
        QMat sub;
        for (size_t i : sel) sub.push_back(a[i]);
        QMat ns = nullspace(sub);
        if (ns.size() != 1) return;
        consider(ns[0]);
        consider(vneg(ns[0]));
        return;
      }
      for (size_t i = start; i < a.size(); ++i) {
        sel.push_back(i);
        self(self, i + 1);
        sel.pop_back();
      }
    };
    rec(rec, 0);
  }
  out.rays.assign(found.begin(), found.end());
  return out;
}

inline ZMat lineality_lattice(const QMat& lin) {
  ZMat gens;
  for (auto& l : lin) gens.push_back(primitive(l));
  return saturated_span_basis(gens);
}

}  // namespace detail

struct Cone {
  size_t n = 0;
  Side side = Side::N;
  ZMat rays;    // canonical reps mod lineality, primitive, sorted
  ZMat lin;     // saturated HNF basis of the lineality lattice
  ZMat facets;  // primitive inner normals, orthogonal to eqs, sorted
  ZMat eqs;     // saturated HNF basis of span(C)^perp
  size_t dim = 0;

  bool operator==(const Cone& o) const {
    return n == o.n && facets == o.facets && eqs == o.eqs;
  }
  bool operator<(const Cone& o) const {
    if (eqs != o.eqs) return LexLessMat(eqs, o.eqs);
    return LexLessMat(facets, o.facets);
  }
  static bool LexLessMat(const ZMat& a, const ZMat& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      int c = lex_cmp(a[i], b[i]);
      if (c) return c < 0;
    }
    return false;
  }

  bool pointed() const { return lin.empty(); }
  bool is_full_dim() const { return dim == n; }

  bool contains(const ZVec& x) const {
    for (auto& e : eqs)
      if (dot(e, x) != 0) return false;
    for (auto& f : facets)
      if (dot(f, x) < 0) return false;
    return true;
  }
  bool contains(const QVec& x) const {
    for (auto& e : eqs)
      if (dot(e, x) != 0) return false;
    for (auto& f : facets)
      if (dot(f, x) < 0) return false;
    return true;
  }
  bool contains(const Cone& c) const {
    for (auto& r : c.rays)
      if (!contains(r)) return false;
    for (auto& l : c.lin)
      if (!contains(l) || !contains(vneg(l))) return false;
    return true;
  }
  bool interior_contains(const QVec& x) const {
    // relative interior
    for (auto& e : eqs)
      if (dot(e, x) != 0) return false;
    for (auto& f : facets)
      if (dot(f, x) <= 0) return false;
    return true;
  }

  // All generators (rays plus +-lineality basis).
  ZMat generators() const {
    ZMat g = rays;
    for (auto& l : lin) {
      g.push_back(l);
      g.push_back(vneg(l));
    }
    return g;
  }

  // A relative-interior lattice point (sum of generators; 0 for the origin).
  ZVec relint_point() const {
    ZVec p = zvec_zero(n);
    for (auto& r : rays) p = vadd(p, r);
    return p;
  }
};

inline Cone cone_from_inequalities(size_t n, Side side, const ZMat& ineqs, const ZMat& eqs_in) {
  auto rr = detail::enumerate_rays(to_q(ineqs), to_q(eqs_in), n);
  Cone c;
  c.n = n;
  c.side = side;
  c.rays = rr.rays;
  c.lin = detail::lineality_lattice(rr.lineality);
  // facets: extreme rays of the dual cone {y : <r,y> >= 0, <l,y> = 0}
  ZMat gen = c.rays;
  QMat dual_eq;
  for (auto& l : c.lin) dual_eq.push_back(to_q(l));
  auto dual = detail::enumerate_rays(to_q(gen), dual_eq, n);
  c.facets = dual.rays;
  c.eqs = detail::lineality_lattice(dual.lineality);
  c.dim = n - c.eqs.size();
  return c;
}

inline Cone cone_from_rays(size_t n, Side side, const ZMat& gens) {
  // dual description first: dual(C) = {y : <g,y> >= 0}
  auto dual = detail::enumerate_rays(to_q(gens), {}, n);
  Cone c;
  c.n = n;
  c.side = side;
  c.facets = dual.rays;
  c.eqs = detail::lineality_lattice(dual.lineality);
  auto rr = detail::enumerate_rays(to_q(c.facets), to_q(c.eqs), n);
  c.rays = rr.rays;
  c.lin = detail::lineality_lattice(rr.lineality);
  c.dim = n - c.eqs.size();
  return c;
}

inline Cone cone_zero(size_t n, Side side) { return cone_from_rays(n, side, {}); }

inline Cone cone_full(size_t n, Side side) {
  return cone_from_inequalities(n, side, {}, {});
}

inline Cone dual_cone(const Cone& c) {
  Cone d;
  d.n = c.n;
  d.side = flip(c.side);
  d.rays = c.facets;
  d.lin = c.eqs;
  d.facets = c.rays;
  d.eqs = c.lin;
  d.dim = c.n - c.lin.size();
  return d;
}

inline Cone intersect(const Cone& a, const Cone& b) {
  if (a.n != b.n) fail(ErrorCode::Internal, "cone ambient mismatch");
  ZMat ineqs = a.facets, eqs = a.eqs;
  for (auto& f : b.facets) ineqs.push_back(f);
  for (auto& e : b.eqs) eqs.push_back(e);
  return cone_from_inequalities(a.n, a.side, ineqs, eqs);
}

inline std::vector<ZVec> extremal_rays(const Cone& c) { return c.rays; }

// Canonical representative of a ray of c (projection mod lineality, primitive).
inline std::optional<ZVec> canonical_ray_of(const Cone& c, const ZVec& ray) {
  if (!c.contains(ray)) return std::nullopt;
  QVec v = to_q(ray);
  if (!c.lin.empty()) v = vsub(v, project_onto_span(v, to_q(c.lin)));
  ZVec rep = primitive(v);
  for (auto& r : c.rays)
    if (r == rep) return rep;
  return std::nullopt;
}

// The codimension-1 face of dual_cone(c) orthogonal to an extremal ray of c.
inline Cone dual_face(const Cone& c, const ZVec& ray) {
  auto rep = canonical_ray_of(c, ray);
  if (!rep) fail(ErrorCode::NotExtremalRay, "dual_face: not an extremal ray: " + vec_str(ray));
  Cone d = dual_cone(c);
  ZMat eqs = d.eqs;
  eqs.push_back(*rep);
  return cone_from_inequalities(d.n, d.side, d.facets, eqs);
}

// Maximal linear subspace contained in c, as a cone.
inline Cone max_subspace(const Cone& c) {
  ZMat gens;
  for (auto& l : c.lin) {
    gens.push_back(l);
    gens.push_back(vneg(l));
  }
  return cone_from_rays(c.n, c.side, gens);
}

}  // namespace tvl
