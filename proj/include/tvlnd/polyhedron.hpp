// Sigma-tailed polyhedra (compact part + pointed tail cone), their support
// functions and normal quasifans, Minkowski sums, and a small H/V-form
// toolkit for general rational polyhedra used by the exact decision
// procedures.
#pragma once

#include "tvlnd/cone.hpp"

namespace tvl {

// ---- general polyhedra: a_i . x >= b_i ----

struct HPoly {
  size_t n = 0;
  QMat a;
  QVec b;
  void add(const QVec& row, const Rat& rhs) {
    a.push_back(row);
    b.push_back(rhs);
  }
  bool contains(const ZVec& x) const {
    for (size_t i = 0; i < a.size(); ++i)
      if (dot(a[i], x) < b[i]) return false;
    return true;
  }
};

struct VRep {
  QMat verts;  // representatives of the minimal faces
  ZMat rays;   // primitive recession generators mod lineality
  ZMat lin;    // lattice basis of the recession lineality
  bool empty = true;
};

inline VRep vrep(const HPoly& p) {
  // homogenize: {(x,t) : a.x - b t >= 0, t >= 0}
  QMat ineq;
  for (size_t i = 0; i < p.a.size(); ++i) {
    QVec row = p.a[i];
    row.push_back(-p.b[i]);
    ineq.push_back(row);
  }
  QVec last = qvec_zero(p.n + 1);
  last[p.n] = 1;
  ineq.push_back(last);
  auto rr = detail::enumerate_rays(ineq, {}, p.n + 1);
  VRep v;
  for (auto& r : rr.rays) {
    if (r[p.n] > 0) {
      QVec x(p.n);
      for (size_t j = 0; j < p.n; ++j) x[j] = make_rat(r[j], r[p.n]);
      v.verts.push_back(x);
      v.empty = false;
    } else {
      v.rays.push_back(ZVec(r.begin(), r.end() - 1));
    }
  }
  ZMat lin_gens;
  for (auto& l : rr.lineality) {
    ZVec zl = primitive(l);
    // lineality of the homogenization lies in {t = 0}
    lin_gens.push_back(ZVec(zl.begin(), zl.end() - 1));
  }
  v.lin = saturated_span_basis(lin_gens);
  return v;
}

// First lattice point of the polyhedron in a deterministic scan, if any.
// Complete: any lattice point reduces into conv(verts) + [0,1]-box of the
// integral recession generators, which the scan box covers.
inline std::optional<ZVec> some_lattice_point(const HPoly& p) {
  VRep v = vrep(p);
  if (v.empty) return std::nullopt;
  std::vector<Int> lo(p.n), hi(p.n);
  for (size_t j = 0; j < p.n; ++j) {
    Rat mn = v.verts[0][j], mx = v.verts[0][j];
    for (auto& vert : v.verts) {
      mn = std::min(mn, vert[j]);
      mx = std::max(mx, vert[j]);
    }
    Rat lo_q = mn, hi_q = mx;
    for (auto& r : v.rays) {
      lo_q += Rat(std::min(Int(0), r[j]));
      hi_q += Rat(std::max(Int(0), r[j]));
    }
    for (auto& l : v.lin) {
      lo_q += Rat(std::min(Int(0), l[j])) + Rat(std::min(Int(0), Int(-l[j])));
      hi_q += Rat(std::max(Int(0), l[j])) + Rat(std::max(Int(0), Int(-l[j])));
    }
    lo[j] = rat_floor(lo_q);
    hi[j] = rat_ceil(hi_q);
  }
  Int cap = 1;
  for (size_t j = 0; j < p.n; ++j) {
    cap *= hi[j] - lo[j] + 1;
    if (cap > 4000000) fail(ErrorCode::Internal, "lattice scan box too large");
  }
  ZVec x(p.n);
  std::optional<ZVec> found;
  auto rec = [&](auto&& self, size_t j) -> bool {
    if (j == p.n) {
      if (p.contains(x)) {
        found = x;
        return true;
      }
      return false;
    }
    for (Int t = lo[j]; t <= hi[j]; ++t) {
      x[j] = t;
      if (self(self, j + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

// ---- sigma-tailed polyhedra ----

struct TailedPoly {
  QMat vertices;  // minimal vertex set, sorted lex
  Cone tail;      // pointed, N-side

  bool operator==(const TailedPoly& o) const {
    return vertices == o.vertices && tail == o.tail;
  }
  size_t rank() const { return tail.n; }
};

// Builds the canonical form: drops non-extreme candidate vertices.
inline TailedPoly tailed_poly(const QMat& points, const Cone& tail) {
  if (!tail.pointed()) fail(ErrorCode::NotPointed, "tail cone must be pointed");
  if (points.empty()) fail(ErrorCode::Internal, "tailed polyhedron needs a point");
  size_t n = tail.n;
  ZMat gens;
  for (auto& pt : points) {
    QVec h = pt;
    h.push_back(1);
    gens.push_back(primitive(h));
  }
  for (auto& r : tail.rays) {
    ZVec h = r;
    h.push_back(0);
    gens.push_back(h);
  }
  Cone hom = cone_from_rays(n + 1, tail.side, gens);
  if (!hom.pointed()) fail(ErrorCode::Internal, "tailed polyhedron homogenization not pointed");
  TailedPoly tp;
  tp.tail = tail;
  for (auto& r : hom.rays) {
    if (r[n] > 0) {
      QVec x(n);
      for (size_t j = 0; j < n; ++j) x[j] = make_rat(r[j], r[n]);
      tp.vertices.push_back(x);
    } else if (r[n] == 0) {
      ZVec dir(r.begin(), r.end() - 1);
      if (!tail.contains(dir))
        fail(ErrorCode::Internal, "recession direction escapes the tail cone");
    } else {
      fail(ErrorCode::Internal, "negative homogenization height");
    }
  }
  std::sort(tp.vertices.begin(), tp.vertices.end(), LexLess{});
  return tp;
}

// The neutral element: the tail cone itself.
inline TailedPoly neutral_poly(const Cone& tail) {
  return tailed_poly({qvec_zero(tail.n)}, tail);
}

inline TailedPoly minkowski_sum(const TailedPoly& a, const TailedPoly& b) {
  if (!(a.tail == b.tail)) fail(ErrorCode::TailMismatch, "Minkowski sum of different tails");
  QMat sums;
  for (auto& va : a.vertices)
    for (auto& vb : b.vertices) sums.push_back(vadd(va, vb));
  return tailed_poly(sums, a.tail);
}

inline TailedPoly translate(const TailedPoly& a, const QVec& p) {
  QMat verts;
  for (auto& v : a.vertices) verts.push_back(vadd(v, p));
  return tailed_poly(verts, a.tail);
}

// h_P(m) = min <m, P>; defined exactly on dual(tail).
inline Rat support_value(const TailedPoly& p, const ZVec& m) {
  Rat best;
  bool first = true;
  for (auto& v : p.vertices) {
    Rat val = dot(m, v);
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}
inline Rat support_value(const TailedPoly& p, const QVec& m) {
  Rat best;
  bool first = true;
  for (auto& v : p.vertices) {
    Rat val = dot(m, v);
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

// ---- piecewise linear support functions and quasifans ----

struct LinearPiece {
  Cone cone;  // M-side
  QVec form;  // element of N_Q: h(m) = <m, form> on the piece
};

struct SupportFunction {
  Cone domain;  // the weight cone the function lives on
  std::vector<LinearPiece> pieces;

  Rat operator()(const ZVec& m) const {
    for (auto& p : pieces)
      if (p.cone.contains(m)) return dot(m, p.form);
    fail(ErrorCode::OutsideWeightCone, "support function evaluated outside its domain");
  }
  const LinearPiece& piece_containing(const Cone& c) const {
    const LinearPiece* found = nullptr;
    for (auto& p : pieces)
      if (p.cone.contains(c)) {
        if (found) fail(ErrorCode::Internal, "support piece not unique for the given face");
        found = &p;
      }
    if (!found) fail(ErrorCode::Internal, "no support piece contains the given face");
    return *found;
  }
};

struct Quasifan {
  Cone support;
  std::vector<Cone> maximal_cones;  // sorted, full-dimensional within support
};

// Normal quasifan of a tailed polyhedron, together with the linear forms.
inline SupportFunction support_function(const TailedPoly& p) {
  SupportFunction sf;
  sf.domain = dual_cone(p.tail);
  for (auto& v : p.vertices) {
    ZMat ineqs;
    for (auto& w : p.vertices) {
      if (w == v) continue;
      ineqs.push_back(primitive(vsub(w, v)));
    }
    for (auto& r : p.tail.rays) ineqs.push_back(r);
    LinearPiece piece;
    piece.cone = cone_from_inequalities(p.rank(), flip(p.tail.side), ineqs, {});
    piece.form = v;
    sf.pieces.push_back(piece);
  }
  std::sort(sf.pieces.begin(), sf.pieces.end(),
            [](const LinearPiece& x, const LinearPiece& y) { return x.cone < y.cone; });
  return sf;
}

inline Quasifan normal_quasifan(const TailedPoly& p) {
  SupportFunction sf = support_function(p);
  Quasifan qf;
  qf.support = sf.domain;
  for (auto& piece : sf.pieces) qf.maximal_cones.push_back(piece.cone);
  std::sort(qf.maximal_cones.begin(), qf.maximal_cones.end());
  qf.maximal_cones.erase(std::unique(qf.maximal_cones.begin(), qf.maximal_cones.end()),
                         qf.maximal_cones.end());
  return qf;
}

inline Quasifan common_refinement(const std::vector<Quasifan>& fans) {
  if (fans.empty()) fail(ErrorCode::Internal, "refinement of no fans");
  for (auto& f : fans)
    if (!(f.support == fans[0].support))
      fail(ErrorCode::SupportMismatch, "quasifans have different supports");
  Quasifan acc = fans[0];
  for (size_t i = 1; i < fans.size(); ++i) {
    std::vector<Cone> next;
    for (auto& c1 : acc.maximal_cones)
      for (auto& c2 : fans[i].maximal_cones) {
        Cone c = intersect(c1, c2);
        if (c.dim == acc.support.dim) next.push_back(c);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc.maximal_cones = next;
  }
  return acc;
}

}  // namespace tvl
