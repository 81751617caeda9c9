// Hilbert bases of pointed rational cones (fundamental-parallelepiped
// enumeration over a ray triangulation) and semigroup generators for the
// general, possibly non-pointed case via the lattice quotient by the
// lineality.
#pragma once

#include "tvlnd/polyhedron.hpp"

#include <deque>

namespace tvl {

namespace detail {

// Enumerates lattice points of {sum t_i r_i : 0 <= t_i <= 1} for linearly
// independent integer rays.
inline ZMat parallelepiped_points(const ZMat& rays, size_t n) {
  size_t k = rays.size();
  QMat rt(n, QVec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) rt[j][i] = Rat(rays[i][j]);
  std::vector<Int> lo(n, Int(0)), hi(n, Int(0));
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < k; ++i) {
      lo[j] += std::min(Int(0), rays[i][j]);
      hi[j] += std::max(Int(0), rays[i][j]);
    }
  }
  ZMat out;
  ZVec x(n);
  auto rec = [&](auto&& self, size_t j) -> void {
    if (j == n) {
      auto t = solve(rt, to_q(x));
      if (!t) return;
      QVec back = qvec_zero(n);
      for (size_t i = 0; i < k; ++i) back = vadd(back, vscale((*t)[i], to_q(rays[i])));
      if (back != to_q(x)) return;
      for (auto& ti : *t)
        if (ti < 0 || ti > 1) return;
      out.push_back(x);
      return;
    }
    for (Int v = lo[j]; v <= hi[j]; ++v) {
      x[j] = v;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Triangulates a full-dimensional pointed cone into simplicial subcones
// using only its extreme rays.
inline std::vector<ZMat> triangulate(const Cone& c) {
  if (c.rays.size() == c.dim) return {c.rays};
  const ZVec& apex = c.rays[0];
  std::vector<ZMat> out;
  for (auto& f : c.facets) {
    if (dot(f, apex) == 0) continue;  // facet contains the apex
    ZMat facet_rays;
    for (auto& r : c.rays)
      if (dot(f, r) == 0) facet_rays.push_back(r);
    Cone facet = cone_from_rays(c.n, c.side, facet_rays);
    for (auto& simplex : triangulate(facet)) {
      ZMat s = simplex;
      s.push_back(apex);
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace detail

// Minimal generating set of cone ∩ Z^n for a pointed cone; deterministic
// (lex-sorted) order.
inline ZMat hilbert_basis(const Cone& c) {
  if (!c.pointed()) fail(ErrorCode::NotPointed, "hilbert_basis needs a pointed cone");
  if (c.dim == 0) return {};
  if (!c.is_full_dim()) {
    ZMat basis = saturated_span_basis(c.rays);
    QMat qbasis = to_q(basis);
    ZMat coords;
    for (auto& r : c.rays) {
      auto cc = coords_in_basis(to_q(r), qbasis);
      if (!cc) fail(ErrorCode::Internal, "ray escapes its own span");
      auto z = to_z(*cc);
      if (!z) fail(ErrorCode::Internal, "saturated basis gave fractional coordinates");
      coords.push_back(*z);
    }
    Cone local = cone_from_rays(c.dim, c.side, coords);
    ZMat hb_local = hilbert_basis(local);
    ZMat out;
    for (auto& h : hb_local) {
      ZVec v = zvec_zero(c.n);
      for (size_t i = 0; i < basis.size(); ++i) v = vadd(v, vscale(h[i], basis[i]));
      out.push_back(v);
    }
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
  }
  std::set<ZVec, LexLess> cands;
  for (auto& simplex : detail::triangulate(c))
    for (auto& p : detail::parallelepiped_points(simplex, c.n))
      if (!is_zero(p)) cands.insert(p);
  ZMat out;
  for (auto& x : cands) {
    bool reducible = false;
    for (auto& y : cands) {
      if (y == x) continue;
      ZVec d = vsub(x, y);
      if (is_zero(d)) continue;
      if (c.contains(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return out;
}

// Generators of cone ∩ Z^n allowing lineality: +-basis of the lineality
// lattice plus lifts of the Hilbert basis of the pointed quotient.
inline ZMat semigroup_generators(const Cone& c) {
  if (c.pointed()) return hilbert_basis(c);
  ZMat proj = z_kernel(c.lin);  // rows pair ambient vectors into the quotient
  size_t k = proj.size();
  ZMat img_rays;
  for (auto& r : c.rays) {
    ZVec y(k);
    for (size_t i = 0; i < k; ++i) y[i] = dot(proj[i], r);
    img_rays.push_back(y);
  }
  Cone down = cone_from_rays(k, c.side, img_rays);
  if (!down.pointed()) fail(ErrorCode::Internal, "quotient by lineality is not pointed");
  ZMat out;
  for (auto& l : c.lin) {
    out.push_back(l);
    out.push_back(vneg(l));
  }
  ZMat h, u;
  hnf_columns(proj, h, u);
  for (auto& hb : hilbert_basis(down)) {
    // integer solve proj * x = hb; surjectivity makes the pivots units
    ZVec y(k, Int(0));
    ZVec rhs = hb;
    for (size_t r = 0; r < k; ++r) {
      if (h[r][r] == 0 ||
          mpz_divisible_p(rhs[r].get_mpz_t(), h[r][r].get_mpz_t()) == 0)
        fail(ErrorCode::Internal, "quotient lift is not integral");
      Int q = rhs[r] / h[r][r];
      y[r] = q;
      for (size_t rr = 0; rr < k; ++rr) rhs[rr] -= q * h[rr][r];
    }
    ZVec x = zvec_zero(c.n);
    for (size_t cidx = 0; cidx < k; ++cidx) x = vadd(x, vscale(y[cidx], u[cidx]));
    x = reduce_mod_lattice(x, c.lin);
    if (!c.contains(x)) fail(ErrorCode::Internal, "quotient lift escapes the cone");
    out.push_back(x);
  }
  std::sort(out.begin(), out.end(), LexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Is x a nonnegative integer combination of gens? Exact: remainders are
// pruned to the cone spanned by the generators and canonicalized modulo the
// lineality lattice, which the generators must span by +-pairs (true for all
// semigroup_generators outputs). Terminates because the pointed quotient
// part of the remainders strictly decreases.
inline bool in_semigroup(const ZVec& x, const ZMat& gens, size_t state_cap = 500000) {
  if (is_zero(x)) return true;
  if (gens.empty()) return false;
  Cone c = cone_from_rays(x.size(), Side::M, gens);
  if (!c.lin.empty()) {
    ZMat lin_gens;
    for (auto& g : gens) {
      QVec proj = project_onto_span(to_q(g), to_q(c.lin));
      if (proj == to_q(g)) lin_gens.push_back(g);
    }
    if (!(lattice_hnf(lin_gens) == c.lin))
      fail(ErrorCode::Internal, "in_semigroup: generators do not span their lineality lattice");
  }
  auto canon = [&](const ZVec& v) { return reduce_mod_lattice(v, c.lin); };
  ZVec start = canon(x);
  if (!c.contains(start)) return false;
  if (is_zero(start)) return true;
  std::set<ZVec, LexLess> seen{start};
  std::deque<ZVec> queue{start};
  while (!queue.empty()) {
    ZVec cur = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      if (is_zero(g)) continue;
      ZVec y = canon(vsub(cur, g));
      if (y == cur) continue;  // lineality generator
      if (!c.contains(y)) continue;
      if (is_zero(y)) return true;
      if (seen.insert(y).second) {
        if (seen.size() > state_cap) fail(ErrorCode::Internal, "semigroup search exploded");
        queue.push_back(y);
      }
    }
  }
  return false;
}

// All lattice points of a cone with coordinates bounded by `bound` in
// absolute value.
inline ZMat lattice_points_in_cone_box(const Cone& c, const Int& bound) {
  ZMat out;
  ZVec x(c.n);
  auto rec = [&](auto&& self, size_t j) -> void {
    if (j == c.n) {
      if (c.contains(x)) out.push_back(x);
      return;
    }
    for (Int v = -bound; v <= bound; ++v) {
      x[j] = v;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace tvl
