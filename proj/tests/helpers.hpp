// Shared fixtures and independent oracles for the test suites. Everything
// here stays out of the production path.
#pragma once

#include "tvlnd/report.hpp"

#include <doctest.h>

namespace tvt {

using namespace tvl;

// Deterministic 64-bit PRNG (splitmix64) for the property suites.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi]
  long range(long lo, long hi) { return lo + long(next() % uint64_t(hi - lo + 1)); }
  Rat rat(long max_num, long max_den) {
    long den = range(1, max_den);
    long num = range(-max_num, max_num);
    return make_rat(Int(num), Int(den));
  }
};

inline ZVec zv(std::initializer_list<long> xs) {
  ZVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}
inline QVec qv(std::initializer_list<const char*> xs) {
  QVec v;
  for (auto* s : xs) v.push_back(parse_rat(s));
  return v;
}

// ---- paper fixtures ----

inline PolyhedralDivisor ex_hyp_divisor() {
  PolyhedralDivisor d;
  d.curve.kind = Curve::Kind::AffineLine;
  d.sigma = cone_zero(2, Side::N);
  d.set_coeff(CurvePoint::scalar(0),
              tailed_poly({qv({"0", "0"}), qv({"0", "1"}), qv({"-1/4", "-1"})}, d.sigma));
  d.set_coeff(CurvePoint::scalar(1), tailed_poly({qv({"0", "0"}), qv({"0", "1"})}, d.sigma));
  return d;
}

inline Cone quadric_sigma() {
  return cone_from_rays(3, Side::N, {zv({1, 0, 0}), zv({0, 1, 0}), zv({1, 0, 1}), zv({0, 1, 1})});
}

inline PolyhedralDivisor non_rat_divisor() {
  PolyhedralDivisor d;
  d.curve.kind = Curve::Kind::Abstract;
  d.curve.genus = 1;
  d.curve.named_points = {"P"};
  d.sigma = cone_from_rays(2, Side::N, {zv({1, 0}), zv({0, 1})});
  d.set_coeff(CurvePoint::named("P"), tailed_poly({qv({"1", "1"})}, d.sigma));
  return d;
}

inline PolyhedralDivisor surface_hyp_divisor() {
  PolyhedralDivisor d;
  d.curve.kind = Curve::Kind::AffineLine;
  d.sigma = cone_zero(1, Side::N);
  d.set_coeff(CurvePoint::scalar(0), tailed_poly({qv({"0"}), qv({"1"})}, d.sigma));
  return d;
}

inline PolyhedralDivisor surface_ell_divisor() {
  PolyhedralDivisor d;
  d.curve.kind = Curve::Kind::ProjectiveLine;
  d.sigma = cone_from_rays(1, Side::N, {zv({1})});
  d.set_coeff(CurvePoint::scalar(0), tailed_poly({qv({"1"})}, d.sigma));
  return d;
}

// Locates the quasifan cone with the given rays; fails the test otherwise.
inline const Cone& cone_with_rays(const std::vector<Cone>& cones, const ZMat& rays) {
  ZMat sorted = rays;
  std::sort(sorted.begin(), sorted.end(), LexLess{});
  for (auto& c : cones)
    if (c.rays == sorted) return c;
  REQUIRE(false);
  return cones.front();
}

// ---- oracles ----

// Brute-force dual cone test: pairing signs over a small lattice box.
inline bool oracle_in_dual(const Cone& c, const ZVec& w) {
  for (auto& r : c.generators())
    if (dot(r, w) < 0) return false;
  return true;
}

// Brute-force check of the convex-core membership (the quantified form):
// e not in the weight cone, and m + e stays inside for every small lattice
// m in the weight cone off tau.
inline bool oracle_s_rho(const Cone& sigma, const ZVec& rho, const ZVec& e, long box) {
  Cone w = dual_cone(sigma);
  Cone tau = dual_face(sigma, rho);
  if (w.contains(e)) return false;
  ZVec m(e.size());
  bool ok = true;
  auto rec = [&](auto&& self, size_t j) -> void {
    if (!ok) return;
    if (j == m.size()) {
      if (!w.contains(m) || tau.contains(m)) return;
      if (!w.contains(vadd(m, e))) ok = false;
      return;
    }
    for (long v = -box; v <= box && ok; ++v) {
      m[j] = Int(v);
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return ok;
}

// Direct evaluation of the horizontal floor conditions by brute force over
// the lattice box, straight from their defining inequalities.
inline bool oracle_conditions(const NormalizedFrame& nf, const ZVec& e, long box) {
  const PolyhedralDivisor& dv = nf.alg.div;
  auto hval = [&](const CurvePoint& z, const ZVec& m) {
    const TailedPoly* tp = dv.coeff(z);
    return tp ? support_value(*tp, m) : Rat(0);
  };
  ZVec m(nf.alg.rank());
  bool ok = true;
  auto rec = [&](auto&& self, size_t j) -> void {
    if (!ok) return;
    if (j == m.size()) {
      if (!nf.alg.weight.contains(m)) return;
      ZVec me = vadd(m, e);
      if (!nf.alg.weight.contains(me)) return;
      for (auto& [p, tp] : dv.coeffs) {
        if (p.is_infinity()) continue;
        if (p.is_scalar() && p.z == 0) continue;
        Rat hme = hval(p, me);
        if (hme == 0) continue;
        if (Rat(rat_floor(hme)) - Rat(rat_floor(hval(p, m))) < 1) {
          ok = false;
          return;
        }
      }
      {
        CurvePoint z0 = CurvePoint::scalar(0);
        Rat hme = hval(z0, me);
        if (hme != dot(me, nf.h)) {
          Rat lhs = Rat(rat_floor(Rat(nf.d) * hme)) - Rat(rat_floor(Rat(nf.d) * hval(z0, m)));
          if (lhs < Rat(1) + Rat(nf.d) * dot(e, nf.h)) {
            ok = false;
            return;
          }
        }
      }
      if (nf.elliptic) {
        CurvePoint zi = CurvePoint::infinity();
        Rat lhs =
            Rat(rat_floor(Rat(nf.d) * hval(zi, me))) - Rat(rat_floor(Rat(nf.d) * hval(zi, m)));
        if (lhs < Rat(-1) - Rat(nf.d) * dot(e, nf.h)) {
          ok = false;
          return;
        }
      }
      return;
    }
    for (long v = -box; v <= box && ok; ++v) {
      m[j] = Int(v);
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return ok;
}

// Iterates a derivation until zero or the step cap; returns the number of
// applications used, or nullopt if the cap was hit.
template <class Step>
inline std::optional<int> steps_to_zero(HomogeneousElement x, Step&& step, int cap) {
  for (int k = 0; k <= cap; ++k) {
    if (x.is_zero()) return k;
    x = step(x);
  }
  return std::nullopt;
}

}  // namespace tvt
