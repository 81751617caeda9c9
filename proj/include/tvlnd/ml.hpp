// The homogeneous Makar-Limanov invariant in complexity 0 and 1: kernel
// intersections over the classified fiber and horizontal derivations, the
// triviality criterion, and kernel generator lists.
#pragma once

#include "tvlnd/horizontal.hpp"

namespace tvl {

struct SemigroupAlgebraDescription {
  Cone degree_cone;  // M-side
  ZMat L_basis;      // sublattice of valid degrees (identity = full M)
  ZMat degree_generators;
  bool full_pieces = false;  // true: whole graded pieces A_m; false: K phi_m chi^m
  std::vector<std::pair<ZVec, FactoredFun>> witnesses;  // for 1-dim pieces on rational curves
  bool lattice_disagreement = false;  // frames produced different L (diagnostic)
};

inline ZMat full_lattice(size_t n) {
  ZMat id(n, zvec_zero(n));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

namespace detail {

inline ZMat cone_lattice_generators(const Cone& c, const ZMat& L) {
  // semigroup generators of c ∩ lattice(L)
  ZMat ineqs, eqs;
  for (auto& f : c.facets) {
    ZVec row(L.size());
    for (size_t j = 0; j < L.size(); ++j) row[j] = dot(f, L[j]);
    ineqs.push_back(row);
  }
  for (auto& q : c.eqs) {
    ZVec row(L.size());
    for (size_t j = 0; j < L.size(); ++j) row[j] = dot(q, L[j]);
    eqs.push_back(row);
  }
  Cone local = cone_from_inequalities(L.size(), Side::M, ineqs, eqs);
  ZMat out;
  for (auto& y : semigroup_generators(local)) {
    ZVec m = zvec_zero(c.n);
    for (size_t j = 0; j < L.size(); ++j) m = vadd(m, vscale(y[j], L[j]));
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

}  // namespace detail

// Complexity 0: ML(A) = K[theta_M] for theta the maximal subspace of the
// weight cone.
inline SemigroupAlgebraDescription ml_toric(const Cone& sigma) {
  if (!sigma.pointed()) fail(ErrorCode::NotPointed, "toric data needs a pointed cone");
  SemigroupAlgebraDescription out;
  out.degree_cone = max_subspace(dual_cone(sigma));
  out.L_basis = full_lattice(sigma.n);
  out.degree_generators = semigroup_generators(out.degree_cone);
  out.full_pieces = false;
  for (auto& m : out.degree_generators) out.witnesses.push_back({m, FactoredFun{}});
  return out;
}

// ML_fib(A) = direct sum of A_m over theta = intersection of the dual faces
// of the existing fiber classes; all of A when none exist.
inline SemigroupAlgebraDescription ml_fib(const GradedAlgebra& a) {
  SemigroupAlgebraDescription out;
  Cone theta = a.weight;
  for (auto& cls : fiber_equivalence_classes(a)) theta = intersect(theta, cls.srho.tau);
  out.degree_cone = theta;
  out.L_basis = full_lattice(a.rank());
  out.degree_generators = semigroup_generators(theta);
  out.full_pieces = true;
  return out;
}

// ML_hor(A): nullopt when no horizontal LND exists (the invariant is all of
// A); otherwise the semigroup algebra on delta ∩ L, with delta the
// intersection of all admissible cones (and the zero face of h_{deg D} in
// the elliptic case).
inline std::optional<SemigroupAlgebraDescription> ml_hor(const GradedAlgebra& a,
                                                         const Int& search_norm = 24) {
  if (a.div.curve.kind == Curve::Kind::Abstract) return std::nullopt;
  auto rep = horizontal_equivalence_classes(a, search_norm);
  if (rep.classes.empty()) return std::nullopt;
  SemigroupAlgebraDescription out;
  Cone delta = a.weight;
  for (auto& cls : rep.classes) delta = intersect(delta, cls.frame.omega_dual);
  if (a.div.curve.kind == Curve::Kind::ProjectiveLine) {
    // intersect with B = {h_{deg D} = 0}, a face of the weight cone
    auto faces = zero_locus_faces(deg_divisor(a.div), a.weight);
    std::vector<Cone> maximal;
    for (auto& f : faces) {
      bool dominated = false;
      for (auto& g : faces)
        if (!(f == g) && g.contains(f)) dominated = true;
      if (!dominated) maximal.push_back(f);
    }
    if (maximal.empty())
      delta = cone_zero(a.rank(), Side::M);
    else if (maximal.size() == 1)
      delta = intersect(delta, maximal[0]);
    else
      fail(ErrorCode::Internal,
           "zero locus of h_{deg D} is not a single face; ML_hor undecided");
  }
  // L from the first frame; frames may disagree globally, but only their
  // restrictions to delta matter - diagnose when those differ
  ZMat L = rep.classes[0].normalized.L_basis;
  out.degree_cone = delta;
  out.L_basis = L;
  out.degree_generators = detail::cone_lattice_generators(delta, L);
  for (auto& cls : rep.classes) {
    if (cls.normalized.L_basis == L) continue;
    if (!(detail::cone_lattice_generators(delta, cls.normalized.L_basis) ==
          out.degree_generators))
      out.lattice_disagreement = true;
  }
  out.full_pieces = false;
  for (auto& m : out.degree_generators) {
    auto g = distinguished_generator(a, m);
    out.witnesses.push_back({m, g.phi});
  }
  return out;
}

struct MLResult {
  SemigroupAlgebraDescription fib;
  std::optional<SemigroupAlgebraDescription> hor;
  SemigroupAlgebraDescription h;
  bool trivial = false;
  std::string provenance;
};

inline MLResult ml_homogeneous(const GradedAlgebra& a, const Int& search_norm = 24) {
  MLResult r;
  r.fib = ml_fib(a);
  r.hor = ml_hor(a, search_norm);
  if (!r.hor) {
    r.h = r.fib;
    bool zero_only = r.h.degree_cone.dim == 0;
    r.trivial = zero_only && a.div.curve.projective();
    r.provenance = "no horizontal derivation: ML_h = sum of A_m over theta";
    return r;
  }
  SemigroupAlgebraDescription h;
  h.degree_cone = intersect(r.fib.degree_cone, r.hor->degree_cone);
  h.L_basis = r.hor->L_basis;
  h.full_pieces = false;
  h.lattice_disagreement = r.hor->lattice_disagreement;
  h.degree_generators = detail::cone_lattice_generators(h.degree_cone, h.L_basis);
  for (auto& m : h.degree_generators) {
    auto g = distinguished_generator(a, m);
    h.witnesses.push_back({m, g.phi});
  }
  r.h = h;
  r.trivial = h.degree_cone.dim == 0;
  r.provenance = "ML_h = K phi_m chi^m over theta ∩ delta_L";
  return r;
}

struct TrivialityReport {
  bool trivial = false;
  enum class Branch { None, EllipticInterior, HorizontalIntersection } branch = Branch::None;
  std::string detail;
};

inline TrivialityReport ml_trivial(const GradedAlgebra& a, const Int& search_norm = 24) {
  TrivialityReport rep;
  // (i) elliptic, rank >= 2, deg D inside the relative interior of sigma
  if (a.div.curve.projective() && a.rank() >= 2) {
    TailedPoly degd = deg_divisor(a.div);
    bool interior = true;
    for (auto& v : degd.vertices)
      if (!a.div.sigma.interior_contains(v)) interior = false;
    if (interior) {
      rep.trivial = true;
      rep.branch = TrivialityReport::Branch::EllipticInterior;
      rep.detail = "elliptic, rank >= 2, deg D in the relative interior of sigma";
      return rep;
    }
  }
  // (ii) a horizontal derivation exists and theta ∩ delta = {0}
  if (a.div.curve.rational()) {
    auto hor = ml_hor(a, search_norm);
    if (hor) {
      Cone theta = ml_fib(a).degree_cone;
      Cone meet = intersect(theta, hor->degree_cone);
      if (meet.dim == 0) {
        rep.trivial = true;
        rep.branch = TrivialityReport::Branch::HorizontalIntersection;
        rep.detail = "horizontal derivation exists and theta ∩ delta = {0}";
        return rep;
      }
    }
  }
  rep.detail = "neither triviality branch applies";
  return rep;
}

// ---- kernel generators per derivation kind ----

// Toric: Hilbert basis of tau with trivial witnesses.
inline ZMat kernel_generators_toric(const Cone& sigma, const ZVec& rho) {
  Cone tau = dual_face(sigma, rho);
  return semigroup_generators(tau);
}

// Fiber type on a rational curve: the generators of A with degree in tau.
inline std::vector<HomogeneousElement> kernel_generators_fiber(const GradedAlgebra& a,
                                                               const SRhoDescription& srho,
                                                               const Int& bound) {
  std::vector<HomogeneousElement> out;
  for (auto& g : generators_up_to(a, bound))
    if (srho.tau.contains(g.degree)) out.push_back(g);
  return out;
}

// Fiber type on the abstract fixture: degree/order data only.
inline std::vector<AbstractElement> kernel_generators_fiber_abstract(const GradedAlgebra& a,
                                                                     const SRhoDescription& srho,
                                                                     const Int& bound) {
  std::vector<AbstractElement> out;
  for (auto& g : abstract_generators(a, bound))
    if (srho.tau.contains(g.degree)) out.push_back(g);
  return out;
}

}  // namespace tvl
