// Deterministic machine- and human-readable reports for the CLI commands:
// validation, toric and complexity-one classification, the Makar-Limanov
// invariant, and element traces.
#pragma once

#include "tvlnd/io.hpp"

#include <cstdlib>
#include <future>
#include <thread>

namespace tvl {

inline size_t thread_cap() {
  size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TVAR_LND_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return std::min<size_t>(hw, size_t(v));
  }
  return hw;
}

// Ordered parallel map; results joined in index order so reports do not
// depend on scheduling.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F&& fn) {
  using R = decltype(fn(items[0]));
  std::vector<R> out;
  out.reserve(items.size());
  size_t cap = thread_cap();
  if (cap <= 1 || items.size() <= 1) {
    for (auto& it : items) out.push_back(fn(it));
    return out;
  }
  std::vector<std::future<R>> futs;
  for (auto& it : items)
    futs.push_back(std::async(std::launch::deferred | std::launch::async,
                              [&fn, &it] { return fn(it); }));
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

inline Json json_zvec(const ZVec& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(x.get_str());
  return a;
}
inline Json json_zmat(const ZMat& m) {
  Json a = Json::array();
  for (auto& r : m) a.push_back(json_zvec(r));
  return a;
}
inline Json json_qvec(const QVec& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(rat_str(x));
  return a;
}
inline Json json_cone(const Cone& c) {
  Json j;
  j["rays"] = json_zmat(c.rays);
  if (!c.lin.empty()) j["lineality"] = json_zmat(c.lin);
  j["dim"] = c.dim;
  return j;
}
inline Json json_qdivisor(const QDivisor& d) {
  Json a = Json::array();
  for (auto& [p, v] : d.coeffs) a.push_back(Json{{"point", point_str(p)}, {"coeff", rat_str(v)}});
  return a;
}
inline Json json_dim(const DimReport& d) {
  switch (d.kind) {
    case DimReport::Kind::Exact: return Json{{"kind", "exact"}, {"dim", d.dim.get_str()}};
    case DimReport::Kind::Infinite: return Json{{"kind", "infinite"}};
    case DimReport::Kind::Indeterminate:
      return Json{{"kind", "indeterminate"}, {"lower", d.lower.get_str()}, {"upper", d.upper.get_str()}};
  }
  return {};
}

// ---- validation ----

inline Json report_validate(const InputSpec& in) {
  PolyhedralDivisor d = build_divisor(in);
  GradedAlgebra a = make_algebra(d);
  ProperReport pr = is_proper(d);
  Json j;
  j["rank"] = in.rank;
  j["type"] = type_str(a.type);
  j["weight_cone"] = json_cone(a.weight);
  switch (pr.verdict) {
    case ProperReport::Verdict::Proper: j["proper"] = "proper"; break;
    case ProperReport::Verdict::NotProper: j["proper"] = "not-proper"; break;
    case ProperReport::Verdict::ProperAssumingPrincipality:
      j["proper"] = "proper-assuming-principality";
      break;
  }
  j["proper_reason"] = pr.reason;
  return j;
}

// ---- fiber classification ----

// A degree in S_rho whose section space is nonempty: the module generators
// translated along tau until the Riemann-Roch bound allows sections.
inline std::optional<ZVec> fiber_sample_degree(const GradedAlgebra& a, const SRhoDescription& s,
                                               int depth = 6) {
  ZMat base = s_rho_module_generators(s);
  ZMat taugens = semigroup_generators(s.tau);
  std::set<ZVec, LexLess> seen;
  std::deque<ZVec> queue;
  for (auto& g : base)
    if (seen.insert(g).second) queue.push_back(g);
  int steps = 0;
  while (!queue.empty() && steps < depth * 64) {
    ZVec e = queue.front();
    queue.pop_front();
    ++steps;
    SectionSpace sp = phi_e_space(a, s, e);
    if (sp.nonempty()) return e;
    for (auto& t : taugens) {
      ZVec next = vadd(e, t);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return std::nullopt;
}

inline Json report_fiber(const GradedAlgebra& a, const InputOptions& opt) {
  Json j;
  auto classes = fiber_equivalence_classes(a);
  j["count"] = classes.size();
  Json rows = Json::array();
  std::vector<size_t> idx(classes.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto results = parallel_map(idx, [&](size_t i) {
    const auto& cls = classes[i];
    Json row;
    row["id"] = "F:" + std::to_string(i);
    row["ray"] = json_zvec(cls.rho);
    row["tau_generators"] = json_zmat(semigroup_generators(cls.srho.tau));
    row["s_rho_module_generators"] = json_zmat(s_rho_module_generators(cls.srho));
    if (auto e = fiber_sample_degree(a, cls.srho)) {
      row["sample_e"] = json_zvec(*e);
      QDivisor de = d_e_divisor(a, cls.srho, *e);
      row["D_e"] = json_qdivisor(de);
      SectionSpace sp = phi_e_space(a, cls.srho, *e, opt.degree_bound);
      row["phi_dim"] = json_dim(sp.dim);
      if (sp.basis && !sp.basis->basis.empty())
        row["phi_sample"] = ratfun_str(sp.basis->basis.front());
    }
    return row;
  });
  for (auto& r : results) rows.push_back(r);
  j["classes"] = rows;
  return j;
}

// ---- horizontal classification ----

inline Json report_horizontal(const GradedAlgebra& a, const InputOptions& opt, bool* inconclusive) {
  Json j;
  if (a.div.curve.kind == Curve::Kind::Abstract) {
    j["count"] = 0;
    j["reason"] = "curve is not rational";
    j["classes"] = Json::array();
    return j;
  }
  auto rep = horizontal_equivalence_classes(a, opt.search_norm);
  j["count"] = rep.classes.size();
  if (rep.infinite) {
    j["infinite"] = true;
    j["infinite_witness_cone"] = json_cone(*rep.infinite_witness);
  }
  // stable cone index over the distinct frame cones
  std::vector<Cone> cones;
  for (auto& cls : rep.classes) cones.push_back(cls.frame.omega_dual);
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  Json rows = Json::array();
  for (auto& cls : rep.classes) {
    Json row;
    size_t cone_idx =
        size_t(std::lower_bound(cones.begin(), cones.end(), cls.frame.omega_dual) - cones.begin());
    std::string zinf = cls.frame.z_inf ? point_str(*cls.frame.z_inf) : "-";
    row["id"] = "H:" + std::to_string(cone_idx) + ":" + zinf;
    row["omega_dual"] = json_cone(cls.frame.omega_dual);
    row["z0"] = point_str(cls.frame.z0);
    if (cls.frame.z_inf) row["z_inf"] = zinf;
    if (cls.frame.generic_zinf) row["generic_z_inf"] = true;
    const NormalizedFrame& nf = cls.normalized;
    row["h"] = json_qvec(nf.h);
    row["d"] = nf.d.get_str();
    row["L_index"] = nf.d.get_str();
    row["L_basis"] = json_zmat(nf.L_basis);
    row["m1"] = json_zvec(nf.m1);
    if (!nf.relabel.is_identity()) row["relabel"] = nf.relabel.str();
    if (!nf.shift_witness.identity()) {
      Json sh = Json::array();
      for (auto& [p, v] : nf.shift_witness.shifts)
        sh.push_back(Json{{"point", point_str(p)}, {"shift", json_zvec(v)}});
      row["principal_shifts"] = sh;
    }
    if (cls.sample_e) {
      row["sample_e"] = json_zvec(*cls.sample_e);
      row["sample_r"] = cls.sample_r->get_str();
      HorizontalLND lnd = build_lnd(nf, *cls.sample_e);
      row["derivation"] = derivation_formula(lnd);
    } else {
      row["sample_e"] = "not-found-within-bound";
      if (inconclusive) *inconclusive = true;
    }
    KernelDescription kd = horizontal_kernel(nf);
    Json kg = Json::array();
    for (auto& [m, phi] : kd.witnesses)
      kg.push_back(Json{{"degree", json_zvec(m)}, {"phi", factored_str(phi)}});
    row["kernel_generators"] = kg;
    rows.push_back(row);
  }
  j["classes"] = rows;
  return j;
}

// ---- toric mode ----

inline Json report_toric(const InputSpec& in) {
  Cone sigma = in.sigma_rays.empty() ? cone_zero(in.rank, Side::N)
                                     : cone_from_rays(in.rank, Side::N, in.sigma_rays);
  if (!sigma.pointed()) fail(ErrorCode::NotPointed, "toric mode needs a pointed sigma");
  Json j;
  Cone w = dual_cone(sigma);
  j["weight_cone"] = json_cone(w);
  j["weight_cone_hilbert_basis"] = json_zmat(hilbert_basis(w));
  auto classes = toric_classify(sigma);
  j["count"] = classes.size();
  Json rows = Json::array();
  for (size_t i = 0; i < classes.size(); ++i) {
    auto& [rho, srho] = classes[i];
    Json row;
    row["id"] = "F:" + std::to_string(i);
    row["ray"] = json_zvec(rho);
    row["tau_generators"] = json_zmat(semigroup_generators(srho.tau));
    row["s_rho_module_generators"] = json_zmat(s_rho_module_generators(srho));
    rows.push_back(row);
  }
  j["classes"] = rows;
  auto ml = ml_toric(sigma);
  j["ml"] = Json{{"degree_cone", json_cone(ml.degree_cone)},
                 {"generators", json_zmat(ml.degree_generators)},
                 {"trivial", ml.degree_cone.dim == 0}};
  return j;
}

// ---- Makar-Limanov ----

inline Json json_sgad(const SemigroupAlgebraDescription& s) {
  Json j;
  j["degree_cone"] = json_cone(s.degree_cone);
  j["L_basis"] = json_zmat(s.L_basis);
  j["degree_generators"] = json_zmat(s.degree_generators);
  j["pieces"] = s.full_pieces ? "full" : "one-dimensional";
  if (!s.witnesses.empty()) {
    Json w = Json::array();
    for (auto& [m, phi] : s.witnesses)
      w.push_back(Json{{"degree", json_zvec(m)}, {"phi", factored_str(phi)}});
    j["witnesses"] = w;
  }
  if (s.lattice_disagreement) j["lattice_disagreement"] = true;
  return j;
}

inline Json report_ml(const GradedAlgebra& a, const InputOptions& opt) {
  Json j;
  MLResult r = ml_homogeneous(a, opt.search_norm);
  j["ml_fib"] = json_sgad(r.fib);
  if (r.hor)
    j["ml_hor"] = json_sgad(*r.hor);
  else
    j["ml_hor"] = "all-of-A";
  j["ml_h"] = json_sgad(r.h);
  j["trivial"] = r.trivial;
  j["provenance"] = r.provenance;
  TrivialityReport tr = ml_trivial(a, opt.search_norm);
  switch (tr.branch) {
    case TrivialityReport::Branch::EllipticInterior: j["triviality_branch"] = "(i)"; break;
    case TrivialityReport::Branch::HorizontalIntersection: j["triviality_branch"] = "(ii)"; break;
    case TrivialityReport::Branch::None: j["triviality_branch"] = "none"; break;
  }
  j["triviality_detail"] = tr.detail;
  return j;
}

// ---- apply ----

inline Json report_apply(const GradedAlgebra& a, const InputOptions& opt,
                         const std::string& class_id, const std::string& element, long iterate) {
  if (!a.div.curve.rational())
    fail(ErrorCode::UnsupportedCurve, "apply needs a rational base curve");
  auto [fn, deg] = parse_element(element, a.rank());
  Json j;
  j["class"] = class_id;
  std::function<HomogeneousElement(const HomogeneousElement&)> step;
  if (class_id.rfind("F:", 0) == 0) {
    size_t idx = std::stoul(class_id.substr(2));
    auto classes = fiber_equivalence_classes(a);
    if (idx >= classes.size()) fail(ErrorCode::UnknownClass, "no fiber class " + class_id);
    auto sample = fiber_sample_degree(a, classes[idx].srho);
    if (!sample) fail(ErrorCode::UnknownClass, "no usable degree for " + class_id);
    SectionSpace sp = phi_e_space(a, classes[idx].srho, *sample, opt.degree_bound);
    if (!sp.basis || sp.basis->basis.empty())
      fail(ErrorCode::UnknownClass, "empty section space for " + class_id);
    FiberLND lnd = make_fiber_lnd(a, classes[idx].rho, *sample, sp.basis->basis.front());
    j["derivation_degree"] = json_zvec(*sample);
    step = [lnd, &a](const HomogeneousElement& x) { return fiber_lnd_apply(a, lnd, x); };
  } else if (class_id.rfind("H:", 0) == 0) {
    auto rep = horizontal_equivalence_classes(a, opt.search_norm);
    // match on the printed id
    std::vector<Cone> cones;
    for (auto& cls : rep.classes) cones.push_back(cls.frame.omega_dual);
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    const HorizontalClass* found = nullptr;
    for (auto& cls : rep.classes) {
      size_t cone_idx = size_t(std::lower_bound(cones.begin(), cones.end(), cls.frame.omega_dual) -
                               cones.begin());
      std::string zinf = cls.frame.z_inf ? point_str(*cls.frame.z_inf) : "-";
      if ("H:" + std::to_string(cone_idx) + ":" + zinf == class_id) found = &cls;
    }
    if (!found) fail(ErrorCode::UnknownClass, "no horizontal class " + class_id);
    if (!found->sample_e)
      fail(ErrorCode::InconclusiveRealization, "no certificate degree within the search bound");
    HorizontalLND lnd = build_lnd(found->normalized, *found->sample_e);
    if (!found->normalized.relabel.is_identity() || !found->normalized.shift_witness.identity())
      j["coordinates"] = "normalized";
    j["derivation"] = derivation_formula(lnd);
    GradedAlgebra na = found->normalized.alg;
    step = [lnd](const HomogeneousElement& x) { return horizontal_apply(lnd, x); };
    HomogeneousElement x = make_element(na, deg, fn);
    Json trace = Json::array();
    trace.push_back(element_str(x.degree, x.fn));
    for (long k = 0; k < iterate && !x.is_zero(); ++k) {
      x = step(x);
      trace.push_back(x.is_zero() ? "0" : element_str(x.degree, x.fn));
    }
    j["trace"] = trace;
    j["reached_zero"] = x.is_zero();
    return j;
  } else {
    fail(ErrorCode::UnknownClass, "class ids look like F:<k> or H:<k>:<z>");
  }
  HomogeneousElement x = make_element(a, deg, fn);
  Json trace = Json::array();
  trace.push_back(element_str(x.degree, x.fn));
  for (long k = 0; k < iterate && !x.is_zero(); ++k) {
    x = step(x);
    trace.push_back(x.is_zero() ? "0" : element_str(x.degree, x.fn));
  }
  j["trace"] = trace;
  j["reached_zero"] = x.is_zero();
  return j;
}

// ---- text rendering ----

inline bool all_primitive(const Json& j) {
  for (auto& el : j)
    if (el.is_object() || el.is_array()) return false;
  return true;
}

inline std::string inline_value(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "(";
    bool first = true;
    for (auto& el : j) {
      if (!first) s += ",";
      s += inline_value(el);
      first = false;
    }
    return s + ")";
  }
  return j.dump();
}

inline void render_text_walk(const Json& j, std::string indent, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      bool inline_ok = !v.is_object() && (!v.is_array() || all_primitive(v) ||
                                          std::all_of(v.begin(), v.end(), [](const Json& e) {
                                            return e.is_array() && all_primitive(e);
                                          }));
      if (inline_ok) {
        out += indent + it.key() + ": " + inline_value(v) + "\n";
      } else {
        out += indent + it.key() + ":\n";
        render_text_walk(v, indent + "  ", out);
      }
    }
  } else if (j.is_array()) {
    for (auto& el : j) {
      if (el.is_object() || el.is_array()) {
        out += indent + "-\n";
        render_text_walk(el, indent + "  ", out);
      } else {
        out += indent + "- " + inline_value(el) + "\n";
      }
    }
  } else {
    out += indent + inline_value(j) + "\n";
  }
}

inline std::string render_text(const Json& j) {
  std::string out;
  render_text_walk(j, "", out);
  return out;
}

}  // namespace tvl
