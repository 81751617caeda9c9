// Exact arbitrary-precision integers and rationals (GMP-backed) plus the
// small vector helpers used throughout: lattice vectors live in M or N,
// rational vectors in M_Q or N_Q.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvl {

using Int = mpz_class;
using Rat = mpq_class;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

enum class ErrorCode {
  NotExtremalRay,
  TailMismatch,
  SupportMismatch,
  NotPointed,
  OutsideWeightCone,
  NonIntegral,
  NonIntegralDivisor,
  UnsupportedCurve,
  NonLatticeShift,
  MembershipViolation,
  NotInSRho,
  ConditionViolated,
  InconclusiveRealization,
  UnknownClass,
  ParseError,
  Internal,
};

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& what) { throw Error(c, what); }

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorCode::Internal, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

inline bool rat_is_int(const Rat& q) { return q.get_den() == 1; }

// Parses "p", "-p/q" style strings; denominator forced positive by GMP.
inline Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) fail(ErrorCode::ParseError, "bad rational: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// ---- vector helpers ----

inline QVec to_q(const ZVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

inline std::optional<ZVec> to_z(const QVec& v) {
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!rat_is_int(v[i])) return std::nullopt;
    r[i] = v[i].get_num();
  }
  return r;
}

inline Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int dot(const ZVec& a, const ZVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const ZVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline Rat dot(const QVec& a, const ZVec& b) { return dot(b, a); }

template <class V>
V vadd(const V& a, const V& b) {
  V r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class V>
V vsub(const V& a, const V& b) {
  V r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class V, class S>
V vscale(const S& c, const V& a) {
  V r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

template <class V>
V vneg(const V& a) {
  V r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline bool is_zero(const ZVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}
inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline ZVec zvec_zero(size_t n) { return ZVec(n, Int(0)); }
inline QVec qvec_zero(size_t n) { return QVec(n, Rat(0)); }

// Divides out the content; the zero vector stays zero.
inline ZVec primitive(const ZVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd_int(g, x);
  if (g == 0 || g == 1) return v;
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

// Clears denominators and divides by the content, preserving direction.
inline ZVec primitive(const QVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm_int(l, x.get_den());
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat t = v[i] * Rat(l);
    r[i] = t.get_num();
  }
  return primitive(r);
}

// Sign-normalizes so the first nonzero entry is positive (for undirected data
// such as equations; never use on rays).
inline ZVec sign_normalize(ZVec v) {
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

template <class V>
int lex_cmp(const V& a, const V& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

struct LexLess {
  template <class V>
  bool operator()(const V& a, const V& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_cmp(a, b) < 0;
  }
};

inline Int linf_norm(const ZVec& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max(m, Int(abs(x)));
  return m;
}

inline std::string vec_str(const ZVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

inline std::string vec_str(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rat_str(v[i]);
  os << ")";
  return os.str();
}

}  // namespace tvl
