// Input schema (JSON with rationals as strings), report assembly, the
// element parser for the apply command, and deterministic text rendering.
#pragma once

#include "tvlnd/ml.hpp"

#include <json.hpp>

#include <cctype>
#include <functional>

namespace tvl {

using Json = nlohmann::ordered_json;

struct InputOptions {
  Int degree_bound = 8;
  Int search_norm = 24;
};

struct InputSpec {
  size_t rank = 0;
  ZMat sigma_rays;
  Curve curve;
  std::map<CurvePoint, QMat> divisor;  // point -> vertex list
  InputOptions options;
};

inline CurvePoint parse_point(const std::string& s, const Curve& curve) {
  if (s == "inf") return CurvePoint::infinity();
  if (curve.kind == Curve::Kind::Abstract) return CurvePoint::named(s);
  return CurvePoint::scalar(parse_rat(s));
}

inline InputSpec parse_input(const Json& j) {
  InputSpec in;
  if (!j.is_object()) fail(ErrorCode::ParseError, "input must be a JSON object");
  if (!j.contains("rank") || !j["rank"].is_number_unsigned() || j["rank"] == 0)
    fail(ErrorCode::ParseError, "missing or invalid 'rank'");
  in.rank = j["rank"].get<size_t>();
  if (j.contains("sigma_rays")) {
    for (auto& row : j["sigma_rays"]) {
      ZVec v;
      for (auto& x : row) {
        if (x.is_number_integer())
          v.push_back(Int(x.get<long>()));
        else
          v.push_back(Int(parse_rat(x.get<std::string>()).get_num()));
      }
      if (v.size() != in.rank) fail(ErrorCode::ParseError, "sigma ray of wrong rank");
      in.sigma_rays.push_back(v);
    }
  }
  if (!j.contains("curve") || !j["curve"].contains("kind"))
    fail(ErrorCode::ParseError, "missing 'curve.kind'");
  std::string kind = j["curve"]["kind"].get<std::string>();
  if (kind == "affine_line")
    in.curve.kind = Curve::Kind::AffineLine;
  else if (kind == "projective_line")
    in.curve.kind = Curve::Kind::ProjectiveLine;
  else if (kind == "abstract") {
    in.curve.kind = Curve::Kind::Abstract;
    in.curve.genus = j["curve"].value("genus", 0);
    if (j["curve"].contains("points"))
      for (auto& p : j["curve"]["points"]) in.curve.named_points.push_back(p.get<std::string>());
  } else
    fail(ErrorCode::ParseError, "unknown curve kind '" + kind + "'");
  if (j.contains("divisor")) {
    for (auto& entry : j["divisor"]) {
      if (!entry.contains("point") || !entry.contains("vertices"))
        fail(ErrorCode::ParseError, "divisor entries need 'point' and 'vertices'");
      CurvePoint p = parse_point(entry["point"].get<std::string>(), in.curve);
      check_point_on(in.curve, p);
      QMat verts;
      for (auto& row : entry["vertices"]) {
        QVec v;
        for (auto& x : row) v.push_back(parse_rat(x.get<std::string>()));
        if (v.size() != in.rank) fail(ErrorCode::ParseError, "vertex of wrong rank");
        verts.push_back(v);
      }
      if (verts.empty()) fail(ErrorCode::ParseError, "divisor coefficient needs a vertex");
      if (in.divisor.count(p)) fail(ErrorCode::ParseError, "duplicate divisor point");
      in.divisor[p] = verts;
    }
  }
  if (j.contains("options")) {
    auto& o = j["options"];
    if (o.contains("degree_bound")) in.options.degree_bound = Int(o["degree_bound"].get<long>());
    if (o.contains("search_norm")) in.options.search_norm = Int(o["search_norm"].get<long>());
  }
  return in;
}

inline Json serialize_input(const InputSpec& in) {
  Json j;
  j["rank"] = in.rank;
  j["sigma_rays"] = Json::array();
  for (auto& r : in.sigma_rays) {
    Json row = Json::array();
    for (auto& x : r) row.push_back(long(x.get_si()));
    j["sigma_rays"].push_back(row);
  }
  switch (in.curve.kind) {
    case Curve::Kind::AffineLine: j["curve"] = {{"kind", "affine_line"}}; break;
    case Curve::Kind::ProjectiveLine: j["curve"] = {{"kind", "projective_line"}}; break;
    case Curve::Kind::Abstract:
      j["curve"] = {{"kind", "abstract"}, {"genus", in.curve.genus}, {"points", in.curve.named_points}};
      break;
  }
  j["divisor"] = Json::array();
  for (auto& [p, verts] : in.divisor) {
    Json entry;
    entry["point"] = point_str(p);
    entry["vertices"] = Json::array();
    for (auto& v : verts) {
      Json row = Json::array();
      for (auto& x : v) row.push_back(rat_str(x));
      entry["vertices"].push_back(row);
    }
    j["divisor"].push_back(entry);
  }
  j["options"] = {{"degree_bound", long(in.options.degree_bound.get_si())},
                  {"search_norm", long(in.options.search_norm.get_si())}};
  return j;
}

inline PolyhedralDivisor build_divisor(const InputSpec& in) {
  PolyhedralDivisor d;
  d.curve = in.curve;
  d.sigma = in.sigma_rays.empty() ? cone_zero(in.rank, Side::N)
                                  : cone_from_rays(in.rank, Side::N, in.sigma_rays);
  if (!d.sigma.pointed()) fail(ErrorCode::NotPointed, "sigma must be pointed");
  for (auto& [p, verts] : in.divisor) d.set_coeff(p, tailed_poly(verts, d.sigma));
  return d;
}

// ---- formatted pieces ----

inline std::string cone_str(const Cone& c) {
  std::string s = "cone(";
  bool first = true;
  for (auto& r : c.rays) {
    if (!first) s += ", ";
    s += vec_str(r);
    first = false;
  }
  for (auto& l : c.lin) {
    if (!first) s += ", ";
    s += "+-" + vec_str(l);
    first = false;
  }
  s += ")";
  return s;
}

inline std::string factored_str(const FactoredFun& f) {
  std::string s;
  if (f.scalar != 1 || f.orders.empty()) s = rat_str(f.scalar);
  for (auto& [z, n] : f.orders) {
    if (!s.empty()) s += "*";
    std::string base = (z == 0) ? "t" : "(t-" + rat_str(z) + ")";
    s += base;
    if (n != 1) s += "^" + n.get_str();
  }
  return s.empty() ? "1" : s;
}

inline std::string element_str(const ZVec& degree, const RatFun& fn) {
  return ratfun_str(fn) + " chi^" + vec_str(degree);
}

// The derivation in the shape lambda t^r chi^e (t d/dt + sum h(mu_i) chi^{mu_i} d_nu_i).
inline std::string derivation_formula(const HorizontalLND& lnd) {
  std::string s;
  if (lnd.scale != 1) s += rat_str(lnd.scale) + " * ";
  if (lnd.r != 0) s += "t^" + lnd.r.get_str() + " ";
  s += "chi^" + vec_str(lnd.e) + " ( t d/dt";
  const QVec& h = lnd.frame.h;
  for (size_t i = 0; i < h.size(); ++i) {
    if (h[i] == 0) continue;
    ZVec mu = zvec_zero(h.size());
    mu[i] = 1;
    s += " + (" + rat_str(h[i]) + ") chi^" + vec_str(mu) + " d_nu" + std::to_string(i + 1);
  }
  s += " )";
  return s;
}

// ---- element expression parser: "<f> chi^(a,b,...)" ----

namespace detail {

struct ExprParser {
  const std::string& s;
  size_t pos = 0;
  explicit ExprParser(const std::string& str) : s(str) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void err(const std::string& what) {
    fail(ErrorCode::ParseError, what + " at position " + std::to_string(pos));
  }

  RatFun parse_expr() {
    RatFun acc = parse_term();
    while (true) {
      skip();
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }
  RatFun parse_term() {
    skip();
    bool neg = false;
    while (eat('-')) neg = !neg;
    RatFun acc = parse_factor();
    while (true) {
      skip();
      if (eat('*'))
        acc = acc * parse_factor();
      else if (pos < s.size() && (s[pos] == '(' || s[pos] == 't'))
        acc = acc * parse_factor();  // juxtaposition
      else
        break;
    }
    return neg ? -acc : acc;
  }
  RatFun parse_factor() {
    RatFun base = parse_primary();
    skip();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) err("expected exponent");
      long e = std::stol(s.substr(start, pos - start));
      RatFun r = RatFun::constant(1);
      for (long i = 0; i < e; ++i) r = r * base;
      if (neg) r = RatFun::constant(1) / r;
      return r;
    }
    return base;
  }
  RatFun parse_primary() {
    skip();
    if (eat('(')) {
      RatFun r = parse_expr();
      if (!eat(')')) err("expected ')'");
      return r;
    }
    if (pos < s.size() && s[pos] == 't') {
      ++pos;
      return RatFun::t();
    }
    size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (start == pos) err("expected a number, 't' or '('");
    return RatFun::constant(parse_rat(s.substr(start, pos - start)));
  }
};

}  // namespace detail

// Parses "<f> chi^(a,b,...)".
inline std::pair<RatFun, ZVec> parse_element(const std::string& text, size_t rank) {
  size_t chi = text.find("chi^");
  if (chi == std::string::npos) fail(ErrorCode::ParseError, "element needs a 'chi^(...)' part");
  std::string fn_part = text.substr(0, chi);
  std::string deg_part = text.substr(chi + 4);
  // degree
  size_t open = deg_part.find('('), close = deg_part.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    fail(ErrorCode::ParseError, "degree must look like (a,b)");
  std::string inner = deg_part.substr(open + 1, close - open - 1);
  ZVec deg;
  std::string cur;
  for (char ch : inner + ",") {
    if (ch == ',') {
      if (cur.empty()) fail(ErrorCode::ParseError, "empty degree coordinate");
      deg.push_back(Int(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch)))
      cur += ch;
  }
  if (deg.size() != rank) fail(ErrorCode::ParseError, "degree has wrong rank");
  // function
  std::string fp = fn_part;
  while (!fp.empty() && std::isspace(static_cast<unsigned char>(fp.back()))) fp.pop_back();
  RatFun fn = RatFun::constant(1);
  if (!fp.empty()) {
    detail::ExprParser p(fp);
    fn = p.parse_expr();
    p.skip();
    if (p.pos != fp.size()) p.err("trailing input");
  }
  return {fn, deg};
}

}  // namespace tvl
