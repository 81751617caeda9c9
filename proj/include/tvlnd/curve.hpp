// Smooth curves (affine line, projective line, abstract with genus and named
// points) and their points encoded over Q.
#pragma once

#include "tvlnd/rational.hpp"

namespace tvl {

struct Curve {
  enum class Kind { AffineLine, ProjectiveLine, Abstract };
  Kind kind = Kind::AffineLine;
  int genus = 0;                          // Abstract only
  std::vector<std::string> named_points;  // Abstract only

  bool projective() const { return kind != Kind::AffineLine; }
  bool rational() const { return kind != Kind::Abstract; }
  bool operator==(const Curve& o) const {
    return kind == o.kind && genus == o.genus && named_points == o.named_points;
  }
};

struct CurvePoint {
  enum class Kind { Scalar, Infinity, Label };
  Kind kind = Kind::Scalar;
  Rat z;              // Scalar
  std::string label;  // Label

  static CurvePoint scalar(const Rat& v) { return {Kind::Scalar, v, {}}; }
  static CurvePoint infinity() { return {Kind::Infinity, Rat(0), {}}; }
  static CurvePoint named(std::string l) { return {Kind::Label, Rat(0), std::move(l)}; }

  bool is_scalar() const { return kind == Kind::Scalar; }
  bool is_infinity() const { return kind == Kind::Infinity; }

  bool operator==(const CurvePoint& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Scalar) return z == o.z;
    if (kind == Kind::Label) return label == o.label;
    return true;
  }
  bool operator<(const CurvePoint& o) const {
    if (kind != o.kind) return int(kind) < int(o.kind);
    if (kind == Kind::Scalar) return z < o.z;
    if (kind == Kind::Label) return label < o.label;
    return false;
  }
};

inline std::string point_str(const CurvePoint& p) {
  switch (p.kind) {
    case CurvePoint::Kind::Scalar: return rat_str(p.z);
    case CurvePoint::Kind::Infinity: return "inf";
    case CurvePoint::Kind::Label: return p.label;
  }
  return "?";
}

inline void check_point_on(const Curve& c, const CurvePoint& p) {
  switch (c.kind) {
    case Curve::Kind::AffineLine:
      if (!p.is_scalar()) fail(ErrorCode::ParseError, "affine line points are scalars");
      return;
    case Curve::Kind::ProjectiveLine:
      if (p.kind == CurvePoint::Kind::Label)
        fail(ErrorCode::ParseError, "projective line points are scalars or inf");
      return;
    case Curve::Kind::Abstract:
      if (p.kind != CurvePoint::Kind::Label)
        fail(ErrorCode::ParseError, "abstract curve points are labels");
      for (auto& l : c.named_points)
        if (l == p.label) return;
      fail(ErrorCode::ParseError, "unknown point label '" + p.label + "'");
  }
}

}  // namespace tvl
