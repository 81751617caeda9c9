#include "helpers.hpp"

using namespace tvt;

TEST_SUITE_BEGIN("sections");

namespace {
QDivisor qdiv(Curve::Kind kind, std::initializer_list<std::pair<const char*, const char*>> cs) {
  QDivisor d;
  d.curve.kind = kind;
  for (auto& [pt, val] : cs) {
    CurvePoint p = std::string(pt) == "inf" ? CurvePoint::infinity()
                                            : CurvePoint::scalar(parse_rat(pt));
    d.set(p, parse_rat(val));
  }
  return d;
}
}  // namespace

TEST_CASE("monomial basis on P^1") {
  QDivisor d = qdiv(Curve::Kind::ProjectiveLine, {{"inf", "3"}});
  SectionBasis sb = sections_basis(d);
  REQUIRE(sb.basis.size() == 4);
  CHECK(sb.basis[0] == RatFun::constant(1));
  CHECK(sb.basis[3] == RatFun::t_pow(Int(3)));
  CHECK(sections_dim(d) == DimReport::exact(4));
}

TEST_CASE("affine cofactor line: t K[t]") {
  QDivisor d = qdiv(Curve::Kind::AffineLine, {{"0", "-1"}});
  SectionBasis sb = sections_basis(d, 4);
  CHECK(sb.cofactor.orders.at(Rat(0)) == 1);
  CHECK(sb.basis.front() == RatFun::t());
  CHECK(sections_dim(d).kind == DimReport::Kind::Infinite);
}

TEST_CASE("affine cofactor t(t-1) K[t]") {
  QDivisor d = qdiv(Curve::Kind::AffineLine, {{"0", "-1"}, {"1", "-1"}});
  SectionBasis sb = sections_basis(d, 2);
  RatFun tt1 = RatFun::t() * (RatFun::t() - RatFun::constant(1));
  CHECK(sb.basis.front() == tt1);
}

TEST_CASE("P^1 with mixed signs: 3 [inf] - 1 [0]") {
  QDivisor d = qdiv(Curve::Kind::ProjectiveLine, {{"inf", "3"}, {"0", "-1"}});
  CHECK(sections_dim(d) == DimReport::exact(3));
  SectionBasis sb = sections_basis(d);
  REQUIRE(sb.basis.size() == 3);
  // basis {t, t^2, t^3}
  CHECK(sb.basis[0] == RatFun::t());
  for (auto& f : sb.basis) CHECK(section_member(f, d));
}

TEST_CASE("negative degree on P^1 has no sections") {
  QDivisor d = qdiv(Curve::Kind::ProjectiveLine, {{"0", "-1"}});
  CHECK(sections_dim(d) == DimReport::exact(0));
  CHECK(sections_basis(d).basis.empty());
}

TEST_CASE("genus rules") {
  QDivisor d;
  d.curve.kind = Curve::Kind::Abstract;
  d.curve.genus = 1;
  d.curve.named_points = {"P"};
  CHECK(sections_dim(d) == DimReport::exact(1));  // zero divisor
  for (long r = 1; r <= 5; ++r) {
    QDivisor rp = d;
    rp.set(CurvePoint::named("P"), Rat(r));
    CHECK(sections_dim(rp) == DimReport::exact(r));
  }
  QDivisor neg = d;
  neg.set(CurvePoint::named("P"), Rat(-2));
  CHECK(sections_dim(neg) == DimReport::exact(0));
  // genus 2, degree 2: indeterminate window
  QDivisor g2 = d;
  g2.curve.genus = 2;
  g2.set(CurvePoint::named("P"), Rat(2));
  DimReport r = sections_dim(g2);
  CHECK(r.kind == DimReport::Kind::Indeterminate);
  CHECK(r.lower == 1);
  CHECK(r.upper == 3);
}

TEST_CASE("non-integral divisors are rejected") {
  QDivisor d = qdiv(Curve::Kind::AffineLine, {{"0", "1/2"}});
  CHECK_THROWS_AS((void)sections_dim(d), Error);
  CHECK_THROWS_AS((void)sections_basis(d), Error);
}

TEST_CASE("membership: div(f) + d >= 0") {
  QDivisor d = qdiv(Curve::Kind::AffineLine, {{"0", "-1"}});
  CHECK(section_member(RatFun::t(), d));
  CHECK(!section_member(RatFun::constant(1), d));
  // a pole outside the allowed support
  RatFun bad = RatFun::constant(1) / (RatFun::t() - RatFun::constant(2));
  CHECK(!section_member(bad, d));
  // allowed pole
  QDivisor e = qdiv(Curve::Kind::AffineLine, {{"0", "2"}});
  CHECK(section_member(RatFun::t_pow(Int(-2)), e));
  CHECK(!section_member(RatFun::t_pow(Int(-3)), e));
  // a numerator that does not factor over Q is still a section
  QDivisor zero;
  zero.curve.kind = Curve::Kind::AffineLine;
  RatFun irr(Poly({Rat(1), Rat(0), Rat(1)}));  // t^2 + 1
  CHECK(section_member(irr, zero));
}

TEST_CASE("property: basis members satisfy membership; P^1 size matches dim") {
  Rng rng(0x5EC5);
  for (int i = 0; i < 200; ++i) {
    bool projective = rng.range(0, 1) == 1;
    QDivisor d;
    d.curve.kind = projective ? Curve::Kind::ProjectiveLine : Curve::Kind::AffineLine;
    long npts = rng.range(0, 2);
    for (long k = 0; k < npts; ++k)
      d.set(CurvePoint::scalar(Rat(rng.range(0, 2))), Rat(rng.range(-3, 3)));
    if (projective && rng.range(0, 1)) d.set(CurvePoint::infinity(), Rat(rng.range(-3, 3)));
    SectionBasis sb = sections_basis(d, 3);
    for (auto& f : sb.basis) CHECK(section_member(f, d));
    if (projective) {
      DimReport dim = sections_dim(d);
      CHECK(Int(sb.basis.size()) == dim.dim);
    }
  }
}

TEST_SUITE_END();
