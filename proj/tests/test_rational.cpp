#include "helpers.hpp"

using namespace tvt;

TEST_SUITE_BEGIN("rational");

TEST_CASE("parsing and canonical form") {
  Rat q = parse_rat("-2/4");
  CHECK(q.get_num() == -1);
  CHECK(q.get_den() == 2);
  CHECK(rat_str(q) == "-1/2");
  CHECK(parse_rat("7") == Rat(7));
  CHECK_THROWS_AS((void)parse_rat("x"), Error);
}

TEST_CASE("floor, ceil, frac") {
  CHECK(rat_floor(parse_rat("-1/4")) == -1);
  CHECK(rat_ceil(parse_rat("-1/4")) == 0);
  CHECK(rat_frac(parse_rat("-1/4")) == parse_rat("3/4"));
  CHECK(rat_floor(parse_rat("5/3")) == 1);
  CHECK(rat_frac(Rat(3)) == 0);
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(zv({4, -6, 2})) == zv({2, -3, 1}));
  CHECK(primitive(qv({"1/2", "-3/4"})) == zv({2, -3}));
  CHECK(primitive(zv({0, 0})) == zv({0, 0}));
}

TEST_CASE("lattice kernels and HNF") {
  // kernel of (1, 2, 3)
  ZMat k = z_kernel({zv({1, 2, 3})});
  CHECK(k.size() == 2);
  for (auto& v : k) CHECK(dot(zv({1, 2, 3}), v) == 0);
  // saturated span of (2, 4) is spanned by (1, 2)
  ZMat s = saturated_span_basis({zv({2, 4})});
  REQUIRE(s.size() == 1);
  CHECK(s[0] == zv({1, 2}));
}

TEST_CASE("reduction modulo a lattice") {
  ZMat basis = lattice_hnf({zv({4, 0}), zv({0, 1})});
  CHECK(in_lattice(zv({8, 3}), basis));
  CHECK(!in_lattice(zv({2, 0}), basis));
  CHECK(reduce_mod_lattice(zv({9, 5}), basis) == zv({1, 0}));
}

TEST_CASE("polynomials and rational functions") {
  Poly p({Rat(-1), Rat(1)});  // t - 1
  Poly q = p * p;
  CHECK(q.deg() == 2);
  CHECK(root_order(q, Rat(1)) == 2);
  RatFun f(Poly({Rat(0), Rat(1)}));  // t
  RatFun g = f * f - f;              // t^2 - t
  CHECK(g.ord_at(Rat(0)) == 1);
  CHECK(g.ord_at(Rat(1)) == 1);
  CHECK(g.ord_at_infinity() == -2);
  RatFun h = g / f;  // t - 1
  CHECK(h == RatFun(Poly({Rat(-1), Rat(1)})));
  CHECK(g.derivative() == RatFun(Poly({Rat(-1), Rat(2)})));
  // t^{-2}
  RatFun tm2 = RatFun::t_pow(Int(-2));
  CHECK(tm2.ord_at(Rat(0)) == -2);
}

TEST_CASE("factored functions expand and refactor") {
  FactoredFun ff;
  ff.scalar = parse_rat("3");
  ff.orders[Rat(0)] = 2;
  ff.orders[Rat(1)] = -1;
  RatFun f = ff.expand();
  CHECK(f.ord_at(Rat(0)) == 2);
  CHECK(f.ord_at(Rat(1)) == -1);
  auto back = factor_over_points(f, {Rat(0), Rat(1)});
  REQUIRE(back.has_value());
  CHECK(back->scalar == Rat(3));
  CHECK(back->orders[Rat(0)] == 2);
  CHECK(back->orders[Rat(1)] == -1);
}

TEST_SUITE_END();
