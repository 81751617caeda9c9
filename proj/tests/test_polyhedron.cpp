#include "helpers.hpp"

using namespace tvt;

TEST_SUITE_BEGIN("polyhedron");

TEST_CASE("vertex minimalization") {
  Cone tail = cone_zero(2, Side::N);
  // (0,1) lies between (0,0) and (0,2)
  TailedPoly p = tailed_poly({qv({"0", "0"}), qv({"0", "1"}), qv({"0", "2"}), qv({"1", "0"})}, tail);
  CHECK(p.vertices == QMat{qv({"0", "0"}), qv({"0", "2"}), qv({"1", "0"})});
}

TEST_CASE("neutral element of the Minkowski semigroup") {
  Cone tail = cone_from_rays(2, Side::N, {zv({1, 0}), zv({1, 2})});
  TailedPoly a = tailed_poly({qv({"1", "1"}), qv({"0", "3"})}, tail);
  CHECK(minkowski_sum(a, neutral_poly(tail)) == a);
}

TEST_CASE("single-vertex translates add") {
  Cone tail = cone_from_rays(2, Side::N, {zv({1, 0}), zv({0, 1})});
  TailedPoly p = tailed_poly({qv({"1", "2"})}, tail);
  TailedPoly q = tailed_poly({qv({"-1/2", "3"})}, tail);
  TailedPoly s = minkowski_sum(p, q);
  CHECK(s.vertices == QMat{qv({"1/2", "5"})});
  Cone other = cone_zero(2, Side::N);
  CHECK_THROWS_AS((void)minkowski_sum(p, tailed_poly({qv({"0", "0"})}, other)), Error);
}

TEST_CASE("deg D of the hyperbolic example") {
  PolyhedralDivisor d = ex_hyp_divisor();
  TailedPoly deg = deg_divisor(d);
  QMat expect = {qv({"-1/4", "-1"}), qv({"-1/4", "0"}), qv({"0", "0"}), qv({"0", "2"})};
  std::sort(expect.begin(), expect.end(), LexLess{});
  CHECK(deg.vertices == expect);
}

TEST_CASE("support values of the hyperbolic example") {
  PolyhedralDivisor d = ex_hyp_divisor();
  const TailedPoly& d0 = *d.coeff(CurvePoint::scalar(0));
  const TailedPoly& d1 = *d.coeff(CurvePoint::scalar(1));
  CHECK(support_value(d0, zv({4, 0})) == Rat(-1));
  CHECK(support_value(d0, zv({8, -1})) == Rat(-1));
  CHECK(support_value(d1, zv({8, -1})) == Rat(-1));
  // the tail cone alone supports the zero function
  TailedPoly sigma_only = neutral_poly(cone_from_rays(2, Side::N, {zv({1, 0}), zv({0, 1})}));
  for (long x = 0; x <= 3; ++x)
    for (long y = 0; y <= 3; ++y) CHECK(support_value(sigma_only, zv({x, y})) == 0);
}

TEST_CASE("support function pieces form the normal quasifan") {
  PolyhedralDivisor d = ex_hyp_divisor();
  SupportFunction h0 = support_function(*d.coeff(CurvePoint::scalar(0)));
  CHECK(h0.pieces.size() == 3);
  for (auto& piece : h0.pieces) CHECK(piece.cone.dim == 2);
  for (long x = -5; x <= 5; ++x)
    for (long y = -5; y <= 5; ++y) {
      ZVec m = zv({x, y});
      CHECK(h0(m) == support_value(*d.coeff(CurvePoint::scalar(0)), m));
    }
}

TEST_CASE("common refinement of the hyperbolic example has the four cones") {
  PolyhedralDivisor d = ex_hyp_divisor();
  Quasifan qf = divisor_quasifan(d);
  REQUIRE(qf.maximal_cones.size() == 4);
  cone_with_rays(qf.maximal_cones, {zv({1, 0}), zv({-4, 1})});
  cone_with_rays(qf.maximal_cones, {zv({-4, 1}), zv({-1, 0})});
  cone_with_rays(qf.maximal_cones, {zv({-1, 0}), zv({8, -1})});
  cone_with_rays(qf.maximal_cones, {zv({8, -1}), zv({1, 0})});
}

TEST_CASE("input support functions are linear on every refinement cell") {
  PolyhedralDivisor d = ex_hyp_divisor();
  Quasifan qf = divisor_quasifan(d);
  for (auto& cell : qf.maximal_cones) {
    for (auto& [p, tp] : d.coeffs) {
      SupportFunction h = support_function(tp);
      const LinearPiece& piece = h.piece_containing(cell);
      // the piece's form matches the function at the rays and their sums
      for (auto& r : cell.rays) CHECK(support_value(tp, r) == dot(r, piece.form));
      ZVec sum = cell.relint_point();
      CHECK(support_value(tp, sum) == dot(sum, piece.form));
    }
  }
}

TEST_CASE("refinement is idempotent") {
  PolyhedralDivisor d = ex_hyp_divisor();
  Quasifan qf = divisor_quasifan(d);
  Quasifan qf2 = common_refinement({qf, qf});
  CHECK(qf2.maximal_cones == qf.maximal_cones);
}

TEST_CASE("refinement of two halfplane fans") {
  Quasifan a, b;
  a.support = b.support = cone_full(2, Side::M);
  a.maximal_cones = {cone_from_inequalities(2, Side::M, {zv({1, 0})}, {}),
                     cone_from_inequalities(2, Side::M, {zv({-1, 0})}, {})};
  b.maximal_cones = {cone_from_inequalities(2, Side::M, {zv({1, -1})}, {}),
                     cone_from_inequalities(2, Side::M, {zv({-1, 1})}, {})};
  Quasifan r = common_refinement({a, b});
  CHECK(r.maximal_cones.size() == 4);
  // sample-point cell identification: every point lies in a refinement cell
  // contained in a cell of each input fan
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    ZVec m = zv({rng.range(-9, 9), rng.range(-9, 9)});
    bool found = false;
    for (auto& cell : r.maximal_cones)
      if (cell.contains(m)) {
        found = true;
        bool in_a = false, in_b = false;
        for (auto& c : a.maximal_cones)
          if (c.contains(cell)) in_a = true;
        for (auto& c : b.maximal_cones)
          if (c.contains(cell)) in_b = true;
        CHECK(in_a);
        CHECK(in_b);
      }
    CHECK(found);
  }
}

TEST_CASE("support mismatch is rejected") {
  Quasifan a, b;
  a.support = cone_full(2, Side::M);
  a.maximal_cones = {a.support};
  b.support = cone_from_rays(2, Side::M, {zv({1, 0}), zv({0, 1})});
  b.maximal_cones = {b.support};
  CHECK_THROWS_AS((void)common_refinement({a, b}), Error);
}

TEST_CASE("property: Minkowski additivity of support functions") {
  Rng rng(0xABCD);
  int done = 0;
  while (done < 200) {
    size_t n = size_t(rng.range(1, 3));
    ZMat rays;
    for (long i = 0, k = rng.range(1, n == 1 ? 1 : 3); i < k; ++i) {
      ZVec v(n);
      for (auto& x : v) x = Int(rng.range(0, 3));
      if (!is_zero(v)) rays.push_back(v);
    }
    Cone tail = rays.empty() ? cone_zero(n, Side::N) : cone_from_rays(n, Side::N, rays);
    if (!tail.pointed()) continue;
    auto rand_poly = [&] {
      QMat verts;
      for (long i = 0, k = rng.range(1, 3); i < k; ++i) {
        QVec v(n);
        for (auto& x : v) x = rng.rat(3, 4);
        verts.push_back(v);
      }
      return tailed_poly(verts, tail);
    };
    TailedPoly a = rand_poly(), b = rand_poly();
    TailedPoly s = minkowski_sum(a, b);
    Cone w = dual_cone(tail);
    for (int trial = 0; trial < 8; ++trial) {
      QVec m(n);
      for (auto& x : m) x = rng.rat(4, 3);
      if (!w.contains(m)) continue;
      CHECK(support_value(s, m) == support_value(a, m) + support_value(b, m));
    }
    // superadditivity and positive homogeneity on lattice points
    for (int trial = 0; trial < 6; ++trial) {
      ZVec m1(n), m2(n);
      for (auto& x : m1) x = Int(rng.range(-4, 4));
      for (auto& x : m2) x = Int(rng.range(-4, 4));
      if (!w.contains(m1) || !w.contains(m2)) continue;
      CHECK(support_value(a, vadd(m1, m2)) >= support_value(a, m1) + support_value(a, m2));
      long lam = rng.range(0, 4);
      CHECK(support_value(a, vscale(Int(lam), m1)) == Rat(lam) * support_value(a, m1));
    }
    ++done;
  }
}

TEST_CASE("lattice points in polyhedra") {
  // triangle with vertices (0,0), (5/2,0), (0,5/2)
  HPoly p;
  p.n = 2;
  p.add(qv({"1", "0"}), Rat(0));
  p.add(qv({"0", "1"}), Rat(0));
  p.add(qv({"-1", "-1"}), parse_rat("-5/2"));
  auto pt = some_lattice_point(p);
  REQUIRE(pt.has_value());
  CHECK(p.contains(*pt));
  // empty polyhedron
  HPoly q;
  q.n = 1;
  q.add(qv({"1"}), Rat(1));
  q.add(qv({"-1"}), Rat(0));
  CHECK(!some_lattice_point(q).has_value());
  // unbounded strip with no lattice slice: 1/3 <= x <= 2/3, y free
  HPoly s;
  s.n = 2;
  s.add(qv({"1", "0"}), parse_rat("1/3"));
  s.add(qv({"-1", "0"}), parse_rat("-2/3"));
  CHECK(!some_lattice_point(s).has_value());
  // shifted strip hitting x = 1
  HPoly s2;
  s2.n = 2;
  s2.add(qv({"1", "0"}), parse_rat("2/3"));
  s2.add(qv({"-1", "0"}), parse_rat("-4/3"));
  auto hit = some_lattice_point(s2);
  REQUIRE(hit.has_value());
  CHECK((*hit)[0] == 1);
}

TEST_SUITE_END();
