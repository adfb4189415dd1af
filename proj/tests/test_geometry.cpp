#include <random>

#include "doctest.h"
#include "ldp/geometry.hpp"
#include "ldp/polygons.hpp"
#include "test_util.hpp"

using namespace ldp;
using ldp::testing::random_pmatrix;
using ldp::testing::running_example;

namespace {

const ColRef Dp{ColRef::VPlus, 0, 0};
ColRef D(int i, int j) { return {ColRef::Arm, i, j - 1}; }

const std::vector<Polygon>& polygons_k(int k) {
  static std::vector<Polygon> p1 = classify_polygons(1), p2 = classify_polygons(2);
  return k == 1 ? p1 : p2;
}

}  // namespace

TEST_CASE("numeric profile of the running example") {
  auto np = numeric_profile(running_example());
  CHECK(np.l_plus == Int(12));
  CHECK(np.l_minus == Int(20));
  CHECK(np.m_plus == Rat(-1, 3));
  CHECK(np.ell_plus == Rat(1, 3));
  CHECK(np.m_minus == Rat(-3, 5));
  CHECK(np.ell_minus == Rat(1, 5));
  CHECK(np.d_minus == Rat(-3));
  CHECK(np.d_plus == Rat(-1));
  auto p2 = numeric_profile(make_pmatrix({{{1, 0}}, {{1, 0}}}, true, true));
  CHECK(p2.ell_plus == Rat(2));
}

TEST_CASE("intersection numbers of the running example") {
  PMatrix P = running_example();
  CHECK(intersection_number(P, Dp, Dp) == Rat(1, 3));
  CHECK(intersection_number(P, Dp, D(1, 1)) == Rat(1, 2));
  CHECK(intersection_number(P, D(1, 1), Dp) == Rat(1, 2));
  CHECK(intersection_number(P, D(0, 1), D(0, 1)) == Rat(-5, 12));
  CHECK(intersection_number(P, D(0, 1), D(0, 2)) == Rat(15, 4) / Rat(15));
  CHECK(intersection_number(P, Dp, D(0, 2)) == Rat(0));
  CHECK_THROWS(intersection_number(P, ColRef{ColRef::VMinus, 0, 0}, Dp));
  auto t = intersection_tables(P);
  CHECK(t.m[0][1] == Rat(15, 4));
  CHECK(t.alpha[0] == Rat(-1, 15));
  CHECK(t.delta[0][0] == Int(4));
}

TEST_CASE("anticanonical data of the running example") {
  PMatrix P = running_example();
  auto k = anticanonical_intersections(P);
  CHECK(*k.plus == Rat(2, 3));
  CHECK(!k.minus);
  CHECK(k.arm[2][0] == Rat(2, 3));
  CHECK(k.arm[1][0] == Rat(2, 3));
  // chain 1 > 1/2 > -1/3 on arm 0
  CHECK(k.arm[0][0] == Rat(1, 2) / Rat(3));
  CHECK(k.arm[0][1] == (Rat(1, 2) + Rat(1, 3)) / Rat(5));
  CHECK(is_del_pezzo(P));
  CHECK(k_squared(P) == Rat(1));
  auto cg = class_group(P);
  CHECK(cg.picard == 2);
}

TEST_CASE("toric examples") {
  auto P2 = make_pmatrix({{{1, -1}}, {{1, 0}}}, true, false);  // rays (-1,-1), (1,0), (0,1)
  CHECK(k_squared(P2) == Rat(9));
  CHECK(class_group(P2).picard == 1);
  CHECK(class_group(P2).torsion.empty());
  auto P1P1 = make_pmatrix({{{1, 0}}, {{1, 0}}}, true, true);
  CHECK(k_squared(P1P1) == Rat(8));
  CHECK(is_del_pezzo(P1P1));
  // P(1,2,3): rays (-2,-3), (1,0), (1,1)... use (3,-2) rewritten as arm columns
  auto W = pmatrix_from_polygon(PolygonZ{{{1, 0}, {0, 1}, {-2, -3}}});
  CHECK(class_group(W).picard == 1);
  CHECK(class_group(W).torsion.empty());
  CHECK(k_squared(W) == Rat(6));
}

TEST_CASE("intersection matrix oracles on random matrices") {
  std::mt19937 rng(3);
  int dp = 0;
  for (int it = 0; it < 3000; ++it) {
    PMatrix P = random_pmatrix(rng);
    auto M = intersection_matrix(P);
    auto Pm = to_matrix(P);
    const size_t N = M.size();
    // principal divisors are numerically trivial
    for (size_t row = 0; row < Pm.rows(); ++row)
      for (size_t y = 0; y < N; ++y) {
        Rat s;
        for (size_t x = 0; x < N; ++x) s += Rat(Pm(row, x)) * M[x][y];
        CHECK(s == Rat(0));
      }
    for (size_t x = 0; x < N; ++x)
      for (size_t y = 0; y < N; ++y) CHECK(M[x][y] == M[y][x]);
    // -K as a combination of the boundary curves
    auto a = anticanonical_coefficients(P);
    auto k = anticanonical_intersections(P);
    auto cols = all_columns(P);
    std::vector<Rat> kd;
    for (const auto& c : cols) {
      if (c.kind == ColRef::VPlus)
        kd.push_back(*k.plus);
      else if (c.kind == ColRef::VMinus)
        kd.push_back(*k.minus);
      else
        kd.push_back(k.arm[c.i][c.j]);
    }
    Rat k2;
    for (size_t y = 0; y < N; ++y) {
      Rat s;
      for (size_t x = 0; x < N; ++x) s += Rat(a[x]) * M[x][y];
      CHECK(s == kd[y]);
      k2 += Rat(a[y]) * kd[y];
    }
    CHECK(k2 == k_squared(P));
    bool all_pos = true;
    for (const auto& v : kd) all_pos &= v.sign() > 0;
    CHECK(all_pos == is_del_pezzo(P));
    dp += all_pos;
    // flipping swaps the source and sink data
    PMatrix F = flip_last_row(P);
    CHECK(m_plus(F) == -m_minus(P));
    CHECK(ell_plus(F) == ell_minus(P));
    CHECK(k_squared(F) == k_squared(P));
    CHECK(is_del_pezzo(F) == is_del_pezzo(P));
    CHECK(class_group(F).picard == class_group(P).picard);
    CHECK(class_group(P).picard == P.n() + P.m() - P.r() - 1);
  }
  CHECK(dp > 50);
}

TEST_CASE("r = 1 matrices agree with the polygon module") {
  for (int k : {1, 2}) {
    for (const auto& A : polygons_k(k)) {
      PolygonZ Z = to_Z(A);
      PMatrix P = pmatrix_from_polygon(Z);
      REQUIRE(validate(P).ok);
      auto ti = toric_invariants(Z);
      CHECK(k_squared(P) == ti.k2);
      CHECK(is_del_pezzo(P));
      CHECK(class_group(P).picard == ti.picard);
      auto np = numeric_profile(P);
      if (!P.vplus) CHECK(*np.d_plus > Rat(0));
    }
  }
  CHECK(polygons_k(1).size() + polygons_k(2).size() == 521);
}

TEST_CASE("del Pezzo agrees with the polygon Fano criterion for r = 1") {
  // fans whose rays are not all vertices of their convex hull are not Fano
  std::mt19937 rng(9);
  int checked = 0;
  for (int it = 0; it < 3000; ++it) {
    PMatrix P = random_pmatrix(rng, 1);
    std::vector<Vec2> pts;
    for (const auto& c : P.arms[0]) pts.push_back({-c.l, c.d});
    for (const auto& c : P.arms[1]) pts.push_back({c.l, c.d});
    if (P.vplus) pts.push_back({0, 1});
    if (P.vminus) pts.push_back({0, -1});
    auto H = convex_hull(pts);
    bool fano = H.size() == pts.size() && origin_interior(H);
    CHECK(is_del_pezzo(P) == fano);
    ++checked;
  }
  CHECK(checked == 3000);
}
