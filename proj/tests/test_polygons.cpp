#include <map>
#include <random>

#include "doctest.h"
#include "ldp/polygons.hpp"

using namespace ldp;

namespace {
PolygonZ P(std::vector<std::pair<int, int>> pts) {
  std::vector<Vec2> v;
  for (auto [x, y] : pts) v.push_back({x, y});
  return convex_hull(v);
}
}  // namespace

TEST_CASE("hollowness on small examples") {
  CHECK(is_almost_k_hollow(P({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), Int(1)));
  for (int k = 1; k <= 3; ++k) CHECK(is_almost_k_hollow(P({{1, 0}, {0, 1}, {-2 * k, -1}}), Int(k)));
  CHECK(!is_almost_k_hollow(P({{2, 0}, {0, 1}, {-2, 0}, {0, -1}}), Int(1)));
  // origin on the boundary
  CHECK(!is_almost_k_hollow(P({{1, 0}, {0, 1}, {-1, 0}}), Int(1)));
  CHECK(!is_almost_k_hollow(P({{1, 0}, {0, 1}, {-7, -1}}), Int(3)));
}

TEST_CASE("hollow test agrees with the brute-force scan on random polygons") {
  std::mt19937 rng(1);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int tested = 0, hollow = 0;
  while (tested < 3000) {
    int n = rnd(3, 7), R = rnd(2, 14);
    std::vector<Vec2i> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rnd(-R, R), rnd(-R, R)});
    auto A = convex_hull(pts);
    if (A.size() < 3 || !origin_interior(A)) continue;
    for (int64_t k = 1; k <= 3; ++k) {
      bool fast = is_almost_k_hollow(A, k);
      CHECK(fast == is_almost_k_hollow_bruteforce(A, k));
      // the arbitrary precision instantiation must agree too
      CHECK(fast == is_almost_k_hollow(to_Z(A), Int(k)));
      hollow += fast;
    }
    ++tested;
  }
  CHECK(hollow > 100);
}

TEST_CASE("expand and collapse") {
  auto sq = P({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  auto e = expand(sq, Vec2(2, 1));
  CHECK(e == P({{1, 0}, {2, 1}, {0, 1}, {-1, 0}, {0, -1}}));
  // (1,1) is a new boundary point, so collapsing keeps it
  CHECK(collapse(e, Vec2(2, 1)) == P({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}}));
  CHECK(collapse(expand(sq, Vec2(1, 1)), Vec2(1, 1)) == sq);
  CHECK_THROWS(expand(sq, Vec2(0, 0)));
  auto d1 = P({{1, 0}, {0, 1}, {-1, -1}});
  auto c = collapse(d1, Vec2(1, 0));
  CHECK(!origin_interior(c));
}

TEST_CASE("minimal polygons") {
  for (int64_t k = 1; k <= 3; ++k) {
    auto ms = minimal_polygons(k);
    CHECK(ms.size() == static_cast<size_t>(2 * k + 1));
    for (const auto& m : ms) {
      auto mz = to_Z(m);
      CHECK(is_ldp(mz));
      CHECK(is_almost_k_hollow(m, k));
      for (const auto& v : mz.v) CHECK(!origin_interior(collapse(mz, v)));
    }
  }
}

TEST_CASE("canonical form is a GL2 invariant") {
  std::mt19937 rng(2);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int it = 0; it < 500; ++it) {
    std::vector<Vec2i> pts;
    for (int i = 0; i < rnd(3, 8); ++i) pts.push_back({rnd(-6, 6), rnd(-6, 6)});
    auto A = convex_hull(pts);
    if (!is_ldp(A)) continue;
    auto c = canonical_form(A);
    CHECK(canonical_form(c) == c);
    // random unimodular map, possibly orientation reversing
    Mat2T<int64_t> U{1, 0, 0, 1};
    for (int s = 0; s < 4; ++s) {
      int t = rnd(-2, 2);
      U = (rng() & 1 ? Mat2T<int64_t>{1, t, 0, 1} : Mat2T<int64_t>{1, 0, t, 1}) * U;
    }
    if (rng() & 1) U = Mat2T<int64_t>{0, 1, 1, 0} * U;
    std::vector<Vec2i> img;
    for (const auto& w : A.v) img.push_back(U * w);
    CHECK(canonical_form(convex_hull(img)) == c);
    CHECK(canonical_form(to_Z(A)) == to_Z(c));
  }
}

TEST_CASE("shadow") {
  auto sq = P({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(shadow_excludes(sq, Vec2(2, 0), Vec2(4, 0)));
  CHECK(!shadow_excludes(sq, Vec2(2, 0), Vec2(1, 0)));
  CHECK(!shadow_excludes(sq, Vec2(2, 0), Vec2(0, 0)));
  std::mt19937 rng(4);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int it = 0; it < 2000; ++it) {
    Vec2 w(2 * rnd(-3, 3), 2 * rnd(-3, 3));
    Vec2 v(rnd(-8, 8), rnd(-8, 8));
    if ((w.x.is_zero() && w.y.is_zero()) || locate(sq, v) >= 0) continue;
    if (shadow_excludes(sq, w, v)) CHECK(locate(expand(sq, v), w) == 1);
  }
}

TEST_CASE("toric invariants") {
  auto d1 = P({{1, 0}, {0, 1}, {-1, -1}});
  auto t = toric_invariants(d1);
  CHECK(t.k2 == Rat(9));
  CHECK(t.gorenstein_index == Int(1));
  CHECK(t.picard == 1);
  CHECK(t.eps_max == Rat(1));
  auto w = P({{1, 2}, {1, -1}, {-1, 0}});
  auto tw = toric_invariants(w);
  CHECK(tw.gorenstein_index == Int(1));
  CHECK(tw.k2 == Rat(6));
  CHECK(toric_k2_intersection(w) == Rat(6));
  CHECK(toric_k2_dual_area(w) == Rat(6));
  CHECK(cone_gorenstein_index(Vec2(1, 0), Vec2(3, 4)) == Int(2));
  CHECK(toric_invariants(P({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})).k2 == Rat(8));
}

TEST_CASE("k = 1 and k = 2 toric classification") {
  for (int k = 1; k <= 2; ++k) {
    auto all = classify_polygons(k);
    std::map<size_t, int> hist;
    std::map<size_t, Rat> vol;
    bool eq = false;
    for (const auto& p : all) {
      auto pz = to_Z(p);
      REQUIRE(is_ldp(pz));
      CHECK(is_almost_k_hollow(p, int64_t(k)));
      auto inv = toric_invariants(pz);
      ++hist[p.size()];
      if (!vol.count(p.size()) || vol[p.size()] < inv.volume) vol[p.size()] = inv.volume;
      CHECK(inv.picard + 2 == static_cast<int>(p.size()));
      CHECK(inv.k2 == toric_k2_intersection(pz));
      CHECK(inv.k2 == toric_k2_dual_area(pz));
      CHECK(inv.eps_max >= Rat(1, k));
      if (inv.eps_max == Rat(1, k)) eq = true;
    }
    if (k == 1) {
      CHECK(all.size() == 16);
      CHECK(hist == std::map<size_t, int>{{3, 5}, {4, 7}, {5, 3}, {6, 1}});
      CHECK(vol[3] == Rat(9, 2));
      CHECK(vol[6] == Rat(3));
    } else {
      CHECK(all.size() == 505);
      CHECK(hist == std::map<size_t, int>{{3, 42}, {4, 181}, {5, 202}, {6, 74}, {7, 5}, {8, 1}});
      CHECK(vol[5] == Rat(17));
      CHECK(eq);
    }
  }
}
