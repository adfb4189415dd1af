#include <random>

#include "doctest.h"
#include "ldp/geometry.hpp"
#include "ldp/polygons.hpp"
#include "ldp/singular.hpp"
#include "test_util.hpp"

using namespace ldp;
using ldp::testing::random_pmatrix;
using ldp::testing::running_example;

namespace {

const std::vector<Polygon>& polys(int k) {
  static std::vector<Polygon> p1 = classify_polygons(1), p2 = classify_polygons(2);
  return k == 1 ? p1 : p2;
}

std::vector<Col> arm(std::vector<std::pair<int, int>> v) {
  std::vector<Col> a;
  for (auto [l, d] : v) a.push_back({l, d});
  return a;
}

}  // namespace

TEST_CASE("Gorenstein indices of the running example") {
  PMatrix P = running_example();
  auto g = local_gorenstein_indices(P);
  CHECK(g.iota_ij[0][0] == Int(2));
  REQUIRE(g.iota_plus_i.size() == 3);
  CHECK(g.iota_plus_i[0] == Int(3));
  CHECK(g.iota_plus_i[1] == Int(1));
  CHECK(g.iota_plus_i[2] == Int(1));
  CHECK(!g.iota_plus);
  REQUIRE(g.iota_minus);
  CHECK(*g.iota_minus == Int(3));
  CHECK(*g.u_minus == std::vector<Rat>{Rat(2, 3), Rat(2, 3), Rat(-1, 3)});
  CHECK(*g.zeta_minus == Int(1));
  CHECK(g.iota == Int(6));
  CHECK(is_log_terminal(P));
  CHECK(singularity_count(P) == 5);
}

TEST_CASE("elliptic forms agree with the direct solution") {
  std::mt19937 rng(17);
  int checked = 0;
  for (int it = 0; it < 4000; ++it) {
    PMatrix P = random_pmatrix(rng, 4);
    auto g = local_gorenstein_indices(P);
    Int lcm_all = 1;
    for (const auto& [x, i] : local_index_list(P, g)) lcm_all = lcm(lcm_all, i);
    CHECK(lcm_all == g.iota);
    for (bool plus : {true, false}) {
      if (plus ? P.vplus : P.vminus) continue;
      auto u = *(plus ? g.u_plus : g.u_minus);
      CHECK(u == elliptic_form_oracle(P, plus));
      // evaluations on the columns of the elliptic chart
      for (int i = 0; i <= P.r(); ++i) {
        const Col& c = plus ? P.arms[i].front() : P.arms[i].back();
        Rat e = Rat(c.d) * u.back();
        if (i == 0) {
          for (int q = 0; q < P.r(); ++q) e -= Rat(c.l) * u[q];
          CHECK(e == Rat(1) - Rat(P.r() - 1) * Rat(c.l));
        } else {
          e += Rat(c.l) * u[i - 1];
          CHECK(e == Rat(1));
        }
      }
      Int den = 1;
      for (const auto& x : u) den = lcm(den, x.den());
      CHECK(den == *(plus ? g.iota_plus : g.iota_minus));
      ++checked;
    }
    // toric charts agree with the polygon module's cone index
    for (const auto& x : fixed_points(P)) {
      if (x.kind == FixedPoint::EllipticPlus || x.kind == FixedPoint::EllipticMinus) continue;
      auto [a, b] = toric_chart(P, x);
      Int io = 0;
      for (const auto& [y, i] : local_index_list(P, g))
        if (y == x) io = i;
      CHECK(io == cone_gorenstein_index(a, b));
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("D and E type charts") {
  // D^{1,3}_4: columns (-2,-2,1), (2,0,1), (0,2,1)
  auto D13 = make_pmatrix({arm({{2, 1}}), arm({{2, 1}}), arm({{2, 1}})}, false, true);
  auto g = local_gorenstein_indices(D13);
  CHECK(*g.iota_plus == Int(3));
  CHECK(*g.zeta_plus == Int(1));
  auto t = elliptic_types(D13);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == "D_4^{1,3}");
  // D^{1,1}_4 resolves to the star with four -2 curves
  auto D11 = make_pmatrix({arm({{2, -1}}), arm({{2, 1}}), arm({{2, 1}})}, false, true);
  REQUIRE(validate(D11).ok);
  auto gr = resolution_graph(D11, {FixedPoint::EllipticPlus, 0, 0});
  CHECK(gr.self == std::vector<Int>{-2, -2, -2, -2});
  CHECK(gr.edges.size() == 3);
  CHECK(elliptic_types(D11) == std::vector<std::string>{"D_4^{1,1}"});
  CHECK(local_gorenstein_indices(D11).iota == Int(1));
  auto E6 = make_pmatrix({arm({{3, -2}}), arm({{3, 1}}), arm({{2, 1}})}, false, true);
  REQUIRE(validate(E6).ok);
  CHECK(elliptic_types(E6) == std::vector<std::string>{"E_6^{1,1}"});
  auto ge = resolution_graph(E6, {FixedPoint::EllipticPlus, 0, 0});
  CHECK(ge.self == std::vector<Int>(6, Int(-2)));
  auto E7 = make_pmatrix({arm({{4, -3}}), arm({{3, 1}}), arm({{2, 1}})}, false, true);
  REQUIRE(validate(E7).ok);
  CHECK(elliptic_types(E7) == std::vector<std::string>{"E_7^{1}"});
  auto E8 = make_pmatrix({arm({{5, -4}}), arm({{3, 1}}), arm({{2, 1}})}, false, true);
  REQUIRE(validate(E8).ok);
  CHECK(elliptic_types(E8) == std::vector<std::string>{"E_8^{1}"});
  CHECK(resolution_graph(E8, {FixedPoint::EllipticPlus, 0, 0}).self.size() == 8);
  CHECK(!is_platonic({Int(7), Int(3), Int(2)}));
  CHECK(is_platonic({Int(9), Int(1), Int(1)}));
  CHECK(is_platonic({Int(5), Int(2), Int(2)}));
}

TEST_CASE("resolutions") {
  PMatrix P = running_example();
  PMatrix R = minimal_resolution(P);
  PMatrix expect;
  expect.vplus = expect.vminus = true;
  expect.arms = {arm({{1, -1}, {3, -4}, {2, -3}, {5, -8}, {3, -5}, {1, -2}}), arm({{1, 1}, {2, 1}, {1, 0}}),
                 arm({{1, 1}, {2, 1}, {1, 0}})};
  CHECK(R == expect);
  CHECK(R.n() + R.m() == 14);
  CHECK(is_smooth_matrix(R));
  CHECK(is_smooth_matrix(canonical_resolution(P)));
  auto lab = elliptic_types(P);
  CHECK(lab == std::vector<std::string>{"D_5^{1,3}"});
  // smooth matrices with both v+- resolve to themselves
  auto S = make_pmatrix({arm({{1, 1}, {1, 0}, {1, -1}}), arm({{1, 0}})}, true, true);
  CHECK(canonical_resolution(S) == S);
  // A_n and K_n charts as parabolic points
  for (int a = 2; a <= 6; ++a) {
    auto Q = make_pmatrix({arm({{1, 0}}), arm({{a, 1}})}, true, true);
    auto g = resolution_graph(Q, {FixedPoint::ParabolicPlus, 1, 0});
    CHECK(g.self == std::vector<Int>(a - 1, Int(-2)));
    CHECK(g.edges.size() == size_t(a - 2));
  }
  // cone((0,1),(3,-1)) is the 1/3(1,1) point
  auto T = make_pmatrix({arm({{1, 0}}), arm({{3, -1}})}, true, true);
  FixedPoint x{FixedPoint::ParabolicPlus, 1, 0};
  PMatrix TR = minimal_resolution(T);
  CHECK(resolution_graph(T, TR, x).self == std::vector<Int>{-3});
  CHECK(singularity_label(T, TR, x, local_gorenstein_indices(T)) == "T^{3}_1");
}

TEST_CASE("canonical resolution is smooth and minimal resolution has no -1 curves over points") {
  std::mt19937 rng(23);
  for (int it = 0; it < 1500; ++it) {
    PMatrix P = random_pmatrix(rng, 3, 3, 7);
    if (!is_log_terminal(P)) continue;
    PMatrix C = canonical_resolution(P);
    CHECK(is_smooth_matrix(C));
    PMatrix R = minimal_resolution(P);
    CHECK(is_smooth_matrix(R));
    CHECK(k_squared(C) <= k_squared(R));
    int over = 0;
    for (const auto& x : fixed_points(P)) {
      auto g = resolution_graph(P, R, x);
      for (const auto& s : g.self) CHECK(s <= Int(-2));
      if (!is_singular(P, x)) CHECK(g.self.empty());
      over += static_cast<int>(g.self.size());
    }
    CHECK(over == R.n() + R.m() - P.n() - P.m());
  }
}

TEST_CASE("anticanonical complex and eps_max of the running example") {
  PMatrix P = running_example();
  auto A = antican_complex(P);
  CHECK(A.top == Rat(1));
  CHECK(A.bottom == Rat(-3));
  CHECK(is_complex_almost_k_hollow(P, 3));
  CHECK(!is_complex_almost_k_hollow(P, 2));
  CHECK(eps_max(P) == Rat(1, 3));
  CHECK(alpha_min(P) == Rat(3));
  CHECK(eps_max(make_pmatrix({arm({{1, -1}}), arm({{1, 0}})}, true, false)) == Rat(1));
}

TEST_CASE("complex hollowness agrees with the lattice scan") {
  std::mt19937 rng(29);
  int tested = 0, hollow = 0;
  while (tested < 2000) {
    PMatrix P = random_pmatrix(rng, 3, 3, 7, 12);
    if (!is_log_terminal(P) || !is_del_pezzo(P)) continue;
    ++tested;
    for (int64_t k = 1; k <= 3; ++k) {
      bool h = is_complex_almost_k_hollow(P, k);
      CHECK(h == is_complex_almost_k_hollow_bruteforce(P, k));
      // hollowness is the discrepancy bound
      CHECK(h == (eps_max(P) >= Rat(Int(1), Int(k))));
      hollow += h;
    }
  }
  CHECK(hollow > 200);
}

TEST_CASE("r = 1 cross-checks on all k <= 2 polygons") {
  size_t n = 0;
  for (int k : {1, 2}) {
    for (const auto& A : polys(k)) {
      PolygonZ Z = to_Z(A);
      PMatrix P = pmatrix_from_polygon(Z);
      auto ti = toric_invariants(Z);
      CHECK(local_gorenstein_indices(P).iota == ti.gorenstein_index);
      CHECK(eps_max(P) == ti.eps_max);
      CHECK(singularity_count(P) == ti.singular_points);
      for (int64_t q = 1; q <= 3; ++q) CHECK(is_complex_almost_k_hollow(P, q) == is_almost_k_hollow(A, q));
      CHECK(is_complex_almost_k_hollow(P, k));
      ++n;
    }
  }
  CHECK(n == 521);
}

TEST_CASE("affine toric surfaces by index") {
  auto c = affine_toric_by_index(Int(2), Int(9));
  std::vector<Int> bs;
  for (const auto& [e, v] : c) {
    bs.push_back(v.x);
    CHECK(v.y == Int(2) * (v.x - Int(1)));
    CHECK(cone_gorenstein_index(e, v) == Int(2));
  }
  CHECK(bs == std::vector<Int>{3, 5, 7, 9});
  auto c3 = affine_toric_by_index(Int(3), Int(6));
  bool has4 = false;
  for (const auto& [e, v] : c3) {
    CHECK(cone_gorenstein_index(e, v) == Int(3));
    has4 |= v == Vec2(4, 9);
  }
  CHECK(has4);
  CHECK_THROWS(affine_toric_by_index(Int(1), Int(5)));
}
