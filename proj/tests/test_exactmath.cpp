#include <random>

#include "doctest.h"
#include "ldp/exactmath.hpp"

using namespace ldp;

TEST_CASE("Int promotes to GMP on overflow and demotes back") {
  Int a = INT64_MAX;
  Int b = a + 1;
  CHECK(!b.is_small());
  CHECK(b.str() == "9223372036854775808");
  Int c = b - 1;
  CHECK(c.is_small());
  CHECK(c == a);
  Int m = Int(INT64_MIN);
  CHECK((-m).str() == "9223372036854775808");
  Int big = Int::parse("123456789012345678901234567890");
  CHECK((big * big / big) == big);
  CHECK(floor_div(Int(-7), Int(2)) == Int(-4));
  CHECK(ceil_div(Int(-7), Int(2)) == Int(-3));
  CHECK(floor_mod(Int(-7), Int(3)) == Int(2));
  CHECK(gcd(Int(-12), Int(18)) == Int(6));
  CHECK(lcm(Int(4), Int(6)) == Int(12));
}

TEST_CASE("Int arithmetic agrees with mpz on random operands") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20000; ++it) {
    int64_t x = static_cast<int64_t>(rng()) >> (rng() % 63);
    int64_t y = static_cast<int64_t>(rng()) >> (rng() % 63);
    Int a = x, b = y;
    mpz_class X(static_cast<long>(x)), Y(static_cast<long>(y));
    CHECK((a + b).to_mpz() == X + Y);
    CHECK((a - b).to_mpz() == X - Y);
    CHECK((a * b).to_mpz() == X * Y);
    Int p = a * b * a;
    CHECK(p.to_mpz() == X * Y * X);
    if (y != 0) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
      CHECK(floor_div(a, b).to_mpz() == q);
    }
  }
}

TEST_CASE("Rat stays reduced and round-trips") {
  Rat a(6, -4);
  CHECK(a.num() == Int(-3));
  CHECK(a.den() == Int(2));
  CHECK(a.str() == "-3/2");
  CHECK(Rat::parse("-3/2") == a);
  CHECK(a * Rat(a.den()) == Rat(a.num()));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(floor(Rat(-1, 2)) == Int(-1));
  CHECK(ceil(Rat(-1, 2)) == Int(0));
  std::mt19937_64 rng(11);
  for (int it = 0; it < 5000; ++it) {
    // large denominators force the GMP path
    Rat p(Int(static_cast<int64_t>(rng() >> 2)), Int(static_cast<int64_t>(rng() >> 3) + 1));
    Rat q(Int(static_cast<int64_t>(rng() >> 2)) - Int(INT64_MAX / 4), Int(static_cast<int64_t>(rng() >> 3) + 1));
    Rat s = p + q;
    CHECK(s - q == p);
    CHECK((p * q) / q == p);
    CHECK(s.den().sign() > 0);
    CHECK(gcd(s.num(), s.den()) == Int(1));
    CHECK(s * Rat(s.den()) == Rat(s.num()));
  }
}

TEST_CASE("primitive and det2") {
  CHECK(primitive(Vec2(2, 4)) == Vec2(1, 2));
  CHECK(primitive(Vec2(1, 0)) == Vec2(1, 0));
  CHECK(primitive(VecN{-6, -9, -12}) == VecN{-2, -3, -4});
  CHECK_THROWS(primitive(Vec2(0, 0)));
  CHECK(det2(Vec2(1, 0), Vec2(0, 1)) == Int(1));
  CHECK(det2(Vec2(1, 2), Vec2(1, -1)) == Int(-3));
  CHECK(det2(Vec2(3, 4), Vec2(1, 0)) == Int(-4));
}

namespace {
IntMatrix mat(std::vector<std::vector<int>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}
}  // namespace

TEST_CASE("Smith normal form") {
  // Cl of the weighted plane: Z^3 / im(P^t)
  auto P = mat({{1, 1, -1}, {2, -1, 0}});
  auto s = smith_normal_form(P.transpose());
  CHECK(s.free_rank == 1);
  CHECK(s.torsion().empty());
  auto z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.free_rank == 2);
  auto d = smith_normal_form(mat({{2, 0}, {0, 3}}));
  CHECK(d.free_rank == 0);
  REQUIRE(d.invariant_factors.size() == 2);
  CHECK(d.invariant_factors[0] == Int(1));
  CHECK(d.invariant_factors[1] == Int(6));
}

TEST_CASE("Smith normal form is invariant under unimodular multiplication") {
  std::mt19937 rng(5);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int it = 0; it < 300; ++it) {
    size_t r = rnd(1, 4), c = rnd(1, 4);
    IntMatrix M(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) M(i, j) = rnd(-6, 6);
    auto unimod = [&](size_t n) {
      IntMatrix U(n, n);
      for (size_t i = 0; i < n; ++i) U(i, i) = 1;
      for (int s = 0; s < 6; ++s) {
        size_t a = rnd(0, n - 1), b = rnd(0, n - 1);
        if (a == b) continue;
        int f = rnd(-3, 3);
        for (size_t j = 0; j < n; ++j) U(a, j) += Int(f) * U(b, j);
      }
      return U;
    };
    auto s1 = smith_normal_form(M);
    auto s2 = smith_normal_form(unimod(r) * M * unimod(c));
    CHECK(s1.free_rank == s2.free_rank);
    CHECK(s1.torsion() == s2.torsion());
    for (size_t i = 1; i < s1.invariant_factors.size(); ++i)
      CHECK((s1.invariant_factors[i] % s1.invariant_factors[i - 1]).is_zero());
  }
}

TEST_CASE("Hilbert basis of 2D cones") {
  CHECK(hilbert_basis_2d(Vec2(1, 0), Vec2(1, 3)) == std::vector<Vec2>{{1, 0}, {1, 1}, {1, 2}, {1, 3}});
  CHECK(hilbert_basis_2d(Vec2(1, 0), Vec2(5, 8)) == std::vector<Vec2>{{1, 0}, {1, 1}, {2, 3}, {5, 8}});
  CHECK(hilbert_basis_2d(Vec2(1, 0), Vec2(0, 1)) == std::vector<Vec2>{{1, 0}, {0, 1}});
  // (2,3) lies outside this cone; (1,1),(3,4) is already a regular pair
  CHECK(hilbert_basis_2d(Vec2(1, 0), Vec2(3, 4)) == std::vector<Vec2>{{1, 0}, {1, 1}, {3, 4}});
  CHECK_THROWS(hilbert_basis_2d(Vec2(1, 0), Vec2(2, 0)));
}

TEST_CASE("Hilbert basis agrees with the box oracle") {
  std::mt19937 rng(3);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int done = 0;
  while (done < 400) {
    Vec2 a(rnd(-9, 9), rnd(-9, 9)), b(rnd(-9, 9), rnd(-9, 9));
    if ((a.x.is_zero() && a.y.is_zero()) || (b.x.is_zero() && b.y.is_zero())) continue;
    a = primitive(a);
    b = primitive(b);
    if (det2(a, b).is_zero()) continue;
    auto h = hilbert_basis_2d(a, b);
    auto o = hilbert_basis_2d_bruteforce(a, b);
    CHECK(h == o);
    CHECK(h.front() == a);
    CHECK(h.back() == b);
    ++done;
  }
}
