#include "ldp/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "ldp/geometry.hpp"
#include "ldp/singular.hpp"

namespace ldp {

bool is_comb_minimal(const PMatrix& P) { return contractible_columns(P).empty(); }

bool in_class(const PMatrix& P, int64_t k) {
  if (!validate(P).ok) return false;
  if (P.r() >= 2 && !is_irredundant(P)) return false;
  if (!is_log_terminal(P) || !is_del_pezzo(P)) return false;
  return is_complex_almost_k_hollow(P, k);
}

int picard_number(const PMatrix& P) { return P.n() + P.m() - P.r() - 1; }
int family_dimension(const PMatrix& P) { return std::max(P.r() - 2, 0); }

std::map<int, size_t> dimension_histogram(const std::vector<PMatrix>& v) {
  std::map<int, size_t> h;
  for (const auto& P : v) ++h[family_dimension(P)];
  return h;
}

namespace {

using i64 = int64_t;

i64 floor_i(const Rat& q) { return floor(q).to_i64(); }
i64 ceil_i(const Rat& q) { return ceil(q).to_i64(); }

// integer bounds for d from d/l > a, d/l >= a, d/l < a, d/l <= a
i64 above_strict(const Rat& a, i64 l) { return floor_i(a * Rat(l)) + 1; }
i64 above(const Rat& a, i64 l) { return ceil_i(a * Rat(l)); }
i64 below_strict(const Rat& a, i64 l) { return ceil_i(a * Rat(l)) - 1; }
i64 below(const Rat& a, i64 l) { return floor_i(a * Rat(l)); }

// Arm polygon (0,t), columns, (0,b) scaled by a common denominator D.  The test
// "conv(arm ∪ v) almost k-hollow with every column a vertex" runs in int64 while
// all coordinates stay below 2^20, and on Int otherwise.
template <class T>
struct ArmTestT {
  PolygonT<T> base;           // counterclockwise hull of the arm polygon
  std::vector<Vec2T<T>> pts;  // its points in any order
  size_t ncols = 0;
  T kD;
  T scale;

  // v in the unscaled (l,d) coordinates
  bool accepts(T l, T d) const {
    Vec2T<T> v{l * scale, d * scale};
    if (locate(base, v) >= 0) return false;
    std::vector<Vec2T<T>> q = pts;
    q.push_back(v);
    PolygonT<T> H = convex_hull(std::move(q));
    size_t right = 0;
    T xmax = T(0);
    for (const auto& w : H.v) {
      if (detail::sgn(w.x) > 0) ++right;
      xmax = std::max(xmax, w.x);
    }
    if (right != ncols + 1) return false;
    return !has_k_point_in_columns(H, kD, kD, xmax);
  }
};

struct ArmTest {
  bool small = true;
  ArmTestT<i64> a;
  ArmTestT<Int> z;
  i64 lmax = 0, dmax = 0;  // admissible magnitudes for the int64 path

  ArmTest(const std::vector<Col>& cols, const Rat& t, const Rat& b, int64_t k) {
    Int D = lcm(t.den(), b.den());
    std::vector<Vec2> pts{{Int(0), (t * Rat(D)).num()}, {Int(0), (b * Rat(D)).num()}};
    for (const auto& c : cols) pts.push_back({c.l * D, c.d * D});
    const Int lim(int64_t(1) << 20);
    for (const auto& p : pts) small = small && abs(p.x) < lim && abs(p.y) < lim;
    small = small && D < lim;
    z.pts = pts;
    z.base = convex_hull(pts);
    z.ncols = cols.size();
    z.kD = Int(k) * D;
    z.scale = D;
    if (small) {
      for (const auto& p : pts) a.pts.push_back({p.x.to_i64(), p.y.to_i64()});
      a.base = convex_hull(a.pts);
      a.ncols = z.ncols;
      a.kD = z.kD.to_i64();
      a.scale = D.to_i64();
      i64 Dv = a.scale;
      lmax = ((int64_t(1) << 20) - 1) / Dv;
      dmax = lmax;
    }
  }

  bool accepts(i64 l, i64 d) const {
    if (small && l <= lmax && d <= dmax && -d <= dmax) return a.accepts(l, d);
    return z.accepts(Int(l), Int(d));
  }
};

// Cheap necessary conditions for membership, in the order validity, platonicity
// and the axis bounds; then the arm polygons with int64 arithmetic.
bool quick_reject(const PMatrix& P, int64_t k) {
  const Rat K(k);
  Rat t(1), b(-1);
  if (!P.vplus) {
    Rat lp = ell_plus(P);
    if (lp.sign() <= 0) return true;
    t = m_plus(P) / lp;
    if (t.sign() <= 0 || t > K) return true;
  }
  if (!P.vminus) {
    Rat lm = ell_minus(P);
    if (lm.sign() <= 0) return true;
    b = m_minus(P) / lm;
    if (b.sign() >= 0 || b < -K) return true;
  }
  for (const auto& arm : P.arms) {
    std::vector<Col> rest(arm.begin() + 1, arm.end());
    ArmTest at(rest, t, b, k);
    if (!at.accepts(arm.front().l.to_i64(), arm.front().d.to_i64())) return true;
  }
  return false;
}

bool platonic3(i64 a, i64 b, i64 c) { return b * c + a * c + a * b > a * b * c; }
bool platonic4(i64 a, i64 b, i64 c, i64 d) {
  // 1/a + 1/b + 1/c + 1/d > 2
  return b * c * d + a * c * d + a * b * d + a * b * c > 2 * a * b * c * d;
}
Rat inv_l(i64 l) { return Rat(Int(1), Int(l)); }
Rat q(i64 n, i64 d) { return Rat(Int(n), Int(d)); }
bool coprime(i64 a, i64 b) { return std::gcd(a, b) == 1; }

struct Collector {
  int64_t k;
  std::map<std::string, PMatrix> found;
  size_t tried = 0;

  void consider(const PMatrix& P) {
    ++tried;
    if (!validate(P).ok) return;
    if (P.r() >= 2 && !is_irredundant(P)) return;
    if (quick_reject(P, k)) return;
    if (!is_comb_minimal(P)) return;
    if (!is_log_terminal(P) || !is_del_pezzo(P)) return;
    if (!is_complex_almost_k_hollow(P, k)) return;
    PMatrix N = normal_form(P);
    found.emplace(key_bytes(N), std::move(N));
  }
};

std::vector<Col> one(i64 l, i64 d) { return {Col{Int(l), Int(d)}}; }
std::vector<Col> two(i64 l1, i64 d1, i64 l2, i64 d2) { return {Col{Int(l1), Int(d1)}, Col{Int(l2), Int(d2)}}; }

// (1,1,1;1) with v+: every l at least 2, platonic, arms 1 and 2 adapted, d_01 from -k <= d- < 0
void format_p111(Collector& c, i64 L) {
  const Rat K(c.k);
  for (i64 l0 = 2; l0 <= L; ++l0)
    for (i64 l1 = 2; l1 <= L; ++l1)
      for (i64 l2 = 2; l2 <= L; ++l2) {
        if (!platonic3(l0, l1, l2)) continue;
        Rat lam = inv_l(l0) + inv_l(l1) + inv_l(l2) - Rat(1);
        for (i64 d1 = 1; d1 < l1; ++d1) {
          if (!coprime(l1, d1)) continue;
          for (i64 d2 = 1; d2 < l2; ++d2) {
            if (!coprime(l2, d2)) continue;
            Rat s = q(d1, l1) + q(d2, l2);
            for (i64 d0 = above(-K * lam - s, l0); d0 <= below_strict(-s, l0); ++d0)
              if (coprime(l0, d0)) c.consider(make_pmatrix({one(l0, d0), one(l1, d1), one(l2, d2)}, true, false));
          }
        }
      }
}

// (2,1,1,1;0): l_01 = l_02 = 1 and a platonic triple of single arms
void format_2111(Collector& c, i64 L) {
  const Rat K(c.k);
  for (i64 l1 = 2; l1 <= L; ++l1)
    for (i64 l2 = 2; l2 <= L; ++l2)
      for (i64 l3 = 2; l3 <= L; ++l3) {
        if (!platonic3(l1, l2, l3)) continue;
        Rat lam = inv_l(l1) + inv_l(l2) + inv_l(l3) - Rat(1);
        for (i64 d1 = 1; d1 < l1; ++d1)
          for (i64 d2 = 1; d2 < l2; ++d2)
            for (i64 d3 = 1; d3 < l3; ++d3) {
              if (!coprime(l1, d1) || !coprime(l2, d2) || !coprime(l3, d3)) continue;
              Rat s = q(d1, l1) + q(d2, l2) + q(d3, l3);
              for (i64 a = above_strict(-s, 1); a <= below(K * lam - s, 1); ++a)
                for (i64 b = above(-K * lam - s, 1); b <= below_strict(-s, 1); ++b)
                  c.consider(make_pmatrix({two(1, a, 1, b), one(l1, d1), one(l2, d2), one(l3, d3)}, false, false));
            }
      }
}

// (2,1,1;0).  Lively case l_01 = l_02 = 1: 1 <= d_01 - d_02 = (d+ - d-)(1/l_11 + 1/l_21) and
// d+ - d- <= 2k give min(l_11, l_21) <= 4k.  Arms 1 and 2 are swapped into l_11 <= l_21.
void format_211(Collector& c, i64 Lshort, i64 Llong) {
  const Rat K(c.k);
  for (i64 l1 = 2; l1 <= Llong; ++l1)
    for (i64 l2 = l1; l2 <= Llong; ++l2)
      for (i64 l01 = 1; l01 <= Lshort; ++l01) {
        if (l01 > 1 && !platonic3(l01, l1, l2)) continue;
        for (i64 l02 = 1; l02 <= Lshort; ++l02) {
          if (l02 > 1 && !platonic3(l02, l1, l2)) continue;
          if (l01 == 1 && l02 == 1 && l1 > 4 * c.k) continue;
          Rat lp = inv_l(l01) + inv_l(l1) + inv_l(l2) - Rat(1);
          Rat lm = inv_l(l02) + inv_l(l1) + inv_l(l2) - Rat(1);
          for (i64 d1 = 1; d1 < l1; ++d1) {
            if (!coprime(l1, d1)) continue;
            for (i64 d2 = 1; d2 < l2; ++d2) {
              if (!coprime(l2, d2)) continue;
              Rat s = q(d1, l1) + q(d2, l2);
              for (i64 a = above_strict(-s, l01); a <= below(K * lp - s, l01); ++a) {
                if (!coprime(l01, a)) continue;
                for (i64 b = above(-K * lm - s, l02); b <= below_strict(-s, l02); ++b)
                  if (coprime(l02, b))
                    c.consider(make_pmatrix({two(l01, a, l02, b), one(l1, d1), one(l2, d2)}, false, false));
              }
            }
          }
        }
      }
}

// Two arms of length two and no v+-: not contracting their end columns forces
// m_01 - m_02 = m_11 - m_12 = m+ = -m-, so the first columns determine the matrix.
// (2,2,1;0)
void format_221(Collector& c, i64 L) {
  const Rat K(c.k);
  for (i64 l2 = 2; l2 <= L; ++l2)
    for (i64 d2 = 1; d2 < l2; ++d2) {
      if (!coprime(l2, d2)) continue;
      const Rat m2 = q(d2, l2);
      for (i64 l1 = 1; l1 <= L; ++l1)
        for (i64 d1 = 0; d1 < l1; ++d1) {
          if (!coprime(l1, d1)) continue;
          const Rat s = q(d1, l1) + m2;  // m_02 = -s
          const i64 l02 = s.den().to_i64();
          if (l02 > L) continue;
          for (i64 l0 = 1; l0 <= L; ++l0) {
            if (!platonic3(l0, l1, l2)) continue;
            Rat lp = inv_l(l0) + inv_l(l1) + inv_l(l2) - Rat(1);
            for (i64 d0 = above_strict(-s, l0); d0 <= below(K * lp - s, l0); ++d0) {
              if (!coprime(l0, d0)) continue;
              Rat m12 = -(q(d0, l0) + m2);
              const i64 l12 = m12.den().to_i64();
              if (l12 > L || !platonic3(l02, l12, l2)) continue;
              Rat delta = q(d0, l0) + s;
              Rat lm = inv_l(l02) + inv_l(l12) + inv_l(l2) - Rat(1);
              if (delta > K * lm) continue;
              c.consider(make_pmatrix({two(l0, d0, l02, (-s).num().to_i64()), two(l1, d1, l12, m12.num().to_i64()), one(l2, d2)},
                                      false, false));
            }
          }
        }
    }
}

// (2,2,1,1;0): at x+ one of l_01, l_11 is 1; arms 0 and 1 are swapped into l_01 = 1,
// arms 2 and 3 into l_21 >= l_31.
void format_2211(Collector& c, i64 L) {
  const Rat K(c.k);
  for (i64 l2 = 2; l2 <= L; ++l2)
    for (i64 l3 = 2; l3 <= l2; ++l3)
      for (i64 l1 = 1; l1 <= L; ++l1) {
        if (!platonic3(l1, l2, l3)) continue;
        Rat lp = inv_l(l1) + inv_l(l2) + inv_l(l3) - Rat(1);
        for (i64 d2 = 1; d2 < l2; ++d2)
          for (i64 d3 = 1; d3 < l3; ++d3) {
            if (!coprime(l2, d2) || !coprime(l3, d3)) continue;
            Rat w = q(d2, l2) + q(d3, l3);
            const i64 l12 = w.den().to_i64();
            for (i64 d1 = 0; d1 < l1; ++d1) {
              if (!coprime(l1, d1)) continue;
              Rat s = q(d1, l1) + w;
              const i64 l02 = s.den().to_i64();
              if (!platonic4(l02, l12, l2, l3)) continue;
              Rat lm = inv_l(l02) + inv_l(l12) + inv_l(l2) + inv_l(l3) - Rat(2);
              Rat top = K * min(lp, lm) - s;
              for (i64 d0 = above_strict(-s, 1); d0 <= below(top, 1); ++d0) {
                Rat m12 = -(Rat(d0) + w);
                c.consider(make_pmatrix(
                    {two(1, d0, l02, (-s).num().to_i64()), two(l1, d1, l12, m12.num().to_i64()), one(l2, d2), one(l3, d3)},
                    false, false));
              }
            }
          }
      }
}

// (2,2,1,1,1;0): l_01 = l_02 = l_11 = l_12 = 1, m+ = N integer, d+ = N / ell <= k
void format_22111(Collector& c, i64 L) {
  const Rat K(c.k);
  for (i64 l2 = 2; l2 <= L; ++l2)
    for (i64 l3 = 2; l3 <= L; ++l3)
      for (i64 l4 = 2; l4 <= L; ++l4) {
        if (!platonic3(l2, l3, l4)) continue;
        Rat lam = inv_l(l2) + inv_l(l3) + inv_l(l4) - Rat(1);
        for (i64 d2 = 1; d2 < l2; ++d2)
          for (i64 d3 = 1; d3 < l3; ++d3)
            for (i64 d4 = 1; d4 < l4; ++d4) {
              if (!coprime(l2, d2) || !coprime(l3, d3) || !coprime(l4, d4)) continue;
              Rat s = q(d2, l2) + q(d3, l3) + q(d4, l4);
              if (s.den() != Int(1)) continue;
              i64 si = s.num().to_i64();
              for (i64 N = 1; Rat(N) <= K * lam; ++N)
                c.consider(make_pmatrix({two(1, N - si, 1, -si), two(1, 0, 1, -N), one(l2, d2), one(l3, d3), one(l4, d4)},
                                        false, false));
            }
      }
}

}  // namespace

Rat c_of_k_oracle(int64_t k, const std::vector<Polygon>& polys) {
  Rat best;
  for (const auto& A : polys) {
    if (A.size() != 3) continue;
    for (int64_t g0 = 1; g0 <= k; ++g0)
      for (int64_t g1 = 1; g1 <= k; ++g1)
        for (int64_t g2 = 1; g2 <= k; ++g2) {
          Polygon T{{g0 * A.v[0], g1 * A.v[1], g2 * A.v[2]}};
          if (!is_almost_k_hollow(T, k)) continue;
          best = max(best, polygon_area(to_Z(T)));
        }
  }
  return best;
}

Rat c_of_k_oracle(int64_t k) { return c_of_k_oracle(k, classify_polygons(k)); }

CombMinBoxes comb_min_boxes(int64_t k, const CombMinOptions& opt) {
  const int64_t s = opt.scale, k2 = k * k;
  Rat c = opt.c_k.sign() > 0 ? opt.c_k : c_of_k_oracle(k);
  CombMinBoxes b;
  b.single_arms = std::max<int64_t>(4 * k2, 5) * s;
  b.two_one_short = std::max<int64_t>(4 * k2, 5) * s;
  b.two_one_long = std::max({int64_t(6), 4 * k2, floor_i(Rat(2) * c)}) * s;
  b.two_two = std::max({k2 * k + 3 * k2, 6 * k2}) * s;
  return b;
}

std::vector<PMatrix> classify_comb_minimal(int64_t k, const CombMinOptions& opt) {
  CombMinBoxes b = comb_min_boxes(k, opt);
  Collector c{k, {}, 0};
  format_p111(c, b.single_arms);
  format_2111(c, b.single_arms);
  format_211(c, b.two_one_short, b.two_one_long);
  format_221(c, b.two_two);
  format_2211(c, b.single_arms);
  format_22111(c, b.single_arms);
  std::vector<PMatrix> out;
  for (auto& [key, P] : c.found) out.push_back(std::move(P));
  return out;
}

namespace {

// unimodular M with det 1 and M w = (0,1)
Mat2 to_vplus(const Vec2& w) {
  Int g, s, t;
  ext_gcd(w.x, w.y, g, s, t);  // s x + t y = 1
  return Mat2{w.y, -w.x, s, t};
}

}  // namespace

namespace {

// r = 1 matrices of A with the source in direction w: w a primitive point of A or a
// recorded outside point
void toric_seeds_of(const FoundPolygon& f, std::vector<std::pair<PolygonZ, PMatrix>>& out) {
  out.clear();
  const Polygon& A = f.found;
  std::vector<Vec2i> ws = f.extensions;
  int64_t x0 = A.v[0].x, x1 = x0, y0 = A.v[0].y, y1 = y0;
  for (const auto& v : A.v) {
    x0 = std::min(x0, v.x), x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
  }
  for (int64_t x = x0; x <= x1; ++x)
    for (int64_t y = y0; y <= y1; ++y)
      if (std::gcd(x, y) == 1 && locate(A, Vec2i{x, y}) >= 0) ws.push_back({x, y});
  for (const auto& w : ws) {
    Mat2 M = to_vplus(Vec2(w.x, w.y));
    PolygonZ C;
    for (const auto& v : A.v) C.v.push_back(M * Vec2(v.x, v.y));
    PMatrix P = pmatrix_from_polygon(C);
    out.emplace_back(std::move(C), std::move(P));
  }
}

}  // namespace

StartingSets starting_polygon_set(int64_t k, const std::vector<FoundPolygon>& polys) {
  (void)k;
  StartingSets out;
  std::unordered_set<std::string> seen;
  std::vector<std::pair<PolygonZ, PMatrix>> tmp;
  for (const auto& f : polys) {
    toric_seeds_of(f, tmp);
    for (auto& [C, P] : tmp) {
      if (!seen.insert(key_bytes(normal_form(P))).second) continue;
      out.polygons.push_back(std::move(C));
      out.toric.push_back(std::move(P));
    }
  }
  return out;
}

std::vector<PolygonZ> small_starting_polygons(const std::vector<Polygon>& polys) {
  std::vector<PolygonZ> out;
  for (const auto& B : polys) {
    const size_t q = B.size();
    if (q > 5) continue;
    auto is_vertex = [&](const Vec2i& p) { return std::find(B.v.begin(), B.v.end(), p) != B.v.end(); };
    int64_t x0 = B.v[0].x, x1 = x0, y0 = B.v[0].y, y1 = y0;
    for (const auto& v : B.v) {
      x0 = std::min(x0, v.x), x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
    }
    for (int64_t x = x0; x <= x1; ++x)
      for (int64_t y = y0; y <= y1; ++y) {
        Vec2i v{x, y};
        if (std::gcd(x, y) != 1 || locate(B, v) < 0) continue;
        const bool vv = is_vertex(v), mv = is_vertex(Vec2i{-x, -y});
        Polygon Bv;
        if (q >= 4 && vv && !mv) {
          std::vector<Vec2i> rest;
          for (const auto& w : B.v)
            if (!(w == v)) rest.push_back(w);
          Bv = convex_hull(rest);
          if (Bv.size() < 3 || !origin_interior(Bv)) continue;
        } else if (q <= 4 && !vv && !mv) {
          Bv = B;
        } else {
          continue;
        }
        Mat2 Mp = to_vplus(Vec2(x, y));
        Mat2 Mm = Mat2{Int(1), Int(0), Int(0), Int(-1)} * Mp;
        for (const Mat2* M : {&Mp, &Mm}) {
          std::vector<Vec2> pts;
          for (const auto& w : Bv.v) pts.push_back(*M * Vec2(w.x, w.y));
          out.push_back(convex_hull(pts));
        }
      }
  }
  return out;
}

BoundsProfile bounds_profile(int64_t k, const std::vector<PMatrix>& seeds) {
  BoundsProfile b;
  b.k = k;
  b.arm_count_max_ee = static_cast<int>(4 * k);
  b.arm_count_max_parabolic = static_cast<int>(2 * k + 2);
  bool first = true;
  for (const auto& P : seeds) {
    Rat t = P.vplus ? Rat(1) : m_plus(P) / ell_plus(P);
    Rat bt = P.vminus ? Rat(-1) : m_minus(P) / ell_minus(P);
    Rat a = min(t, -bt);
    if (first || a < b.alpha) b.alpha = a;
    first = false;
  }
  if (first) b.alpha = Rat(1);
  b.ell = Rat(2 * k * k) / b.alpha;
  return b;
}

namespace {

// Bound on a raised top t' of an arm polygon whose top is t.  While the first column v_1
// stays a vertex only the triangle (0,t), (0,t'), v_1 is new, and the first point of kZ^2
// with x >= k to become interior gives the bound.  v_1 stops being a vertex once t' reaches
// the line through v_2 and v_1 (strict).
struct Cap {
  Rat v;
  bool strict = false;
};
Cap tighter(const Cap& a, const Cap& b) {
  if (a.v < b.v) return a;
  if (b.v < a.v) return b;
  return {a.v, a.strict || b.strict};
}

Cap top_cap(const std::vector<Col>& arm, const Rat& t, int64_t k) {
  const Col& v = arm.front();
  const i64 l = v.l.to_i64();
  const Rat d(v.d);
  Cap cap{Rat(k), false};
  for (i64 x = k; x < l; x += k) {
    Rat y_line = t + (d - t) * q(x, l);
    Rat yp = Rat(k) * Rat(ceil(y_line / Rat(k)));
    cap = tighter(cap, {(yp * Rat(l) - d * Rat(x)) / Rat(l - x), false});
  }
  if (arm.size() >= 2 && arm[1].l > v.l) {
    const Col& w = arm[1];
    Rat through = d + (d - Rat(w.d)) * Rat(v.l) / Rat(w.l - v.l);
    cap = tighter(cap, {through, true});
  }
  return cap;
}

// mirror image for the bottom
Cap bottom_cap(const std::vector<Col>& arm, const Rat& b, int64_t k) {
  std::vector<Col> m(arm.rbegin(), arm.rend());
  for (auto& c : m) c.d = -c.d;
  Cap c = top_cap(m, -b, k);
  return {-c.v, c.strict};
}

void extension_candidates_impl(const PMatrix& X, int64_t k, bool new_arm_only, std::vector<PMatrix>& out) {
  const Rat K(k);
  const Rat mp = m_plus(X), mm = m_minus(X), lp = ell_plus(X), lm = ell_minus(X);
  if (!X.vplus && lp.sign() <= 0) return;
  if (!X.vminus && lm.sign() <= 0) return;
  const Rat t = X.vplus ? Rat(1) : mp / lp;
  const Rat b = X.vminus ? Rat(-1) : mm / lm;
  if (t.sign() <= 0 || b.sign() >= 0) return;
  const i64 L = floor_i(Rat(2 * k * k) / min(t, -b));
  // moving the top (bottom) must keep the other arms hollow
  const int R = X.r();
  std::vector<Cap> tcap(R + 1, Cap{K}), bcap(R + 1, Cap{-K});
  for (int i = 0; i <= R; ++i) {
    if (!X.vplus) tcap[i] = top_cap(X.arms[i], t, k);
    if (!X.vminus) bcap[i] = bottom_cap(X.arms[i], b, k);
  }
  // caps for a move in arm `skip` (R + 1: a new arm); the bottom cap is stored negated
  auto top_bound = [&](int skip) {
    Cap c{K};
    for (int i = 0; i <= R; ++i)
      if (i != skip) c = tighter(c, tcap[i]);
    return c;
  };
  auto bottom_bound = [&](int skip) {
    Cap c{K};
    for (int i = 0; i <= R; ++i)
      if (i != skip) c = tighter(c, {-bcap[i].v, bcap[i].strict});
    return Cap{-c.v, c.strict};
  };

  // new column at the top of an arm whose first column has (l_old, m_old)
  auto top_range = [&](i64 l, i64 l_old, const Rat& m_old, const Cap& T, i64& lo, i64& hi) {
    Rat lY = lp - inv_l(l_old) + inv_l(l);
    Rat base = mp - m_old;
    lo = above_strict(m_old, l);
    if (X.vplus) {
      hi = below_strict(lY - base, l);
      return;
    }
    if (lY.sign() <= 0) {
      hi = lo - 1;
      return;
    }
    lo = std::max(lo, above(t * lY - base, l));
    hi = T.strict ? below_strict(T.v * lY - base, l) : below(T.v * lY - base, l);
  };
  auto bottom_range = [&](i64 l, i64 l_old, const Rat& m_old, const Cap& B, i64& lo, i64& hi) {
    Rat lY = lm - inv_l(l_old) + inv_l(l);
    Rat base = mm - m_old;
    hi = below_strict(m_old, l);
    if (X.vminus) {
      lo = above_strict(-lY - base, l);
      return;
    }
    if (lY.sign() <= 0) {
      lo = hi + 1;
      return;
    }
    hi = std::min(hi, below(b * lY - base, l));
    lo = B.strict ? above_strict(B.v * lY - base, l) : above(B.v * lY - base, l);
  };

  // The end ranges are empty unless 1/l > 1/l_old - ell + m/T (m instead of m/T with v+-).
  auto limit = [&](const Rat& rhs) {
    if (rhs.sign() <= 0) return L;
    return std::min(L, ceil_i(Rat(1) / rhs) - 1);
  };
  auto top_limit = [&](i64 l_old, const Cap& T) { return limit(inv_l(l_old) - lp + (X.vplus ? mp : mp / T.v)); };
  auto bottom_limit = [&](i64 l_old, const Cap& B) { return limit(inv_l(l_old) - lm - (X.vminus ? mm : mm / B.v)); };

  if (!new_arm_only) {
    for (int i = 0; i <= X.r(); ++i) {
      const auto& arm = X.arms[i];
      const int n = static_cast<int>(arm.size());
      ArmTest at(arm, t, b, k);
      auto emit = [&](int pos, i64 l, i64 d) {
        PMatrix Y = X;
        Y.arms[i].insert(Y.arms[i].begin() + pos, Col{Int(l), Int(d)});
        out.push_back(std::move(Y));
      };
      const i64 l1 = arm.front().l.to_i64(), ln = arm.back().l.to_i64();
      const Rat m1 = arm.front().slope(), mn = arm.back().slope();
      i64 lo, hi;
      const Cap T = top_bound(i), B = bottom_bound(i);
      const i64 Lt = top_limit(l1, T), Lb = bottom_limit(ln, B);
      for (i64 l = 1; l <= Lt; ++l) {
        top_range(l, l1, m1, T, lo, hi);
        for (i64 d = lo; d <= hi; ++d)
          if (coprime(l, d) && at.accepts(l, d)) emit(0, l, d);
      }
      for (int j = 0; j + 1 < n; ++j) {
        const Rat s0 = arm[j + 1].slope(), s1 = arm[j].slope();
        for (i64 l = 1; l <= L; ++l)
          for (i64 d = above_strict(s0, l); d <= below_strict(s1, l); ++d)
            if (coprime(l, d) && at.accepts(l, d)) emit(j + 1, l, d);
      }
      for (i64 l = 1; l <= Lb; ++l) {
        bottom_range(l, ln, mn, B, lo, hi);
        for (i64 d = lo; d <= hi; ++d)
          if (coprime(l, d) && at.accepts(l, d)) emit(n, l, d);
      }
    }
    if (!X.vplus) out.push_back(proper_extend_vplus(X));
    if (!X.vplus && !X.vminus) out.push_back(proper_extend_vminus(X));
  }

  const bool parabolic = X.vplus || X.vminus;
  const int arm_max = static_cast<int>(parabolic ? 2 * k + 2 : 4 * k);
  if (X.r() + 2 > arm_max) return;
  std::vector<Col> red{Col{Int(1), Int(0)}};
  ArmTest at(red, t, b, k);
  i64 lo, hi;
  const Cap T = top_bound(R + 1), B = bottom_bound(R + 1);
  const i64 Lt = top_limit(1, T), Lb = bottom_limit(1, B);
  for (i64 l = 1; l <= Lt; ++l) {
    top_range(l, 1, Rat(0), T, lo, hi);
    for (i64 d = lo; d <= hi; ++d)
      if (coprime(l, d) && at.accepts(l, d)) {
        PMatrix Y = X;
        Y.arms.push_back({Col{Int(l), Int(d)}, Col{Int(1), Int(0)}});
        out.push_back(std::move(Y));
      }
  }
  for (i64 l = 1; l <= Lb; ++l) {
    bottom_range(l, 1, Rat(0), B, lo, hi);
    for (i64 d = lo; d <= hi; ++d)
      if (coprime(l, d) && at.accepts(l, d)) {
        PMatrix Y = X;
        Y.arms.push_back({Col{Int(1), Int(0)}, Col{Int(l), Int(d)}});
        out.push_back(std::move(Y));
      }
  }
}

// Membership test with memo of the verdicts, keyed by normal form.
struct Admitter {
  int64_t k;
  const std::unordered_set<std::string>* seen = nullptr;  // read-only during a level
  std::unordered_set<std::string> rejected, accepted;
  std::vector<std::pair<std::string, PMatrix>> found;

  void offer(const PMatrix& Y) {
    if (!validate(Y).ok) return;
    if (Y.r() >= 2 && !is_irredundant(Y)) return;
    if (Y.vplus && Y.vminus) return;
    if (quick_reject(Y, k)) return;
    if (!is_log_terminal(Y) || !is_del_pezzo(Y)) return;
    PMatrix N = normal_form(Y);
    std::string key = key_bytes(N);
    if (seen && seen->count(key)) return;
    if (rejected.count(key) || accepted.count(key)) return;
    if (!is_complex_almost_k_hollow(N, k)) {
      rejected.insert(std::move(key));
      return;
    }
    accepted.insert(key);
    found.emplace_back(std::move(key), std::move(N));
  }
};

std::string level_path(const std::string& dir, int rho) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "level_%03d.bin", rho);
  return (std::filesystem::path(dir) / buf).string();
}

void write_level(const std::string& dir, int rho, const std::vector<PMatrix>& v) {
  std::filesystem::create_directories(dir);
  std::string path = level_path(dir, rho), tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    uint64_t n = v.size();
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (const auto& P : v) {
      std::string key = key_bytes(P);
      uint32_t len = static_cast<uint32_t>(key.size());
      f.write(reinterpret_cast<const char*>(&len), sizeof len);
      f.write(key.data(), len);
    }
    if (!f) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool read_level(const std::string& dir, int rho, std::vector<PMatrix>& v) {
  std::ifstream f(level_path(dir, rho), std::ios::binary);
  if (!f) return false;
  uint64_t n = 0;
  f.read(reinterpret_cast<char*>(&n), sizeof n);
  v.clear();
  for (uint64_t i = 0; i < n; ++i) {
    uint32_t len = 0;
    f.read(reinterpret_cast<char*>(&len), sizeof len);
    std::string key(len, '\0');
    f.read(key.data(), len);
    if (!f) throw std::runtime_error("truncated checkpoint " + level_path(dir, rho));
    v.push_back(from_key_bytes(key));
  }
  return true;
}

std::vector<std::pair<std::string, PMatrix>> merge_found(std::vector<Admitter>& ad) {
  std::vector<std::pair<std::string, PMatrix>> all;
  for (auto& a : ad)
    for (auto& e : a.found) all.push_back(std::move(e));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  all.erase(std::unique(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first == b.first; }), all.end());
  return all;
}

template <class F>
void run_workers(int threads, F&& work) {
  if (threads == 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
  for (auto& th : pool) th.join();
}

// new-arm children of all toric seeds, without keeping the seeds
std::vector<std::pair<std::string, PMatrix>> expand_toric(const std::vector<FoundPolygon>& polys, int64_t k, int threads) {
  threads = std::max(1, threads);
  std::vector<Admitter> ad(threads, Admitter{k, nullptr, {}, {}, {}});
  std::atomic<size_t> next{0};
  run_workers(threads, [&](int w) {
    std::unordered_set<std::string> done;
    std::vector<std::pair<PolygonZ, PMatrix>> seeds;
    std::vector<PMatrix> cand;
    for (size_t i = next++; i < polys.size(); i = next++) {
      toric_seeds_of(polys[i], seeds);
      for (const auto& sd : seeds) {
        if (!done.insert(key_bytes(sd.second)).second) continue;
        cand.clear();
        extension_candidates_impl(sd.second, k, true, cand);
        for (const auto& Y : cand) ad[w].offer(Y);
      }
    }
  });
  return merge_found(ad);
}

// Expands every member of `parents`, distributing them over threads.
std::vector<std::pair<std::string, PMatrix>> expand_level(const std::vector<PMatrix>& parents, int64_t k, bool new_arm_only,
                                                          const std::unordered_set<std::string>& seen, int threads) {
  threads = std::max(1, threads);
  std::vector<Admitter> ad(threads, Admitter{k, &seen, {}, {}, {}});
  std::atomic<size_t> next{0};
  auto work = [&](int w) {
    std::vector<PMatrix> cand;
    for (size_t i = next++; i < parents.size(); i = next++) {
      cand.clear();
      extension_candidates_impl(parents[i], k, new_arm_only, cand);
      for (const auto& Y : cand) ad[w].offer(Y);
    }
  };
  run_workers(threads, work);
  return merge_found(ad);
}

}  // namespace

std::vector<PMatrix> extension_candidates(const PMatrix& X, int64_t k) {
  std::vector<PMatrix> out;
  extension_candidates_impl(X, k, false, out);
  return out;
}

Classification classify_all_detailed(int64_t k, const ClassifyOptions& opt) {
  Classification res;
  PolygonClassifyOptions po;
  po.keep_extensions = true;
  auto polys = classify_polygons_with_witness(k, po);
  std::vector<Polygon> canon;
  for (const auto& f : polys) canon.push_back(f.canon);
  CombMinOptions co;
  co.c_k = c_of_k_oracle(k, canon);
  res.comb_minimal = classify_comb_minimal(k, co);
  res.bounds = bounds_profile(k, res.comb_minimal);

  // S1 = S0 ∪ comb-minimal, grouped by Picard number; every move raises it by one
  std::map<int, std::map<std::string, PMatrix>> pending;
  for (auto& [key, P] : expand_toric(polys, k, opt.threads)) pending[picard_number(P)].emplace(key, P);
  for (const auto& P : res.comb_minimal) pending[picard_number(P)].emplace(key_bytes(P), P);

  std::unordered_set<std::string> seen;
  std::vector<PMatrix> level;
  int rho = pending.empty() ? 1 : pending.begin()->first;
  size_t total = 0;
  if (!opt.checkpoint_dir.empty()) {
    // a checkpoint directory belongs to one k
    namespace fs = std::filesystem;
    fs::create_directories(opt.checkpoint_dir);
    fs::path meta = fs::path(opt.checkpoint_dir) / "k.txt";
    if (fs::exists(meta)) {
      std::ifstream f(meta);
      int64_t kk = 0;
      f >> kk;
      if (kk != k) throw std::runtime_error("checkpoint directory " + opt.checkpoint_dir + " was written for k=" + std::to_string(kk));
    } else {
      std::ofstream(meta) << k << "\n";
    }
  }
  bool resuming = !opt.checkpoint_dir.empty();  // only a contiguous run of levels is loaded
  while (true) {
    std::vector<PMatrix> cur;
    resuming = resuming && read_level(opt.checkpoint_dir, rho, cur);
    if (!resuming) {
      std::map<std::string, PMatrix> merged;
      if (pending.count(rho)) merged = pending[rho];
      if (!level.empty())
        for (auto& [key, P] : expand_level(level, k, false, seen, opt.threads)) merged.emplace(key, std::move(P));
      for (auto& [key, P] : merged) cur.push_back(std::move(P));
      if (!opt.checkpoint_dir.empty()) write_level(opt.checkpoint_dir, rho, cur);
    }
    for (const auto& P : cur) seen.insert(key_bytes(P));
    total += cur.size();
    if (opt.progress) opt.progress(rho, cur.size(), total);
    res.surfaces.insert(res.surfaces.end(), cur.begin(), cur.end());
    level = std::move(cur);
    bool more = false;
    for (const auto& [r, m] : pending) more = more || r > rho;
    if (level.empty() && !more) break;
    ++rho;
  }
  return res;
}

std::vector<PMatrix> classify_all(int64_t k, const ClassifyOptions& opt) { return classify_all_detailed(k, opt).surfaces; }

}  // namespace ldp
