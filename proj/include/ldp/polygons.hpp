#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ldp/exactmath.hpp"

namespace ldp {

namespace detail {
inline int64_t fdiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Int fdiv(const Int& a, const Int& b) { return floor_div(a, b); }
inline int sgn(int64_t a) { return (a > 0) - (a < 0); }
inline int sgn(const Int& a) { return a.sign(); }
inline int64_t gcd_(int64_t a, int64_t b) { return std::gcd(a, b); }
inline Int gcd_(const Int& a, const Int& b) { return gcd(a, b); }
inline bool is_zero(int64_t a) { return a == 0; }
inline bool is_zero(const Int& a) { return a.is_zero(); }
inline void ext_gcd_(int64_t a, int64_t b, int64_t& g, int64_t& s, int64_t& t) {
  int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t x = r0 - q * r1;
    r0 = r1, r1 = x;
    x = s0 - q * s1;
    s0 = s1, s1 = x;
    x = t0 - q * t1;
    t0 = t1, t1 = x;
  }
  if (r0 < 0) r0 = -r0, s0 = -s0, t0 = -t0;
  g = r0, s = s0, t = t0;
}
inline void ext_gcd_(const Int& a, const Int& b, Int& g, Int& s, Int& t) { ext_gcd(a, b, g, s, t); }
inline Int to_int(int64_t a) { return Int(a); }
inline Int to_int(const Int& a) { return a; }
}  // namespace detail

// Counterclockwise vertex list of a convex lattice polygon.
template <class T>
struct PolygonT {
  std::vector<Vec2T<T>> v;
  size_t size() const { return v.size(); }
  const Vec2T<T>& operator[](size_t i) const { return v[i % v.size()]; }
  friend bool operator==(const PolygonT&, const PolygonT&) = default;
};
using Polygon = PolygonT<int64_t>;
using PolygonZ = PolygonT<Int>;

template <class T>
PolygonT<T> polygon_cast_from(const Polygon& p) {
  PolygonT<T> q;
  for (const auto& w : p.v) q.v.push_back({T(w.x), T(w.y)});
  return q;
}
PolygonZ to_Z(const Polygon& p);
Polygon to_i64(const PolygonZ& p);

// Strictly convex hull, counterclockwise, starting at the lowest-leftmost point.
template <class T>
PolygonT<T> convex_hull(std::vector<Vec2T<T>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  PolygonT<T> h;
  if (pts.size() < 3) {
    h.v = pts;
    return h;
  }
  std::vector<Vec2T<T>> hull(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && detail::sgn(det2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2])) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && detail::sgn(det2(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2])) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  h.v = std::move(hull);
  return h;
}

// sign of the position of p relative to A: 1 strictly inside, 0 on the boundary, -1 outside
template <class T>
int locate(const PolygonT<T>& A, const Vec2T<T>& p) {
  const size_t n = A.size();
  int res = 1;
  for (size_t i = 0; i < n; ++i) {
    int s = detail::sgn(det2(A.v[(i + 1) % n] - A.v[i], p - A.v[i]));
    if (s < 0) return -1;
    if (s == 0) res = 0;
  }
  return res;
}

template <class T>
bool origin_interior(const PolygonT<T>& A) {
  return A.size() >= 3 && locate(A, Vec2T<T>{T(0), T(0)}) == 1;
}

template <class T>
bool is_ldp(const PolygonT<T>& A) {
  const size_t n = A.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (!(detail::gcd_(A.v[i].x, A.v[i].y) == T(1))) return false;
    // strict convexity and counterclockwise orientation
    if (detail::sgn(det2(A.v[(i + 1) % n] - A.v[i], A.v[(i + 2) % n] - A.v[(i + 1) % n])) <= 0) return false;
  }
  return origin_interior(A);
}

// True iff some point of kZ^2 other than 0 lies strictly inside A, restricted to
// columns x in [xlo, xhi].
template <class T>
bool has_k_point_in_columns(const PolygonT<T>& A, const T& k, T xlo, T xhi) {
  const size_t n = A.size();
  T ax = A.v[0].x, bx = A.v[0].x;
  for (const auto& w : A.v) ax = std::min(ax, w.x), bx = std::max(bx, w.x);
  xlo = std::max(xlo, ax);
  xhi = std::min(xhi, bx);
  // first multiple of k >= xlo
  T x = -detail::fdiv(-xlo, k) * k;
  for (; x <= xhi; x += k) {
    if (x == ax || x == bx) continue;
    // y-range from the edges: lower > lo_n/lo_d, upper < up_n/up_d
    bool have_lo = false, have_up = false;
    T lo_n{}, lo_d{}, up_n{}, up_d{};
    for (size_t i = 0; i < n; ++i) {
      const auto& p = A.v[i];
      const auto& q = A.v[(i + 1) % n];
      T ex = q.x - p.x, ey = q.y - p.y;
      if (detail::is_zero(ex)) continue;  // vertical edges only bound x
      // boundary line at column x: y = p.y + ey*(x-p.x)/ex
      T num = p.y * ex + ey * (x - p.x), den = ex;
      if (detail::sgn(ex) > 0) {
        // ccw: edges going right form the lower chain, need y > line.
        // by convexity the lower boundary is the max over these lines
        if (!have_lo || num * lo_d > lo_n * den) {
          lo_n = num, lo_d = den, have_lo = true;
        }
      } else {
        num = -num, den = -den;
        if (!have_up || num * up_d < up_n * den) {
          up_n = num, up_d = den, have_up = true;
        }
      }
    }
    if (!have_lo || !have_up) continue;
    // smallest multiple of k strictly above lo
    T y = (detail::fdiv(lo_n, lo_d * k) + T(1)) * k;
    if (detail::is_zero(x) && detail::is_zero(y)) y += k;
    if (y * up_d < up_n) return true;
  }
  return false;
}

template <class T>
bool is_almost_k_hollow(const PolygonT<T>& A, const T& k) {
  if (!origin_interior(A)) return false;
  T lo = A.v[0].x, hi = A.v[0].x;
  for (const auto& w : A.v) lo = std::min(lo, w.x), hi = std::max(hi, w.x);
  return !has_k_point_in_columns(A, k, lo, hi);
}

// Oracle: scan every point of kZ^2 in the bounding box.
template <class T>
bool is_almost_k_hollow_bruteforce(const PolygonT<T>& A, const T& k) {
  if (!origin_interior(A)) return false;
  T xl = A.v[0].x, xh = xl, yl = A.v[0].y, yh = yl;
  for (const auto& w : A.v) xl = std::min(xl, w.x), xh = std::max(xh, w.x), yl = std::min(yl, w.y), yh = std::max(yh, w.y);
  for (T x = detail::fdiv(xl, k) * k; x <= xh; x += k)
    for (T y = detail::fdiv(yl, k) * k; y <= yh; y += k) {
      if (detail::is_zero(x) && detail::is_zero(y)) continue;
      if (locate(A, Vec2T<T>{x, y}) == 1) return false;
    }
  return true;
}

PolygonZ expand(const PolygonZ& A, const Vec2& v);
PolygonZ collapse(const PolygonZ& A, const Vec2& v);
std::vector<Vec2> lattice_points(const PolygonZ& A);

// □, Δ_1, ..., Δ_2k
std::vector<Polygon> minimal_polygons(int64_t k);

// GL(2,Z) normal form: lex-minimal image over all starting vertices and both orientations,
// each image normalised so that v0 -> (1,0), v1 -> (a,h) with 0 <= a < h.
template <class T>
PolygonT<T> canonical_form(const PolygonT<T>& A) {
  const size_t n = A.size();
  std::vector<Vec2T<T>> best, cur(n);
  for (int dir = 0; dir < 2; ++dir)
    for (size_t s = 0; s < n; ++s) {
      auto at = [&](size_t j) -> const Vec2T<T>& { return dir == 0 ? A.v[(s + j) % n] : A.v[(s + n - j) % n]; };
      const auto& w0 = at(0);
      T g, p, q;
      detail::ext_gcd_(w0.x, w0.y, g, p, q);
      // U0 = [[p,q],[-y0,x0]] maps w0 to (1,0)
      Mat2T<T> U{p, q, -w0.y, w0.x};
      Vec2T<T> u1 = U * at(1);
      if (detail::sgn(u1.y) < 0) {
        U = Mat2T<T>{T(1), T(0), T(0), T(-1)} * U;
        u1.y = -u1.y;
      }
      // shear [[1,t],[0,1]] putting u1.x into [0,h)
      T h = u1.y;
      T t = -detail::fdiv(u1.x, h);
      U = Mat2T<T>{T(1), t, T(0), T(1)} * U;
      bool better = best.empty();
      bool decided = better;
      for (size_t j = 0; j < n; ++j) {
        cur[j] = U * at(j);
        if (!decided) {
          if (cur[j] < best[j]) {
            better = decided = true;
          } else if (best[j] < cur[j]) {
            decided = true;
            break;
          }
        }
      }
      if (better) best = cur;
    }
  return PolygonT<T>{best};
}

std::string canonical_key(const Polygon& canon);
// Orders canonical forms by vertex count, then flattened coordinates.
bool canonical_less(const Polygon& a, const Polygon& b);

bool shadow_excludes(const PolygonZ& A, const Vec2& w, const Vec2& v);

struct ToricInvariants {
  Rat k2;
  Int gorenstein_index;
  int picard = 0;
  Rat eps_max;
  int singular_points = 0;
  Rat volume;  // Euclidean area
};

ToricInvariants toric_invariants(const PolygonZ& A);
// Oracles used in tests.
Rat toric_k2_intersection(const PolygonZ& A);
Rat toric_k2_dual_area(const PolygonZ& A);
Int cone_gorenstein_index(const Vec2& a, const Vec2& b);
Rat polygon_area(const PolygonZ& A);

struct PolygonClassifyOptions {
  bool use_shadow = false;
  // keep, per class, the primitive v in the search disk outside `found` with conv(found, v) almost k-hollow
  bool keep_extensions = false;
  // invoked after each BFS level with (level, frontier size, classes so far)
  std::function<void(int, size_t, size_t)> progress;
};

// One representative per class, sorted by canonical_less; vertices in canonical form.
std::vector<Polygon> classify_polygons(int64_t k, const PolygonClassifyOptions& opt = {});

// Same search, but each class keeps the coordinates in which the search found it
// (these contain a standard minimal polygon). Sorted like classify_polygons.
struct FoundPolygon {
  Polygon canon;
  Polygon found;
  std::vector<Vec2i> extensions;  // only with keep_extensions
};
std::vector<FoundPolygon> classify_polygons_with_witness(int64_t k, const PolygonClassifyOptions& opt = {});

// R(k)^2 = k^4 (4k^2+4k+2)
inline int64_t search_radius_sq(int64_t k) { return k * k * k * k * (4 * k * k + 4 * k + 2); }

}  // namespace ldp
