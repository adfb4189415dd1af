#include "ldp/polygons.hpp"

#include <cstring>
#include <memory>
#include <stdexcept>
#include <unordered_set>

namespace ldp {

PolygonZ to_Z(const Polygon& p) { return polygon_cast_from<Int>(p); }

Polygon to_i64(const PolygonZ& p) {
  Polygon q;
  for (const auto& w : p.v) q.v.push_back({w.x.to_i64(), w.y.to_i64()});
  return q;
}

PolygonZ expand(const PolygonZ& A, const Vec2& v) {
  if (locate(A, v) >= 0) throw std::invalid_argument("expand: point lies in the polygon");
  auto pts = A.v;
  pts.push_back(v);
  return convex_hull(std::move(pts));
}

std::vector<Vec2> lattice_points(const PolygonZ& A) {
  Int xl = A.v[0].x, xh = xl, yl = A.v[0].y, yh = yl;
  for (const auto& w : A.v) xl = std::min(xl, w.x), xh = std::max(xh, w.x), yl = std::min(yl, w.y), yh = std::max(yh, w.y);
  std::vector<Vec2> out;
  for (Int x = xl; x <= xh; x += 1)
    for (Int y = yl; y <= yh; y += 1)
      if (locate(A, Vec2{x, y}) >= 0) out.push_back({x, y});
  return out;
}

PolygonZ collapse(const PolygonZ& A, const Vec2& v) {
  if (locate(A, v) < 0) throw std::invalid_argument("collapse: point outside the polygon");
  auto pts = lattice_points(A);
  pts.erase(std::remove(pts.begin(), pts.end(), v), pts.end());
  return convex_hull(std::move(pts));
}

std::vector<Polygon> minimal_polygons(int64_t k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<Polygon> out;
  out.push_back(Polygon{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}});
  for (int64_t a = 1; a <= 2 * k; ++a) out.push_back(Polygon{{{1, 0}, {0, 1}, {-a, -1}}});
  return out;
}

std::string canonical_key(const Polygon& c) {
  std::string s;
  s.reserve(1 + 8 * c.size());
  s.push_back(static_cast<char>(c.size()));
  for (const auto& w : c.v) {
    int32_t xy[2] = {static_cast<int32_t>(w.x), static_cast<int32_t>(w.y)};
    s.append(reinterpret_cast<const char*>(xy), sizeof(xy));
  }
  return s;
}

bool canonical_less(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.v < b.v;
}

bool shadow_excludes(const PolygonZ& A, const Vec2& w, const Vec2& v) {
  if (locate(A, w) >= 0) return false;
  // extreme rays of cone(w - u : u in A), spanned by the vertex differences
  std::vector<Vec2> g;
  for (const auto& u : A.v) g.push_back(w - u);
  size_t lo = 0, hi = 0;
  for (size_t i = 1; i < g.size(); ++i) {
    if (det2(g[i], g[lo]).sign() > 0) lo = i;
    if (det2(g[hi], g[i]).sign() > 0) hi = i;
  }
  Vec2 c = v - w;
  if (det2(g[lo], g[hi]).sign() == 0) {
    // w on the boundary line of a supporting edge: open half plane
    return det2(g[lo], c).sign() > 0 && !(locate(A, v) >= 0);
  }
  return det2(g[lo], c).sign() > 0 && det2(c, g[hi]).sign() > 0;
}

Int cone_gorenstein_index(const Vec2& a, const Vec2& b) {
  Int D = abs(det2(a, b));
  return D / gcd(a.x - b.x, a.y - b.y);
}

Rat polygon_area(const PolygonZ& A) {
  Int s = 0;
  for (size_t i = 0; i < A.size(); ++i) s += det2(A.v[i], A[i + 1]);
  return Rat(s, 2);
}

namespace {

// cyclic determinant formula; needs all first coordinates nonzero
Rat k2_cyclic(const std::vector<Vec2>& v) {
  Rat s = 0;
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    Rat t = Rat(2) - Rat(a.x, b.x) - Rat(b.x, a.x);
    s += t / Rat(det2(a, b));
  }
  return s;
}

}  // namespace

ToricInvariants toric_invariants(const PolygonZ& A) {
  ToricInvariants r;
  const size_t n = A.size();
  // shear x -> x + s*y so that no vertex sits on the vertical axis
  for (Int s = 0;; s += 1) {
    bool ok = true;
    for (const auto& w : A.v)
      if ((w.x + s * w.y).is_zero()) ok = false;
    if (!ok) continue;
    std::vector<Vec2> sh;
    for (const auto& w : A.v) sh.push_back({w.x + s * w.y, w.y});
    r.k2 = k2_cyclic(sh);
    break;
  }
  r.gorenstein_index = 1;
  r.eps_max = 1;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = A.v[i];
    const Vec2& b = A[i + 1];
    Int D = det2(a, b);
    r.gorenstein_index = lcm(r.gorenstein_index, cone_gorenstein_index(a, b));
    if (!(abs(D) == Int(1))) {
      ++r.singular_points;
      Vec2 e = b - a;
      for (const auto& h : hilbert_basis_2d(a, b)) r.eps_max = min(r.eps_max, Rat(det2(h, e), D));
    }
  }
  r.picard = static_cast<int>(n) - 2;
  r.volume = polygon_area(A);
  return r;
}

Rat toric_k2_intersection(const PolygonZ& A) {
  const size_t n = A.size();
  Rat s = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = A[i + n - 1];
    const Vec2& c = A.v[i];
    const Vec2& q = A[i + 1];
    s += Rat(-det2(p, q), det2(p, c) * det2(c, q));
    s += Rat(2, det2(c, q));
  }
  return s;
}

Rat toric_k2_dual_area(const PolygonZ& A) {
  // vertex of the dual polygon for the edge [a,b]: u with <u,a> = <u,b> = -1
  std::vector<Rat> ux, uy;
  for (size_t i = 0; i < A.size(); ++i) {
    const Vec2& a = A.v[i];
    const Vec2& b = A[i + 1];
    Rat D(det2(a, b));
    ux.push_back(Rat(-(b.y - a.y)) / D);
    uy.push_back(Rat(-(a.x - b.x)) / D);
  }
  Rat s = 0;
  for (size_t i = 0; i < ux.size(); ++i) {
    size_t j = (i + 1) % ux.size();
    s += ux[i] * uy[j] - uy[i] * ux[j];
  }
  return abs(s);
}

// ---------------------------------------------------------------- classification

namespace {

int64_t fdiv_k(int64_t a, int64_t b) { return detail::fdiv(a, b); }

using Cands = std::shared_ptr<const std::vector<Vec2i>>;

struct Node {
  Polygon p;
  Cands cand;
  size_t index;  // position in the output
};

// conv(A ∪ v) for v outside A; also reports the x-range of the new region
bool hull_with(const Polygon& A, const Vec2i& v, Polygon& H, int64_t& xlo, int64_t& xhi) {
  const size_t n = A.size();
  size_t first = n;  // first visible edge after a non-visible one
  int vis[32];
  bool any = false;
  for (size_t i = 0; i < n; ++i) {
    const auto& a = A.v[i];
    const auto& b = A.v[(i + 1) % n];
    int64_t d = det2(b - a, v - a);
    vis[i] = d < 0 ? 1 : (d == 0 ? 0 : -1);
    if (vis[i] == 1) any = true;
  }
  if (!any) return false;
  for (size_t i = 0; i < n; ++i)
    if (vis[i] == 1 && vis[(i + n - 1) % n] != 1) {
      first = i;
      break;
    }
  size_t last = first;
  while (vis[(last + 1) % n] == 1) last = (last + 1) % n;
  // visible edges first..last; chain of vertices first..last+1
  size_t s = first, e = (last + 1) % n;
  H.v.clear();
  xlo = xhi = v.x;
  for (size_t j = s;; j = (j + 1) % n) {
    xlo = std::min(xlo, A.v[j].x);
    xhi = std::max(xhi, A.v[j].x);
    if (j == e) break;
  }
  // keep e .. s (non-visible side), dropping endpoints that become collinear with v
  size_t start = e, stop = s;
  if (vis[e] == 0) start = (e + 1) % n;
  if (vis[(s + n - 1) % n] == 0) stop = (s + n - 1) % n;
  for (size_t j = start;; j = (j + 1) % n) {
    H.v.push_back(A.v[j]);
    if (j == stop) break;
  }
  H.v.push_back(v);
  return true;
}

// open cone w + cone(lo, hi) of the points v that make w interior
struct ShadowCone {
  Vec2i w, lo, hi;
};

std::vector<ShadowCone> shadow_cones(const Polygon& A, int64_t k, int64_t R) {
  std::vector<ShadowCone> out;
  for (int64_t x = -fdiv_k(R, k) * k; x <= R; x += k)
    for (int64_t y = -fdiv_k(R, k) * k; y <= R; y += k) {
      Vec2i w{x, y};
      if ((x == 0 && y == 0) || locate(A, w) >= 0) continue;
      size_t lo = 0, hi = 0;
      for (size_t i = 1; i < A.size(); ++i) {
        if (det2(w - A.v[i], w - A.v[lo]) > 0) lo = i;
        if (det2(w - A.v[hi], w - A.v[i]) > 0) hi = i;
      }
      Vec2i glo = w - A.v[lo], ghi = w - A.v[hi];
      if (det2(glo, ghi) > 0) out.push_back({w, glo, ghi});
    }
  return out;
}

bool in_some_shadow(const std::vector<ShadowCone>& cs, const Vec2i& v) {
  for (const auto& c : cs) {
    Vec2i d = v - c.w;
    if (det2(c.lo, d) > 0 && det2(d, c.hi) > 0) return true;
  }
  return false;
}

}  // namespace

std::vector<FoundPolygon> classify_polygons_with_witness(int64_t k, const PolygonClassifyOptions& opt) {
  const int64_t R2 = search_radius_sq(k);
  int64_t R = 0;
  while ((R + 1) * (R + 1) <= R2) ++R;
  std::vector<Vec2i> disk;
  for (int64_t x = -R; x <= R; ++x)
    for (int64_t y = -R; y <= R; ++y)
      if (x * x + y * y <= R2 && std::gcd(x, y) == 1) disk.push_back({x, y});
  auto all = std::make_shared<const std::vector<Vec2i>>(std::move(disk));

  std::unordered_set<std::string> seen;
  std::vector<FoundPolygon> out;
  std::vector<Node> frontier;
  for (auto& M : minimal_polygons(k)) {
    Polygon c = canonical_form(M);
    if (seen.insert(canonical_key(c)).second) {
      frontier.push_back({M, all, out.size()});
      out.push_back({c, M, {}});
    }
  }
  int level = 0;
  while (!frontier.empty()) {
    if (opt.progress) opt.progress(level, frontier.size(), out.size());
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const Polygon& A = node.p;
      std::vector<Vec2i> succ;
      std::vector<Polygon> hulls;
      Polygon H;
      std::vector<ShadowCone> shadows;
      if (opt.use_shadow) shadows = shadow_cones(A, k, R);
      for (const auto& v : *node.cand) {
        int64_t xlo, xhi;
        if (!hull_with(A, v, H, xlo, xhi)) continue;
        if (!shadows.empty() && in_some_shadow(shadows, v)) continue;
        if (has_k_point_in_columns(H, k, xlo, xhi)) continue;
        succ.push_back(v);
        hulls.push_back(H);
      }
      if (opt.keep_extensions) out[node.index].extensions = succ;
      if (succ.empty()) continue;
      auto sc = std::make_shared<const std::vector<Vec2i>>(std::move(succ));
      for (auto& h : hulls) {
        Polygon c = canonical_form(h);
        if (seen.insert(canonical_key(c)).second) {
          next.push_back({h, sc, out.size()});
          out.push_back({c, std::move(h), {}});
        }
      }
    }
    frontier = std::move(next);
    ++level;
  }
  std::sort(out.begin(), out.end(), [](const FoundPolygon& a, const FoundPolygon& b) { return canonical_less(a.canon, b.canon); });
  return out;
}

std::vector<Polygon> classify_polygons(int64_t k, const PolygonClassifyOptions& opt) {
  std::vector<Polygon> out;
  for (auto& f : classify_polygons_with_witness(k, opt)) out.push_back(std::move(f.canon));
  return out;
}

}  // namespace ldp
