#include "ldp/singular.hpp"

#include <algorithm>
#include <stdexcept>

#include "ldp/geometry.hpp"

namespace ldp {

std::string to_string(const FixedPoint& x) {
  switch (x.kind) {
    case FixedPoint::Hyperbolic: return "x" + std::to_string(x.i) + std::to_string(x.j + 1);
    case FixedPoint::ParabolicPlus: return "x" + std::to_string(x.i) + "+";
    case FixedPoint::ParabolicMinus: return "x" + std::to_string(x.i) + "-";
    case FixedPoint::EllipticPlus: return "x+";
    case FixedPoint::EllipticMinus: return "x-";
  }
  return "?";
}

std::vector<FixedPoint> fixed_points(const PMatrix& P) {
  std::vector<FixedPoint> out;
  for (int i = 0; i <= P.r(); ++i)
    for (int j = 0; j + 1 < static_cast<int>(P.arms[i].size()); ++j) out.push_back({FixedPoint::Hyperbolic, i, j});
  if (P.vplus)
    for (int i = 0; i <= P.r(); ++i) out.push_back({FixedPoint::ParabolicPlus, i, 0});
  if (P.vminus)
    for (int i = 0; i <= P.r(); ++i) out.push_back({FixedPoint::ParabolicMinus, i, 0});
  if (!P.vplus) out.push_back({FixedPoint::EllipticPlus, 0, 0});
  if (!P.vminus) out.push_back({FixedPoint::EllipticMinus, 0, 0});
  return out;
}

namespace {

Vec2 vec(const Col& c) { return {c.l, c.d}; }

bool elliptic(const FixedPoint& x) { return x.kind == FixedPoint::EllipticPlus || x.kind == FixedPoint::EllipticMinus; }

std::vector<Int> elliptic_tuple(const PMatrix& P, bool plus) {
  std::vector<Int> q;
  for (const auto& a : P.arms) q.push_back(plus ? a.front().l : a.back().l);
  return q;
}

bool elliptic_smooth(const PMatrix& P, bool plus) {
  int trivial = 0;
  Int lp = 1;
  for (const auto& l : elliptic_tuple(P, plus)) {
    if (l == Int(1)) ++trivial;
    lp *= l;
  }
  Rat det = Rat(lp) * (plus ? m_plus(P) : m_minus(P));
  return trivial >= P.r() - 1 && det == Rat(plus ? 1 : -1);
}

}  // namespace

std::pair<Vec2, Vec2> toric_chart(const PMatrix& P, const FixedPoint& x) {
  switch (x.kind) {
    case FixedPoint::Hyperbolic: return {vec(P.arms[x.i][x.j]), vec(P.arms[x.i][x.j + 1])};
    case FixedPoint::ParabolicPlus: return {Vec2{0, 1}, vec(P.arms[x.i].front())};
    case FixedPoint::ParabolicMinus: return {vec(P.arms[x.i].back()), Vec2{0, -1}};
    default: throw std::invalid_argument("toric_chart: elliptic point");
  }
}

bool is_singular(const PMatrix& P, const FixedPoint& x) {
  if (x.kind == FixedPoint::EllipticPlus) return !elliptic_smooth(P, true);
  if (x.kind == FixedPoint::EllipticMinus) return !elliptic_smooth(P, false);
  auto [a, b] = toric_chart(P, x);
  return !(abs(det2(a, b)) == Int(1));
}

int singularity_count(const PMatrix& P) {
  int s = 0;
  for (const auto& x : fixed_points(P)) s += is_singular(P, x);
  return s;
}

namespace {

// index and form at an elliptic point from the closed formula
void elliptic_index(const PMatrix& P, bool plus, Int& iota, std::vector<Rat>& u, Int& zeta) {
  const int r = P.r();
  std::vector<Int> l, d;
  for (const auto& a : P.arms) {
    const Col& c = plus ? a.front() : a.back();
    l.push_back(c.l);
    d.push_back(c.d);
  }
  Int L = 1;
  for (const auto& x : l) L *= x;
  Int Lm, Ll = Int(1 - r) * L;
  for (int i = 0; i <= r; ++i) {
    Lm += d[i] * (L / l[i]);
    Ll += L / l[i];
  }
  std::vector<Int> ui;
  Int g = Ll;
  for (int i = 1; i <= r; ++i) {
    Int s = Int(r - 1) * d[i] * (L / l[i]);
    for (int j = 0; j <= r; ++j)
      if (j != i) s += (d[j] - d[i]) * (L / (l[j] * l[i]));
    g = gcd(g, s);
    ui.push_back(std::move(s));
  }
  if (Lm.is_zero()) throw std::logic_error("elliptic_index: degenerate point");
  iota = abs(Lm) / gcd(g, Lm);
  u.clear();
  for (const auto& s : ui) u.push_back(Rat(s, Lm));
  u.push_back(Rat(Ll, Lm));
  Rat z = abs(Rat(iota) * u.back());
  if (!z.is_int()) throw std::logic_error("elliptic_index: canonical multiplicity not integral");
  zeta = z.num();
}

}  // namespace

std::vector<Rat> elliptic_form_oracle(const PMatrix& P, bool plus) {
  Rat w = plus ? ell_plus(P) / m_plus(P) : ell_minus(P) / m_minus(P);
  std::vector<Rat> u;
  for (int i = 1; i <= P.r(); ++i) {
    const Col& c = plus ? P.arms[i].front() : P.arms[i].back();
    u.push_back((Rat(1) - Rat(c.d) * w) / Rat(c.l));
  }
  u.push_back(w);
  return u;
}

GorensteinData local_gorenstein_indices(const PMatrix& P) {
  GorensteinData g;
  Int iota = 1;
  for (const auto& a : P.arms) {
    std::vector<Int> row;
    for (size_t j = 0; j + 1 < a.size(); ++j) {
      Int D = a[j + 1].l * a[j].d - a[j].l * a[j + 1].d;
      row.push_back(D / gcd(a[j].l - a[j + 1].l, a[j].d - a[j + 1].d));
      iota = lcm(iota, row.back());
    }
    g.iota_ij.push_back(std::move(row));
    if (P.vplus) {
      g.iota_plus_i.push_back(a.front().l / gcd(a.front().d - Int(1), a.front().l));
      iota = lcm(iota, g.iota_plus_i.back());
    }
    if (P.vminus) {
      g.iota_minus_i.push_back(a.back().l / gcd(a.back().d + Int(1), a.back().l));
      iota = lcm(iota, g.iota_minus_i.back());
    }
  }
  for (bool plus : {true, false}) {
    if (plus ? P.vplus : P.vminus) continue;
    Int io, z;
    std::vector<Rat> u;
    elliptic_index(P, plus, io, u, z);
    iota = lcm(iota, io);
    (plus ? g.iota_plus : g.iota_minus) = io;
    (plus ? g.u_plus : g.u_minus) = std::move(u);
    (plus ? g.zeta_plus : g.zeta_minus) = z;
  }
  g.iota = iota;
  return g;
}

std::vector<std::pair<FixedPoint, Int>> local_index_list(const PMatrix& P, const GorensteinData& g) {
  std::vector<std::pair<FixedPoint, Int>> out;
  for (const auto& x : fixed_points(P)) {
    switch (x.kind) {
      case FixedPoint::Hyperbolic: out.push_back({x, g.iota_ij[x.i][x.j]}); break;
      case FixedPoint::ParabolicPlus: out.push_back({x, g.iota_plus_i[x.i]}); break;
      case FixedPoint::ParabolicMinus: out.push_back({x, g.iota_minus_i[x.i]}); break;
      case FixedPoint::EllipticPlus: out.push_back({x, *g.iota_plus}); break;
      case FixedPoint::EllipticMinus: out.push_back({x, *g.iota_minus}); break;
    }
  }
  return out;
}

bool is_platonic(std::vector<Int> q) {
  Rat s = Rat(2 - static_cast<int>(q.size()));
  for (const auto& x : q) s += Rat(Int(1), x);
  return s.sign() > 0;
}

bool is_log_terminal(const PMatrix& P) {
  if (!P.vplus && !is_platonic(elliptic_tuple(P, true))) return false;
  if (!P.vminus && !is_platonic(elliptic_tuple(P, false))) return false;
  return true;
}

PMatrix canonical_resolution(const PMatrix& P) {
  PMatrix Q;
  Q.vplus = Q.vminus = true;
  for (const auto& a : P.arms) {
    std::vector<Vec2> rays{{0, 1}};
    for (const auto& c : a) rays.push_back(vec(c));
    rays.push_back({0, -1});
    std::vector<Col> arm;
    for (size_t q = 0; q + 1 < rays.size(); ++q) {
      auto h = hilbert_basis_2d(rays[q], rays[q + 1]);
      for (size_t t = 1; t + 1 < h.size(); ++t) arm.push_back({h[t].x, h[t].y});
      if (q + 2 < rays.size()) arm.push_back({rays[q + 1].x, rays[q + 1].y});
    }
    Q.arms.push_back(std::move(arm));
  }
  return Q;
}

namespace {

bool is_original(const PMatrix& P, const PMatrix& R, const ColRef& c) {
  if (c.kind == ColRef::VPlus) return P.vplus;
  if (c.kind == ColRef::VMinus) return P.vminus;
  const auto& a = P.arms[c.i];
  return std::find(a.begin(), a.end(), R.arms[c.i][c.j]) != a.end();
}

}  // namespace

PMatrix minimal_resolution(const PMatrix& P) {
  PMatrix R = canonical_resolution(P);
  for (bool again = true; again;) {
    again = false;
    auto cols = all_columns(R);
    for (const auto& c : cols) {
      if (is_original(P, R, c)) continue;
      if (intersection_number(R, c, c) == Rat(-1)) {
        if (c.kind == ColRef::VPlus)
          R.vplus = false;
        else if (c.kind == ColRef::VMinus)
          R.vminus = false;
        else
          R.arms[c.i].erase(R.arms[c.i].begin() + c.j);
        again = true;
        break;
      }
    }
  }
  return R;
}

bool is_smooth_matrix(const PMatrix& P) { return singularity_count(P) == 0; }

namespace {

// fixed point of P under which an exceptional column of a resolution R lies
FixedPoint image_point(const PMatrix& P, const PMatrix& R, const ColRef& c) {
  if (c.kind == ColRef::VPlus) return {FixedPoint::EllipticPlus, 0, 0};
  if (c.kind == ColRef::VMinus) return {FixedPoint::EllipticMinus, 0, 0};
  const auto& a = P.arms[c.i];
  const Col& v = R.arms[c.i][c.j];
  if (slope_greater(v, a.front()))
    return P.vplus ? FixedPoint{FixedPoint::ParabolicPlus, c.i, 0} : FixedPoint{FixedPoint::EllipticPlus, 0, 0};
  if (slope_greater(a.back(), v))
    return P.vminus ? FixedPoint{FixedPoint::ParabolicMinus, c.i, 0} : FixedPoint{FixedPoint::EllipticMinus, 0, 0};
  int j = 0;
  while (!slope_greater(a[j], v) || !slope_greater(v, a[j + 1])) ++j;
  return {FixedPoint::Hyperbolic, c.i, j};
}

}  // namespace

ResolutionGraph resolution_graph(const PMatrix& P, const PMatrix& R, const FixedPoint& x) {
  auto cols = all_columns(R);
  std::vector<ColRef> over;
  for (const auto& c : cols)
    if (!is_original(P, R, c) && image_point(P, R, c) == x) over.push_back(c);
  ResolutionGraph g;
  for (size_t s = 0; s < over.size(); ++s) {
    Rat q = intersection_number(R, over[s], over[s]);
    if (!q.is_int()) throw std::logic_error("resolution_graph: resolution not smooth");
    g.self.push_back(q.num());
    for (size_t t = 0; t < s; ++t)
      if (intersection_number(R, over[s], over[t]).sign() != 0) g.edges.push_back({static_cast<int>(t), static_cast<int>(s)});
  }
  return g;
}

ResolutionGraph resolution_graph(const PMatrix& P, const FixedPoint& x) {
  return resolution_graph(P, minimal_resolution(P), x);
}

std::string toric_label(const Int& iota, size_t n) {
  const std::string ns = std::to_string(n);
  if (iota == Int(1)) return "A_" + ns;
  if (iota == Int(2)) return "K_" + ns;
  return "T^{" + iota.str() + "}_" + ns;
}

std::string singularity_label(const PMatrix& P, const PMatrix& minres, const FixedPoint& x, const GorensteinData& g) {
  if (!is_singular(P, x)) return "";
  const size_t n = resolution_graph(P, minres, x).self.size();
  if (!elliptic(x)) {
    Int io;
    switch (x.kind) {
      case FixedPoint::Hyperbolic: io = g.iota_ij[x.i][x.j]; break;
      case FixedPoint::ParabolicPlus: io = g.iota_plus_i[x.i]; break;
      default: io = g.iota_minus_i[x.i]; break;
    }
    return toric_label(io, n);
  }
  const bool plus = x.kind == FixedPoint::EllipticPlus;
  const Int& io = plus ? *g.iota_plus : *g.iota_minus;
  const Int& z = plus ? *g.zeta_plus : *g.zeta_minus;
  std::vector<Int> q;
  for (const auto& l : elliptic_tuple(P, plus))
    if (l > Int(1)) q.push_back(l);
  std::sort(q.rbegin(), q.rend());
  if (q.size() <= 2) return toric_label(io, n);
  if (q.size() != 3 || !is_platonic(q)) throw std::invalid_argument("singularity_label: not log terminal");
  const std::string zi = "^{" + z.str() + "," + io.str() + "}";
  if (q[1] == Int(2)) return "D_" + std::to_string(n) + zi;
  if (q[0] == Int(3)) return "E_6" + zi;
  return (q[0] == Int(4) ? "E_7^{" : "E_8^{") + io.str() + "}";
}

std::vector<std::string> elliptic_types(const PMatrix& P) {
  std::vector<std::string> out;
  if (P.vplus && P.vminus) return out;
  auto g = local_gorenstein_indices(P);
  auto R = minimal_resolution(P);
  for (const auto& x : fixed_points(P))
    if (elliptic(x) && is_singular(P, x)) out.push_back(singularity_label(P, R, x, g));
  return out;
}

AnticanComplex antican_complex(const PMatrix& P) {
  AnticanComplex A;
  if (!P.vplus) {
    Rat lp = ell_plus(P);
    if (lp.sign() <= 0) throw std::invalid_argument("antican_complex: not log terminal at x+");
    A.top = m_plus(P) / lp;
  } else {
    A.top = 1;
  }
  if (!P.vminus) {
    Rat lm = ell_minus(P);
    if (lm.sign() <= 0) throw std::invalid_argument("antican_complex: not log terminal at x-");
    A.bottom = m_minus(P) / lm;
  } else {
    A.bottom = -1;
  }
  for (const auto& a : P.arms) {
    ArmPolygon p;
    p.v.push_back({Rat(0), A.top});
    for (const auto& c : a) p.v.push_back({Rat(c.l), Rat(c.d)});
    p.v.push_back({Rat(0), A.bottom});
    A.arms.push_back(std::move(p));
  }
  return A;
}

bool is_complex_almost_k_hollow(const PMatrix& P, int64_t k) {
  AnticanComplex A = antican_complex(P);
  const Rat K(k);
  if (A.top > K || A.bottom < -K) return false;
  Int D = lcm(A.top.den(), A.bottom.den());
  const Int kD = Int(k) * D;
  for (const auto& c : A.arms) {
    // counterclockwise: bottom, v_in, ..., v_i1, top
    PolygonZ poly;
    Int xmax = 0;
    for (auto it = c.v.rbegin(); it != c.v.rend(); ++it) {
      Int x = it->x.num() * D, y = (it->y * Rat(D)).num();
      xmax = std::max(xmax, x);
      poly.v.push_back({x, y});
    }
    if (has_k_point_in_columns(poly, kD, kD, xmax)) return false;
  }
  return true;
}

bool is_complex_almost_k_hollow_bruteforce(const PMatrix& P, int64_t k) {
  AnticanComplex A = antican_complex(P);
  for (Int y = ceil(A.bottom); Rat(y) <= A.top; y += 1)
    if (!y.is_zero() && floor_mod(y, Int(k)).is_zero() && Rat(y) > A.bottom && Rat(y) < A.top) return false;
  for (const auto& c : A.arms) {
    Rat xmax, ymin = A.bottom, ymax = A.top;
    for (const auto& w : c.v) xmax = max(xmax, w.x), ymin = min(ymin, w.y), ymax = max(ymax, w.y);
    // reversed list is counterclockwise
    std::vector<Vec2T<Rat>> v(c.v.rbegin(), c.v.rend());
    for (Int x = k; Rat(x) < xmax; x += k)
      for (Int y = floor_div(floor(ymin), Int(k)) * Int(k); Rat(y) < ymax; y += k) {
        bool inside = true;
        for (size_t s = 0; s < v.size() && inside; ++s) {
          const auto& a = v[s];
          const auto& b = v[(s + 1) % v.size()];
          Rat cr = (b.x - a.x) * (Rat(y) - a.y) - (b.y - a.y) * (Rat(x) - a.x);
          inside = cr.sign() > 0;
        }
        if (inside) return false;
      }
  }
  return true;
}

namespace {

Rat crossing_ratio(const Vec2& h, const Vec2T<Rat>& a, const Vec2T<Rat>& b) {
  Rat ex = b.x - a.x, ey = b.y - a.y;
  Rat num = Rat(h.x) * ey - Rat(h.y) * ex;
  Rat den = a.x * b.y - a.y * b.x;
  return num / den;
}

}  // namespace

Rat eps_max(const PMatrix& P) {
  AnticanComplex A = antican_complex(P);
  Rat e = 1;
  if (!P.vplus) e = min(e, inv(A.top));
  if (!P.vminus) e = min(e, -inv(A.bottom));
  for (size_t i = 0; i < P.arms.size(); ++i) {
    const auto& a = P.arms[i];
    const auto& poly = A.arms[i].v;
    std::vector<Vec2> rays{{0, 1}};
    for (const auto& c : a) rays.push_back(vec(c));
    rays.push_back({0, -1});
    for (size_t q = 0; q + 1 < rays.size(); ++q) {
      auto h = hilbert_basis_2d(rays[q], rays[q + 1]);
      for (size_t t = 1; t + 1 < h.size(); ++t) e = min(e, crossing_ratio(h[t], poly[q], poly[q + 1]));
    }
  }
  return e;
}

Rat alpha_min(const PMatrix& P) { return max(Rat(1), inv(eps_max(P))); }

std::vector<std::pair<Vec2, Vec2>> affine_toric_by_index(const Int& iota, const Int& b_max) {
  if (iota < Int(2)) throw std::invalid_argument("affine_toric_by_index: index must be at least 2");
  std::vector<std::pair<Vec2, Vec2>> out;
  for (Int b = 2; b <= b_max; b += 1)
    for (Int kappa = 1; kappa < iota; kappa += 1) {
      if (!floor_mod(b - Int(1), kappa).is_zero()) continue;
      Int y = iota * ((b - Int(1)) / kappa);
      if (gcd(b, y) == Int(1) && gcd(kappa, iota) == Int(1)) out.push_back({Vec2{1, 0}, Vec2{b, y}});
    }
  return out;
}

}  // namespace ldp
