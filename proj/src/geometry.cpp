#include "ldp/geometry.hpp"

#include <stdexcept>

namespace ldp {

NumericProfile numeric_profile(const PMatrix& P) {
  NumericProfile np;
  np.l_plus = 1;
  np.l_minus = 1;
  for (const auto& a : P.arms) {
    np.l_plus *= a.front().l;
    np.l_minus *= a.back().l;
  }
  np.m_plus = m_plus(P);
  np.m_minus = m_minus(P);
  np.ell_plus = ell_plus(P);
  np.ell_minus = ell_minus(P);
  if (np.ell_plus.sign() > 0) np.d_plus = np.m_plus / np.ell_plus;
  if (np.ell_minus.sign() > 0) np.d_minus = np.m_minus / np.ell_minus;
  return np;
}

Rat ext_mul(const ExtRat& a, const Rat& b) {
  if (a.kind == ExtRat::Finite) return a.v * b;
  if (b.sign() != 0) throw std::logic_error("ext_mul: infinite times nonzero");
  return a.kind == ExtRat::PosInf ? Rat(1) : Rat(-1);
}

IntersectionTables intersection_tables(const PMatrix& P) {
  IntersectionTables t;
  const Rat mp = m_plus(P), mm = m_minus(P), lp = ell_plus(P), lm = ell_minus(P);
  for (const auto& a : P.arms) {
    const size_t n = a.size();
    std::vector<Rat> m(n + 1);
    std::vector<ExtRat> l(n + 1);
    std::vector<Int> dl;
    Rat alpha;
    m[0] = P.vplus ? Rat(0) : -inv(mp);
    l[0] = P.vplus ? ExtRat::pos_inf() : ExtRat{ExtRat::Finite, -lp};
    for (size_t j = 0; j + 1 < n; ++j) {
      m[j + 1] = inv(a[j].slope() - a[j + 1].slope());
      l[j + 1] = {ExtRat::Finite, Rat(Int(1), a[j].l) - Rat(Int(1), a[j + 1].l)};
      Int D = a[j + 1].l * a[j].d - a[j].l * a[j + 1].d;
      Rat lambda = Rat(2) - Rat(a[j + 1].l, a[j].l) - Rat(a[j].l, a[j + 1].l);
      alpha += lambda / Rat(D);
      dl.push_back(std::move(D));
    }
    m[n] = P.vminus ? Rat(0) : inv(mm);
    l[n] = P.vminus ? ExtRat::neg_inf() : ExtRat{ExtRat::Finite, lm};
    t.m.push_back(std::move(m));
    t.ell.push_back(std::move(l));
    t.delta.push_back(std::move(dl));
    t.alpha.push_back(alpha);
  }
  return t;
}

namespace {

Rat intersection_with(const PMatrix& P, const IntersectionTables& t, const ColRef& a, const ColRef& b) {
  using K = ColRef::Kind;
  if (a.kind != K::Arm && b.kind == K::Arm) return intersection_with(P, t, b, a);
  if (a.kind == K::Arm && b.kind == K::Arm) {
    const auto& A = P.arms[a.i];
    const Int& la = A[a.j].l;
    const Int& lb = P.arms[b.i][b.j].l;
    if (a.i == b.i) {
      if (a.j == b.j) return -(t.m[a.i][a.j] + t.m[a.i][a.j + 1]) / Rat(la * la);
      int j = std::min(a.j, b.j);
      if (std::abs(a.j - b.j) != 1) return Rat(0);
      return t.m[a.i][j + 1] / Rat(la * lb);
    }
    // different arms meet only in the elliptic fixed points
    Rat s;
    const int na = static_cast<int>(A.size()), nb = static_cast<int>(P.arms[b.i].size());
    if (a.j == 0 && b.j == 0) s -= t.m[a.i][0];
    if (a.j == na - 1 && b.j == nb - 1) s -= t.m[a.i][na];
    return s / Rat(la * lb);
  }
  if (a.kind == K::Arm) {
    const auto& A = P.arms[a.i];
    if (b.kind == K::VPlus) return a.j == 0 ? Rat(Int(1), A[0].l) : Rat(0);
    return a.j + 1 == static_cast<int>(A.size()) ? Rat(Int(1), A.back().l) : Rat(0);
  }
  if (a.kind != b.kind) return Rat(0);
  return a.kind == K::VPlus ? -m_plus(P) : m_minus(P);
}

bool column_exists(const PMatrix& P, const ColRef& c) {
  switch (c.kind) {
    case ColRef::VPlus: return P.vplus;
    case ColRef::VMinus: return P.vminus;
    default: return c.i >= 0 && c.i <= P.r() && c.j >= 0 && c.j < static_cast<int>(P.arms[c.i].size());
  }
}

}  // namespace

std::vector<ColRef> all_columns(const PMatrix& P) {
  std::vector<ColRef> out;
  for (int i = 0; i <= P.r(); ++i)
    for (int j = 0; j < static_cast<int>(P.arms[i].size()); ++j) out.push_back({ColRef::Arm, i, j});
  if (P.vplus) out.push_back({ColRef::VPlus, 0, 0});
  if (P.vminus) out.push_back({ColRef::VMinus, 0, 0});
  return out;
}

Rat intersection_number(const PMatrix& P, const ColRef& a, const ColRef& b) {
  if (!column_exists(P, a) || !column_exists(P, b)) throw std::invalid_argument("intersection_number: no such curve");
  return intersection_with(P, intersection_tables(P), a, b);
}

std::vector<std::vector<Rat>> intersection_matrix(const PMatrix& P) {
  auto t = intersection_tables(P);
  auto cols = all_columns(P);
  std::vector<std::vector<Rat>> M(cols.size(), std::vector<Rat>(cols.size()));
  for (size_t x = 0; x < cols.size(); ++x)
    for (size_t y = x; y < cols.size(); ++y) M[x][y] = M[y][x] = intersection_with(P, t, cols[x], cols[y]);
  return M;
}

AnticanonicalIntersections anticanonical_intersections(const PMatrix& P) {
  AnticanonicalIntersections k;
  auto t = intersection_tables(P);
  for (size_t i = 0; i < P.arms.size(); ++i) {
    const auto& a = P.arms[i];
    std::vector<Rat> row;
    for (size_t j = 0; j < a.size(); ++j)
      row.push_back((ext_mul(t.ell[i][j], t.m[i][j]) - ext_mul(t.ell[i][j + 1], t.m[i][j + 1])) / Rat(a[j].l));
    k.arm.push_back(std::move(row));
  }
  if (P.vplus) k.plus = ell_plus(P) - m_plus(P);
  if (P.vminus) k.minus = ell_minus(P) + m_minus(P);
  return k;
}

bool is_del_pezzo(const PMatrix& P) {
  auto k = anticanonical_intersections(P);
  if (k.plus && k.plus->sign() <= 0) return false;
  if (k.minus && k.minus->sign() <= 0) return false;
  for (const auto& row : k.arm)
    for (const auto& x : row)
      if (x.sign() <= 0) return false;
  return true;
}

Rat k_squared(const PMatrix& P) {
  auto t = intersection_tables(P);
  Rat s;
  for (const auto& a : t.alpha) s += a;
  const Rat mp = m_plus(P), mm = m_minus(P), lp = ell_plus(P), lm = ell_minus(P);
  Rat plus = P.vplus ? Rat(2) * lp - mp : lp * lp / mp;
  Rat minus = P.vminus ? Rat(2) * lm + mm : -(lm * lm) / mm;
  return plus + s + minus;
}

std::vector<Int> anticanonical_coefficients(const PMatrix& P) {
  std::vector<Int> a;
  for (size_t i = 0; i < P.arms.size(); ++i)
    for (const auto& v : P.arms[i]) a.push_back(i == 0 ? Int(1) - Int(P.r() - 1) * v.l : Int(1));
  for (int q = 0; q < P.m(); ++q) a.push_back(Int(1));
  return a;
}

ClassGroupData class_group(const PMatrix& P) {
  auto s = smith_normal_form(to_matrix(P).transpose());
  ClassGroupData c;
  c.torsion = s.torsion();
  c.picard = s.free_rank;
  if (c.picard != P.n() + P.m() - P.r() - 1) throw std::logic_error("class_group: unexpected free rank");
  return c;
}

PMatrix pmatrix_from_polygon(const PolygonZ& A) {
  std::vector<std::vector<Col>> arms(2);
  bool vp = false, vm = false;
  for (const auto& w : A.v) {
    if (w.x.sign() > 0)
      arms[1].push_back({w.x, w.y});
    else if (w.x.sign() < 0)
      arms[0].push_back({-w.x, w.y});
    else if (w.y == Int(1))
      vp = true;
    else if (w.y == Int(-1))
      vm = true;
    else
      throw std::invalid_argument("pmatrix_from_polygon: vertex not primitive");
  }
  if (arms[0].empty() || arms[1].empty()) throw std::invalid_argument("pmatrix_from_polygon: origin not interior");
  return make_pmatrix(std::move(arms), vp, vm);
}

}  // namespace ldp
