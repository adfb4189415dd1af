#include "ldp/defmat.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace ldp {

const char* to_string(SourceSink t) {
  switch (t) {
    case SourceSink::EE: return "EE";
    case SourceSink::EP: return "EP";
    case SourceSink::PE: return "PE";
    case SourceSink::PP: return "PP";
  }
  return "?";
}

int PMatrix::n() const {
  int s = 0;
  for (const auto& a : arms) s += static_cast<int>(a.size());
  return s;
}

std::vector<int> PMatrix::format() const {
  std::vector<int> f;
  for (const auto& a : arms) f.push_back(static_cast<int>(a.size()));
  return f;
}

void sort_slopes(PMatrix& P) {
  for (auto& a : P.arms) std::sort(a.begin(), a.end(), slope_greater);
}

bool is_slope_ordered(const PMatrix& P) {
  for (const auto& a : P.arms)
    for (size_t j = 0; j + 1 < a.size(); ++j)
      if (!slope_greater(a[j], a[j + 1])) return false;
  return true;
}

PMatrix make_pmatrix(std::vector<std::vector<Col>> arms, bool vplus, bool vminus) {
  PMatrix P{std::move(arms), vplus, vminus};
  sort_slopes(P);
  return P;
}

Rat m_plus(const PMatrix& P) {
  Rat s;
  for (const auto& a : P.arms) s += a.front().slope();
  return s;
}
Rat m_minus(const PMatrix& P) {
  Rat s;
  for (const auto& a : P.arms) s += a.back().slope();
  return s;
}
Rat ell_plus(const PMatrix& P) {
  Rat s = Rat(1 - P.r());
  for (const auto& a : P.arms) s += Rat(Int(1), a.front().l);
  return s;
}
Rat ell_minus(const PMatrix& P) {
  Rat s = Rat(1 - P.r());
  for (const auto& a : P.arms) s += Rat(Int(1), a.back().l);
  return s;
}

SourceSink source_sink(const PMatrix& P) {
  if (P.vplus) return P.vminus ? SourceSink::PP : SourceSink::PE;
  return P.vminus ? SourceSink::EP : SourceSink::EE;
}

Validation validate(const PMatrix& P) {
  auto bad = [](std::string s) { return Validation{false, std::move(s)}; };
  if (P.arms.size() < 2) return bad("r >= 1");
  for (size_t i = 0; i < P.arms.size(); ++i) {
    const auto& a = P.arms[i];
    if (a.empty()) return bad("n_i >= 1");
    for (size_t j = 0; j < a.size(); ++j) {
      if (a[j].l.sign() <= 0) return bad("l_ij >= 1");
      if (!(gcd(a[j].l, a[j].d) == Int(1))) return bad("gcd(l_ij, d_ij) = 1");
      for (size_t q = 0; q < j; ++q)
        if (a[q] == a[j]) return bad("pairwise distinct columns");
    }
  }
  if (!is_slope_ordered(P)) return bad("slope-ordered");
  if (!P.vplus && m_plus(P).sign() <= 0) return bad("projective: v+ or m+ > 0");
  if (!P.vminus && m_minus(P).sign() >= 0) return bad("projective: v- or m- < 0");
  if (!(P.r() + 1 < P.n() + P.m())) return bad("r+1 < n+m");
  return {};
}

bool is_irredundant(const PMatrix& P) {
  for (const auto& a : P.arms)
    if (a.size() == 1 && a[0].l == Int(1)) return false;
  return true;
}

namespace {

void shift_arm(std::vector<Col>& a, const Int& c) {
  if (c.is_zero()) return;
  for (auto& v : a) v.d += c * v.l;
}

}  // namespace

PMatrix erase_erasable(const PMatrix& P) {
  PMatrix Q = P;
  for (bool again = true; again && Q.r() >= 2;) {
    again = false;
    for (size_t i = 0; i < Q.arms.size(); ++i) {
      const auto& a = Q.arms[i];
      if (a.size() == 1 && a[0].l == Int(1)) {
        // move the slope d onto another arm, then the column is (1,0) and erasable
        Int d = a[0].d;
        size_t other = i == 0 ? 1 : 0;
        shift_arm(Q.arms[other], d);
        Q.arms.erase(Q.arms.begin() + static_cast<long>(i));
        again = true;
        break;
      }
    }
  }
  return Q;
}

PMatrix flip_last_row(const PMatrix& P) {
  PMatrix Q = P;
  for (auto& a : Q.arms) {
    for (auto& v : a) v.d = -v.d;
    std::reverse(a.begin(), a.end());
  }
  std::swap(Q.vplus, Q.vminus);
  return Q;
}

// v+ and v- are identified by their last entry, so swapping their position changes nothing
PMatrix swap_vpm(const PMatrix& P) { return P; }

PMatrix swap_in_arm(const PMatrix& P, int i, int j1, int j2) {
  if (i < 0 || i > P.r()) throw std::out_of_range("swap_in_arm: arm");
  const int n = static_cast<int>(P.arms[i].size());
  if (j1 < 0 || j2 < 0 || j1 >= n || j2 >= n) throw std::out_of_range("swap_in_arm: column");
  PMatrix Q = P;
  std::swap(Q.arms[i][j1], Q.arms[i][j2]);
  sort_slopes(Q);
  return Q;
}

PMatrix swap_arms(const PMatrix& P, int i, int j) {
  if (i < 0 || j < 0 || i > P.r() || j > P.r()) throw std::out_of_range("swap_arms");
  PMatrix Q = P;
  std::swap(Q.arms[i], Q.arms[j]);
  return Q;
}

PMatrix add_row_multiple(const PMatrix& P, int i, const Int& c) {
  if (i < 1 || i > P.r()) throw std::out_of_range("add_row_multiple: row");
  PMatrix Q = P;
  shift_arm(Q.arms[i], c);
  shift_arm(Q.arms[0], -c);
  return Q;
}

namespace {

std::vector<Rat> beta_plus_arm(const std::vector<Col>& a, const Int& b) {
  std::vector<Rat> out;
  for (const auto& v : a) out.push_back(v.slope() - Rat(b));
  return out;
}

// beta- with entries descending: last column first
std::vector<Rat> beta_minus_arm(const std::vector<Col>& a, const Int& b) {
  std::vector<Rat> out;
  for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(Rat(b) - it->slope());
  return out;
}

bool desc(const std::vector<Rat>& x, const std::vector<Rat>& y) { return y < x; }

}  // namespace

OrientationData orientation_data(const PMatrix& P) {
  OrientationData o;
  for (const auto& a : P.arms) {
    Int bp = floor(a.front().slope()), bm = ceil(a.back().slope());
    o.b_plus += bp;
    o.b_minus -= bm;
    o.beta_plus.push_back(beta_plus_arm(a, bp));
    o.beta_minus.push_back(beta_minus_arm(a, bm));
    o.b_plus_i.push_back(std::move(bp));
    o.b_minus_i.push_back(std::move(bm));
  }
  std::sort(o.beta_plus.begin(), o.beta_plus.end(), desc);
  std::sort(o.beta_minus.begin(), o.beta_minus.end(), desc);
  return o;
}

namespace {

// +1: oriented with (O1)-(O3), 0: tie (O4), -1: needs the flip
int orientation_sign(const PMatrix& P) {
  switch (source_sink(P)) {
    case SourceSink::PE: return 1;
    case SourceSink::EP: return -1;
    default: break;
  }
  auto o = orientation_data(P);
  if (o.b_plus != o.b_minus) return o.b_plus > o.b_minus ? 1 : -1;
  if (o.beta_plus == o.beta_minus) return 0;
  return o.beta_minus < o.beta_plus ? 1 : -1;
}

}  // namespace

bool is_oriented(const PMatrix& P) { return orientation_sign(P) >= 0; }

PMatrix adapt(const PMatrix& P) {
  PMatrix Q = P;
  std::vector<std::pair<std::vector<Rat>, size_t>> order;
  for (size_t i = 0; i < Q.arms.size(); ++i) order.push_back({beta_plus_arm(Q.arms[i], floor(Q.arms[i][0].slope())), i});
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return y.first < x.first; });
  std::vector<std::vector<Col>> arms;
  for (const auto& [b, i] : order) arms.push_back(Q.arms[i]);
  Q.arms = std::move(arms);
  for (size_t i = 1; i < Q.arms.size(); ++i) {
    Int c = floor(Q.arms[i][0].slope());
    shift_arm(Q.arms[i], -c);
    shift_arm(Q.arms[0], c);
  }
  return Q;
}

std::vector<Int> flatten(const PMatrix& P) {
  std::vector<Int> f;
  f.push_back(Int(P.r()));
  f.push_back(Int(int(P.vplus) * 2 + int(P.vminus)));
  for (const auto& a : P.arms) f.push_back(Int(static_cast<int64_t>(a.size())));
  for (const auto& a : P.arms)
    for (const auto& v : a) f.push_back(v.l), f.push_back(v.d);
  return f;
}

bool flat_less(const PMatrix& a, const PMatrix& b) { return flatten(a) < flatten(b); }

PMatrix normal_form(const PMatrix& P0) {
  PMatrix P = P0;
  sort_slopes(P);
  P = erase_erasable(P);
  int s = orientation_sign(P);
  if (s > 0) return adapt(P);
  if (s < 0) return adapt(flip_last_row(P));
  PMatrix a = adapt(P), b = adapt(flip_last_row(P));
  return flat_less(b, a) ? b : a;
}

bool is_normal_form(const PMatrix& P) { return normal_form(P) == P; }

std::string key_bytes(const PMatrix& P) {
  std::string s;
  auto put = [&](int64_t x) { s.append(reinterpret_cast<const char*>(&x), sizeof(x)); };
  for (const auto& x : flatten(P)) put(x.to_i64());
  return s;
}

PMatrix from_key_bytes(const std::string& s) {
  if (s.size() % 8 != 0) throw std::invalid_argument("from_key_bytes: length");
  std::vector<int64_t> f(s.size() / 8);
  std::memcpy(f.data(), s.data(), s.size());
  if (f.size() < 2) throw std::invalid_argument("from_key_bytes: short");
  PMatrix P;
  const size_t arms = static_cast<size_t>(f[0] + 1);
  P.vplus = (f[1] & 2) != 0;
  P.vminus = (f[1] & 1) != 0;
  size_t pos = 2 + arms;
  if (f.size() < pos) throw std::invalid_argument("from_key_bytes: short");
  for (size_t i = 0; i < arms; ++i) {
    std::vector<Col> a;
    for (int64_t j = 0; j < f[2 + i]; ++j, pos += 2) {
      if (pos + 1 >= f.size()) throw std::invalid_argument("from_key_bytes: short");
      a.push_back({Int(f[pos]), Int(f[pos + 1])});
    }
    P.arms.push_back(std::move(a));
  }
  return P;
}

std::string to_string(const ColRef& c) {
  switch (c.kind) {
    case ColRef::VPlus: return "v+";
    case ColRef::VMinus: return "v-";
    default: return "v" + std::to_string(c.i) + std::to_string(c.j + 1);
  }
}

std::vector<ColRef> contractible_columns(const PMatrix& P) {
  std::vector<ColRef> out;
  const Rat mp = m_plus(P), mm = m_minus(P);
  for (int i = 0; i <= P.r(); ++i) {
    const auto& a = P.arms[i];
    const int n = static_cast<int>(a.size());
    for (int j = 0; j < n; ++j) {
      bool c = false;
      if (n >= 2 && j > 0 && j < n - 1) c = true;
      if (n >= 2 && j == 0 && (P.vplus || (mp - a[0].slope() + a[1].slope()).sign() > 0)) c = true;
      if (n >= 2 && j == n - 1 && (P.vminus || (mm - a[n - 1].slope() + a[n - 2].slope()).sign() < 0)) c = true;
      if (c) out.push_back({ColRef::Arm, i, j});
    }
  }
  if (P.vplus && mp.sign() > 0) out.push_back({ColRef::VPlus, 0, 0});
  if (P.vminus && mm.sign() < 0) out.push_back({ColRef::VMinus, 0, 0});
  return out;
}

PMatrix contract(const PMatrix& P, const ColRef& c) {
  auto cs = contractible_columns(P);
  if (std::find(cs.begin(), cs.end(), c) == cs.end()) throw std::invalid_argument("contract: column is not contractible");
  PMatrix Q = P;
  if (c.kind == ColRef::VPlus)
    Q.vplus = false;
  else if (c.kind == ColRef::VMinus)
    Q.vminus = false;
  else
    Q.arms[c.i].erase(Q.arms[c.i].begin() + c.j);
  return Q;
}

PMatrix proper_extend(const PMatrix& P, int arm, const Col& c) {
  if (arm < 0 || arm > P.r()) throw std::out_of_range("proper_extend: arm");
  if (c.l.sign() <= 0 || !(gcd(c.l, c.d) == Int(1))) throw std::invalid_argument("proper_extend: column not primitive");
  auto& a = P.arms[arm];
  if (std::find(a.begin(), a.end(), c) != a.end()) throw std::invalid_argument("proper_extend: duplicate column");
  PMatrix Q = P;
  auto& b = Q.arms[arm];
  b.insert(std::upper_bound(b.begin(), b.end(), c, slope_greater), c);
  return Q;
}

PMatrix proper_extend_vplus(const PMatrix& P) {
  if (P.vplus) throw std::invalid_argument("proper_extend: v+ present");
  PMatrix Q = P;
  Q.vplus = true;
  return Q;
}

PMatrix proper_extend_vminus(const PMatrix& P) {
  if (P.vminus) throw std::invalid_argument("proper_extend: v- present");
  PMatrix Q = P;
  Q.vminus = true;
  return Q;
}

PMatrix redundant_extend(const PMatrix& P) {
  PMatrix Q = P;
  Q.arms.push_back({Col{Int(1), Int(0)}});
  return Q;
}

IntMatrix to_matrix(const PMatrix& P) {
  const size_t rows = static_cast<size_t>(P.r()) + 1;
  IntMatrix M(rows, static_cast<size_t>(P.n() + P.m()));
  size_t col = 0;
  for (size_t i = 0; i < P.arms.size(); ++i)
    for (const auto& v : P.arms[i]) {
      if (i == 0)
        for (size_t q = 0; q + 1 < rows; ++q) M(q, col) = -v.l;
      else
        M(i - 1, col) = v.l;
      M(rows - 1, col) = v.d;
      ++col;
    }
  if (P.vplus) M(rows - 1, col++) = Int(1);
  if (P.vminus) M(rows - 1, col++) = Int(-1);
  return M;
}

std::string to_text(const PMatrix& P) {
  IntMatrix M = to_matrix(P);
  std::vector<std::vector<std::string>> cells(M.rows(), std::vector<std::string>(M.cols()));
  size_t w = 1;
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j) w = std::max(w, (cells[i][j] = M(i, j).str()).size());
  std::ostringstream os;
  for (size_t i = 0; i < M.rows(); ++i) {
    for (size_t j = 0; j < M.cols(); ++j) os << (j ? " " : "") << std::string(w - cells[i][j].size(), ' ') << cells[i][j];
    os << '\n';
  }
  return os.str();
}

}  // namespace ldp
