#include "ldp/exactmath.hpp"

#include <algorithm>
#include <cstdlib>

namespace ldp {

namespace {

bool fits64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

mpz_class mpz_from128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

inline bool fits64(__int128 v) { return v >= INT64_MIN && v <= INT64_MAX; }

unsigned __int128 ugcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline __int128 abs128(__int128 v) { return v < 0 ? -v : v; }

}  // namespace

Int::Int(__int128 v) {
  if (fits64(v)) {
    v_ = static_cast<int64_t>(v);
  } else {
    z_ = std::make_unique<mpz_class>(mpz_from128(v));
  }
}

Int Int::parse(const std::string& s) {
  mpz_class z;
  if (z.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + s);
  return Int(z);
}

void Int::assign(const mpz_class& z) {
  if (fits64(z)) {
    v_ = z.get_si();
    z_.reset();
  } else {
    z_ = std::make_unique<mpz_class>(z);
  }
}

void Int::assign(mpz_class&& z) {
  if (fits64(z)) {
    v_ = z.get_si();
    z_.reset();
  } else {
    z_ = std::make_unique<mpz_class>(std::move(z));
  }
}

int64_t Int::to_i64() const {
  if (z_) throw std::overflow_error("Int does not fit into int64");
  return v_;
}

std::string Int::str() const { return z_ ? z_->get_str() : std::to_string(v_); }

int Int::cmp(const Int& a, const Int& b) noexcept {
  if (!a.z_ && !b.z_) return (a.v_ > b.v_) - (a.v_ < b.v_);
  if (a.z_ && b.z_) return ::cmp(*a.z_, *b.z_);
  if (a.z_) return mpz_cmp_si(a.z_->get_mpz_t(), static_cast<long>(b.v_));
  return -mpz_cmp_si(b.z_->get_mpz_t(), static_cast<long>(a.v_));
}

Int operator+(const Int& a, const Int& b) {
  if (!a.z_ && !b.z_) {
    int64_t r;
    if (!__builtin_add_overflow(a.v_, b.v_, &r)) return Int(r);
  }
  Int out;
  out.assign(mpz_class(a.to_mpz() + b.to_mpz()));
  return out;
}

Int operator-(const Int& a, const Int& b) {
  if (!a.z_ && !b.z_) {
    int64_t r;
    if (!__builtin_sub_overflow(a.v_, b.v_, &r)) return Int(r);
  }
  Int out;
  out.assign(mpz_class(a.to_mpz() - b.to_mpz()));
  return out;
}

Int operator*(const Int& a, const Int& b) {
  if (!a.z_ && !b.z_) {
    int64_t r;
    if (!__builtin_mul_overflow(a.v_, b.v_, &r)) return Int(r);
  }
  Int out;
  out.assign(mpz_class(a.to_mpz() * b.to_mpz()));
  return out;
}

Int operator/(const Int& a, const Int& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.z_ && !b.z_ && !(a.v_ == INT64_MIN && b.v_ == -1)) return Int(a.v_ / b.v_);
  Int out;
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  out.assign(std::move(q));
  return out;
}

Int operator%(const Int& a, const Int& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.z_ && !b.z_) {
    if (b.v_ == -1) return Int(0);
    return Int(a.v_ % b.v_);
  }
  Int out;
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  out.assign(std::move(r));
  return out;
}

Int Int::operator-() const {
  if (!z_ && v_ != INT64_MIN) return Int(-v_);
  Int out;
  out.assign(mpz_class(-to_mpz()));
  return out;
}

Int abs(const Int& a) { return a.sign() < 0 ? -a : a; }

Int gcd(const Int& a, const Int& b) {
  if (a.is_small() && b.is_small()) {
    uint64_t x = a.small() < 0 ? -static_cast<uint64_t>(a.small()) : static_cast<uint64_t>(a.small());
    uint64_t y = b.small() < 0 ? -static_cast<uint64_t>(b.small()) : static_cast<uint64_t>(b.small());
    return Int(std::gcd(x, y));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Int(g);
}

Int lcm(const Int& a, const Int& b) {
  if (a.is_zero() || b.is_zero()) return Int(0);
  return abs(a / gcd(a, b) * b);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (!r.is_zero() && ((r.sign() < 0) != (b.sign() < 0))) q = q - 1;
  return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  // iterative extended Euclid; the result keeps g >= 0
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!r1.is_zero()) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    Int s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Int t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.sign() < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

// ---------------------------------------------------------------- Rat

Rat::Rat(Int n, Int d) : n_(std::move(n)), d_(std::move(d)) {
  if (d_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void Rat::normalize() {
  if (d_.sign() < 0) {
    n_ = -n_;
    d_ = -d_;
  }
  if (d_.is_small() && d_.small() == 1) return;
  Int g = gcd(n_, d_);
  if (!(g.is_small() && g.small() == 1)) {
    n_ = n_ / g;
    d_ = d_ / g;
  }
}

Rat Rat::from128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  auto g = static_cast<__int128>(ugcd128(static_cast<unsigned __int128>(abs128(n)), static_cast<unsigned __int128>(d)));
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rat(Int(n), Int(d), Raw{});
}

Rat Rat::parse(const std::string& s) {
  auto p = s.find('/');
  if (p == std::string::npos) return Rat(Int::parse(s));
  return Rat(Int::parse(s.substr(0, p)), Int::parse(s.substr(p + 1)));
}

std::string Rat::str() const {
  if (is_int()) return n_.str();
  return n_.str() + "/" + d_.str();
}

Rat operator+(const Rat& a, const Rat& b) {
  if (a.n_.is_small() && a.d_.is_small() && b.n_.is_small() && b.d_.is_small()) {
    int64_t ad = a.d_.small(), bd = b.d_.small();
    if (ad == bd) {
      if (ad == 1) {
        int64_t r;
        if (!__builtin_add_overflow(a.n_.small(), b.n_.small(), &r)) return Rat(Int(r), Int(1), Rat::Raw{});
      }
      return Rat::from128(static_cast<__int128>(a.n_.small()) + b.n_.small(), ad);
    }
    __int128 n = static_cast<__int128>(a.n_.small()) * bd + static_cast<__int128>(b.n_.small()) * ad;
    __int128 d = static_cast<__int128>(ad) * bd;
    return Rat::from128(n, d);
  }
  return Rat(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  if (a.n_.is_small() && a.d_.is_small() && b.n_.is_small() && b.d_.is_small()) {
    __int128 n = static_cast<__int128>(a.n_.small()) * b.n_.small();
    __int128 d = static_cast<__int128>(a.d_.small()) * b.d_.small();
    return Rat::from128(n, d);
  }
  return Rat(a.n_ * b.n_, a.d_ * b.d_);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.n_.is_zero()) throw std::domain_error("division by zero");
  if (a.n_.is_small() && a.d_.is_small() && b.n_.is_small() && b.d_.is_small()) {
    __int128 n = static_cast<__int128>(a.n_.small()) * b.d_.small();
    __int128 d = static_cast<__int128>(a.d_.small()) * b.n_.small();
    return Rat::from128(n, d);
  }
  return Rat(a.n_ * b.d_, a.d_ * b.n_);
}

Rat Rat::operator-() const { return Rat(-n_, d_, Raw{}); }

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  if (a.n_.is_small() && a.d_.is_small() && b.n_.is_small() && b.d_.is_small()) {
    __int128 l = static_cast<__int128>(a.n_.small()) * b.d_.small();
    __int128 r = static_cast<__int128>(b.n_.small()) * a.d_.small();
    return l <=> r;
  }
  return a.n_ * b.d_ <=> b.n_ * a.d_;
}

Int floor(const Rat& q) { return floor_div(q.num(), q.den()); }
Int ceil(const Rat& q) { return ceil_div(q.num(), q.den()); }
Rat abs(const Rat& q) { return q.sign() < 0 ? -q : q; }
Rat inv(const Rat& q) { return Rat(q.den(), q.num()); }

// ---------------------------------------------------------------- vectors

VecN primitive(const VecN& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g.is_zero()) throw std::invalid_argument("primitive: zero vector");
  VecN out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x / g);
  return out;
}

Vec2 primitive(const Vec2& v) {
  Int g = gcd(v.x, v.y);
  if (g.is_zero()) throw std::invalid_argument("primitive: zero vector");
  return {v.x / g, v.y / g};
}

bool is_primitive(const Vec2& v) { return gcd(v.x, v.y) == Int(1); }

Mat2 to_e2(const Vec2& v) {
  Int g, s, t;
  ext_gcd(v.x, v.y, g, s, t);
  if (!(g == Int(1))) throw std::invalid_argument("to_e2: vector not primitive");
  // [[y,-x],[s,t]] * (x,y) = (0, sx+ty) = (0,1), det = yt + xs = 1
  return Mat2{v.y, -v.x, s, t};
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix p(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

std::vector<Int> SmithResult::torsion() const {
  std::vector<Int> t;
  for (const auto& d : invariant_factors)
    if (d > Int(1)) t.push_back(d);
  return t;
}

SmithResult smith_normal_form(const IntMatrix& M) {
  IntMatrix A = M;
  const size_t m = A.rows(), n = A.cols();
  size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // pivot: smallest nonzero |entry| in the remaining block
    bool found = false;
    size_t pi = t, pj = t;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (!A(i, j).is_zero() && (!found || abs(A(i, j)) < abs(A(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    for (;;) {
      for (size_t j = 0; j < n; ++j) std::swap(A(t, j), A(pi, j));
      for (size_t i = 0; i < m; ++i) std::swap(A(i, t), A(i, pj));
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (A(i, t).is_zero()) continue;
        Int q = floor_div(A(i, t), A(t, t));
        for (size_t j = t; j < n; ++j) A(i, j) -= q * A(t, j);
        if (!A(i, t).is_zero()) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (A(t, j).is_zero()) continue;
        Int q = floor_div(A(t, j), A(t, t));
        for (size_t i = t; i < m; ++i) A(i, j) -= q * A(i, t);
        if (!A(t, j).is_zero()) clean = false;
      }
      if (clean) {
        // divisibility: pivot must divide the rest of the block
        bool divides = true;
        for (size_t i = t + 1; i < m && divides; ++i)
          for (size_t j = t + 1; j < n; ++j)
            if (!(A(i, j) % A(t, t)).is_zero()) {
              for (size_t jj = t; jj < n; ++jj) A(t, jj) += A(i, jj);
              divides = false;
              break;
            }
        if (divides) break;
      }
      pi = pj = t;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (!A(i, j).is_zero() && abs(A(i, j)) < abs(A(pi, pj))) {
            pi = i;
            pj = j;
          }
      if (A(pi, pj).is_zero()) {
        pi = t;
        pj = t;
      }
    }
  }
  SmithResult res;
  for (size_t i = 0; i < t; ++i) res.invariant_factors.push_back(abs(A(i, i)));
  res.free_rank = static_cast<int>(m - t);
  return res;
}

std::vector<Vec2> hilbert_basis_2d(const Vec2& a, const Vec2& b) {
  Int D = det2(a, b);
  if (D.is_zero()) throw std::invalid_argument("hilbert_basis_2d: degenerate cone");
  if (!is_primitive(a) || !is_primitive(b)) throw std::invalid_argument("hilbert_basis_2d: rays must be primitive");
  if (D.sign() < 0) {
    auto h = hilbert_basis_2d(b, a);
    std::reverse(h.begin(), h.end());
    return h;
  }
  // b -> (0,1), a -> (D, -q) with 0 <= q < D
  Mat2 U = to_e2(b);
  Vec2 ua = U * a;  // ua.x == D
  Int q = floor_mod(-ua.y, D);
  Int c = (-q - ua.y) / D;
  Mat2 S{1, 0, c, 1};
  Mat2 W = S * U;
  Mat2 Wi = W.inverse_unimodular();
  std::vector<Vec2> chain{{0, 1}};
  if (D == Int(1)) {
    chain.push_back({1, 0});
  } else {
    // Hirzebruch-Jung continued fraction of D/q
    Vec2 prev{0, 1}, cur{1, 0};
    chain.push_back(cur);
    Int n = D, m = q;
    while (!(cur == Vec2(D, -q))) {
      Int bi = ceil_div(n, m);
      Vec2 nxt{bi * cur.x - prev.x, bi * cur.y - prev.y};
      chain.push_back(nxt);
      prev = cur;
      cur = nxt;
      Int r = bi * m - n;
      n = m;
      m = r;
      if (m.is_zero()) break;
    }
  }
  std::vector<Vec2> out;
  out.reserve(chain.size());
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(Wi * *it);
  return out;
}

std::vector<Vec2> hilbert_basis_2d_bruteforce(const Vec2& a, const Vec2& b) {
  Int D = det2(a, b);
  if (D.is_zero()) throw std::invalid_argument("hilbert_basis_2d: degenerate cone");
  int s = D.sign();
  // lattice points of the half-open parallelogram a*[0,1] + b*[0,1], nonzero
  Int xlo = std::min({Int(0), a.x, b.x, a.x + b.x}), xhi = std::max({Int(0), a.x, b.x, a.x + b.x});
  Int ylo = std::min({Int(0), a.y, b.y, a.y + b.y}), yhi = std::max({Int(0), a.y, b.y, a.y + b.y});
  std::vector<Vec2> pts;
  for (Int x = xlo; x <= xhi; x += 1)
    for (Int y = ylo; y <= yhi; y += 1) {
      if (x.is_zero() && y.is_zero()) continue;
      Vec2 p{x, y};
      // p = alpha a + beta b, alpha = det(p,b)/D, beta = det(a,p)/D
      Int al = det2(p, b) * s, be = det2(a, p) * s, Da = abs(D);
      if (al.sign() >= 0 && be.sign() >= 0 && al <= Da && be <= Da) pts.push_back(p);
    }
  auto in_cone = [&](const Vec2& p) { return (det2(p, b) * s).sign() >= 0 && (det2(a, p) * s).sign() >= 0; };
  std::vector<Vec2> hb;
  for (const auto& p : pts) {
    bool dec = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      Vec2 r = p - q;
      if ((r.x.is_zero() && r.y.is_zero()) || !in_cone(r)) continue;
      dec = true;
      break;
    }
    if (!dec) hb.push_back(p);
  }
  // all elements lie in one half plane, so the cross product orders them by angle from a
  std::sort(hb.begin(), hb.end(), [&](const Vec2& p, const Vec2& q) { return (det2(p, q) * s).sign() > 0; });
  return hb;
}

}  // namespace ldp
