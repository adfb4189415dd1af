#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ldp {

// Signed integer that lives in an int64 until an operation overflows, then
// switches to GMP.  Results are demoted back whenever they fit again.
class Int {
 public:
  Int() noexcept : v_(0) {}
  template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
  Int(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_unsigned_v<T> && sizeof(T) >= sizeof(int64_t)) {
      if (v > static_cast<T>(INT64_MAX)) {
        z_ = std::make_unique<mpz_class>();
        mpz_import(z_->get_mpz_t(), 1, 1, sizeof(T), 0, 0, &v);
        return;
      }
    }
    v_ = static_cast<int64_t>(v);
  }
  explicit Int(const mpz_class& z) { assign(z); }
  explicit Int(__int128 v);
  static Int parse(const std::string& s);

  Int(const Int& o) : v_(o.v_), z_(o.z_ ? std::make_unique<mpz_class>(*o.z_) : nullptr) {}
  Int(Int&&) noexcept = default;
  Int& operator=(const Int& o) {
    if (this != &o) {
      v_ = o.v_;
      z_ = o.z_ ? std::make_unique<mpz_class>(*o.z_) : nullptr;
    }
    return *this;
  }
  Int& operator=(Int&&) noexcept = default;

  bool is_small() const noexcept { return !z_; }
  int64_t small() const noexcept { return v_; }
  int64_t to_i64() const;  // throws if it does not fit
  mpz_class to_mpz() const { return z_ ? *z_ : mpz_class(static_cast<long>(v_)); }
  int sign() const noexcept { return z_ ? sgn(*z_) : (v_ > 0) - (v_ < 0); }
  bool is_zero() const noexcept { return !z_ && v_ == 0; }
  std::string str() const;

  friend Int operator+(const Int& a, const Int& b);
  friend Int operator-(const Int& a, const Int& b);
  friend Int operator*(const Int& a, const Int& b);
  // truncating division and remainder, like built-in integers
  friend Int operator/(const Int& a, const Int& b);
  friend Int operator%(const Int& a, const Int& b);
  Int operator-() const;
  Int& operator+=(const Int& b) { return *this = *this + b; }
  Int& operator-=(const Int& b) { return *this = *this - b; }
  Int& operator*=(const Int& b) { return *this = *this * b; }
  Int& operator/=(const Int& b) { return *this = *this / b; }

  friend bool operator==(const Int& a, const Int& b) noexcept {
    if (!a.z_ && !b.z_) return a.v_ == b.v_;
    return cmp(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const Int& a, const Int& b) noexcept {
    if (!a.z_ && !b.z_) return a.v_ <=> b.v_;
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Int& a) { return os << a.str(); }

 private:
  static int cmp(const Int& a, const Int& b) noexcept;
  void assign(const mpz_class& z);
  void assign(mpz_class&& z);

  int64_t v_ = 0;
  std::unique_ptr<mpz_class> z_;
};

Int abs(const Int& a);
Int gcd(const Int& a, const Int& b);  // non-negative
Int lcm(const Int& a, const Int& b);  // non-negative
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);  // in [0,|b|) for b > 0
// g = gcd(a,b) = s*a + t*b
void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t);

// Reduced fraction with positive denominator.
class Rat {
 public:
  Rat() : n_(0), d_(1) {}
  template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
  Rat(T v) : n_(v), d_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(Int n) : n_(std::move(n)), d_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(Int n, Int d);
  // parses "p/q" or "p"
  static Rat parse(const std::string& s);

  const Int& num() const noexcept { return n_; }
  const Int& den() const noexcept { return d_; }
  int sign() const noexcept { return n_.sign(); }
  bool is_int() const noexcept { return d_.is_small() && d_.small() == 1; }
  std::string str() const;

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat operator-() const;
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) noexcept { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);
  friend std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << a.str(); }

 private:
  struct Raw {};
  Rat(Int n, Int d, Raw) : n_(std::move(n)), d_(std::move(d)) {}
  static Rat from128(__int128 n, __int128 d);
  void normalize();

  Int n_, d_;
};

Int floor(const Rat& q);
Int ceil(const Rat& q);
Rat abs(const Rat& q);
Rat inv(const Rat& q);
inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

template <class T>
struct Vec2T {
  T x{}, y{};
  Vec2T() = default;
  Vec2T(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {}
  friend Vec2T operator+(const Vec2T& a, const Vec2T& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2T operator-(const Vec2T& a, const Vec2T& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2T operator*(const T& s, const Vec2T& a) { return {s * a.x, s * a.y}; }
  Vec2T operator-() const { return {-x, -y}; }
  friend bool operator==(const Vec2T& a, const Vec2T& b) { return a.x == b.x && a.y == b.y; }
  friend auto operator<=>(const Vec2T& a, const Vec2T& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

using Vec2 = Vec2T<Int>;
using Vec2i = Vec2T<int64_t>;
using VecN = std::vector<Int>;

template <class T>
inline T det2(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.y - a.y * b.x;
}
template <class T>
inline T dot2(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.x + a.y * b.y;
}

VecN primitive(const VecN& v);
Vec2 primitive(const Vec2& v);
bool is_primitive(const Vec2& v);
inline bool is_primitive(const Vec2i& v) { return std::gcd(v.x, v.y) == 1; }

// 2x2 integer matrix acting on column vectors
template <class T>
struct Mat2T {
  T a{1}, b{0}, c{0}, d{1};
  Vec2T<T> operator*(const Vec2T<T>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2T operator*(const Mat2T& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  T det() const { return a * d - b * c; }
  // inverse of a unimodular matrix
  Mat2T inverse_unimodular() const {
    T dt = det();
    return {d * dt, -b * dt, -c * dt, a * dt};
  }
};
using Mat2 = Mat2T<Int>;

// unimodular U with det 1 and U*v = (0,1); v primitive
Mat2 to_e2(const Vec2& v);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Int& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Int& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

struct SmithResult {
  std::vector<Int> invariant_factors;  // the nonzero diagonal entries, d1 | d2 | ...
  int free_rank = 0;                   // rank of the free part of the cokernel
  // cokernel torsion: factors > 1
  std::vector<Int> torsion() const;
};

// Structure of Z^rows / (column span of M).
SmithResult smith_normal_form(const IntMatrix& M);

// Indecomposable elements of cone(a,b) ∩ Z^2, from a to b.
std::vector<Vec2> hilbert_basis_2d(const Vec2& a, const Vec2& b);
// Same thing by scanning the fundamental parallelogram; test oracle.
std::vector<Vec2> hilbert_basis_2d_bruteforce(const Vec2& a, const Vec2& b);

}  // namespace ldp

template <>
struct std::hash<ldp::Int> {
  size_t operator()(const ldp::Int& a) const noexcept {
    if (a.is_small()) return std::hash<int64_t>{}(a.small());
    return std::hash<std::string>{}(a.str());
  }
};
