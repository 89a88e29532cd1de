#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fedo {

/// Exact rational number. Thin value wrapper over GMP's mpq_class so that
/// expression templates never leak into generic tensor code.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a" or "a/b" (optional leading sign).
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

/// Residue modulo a fixed prime P < 2^63.
template <std::uint64_t P>
class ModP {
  static_assert(P > 2 && P < (std::uint64_t{1} << 63));

 public:
  static constexpr std::uint64_t modulus = P;

  ModP() = default;
  ModP(long value) : v_(reduce_signed(value)) {}  // NOLINT(google-explicit-constructor)
  ModP(int value) : v_(reduce_signed(value)) {}   // NOLINT

  static ModP from_raw(std::uint64_t raw) {
    ModP r;
    r.v_ = raw % P;
    return r;
  }
  static ModP from_rational(const Rational& q) {
    const ModP num = from_mpz(q.numerator());
    const ModP den = from_mpz(q.denominator());
    if (den.is_zero()) throw std::domain_error("denominator vanishes modulo the prime");
    return num / den;
  }

  std::uint64_t value() const { return v_; }

  ModP& operator+=(ModP o) {
    v_ += o.v_;
    if (v_ >= P) v_ -= P;
    return *this;
  }
  ModP& operator-=(ModP o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_;
    return *this;
  }
  ModP& operator*=(ModP o) {
    if constexpr (P < (std::uint64_t{1} << 32)) {
      v_ = (v_ * o.v_) % P;
    } else {
      v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % P);
    }
    return *this;
  }
  ModP& operator/=(ModP o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, ModP b) { return a += b; }
  friend ModP operator-(ModP a, ModP b) { return a -= b; }
  friend ModP operator*(ModP a, ModP b) { return a *= b; }
  friend ModP operator/(ModP a, ModP b) { return a /= b; }
  ModP operator-() const { return ModP() -= *this; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  bool is_zero() const { return v_ == 0; }

  ModP pow(std::uint64_t e) const {
    ModP base = *this, acc = ModP(1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero residue");
    return pow(P - 2);
  }

  /// Symmetric representative in (-P/2, P/2].
  long signed_value() const {
    return v_ > P / 2 ? -static_cast<long>(P - v_) : static_cast<long>(v_);
  }
  std::string str() const { return std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, ModP r) { return os << r.v_; }

 private:
  static std::uint64_t reduce_signed(long value) {
    const long m = static_cast<long>(P);
    long r = value % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
  }
  static ModP from_mpz(const mpz_class& z) {
    mpz_class r;
    mpz_class m;
    const std::uint64_t modulus_value = P;
    mpz_import(m.get_mpz_t(), 1, 1, sizeof(modulus_value), 0, 0, &modulus_value);
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    std::uint64_t out = 0;
    size_t count = 0;
    mpz_export(&out, &count, 1, sizeof(out), 0, 0, r.get_mpz_t());
    return from_raw(count ? out : 0);
  }

  std::uint64_t v_ = 0;
};

/// Primes used for randomized rank computations. Both fit in 31 bits so
/// products stay in 64-bit arithmetic.
inline constexpr std::uint64_t kPrimeA = 2147483647ULL;  // 2^31 - 1
inline constexpr std::uint64_t kPrimeB = 2147483629ULL;
/// 61-bit Mersenne prime, used where coefficients are lifted back to Q.
inline constexpr std::uint64_t kPrimeWide = 2305843009213693951ULL;

using FieldA = ModP<kPrimeA>;
using FieldB = ModP<kPrimeB>;
using FieldWide = ModP<kPrimeWide>;

/// Truncated first-order jet a + b*eps with eps^2 = 0.
template <class S>
class Dual {
 public:
  Dual() = default;
  Dual(long v) : re_(v), eps_(0L) {}  // NOLINT(google-explicit-constructor)
  Dual(int v) : re_(static_cast<long>(v)), eps_(0L) {}  // NOLINT
  Dual(S re, S eps) : re_(std::move(re)), eps_(std::move(eps)) {}
  static Dual constant(S re) { return Dual(std::move(re), S(0L)); }

  const S& re() const { return re_; }
  const S& eps() const { return eps_; }

  Dual& operator+=(const Dual& o) {
    re_ += o.re_;
    eps_ += o.eps_;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    re_ -= o.re_;
    eps_ -= o.eps_;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    eps_ = re_ * o.eps_ + eps_ * o.re_;
    re_ *= o.re_;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    // (a + b e)/(c + d e) = a/c + (b c - a d)/c^2 e
    const S c2 = o.re_ * o.re_;
    eps_ = (eps_ * o.re_ - re_ * o.eps_) / c2;
    re_ /= o.re_;
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  Dual operator-() const { return Dual(-re_, -eps_); }
  friend bool operator==(const Dual& a, const Dual& b) { return a.re_ == b.re_ && a.eps_ == b.eps_; }

  bool is_zero() const { return scalar_is_zero(re_) && scalar_is_zero(eps_); }

 private:
  template <class T>
  static bool scalar_is_zero(const T& t) {
    if constexpr (std::is_floating_point_v<T>) {
      return t == 0;
    } else {
      return t.is_zero();
    }
  }
  S re_{};
  S eps_{};
};

// ---------------------------------------------------------------------------
// Generic scalar helpers. Every field type used by tensors goes through these
// so that double, Rational, ModP and Dual share one code path.

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static std::string str(const Rational& v) { return v.str(); }
  static const char* name() { return "rational"; }
};

template <std::uint64_t P>
struct ScalarTraits<ModP<P>> {
  static constexpr bool exact = true;
  static ModP<P> from_rational(const Rational& q) { return ModP<P>::from_rational(q); }
  static bool is_zero(const ModP<P>& v) { return v.is_zero(); }
  static std::string str(const ModP<P>& v) { return v.str(); }
  static const char* name() { return "prime"; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational& q) { return q.to_double(); }
  static bool is_zero(double v) { return v == 0.0; }
  static std::string str(double v) { return std::to_string(v); }
  static const char* name() { return "float"; }
};

template <class S>
struct ScalarTraits<Dual<S>> {
  static constexpr bool exact = ScalarTraits<S>::exact;
  static Dual<S> from_rational(const Rational& q) {
    return Dual<S>::constant(ScalarTraits<S>::from_rational(q));
  }
  static bool is_zero(const Dual<S>& v) { return v.is_zero(); }
  static std::string str(const Dual<S>& v) {
    return ScalarTraits<S>::str(v.re()) + "+" + ScalarTraits<S>::str(v.eps()) + "e";
  }
  static const char* name() { return "dual"; }
};

template <class S>
concept Field = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  S(0L);
  ScalarTraits<S>::is_zero(a);
};

template <class S>
S from_rational(const Rational& q) {
  return ScalarTraits<S>::from_rational(q);
}

template <class S>
bool is_zero(const S& v) {
  return ScalarTraits<S>::is_zero(v);
}

template <class S>
std::string to_string(const S& v) {
  return ScalarTraits<S>::str(v);
}

}  // namespace fedo
