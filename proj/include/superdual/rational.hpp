#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superdual {

namespace detail {

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long long narrow_checked(int128 x) {
  if (x > static_cast<int128>(std::numeric_limits<long long>::max()) ||
      x < static_cast<int128>(std::numeric_limits<long long>::min())) {
    throw std::overflow_error("rational arithmetic overflowed 64 bits");
  }
  return static_cast<long long>(x);
}

}  // namespace detail

/// Exact rational number with 64-bit numerator and denominator.
/// Always stored reduced with a positive denominator; every operation
/// computes through 128-bit intermediates and throws std::overflow_error
/// if a result does not fit back into 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(int n) : num_(n), den_(1) {}        // NOLINT: implicit by design
  Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    normalize(n, d);
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::narrow_checked(-detail::int128(num_));
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    detail::int128 n = detail::int128(a.num_) * b.den_ + detail::int128(b.num_) * a.den_;
    detail::int128 d = detail::int128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    detail::int128 n = detail::int128(a.num_) * b.den_ - detail::int128(b.num_) * a.den_;
    detail::int128 d = detail::int128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(detail::int128(a.num_) * b.num_, detail::int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(detail::int128(a.num_) * b.den_, detail::int128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return detail::int128(a.num_) * b.den_ < detail::int128(b.num_) * a.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Largest integer <= this value.
  long long floor() const {
    if (num_ >= 0) return num_ / den_;
    return -detail::narrow_checked((detail::int128(-num_) + den_ - 1) / den_);
  }

  /// Exact integer value; throws if not an integer.
  long long as_integer() const {
    if (den_ != 1) throw std::domain_error("rational is not an integer: " + str());
    return num_;
  }

  /// "3", "-7", "1/2", "-3/2".
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  /// Parses "a" or "a/b" with optional leading sign. Throws std::invalid_argument.
  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(parse_ll(s));
      }
      return Rational(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
    } catch (const std::domain_error&) {
      throw std::invalid_argument("cannot parse rational: \"" + std::string(s) + "\"");
    }
  }

 private:
  static Rational from128(detail::int128 n, detail::int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    detail::int128 g = detail::gcd128(n, d);
    Rational r;
    r.num_ = detail::narrow_checked(n / g);
    r.den_ = detail::narrow_checked(d / g);
    return r;
  }

  void normalize(long long n, long long d) {
    Rational r = from128(n, d);
    num_ = r.num_;
    den_ = r.den_;
  }

  static long long parse_ll(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
      if (s.size() == 1) throw std::invalid_argument("bare sign is not an integer");
    }
    detail::int128 v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("bad digit in integer literal: \"" + std::string(s) + "\"");
      v = v * 10 + (s[i] - '0');
      if (v > detail::int128(std::numeric_limits<long long>::max()) + 1)
        throw std::invalid_argument("integer literal out of range");
    }
    return detail::narrow_checked(neg ? -v : v);
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace superdual
