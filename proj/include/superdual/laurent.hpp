#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace superdual {

/// Integer-coefficient Laurent polynomial in a single variable q.
/// Stored sparsely as exponent -> coefficient with zero coefficients erased.
/// Coefficient arithmetic is overflow-checked.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  /// The constant polynomial c.
  explicit LaurentPoly(long long c) {
    if (c != 0) c_[0] = c;
  }
  /// The monomial c * q^k.
  static LaurentPoly monomial(long long c, int k) {
    LaurentPoly p;
    if (c != 0) p.c_[k] = c;
    return p;
  }
  static LaurentPoly q(int k = 1) { return monomial(1, k); }

  bool is_zero() const { return c_.empty(); }
  long long coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? 0 : it->second;
  }
  const std::map<int, long long>& coeffs() const { return c_; }

  /// Smallest/largest exponent with nonzero coefficient; throws on zero.
  int min_degree() const {
    require_nonzero();
    return c_.begin()->first;
  }
  int max_degree() const {
    require_nonzero();
    return c_.rbegin()->first;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [k, c] : b.c_) r.add_term(k, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [k, c] : b.c_) r.add_term(k, checked_neg(c));
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [k, c] : c_) r.c_[k] = checked_neg(c);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ka, ca] : a.c_)
      for (const auto& [kb, cb] : b.c_) r.add_term(ka + kb, checked_mul(ca, cb));
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ < b.c_; }

  /// Multiply by q^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[e + k] = c;
    return r;
  }

  /// The bar involution q -> q^{-1}.
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[-e] = c;
    return r;
  }

  /// Drop every term of degree > d (used for degree-bounded solves).
  LaurentPoly truncated_above(int d) const {
    LaurentPoly r;
    for (const auto& [e, c] : c_)
      if (e <= d) r.c_[e] = c;
    return r;
  }

  /// Value at q = 1 (the sum of coefficients).
  long long eval_one() const {
    long long s = 0;
    for (const auto& [e, c] : c_) s = checked_add(s, c);
    return s;
  }

  /// Value at q = -1 (signed sum of coefficients).
  long long eval_minus_one() const {
    long long s = 0;
    for (const auto& [e, c] : c_) s = checked_add(s, (e % 2 == 0) ? c : checked_neg(c));
    return s;
  }

  /// "q^2 + 2q + 1", "q^-1 - 1", "0".
  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      auto [e, c] = *it;
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      unsigned long long mag = c < 0 ? 0ULL - static_cast<unsigned long long>(c)
                                     : static_cast<unsigned long long>(c);
      bool show_coeff = (mag != 1) || (e == 0);
      if (show_coeff) s += std::to_string(mag);
      if (e != 0) {
        s += 'q';
        if (e != 1) s += '^' + std::to_string(e);
      }
    }
    return s;
  }

 private:
  void require_nonzero() const {
    if (c_.empty()) throw std::domain_error("degree of the zero polynomial");
  }
  void add_term(int k, long long c) {
    if (c == 0) return;
    auto [it, inserted] = c_.emplace(k, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) c_.erase(it);
    }
  }
  static long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
      throw std::overflow_error("polynomial coefficient overflowed 64 bits");
    return r;
  }
  static long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
      throw std::overflow_error("polynomial coefficient overflowed 64 bits");
    return r;
  }
  static long long checked_neg(long long a) {
    if (a == std::numeric_limits<long long>::min())
      throw std::overflow_error("polynomial coefficient overflowed 64 bits");
    return -a;
  }

  std::map<int, long long> c_;
};

inline std::string to_string(const LaurentPoly& p) { return p.str(); }

}  // namespace superdual
