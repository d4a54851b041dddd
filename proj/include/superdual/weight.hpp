#pragma once

#include <map>
#include <string>
#include <string_view>

#include "superdual/rational.hpp"

namespace superdual {

/// Epsilon-basis indices are half-integers r stored as the doubled integer
/// 2r, so "index 3" means r = 3/2 and "index -2" means r = -1. The natural
/// order on doubled indices is the total order used throughout.
namespace idx {

/// True when the index r = d/2 is an integer.
inline bool is_integer(int d) { return d % 2 == 0; }
/// True when the index r = d/2 is a proper half-integer (odd numerator).
inline bool is_half(int d) { return d % 2 != 0; }
/// Parity of the basis vector epsilon_r: half-integer indices are odd.
inline int parity(int d) { return is_half(d) ? 1 : 0; }
/// Sign of (epsilon_r | epsilon_r): +1 at integer indices, -1 at half-integer ones.
inline int form_sign(int d) { return is_half(d) ? -1 : 1; }

/// "-2", "1/2", "3/2" for doubled index d.
std::string str(int d);
/// Inverse of str(); accepts "k" or "k/2" with odd k. Throws std::invalid_argument.
int parse(std::string_view s);

}  // namespace idx

/// A weight: a finitely supported rational combination of the epsilon basis
/// plus a level, the coefficient of the distinguished basic weight (written
/// L0 in strings). The bilinear form treats the level direction as isotropic
/// and orthogonal to every epsilon.
class Weight {
 public:
  Weight() = default;

  /// epsilon_r for doubled index d = 2r.
  static Weight unit(int d);
  /// c * epsilon_r.
  static Weight term(int d, const Rational& c);

  const std::map<int, Rational>& coords() const { return c_; }
  Rational coord(int d) const;
  void set_coord(int d, const Rational& v);
  const Rational& level() const { return level_; }
  void set_level(const Rational& v) { level_ = v; }

  bool is_zero() const { return c_.empty() && level_.is_zero(); }
  /// Zero level and zero epsilon part outside the given closed doubled-index
  /// range check helpers are left to callers; support bounds:
  int min_index() const;  ///< smallest doubled index with nonzero coefficient; throws if none
  int max_index() const;  ///< largest doubled index with nonzero coefficient; throws if none

  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  Weight operator-() const;
  friend Weight operator*(const Rational& s, const Weight& w);
  Weight& operator+=(const Weight& o) { return *this = *this + o; }
  Weight& operator-=(const Weight& o) { return *this = *this - o; }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.level_ == b.level_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  /// Total order (for use as a map key): lexicographic on coordinates, then level.
  friend bool operator<(const Weight& a, const Weight& b);

  /// "eps(-1) + 1/2 eps(3/2) - 2 L0", "0".
  std::string str() const;

 private:
  std::map<int, Rational> c_;  // doubled index -> coefficient, zeros erased
  Rational level_;
};

/// The symmetric bilinear form: (eps_r | eps_s) = form_sign(r) * delta_{rs};
/// the level coordinate is isotropic and pairs to zero with everything.
Rational bilinear_form(const Weight& a, const Weight& b);

/// Pairing of a weight with the coroot of a root alpha:
/// 2(w|alpha)/(alpha|alpha) when alpha is non-isotropic, (w|alpha) otherwise.
Rational coroot_pairing(const Weight& w, const Weight& alpha);

inline std::string to_string(const Weight& w) { return w.str(); }

}  // namespace superdual
