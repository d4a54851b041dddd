#include "superdual/weight.hpp"

#include <stdexcept>

namespace superdual {

namespace idx {

std::string str(int d) {
  if (is_integer(d)) return std::to_string(d / 2);
  return std::to_string(d) + "/2";
}

int parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    Rational r = Rational::parse(s);
    return static_cast<int>(r.as_integer() * 2);
  }
  if (s.substr(slash + 1) != "2")
    throw std::invalid_argument("index denominator must be 2: \"" + std::string(s) + "\"");
  Rational r = Rational::parse(s.substr(0, slash));
  long long num = r.as_integer();
  if (num % 2 == 0)
    throw std::invalid_argument("half-integer index must have odd numerator: \"" +
                                std::string(s) + "\"");
  return static_cast<int>(num);
}

}  // namespace idx

Weight Weight::unit(int d) { return term(d, Rational(1)); }

Weight Weight::term(int d, const Rational& c) {
  Weight w;
  if (!c.is_zero()) w.c_[d] = c;
  return w;
}

Rational Weight::coord(int d) const {
  auto it = c_.find(d);
  return it == c_.end() ? Rational() : it->second;
}

void Weight::set_coord(int d, const Rational& v) {
  if (v.is_zero())
    c_.erase(d);
  else
    c_[d] = v;
}

int Weight::min_index() const {
  if (c_.empty()) throw std::domain_error("support of a weight with empty epsilon part");
  return c_.begin()->first;
}

int Weight::max_index() const {
  if (c_.empty()) throw std::domain_error("support of a weight with empty epsilon part");
  return c_.rbegin()->first;
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r = a;
  for (const auto& [d, c] : b.c_) r.set_coord(d, r.coord(d) + c);
  r.level_ = a.level_ + b.level_;
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r = a;
  for (const auto& [d, c] : b.c_) r.set_coord(d, r.coord(d) - c);
  r.level_ = a.level_ - b.level_;
  return r;
}

Weight Weight::operator-() const {
  Weight r;
  for (const auto& [d, c] : c_) r.c_[d] = -c;
  r.level_ = -level_;
  return r;
}

Weight operator*(const Rational& s, const Weight& w) {
  Weight r;
  if (s.is_zero()) return r;
  for (const auto& [d, c] : w.c_) r.c_[d] = s * c;
  r.level_ = s * w.level_;
  return r;
}

bool operator<(const Weight& a, const Weight& b) {
  if (a.c_ != b.c_) return a.c_ < b.c_;
  return a.level_ < b.level_;
}

std::string Weight::str() const {
  if (is_zero()) return "0";
  std::string s;
  auto append = [&s](const Rational& c, const std::string& sym) {
    bool neg = c.sign() < 0;
    Rational mag = neg ? -c : c;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    if (!(mag == Rational(1))) s += mag.str() + " ";
    s += sym;
  };
  for (const auto& [d, c] : c_) append(c, "eps(" + idx::str(d) + ")");
  if (!level_.is_zero()) append(level_, "L0");
  return s;
}

Rational bilinear_form(const Weight& a, const Weight& b) {
  Rational s;
  const auto& ca = a.coords();
  const auto& cb = b.coords();
  auto ia = ca.begin();
  auto ib = cb.begin();
  while (ia != ca.end() && ib != cb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      Rational p = ia->second * ib->second;
      s += idx::form_sign(ia->first) > 0 ? p : -p;
      ++ia;
      ++ib;
    }
  }
  return s;
}

Rational coroot_pairing(const Weight& w, const Weight& alpha) {
  Rational aa = bilinear_form(alpha, alpha);
  Rational wa = bilinear_form(w, alpha);
  if (aa.is_zero()) return wa;
  return Rational(2) * wa / aa;
}

}  // namespace superdual
