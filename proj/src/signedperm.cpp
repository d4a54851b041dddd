#include "superdual/signedperm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace superdual {

std::string to_string(CoxeterType t) { return t == CoxeterType::BC ? "B" : "D"; }

CoxeterType coxeter_type_from_string(std::string_view s) {
  if (s == "B" || s == "b" || s == "C" || s == "c" || s == "BC" || s == "bc") {
    return CoxeterType::BC;
  }
  if (s == "D" || s == "d") return CoxeterType::D;
  throw std::invalid_argument("unknown Coxeter type '" + std::string(s) +
                              "' (expected B, C, or D)");
}

SignedPerm::SignedPerm(CoxeterType type, std::vector<int> window)
    : type_(type), window_(std::move(window)) {
  const int n = static_cast<int>(window_.size());
  if (n < 1) {
    throw std::invalid_argument("signed permutation rank " + std::to_string(n) +
                                " too small for type " + to_string(type_));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  int negatives = 0;
  for (int v : window_) {
    const int a = std::abs(v);
    if (a < 1 || a > n || seen[static_cast<std::size_t>(a)]) {
      throw std::invalid_argument("window is not a signed permutation of 1.." +
                                  std::to_string(n));
    }
    seen[static_cast<std::size_t>(a)] = true;
    if (v < 0) ++negatives;
  }
  if (type_ == CoxeterType::D && negatives % 2 != 0) {
    throw std::invalid_argument(
        "type D requires an even number of negative window entries");
  }
}

SignedPerm SignedPerm::identity(CoxeterType type, int rank) {
  std::vector<int> w(static_cast<std::size_t>(rank));
  std::iota(w.begin(), w.end(), 1);
  return SignedPerm(type, std::move(w));
}

bool SignedPerm::is_identity() const {
  for (int i = 0; i < rank(); ++i) {
    if (window_[static_cast<std::size_t>(i)] != i + 1) return false;
  }
  return true;
}

int SignedPerm::operator()(int i) const {
  if (i == 0 || std::abs(i) > rank()) {
    throw std::out_of_range("signed permutation argument out of range");
  }
  return i > 0 ? window_[static_cast<std::size_t>(i - 1)]
               : -window_[static_cast<std::size_t>(-i - 1)];
}

long long SignedPerm::length() const {
  const int n = rank();
  long long inv = 0, neg = 0, nsp = 0;
  for (int i = 0; i < n; ++i) {
    const int wi = window_[static_cast<std::size_t>(i)];
    if (wi < 0) ++neg;
    for (int j = i + 1; j < n; ++j) {
      const int wj = window_[static_cast<std::size_t>(j)];
      if (wi > wj) ++inv;
      if (wi + wj < 0) ++nsp;
    }
  }
  return type_ == CoxeterType::BC ? inv + neg + nsp : inv + nsp;
}

SignedPerm SignedPerm::inverse() const {
  std::vector<int> inv(window_.size(), 0);
  for (int i = 1; i <= rank(); ++i) {
    const int v = window_[static_cast<std::size_t>(i - 1)];
    inv[static_cast<std::size_t>(std::abs(v) - 1)] = v > 0 ? i : -i;
  }
  return SignedPerm(type_, std::move(inv));
}

SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
  if (a.type_ != b.type_ || a.rank() != b.rank()) {
    throw std::invalid_argument("signed permutations from different groups");
  }
  std::vector<int> w(a.window_.size());
  for (int i = 1; i <= a.rank(); ++i) {
    w[static_cast<std::size_t>(i - 1)] = a(b(i));
  }
  return SignedPerm(a.type_, std::move(w));
}

namespace {

// Generator 0 of type D acts on two window positions, so the rank-1 type-D
// group is trivial and has no generators at all.
void check_generator(CoxeterType type, int rank, int i) {
  if (i < 0 || i >= rank || (type == CoxeterType::D && i == 0 && rank < 2)) {
    throw std::out_of_range("generator index out of range");
  }
}

}  // namespace

SignedPerm SignedPerm::right_gen(int i) const {
  check_generator(type_, rank(), i);
  std::vector<int> w = window_;
  if (i >= 1) {
    std::swap(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(i)]);
  } else if (type_ == CoxeterType::BC) {
    w[0] = -w[0];
  } else {
    const int a = w[0], b = w[1];
    w[0] = -b;
    w[1] = -a;
  }
  return SignedPerm(type_, std::move(w));
}

SignedPerm SignedPerm::left_gen(int i) const {
  check_generator(type_, rank(), i);
  std::vector<int> w = window_;
  auto sign = [](int v) { return v > 0 ? 1 : -1; };
  for (int& v : w) {
    const int a = std::abs(v);
    if (i >= 1) {
      if (a == i) v = sign(v) * (i + 1);
      else if (a == i + 1) v = sign(v) * i;
    } else if (type_ == CoxeterType::BC) {
      if (a == 1) v = -v;
    } else {
      if (a == 1) v = -sign(v) * 2;
      else if (a == 2) v = -sign(v) * 1;
    }
  }
  return SignedPerm(type_, std::move(w));
}

bool SignedPerm::right_descent(int i) const {
  check_generator(type_, rank(), i);
  if (i >= 1) {
    return window_[static_cast<std::size_t>(i - 1)] > window_[static_cast<std::size_t>(i)];
  }
  if (type_ == CoxeterType::BC) return window_[0] < 0;
  return window_[0] + window_[1] < 0;
}

bool SignedPerm::left_descent(int i) const { return inverse().right_descent(i); }

std::vector<int> SignedPerm::right_descents() const {
  std::vector<int> out;
  const int first = (type_ == CoxeterType::D && rank() < 2) ? 1 : 0;
  for (int i = first; i < rank(); ++i) {
    if (right_descent(i)) out.push_back(i);
  }
  return out;
}

std::vector<int> SignedPerm::reduced_word() const {
  std::vector<int> word;
  SignedPerm w = *this;
  const int first = (type_ == CoxeterType::D && rank() < 2) ? 1 : 0;
  while (!w.is_identity()) {
    int chosen = -1;
    for (int i = first; i < w.rank(); ++i) {
      if (w.left_descent(i)) {
        chosen = i;
        break;
      }
    }
    if (chosen < 0) throw std::logic_error("non-identity element with no descent");
    word.push_back(chosen);
    w = w.left_gen(chosen);
  }
  return word;
}

bool operator<(const SignedPerm& a, const SignedPerm& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return a.window() < b.window();
}

std::string SignedPerm::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < window_.size(); ++i) {
    if (i) os << ',';
    os << window_[i];
  }
  os << ']';
  return os.str();
}

namespace {

bool bruhat_leq_memo(const SignedPerm& x, const SignedPerm& w,
                     std::map<std::pair<std::vector<int>, std::vector<int>>, bool>& memo) {
  if (x == w) return true;
  const long long lx = x.length(), lw = w.length();
  if (lx >= lw) return false;
  const auto key = std::make_pair(x.window(), w.window());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  // Lifting property at a left descent s of w: if sx < x then x <= w iff
  // sx <= sw, otherwise x <= w iff x <= sw.
  int s = -1;
  for (int i = 0; i < w.rank(); ++i) {
    if (w.left_descent(i)) {
      s = i;
      break;
    }
  }
  const SignedPerm sw = w.left_gen(s);
  const SignedPerm sx = x.left_gen(s);
  const bool result = sx.length() < lx ? bruhat_leq_memo(sx, sw, memo)
                                       : bruhat_leq_memo(x, sw, memo);
  memo.emplace(key, result);
  return result;
}

}  // namespace

bool bruhat_leq(const SignedPerm& x, const SignedPerm& w) {
  if (x.type() != w.type() || x.rank() != w.rank()) {
    throw std::invalid_argument("signed permutations from different groups");
  }
  std::map<std::pair<std::vector<int>, std::vector<int>>, bool> memo;
  return bruhat_leq_memo(x, w, memo);
}

long long coxeter_group_order(CoxeterType type, int rank) {
  long long order = 1;
  for (int i = 1; i <= rank; ++i) order *= 2LL * i;
  if (type == CoxeterType::D) order /= 2;
  return order;
}

std::vector<SignedPerm> parabolic_subgroup_elements(CoxeterType type, int rank,
                                                    const std::set<int>& J) {
  for (int j : J) {
    if (j < 0 || j >= rank) throw std::out_of_range("generator index out of range");
  }
  std::set<SignedPerm> seen;
  std::vector<SignedPerm> queue{SignedPerm::identity(type, rank)};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const SignedPerm w = queue[head];
    for (int j : J) {
      SignedPerm next = w.right_gen(j);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return queue;
}

SignedPerm longest_element(CoxeterType type, int rank, const std::set<int>& J) {
  SignedPerm w = SignedPerm::identity(type, rank);
  bool ascended = true;
  while (ascended) {
    ascended = false;
    for (int j : J) {
      if (j < 0 || j >= rank) throw std::out_of_range("generator index out of range");
      if (!w.right_descent(j)) {
        w = w.right_gen(j);
        ascended = true;
        break;
      }
    }
  }
  return w;
}

SignedPerm min_coset_rep_left(const SignedPerm& w, const std::set<int>& J) {
  SignedPerm rep = w;
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (int j : J) {
      if (j < 0 || j >= rep.rank()) throw std::out_of_range("generator index out of range");
      if (rep.left_descent(j)) {
        rep = rep.left_gen(j);
        stripped = true;
        break;
      }
    }
  }
  return rep;
}

bool is_min_coset_rep_left(const SignedPerm& w, const std::set<int>& J) {
  for (int j : J) {
    if (j < 0 || j >= w.rank()) throw std::out_of_range("generator index out of range");
    if (w.left_descent(j)) return false;
  }
  return true;
}

}  // namespace superdual
