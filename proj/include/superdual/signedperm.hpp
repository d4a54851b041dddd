#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace superdual {

/// Weyl-group family of a signed-permutation group: BC covers the (equal)
/// Weyl groups of types B and C; D is the index-2 subgroup with an even
/// number of sign changes.
enum class CoxeterType { BC, D };

std::string to_string(CoxeterType t);                       // "B" / "D"
CoxeterType coxeter_type_from_string(std::string_view s);   // accepts B, C, D

/// A signed permutation in window notation: window[i-1] = w(i), where the
/// absolute values form a permutation of 1..rank. Generator 1..rank-1 is
/// the adjacent transposition of positions i, i+1; generator 0 negates
/// position 1 (type BC) or swaps-and-negates positions 1, 2 (type D).
class SignedPerm {
 public:
  SignedPerm(CoxeterType type, std::vector<int> window);
  static SignedPerm identity(CoxeterType type, int rank);

  CoxeterType type() const { return type_; }
  int rank() const { return static_cast<int>(window_.size()); }
  const std::vector<int>& window() const { return window_; }
  bool is_identity() const;

  /// w(i) for i in -rank..-1, 1..rank, with w(-i) = -w(i).
  int operator()(int i) const;

  /// Coxeter length: inversions + sign-change contributions.
  long long length() const;

  SignedPerm inverse() const;
  /// Composition: (a * b)(i) = a(b(i)).
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b);

  /// w * s_i and s_i * w for generator index 0..rank-1.
  SignedPerm right_gen(int i) const;
  SignedPerm left_gen(int i) const;
  bool right_descent(int i) const;  ///< length(w * s_i) < length(w)
  bool left_descent(int i) const;   ///< length(s_i * w) < length(w)
  std::vector<int> right_descents() const;

  /// Lexicographically smallest reduced word, as generator indices with
  /// w = s[0] * s[1] * ... * s[k-1].
  std::vector<int> reduced_word() const;

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.type_ == b.type_ && a.window_ == b.window_;
  }
  friend bool operator!=(const SignedPerm& a, const SignedPerm& b) { return !(a == b); }
  /// Order by (rank, window), for use as map keys within one group.
  friend bool operator<(const SignedPerm& a, const SignedPerm& b);

  std::string str() const;  // e.g. "[2,-1,3]"

 private:
  CoxeterType type_;
  std::vector<int> window_;
};

/// Bruhat order via the lifting property; x and w must live in the same
/// group (same type and rank) or std::invalid_argument is thrown.
bool bruhat_leq(const SignedPerm& x, const SignedPerm& w);

/// |W| for the given type and rank.
long long coxeter_group_order(CoxeterType type, int rank);

/// Every element of the standard parabolic subgroup W_J, enumerated by
/// breadth-first closure (J = all generators gives the whole group). Only
/// sensible for small ranks.
std::vector<SignedPerm> parabolic_subgroup_elements(CoxeterType type, int rank,
                                                    const std::set<int>& J);

/// Longest element of W_J.
SignedPerm longest_element(CoxeterType type, int rank, const std::set<int>& J);

/// Minimal-length representative of the left coset W_J w, and the test for
/// already being one (no left descent inside J).
SignedPerm min_coset_rep_left(const SignedPerm& w, const std::set<int>& J);
bool is_min_coset_rep_left(const SignedPerm& w, const std::set<int>& J);

}  // namespace superdual
