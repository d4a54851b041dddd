#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "superdual/partition.hpp"
#include "superdual/rational.hpp"
#include "superdual/weight.hpp"

namespace superdual {

/// Head family of the root datum: the finite classical part carried on the
/// negative indices. HeadType::BBullet is the B-shaped head whose short
/// roots are odd and non-isotropic.
enum class HeadType { B, BBullet, C, D };

/// Tail flavor: Even carries positive integer indices only, Super carries
/// positive half-integer indices only, Full carries both.
enum class TailType { Even, Super, Full };

std::string to_string(HeadType h);
std::string to_string(TailType t);
HeadType head_from_string(std::string_view s);  // "b", "b_bullet", "c", "d"
TailType tail_from_string(std::string_view s);  // "even", "super", "full"

/// A finite-rank root datum: head family + head rank m, tail flavor + tail
/// rank n, and a Levi choice. The index set, simple roots, positive roots,
/// Levi roots, and opposite-nilradical roots are derived eagerly at
/// construction and the object is immutable afterwards.
///
/// Positive roots are generated from the closed-form inventory
///   { +-eps_r - eps_s : r < s }  u  { -2 eps_t : t on the long-root side }
///   u  { -eps_r : all r }        (the last only for heads B and BBullet),
/// where the long-root side is the integer indices for heads BBullet/C and
/// the half-integer indices for heads B/D. Simple roots are the
/// indecomposable positives, listed in a canonical order (ascending maximal
/// support index, then ascending coefficient sum), which reproduces the
/// degenerate m = 0 diagrams without special cases.
///
/// The Levi subset Y is Y0 (a choice of head simple roots, named
/// "alpha_-m".."alpha_-2" for the chain roots eps_j - eps_{j+1} and
/// "alpha_-1" for the non-chain head root) together with every simple root
/// of the form eps_r - eps_s with 0 < r < s.
class RootSystemSpec {
 public:
  RootSystemSpec(HeadType head, int m, TailType tail, int n,
                 std::vector<std::string> levi_head = {});

  HeadType head() const { return head_; }
  int m() const { return m_; }
  TailType tail() const { return tail_; }
  int n() const { return n_; }
  /// Y0 with names canonicalized, sorted by chain position.
  const std::vector<std::string>& levi_head_names() const { return levi_head_; }

  /// All doubled indices of the rank-(m, n) index set, ascending.
  const std::vector<int>& indices() const { return indices_; }
  /// Simple roots in canonical order.
  const std::vector<Weight>& simple_roots() const { return simples_; }
  /// The subset of simple roots supported entirely on negative indices.
  const std::vector<Weight>& head_simple_roots() const { return head_simples_; }
  /// All positive roots in canonical order.
  const std::vector<Weight>& positive_roots() const { return positives_; }
  /// The Levi subset Y of the simple roots.
  const std::vector<Weight>& levi_simple_roots() const { return levi_simples_; }
  /// Positive roots lying in the span of Y.
  const std::vector<Weight>& levi_positive_roots() const { return levi_positives_; }
  /// Roots of the opposite nilradical: negatives of the non-Levi positives.
  const std::vector<Weight>& opposite_nilradical_roots() const { return u_minus_; }

  /// Parity (0 even, 1 odd) of a root of this system.
  int root_parity(const Weight& root) const;
  /// True when (root|root) = 0.
  static bool is_isotropic(const Weight& root);
  bool is_positive_root(const Weight& w) const;

  /// Exact expansion of v over the simple-root basis. Returns nullopt when v
  /// is outside their span.
  std::optional<std::vector<Rational>> simple_coordinates(const Weight& v) const;
  /// Sum of the simple-root coordinates of v when they are all nonnegative
  /// integers; nullopt otherwise. This is the principal grading used for
  /// character-depth bookkeeping.
  std::optional<long long> principal_depth(const Weight& v) const;

  std::string str() const;

 private:
  void build_indices();
  void build_roots();
  void build_levi();
  void build_solver();

  HeadType head_;
  int m_;
  TailType tail_;
  int n_;
  std::vector<std::string> levi_head_;

  std::vector<int> indices_;
  std::map<int, std::size_t> row_of_index_;
  std::vector<Weight> simples_;
  std::vector<Weight> head_simples_;
  std::vector<Weight> positives_;
  std::vector<Weight> levi_simples_;
  std::vector<Weight> levi_positives_;
  std::vector<Weight> u_minus_;

  // Precomputed row reduction for simple_coordinates: elim_ is an
  // invertible matrix with elim_ * M in reduced row-echelon form, where M's
  // columns are the simple roots written over indices_.
  std::vector<std::vector<Rational>> elim_;
  std::vector<int> pivot_col_of_row_;  // -1 for zero rows of the RREF
};

/// Two specs are equal when they name the same datum: head, ranks, tail
/// flavor, and Levi choice (derived data is determined by these).
inline bool operator==(const RootSystemSpec& a, const RootSystemSpec& b) {
  return a.head() == b.head() && a.m() == b.m() && a.tail() == b.tail() && a.n() == b.n() &&
         a.levi_head_names() == b.levi_head_names();
}
inline bool operator!=(const RootSystemSpec& a, const RootSystemSpec& b) { return !(a == b); }

/// The same datum with a different tail flavor (head, ranks, and Y0 kept).
RootSystemSpec with_tail(const RootSystemSpec& spec, TailType tail);

/// A dominant tuple (lambda_{-m}, ..., lambda_{-1}; lambda_plus) at level d.
/// The dominant condition <sum lambda_i eps_i, h_alpha> in Z_+ is required
/// for every alpha in Y0.
struct DominantTuple {
  std::vector<Rational> head_coeffs;
  Partition lam_plus;
  Rational level;
};

/// lambda = sum lambda_i eps_i + sum_j lambda+_j eps_j + d L0 on an
/// Even-tail spec; requires len(lambda+) <= n.
Weight make_weight_g(const RootSystemSpec& spec, const DominantTuple& t);
/// lambda-natural: the conjugate of lambda+ spread over half-integer
/// indices, on a Super-tail spec; requires lambda+_1 <= n.
Weight make_weight_gbar(const RootSystemSpec& spec, const DominantTuple& t);
/// lambda-theta: the modified Frobenius coordinates of lambda+ over all of
/// the Full tail, on a Full-tail spec.
Weight make_weight_gtilde(const RootSystemSpec& spec, const DominantTuple& t);

}  // namespace superdual
