#pragma once

#include <set>
#include <vector>

#include "superdual/rootdata.hpp"
#include "superdual/weight.hpp"

namespace superdual {

/// A choice of positive system for a fixed root datum, reachable from the
/// standard one by reflections. Values are immutable: every reflection
/// returns a fresh state, so sharing across threads is safe.
///
/// Invariant: positive_roots() always contains exactly one of {gamma,
/// -gamma} for every root gamma of the datum, and simple_roots() is the set
/// of indecomposable elements of positive_roots(), carried in a stable
/// order (a reflection rewrites roots in place in the list).
class BorelState {
 public:
  /// The standard Borel of the datum.
  explicit BorelState(const RootSystemSpec& spec);

  const std::vector<Weight>& simple_roots() const { return simples_; }
  /// Parity flags (0 even, 1 odd) aligned with simple_roots().
  const std::vector<int>& parities() const { return parities_; }
  const std::set<Weight>& positive_roots() const { return positives_; }
  /// Roots reflected at so far, in application order.
  const std::vector<Weight>& history() const { return history_; }

  bool is_simple(const Weight& alpha) const;
  bool is_positive(const Weight& w) const { return positives_.count(w) > 0; }

  /// Reflection at an isotropic odd simple root alpha: the positive system
  /// flips alpha only, and the simple roots become
  ///   { beta : <beta, h_alpha> = 0, beta != alpha }
  ///   u { beta + alpha : <beta, h_alpha> != 0 } u { -alpha }.
  /// Throws std::invalid_argument when alpha is not simple, not odd, or not
  /// isotropic.
  BorelState odd_reflect(const Weight& alpha) const;

  /// Reflection at an even (hence non-isotropic) simple root alpha: every
  /// simple root beta moves to beta - <beta, h_alpha> alpha, and the
  /// positive system again flips alpha only. Throws std::invalid_argument
  /// when alpha is not simple or not even.
  BorelState real_reflect(const Weight& alpha) const;

 private:
  BorelState() = default;

  std::vector<Weight> simples_;
  std::vector<int> parities_;
  std::set<Weight> positives_;
  std::vector<Weight> history_;
};

/// Reflection of a weight in the hyperplane of a non-isotropic root:
/// w - <w, h_alpha> alpha. The level coordinate is untouched.
Weight reflect_weight(const Weight& w, const Weight& alpha);

/// Highest-weight update across one odd reflection: lambda when
/// <lambda, h_alpha> = 0, and lambda - alpha otherwise.
Weight update_highest_weight(const Weight& lam, const Weight& alpha);

/// The canonical tail sequences of n(n+1)/2 odd reflections on a full
/// tail. Batch k of the first list is
///   eps_{k-1/2} - eps_k, eps_{k-3/2} - eps_k, ..., eps_{1/2} - eps_k,
/// which moves the integer tail indices to the front; it stays inside a
/// full tail of rank n. Batch k of the second list is
///   eps_k - eps_{k+1/2}, eps_{k-1} - eps_{k+1/2}, ..., eps_1 - eps_{k+1/2},
/// moving the half-integer indices to the front; it reaches index n + 1/2
/// and therefore needs a full tail of rank at least n + 1.
std::vector<Weight> btilde_c_sequence(int n);
std::vector<Weight> btilde_s_sequence(int n);

/// Folds update_highest_weight over the sequence while reflecting the Borel
/// state along, validating that each element is an isotropic odd simple
/// root at its turn; a violation throws std::invalid_argument naming the
/// 1-based step. Returns the weight after every step (first entry is the
/// input), so the result has seq.size() + 1 entries.
std::vector<Weight> apply_sequence_trace(const RootSystemSpec& spec, const Weight& lam,
                                         const std::vector<Weight>& seq);

/// Final weight of apply_sequence_trace.
Weight apply_sequence(const RootSystemSpec& spec, const Weight& lam,
                      const std::vector<Weight>& seq);

}  // namespace superdual
