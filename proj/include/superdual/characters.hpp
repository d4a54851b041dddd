#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superdual/kl.hpp"
#include "superdual/partition.hpp"
#include "superdual/rootdata.hpp"
#include "superdual/weight.hpp"

namespace superdual {

namespace detail {
struct CharacterBuilder;
}

/// Depth tag for characters whose term list is complete: nothing was cut off,
/// so the character may be used at any truncation level.
inline constexpr long long kExactDepth = 1LL << 62;

/// A formal character truncated by principal depth. Terms are multiplicities
/// of weights e^w lying in the cone below a distinguished apex weight:
/// every stored w satisfies apex - w in Z>=0 . (simple roots). The depth
/// records how far below the apex the term list is complete; terms deeper
/// than that are neither stored nor claimed. Arithmetic re-truncates to the
/// weakest completeness guarantee among its operands.
class FormalCharacter {
 public:
  /// An empty character over the given datum (no terms yet). `depth` is the
  /// completeness budget measured from the apex by principal grading.
  FormalCharacter(RootSystemSpec spec, Weight apex, long long depth);

  const RootSystemSpec& spec() const { return spec_; }
  const Weight& apex() const { return apex_; }
  long long depth() const { return depth_; }
  /// Weight -> multiplicity, zero entries erased.
  const std::map<Weight, long long>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  long long multiplicity(const Weight& w) const;

  /// Adds mult * e^w. Throws std::invalid_argument when w is outside the
  /// cone below the apex. Terms beyond the depth budget are dropped: they
  /// carry no information at this truncation level.
  void add_term(const Weight& w, long long mult);

  /// Principal depth of a stored or prospective term below the apex;
  /// nullopt when w is outside the cone.
  std::optional<long long> term_depth(const Weight& w) const;

  /// Sum: both operands must live over the same datum and one apex must
  /// dominate the other (their difference a nonnegative root combination);
  /// the result is complete to the weakest guarantee of the two.
  friend FormalCharacter operator+(const FormalCharacter& a, const FormalCharacter& b);
  friend FormalCharacter operator-(const FormalCharacter& a, const FormalCharacter& b);
  /// Product in the character ring; apexes add, depth is the minimum.
  friend FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b);
  friend FormalCharacter operator*(long long c, const FormalCharacter& a);
  FormalCharacter operator-() const;

  friend bool operator==(const FormalCharacter& a, const FormalCharacter& b) {
    return a.spec_ == b.spec_ && a.apex_ == b.apex_ && a.depth_ == b.depth_ &&
           a.terms_ == b.terms_;
  }
  friend bool operator!=(const FormalCharacter& a, const FormalCharacter& b) { return !(a == b); }

  /// One line per term, sorted by depth then weight order.
  std::string str() const;

 private:
  RootSystemSpec spec_;
  Weight apex_;
  long long depth_ = 0;
  std::map<Weight, long long> terms_;

  friend struct detail::CharacterBuilder;
};

/// Re-truncates to a smaller completeness budget, dropping deeper terms.
/// new_depth must not exceed the character's depth: completeness cannot be
/// invented after the fact.
FormalCharacter truncate_depth(const FormalCharacter& ch, long long new_depth);

// ---------------------------------------------------------------------------
// Symmetric functions as formal characters.
//
// The variables are epsilon-basis exponentials x_r = e^{eps_r} named by
// doubled index (idx::parse order). Any strictly increasing list of positive
// doubled indices is accepted; the result lives over the smallest head-free
// datum containing the named variables (Even tail for integer indices only,
// Super for half-integer only, Full when mixed). A result with no terms
// (e.g. fewer variables than rows) uses the zero weight as its apex.
// ---------------------------------------------------------------------------

/// Schur polynomial s_lambda in the named variables. Dispatches to the
/// tableau enumeration for |lambda| <= 12 and to the determinant formula
/// above; the two entry points below stay public so they can be crossed.
FormalCharacter schur(const Partition& lambda, const std::vector<int>& vars);
/// Semistandard-tableau enumeration (any size).
FormalCharacter schur_by_tableaux(const Partition& lambda, const std::vector<int>& vars);
/// Determinant of complete homogeneous symmetric polynomials.
FormalCharacter schur_by_determinant(const Partition& lambda, const std::vector<int>& vars);

/// Skew Schur polynomial s_{lambda/nu}. Requires nu contained in lambda.
FormalCharacter skew_schur(const Partition& lambda, const Partition& nu,
                           const std::vector<int>& vars);
FormalCharacter skew_schur_by_tableaux(const Partition& lambda, const Partition& nu,
                                       const std::vector<int>& vars);
FormalCharacter skew_schur_by_determinant(const Partition& lambda, const Partition& nu,
                                          const std::vector<int>& vars);

/// Hook Schur (super-symmetric Schur) polynomial
///   hs_lambda = sum over mu inside lambda of
///               s_mu(odd variables) * s_{lambda'/mu'}(even variables),
/// in the first odd_count half-integer variables (x_{1/2}, x_{3/2}, ...)
/// and the first even_count integer variables (x_1, x_2, ...). Nonzero
/// exactly when lambda fits the (odd_count, even_count) hook.
FormalCharacter hook_schur(const Partition& lambda, int odd_count, int even_count);

// ---------------------------------------------------------------------------
// Module characters.
// ---------------------------------------------------------------------------

/// Character of the finite-dimensional simple module of the Levi subalgebra
/// with highest weight t: the head factor is the Weyl-type alternating sum
/// over the Y0-generated subsystem, the tail factor the Schur (Even tail),
/// conjugate Schur (Super), or hook Schur (Full) polynomial of lambda+.
/// Exact (depth kExactDepth). Throws DomainError when t fails dominant
/// integrality against Y0.
FormalCharacter levi_character(const RootSystemSpec& spec, const DominantTuple& t);

/// Character of the parabolic Verma module with highest weight t, truncated
/// at the given depth: Levi character times the opposite-nilradical kernel
/// prod over even gamma of (1 - e^gamma)^{-1} * prod over odd gamma of (1 + e^gamma).
FormalCharacter verma_character(const RootSystemSpec& spec, const DominantTuple& t,
                                long long depth);

/// Verma character of a raw Levi-dominant weight over an Even-tail datum:
/// the tail coordinates must be weakly decreasing integers (they need not
/// form a partition — any common shift is absorbed into the apex). Used for
/// the deeper members of a linkage class, whose tails dip below zero.
FormalCharacter verma_character_of_weight(const RootSystemSpec& spec, const Weight& mu,
                                          long long depth);

/// Character of the irreducible quotient with highest weight t, truncated at
/// the given depth, as an alternating sum of parabolic Verma characters with
/// Kazhdan-Lusztig coefficients. Even-tail data are resolved in their own
/// rank; Super/Full-tail data are transported to an Even-tail companion of
/// sufficiently large rank, resolved there, and the coefficients pulled back
/// term by term. A weight alone in its linkage class within the requested
/// depth yields its Verma character; otherwise singular or non-integral
/// blocks raise SingularBlockError / DomainError. An optional shared KL
/// context reuses cached polynomials across calls; jobs > 1 evaluates the
/// per-weight Verma expansions concurrently (the result is identical).
FormalCharacter irreducible_character(const RootSystemSpec& spec, const DominantTuple& t,
                                      long long depth, KLContext* shared_context = nullptr,
                                      int jobs = 1);

/// Irreducible character of a raw Levi-dominant weight over an Even-tail
/// datum, resolved through its own linkage class. Accepts weights whose tail
/// coordinates are weakly decreasing integers of either sign; this is the
/// assembly that the tuple-based entry point reduces to.
FormalCharacter irreducible_character_of_weight(const RootSystemSpec& spec, const Weight& lambda,
                                                long long depth,
                                                KLContext* shared_context = nullptr,
                                                int jobs = 1);

/// Keeps the terms of a Full-tail character whose tail support lies entirely
/// on integer indices, re-tagged over the Even-tail companion datum. The new
/// apex is the unique surviving term dominating all others; the depth budget
/// shrinks by the apex offset and the worst-case grading stretch of the
/// re-tagging. Requires a Full-tail spec.
FormalCharacter project_T(const FormalCharacter& ch);
/// Same with half-integer tail support and the Super-tail companion.
FormalCharacter project_Tbar(const FormalCharacter& ch);

/// Keeps the terms supported on tail positions <= target_n (head and level
/// untouched), re-tagged over the rank-target_n datum. An apex supported
/// above target_n truncates the whole character to zero. Requires
/// 1 <= target_n <= spec.n().
FormalCharacter truncate_character(const FormalCharacter& ch, int target_n);

/// Independent finite-dimensional oracle: the full Weyl-group alternating
/// sum ch L(lambda) = sum over w of (-1)^{l(w)} e^{w(lambda+rho)-rho} over
/// the Kostant kernel of all positive roots, truncated at the given depth.
/// Requires an Even-tail datum and a dominant integral lambda (DomainError
/// otherwise). Exponential in the rank; intended for small cross-checks.
FormalCharacter weyl_character_formula(const RootSystemSpec& spec, const Weight& lambda,
                                       long long depth);

namespace detail {
/// Internal assembly bypass for bulk construction from pre-validated cone
/// offsets. Library use only.
struct CharacterBuilder {
  static FormalCharacter build(RootSystemSpec spec, Weight apex, long long depth,
                               std::map<Weight, long long> terms);
};
}  // namespace detail

}  // namespace superdual
