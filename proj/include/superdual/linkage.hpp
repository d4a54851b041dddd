#pragma once

#include <set>
#include <vector>

#include "superdual/kl.hpp"
#include "superdual/rational.hpp"
#include "superdual/rootdata.hpp"
#include "superdual/signedperm.hpp"

namespace superdual {

/// One weight of a linkage class: the dominant tuple itself, the principal
/// depth of lambda - mu, and the minimal-length left-coset representative u
/// with u(dominant orbit point) = mu + rho in standard coordinates.
struct LinkedWeight {
  DominantTuple tuple;
  long long depth = 0;
  SignedPerm rep;
};

/// The block of a dominant tuple on an even-tail datum, truncated at a
/// principal depth: every dominant mu with mu + rho in W(lambda + rho) and
/// lambda - mu a nonnegative simple-root combination of total size <= depth.
struct LinkageResult {
  CoxeterType group_type = CoxeterType::BC;
  int rank = 0;                    ///< m + n coordinates
  std::set<int> levi_generators;   ///< parabolic subset J of the generators
  std::vector<Rational> rho;       ///< stable Weyl vector, ascending positions
  std::vector<LinkedWeight> weights;  ///< sorted by depth; weights[0] is lambda
};

/// The stable Weyl vector of the datum in ascending-position coordinates:
/// position i carries -(i - 1/2) for heads b and b_bullet, -i for head c,
/// and -(i - 1) for head d. This is the half-sum of the positive roots
/// (even minus odd half-sums for the b_bullet head).
std::vector<Rational> stable_rho(const RootSystemSpec& spec);

/// Generator indices of the signed-permutation group cut out by the Levi
/// subset Y: chain simples map to the adjacent transposition at their
/// ascending position, the non-chain head root to generator 0.
std::set<int> levi_generator_set(const RootSystemSpec& spec);

/// Enumerate the depth-truncated block of lambda. Requires an even tail and
/// an integral, regular lambda: mixed or fractional coordinate classes throw
/// DomainError, vanishing or colliding |lambda + rho| coordinates throw
/// SingularBlockError.
LinkageResult linkage(const RootSystemSpec& spec, const DominantTuple& lambda,
                      long long depth);

/// One weight of a generalized block, carried as a full weight (epsilon
/// coordinates plus the level, which is constant across the block).
struct ClassicalLinkedWeight {
  Weight mu;
  long long depth = 0;
  SignedPerm rep;
};

/// The block of an arbitrary Levi-dominant weight on an even-tail datum.
/// Unlike LinkageResult this does not require the tail to be a partition:
/// finite-dimensional weights in this convention have weakly decreasing,
/// possibly negative integer tails, and their blocks genuinely contain such
/// members. For a partition-tailed input the two enumerations agree (within
/// the cone below lambda, the suffix-sum feasibility bound already forces
/// the tail to stay a partition).
struct ClassicalBlock {
  CoxeterType group_type = CoxeterType::BC;
  int rank = 0;
  std::set<int> levi_generators;
  std::vector<Rational> rho;  ///< stable Weyl vector, ascending positions
  std::vector<ClassicalLinkedWeight> weights;  ///< sorted by depth; [0] is lambda
};

/// Enumerate the depth-truncated block of a raw weight: every Levi-dominant
/// mu with mu + rho in W(lambda + rho) and lambda - mu a nonnegative
/// simple-root combination of total size <= depth. Same error contract as
/// linkage(); lambda itself must be Levi-dominant.
ClassicalBlock classical_block(const RootSystemSpec& spec, const Weight& lambda,
                               long long depth);

/// One enumerated weight of a possibly singular block. No Coxeter data is
/// attached: a repeated or vanishing |lambda + rho| coordinate leaves the
/// orbit without canonical minimal representatives.
struct BlockMember {
  Weight mu;
  long long depth = 0;
};

/// The cone-and-orbit members below lambda within the given principal
/// depth, tolerating singular lambda + rho. For a regular weight this lists
/// exactly the weights of classical_block. Members are sorted by depth with
/// lambda itself first. Its purpose is to recognize blocks that are
/// singletons within reach, where the irreducible character equals the
/// standard one and needs no Kazhdan-Lusztig input.
std::vector<BlockMember> block_members(const RootSystemSpec& spec, const Weight& lambda,
                                       long long depth);

/// Decomposition data of a depth-truncated block, rows and columns indexed
/// like block.weights.
///
///   multiplicities[v][u] = [ standard(mu_u) : simple(mu_v) ]
///                        = n_{rep_u, rep_v}(1),
///
/// the evaluation of the antispherical parabolic Kazhdan-Lusztig polynomial
/// for the block's Levi generators. Its exact integer inverse a satisfies
///
///   ch L(mu_u) = sum_v a[v][u] ch M(mu_v).
///
/// Both matrices are unitriangular: nonzero entries off the diagonal have
/// the row weight strictly deeper than the column weight, so the truncated
/// block is closed under the sums above. For the defining weight of a
/// trivial-type block (column 0), a reproduces the alternating-sign
/// resolution a[v][0] = (-1)^{len(rep_v)}.
struct TransitionMatrix {
  LinkageResult block;
  std::vector<std::vector<long long>> multiplicities;
  std::vector<std::vector<long long>> a;
};

/// Computes the block and its transition matrix. An optional shared KL
/// context must match the block's type and rank; by default a fresh one is
/// created per call.
TransitionMatrix transition_matrix(const RootSystemSpec& spec, const DominantTuple& lambda,
                                   long long depth, KLContext* shared_context = nullptr);

/// Multiplicity matrix and its exact inverse for an already enumerated list
/// of block members (minimal coset representatives with their depths, sorted
/// by depth, as produced by linkage or classical_block). Shared assembly
/// behind transition_matrix and classical_transition.
void decomposition_matrices(KLContext& context, const std::set<int>& levi_generators,
                            const std::vector<SignedPerm>& reps,
                            const std::vector<long long>& depths,
                            std::vector<std::vector<long long>>* multiplicities,
                            std::vector<std::vector<long long>>* a);

/// Generalized-block analogue of TransitionMatrix; same matrix semantics.
struct ClassicalTransition {
  ClassicalBlock block;
  std::vector<std::vector<long long>> multiplicities;
  std::vector<std::vector<long long>> a;
};

ClassicalTransition classical_transition(const RootSystemSpec& spec, const Weight& lambda,
                                         long long depth, KLContext* shared_context = nullptr);

bool operator==(const DominantTuple& a, const DominantTuple& b);
inline bool operator!=(const DominantTuple& a, const DominantTuple& b) { return !(a == b); }

}  // namespace superdual
