#include "superdual/linkage.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "superdual/errors.hpp"
#include "superdual/weight.hpp"

namespace superdual {

bool operator==(const DominantTuple& a, const DominantTuple& b) {
  return a.head_coeffs == b.head_coeffs && a.lam_plus == b.lam_plus && a.level == b.level;
}

std::vector<Rational> stable_rho(const RootSystemSpec& spec) {
  const int N = spec.m() + spec.n();
  std::vector<Rational> rho;
  rho.reserve(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    switch (spec.head()) {
      case HeadType::B:
      case HeadType::BBullet:
        rho.emplace_back(1 - 2 * i, 2);  // -(i - 1/2)
        break;
      case HeadType::C:
        rho.emplace_back(-i);
        break;
      case HeadType::D:
        rho.emplace_back(1 - i);
        break;
    }
  }
  return rho;
}

std::set<int> levi_generator_set(const RootSystemSpec& spec) {
  const auto& idx = spec.indices();
  std::map<int, int> position;  // doubled index -> 1-based ascending position
  for (std::size_t k = 0; k < idx.size(); ++k) position[idx[k]] = static_cast<int>(k) + 1;

  std::set<int> J;
  for (const Weight& root : spec.levi_simple_roots()) {
    const auto& c = root.coords();
    const bool chain = c.size() == 2 && c.begin()->second == Rational(1) &&
                       std::next(c.begin())->second == Rational(-1);
    if (chain) {
      const int p = position.at(c.begin()->first);
      const int q = position.at(std::next(c.begin())->first);
      if (q != p + 1)
        throw std::logic_error("Levi chain root spans non-adjacent positions " +
                               std::to_string(p) + ", " + std::to_string(q));
      J.insert(p);
    } else {
      // The non-chain Levi root is the special simple root at position 1.
      J.insert(0);
    }
  }
  return J;
}

namespace {

/// The canonical strictly dominant point of the orbit of phi2 under the
/// block's signed-permutation group, in doubled coordinates: absolute
/// values ascending, all coordinates negated; for type D without a zero
/// coordinate the first entry flips sign when needed to match the orbit's
/// sign-change parity.
std::vector<long long> dominant_orbit_point(CoxeterType type, const std::vector<long long>& phi2) {
  std::vector<long long> c(phi2.size());
  for (std::size_t i = 0; i < phi2.size(); ++i) c[i] = std::llabs(phi2[i]);
  std::sort(c.begin(), c.end());
  long long phi_negatives = 0;
  for (long long v : phi2) {
    if (v < 0) ++phi_negatives;
  }
  const bool has_zero = !c.empty() && c.front() == 0;
  for (auto& v : c) v = -v;
  if (type == CoxeterType::D && !has_zero &&
      (phi_negatives - static_cast<long long>(c.size())) % 2 != 0) {
    c.front() = -c.front();
  }
  return c;
}

/// The unique group element sending the dominant orbit point to psi2.
SignedPerm orbit_representative(CoxeterType type, const std::vector<long long>& cplus2,
                                const std::vector<long long>& psi2) {
  const int N = static_cast<int>(psi2.size());
  std::map<long long, int> position_of_abs;  // |psi2| -> 1-based position
  for (int j = 1; j <= N; ++j) position_of_abs[std::llabs(psi2[j - 1])] = j;

  std::vector<int> window(static_cast<std::size_t>(N), 0);
  int zero_slot = -1;
  for (int i = 1; i <= N; ++i) {
    const long long target = cplus2[static_cast<std::size_t>(i - 1)];
    const int j = position_of_abs.at(std::llabs(target));
    if (target == 0) {
      window[static_cast<std::size_t>(i - 1)] = j;
      zero_slot = i - 1;
    } else {
      window[static_cast<std::size_t>(i - 1)] = psi2[static_cast<std::size_t>(j - 1)] == target ? j : -j;
    }
  }
  if (type == CoxeterType::D) {
    long long negatives = 0;
    for (int v : window) {
      if (v < 0) ++negatives;
    }
    if (negatives % 2 != 0) {
      if (zero_slot < 0)
        throw std::logic_error("orbit representative has odd sign parity without a zero coordinate");
      window[static_cast<std::size_t>(zero_slot)] = -window[static_cast<std::size_t>(zero_slot)];
    }
  }
  return SignedPerm(type, window);
}

/// One arrangement found by the enumeration core, before any Coxeter data
/// is attached.
struct EnumeratedMember {
  std::vector<long long> psi2;
  Weight mu;
  long long depth = 0;
};

struct EnumerationResult {
  CoxeterType type = CoxeterType::BC;
  int rank = 0;
  std::set<int> levi_generators;
  std::vector<Rational> rho;
  std::vector<long long> cplus2;  ///< dominant orbit point, doubled
  std::vector<EnumeratedMember> members;
};

/// Shared enumeration core behind classical_block and block_members:
/// integrality checks, then a DFS over signed arrangements psi of the
/// absolute-value multiset of phi = lambda + rho, assigning positions N
/// down to 1 and kept exact along the way:
///   T_j = sum_{k >= j} (phi_k - psi_k)  must be <= 0 for every j,
///   partial depth lb = sum_{j >= 2 assigned} (-T_j) never exceeds the cap,
///   tail positions must step down by at least 1 (partition shape).
/// In regular mode a repeated or vanishing |phi| coordinate raises
/// SingularBlockError; in tolerant mode such multisets are enumerated
/// faithfully, with coinciding arrangements visited once.
EnumerationResult enumerate_members(const RootSystemSpec& spec, const Weight& lam,
                                    long long depth, bool require_regular) {
  if (spec.tail() != TailType::Even)
    throw std::invalid_argument("linkage requires an even-tail root datum");
  if (depth < 0) throw std::invalid_argument("linkage depth must be nonnegative");
  const int m = spec.m();
  const int N = m + spec.n();
  if (N == 0) throw std::invalid_argument("linkage requires a positive-rank root datum");
  const CoxeterType type = spec.head() == HeadType::D ? CoxeterType::D : CoxeterType::BC;

  const std::vector<Rational> rho = stable_rho(spec);
  // The Levi simples that constrain the head coefficients (chain steps along
  // the tail are enforced directly by the enumeration below).
  std::vector<Weight> head_levi;
  for (const Weight& root : spec.levi_simple_roots()) {
    if (root.coords().begin()->first < 0) head_levi.push_back(root);
  }
  const auto& idx = spec.indices();

  // Doubled ascending-position coordinates of rho and of phi = lambda + rho.
  std::vector<long long> rho2(static_cast<std::size_t>(N));
  std::vector<long long> phi2(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const Rational two_phi = (lam.coord(idx[static_cast<std::size_t>(i)]) + rho[static_cast<std::size_t>(i)]) * Rational(2);
    if (!two_phi.is_integer())
      throw DomainError("weight is not integral: coordinate " + two_phi.str() +
                        "/2 of lambda + rho is not a half-integer");
    phi2[static_cast<std::size_t>(i)] = two_phi.num();
    rho2[static_cast<std::size_t>(i)] = (rho[static_cast<std::size_t>(i)] * Rational(2)).num();
  }
  for (int i = 1; i < N; ++i) {
    if ((phi2[static_cast<std::size_t>(i)] - phi2[0]) % 2 != 0)
      throw DomainError(
          "weight is not integral: lambda + rho mixes integer and half-integer coordinates");
  }
  if (spec.head() == HeadType::C && N > 0 && phi2[0] % 2 != 0)
    throw DomainError(
        "weight is not integral: the long coroots require integer lambda + rho coordinates");

  if (require_regular) {
    std::set<long long> seen;
    for (long long v : phi2) {
      const long long a = std::llabs(v);
      if (type == CoxeterType::BC && a == 0)
        throw SingularBlockError("singular block: lambda + rho has a zero coordinate");
      if (!seen.insert(a).second)
        throw SingularBlockError(
            "singular block: lambda + rho has two coordinates of equal absolute value");
    }
  }

  std::vector<long long> values(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) values[static_cast<std::size_t>(i)] = std::llabs(phi2[static_cast<std::size_t>(i)]);
  std::sort(values.begin(), values.end());
  const bool has_zero = values.front() == 0;
  long long phi_negatives = 0;
  for (long long v : phi2) {
    if (v < 0) ++phi_negatives;
  }

  EnumerationResult out;
  out.type = type;
  out.rank = N;
  out.levi_generators = levi_generator_set(spec);
  out.rho = rho;
  out.cplus2 = dominant_orbit_point(type, phi2);

  std::vector<long long> psi2(static_cast<std::size_t>(N), 0);
  std::vector<bool> used(static_cast<std::size_t>(N), false);

  auto leaf = [&](long long t1_doubled, long long lb) {
    const long long minus_t1 = -t1_doubled / 2;
    long long final_depth = lb;
    switch (spec.head()) {
      case HeadType::B:
      case HeadType::BBullet:
        final_depth += minus_t1;
        break;
      case HeadType::C:
      case HeadType::D:
        // The root at position 1 has coordinate sum -2; its coefficient
        // must be a nonnegative integer.
        if (minus_t1 % 2 != 0) return;
        if (spec.head() == HeadType::C) final_depth += minus_t1 / 2;
        break;
    }
    if (final_depth > depth) return;
    if (type == CoxeterType::D && !has_zero) {
      // The number of negative coordinates modulo 2 is an orbit invariant
      // (each sign flip toggles it, permutations preserve it), whether or
      // not the absolute values repeat.
      long long negatives = 0;
      for (long long v : psi2) {
        if (v < 0) ++negatives;
      }
      if ((negatives - phi_negatives) % 2 != 0) return;  // outside the orbit
    }

    Weight mu;
    mu.set_level(lam.level());
    for (int i = 0; i < N; ++i)
      mu.set_coord(idx[static_cast<std::size_t>(i)],
                   Rational(psi2[static_cast<std::size_t>(i)] - rho2[static_cast<std::size_t>(i)], 2));
    for (const Weight& alpha : head_levi) {
      const Rational pairing = coroot_pairing(mu, alpha);
      if (!pairing.is_integer() || pairing < Rational(0))
        return;  // head coefficients fail the dominant condition over Y0
    }
    const std::optional<long long> pd = spec.principal_depth(lam - mu);
    if (!pd) return;  // lambda - mu is not a nonnegative simple-root combination
    if (*pd != final_depth)
      throw std::logic_error("suffix-sum depth disagrees with the simple-root expansion");

    out.members.push_back(EnumeratedMember{psi2, std::move(mu), final_depth});
  };

  std::function<void(int, long long, long long)> assign = [&](int pos, long long t_doubled,
                                                              long long lb) {
    if (pos == 0) {
      leaf(t_doubled, lb);
      return;
    }
    for (int k = 0; k < N; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      // A repeated value may only be drawn from its first unused slot, so
      // each distinct arrangement of a multiset is visited exactly once.
      if (k > 0 && values[static_cast<std::size_t>(k)] == values[static_cast<std::size_t>(k - 1)] &&
          !used[static_cast<std::size_t>(k - 1)])
        continue;
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const long long v = sgn * values[static_cast<std::size_t>(k)];
        if (v == 0 && sgn == 1) continue;  // signed zero would repeat the leaf
        // Tail positions must be Levi-dominant: entries step down by >= 1
        // going outward. (For a partition-tailed input the feasibility bound
        // below already keeps the innermost entry >= the rho floor, so the
        // enumeration never leaves partitions in that case.)
        if (pos > m && pos < N && v < psi2[static_cast<std::size_t>(pos)] + 2) continue;
        const long long t_next = t_doubled + phi2[static_cast<std::size_t>(pos - 1)] - v;
        if (t_next > 0) continue;
        const long long lb_next = lb + (pos >= 2 ? -t_next / 2 : 0);
        if (lb_next > depth) continue;
        psi2[static_cast<std::size_t>(pos - 1)] = v;
        used[static_cast<std::size_t>(k)] = true;
        assign(pos - 1, t_next, lb_next);
        used[static_cast<std::size_t>(k)] = false;
      }
    }
  };
  assign(N, 0, 0);

  std::sort(out.members.begin(), out.members.end(),
            [](const EnumeratedMember& a, const EnumeratedMember& b) {
              if (a.depth != b.depth) return a.depth < b.depth;
              return a.psi2 < b.psi2;
            });
  if (out.members.empty() || out.members.front().depth != 0 || out.members.front().mu != lam)
    throw std::logic_error("linkage enumeration lost the defining weight");
  return out;
}

}  // namespace

ClassicalBlock classical_block(const RootSystemSpec& spec, const Weight& lam, long long depth) {
  EnumerationResult raw = enumerate_members(spec, lam, depth, /*require_regular=*/true);

  ClassicalBlock out;
  out.group_type = raw.type;
  out.rank = raw.rank;
  out.levi_generators = std::move(raw.levi_generators);
  out.rho = std::move(raw.rho);
  out.weights.reserve(raw.members.size());
  for (EnumeratedMember& member : raw.members) {
    SignedPerm rep = orbit_representative(raw.type, raw.cplus2, member.psi2);
    if (!is_min_coset_rep_left(rep, out.levi_generators))
      throw std::logic_error("orbit representative is not Levi-minimal for a dominant weight");
    out.weights.push_back(
        ClassicalLinkedWeight{std::move(member.mu), member.depth, std::move(rep)});
  }
  return out;
}

std::vector<BlockMember> block_members(const RootSystemSpec& spec, const Weight& lam,
                                       long long depth) {
  EnumerationResult raw = enumerate_members(spec, lam, depth, /*require_regular=*/false);
  std::vector<BlockMember> out;
  out.reserve(raw.members.size());
  for (EnumeratedMember& member : raw.members) {
    out.push_back(BlockMember{std::move(member.mu), member.depth});
  }
  return out;
}

LinkageResult linkage(const RootSystemSpec& spec, const DominantTuple& lambda, long long depth) {
  const Weight lam = make_weight_g(spec, lambda);
  ClassicalBlock block = classical_block(spec, lam, depth);

  LinkageResult out;
  out.group_type = block.group_type;
  out.rank = block.rank;
  out.levi_generators = std::move(block.levi_generators);
  out.rho = std::move(block.rho);
  out.weights.reserve(block.weights.size());
  const auto& idx = spec.indices();
  const int m = spec.m();
  const int N = m + spec.n();
  for (auto& cw : block.weights) {
    DominantTuple tuple;
    tuple.level = cw.mu.level();
    tuple.head_coeffs.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      tuple.head_coeffs.push_back(cw.mu.coord(idx[static_cast<std::size_t>(i)]));
    std::vector<long long> parts;
    parts.reserve(static_cast<std::size_t>(N - m));
    for (int i = m; i < N; ++i) {
      const Rational part = cw.mu.coord(idx[static_cast<std::size_t>(i)]);
      if (!part.is_integer() || part < Rational(0))
        throw std::logic_error("partition-tailed block left the partition cone");
      parts.push_back(part.num());
    }
    tuple.lam_plus = Partition(std::move(parts));
    out.weights.push_back(LinkedWeight{std::move(tuple), cw.depth, std::move(cw.rep)});
  }
  if (!(out.weights.front().tuple == lambda))
    throw std::logic_error("linkage enumeration lost the defining weight");
  return out;
}

void decomposition_matrices(KLContext& context, const std::set<int>& levi_generators,
                            const std::vector<SignedPerm>& reps,
                            const std::vector<long long>& depths,
                            std::vector<std::vector<long long>>* multiplicities,
                            std::vector<std::vector<long long>>* a) {
  if (reps.size() != depths.size())
    throw std::invalid_argument("decomposition_matrices needs one depth per representative");
  const std::size_t size = reps.size();
  multiplicities->assign(size, std::vector<long long>(size, 0));
  for (std::size_t v = 0; v < size; ++v) {
    for (std::size_t u = 0; u < size; ++u) {
      const LaurentPoly n = context.parabolic_kl(levi_generators, reps[u], reps[v]);
      if (n.is_zero()) continue;
      (*multiplicities)[v][u] = n.eval_one();
      // The weights are sorted by depth, and a standard module only involves
      // simples at strictly greater depth, so the matrix must come out
      // unitriangular in the stored order.
      if (v == u) {
        if ((*multiplicities)[v][u] != 1)
          throw std::logic_error("multiplicity matrix lost its unit diagonal");
      } else if (depths[v] <= depths[u]) {
        throw std::logic_error("multiplicity matrix is not triangular in depth");
      }
    }
  }

  // Invert the unitriangular multiplicity matrix exactly, column by column.
  a->assign(size, std::vector<long long>(size, 0));
  for (std::size_t u = 0; u < size; ++u) {
    (*a)[u][u] = 1;
    for (std::size_t v = u + 1; v < size; ++v) {
      long long acc = 0;
      for (std::size_t z = u; z < v; ++z) acc += (*multiplicities)[v][z] * (*a)[z][u];
      (*a)[v][u] = -acc;
    }
  }
}

namespace {

/// Borrows the shared context when given (validating its group), otherwise
/// owns a fresh one.
class ContextHandle {
 public:
  ContextHandle(KLContext* shared, CoxeterType type, int rank) {
    if (shared != nullptr) {
      if (shared->type() != type || shared->rank() != rank)
        throw std::invalid_argument("shared context does not match the block's group");
      ctx_ = shared;
    } else {
      own_ = std::make_unique<KLContext>(type, rank);
      ctx_ = own_.get();
    }
  }
  KLContext& get() { return *ctx_; }

 private:
  std::unique_ptr<KLContext> own_;
  KLContext* ctx_ = nullptr;
};

}  // namespace

TransitionMatrix transition_matrix(const RootSystemSpec& spec, const DominantTuple& lambda,
                                   long long depth, KLContext* shared_context) {
  TransitionMatrix out;
  out.block = linkage(spec, lambda, depth);
  ContextHandle ctx(shared_context, out.block.group_type, out.block.rank);

  std::vector<SignedPerm> reps;
  std::vector<long long> depths;
  reps.reserve(out.block.weights.size());
  depths.reserve(out.block.weights.size());
  for (const LinkedWeight& w : out.block.weights) {
    reps.push_back(w.rep);
    depths.push_back(w.depth);
  }
  decomposition_matrices(ctx.get(), out.block.levi_generators, reps, depths,
                         &out.multiplicities, &out.a);
  return out;
}

ClassicalTransition classical_transition(const RootSystemSpec& spec, const Weight& lambda,
                                         long long depth, KLContext* shared_context) {
  ClassicalTransition out;
  out.block = classical_block(spec, lambda, depth);
  ContextHandle ctx(shared_context, out.block.group_type, out.block.rank);

  std::vector<SignedPerm> reps;
  std::vector<long long> depths;
  reps.reserve(out.block.weights.size());
  depths.reserve(out.block.weights.size());
  for (const ClassicalLinkedWeight& w : out.block.weights) {
    reps.push_back(w.rep);
    depths.push_back(w.depth);
  }
  decomposition_matrices(ctx.get(), out.block.levi_generators, reps, depths,
                         &out.multiplicities, &out.a);
  return out;
}

}  // namespace superdual
