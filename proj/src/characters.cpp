#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "superdual/characters.hpp"
#include "superdual/errors.hpp"
#include "superdual/linkage.hpp"

namespace superdual {

namespace {

// ---------------------------------------------------------------------------
// Cone polynomials: multiplicities keyed by the simple-root coordinate vector
// of (apex - weight). All kernel products act by pushing mass deeper into the
// cone, so truncation is a cap on the coordinate sum.
// ---------------------------------------------------------------------------

using Offset = std::vector<long long>;
using ConePoly = std::map<Offset, long long>;

long long offset_sum(const Offset& o) {
  long long s = 0;
  for (long long v : o) s += v;
  return s;
}

Offset offset_of(const RootSystemSpec& spec, const Weight& v) {
  auto coords = spec.simple_coordinates(v);
  if (!coords) throw std::logic_error("weight difference escaped the root lattice of " + spec.str());
  Offset o(coords->size());
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (!(*coords)[i].is_integer() || (*coords)[i] < Rational(0))
      throw std::logic_error("weight difference escaped the positive cone of " + spec.str());
    o[i] = (*coords)[i].as_integer();
  }
  return o;
}

// Multiplies by the geometric series 1 + e^{-g} + e^{-2g} + ... in place.
// Keys are visited in ascending lexicographic order and every insertion lands
// strictly above the current key, so newly produced terms are themselves
// extended -- exactly the series.
void fold_even(ConePoly& p, const Offset& g, long long cap) {
  const long long gs = offset_sum(g);
  if (gs <= 0) throw std::logic_error("kernel root with nonpositive principal depth");
  for (auto it = p.begin(); it != p.end(); ++it) {
    if (offset_sum(it->first) + gs > cap) continue;
    Offset key = it->first;
    for (std::size_t i = 0; i < key.size(); ++i) key[i] += g[i];
    const long long c = it->second;
    p[key] += c;
  }
}

// Multiplies by 1 + e^{-g}: one shifted copy, taken from a snapshot so that
// produced terms are not extended again.
void fold_odd(ConePoly& p, const Offset& g, long long cap) {
  const long long gs = offset_sum(g);
  if (gs <= 0) throw std::logic_error("kernel root with nonpositive principal depth");
  std::vector<std::pair<Offset, long long>> snapshot(p.begin(), p.end());
  for (const auto& [o, c] : snapshot) {
    if (offset_sum(o) + gs > cap) continue;
    Offset key = o;
    for (std::size_t i = 0; i < key.size(); ++i) key[i] += g[i];
    p[key] += c;
  }
}

// Multiplies by the parity-matched kernel factor of every listed root (given
// as positive roots; the factor acts in the negative direction).
void fold_kernel(ConePoly& p, const RootSystemSpec& spec, const std::vector<Weight>& roots,
                 long long cap) {
  for (const Weight& gamma : roots) {
    const Offset g = offset_of(spec, gamma);
    if (spec.root_parity(gamma) == 0)
      fold_even(p, g, cap);
    else
      fold_odd(p, g, cap);
  }
}

std::map<Weight, long long> materialize(const RootSystemSpec& spec, const Weight& apex,
                                        const ConePoly& p) {
  const auto& simples = spec.simple_roots();
  std::map<Weight, long long> terms;
  for (const auto& [o, c] : p) {
    if (c == 0) continue;
    Weight w = apex;
    for (std::size_t i = 0; i < o.size(); ++i)
      if (o[i] != 0) w -= Rational(o[i]) * simples[i];
    terms.emplace(std::move(w), c);
  }
  return terms;
}

void check_module_character(const FormalCharacter& ch, const char* what) {
  if (ch.multiplicity(ch.apex()) != 1)
    throw std::logic_error(std::string(what) + " lost its highest-weight term");
  for (const auto& [w, c] : ch.terms())
    if (c < 0) throw std::logic_error(std::string(what) + " produced a negative multiplicity");
}

// ---------------------------------------------------------------------------
// The Y0-generated head subsystem.
// ---------------------------------------------------------------------------

struct HeadSystem {
  std::vector<Weight> simples;    // the chosen head simple roots
  std::vector<Weight> positives;  // positives of the subsystem they generate
  Weight rho;                     // half(sum of even - sum of odd positives)
};

bool head_supported(const Weight& w) {
  return !w.coords().empty() && w.coords().rbegin()->first < 0;
}

HeadSystem head_system(const RootSystemSpec& spec) {
  HeadSystem hs;
  for (const Weight& alpha : spec.levi_simple_roots())
    if (head_supported(alpha)) hs.simples.push_back(alpha);
  for (const Weight& gamma : spec.levi_positive_roots())
    if (head_supported(gamma)) hs.positives.push_back(gamma);
  Weight twice;
  for (const Weight& gamma : hs.positives)
    twice += spec.root_parity(gamma) == 0 ? gamma : -gamma;
  hs.rho = Rational(1, 2) * twice;
  return hs;
}

// Reflections attach to non-isotropic roots; an odd one reflects through its
// even double (the same hyperplane, integral pairing on weights).
Weight reflection_root(const RootSystemSpec& spec, const Weight& alpha) {
  if (RootSystemSpec::is_isotropic(alpha))
    throw std::logic_error("isotropic root offered as a reflection");
  if (spec.root_parity(alpha) == 1) return Rational(2) * alpha;
  return alpha;
}

bool head_dominant(const RootSystemSpec& spec, const HeadSystem& hs, const Weight& w) {
  for (const Weight& alpha : hs.simples) {
    const Rational p = coroot_pairing(w, reflection_root(spec, alpha));
    if (!p.is_integer() || p < Rational(0)) return false;
  }
  return true;
}

// Orbit of nu under the subsystem reflections, with alternating signs. nu
// must be regular for the subsystem (true for dominant + shift).
std::vector<std::pair<Weight, int>> signed_orbit(const RootSystemSpec& spec, const HeadSystem& hs,
                                                 const Weight& nu) {
  std::map<Weight, int> sign_of;
  std::vector<Weight> queue{nu};
  sign_of[nu] = 1;
  std::vector<std::pair<Weight, int>> out;
  while (!queue.empty()) {
    Weight p = queue.back();
    queue.pop_back();
    const int s = sign_of.at(p);
    out.emplace_back(p, s);
    for (const Weight& alpha : hs.simples) {
      const Weight r = reflection_root(spec, alpha);
      const Rational c = coroot_pairing(p, r);
      if (c.is_zero())
        throw std::logic_error("shifted Levi weight landed on a reflection wall");
      Weight q = p - c * r;
      auto it = sign_of.find(q);
      if (it == sign_of.end()) {
        sign_of.emplace(q, -s);
        queue.push_back(std::move(q));
      } else if (it->second != -s) {
        throw std::logic_error("inconsistent sign parity in a Levi orbit");
      }
    }
  }
  return out;
}

Weight head_part_weight(const RootSystemSpec& spec, const std::vector<Rational>& head_coeffs,
                        const Rational& level) {
  if (static_cast<int>(head_coeffs.size()) != spec.m())
    throw DomainError("expected " + std::to_string(spec.m()) + " head coefficients, got " +
                      std::to_string(head_coeffs.size()));
  Weight w;
  for (int i = 0; i < spec.m(); ++i)
    w.set_coord(-2 * spec.m() + 2 * i, head_coeffs[static_cast<std::size_t>(i)]);
  w.set_level(level);
  return w;
}

// Weyl-type character of the finite-dimensional subsystem module with highest
// weight (head part of the tuple): alternating orbit sum of lambda + rho over
// the parity-matched kernel of the subsystem positives. Exact.
FormalCharacter head_factor(const RootSystemSpec& spec, const std::vector<Rational>& head_coeffs,
                            const Rational& level) {
  const Weight lam = head_part_weight(spec, head_coeffs, level);
  const HeadSystem hs = head_system(spec);
  if (hs.simples.empty()) {
    std::map<Weight, long long> only{{lam, 1}};
    return detail::CharacterBuilder::build(spec, lam, kExactDepth, std::move(only));
  }
  if (!head_dominant(spec, hs, lam))
    throw DomainError("head coefficients are not dominant integral for the chosen Levi");

  const Weight nu = lam + hs.rho;
  ConePoly poly;
  long long cap = 0;
  for (const auto& [p, sign] : signed_orbit(spec, hs, nu)) {
    Offset o = offset_of(spec, nu - p);
    cap = std::max(cap, offset_sum(o));
    poly[std::move(o)] += sign;
  }
  fold_kernel(poly, spec, hs.positives, cap);

  FormalCharacter out =
      detail::CharacterBuilder::build(spec, lam, kExactDepth, materialize(spec, lam, poly));
  check_module_character(out, "a Levi head factor");
  return out;
}

// Canonical tail variable lists of the datum, by doubled index.
std::vector<int> integer_vars(int n) {
  std::vector<int> v;
  for (int j = 1; j <= n; ++j) v.push_back(2 * j);
  return v;
}
std::vector<int> half_vars(int n) {
  std::vector<int> v;
  for (int j = 1; j <= n; ++j) v.push_back(2 * j - 1);
  return v;
}

// Repackages a head-free symmetric-function character over the ambient datum,
// optionally shifting every tail exponent by `shift` boxes per variable.
FormalCharacter rebase_tail(const RootSystemSpec& spec, const FormalCharacter& raw,
                            long long shift) {
  Weight offset;
  if (shift != 0)
    for (int j = 1; j <= spec.n(); ++j) offset.set_coord(2 * j, Rational(shift));
  FormalCharacter out(spec, raw.apex() + offset, kExactDepth);
  for (const auto& [w, c] : raw.terms()) out.add_term(w + offset, c);
  return out;
}

// Tail factor of the Levi character of a dominant tuple, by flavor.
FormalCharacter tail_factor(const RootSystemSpec& spec, const DominantTuple& t) {
  switch (spec.tail()) {
    case TailType::Even:
      return rebase_tail(spec, schur(t.lam_plus, integer_vars(spec.n())), 0);
    case TailType::Super:
      return rebase_tail(spec, schur(t.lam_plus.conjugate(), half_vars(spec.n())), 0);
    case TailType::Full:
      return rebase_tail(spec, hook_schur(t.lam_plus.conjugate(), spec.n(), spec.n()), 0);
  }
  throw std::logic_error("unhandled tail flavor");
}

Weight make_weight(const RootSystemSpec& spec, const DominantTuple& t) {
  switch (spec.tail()) {
    case TailType::Even:
      return make_weight_g(spec, t);
    case TailType::Super:
      return make_weight_gbar(spec, t);
    case TailType::Full:
      return make_weight_gtilde(spec, t);
  }
  throw std::logic_error("unhandled tail flavor");
}

// Levi character of a weight already known to be Levi-dominant: used for the
// deeper members of an even-tail linkage class, whose tails are weakly
// decreasing but need not be partitions. The tail factor is a Schur
// polynomial of the min-shifted tail times the appropriate power of every
// tail variable.
FormalCharacter levi_character_of_weight(const RootSystemSpec& spec, const Weight& mu) {
  if (spec.tail() != TailType::Even)
    throw std::logic_error("raw-weight Levi characters are only formed on even tails");
  std::vector<Rational> head_coeffs;
  for (int i = 0; i < spec.m(); ++i) head_coeffs.push_back(mu.coord(-2 * spec.m() + 2 * i));

  std::vector<long long> tau;
  for (int j = 1; j <= spec.n(); ++j) {
    const Rational c = mu.coord(2 * j);
    if (!c.is_integer()) throw std::logic_error("non-integral tail coordinate in a linkage member");
    tau.push_back(c.as_integer());
  }
  for (std::size_t j = 1; j < tau.size(); ++j)
    if (tau[j] > tau[j - 1]) throw std::logic_error("linkage member tail is not Levi-dominant");

  const long long base = tau.back();
  std::vector<long long> parts;
  for (long long v : tau)
    if (v - base > 0) parts.push_back(v - base);

  FormalCharacter head = head_factor(spec, head_coeffs, mu.level());
  FormalCharacter tail =
      rebase_tail(spec, schur(Partition(std::move(parts)), integer_vars(spec.n())), base);
  FormalCharacter out = head * tail;
  if (out.apex() != mu)
    throw std::logic_error("Levi character apex disagrees with its highest weight");
  check_module_character(out, "a Levi character");
  return out;
}

// Shared Verma assembly: Levi character times the opposite-nilradical kernel.
FormalCharacter verma_from_levi(const RootSystemSpec& spec, const FormalCharacter& levi,
                                long long depth) {
  const Weight& lam = levi.apex();
  ConePoly poly;
  for (const auto& [w, c] : levi.terms()) {
    Offset o = offset_of(spec, lam - w);
    if (offset_sum(o) > depth) continue;
    poly[std::move(o)] += c;
  }
  std::vector<Weight> kernel_roots;
  for (const Weight& gamma : spec.opposite_nilradical_roots()) kernel_roots.push_back(-gamma);
  fold_kernel(poly, spec, kernel_roots, depth);
  FormalCharacter out =
      detail::CharacterBuilder::build(spec, lam, depth, materialize(spec, lam, poly));
  check_module_character(out, "a Verma character");
  return out;
}

void require_depth(long long depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
}

// Runs fn(0..count-1), on `jobs` worker threads when asked; the first
// exception is rethrown after all workers stop.
void run_indexed(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  const std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (std::size_t w = 0; w < width; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(err_mutex);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Weighted merge of per-member Verma term maps into the final character.
FormalCharacter assemble_sum(const RootSystemSpec& spec, const Weight& apex, long long depth,
                             const std::vector<long long>& coeffs,
                             const std::vector<std::map<Weight, long long>>& parts) {
  std::map<Weight, long long> total;
  for (std::size_t v = 0; v < parts.size(); ++v) {
    if (coeffs[v] == 0) continue;
    for (const auto& [w, c] : parts[v]) {
      auto it = total.emplace(w, 0).first;
      it->second += coeffs[v] * c;
      if (it->second == 0) total.erase(it);
    }
  }
  FormalCharacter out = detail::CharacterBuilder::build(spec, apex, depth, std::move(total));
  check_module_character(out, "an irreducible character");
  return out;
}

// ---------------------------------------------------------------------------
// Even-tail irreducibles: resolve the linkage class in place.
// ---------------------------------------------------------------------------

FormalCharacter irreducible_even(const RootSystemSpec& spec, const Weight& lam, long long depth,
                                 KLContext* shared_context, int jobs) {
  std::optional<ClassicalTransition> ct;
  try {
    ct.emplace(classical_transition(spec, lam, depth, shared_context));
  } catch (const SingularBlockError&) {
    // A weight alone in its class within this depth has an irreducible
    // standard cover regardless of regularity.
    if (block_members(spec, lam, depth).size() == 1)
      return verma_from_levi(spec, levi_character_of_weight(spec, lam), depth);
    throw;
  }

  const auto& members = ct->block.weights;
  std::vector<long long> coeffs(members.size());
  for (std::size_t v = 0; v < members.size(); ++v) coeffs[v] = ct->a[v][0];

  std::vector<std::map<Weight, long long>> parts(members.size());
  run_indexed(jobs, members.size(), [&](std::size_t v) {
    if (coeffs[v] == 0) return;
    const FormalCharacter levi = levi_character_of_weight(spec, members[v].mu);
    parts[v] = verma_from_levi(spec, levi, depth - members[v].depth).terms();
  });
  return assemble_sum(spec, lam, depth, coeffs, parts);
}

// ---------------------------------------------------------------------------
// Super/Full-tail irreducibles: transport to an even-tail companion.
// ---------------------------------------------------------------------------

// Inverse of the modified Frobenius encoding: reconstructs the partition
// whose half-index coordinates are max(lambda'_i - i + 1, 0) and integer
// coordinates max(lambda_i - i, 0); nullopt when the coordinate pattern is
// not of that shape. The result is re-encoded and compared as a final check.
std::optional<Partition> theta_inverse(const std::map<int, long long>& coords) {
  std::map<long long, long long> p, q;
  for (const auto& [d, v] : coords) {
    if (v <= 0) return std::nullopt;
    if (idx::is_half(d))
      p[(d + 1) / 2] = v;
    else
      q[d / 2] = v;
  }
  const long long durfee = static_cast<long long>(p.size());
  long long expect = 1;
  long long prev = 0;
  for (const auto& [i, v] : p) {
    if (i != expect++) return std::nullopt;           // contiguous support
    if (prev != 0 && v >= prev) return std::nullopt;  // strictly decreasing
    prev = v;
  }
  for (const auto& [i, v] : q)
    if (i > durfee) return std::nullopt;

  std::vector<long long> rows;
  for (long long i = 1; i <= durfee; ++i) {
    auto it = q.find(i);
    rows.push_back(i + (it == q.end() ? 0 : it->second));
  }
  for (long long i = durfee + 1;; ++i) {
    long long cols = 0;
    for (const auto& [j, v] : p)
      if (v + j - 1 >= i) ++cols;
    if (cols == 0) break;
    rows.push_back(cols);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i] > rows[i - 1]) return std::nullopt;

  Partition out{std::vector<long long>(rows)};
  if (theta(out).entries() != coords) return std::nullopt;
  return out;
}

// Reads a dominant tuple back off a weight of the Super or Full cone;
// nullopt when the weight is not a dominant-integral highest weight there.
std::optional<DominantTuple> decode_tuple(const RootSystemSpec& spec, const HeadSystem& hs,
                                          const Weight& w) {
  DominantTuple out;
  out.level = w.level();
  for (int i = 0; i < spec.m(); ++i) out.head_coeffs.push_back(w.coord(-2 * spec.m() + 2 * i));
  if (!head_dominant(spec, hs, w)) return std::nullopt;

  if (spec.tail() == TailType::Super) {
    std::vector<long long> nu;
    for (int j = 1; j <= spec.n(); ++j) {
      const Rational c = w.coord(2 * j - 1);
      if (!c.is_integer() || c < Rational(0)) return std::nullopt;
      nu.push_back(c.as_integer());
    }
    for (std::size_t j = 1; j < nu.size(); ++j)
      if (nu[j] > nu[j - 1]) return std::nullopt;
    while (!nu.empty() && nu.back() == 0) nu.pop_back();
    out.lam_plus = Partition(std::move(nu)).conjugate();
    return out;
  }
  if (spec.tail() == TailType::Full) {
    std::map<int, long long> tail;
    for (const auto& [d, c] : w.coords()) {
      if (d <= 0) continue;
      if (!c.is_integer() || c < Rational(0)) return std::nullopt;
      if (c.as_integer() != 0) tail[d] = c.as_integer();
    }
    auto lam = theta_inverse(tail);
    if (!lam) return std::nullopt;
    out.lam_plus = std::move(*lam);
    return out;
  }
  throw std::logic_error("tuple decoding is for Super or Full tails");
}

struct Candidate {
  DominantTuple tuple;
  long long off_x = 0;   // principal depth below lambda on the native side
  long long depth_g = 0; // principal depth below lambda on the companion side
};

// Linkage invariants of a companion-side weight: the multiset of absolute
// shifted coordinates, and for fork heads the sign-flip parity.
struct OrbitKey {
  std::vector<Rational> abs_phi;
  int parity = 0;

  bool operator==(const OrbitKey& o) const { return abs_phi == o.abs_phi && parity == o.parity; }
};

OrbitKey orbit_key(const RootSystemSpec& gspec, const std::vector<Rational>& rho,
                   const Weight& w) {
  OrbitKey key;
  bool has_zero = false;
  const auto& idxs = gspec.indices();
  for (std::size_t i = 0; i < idxs.size(); ++i) {
    Rational phi = w.coord(idxs[i]) + rho[i];
    if (phi.is_zero()) has_zero = true;
    if (phi < Rational(0)) {
      phi = Rational(0) - phi;
      key.parity ^= 1;
    }
    key.abs_phi.push_back(phi);
  }
  std::sort(key.abs_phi.begin(), key.abs_phi.end());
  // The flip parity separates fork-head orbits only away from the walls: a
  // zero coordinate lets a single sign change for free, so there it must not
  // be used to discard anything.
  if (gspec.head() != HeadType::D || has_zero) key.parity = 0;
  return key;
}

// All dominant-integral weights of the native cone within `depth` of lambda
// that share its companion-side linkage invariants, as tuples. Entry 0 is
// lambda itself.
std::vector<Candidate> scan_candidates(const RootSystemSpec& spec, const DominantTuple& t,
                                       const Weight& lam, long long depth) {
  const HeadSystem hs = head_system(spec);
  const auto& simples = spec.simple_roots();

  std::vector<std::pair<DominantTuple, long long>> decoded;
  Weight w = lam;
  auto rec = [&](auto&& self, std::size_t i, long long budget) -> void {
    if (i == simples.size()) {
      if (auto tuple = decode_tuple(spec, hs, w)) decoded.emplace_back(std::move(*tuple), budget);
      return;
    }
    for (long long c = 0;; ++c) {
      self(self, i + 1, budget + c);
      if (budget + c >= depth) break;
      w -= simples[i];
    }
    // restore the coordinate walked down in this frame
    for (long long c = 0; c < depth - budget; ++c) w += simples[i];
  };
  rec(rec, 0, 0);

  // The zero offset must decode back to the input tuple.
  bool found_self = false;
  for (const auto& [tuple, off] : decoded)
    if (off == 0) {
      if (tuple != t) throw std::logic_error("highest-weight decoding failed to invert");
      found_self = true;
    }
  if (!found_self) throw std::logic_error("highest weight rejected by its own cone scan");

  // Companion-side filter at a common rank.
  int nc = 1;
  for (const auto& [tuple, off] : decoded)
    nc = std::max(nc, static_cast<int>(tuple.lam_plus.length()) + 1);
  const RootSystemSpec gc(spec.head(), spec.m(), TailType::Even, nc, spec.levi_head_names());
  const std::vector<Rational> rho = stable_rho(gc);
  const Weight lam_gc = make_weight_g(gc, t);
  const OrbitKey target = orbit_key(gc, rho, lam_gc);

  std::vector<Candidate> out;
  for (auto& [tuple, off] : decoded) {
    if (off == 0) {
      out.push_back({tuple, 0, 0});
      continue;
    }
    const Weight mu_gc = make_weight_g(gc, tuple);
    if (!(orbit_key(gc, rho, mu_gc) == target)) continue;
    auto dg = gc.principal_depth(lam_gc - mu_gc);
    if (!dg) continue;  // shares invariants but is not below lambda there
    out.push_back({std::move(tuple), off, *dg});
  }
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.off_x < b.off_x; });
  return out;
}

FormalCharacter irreducible_super(const RootSystemSpec& spec, const DominantTuple& t,
                                  long long depth, KLContext* shared_context, int jobs) {
  const Weight lam = make_weight(spec, t);
  std::vector<Candidate> cands = scan_candidates(spec, t, lam, depth);
  if (cands.size() == 1) return verma_character(spec, t, depth);

  // Companion rank bound: a linked weight within companion depth B grows at
  // most r extra rows with r(r-1)/2 <= B, since each row below the original
  // ones costs at least its own index in depth.
  long long bound = 0;
  for (const Candidate& c : cands) bound = std::max(bound, c.depth_g);
  long long extra = 1;
  while ((extra + 1) * extra / 2 <= bound) ++extra;
  int ng = static_cast<int>(t.lam_plus.length()) + static_cast<int>(extra) + 1;
  for (const Candidate& c : cands)
    ng = std::max(ng, static_cast<int>(c.tuple.lam_plus.length()) + 1);

  const RootSystemSpec gspec(spec.head(), spec.m(), TailType::Even, ng, spec.levi_head_names());
  const Weight lam_g = make_weight_g(gspec, t);
  const ClassicalTransition ct = classical_transition(gspec, lam_g, bound, shared_context);

  for (const auto& member : ct.block.weights)
    if (!member.mu.coord(2 * ng).is_zero())
      throw std::logic_error("a linked weight reached the companion rank bound");

  std::map<Weight, std::size_t> position;
  for (std::size_t v = 0; v < ct.block.weights.size(); ++v)
    position.emplace(ct.block.weights[v].mu, v);

  std::vector<long long> coeffs(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto it = position.find(make_weight_g(gspec, cands[i].tuple));
    if (it == position.end())
      throw std::logic_error("a transported weight is missing from its companion block");
    coeffs[i] = ct.a[it->second][0];
  }

  std::vector<std::map<Weight, long long>> parts(cands.size());
  run_indexed(jobs, cands.size(), [&](std::size_t i) {
    if (coeffs[i] == 0) return;
    parts[i] = verma_character(spec, cands[i].tuple, depth - cands[i].off_x).terms();
  });
  return assemble_sum(spec, lam, depth, coeffs, parts);
}

}  // namespace

// ---------------------------------------------------------------------------
// FormalCharacter
// ---------------------------------------------------------------------------

FormalCharacter::FormalCharacter(RootSystemSpec spec, Weight apex, long long depth)
    : spec_(std::move(spec)), apex_(std::move(apex)), depth_(depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
}

long long FormalCharacter::multiplicity(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<long long> FormalCharacter::term_depth(const Weight& w) const {
  return spec_.principal_depth(apex_ - w);
}

void FormalCharacter::add_term(const Weight& w, long long mult) {
  const auto d = term_depth(w);
  if (!d) throw std::invalid_argument("character term outside the cone below the apex");
  if (*d > depth_) return;  // beyond the completeness budget; not representable
  auto it = terms_.emplace(w, 0).first;
  it->second += mult;
  if (it->second == 0) terms_.erase(it);
}

FormalCharacter operator+(const FormalCharacter& a, const FormalCharacter& b) {
  if (a.spec_ != b.spec_) throw std::invalid_argument("characters live over different data");
  const Weight* apex = nullptr;
  long long off_a = 0;
  long long off_b = 0;
  if (auto d = a.spec_.principal_depth(a.apex_ - b.apex_)) {
    apex = &a.apex_;
    off_b = *d;
  } else if (auto e = a.spec_.principal_depth(b.apex_ - a.apex_)) {
    apex = &b.apex_;
    off_a = *e;
  } else {
    throw std::invalid_argument("characters with incomparable apexes");
  }
  const auto sat = [](long long off, long long dep) {
    return dep >= kExactDepth ? kExactDepth : off + dep;
  };
  FormalCharacter out(a.spec_, *apex, std::min(sat(off_a, a.depth_), sat(off_b, b.depth_)));
  for (const auto& [w, c] : a.terms_) out.add_term(w, c);
  for (const auto& [w, c] : b.terms_) out.add_term(w, c);
  return out;
}

FormalCharacter operator*(long long c, const FormalCharacter& a) {
  FormalCharacter out = a;
  if (c == 0)
    out.terms_.clear();
  else if (c != 1)
    for (auto& [w, m] : out.terms_) m *= c;
  return out;
}

FormalCharacter FormalCharacter::operator-() const { return -1 * *this; }

FormalCharacter operator-(const FormalCharacter& a, const FormalCharacter& b) {
  return a + (-1 * b);
}

FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b) {
  if (a.spec_ != b.spec_) throw std::invalid_argument("characters live over different data");
  FormalCharacter out(a.spec_, a.apex_ + b.apex_, std::min(a.depth_, b.depth_));
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add_term(wa + wb, ca * cb);
  return out;
}

std::string FormalCharacter::str() const {
  std::ostringstream os;
  os << "apex " << apex_.str() << ", depth ";
  if (depth_ == kExactDepth)
    os << "exact";
  else
    os << depth_;
  os << ", " << terms_.size() << " terms";
  std::vector<std::pair<long long, const Weight*>> order;
  order.reserve(terms_.size());
  for (const auto& [w, c] : terms_) order.emplace_back(term_depth(w).value_or(-1), &w);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [d, w] : order)
    os << "\n  [" << d << "] " << terms_.at(*w) << " x e^{" << w->str() << "}";
  return os.str();
}

FormalCharacter detail::CharacterBuilder::build(RootSystemSpec spec, Weight apex, long long depth,
                                                std::map<Weight, long long> terms) {
  FormalCharacter out(std::move(spec), std::move(apex), depth);
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second == 0 ? terms.erase(it) : std::next(it);
  out.terms_ = std::move(terms);
  return out;
}

FormalCharacter truncate_depth(const FormalCharacter& ch, long long new_depth) {
  require_depth(new_depth);
  if (new_depth > ch.depth())
    throw std::invalid_argument("cannot extend a character's completeness by truncation");
  if (new_depth == ch.depth()) return ch;
  FormalCharacter out(ch.spec(), ch.apex(), new_depth);
  for (const auto& [w, c] : ch.terms()) out.add_term(w, c);
  return out;
}

// ---------------------------------------------------------------------------
// Module characters.
// ---------------------------------------------------------------------------

FormalCharacter levi_character(const RootSystemSpec& spec, const DominantTuple& t) {
  const Weight lam = make_weight(spec, t);  // validates the tuple shape
  FormalCharacter head = head_factor(spec, t.head_coeffs, t.level);
  FormalCharacter tail = tail_factor(spec, t);
  FormalCharacter out = head * tail;
  if (out.apex() != lam)
    throw std::logic_error("Levi character apex disagrees with the assembled highest weight");
  check_module_character(out, "a Levi character");
  return out;
}

FormalCharacter verma_character(const RootSystemSpec& spec, const DominantTuple& t,
                                long long depth) {
  require_depth(depth);
  return verma_from_levi(spec, levi_character(spec, t), depth);
}

FormalCharacter irreducible_character(const RootSystemSpec& spec, const DominantTuple& t,
                                      long long depth, KLContext* shared_context, int jobs) {
  require_depth(depth);
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (spec.tail() == TailType::Even) return irreducible_even(spec, t, depth, shared_context, jobs);
  return irreducible_super(spec, t, depth, shared_context, jobs);
}

FormalCharacter weyl_character_formula(const RootSystemSpec& spec, const Weight& lambda,
                                       long long depth) {
  if (spec.tail() != TailType::Even)
    throw std::invalid_argument("the full alternating sum requires an even tail");
  require_depth(depth);
  for (const Weight& alpha : spec.simple_roots()) {
    const Rational p = coroot_pairing(lambda, reflection_root(spec, alpha));
    if (!p.is_integer() || p < Rational(0))
      throw DomainError("weight is not dominant integral: a simple pairing is " + p.str());
  }

  const auto& idxs = spec.indices();
  const int N = spec.m() + spec.n();
  if (N > 20)
    throw std::invalid_argument("the signed-permutation alternating sum is limited to rank 20");
  const std::vector<Rational> rho = stable_rho(spec);
  std::vector<Rational> phi(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    phi[static_cast<std::size_t>(i)] =
        lambda.coord(idxs[static_cast<std::size_t>(i)]) + rho[static_cast<std::size_t>(i)];

  const bool fork = spec.head() == HeadType::D;
  std::vector<int> perm(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) perm[static_cast<std::size_t>(i)] = i;

  ConePoly numerator;
  do {
    int inversions = 0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    const int psign = inversions % 2 ? -1 : 1;
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
      const int flips = __builtin_popcount(mask);
      if (fork && flips % 2) continue;
      Weight y;
      for (int i = 0; i < N; ++i) {
        Rational v = phi[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        if (mask >> i & 1) v = Rational(0) - v;
        y.set_coord(idxs[static_cast<std::size_t>(i)], v - rho[static_cast<std::size_t>(i)]);
      }
      y.set_level(lambda.level());
      Offset o = offset_of(spec, lambda - y);
      if (offset_sum(o) > depth) continue;
      const int sign = flips % 2 ? -psign : psign;
      auto it = numerator.emplace(std::move(o), 0).first;
      it->second += sign;
      if (it->second == 0) numerator.erase(it);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  fold_kernel(numerator, spec, spec.positive_roots(), depth);
  FormalCharacter out = detail::CharacterBuilder::build(spec, lambda, depth,
                                                        materialize(spec, lambda, numerator));
  check_module_character(out, "the alternating-sum character");
  return out;
}

// ---------------------------------------------------------------------------
// Projections and rank truncation.
// ---------------------------------------------------------------------------

namespace {

FormalCharacter project_impl(const FormalCharacter& ch, bool keep_integer) {
  const RootSystemSpec& old = ch.spec();
  if (old.tail() != TailType::Full)
    throw std::invalid_argument("tail projections act on full-tail characters");
  const RootSystemSpec ns = with_tail(old, keep_integer ? TailType::Even : TailType::Super);

  const auto survives = [&](const Weight& w) {
    for (const auto& [d, c] : w.coords())
      if (d > 0 && idx::is_integer(d) != keep_integer) return false;
    return true;
  };

  // Worst-case stretch of the principal grading under re-tagging: each new
  // simple root costs this many source steps at most.
  long long stretch = 1;
  for (const Weight& s : ns.simple_roots()) {
    const auto d = old.principal_depth(s);
    if (!d || *d <= 0) throw std::logic_error("a projected simple root escaped the source cone");
    stretch = std::max(stretch, *d);
  }

  std::vector<std::pair<const Weight*, long long>> kept;
  for (const auto& [w, c] : ch.terms())
    if (survives(w)) kept.emplace_back(&w, c);

  if (kept.empty()) {
    // Nothing survived. Had the head-and-level reference point itself been a
    // term it would have survived, so completeness to depth 0 is honest.
    Weight ref;
    for (const auto& [d, c] : ch.apex().coords())
      if (d < 0) ref.set_coord(d, c);
    ref.set_level(ch.apex().level());
    return FormalCharacter(ns, std::move(ref), 0);
  }

  const Weight* top = nullptr;
  long long top_off = 0;
  for (const auto& [w, c] : kept) {
    const auto d = ch.term_depth(*w);
    if (!d) throw std::logic_error("a stored term fell outside its own cone");
    if (!top || *d < top_off) {
      top = w;
      top_off = *d;
    }
  }
  for (const auto& [w, c] : kept)
    if (!ns.principal_depth(*top - *w))
      throw std::logic_error("projection produced an apex-ambiguous character");

  const long long nd =
      ch.depth() >= kExactDepth ? kExactDepth : (ch.depth() - top_off) / stretch;
  FormalCharacter out(ns, *top, nd);
  for (const auto& [w, c] : kept) out.add_term(*w, c);
  return out;
}

}  // namespace

FormalCharacter project_T(const FormalCharacter& ch) { return project_impl(ch, true); }

FormalCharacter project_Tbar(const FormalCharacter& ch) { return project_impl(ch, false); }

FormalCharacter truncate_character(const FormalCharacter& ch, int target_n) {
  const RootSystemSpec& old = ch.spec();
  if (target_n < 1 || target_n > old.n())
    throw std::invalid_argument("target rank must lie between 1 and the tail rank");
  if (target_n == old.n()) return ch;
  const RootSystemSpec ns(old.head(), old.m(), old.tail(), target_n, old.levi_head_names());
  const int cut = 2 * target_n;  // largest doubled index of the surviving tail

  const auto strip = [&](const Weight& w) {
    Weight out;
    for (const auto& [d, c] : w.coords())
      if (d <= cut) out.set_coord(d, c);
    out.set_level(w.level());
    return out;
  };
  const auto high = [&](const Weight& w) {
    return !w.coords().empty() && w.coords().rbegin()->first > cut;
  };

  if (high(ch.apex())) {
    // Mass can only flow toward higher tail positions (every simple root
    // moves weight inward or up the chain), so no term -- stored or beyond
    // the depth budget -- ever sheds the apex's high support: the truncation
    // is identically zero, exactly.
    return FormalCharacter(ns, strip(ch.apex()), kExactDepth);
  }

  FormalCharacter out(ns, ch.apex(), ch.depth());
  for (const auto& [w, c] : ch.terms())
    if (!high(w)) out.add_term(w, c);
  return out;
}

}  // namespace superdual
