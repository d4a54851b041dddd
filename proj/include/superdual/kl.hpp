#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "superdual/laurent.hpp"
#include "superdual/signedperm.hpp"

namespace superdual {

/// Kazhdan-Lusztig engine for one signed-permutation group, fixed by type
/// and rank. Polynomials are computed a full column {P_{x,w} : x <= w} at a
/// time by the descent recursion
///   P_{x,w} = q^{1-c} P_{xs,ws} + q^c P_{x,ws}
///             - sum_{z : zs < z} mu(z, ws) q^{(len(w)-len(z))/2} P_{x,z}
/// with c = 1 iff xs < x, and memoized for reuse.
///
/// Thread safety: lookups take a shared lock; cache misses upgrade to an
/// exclusive lock and compute while holding it, so results are identical
/// under any interleaving.
///
/// The disk cache is a JSON-lines file, one record per polynomial:
///   {"v":1,"type":"B","rank":3,"x":[...],"w":[...],"coeffs":[1,1]}
/// Records whose version, type, or rank do not match are skipped. Loaded
/// records answer point queries only; the column recursion never mixes them
/// in, so a truncated cache file can not corrupt computed values.
class KLContext {
 public:
  KLContext(CoxeterType type, int rank);

  CoxeterType type() const { return type_; }
  int rank() const { return rank_; }

  /// Kazhdan-Lusztig polynomial P_{x,w}; zero unless x <= w, and P_{w,w} = 1.
  LaurentPoly kl_polynomial(const SignedPerm& x, const SignedPerm& w);

  /// R-polynomial R_{x,w}, computed by its own descent recursion
  /// (independent of the P recursion; used to cross-check it).
  LaurentPoly r_polynomial(const SignedPerm& x, const SignedPerm& w);

  /// Coefficient of q^{(len(w)-len(x)-1)/2} in P_{x,w} (zero when the length
  /// difference is even or x is not strictly below w).
  long long mu(const SignedPerm& x, const SignedPerm& w);

  /// Parabolic Kazhdan-Lusztig polynomial of antispherical type (Deodhar's
  /// u = -1 convention) for minimal-length left-coset representatives x, w
  /// of W_J \ W. Computed by the descent recursion on the antispherical
  /// module, a full column {n_{x,w} : x} at a time, so the cost is
  /// independent of |W_J| (unlike the defining alternating sum).
  /// Throws std::invalid_argument if x or w is not a minimal representative.
  LaurentPoly parabolic_kl(const std::set<int>& J, const SignedPerm& x, const SignedPerm& w);

  /// The same polynomial from the defining alternating sum
  ///   n_{x,w} = sum_{y in W_J} (-1)^{len(y)} P_{yx,w},
  /// which enumerates all of W_J. Kept as an independent oracle for the
  /// recursion; only usable when W_J is small.
  LaurentPoly parabolic_kl_by_sum(const std::set<int>& J, const SignedPerm& x,
                                  const SignedPerm& w);

  /// Bruhat order, memoized in this context.
  bool bruhat(const SignedPerm& x, const SignedPerm& w);

  /// Number of (x, w) pairs with a computed polynomial currently in memory
  /// (disk-loaded point records not included).
  std::size_t cached_polynomials() const;

  /// Append every computed polynomial as JSON-lines records. Returns the
  /// number of records written.
  std::size_t save_cache(const std::filesystem::path& file) const;
  /// Load point records from a cache file; silently skips records of other
  /// versions, types, or ranks and malformed lines. Returns records loaded.
  std::size_t load_cache(const std::filesystem::path& file);

 private:
  using Id = std::uint32_t;
  using Column = std::map<Id, LaurentPoly>;

  Id intern(const SignedPerm& w);                     // exclusive lock held
  const SignedPerm& elem(Id id) const { return elems_[id]; }
  const Column& column(Id wid);                       // exclusive lock held
  const Column& antispherical_column(const std::set<int>& J, Id wid);  // lock held
  bool bruhat_ids(Id xid, Id wid);                    // exclusive lock held
  LaurentPoly r_ids(Id xid, Id wid);                  // exclusive lock held
  LaurentPoly kl_locked(const SignedPerm& x, const SignedPerm& w);
  void check_group(const SignedPerm& w) const;

  CoxeterType type_;
  int rank_;

  mutable std::shared_mutex mutex_;
  std::vector<SignedPerm> elems_;
  std::vector<long long> lengths_;
  std::map<std::vector<int>, Id> id_of_window_;
  std::unordered_map<Id, Column> columns_;
  std::map<std::set<int>, std::unordered_map<Id, Column>> antispherical_;
  std::unordered_map<std::uint64_t, bool> bruhat_memo_;
  std::map<std::pair<Id, Id>, LaurentPoly> r_memo_;
  std::map<std::set<int>, std::vector<SignedPerm>> levi_groups_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, LaurentPoly> loaded_;
};

}  // namespace superdual
