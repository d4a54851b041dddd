#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace superdual {

/// A partition: a weakly decreasing sequence of positive integers, stored
/// dense with trailing zeros dropped.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<long long> parts);
  explicit Partition(std::vector<long long> parts);

  const std::vector<long long>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  /// Total number of cells |lambda|.
  long long size() const;
  /// 1-based row length; rows past the end are 0.
  long long row(std::size_t i) const;
  /// 1-based column length (= conjugate row); columns past the end are 0.
  long long col(std::size_t j) const;

  Partition conjugate() const;
  /// Containment of Young diagrams: mu_i <= lambda_i for all i.
  bool contains(const Partition& mu) const;
  /// Number of diagonal cells #{i : lambda_i >= i}.
  long long diagonal_length() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

  /// "(3,2,1)" or "()" for the empty partition.
  std::string str() const;

 private:
  std::vector<long long> parts_;
};

/// Modified Frobenius coordinates of a partition: a sparse map keyed by
/// doubled half-integer index (key 2r for r in {1/2, 1, 3/2, 2, ...}).
/// theta_{i-1/2} = max(mu'_i - i + 1, 0) and theta_i = max(mu_i - i, 0).
class ThetaCoordinates {
 public:
  ThetaCoordinates() = default;
  explicit ThetaCoordinates(std::map<int, long long> entries);

  /// Only the nonzero entries, keyed by doubled index.
  const std::map<int, long long>& entries() const { return entries_; }
  long long at(int doubled_index) const;
  long long total() const;

  friend bool operator==(const ThetaCoordinates& a, const ThetaCoordinates& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::map<int, long long> entries_;
};

ThetaCoordinates theta(const Partition& mu);

/// The (n|m)-hook condition lambda_{n+1} <= m.
bool is_hook(const Partition& lambda, long long n, long long m);

/// The n+m labels (lambda_1..lambda_n, nu_1..nu_m) where nu is the conjugate
/// of the part of lambda below row n. Throws NonHookError if the hook
/// condition fails.
std::vector<long long> sharp(const Partition& lambda, long long n, long long m);

/// Inverse of sharp: reconstructs lambda from its n+m labels.
Partition sharp_inverse(const std::vector<long long>& labels, long long n, long long m);

/// All partitions contained in lambda (including the empty one and lambda).
std::vector<Partition> subpartitions(const Partition& lambda);

/// All partitions of total size exactly n.
std::vector<Partition> partitions_of(long long n);

}  // namespace superdual
