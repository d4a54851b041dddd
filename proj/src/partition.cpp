#include "superdual/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include "superdual/errors.hpp"

namespace superdual {

namespace {

void validate_and_trim(std::vector<long long>& parts) {
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (parts[i] < parts[i + 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  for (long long p : parts) {
    if (p < 0) throw std::invalid_argument("partition parts must be nonnegative");
  }
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

}  // namespace

Partition::Partition(std::initializer_list<long long> parts) : parts_(parts) {
  validate_and_trim(parts_);
}

Partition::Partition(std::vector<long long> parts) : parts_(std::move(parts)) {
  validate_and_trim(parts_);
}

long long Partition::size() const {
  long long s = 0;
  for (long long p : parts_) s += p;
  return s;
}

long long Partition::row(std::size_t i) const {
  if (i == 0) throw std::out_of_range("partition rows are 1-based");
  return i <= parts_.size() ? parts_[i - 1] : 0;
}

long long Partition::col(std::size_t j) const {
  if (j == 0) throw std::out_of_range("partition columns are 1-based");
  long long count = 0;
  for (long long p : parts_)
    if (p >= static_cast<long long>(j)) ++count;
  return count;
}

Partition Partition::conjugate() const {
  std::vector<long long> conj;
  if (!parts_.empty()) {
    conj.assign(static_cast<std::size_t>(parts_[0]), 0);
    for (long long p : parts_)
      for (long long j = 0; j < p; ++j) ++conj[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(conj));
}

bool Partition::contains(const Partition& mu) const {
  if (mu.length() > length()) return false;
  for (std::size_t i = 0; i < mu.length(); ++i)
    if (mu.parts_[i] > parts_[i]) return false;
  return true;
}

long long Partition::diagonal_length() const {
  long long d = 0;
  while (row(static_cast<std::size_t>(d) + 1) >= d + 1) ++d;
  return d;
}

std::string Partition::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

ThetaCoordinates::ThetaCoordinates(std::map<int, long long> entries)
    : entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second == 0)
      it = entries_.erase(it);
    else if (it->second < 0)
      throw std::invalid_argument("theta coordinates must be nonnegative");
    else
      ++it;
  }
}

long long ThetaCoordinates::at(int doubled_index) const {
  auto it = entries_.find(doubled_index);
  return it == entries_.end() ? 0 : it->second;
}

long long ThetaCoordinates::total() const {
  long long s = 0;
  for (const auto& [d, v] : entries_) s += v;
  return s;
}

ThetaCoordinates theta(const Partition& mu) {
  Partition conj = mu.conjugate();
  std::map<int, long long> entries;
  for (long long i = 1;; ++i) {
    long long half = std::max<long long>(conj.row(static_cast<std::size_t>(i)) - i + 1, 0);
    long long whole = std::max<long long>(mu.row(static_cast<std::size_t>(i)) - i, 0);
    if (half == 0 && whole == 0) break;
    if (half != 0) entries[static_cast<int>(2 * i - 1)] = half;
    if (whole != 0) entries[static_cast<int>(2 * i)] = whole;
  }
  return ThetaCoordinates(std::move(entries));
}

bool is_hook(const Partition& lambda, long long n, long long m) {
  return lambda.row(static_cast<std::size_t>(n) + 1) <= m;
}

std::vector<long long> sharp(const Partition& lambda, long long n, long long m) {
  if (!is_hook(lambda, n, m))
    throw NonHookError("partition " + lambda.str() + " is not (" + std::to_string(n) + "|" +
                       std::to_string(m) + ")-hook");
  std::vector<long long> labels;
  labels.reserve(static_cast<std::size_t>(n + m));
  for (long long i = 1; i <= n; ++i) labels.push_back(lambda.row(static_cast<std::size_t>(i)));
  std::vector<long long> below;
  for (long long i = n + 1; lambda.row(static_cast<std::size_t>(i)) > 0; ++i)
    below.push_back(lambda.row(static_cast<std::size_t>(i)));
  Partition nu = Partition(std::move(below)).conjugate();
  for (long long j = 1; j <= m; ++j) labels.push_back(nu.row(static_cast<std::size_t>(j)));
  return labels;
}

Partition sharp_inverse(const std::vector<long long>& labels, long long n, long long m) {
  if (static_cast<long long>(labels.size()) != n + m)
    throw std::invalid_argument("expected exactly n+m labels");
  std::vector<long long> head(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<long long> nu(labels.begin() + static_cast<std::ptrdiff_t>(n), labels.end());
  Partition below = Partition(std::move(nu)).conjugate();
  for (long long p : below.parts()) head.push_back(p);
  return Partition(std::move(head));
}

std::vector<Partition> subpartitions(const Partition& lambda) {
  std::vector<Partition> out;
  std::vector<long long> current;
  auto recurse = [&](auto&& self, std::size_t row, long long cap) -> void {
    out.emplace_back(current);
    if (row >= lambda.length()) return;
    long long bound = std::min(cap, lambda.parts()[row]);
    for (long long p = bound; p >= 1; --p) {
      current.push_back(p);
      self(self, row + 1, p);
      current.pop_back();
    }
  };
  recurse(recurse, 0, lambda.empty() ? 0 : lambda.parts()[0]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> partitions_of(long long n) {
  std::vector<Partition> out;
  std::vector<long long> current;
  auto recurse = [&](auto&& self, long long remaining, long long cap) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (long long p = std::min(cap, remaining); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  if (n >= 0) recurse(recurse, n, n);
  return out;
}

}  // namespace superdual
