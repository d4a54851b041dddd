#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "superdual/characters.hpp"

namespace superdual {

namespace {

// A polynomial over a fixed ordered variable list, keyed by exponent vector.
using ExpPoly = std::map<std::vector<long long>, long long>;

ExpPoly unit_poly(int nvars) {
  ExpPoly out;
  out[std::vector<long long>(nvars, 0)] = 1;
  return out;
}

// Semistandard fillings of the skew shape lambda/nu with entries 1..k:
// weakly increasing along rows, strictly increasing down columns.
ExpPoly tableaux_poly(const Partition& lam, const Partition& nu, int k) {
  const auto& outer = lam.parts();
  const std::size_t rows = outer.size();
  std::vector<long long> inner(rows, 0);
  for (std::size_t i = 0; i < nu.parts().size(); ++i) inner[i] = nu.parts()[i];

  struct Cell {
    std::size_t r;
    long long j;
  };
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows; ++r)
    for (long long j = inner[r]; j < outer[r]; ++j) cells.push_back({r, j});

  if (cells.empty()) return unit_poly(k);
  ExpPoly out;
  if (k == 0) return out;

  std::vector<std::vector<int>> grid(rows);
  for (std::size_t r = 0; r < rows; ++r) grid[r].assign(static_cast<std::size_t>(outer[r]), 0);
  std::vector<long long> exps(static_cast<std::size_t>(k), 0);

  auto rec = [&](auto&& self, std::size_t ci) -> void {
    if (ci == cells.size()) {
      out[exps] += 1;
      return;
    }
    const auto [r, j] = cells[ci];
    int lo = 1;
    if (j > inner[r]) lo = std::max(lo, grid[r][static_cast<std::size_t>(j - 1)]);
    if (r > 0 && j >= inner[r - 1] && j < outer[r - 1])
      lo = std::max(lo, grid[r - 1][static_cast<std::size_t>(j)] + 1);
    for (int v = lo; v <= k; ++v) {
      grid[r][static_cast<std::size_t>(j)] = v;
      ++exps[static_cast<std::size_t>(v - 1)];
      self(self, ci + 1);
      --exps[static_cast<std::size_t>(v - 1)];
    }
  };
  rec(rec, 0);
  return out;
}

// Complete homogeneous symmetric polynomial of degree r in k variables.
ExpPoly h_poly(long long r, int k) {
  ExpPoly out;
  if (r < 0) return out;
  if (k == 0) {
    if (r == 0) out[{}] = 1;
    return out;
  }
  std::vector<long long> e(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self, int pos, long long left) -> void {
    if (pos == k - 1) {
      e[static_cast<std::size_t>(pos)] = left;
      out[e] += 1;
      return;
    }
    for (long long c = 0; c <= left; ++c) {
      e[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, left - c);
    }
    e[static_cast<std::size_t>(pos)] = 0;
  };
  rec(rec, 0, r);
  return out;
}

ExpPoly mul_poly(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<long long> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Determinant of the complete-homogeneous matrix h_{lam_i - nu_j - i + j},
// expanded row by row with memoized minors over column subsets.
ExpPoly determinant_poly(const Partition& lam, const Partition& nu, int k) {
  const std::size_t rows = lam.parts().size();
  if (rows == 0) return unit_poly(k);
  if (rows > 63) throw std::invalid_argument("determinant route limited to 63 rows");
  std::vector<long long> inner(rows, 0);
  for (std::size_t i = 0; i < nu.parts().size(); ++i) inner[i] = nu.parts()[i];

  std::vector<std::vector<ExpPoly>> h(rows, std::vector<ExpPoly>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
      h[i][j] = h_poly(lam.parts()[i] - inner[j] - static_cast<long long>(i) +
                           static_cast<long long>(j),
                       k);

  std::unordered_map<std::uint64_t, ExpPoly> memo;
  auto rec = [&](auto&& self, std::uint64_t mask) -> const ExpPoly& {
    auto found = memo.find(mask);
    if (found != memo.end()) return found->second;
    ExpPoly det;
    if (mask == 0) {
      det = unit_poly(k);
    } else {
      const std::size_t r = rows - static_cast<std::size_t>(__builtin_popcountll(mask));
      int sign = 1;
      for (std::size_t j = 0; j < rows; ++j) {
        if (!(mask >> j & 1)) continue;
        if (!h[r][j].empty()) {
          const ExpPoly& minor = self(self, mask & ~(1ULL << j));
          for (const auto& [e, c] : mul_poly(h[r][j], minor)) det[e] += sign * c;
        }
        sign = -sign;
      }
      for (auto it = det.begin(); it != det.end();)
        it = it->second == 0 ? det.erase(it) : std::next(it);
    }
    return memo.emplace(mask, std::move(det)).first->second;
  };
  std::uint64_t full = rows == 64 ? ~0ULL : (1ULL << rows) - 1;
  return rec(rec, full);
}

// Tableau enumeration while the cell count is small, determinant beyond.
ExpPoly schur_core(const Partition& lam, const Partition& nu, int k) {
  return lam.size() - nu.size() <= 12 ? tableaux_poly(lam, nu, k)
                                      : determinant_poly(lam, nu, k);
}

void check_vars(const std::vector<int>& vars) {
  if (vars.empty()) throw std::invalid_argument("at least one variable index is required");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] <= 0) throw std::invalid_argument("variable indices must be positive");
    if (i > 0 && vars[i] <= vars[i - 1])
      throw std::invalid_argument("variable indices must be strictly increasing");
  }
}

// The smallest head-free datum whose tail contains all named variables.
RootSystemSpec ambient_for(const std::vector<int>& vars) {
  bool any_int = false;
  bool any_half = false;
  int n = 1;
  for (int d : vars) {
    (idx::is_integer(d) ? any_int : any_half) = true;
    n = std::max(n, (d + 1) / 2);
  }
  TailType tail = any_int && any_half ? TailType::Full
                  : any_half          ? TailType::Super
                                      : TailType::Even;
  return RootSystemSpec(HeadType::B, 0, tail, n, {});
}

// Packages an exponent polynomial over the named variables (vars[i] is the
// doubled index of exponent slot i). The apex is the least upper bound of
// the terms: position-wise maxima of cumulative exponent sums taken in
// index order, de-cumulated. For a homogeneous symmetric polynomial every
// term lies below it by a nonnegative chain-root combination, which
// add_term re-verifies term by term.
FormalCharacter package(const ExpPoly& poly, const std::vector<int>& vars) {
  RootSystemSpec spec =
      vars.empty() ? RootSystemSpec(HeadType::B, 0, TailType::Even, 1, {}) : ambient_for(vars);
  if (poly.empty()) return FormalCharacter(std::move(spec), Weight(), kExactDepth);

  std::vector<std::size_t> ord(vars.size());
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });

  std::vector<long long> cmax(vars.size(), 0);
  bool first = true;
  for (const auto& [e, c] : poly) {
    long long run = 0;
    for (std::size_t p = 0; p < ord.size(); ++p) {
      run += e[ord[p]];
      cmax[p] = first ? run : std::max(cmax[p], run);
    }
    first = false;
  }
  Weight apex;
  long long prev = 0;
  for (std::size_t p = 0; p < ord.size(); ++p) {
    apex.set_coord(vars[ord[p]], Rational(cmax[p] - prev));
    prev = cmax[p];
  }

  FormalCharacter out(std::move(spec), std::move(apex), kExactDepth);
  for (const auto& [e, c] : poly) {
    Weight w;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (e[i] != 0) w.set_coord(vars[i], Rational(e[i]));
    out.add_term(w, c);
  }
  return out;
}

}  // namespace

FormalCharacter schur_by_tableaux(const Partition& lambda, const std::vector<int>& vars) {
  check_vars(vars);
  return package(tableaux_poly(lambda, Partition{}, static_cast<int>(vars.size())), vars);
}

FormalCharacter schur_by_determinant(const Partition& lambda, const std::vector<int>& vars) {
  check_vars(vars);
  return package(determinant_poly(lambda, Partition{}, static_cast<int>(vars.size())), vars);
}

FormalCharacter schur(const Partition& lambda, const std::vector<int>& vars) {
  check_vars(vars);
  return package(schur_core(lambda, Partition{}, static_cast<int>(vars.size())), vars);
}

FormalCharacter skew_schur_by_tableaux(const Partition& lambda, const Partition& nu,
                                       const std::vector<int>& vars) {
  check_vars(vars);
  if (!lambda.contains(nu)) throw std::invalid_argument("skew shape requires nu inside lambda");
  return package(tableaux_poly(lambda, nu, static_cast<int>(vars.size())), vars);
}

FormalCharacter skew_schur_by_determinant(const Partition& lambda, const Partition& nu,
                                          const std::vector<int>& vars) {
  check_vars(vars);
  if (!lambda.contains(nu)) throw std::invalid_argument("skew shape requires nu inside lambda");
  return package(determinant_poly(lambda, nu, static_cast<int>(vars.size())), vars);
}

FormalCharacter skew_schur(const Partition& lambda, const Partition& nu,
                           const std::vector<int>& vars) {
  check_vars(vars);
  if (!lambda.contains(nu)) throw std::invalid_argument("skew shape requires nu inside lambda");
  return package(schur_core(lambda, nu, static_cast<int>(vars.size())), vars);
}

FormalCharacter hook_schur(const Partition& lambda, int odd_count, int even_count) {
  if (odd_count < 0 || even_count < 0)
    throw std::invalid_argument("variable counts must be nonnegative");
  std::vector<int> vars;
  for (int i = 0; i < odd_count; ++i) vars.push_back(2 * i + 1);
  for (int j = 0; j < even_count; ++j) vars.push_back(2 * j + 2);

  const Partition conj = lambda.conjugate();
  ExpPoly total;
  for (const Partition& mu : subpartitions(lambda)) {
    ExpPoly odd_part = schur_core(mu, Partition{}, odd_count);
    if (odd_part.empty()) continue;
    ExpPoly even_part = schur_core(conj, mu.conjugate(), even_count);
    if (even_part.empty()) continue;
    for (const auto& [ea, ca] : odd_part) {
      for (const auto& [eb, cb] : even_part) {
        std::vector<long long> e;
        e.reserve(ea.size() + eb.size());
        e.insert(e.end(), ea.begin(), ea.end());
        e.insert(e.end(), eb.begin(), eb.end());
        total[e] += ca * cb;
      }
    }
  }
  return package(total, vars);
}

}  // namespace superdual
