#include "superdual/rootdata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "superdual/errors.hpp"

namespace superdual {

namespace {

/// Canonical root order: ascending maximal support index, then ascending
/// coefficient sum, then the structural weight order as a final tiebreak.
/// This reproduces the left-to-right reading of every head+tail diagram,
/// including the degenerate m = 0 ones (a fork's two roots share their
/// maximal index; the all-negative fork root sorts first).
bool root_less(const Weight& a, const Weight& b) {
  auto key = [](const Weight& w) {
    Rational sum;
    for (const auto& [d, c] : w.coords()) sum += c;
    return std::pair<int, Rational>(w.max_index(), sum);
  };
  auto ka = key(a);
  auto kb = key(b);
  if (ka.first != kb.first) return ka.first < kb.first;
  if (!(ka.second == kb.second)) return ka.second < kb.second;
  return a < b;
}

/// Serialization name of a head simple root: the chain roots
/// eps_j - eps_{j+1} are "alpha_j"; the unique non-chain head root (the end
/// root, or the all-negative fork root for head d) is "alpha_-1".
std::string head_root_name(const Weight& alpha) {
  const auto& c = alpha.coords();
  bool chain = c.size() == 2 && c.begin()->second == Rational(1) &&
               std::next(c.begin())->second == Rational(-1);
  return chain ? "alpha_" + std::to_string(alpha.min_index() / 2) : "alpha_-1";
}

}  // namespace

std::string to_string(HeadType h) {
  switch (h) {
    case HeadType::B: return "b";
    case HeadType::BBullet: return "b_bullet";
    case HeadType::C: return "c";
    case HeadType::D: return "d";
  }
  throw std::logic_error("unreachable head type");
}

std::string to_string(TailType t) {
  switch (t) {
    case TailType::Even: return "even";
    case TailType::Super: return "super";
    case TailType::Full: return "full";
  }
  throw std::logic_error("unreachable tail type");
}

HeadType head_from_string(std::string_view s) {
  if (s == "b") return HeadType::B;
  if (s == "b_bullet" || s == "b*") return HeadType::BBullet;
  if (s == "c") return HeadType::C;
  if (s == "d") return HeadType::D;
  throw std::invalid_argument("unknown head type: \"" + std::string(s) +
                              "\" (expected b, b_bullet, c, or d)");
}

TailType tail_from_string(std::string_view s) {
  if (s == "even") return TailType::Even;
  if (s == "super") return TailType::Super;
  if (s == "full") return TailType::Full;
  throw std::invalid_argument("unknown tail type: \"" + std::string(s) +
                              "\" (expected even, super, or full)");
}

RootSystemSpec::RootSystemSpec(HeadType head, int m, TailType tail, int n,
                               std::vector<std::string> levi_head)
    : head_(head), m_(m), tail_(tail), n_(n), levi_head_(std::move(levi_head)) {
  if (m_ < 0) throw std::invalid_argument("head rank m must be nonnegative");
  if (n_ < 1) throw std::invalid_argument("tail rank n must be positive");
  if (head_ == HeadType::D && m_ == 1)
    throw UncoveredVariantError("head d requires m = 0 or m >= 2");
  if (m_ == 0 && !levi_head_.empty())
    throw std::invalid_argument("Y0 must be empty when m = 0");
  build_indices();
  build_roots();
  build_solver();
  build_levi();
}

void RootSystemSpec::build_indices() {
  for (int i = -m_; i <= -1; ++i) indices_.push_back(2 * i);
  switch (tail_) {
    case TailType::Even:
      for (int j = 1; j <= n_; ++j) indices_.push_back(2 * j);
      break;
    case TailType::Super:
      for (int j = 1; j <= n_; ++j) indices_.push_back(2 * j - 1);
      break;
    case TailType::Full:
      for (int d = 1; d <= 2 * n_; ++d) indices_.push_back(d);
      break;
  }
  for (std::size_t i = 0; i < indices_.size(); ++i) row_of_index_[indices_[i]] = i;
}

void RootSystemSpec::build_roots() {
  const bool long_on_integers = head_ == HeadType::BBullet || head_ == HeadType::C;
  const bool has_short = head_ == HeadType::B || head_ == HeadType::BBullet;

  for (std::size_t a = 0; a < indices_.size(); ++a) {
    int r = indices_[a];
    for (std::size_t b = a + 1; b < indices_.size(); ++b) {
      int s = indices_[b];
      positives_.push_back(Weight::unit(r) - Weight::unit(s));
      positives_.push_back(-(Weight::unit(r) + Weight::unit(s)));
    }
    if (long_on_integers == idx::is_integer(r)) positives_.push_back(Weight::term(r, -2));
    if (has_short) positives_.push_back(-Weight::unit(r));
  }
  std::sort(positives_.begin(), positives_.end(), root_less);

  std::set<Weight> pos_set(positives_.begin(), positives_.end());
  for (const Weight& gamma : positives_) {
    bool decomposable = false;
    for (const Weight& a : positives_) {
      if (pos_set.count(gamma - a)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simples_.push_back(gamma);
  }

  for (const Weight& alpha : simples_)
    if (alpha.max_index() < 0) head_simples_.push_back(alpha);
}

void RootSystemSpec::build_solver() {
  const std::size_t nrows = indices_.size();
  const std::size_t ncols = simples_.size();

  // M (columns = simple roots) augmented with the identity; row-reduce and
  // keep the accumulated elimination matrix plus pivot bookkeeping.
  std::vector<std::vector<Rational>> M(nrows, std::vector<Rational>(ncols));
  for (std::size_t j = 0; j < ncols; ++j)
    for (const auto& [d, c] : simples_[j].coords()) M[row_of_index_.at(d)][j] = c;

  elim_.assign(nrows, std::vector<Rational>(nrows));
  for (std::size_t i = 0; i < nrows; ++i) elim_[i][i] = Rational(1);
  pivot_col_of_row_.assign(nrows, -1);

  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t piv = row;
    while (piv < nrows && M[piv][col].is_zero()) ++piv;
    if (piv == nrows) continue;
    std::swap(M[piv], M[row]);
    std::swap(elim_[piv], elim_[row]);
    Rational inv = Rational(1) / M[row][col];
    for (auto& x : M[row]) x *= inv;
    for (auto& x : elim_[row]) x *= inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == row || M[i][col].is_zero()) continue;
      Rational f = M[i][col];
      for (std::size_t j = 0; j < ncols; ++j) M[i][j] -= f * M[row][j];
      for (std::size_t j = 0; j < nrows; ++j) elim_[i][j] -= f * elim_[row][j];
    }
    pivot_col_of_row_[row] = static_cast<int>(col);
    ++row;
  }
  if (row != ncols)
    throw std::logic_error("simple roots are not linearly independent for " + str());
}

void RootSystemSpec::build_levi() {
  // Resolve the Y0 names against the head simple roots.
  std::map<std::string, Weight> head_by_name;
  for (const Weight& alpha : head_simples_) head_by_name.emplace(head_root_name(alpha), alpha);

  std::vector<Weight> chosen;
  std::vector<std::string> canonical;
  std::set<std::string> seen;
  for (const std::string& name : levi_head_) {
    auto it = head_by_name.find(name);
    if (it == head_by_name.end())
      throw std::invalid_argument("unknown head simple root \"" + name + "\" for " + str());
    if (seen.insert(name).second) chosen.push_back(it->second);
  }
  canonical.assign(seen.begin(), seen.end());
  levi_head_ = std::move(canonical);

  // Y = Y0 together with the simple roots eps_r - eps_s on positive indices.
  std::set<Weight> levi_set(chosen.begin(), chosen.end());
  for (const Weight& alpha : simples_) {
    const auto& c = alpha.coords();
    if (c.size() == 2 && c.begin()->first > 0 && c.begin()->second == Rational(1) &&
        std::next(c.begin())->second == Rational(-1)) {
      levi_set.insert(alpha);
    }
  }
  for (const Weight& alpha : simples_)
    if (levi_set.count(alpha)) levi_simples_.push_back(alpha);

  // Positions of the Levi roots within the simple list.
  std::vector<bool> in_levi(simples_.size(), false);
  for (std::size_t j = 0; j < simples_.size(); ++j) in_levi[j] = levi_set.count(simples_[j]) > 0;

  for (const Weight& gamma : positives_) {
    auto coords = simple_coordinates(gamma);
    if (!coords)
      throw std::logic_error("positive root outside the simple-root span in " + str());
    bool inside = true;
    for (std::size_t j = 0; j < coords->size(); ++j) {
      if (!(*coords)[j].is_zero() && !in_levi[j]) {
        inside = false;
        break;
      }
    }
    if (inside)
      levi_positives_.push_back(gamma);
    else
      u_minus_.push_back(-gamma);
  }
}

int RootSystemSpec::root_parity(const Weight& root) const {
  const auto& c = root.coords();
  if (c.size() == 2) return idx::parity(c.begin()->first) ^ idx::parity(std::next(c.begin())->first);
  if (c.size() == 1) {
    Rational v = c.begin()->second;
    if (v == Rational(2) || v == Rational(-2)) return 0;
    int p = idx::parity(c.begin()->first);
    if (head_ == HeadType::BBullet || head_ == HeadType::C) p ^= 1;
    return p;
  }
  throw std::invalid_argument("not a root: " + root.str());
}

bool RootSystemSpec::is_isotropic(const Weight& root) {
  return bilinear_form(root, root).is_zero();
}

bool RootSystemSpec::is_positive_root(const Weight& w) const {
  return std::find(positives_.begin(), positives_.end(), w) != positives_.end();
}

std::optional<std::vector<Rational>> RootSystemSpec::simple_coordinates(const Weight& v) const {
  if (!v.level().is_zero()) return std::nullopt;
  std::vector<Rational> b(indices_.size());
  for (const auto& [d, c] : v.coords()) {
    auto it = row_of_index_.find(d);
    if (it == row_of_index_.end()) return std::nullopt;
    b[it->second] = c;
  }
  // w = elim_ * b; pivot rows give the coordinates, the rest must vanish.
  std::vector<Rational> coords(simples_.size());
  for (std::size_t i = 0; i < elim_.size(); ++i) {
    Rational w;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero() && !elim_[i][j].is_zero()) w += elim_[i][j] * b[j];
    if (pivot_col_of_row_[i] >= 0)
      coords[static_cast<std::size_t>(pivot_col_of_row_[i])] = w;
    else if (!w.is_zero())
      return std::nullopt;
  }
  return coords;
}

std::optional<long long> RootSystemSpec::principal_depth(const Weight& v) const {
  auto coords = simple_coordinates(v);
  if (!coords) return std::nullopt;
  long long depth = 0;
  for (const Rational& c : *coords) {
    if (!c.is_integer() || c.sign() < 0) return std::nullopt;
    depth += c.as_integer();
  }
  return depth;
}

std::string RootSystemSpec::str() const {
  std::string s = to_string(head_) + "(m=" + std::to_string(m_) + ")+" + to_string(tail_) +
                  "(n=" + std::to_string(n_) + ")";
  if (!levi_head_.empty()) {
    s += ", Y0={";
    for (std::size_t i = 0; i < levi_head_.size(); ++i) {
      if (i) s += ',';
      s += levi_head_[i];
    }
    s += '}';
  }
  return s;
}

RootSystemSpec with_tail(const RootSystemSpec& spec, TailType tail) {
  return RootSystemSpec(spec.head(), spec.m(), tail, spec.n(), spec.levi_head_names());
}

namespace {

Weight head_part(const RootSystemSpec& spec, const DominantTuple& t) {
  if (static_cast<int>(t.head_coeffs.size()) != spec.m())
    throw std::invalid_argument("expected exactly m head coefficients");
  Weight w;
  for (int i = 0; i < spec.m(); ++i) w.set_coord(2 * (i - spec.m()), t.head_coeffs[i]);

  // Dominant condition over Y0.
  std::map<std::string, Weight> head_by_name;
  for (const Weight& alpha : spec.head_simple_roots())
    head_by_name.emplace(head_root_name(alpha), alpha);
  for (const std::string& name : spec.levi_head_names()) {
    const Weight& alpha = head_by_name.at(name);
    Rational p = coroot_pairing(w, alpha);
    if (!p.is_integer() || p.sign() < 0)
      throw DomainError("tuple fails the dominant condition at " + name + ": pairing " +
                        p.str() + " is not a nonnegative integer");
  }
  w.set_level(t.level);
  return w;
}

}  // namespace

Weight make_weight_g(const RootSystemSpec& spec, const DominantTuple& t) {
  if (spec.tail() != TailType::Even)
    throw std::invalid_argument("make_weight_g requires an even-tail spec");
  if (static_cast<long long>(t.lam_plus.length()) > spec.n())
    throw std::invalid_argument("partition " + t.lam_plus.str() + " has more than n = " +
                                std::to_string(spec.n()) + " rows");
  Weight w = head_part(spec, t);
  for (std::size_t j = 1; j <= t.lam_plus.length(); ++j)
    w.set_coord(2 * static_cast<int>(j), Rational(t.lam_plus.row(j)));
  return w;
}

Weight make_weight_gbar(const RootSystemSpec& spec, const DominantTuple& t) {
  if (spec.tail() != TailType::Super)
    throw std::invalid_argument("make_weight_gbar requires a super-tail spec");
  Partition conj = t.lam_plus.conjugate();
  if (static_cast<long long>(conj.length()) > spec.n())
    throw std::invalid_argument("partition " + t.lam_plus.str() + " has first part above n = " +
                                std::to_string(spec.n()));
  Weight w = head_part(spec, t);
  for (std::size_t j = 1; j <= conj.length(); ++j)
    w.set_coord(2 * static_cast<int>(j) - 1, Rational(conj.row(j)));
  return w;
}

Weight make_weight_gtilde(const RootSystemSpec& spec, const DominantTuple& t) {
  if (spec.tail() != TailType::Full)
    throw std::invalid_argument("make_weight_gtilde requires a full-tail spec");
  ThetaCoordinates th = theta(t.lam_plus);
  if (!th.entries().empty() && th.entries().rbegin()->first > 2 * spec.n())
    throw std::invalid_argument("theta coordinates of " + t.lam_plus.str() +
                                " exceed tail rank n = " + std::to_string(spec.n()));
  Weight w = head_part(spec, t);
  for (const auto& [d, v] : th.entries()) w.set_coord(d, Rational(v));
  return w;
}

}  // namespace superdual
