#include "superdual/kl.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace superdual {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

KLContext::KLContext(CoxeterType type, int rank) : type_(type), rank_(rank) {
  if (rank < 1) throw std::invalid_argument("KL context needs rank >= 1");
  intern(SignedPerm::identity(type_, rank_));
}

void KLContext::check_group(const SignedPerm& w) const {
  if (w.type() != type_ || w.rank() != rank_) {
    throw std::invalid_argument("element belongs to a different group than this context");
  }
}

KLContext::Id KLContext::intern(const SignedPerm& w) {
  auto it = id_of_window_.find(w.window());
  if (it != id_of_window_.end()) return it->second;
  const Id id = static_cast<Id>(elems_.size());
  elems_.push_back(w);
  lengths_.push_back(w.length());
  id_of_window_.emplace(w.window(), id);
  return id;
}

const KLContext::Column& KLContext::column(Id wid) {
  if (auto it = columns_.find(wid); it != columns_.end()) return it->second;
  const SignedPerm w = elem(wid);
  Column col;
  if (w.is_identity()) {
    col.emplace(wid, LaurentPoly(1));
    return columns_.emplace(wid, std::move(col)).first->second;
  }
  const int s = w.right_descents().front();
  const Id vid = intern(w.right_gen(s));
  const long long lw = lengths_[wid];
  const long long lv = lengths_[vid];
  const Column& colv = column(vid);

  // The lower Bruhat interval of w is exactly keys(colv) united with its
  // image under right multiplication by s.
  std::set<Id> domain;
  for (const auto& [zid, poly] : colv) {
    domain.insert(zid);
    domain.insert(intern(elem(zid).right_gen(s)));
  }
  for (const Id xid : domain) {
    const SignedPerm& x = elem(xid);
    const bool descent = x.right_descent(s);
    const Id xsid = intern(x.right_gen(s));
    auto lookup = [&colv](Id id) {
      auto it = colv.find(id);
      return it == colv.end() ? LaurentPoly() : it->second;
    };
    const LaurentPoly p =
        lookup(xsid).shifted(descent ? 0 : 1) + lookup(xid).shifted(descent ? 1 : 0);
    if (!p.is_zero()) col[xid] = p;
  }
  for (const auto& [zid, pz] : colv) {
    if (!elem(zid).right_descent(s)) continue;
    const long long diff = lv - lengths_[zid];
    if (diff % 2 == 0) continue;
    const long long m = pz.coeff(static_cast<int>((diff - 1) / 2));
    if (m == 0) continue;
    const int shift = static_cast<int>((lw - lengths_[zid]) / 2);
    const Column& colz = column(zid);
    for (const auto& [xid, pxz] : colz) {
      auto it = col.find(xid);
      if (it == col.end()) {
        col[xid] = -(LaurentPoly(m) * pxz.shifted(shift));
      } else {
        it->second -= LaurentPoly(m) * pxz.shifted(shift);
        if (it->second.is_zero()) col.erase(it);
      }
    }
  }
  auto self = col.find(wid);
  if (self == col.end() || self->second != LaurentPoly(1)) {
    throw std::logic_error("KL recursion lost the unit diagonal entry");
  }
  return columns_.emplace(wid, std::move(col)).first->second;
}

LaurentPoly KLContext::kl_locked(const SignedPerm& x, const SignedPerm& w) {
  if (x == w) return LaurentPoly(1);
  if (x.length() >= w.length()) return LaurentPoly();
  const Id wid = intern(w);
  const Id xid = intern(x);
  const Column& col = column(wid);
  auto it = col.find(xid);
  return it == col.end() ? LaurentPoly() : it->second;
}

LaurentPoly KLContext::kl_polynomial(const SignedPerm& x, const SignedPerm& w) {
  check_group(x);
  check_group(w);
  if (x == w) return LaurentPoly(1);
  if (x.length() >= w.length()) return LaurentPoly();
  {
    std::shared_lock lock(mutex_);
    if (auto wit = id_of_window_.find(w.window()); wit != id_of_window_.end()) {
      if (auto cit = columns_.find(wit->second); cit != columns_.end()) {
        auto xit = id_of_window_.find(x.window());
        if (xit == id_of_window_.end()) return LaurentPoly();
        auto pit = cit->second.find(xit->second);
        return pit == cit->second.end() ? LaurentPoly() : pit->second;
      }
    }
    if (auto lit = loaded_.find({x.window(), w.window()}); lit != loaded_.end()) {
      return lit->second;
    }
  }
  std::unique_lock lock(mutex_);
  return kl_locked(x, w);
}

LaurentPoly KLContext::r_ids(Id xid, Id wid) {
  if (xid == wid) return LaurentPoly(1);
  if (lengths_[xid] >= lengths_[wid]) return LaurentPoly();
  if (auto it = r_memo_.find({xid, wid}); it != r_memo_.end()) return it->second;
  const SignedPerm& w = elem(wid);
  const int s = w.right_descents().front();
  const Id vid = intern(w.right_gen(s));
  const SignedPerm& x = elem(xid);
  const Id xsid = intern(x.right_gen(s));
  LaurentPoly r;
  if (x.right_descent(s)) {
    r = r_ids(xsid, vid);
  } else {
    r = (LaurentPoly::q() - LaurentPoly(1)) * r_ids(xid, vid) +
        LaurentPoly::q() * r_ids(xsid, vid);
  }
  r_memo_.emplace(std::make_pair(xid, wid), r);
  return r;
}

LaurentPoly KLContext::r_polynomial(const SignedPerm& x, const SignedPerm& w) {
  check_group(x);
  check_group(w);
  std::unique_lock lock(mutex_);
  return r_ids(intern(x), intern(w));
}

long long KLContext::mu(const SignedPerm& x, const SignedPerm& w) {
  check_group(x);
  check_group(w);
  const long long diff = w.length() - x.length();
  if (diff <= 0 || diff % 2 == 0) return 0;
  return kl_polynomial(x, w).coeff(static_cast<int>((diff - 1) / 2));
}

const KLContext::Column& KLContext::antispherical_column(const std::set<int>& J, Id wid) {
  auto& table = antispherical_[J];
  if (auto it = table.find(wid); it != table.end()) return it->second;
  const SignedPerm w = elem(wid);
  Column col;
  if (w.is_identity()) {
    col.emplace(wid, LaurentPoly(1));
    return table.emplace(wid, std::move(col)).first->second;
  }
  const int s = w.right_descents().front();
  // A minimal left-coset representative stays minimal under a right descent
  // (if ws = j v' with v' minimal and j in J, then j w = v' s would be
  // shorter than w), so v and, in the descent case below, xs index basis
  // vectors of the module.
  const Id vid = intern(w.right_gen(s));
  const long long lw = lengths_[wid];
  const long long lv = lengths_[vid];
  const Column& colv = antispherical_column(J, vid);

  // Everything below w in the module's index set is reachable from the
  // column of v by right multiplication with s, when that stays minimal.
  std::set<Id> domain;
  for (const auto& [zid, poly] : colv) {
    domain.insert(zid);
    const SignedPerm zs = elem(zid).right_gen(s);
    if (is_min_coset_rep_left(zs, J)) domain.insert(intern(zs));
  }
  for (const Id xid : domain) {
    const SignedPerm x = elem(xid);
    auto lookup = [&colv](Id id) {
      auto it = colv.find(id);
      return it == colv.end() ? LaurentPoly() : it->second;
    };
    LaurentPoly base;
    if (x.right_descent(s)) {
      base = lookup(intern(x.right_gen(s))) + lookup(xid).shifted(1);
    } else {
      const SignedPerm xs = x.right_gen(s);
      if (is_min_coset_rep_left(xs, J)) {
        base = lookup(intern(xs)).shifted(1) + lookup(xid);
      }
      // Otherwise T_s acts on m_x by -1, so (T_s + 1) annihilates it and
      // this basis vector receives nothing from the product.
    }
    if (!base.is_zero()) col[xid] = base;
  }
  for (const auto& [yid, py] : colv) {
    if (!elem(yid).right_descent(s)) continue;
    const long long diff = lv - lengths_[yid];
    if (diff % 2 == 0) continue;
    const long long m = py.coeff(static_cast<int>((diff - 1) / 2));
    if (m == 0) continue;
    const int shift = static_cast<int>((lw - lengths_[yid]) / 2);
    const Column& coly = antispherical_column(J, yid);
    for (const auto& [xid, pxy] : coly) {
      auto it = col.find(xid);
      if (it == col.end()) {
        col[xid] = -(LaurentPoly(m) * pxy.shifted(shift));
      } else {
        it->second -= LaurentPoly(m) * pxy.shifted(shift);
        if (it->second.is_zero()) col.erase(it);
      }
    }
  }
  auto self = col.find(wid);
  if (self == col.end() || self->second != LaurentPoly(1)) {
    throw std::logic_error("antispherical recursion lost the unit diagonal entry");
  }
  for (const auto& [xid, p] : col) {
    if (p.min_degree() < 0 || (xid != wid && 2 * p.max_degree() + 1 > lw - lengths_[xid])) {
      throw std::logic_error("antispherical recursion broke the degree bound");
    }
    for (const auto& [k, c] : p.coeffs()) {
      if (c < 0) throw std::logic_error("antispherical polynomial has a negative coefficient");
    }
  }
  return table.emplace(wid, std::move(col)).first->second;
}

LaurentPoly KLContext::parabolic_kl(const std::set<int>& J, const SignedPerm& x,
                                    const SignedPerm& w) {
  check_group(x);
  check_group(w);
  if (!is_min_coset_rep_left(x, J) || !is_min_coset_rep_left(w, J)) {
    throw std::invalid_argument(
        "parabolic KL needs minimal-length left-coset representatives");
  }
  if (x == w) return LaurentPoly(1);
  if (x.length() >= w.length()) return LaurentPoly();
  std::unique_lock lock(mutex_);
  const Id wid = intern(w);
  const Id xid = intern(x);
  const Column& col = antispherical_column(J, wid);
  auto it = col.find(xid);
  return it == col.end() ? LaurentPoly() : it->second;
}

LaurentPoly KLContext::parabolic_kl_by_sum(const std::set<int>& J, const SignedPerm& x,
                                           const SignedPerm& w) {
  check_group(x);
  check_group(w);
  if (!is_min_coset_rep_left(x, J) || !is_min_coset_rep_left(w, J)) {
    throw std::invalid_argument(
        "parabolic KL needs minimal-length left-coset representatives");
  }
  std::unique_lock lock(mutex_);
  auto git = levi_groups_.find(J);
  if (git == levi_groups_.end()) {
    git = levi_groups_.emplace(J, parabolic_subgroup_elements(type_, rank_, J)).first;
  }
  LaurentPoly n;
  for (const SignedPerm& y : git->second) {
    const LaurentPoly p = kl_locked(y * x, w);
    if (p.is_zero()) continue;
    n += (y.length() % 2 == 0) ? p : -p;
  }
  return n;
}

bool KLContext::bruhat_ids(Id xid, Id wid) {
  if (xid == wid) return true;
  if (lengths_[xid] >= lengths_[wid]) return false;
  const std::uint64_t key = pair_key(xid, wid);
  if (auto it = bruhat_memo_.find(key); it != bruhat_memo_.end()) return it->second;
  const SignedPerm& w = elem(wid);
  int s = -1;
  const int first = (type_ == CoxeterType::D && rank_ < 2) ? 1 : 0;
  for (int i = first; i < rank_; ++i) {
    if (w.left_descent(i)) {
      s = i;
      break;
    }
  }
  const Id swid = intern(w.left_gen(s));
  const SignedPerm& x = elem(xid);
  const SignedPerm sx = x.left_gen(s);
  const bool result = sx.length() < lengths_[xid] ? bruhat_ids(intern(sx), swid)
                                                  : bruhat_ids(xid, swid);
  bruhat_memo_.emplace(key, result);
  return result;
}

bool KLContext::bruhat(const SignedPerm& x, const SignedPerm& w) {
  check_group(x);
  check_group(w);
  if (x == w) return true;
  {
    std::shared_lock lock(mutex_);
    auto xit = id_of_window_.find(x.window());
    auto wit = id_of_window_.find(w.window());
    if (xit != id_of_window_.end() && wit != id_of_window_.end()) {
      if (auto mit = bruhat_memo_.find(pair_key(xit->second, wit->second));
          mit != bruhat_memo_.end()) {
        return mit->second;
      }
    }
  }
  std::unique_lock lock(mutex_);
  return bruhat_ids(intern(x), intern(w));
}

std::size_t KLContext::cached_polynomials() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [wid, col] : columns_) n += col.size();
  for (const auto& [J, table] : antispherical_) {
    for (const auto& [wid, col] : table) n += col.size();
  }
  return n;
}

std::size_t KLContext::save_cache(const std::filesystem::path& file) const {
  std::shared_lock lock(mutex_);
  std::vector<Id> wids;
  wids.reserve(columns_.size());
  for (const auto& [wid, col] : columns_) wids.push_back(wid);
  std::sort(wids.begin(), wids.end(), [this](Id a, Id b) {
    return elems_[a].window() < elems_[b].window();
  });
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open cache file for writing: " + file.string());
  std::size_t count = 0;
  for (const Id wid : wids) {
    for (const auto& [xid, poly] : columns_.at(wid)) {
      nlohmann::json rec;
      rec["v"] = 1;
      rec["type"] = to_string(type_);
      rec["rank"] = rank_;
      rec["x"] = elems_[xid].window();
      rec["w"] = elems_[wid].window();
      std::vector<long long> coeffs(static_cast<std::size_t>(poly.max_degree()) + 1, 0);
      for (const auto& [e, c] : poly.coeffs()) coeffs[static_cast<std::size_t>(e)] = c;
      rec["coeffs"] = coeffs;
      out << rec.dump() << '\n';
      ++count;
    }
  }
  return count;
}

std::size_t KLContext::load_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return 0;
  std::unique_lock lock(mutex_);
  std::size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const nlohmann::json rec = nlohmann::json::parse(line);
      if (rec.value("v", 0) != 1) continue;
      if (rec.value("type", std::string()) != to_string(type_)) continue;
      if (rec.value("rank", -1) != rank_) continue;
      const SignedPerm x(type_, rec.at("x").get<std::vector<int>>());
      const SignedPerm w(type_, rec.at("w").get<std::vector<int>>());
      const auto coeffs = rec.at("coeffs").get<std::vector<long long>>();
      LaurentPoly p;
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        p += LaurentPoly::monomial(coeffs[k], static_cast<int>(k));
      }
      loaded_[{x.window(), w.window()}] = p;
      ++count;
    } catch (const std::exception&) {
      continue;  // malformed or foreign record
    }
  }
  return count;
}

}  // namespace superdual
