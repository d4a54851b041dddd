#include "superdual/oddreflect.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace superdual {

BorelState::BorelState(const RootSystemSpec& spec)
    : simples_(spec.simple_roots()),
      positives_(spec.positive_roots().begin(), spec.positive_roots().end()) {
  parities_.reserve(simples_.size());
  for (const Weight& alpha : simples_) parities_.push_back(spec.root_parity(alpha));
}

bool BorelState::is_simple(const Weight& alpha) const {
  return std::find(simples_.begin(), simples_.end(), alpha) != simples_.end();
}

BorelState BorelState::odd_reflect(const Weight& alpha) const {
  auto it = std::find(simples_.begin(), simples_.end(), alpha);
  if (it == simples_.end())
    throw std::invalid_argument("cannot reflect: " + alpha.str() + " is not a simple root");
  std::size_t pos = static_cast<std::size_t>(it - simples_.begin());
  if (parities_[pos] != 1)
    throw std::invalid_argument("cannot odd-reflect at the even root " + alpha.str());
  if (!RootSystemSpec::is_isotropic(alpha))
    throw std::invalid_argument("cannot odd-reflect at the non-isotropic root " + alpha.str());

  BorelState next;
  next.simples_.reserve(simples_.size());
  next.parities_.reserve(simples_.size());
  for (std::size_t i = 0; i < simples_.size(); ++i) {
    const Weight& beta = simples_[i];
    if (i == pos) {
      next.simples_.push_back(-alpha);
      next.parities_.push_back(parities_[pos]);
    } else if (coroot_pairing(beta, alpha).is_zero()) {
      next.simples_.push_back(beta);
      next.parities_.push_back(parities_[i]);
    } else {
      next.simples_.push_back(beta + alpha);
      next.parities_.push_back(parities_[i] ^ parities_[pos]);
    }
  }
  next.positives_ = positives_;
  next.positives_.erase(alpha);
  next.positives_.insert(-alpha);
  next.history_ = history_;
  next.history_.push_back(alpha);
  return next;
}

BorelState BorelState::real_reflect(const Weight& alpha) const {
  auto it = std::find(simples_.begin(), simples_.end(), alpha);
  if (it == simples_.end())
    throw std::invalid_argument("cannot reflect: " + alpha.str() + " is not a simple root");
  std::size_t pos = static_cast<std::size_t>(it - simples_.begin());
  if (parities_[pos] != 0)
    throw std::invalid_argument("cannot real-reflect at the odd root " + alpha.str());

  BorelState next;
  next.simples_.reserve(simples_.size());
  for (const Weight& beta : simples_) next.simples_.push_back(reflect_weight(beta, alpha));
  next.parities_ = parities_;  // an even reflection never changes parities
  next.positives_ = positives_;
  next.positives_.erase(alpha);
  next.positives_.insert(-alpha);
  next.history_ = history_;
  next.history_.push_back(alpha);
  return next;
}

Weight reflect_weight(const Weight& w, const Weight& alpha) {
  if (bilinear_form(alpha, alpha).is_zero())
    throw std::invalid_argument("reflection hyperplane undefined for the isotropic root " +
                                alpha.str());
  return w - coroot_pairing(w, alpha) * alpha;
}

Weight update_highest_weight(const Weight& lam, const Weight& alpha) {
  return coroot_pairing(lam, alpha).is_zero() ? lam : lam - alpha;
}

std::vector<Weight> btilde_c_sequence(int n) {
  if (n < 1) throw std::invalid_argument("sequence rank must be at least 1");
  std::vector<Weight> seq;
  seq.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int k = 1; k <= n; ++k)
    for (int t = 1; t <= k; ++t)
      seq.push_back(Weight::unit(2 * (k - t) + 1) - Weight::unit(2 * k));
  return seq;
}

std::vector<Weight> btilde_s_sequence(int n) {
  if (n < 1) throw std::invalid_argument("sequence rank must be at least 1");
  std::vector<Weight> seq;
  seq.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int k = 1; k <= n; ++k)
    for (int t = 1; t <= k; ++t)
      seq.push_back(Weight::unit(2 * (k - t + 1)) - Weight::unit(2 * k + 1));
  return seq;
}

std::vector<Weight> apply_sequence_trace(const RootSystemSpec& spec, const Weight& lam,
                                         const std::vector<Weight>& seq) {
  std::vector<Weight> trace;
  trace.reserve(seq.size() + 1);
  trace.push_back(lam);
  BorelState state(spec);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      state = state.odd_reflect(seq[i]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("step " + std::to_string(i + 1) + ": " + e.what());
    }
    trace.push_back(update_highest_weight(trace.back(), seq[i]));
  }
  return trace;
}

Weight apply_sequence(const RootSystemSpec& spec, const Weight& lam,
                      const std::vector<Weight>& seq) {
  return apply_sequence_trace(spec, lam, seq).back();
}

}  // namespace superdual
