#include "textlab/rank_sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace textlab {

RankDistribution RankDistribution::power_law(std::uint32_t vocab_size, double exponent) {
  if (vocab_size < 1) throw std::domain_error("rank distribution needs vocab_size >= 1");
  if (!(exponent >= 0.0) || !std::isfinite(exponent))
    throw std::domain_error("rank distribution needs a finite exponent >= 0");
  std::vector<double> w(vocab_size);
  for (std::uint32_t r = 1; r <= vocab_size; ++r)
    w[r - 1] = std::pow(static_cast<double>(r), -exponent);
  RankDistribution d;
  d.exponent_ = exponent;
  d.empirical_ = false;
  d.finalize(std::move(w));
  return d;
}

RankDistribution RankDistribution::from_table(std::vector<double> weights) {
  if (weights.empty()) throw std::domain_error("rank distribution needs at least one weight");
  for (double x : weights)
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::domain_error("rank distribution weights must be finite and > 0");
  RankDistribution d;
  d.empirical_ = true;
  d.finalize(std::move(weights));
  return d;
}

void RankDistribution::finalize(std::vector<double> weights) {
  const std::size_t v = weights.size();
  // Sum small-to-large (tail first) for an accurate normalizer.
  double total = 0.0;
  for (std::size_t i = v; i-- > 0;) total += weights[i];
  probs_ = std::move(weights);
  for (double& p : probs_) p /= total;

  cum_.assign(v + 1, 0.0);
  for (std::size_t r = 1; r <= v; ++r) cum_[r] = cum_[r - 1] + probs_[r - 1];
  cum_[v] = 1.0;

  // Tail-accumulated survival: surv_[r] = sum_{r' > r} P(r').
  surv_.assign(v + 1, 0.0);
  for (std::size_t r = v; r-- > 0;) surv_[r] = surv_[r + 1] + probs_[r];
}

double RankDistribution::probability(Rank r) const {
  if (r < 1 || r > vocab_size()) throw std::domain_error("rank out of range");
  return probs_[r - 1];
}

double RankDistribution::cumulative(std::uint32_t r) const {
  if (r > vocab_size()) throw std::domain_error("rank out of range");
  return cum_[r];
}

double RankDistribution::survival(std::uint32_t r) const {
  if (r > vocab_size()) throw std::domain_error("rank out of range");
  return surv_[r];
}

double RankDistribution::survival_at(double w) const {
  const double v = static_cast<double>(vocab_size());
  if (w <= 0.0) return 1.0;
  if (w >= v) return 0.0;
  const double k = std::floor(w);
  const auto i = static_cast<std::uint32_t>(k);
  // Between integers the cumulative is linear in w with slope P(i+1).
  return surv_[i] - (w - k) * probs_[i];
}

Rank RankDistribution::sample(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cum_.begin() + 1, cum_.end(), u);
  return static_cast<Rank>(it - cum_.begin());
}

std::uint64_t draw_r_star(double z, Rng& rng) {
  if (!(z > 0.0) || z > 1.0) throw std::domain_error("memory draw needs 0 < z <= 1");
  // Inverse CDF of the geometric law. For z = 1, log1p(-1) = -inf and the
  // quotient underflows to +0, so the branch-free form still returns 1.
  const double u = uniform01_open(rng);
  const double q = std::log(u) / std::log1p(-z);
  return 1 + static_cast<std::uint64_t>(q);
}

namespace detail {

PresenceFenwick::PresenceFenwick(std::uint32_t n)
    : n_(n), lift_(n == 0 ? 0 : std::bit_floor(n)), tree_(n + 1, 0) {}

void PresenceFenwick::set(std::uint32_t pos) {
  for (std::uint32_t i = pos; i <= n_; i += i & (~i + 1)) ++tree_[i];
  ++ones_;
}

void PresenceFenwick::clear(std::uint32_t pos) {
  for (std::uint32_t i = pos; i <= n_; i += i & (~i + 1)) --tree_[i];
  --ones_;
}

std::uint32_t PresenceFenwick::prefix_ones(std::uint32_t pos) const {
  std::uint32_t s = 0;
  for (std::uint32_t i = pos; i > 0; i -= i & (~i + 1)) s += tree_[i];
  return s;
}

std::uint32_t PresenceFenwick::select_absent(std::uint32_t k) const {
  // Binary lifting: extend the prefix while it still holds fewer than k
  // absent slots. Absent slots in (pos, pos + step] = step - ones in span.
  std::uint32_t pos = 0;
  std::uint32_t remaining = k;
  for (std::uint32_t step = lift_; step > 0; step >>= 1) {
    const std::uint32_t next = pos + step;
    if (next > n_) continue;
    const std::uint32_t zeros = step - tree_[next];
    if (zeros < remaining) {
      pos = next;
      remaining -= zeros;
    }
  }
  return pos + 1;
}

}  // namespace detail

RankState::RankState(std::uint32_t vocab_size) : RankState(vocab_size, {}) {}

RankState::RankState(std::uint32_t vocab_size, const std::vector<Rank>& baseline)
    : vocab_(vocab_size),
      counts_(vocab_size, 0),
      r0_(vocab_size),
      term_at_r0_(vocab_size),
      present_(vocab_size) {
  if (vocab_size < 1) throw std::domain_error("rank state needs vocab_size >= 1");
  if (baseline.empty()) {
    for (TermId t = 0; t < vocab_; ++t) {
      r0_[t] = t + 1;
      term_at_r0_[t] = t;
    }
  } else {
    if (baseline.size() != vocab_)
      throw std::domain_error("baseline ranking size must match vocab_size");
    std::vector<bool> seen(vocab_, false);
    for (TermId t = 0; t < vocab_; ++t) {
      const Rank r = baseline[t];
      if (r < 1 || r > vocab_ || seen[r - 1])
        throw std::domain_error("baseline ranking must be a permutation of 1..V");
      seen[r - 1] = true;
      r0_[t] = r;
      term_at_r0_[r - 1] = t;
    }
  }
}

std::uint32_t RankState::count(TermId t) const {
  if (t >= vocab_) throw std::domain_error("term id out of range");
  return counts_[t];
}

Rank RankState::baseline_rank(TermId t) const {
  if (t >= vocab_) throw std::domain_error("term id out of range");
  return r0_[t];
}

TermId RankState::term_at_rank(Rank r) const {
  if (r < 1 || r > vocab_) throw std::domain_error("rank out of range");
  const auto head = static_cast<std::uint32_t>(head_.size());
  if (r <= head) return head_.find_by_order(r - 1)->second;
  // Tail: the (r - head)-th zero-count term in baseline order.
  return term_at_r0_[present_.select_absent(r - head) - 1];
}

Rank RankState::rank_of(TermId t) const {
  if (t >= vocab_) throw std::domain_error("term id out of range");
  if (counts_[t] > 0) {
    const auto ord = head_.order_of_key(detail::HeadKey{counts_[t], r0_[t]});
    return static_cast<Rank>(ord + 1);
  }
  const std::uint32_t zeros_before = r0_[t] - present_.prefix_ones(r0_[t]);
  return static_cast<Rank>(head_.size() + zeros_before);
}

void RankState::increment(TermId t) {
  if (t >= vocab_) throw std::domain_error("term id out of range");
  const std::uint32_t c = counts_[t];
  if (c == 0) {
    present_.set(r0_[t]);
  } else {
    head_.erase(detail::HeadKey{c, r0_[t]});
  }
  counts_[t] = c + 1;
  head_[detail::HeadKey{c + 1, r0_[t]}] = t;
}

void RankState::reset_suffix(std::uint64_t r_star) {
  if (r_star < 1 || r_star > static_cast<std::uint64_t>(vocab_) + 1)
    throw std::domain_error("reset rank out of range");
  const auto head = static_cast<std::uint64_t>(head_.size());
  if (r_star > head) return;  // suffix holds only zero-count terms already
  // Collect the affected head entries first: erasing while iterating the
  // order-statistic tree would invalidate the walk.
  std::vector<detail::HeadKey> dropped;
  dropped.reserve(head - (r_star - 1));
  for (auto it = head_.find_by_order(r_star - 1); it != head_.end(); ++it)
    dropped.push_back(it->first);
  for (const auto& key : dropped) {
    const TermId t = head_[key];
    counts_[t] = 0;
    present_.clear(key.r0);
    head_.erase(key);
  }
}

}  // namespace textlab
