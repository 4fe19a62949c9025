#pragma once

#include <cstdint>
#include <vector>

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include "textlab/corpus.hpp"
#include "textlab/rng.hpp"

namespace textlab {

// Static distribution over ranks: P(r) = r^-gamma / Z for r in [1, V], or an
// empirical table. Ranks and terms are decoupled: this distribution never
// changes during generation, only the rank -> term map (RankState) does.
class RankDistribution {
 public:
  static RankDistribution power_law(std::uint32_t vocab_size, double exponent);
  // Normalizes the weights; every weight must be > 0.
  static RankDistribution from_table(std::vector<double> weights);

  std::uint32_t vocab_size() const { return static_cast<std::uint32_t>(probs_.size()); }
  double exponent() const { return exponent_; }
  bool is_empirical() const { return empirical_; }

  // P(r), 1 <= r <= V.
  double probability(Rank r) const;
  // F(r) = sum_{r' <= r} P(r'), defined for r in [0, V].
  double cumulative(std::uint32_t r) const;
  // 1 - F(r), accumulated from the tail so deep-tail values keep precision.
  double survival(std::uint32_t r) const;
  // survival at fractional w by linear interpolation of the cumulative.
  double survival_at(double w) const;

  // Draws a rank with probability P(r); inverse-CDF binary search.
  Rank sample(Rng& rng) const;

 private:
  std::vector<double> probs_;  // probs_[r-1] = P(r)
  std::vector<double> cum_;    // cum_[r] = F(r), cum_[V] = 1 exactly
  std::vector<double> surv_;   // surv_[r] = 1 - F(r), surv_[V] = 0 exactly
  double exponent_ = 1.0;
  bool empirical_ = false;

  void finalize(std::vector<double> weights);
};

// Geometric draw of the memory-reset rank: P(r*) = z (1-z)^(r*-1), mean 1/z.
// Inverse-CDF form r* = 1 + floor(ln u / ln(1-z)); z = 1 always yields 1.
// Requires 0 < z <= 1 (z = 0 means "never reset": callers skip the draw).
std::uint64_t draw_r_star(double z, Rng& rng);

namespace detail {

// Presence bitmap over baseline-rank positions with prefix counts and
// select-k-th-absent, both O(log V). Backs the implicit tail of zero-count
// terms in RankState.
class PresenceFenwick {
 public:
  PresenceFenwick() = default;
  explicit PresenceFenwick(std::uint32_t n);

  std::uint32_t size() const { return n_; }
  std::uint32_t ones() const { return ones_; }
  void set(std::uint32_t pos);    // pos in [1, n], must be absent
  void clear(std::uint32_t pos);  // pos in [1, n], must be present
  std::uint32_t prefix_ones(std::uint32_t pos) const;
  // Position of the k-th absent slot, k in [1, n - ones()].
  std::uint32_t select_absent(std::uint32_t k) const;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t ones_ = 0;
  std::uint32_t lift_ = 0;  // largest power of two <= n
  std::vector<std::uint32_t> tree_;
};

struct HeadKey {
  std::uint32_t count;
  Rank r0;
  bool operator==(const HeadKey&) const = default;
};

// Count descending, then baseline rank ascending.
struct HeadKeyLess {
  bool operator()(const HeadKey& a, const HeadKey& b) const {
    if (a.count != b.count) return a.count > b.count;
    return a.r0 < b.r0;
  }
};

using HeadTree =
    __gnu_pbds::tree<HeadKey, TermId, HeadKeyLess, __gnu_pbds::rb_tree_tag,
                     __gnu_pbds::tree_order_statistics_node_update>;

}  // namespace detail

// The dynamic word ordering of one generation chain: occurrence counts c(t),
// a fixed baseline ranking r0(t) that breaks count ties, and rank queries
// against the induced ordering (count descending, then r0 ascending).
//
// Terms with c > 0 live in an order-statistic tree; the zero-count majority
// stays implicit, ordered by r0, with membership tracked in a Fenwick bitmap.
// Per-token cost is O(log V) and a suffix reset costs O(dropped terms), not
// O(V).
class RankState {
 public:
  // Baseline ranking r0(t) = t + 1 (term 0 is the top-ranked word).
  explicit RankState(std::uint32_t vocab_size);
  // Arbitrary baseline: r0[t] is the baseline rank of term t, a permutation
  // of {1..V}.
  RankState(std::uint32_t vocab_size, const std::vector<Rank>& baseline);

  std::uint32_t vocab_size() const { return vocab_; }
  std::uint32_t count(TermId t) const;
  Rank baseline_rank(TermId t) const;
  // Number of terms with nonzero count.
  std::uint32_t nonzero_terms() const { return static_cast<std::uint32_t>(head_.size()); }

  // Term occupying position r of the induced ordering, 1 <= r <= V.
  TermId term_at_rank(Rank r) const;
  // Inverse query: current rank of term t.
  Rank rank_of(TermId t) const;

  // c(t) += 1. The term's rank never worsens.
  void increment(TermId t);

  // Zeroes the counts of every term whose current rank is >= r_star;
  // 1 <= r_star <= V+1 (V+1 resets nothing, 1 resets everything).
  void reset_suffix(std::uint64_t r_star);

 private:
  std::uint32_t vocab_ = 0;
  std::vector<std::uint32_t> counts_;
  std::vector<Rank> r0_;            // term -> baseline rank
  std::vector<TermId> term_at_r0_;  // baseline rank -> term (index r-1)
  detail::HeadTree head_;
  detail::PresenceFenwick present_;  // marks r0 positions of nonzero terms
};

}  // namespace textlab
