#pragma once

#include <cstdint>
#include <vector>

#include "textlab/rank_sampler.hpp"

namespace textlab {

// Exact vocabulary-growth table: P(w, n) is the probability that a document
// of n tokens contains exactly w distinct words. Rows are triangular, since
// P(w, n) = 0 for w > min(n, V).
class HeapsDistribution {
 public:
  std::uint64_t n_max() const { return rows_.size(); }
  std::uint32_t vocab_size() const { return vocab_; }
  std::uint32_t max_w(std::uint64_t n) const;

  // P(w, n), 1 <= n <= n_max, 1 <= w; zero outside the support.
  double probability(std::uint32_t w, std::uint64_t n) const;
  // E[w(n)] = sum_w w P(w, n).
  double expected_w(std::uint64_t n) const;

 private:
  friend HeapsDistribution evolve_master_equation(const RankDistribution&,
                                                  std::uint64_t);
  std::vector<std::vector<double>> rows_;  // rows_[n-1][w-1] = P(w, n)
  std::uint32_t vocab_ = 0;
};

// Expected vocabulary size as a function of document length.
struct HeapsCurve {
  std::vector<double> lengths;     // n, strictly increasing
  std::vector<double> expected_w;  // E[w(n)] or a measured mean
};

// Log-log power-law fit w ~ n^beta over a window of the curve.
struct BetaFit {
  double beta = 0.0;
  double intercept = 0.0;  // ln w = intercept + beta ln n
  double standard_error = 0.0;
  double n_lo = 0.0;       // fitted window, inclusive
  double n_hi = 0.0;
  std::size_t points = 0;
};

struct OdeControls {
  int steps_per_decade = 200;
  // Halving self-check: doubling the step count must move no point's w by
  // more than this relative amount.
  double relative_tolerance = 1e-3;
};

// Evolves the growth distribution one token at a time:
//   P(w, n+1) = P(w, n) F(w) + P(w-1, n) (1 - F(w-1)),   P(1, 1) = 1,
// where F(w) is the cumulative rank probability. Exact for a sampler that
// always repeats one of the w seen words with probability F(w).
HeapsDistribution evolve_master_equation(const RankDistribution& dist,
                                         std::uint64_t n_max);

// Mean-field recursion: E^[w(n+1)] = E^[w(n)] + (1 - F(E^[w(n)])), with F at
// fractional w taken by linear interpolation. Neglects fluctuations of w;
// exact whenever F is linear (uniform ranks).
HeapsCurve expected_vocab_recursion(const RankDistribution& dist,
                                    std::uint64_t n_max);

// Continuous limit dw/dn = 1 - F(w), w(1) = 1, integrated by classical RK4
// on a geometric n grid. Throws ConvergenceError if the halving self-check
// fails.
HeapsCurve integrate_heaps_ode(const RankDistribution& dist, double n_max,
                               const OdeControls& controls = {});

// Closed form for uniform P(r) = 1/V: E[w(n)] = V (1 - (1 - 1/V)^n).
double uniform_expected_vocab(std::uint32_t vocab_size, double n);

// Least-squares slope of ln w against ln n over points with n in
// [n_lo, n_hi]; needs at least 5 points in the window.
BetaFit fit_beta(const HeapsCurve& curve, double n_lo, double n_hi);
// Default window: the top decade of available n.
BetaFit fit_beta_top_decade(const HeapsCurve& curve);

// Curve value at arbitrary n by log-log linear interpolation (clamped to the
// curve's n range).
double curve_value_at(const HeapsCurve& curve, double n);

}  // namespace textlab
