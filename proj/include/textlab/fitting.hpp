#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textlab/analysis.hpp"
#include "textlab/corpus.hpp"
#include "textlab/rng.hpp"

namespace textlab {

// Maximum-likelihood lognormal fit: mu is the mean of the log samples and
// sigma2 their population variance.
struct LognormalFit {
  double mu = 0.0;
  double sigma2 = 0.0;
  std::size_t n_samples = 0;
  double log_likelihood = 0.0;
};

// Needs at least two samples, all >= 1.
LognormalFit fit_lognormal(const std::vector<std::uint64_t>& lengths);

// Hurwitz zeta sum_{k>=0} (k+a)^(-s), for s > 1 and a > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double a);

struct TailExponentFit {
  double exponent = 0.0;
  std::uint64_t x_min = 1;
  double standard_error = 0.0;
  std::string method;  // "mle" or "regression"
  std::size_t n_tail = 0;
};

// Discrete power-law MLE over the samples >= x_min: P(x) = x^(-a) / zeta(a, x_min).
// Needs >= 50 tail samples with some variation; x_min is always caller-chosen.
TailExponentFit fit_tail_exponent(const std::vector<std::uint64_t>& values,
                                  std::uint64_t x_min);

// Descriptive alternative: slope of log density vs log value over log-2 bins
// of the tail. Kept for parity with plotted fits; prefer the MLE.
TailExponentFit fit_tail_regression(const std::vector<std::uint64_t>& values,
                                    std::uint64_t x_min);

// Exact inverse-CDF sampler for the discrete power law; the ground-truth
// oracle for fit_tail_exponent.
std::vector<std::uint64_t> sample_discrete_power_law(double exponent,
                                                     std::uint64_t x_min,
                                                     std::size_t n, Rng& rng);

// Grid search for the memory parameter z that best reproduces a measured
// document-similarity distribution.
struct ZCalibration {
  std::vector<double> grid;
  // Jensen-Shannon divergence between the pooled replica histogram and the
  // target, per candidate; best_z attains the minimum.
  std::vector<double> divergences;
  // Per-replica divergence statistics (mean and population std), per candidate.
  std::vector<double> replica_mean;
  std::vector<double> replica_std;
  double best_z = 0.0;
  std::size_t best_index = 0;
  std::string target_description;
  std::uint32_t replicas = 0;
  std::uint64_t seed = 0;
};

// {1, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001}
std::vector<double> default_z_grid();

// For each candidate z: generate `replicas` corpora from base_params with that
// z, measure similarity with the target's binning and sampling depth, pool the
// replica histograms, and record the divergence to the target. Each (z,
// replica) cell derives its seed from (seed, z index, replica index), so
// results are bit-reproducible for a fixed grid and independent of `threads`.
ZCalibration calibrate_z(const SimilarityHistogram& target,
                         const ModelParams& base_params,
                         const std::vector<double>& grid, std::uint32_t replicas,
                         std::uint64_t seed, unsigned threads = 1);

}  // namespace textlab
