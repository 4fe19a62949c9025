#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textlab/corpus.hpp"
#include "textlab/heaps.hpp"
#include "textlab/histogram.hpp"

namespace textlab {

// Corpus-wide occurrence totals and the induced empirical ranking.
struct GlobalFrequencyTable {
  std::vector<std::uint64_t> freq;  // by TermId; zero for unseen terms
  std::vector<TermId> rank_order;   // freq descending, ties by TermId
  std::uint64_t total_tokens = 0;
};

GlobalFrequencyTable global_frequencies(const Corpus& corpus);

// Distribution of global frequencies over observed terms (f_g >= 1).
Histogram zipf_histogram(const GlobalFrequencyTable& table, const BinSpec& spec);

enum class HeapsMode { kPerDocument, kPrefix };

// Vocabulary growth across documents. Per-document mode log-bins the
// (length, distinct words) scatter and reports the mean of each inside every
// occupied bin. Prefix mode requires token sequences and is only available
// through the RawCorpus overload; requesting it here throws.
HeapsCurve measure_heaps(const Corpus& corpus, HeapsMode mode,
                         const BinSpec& spec = BinSpec::log_per_decade(10));

// Prefix mode: mean number of distinct terms within the first n tokens,
// averaged over documents with length >= n; n runs over the spec's bin
// edges. Documents shorter than n drop out of the average at that n.
HeapsCurve measure_heaps(const RawCorpus& raw,
                         const BinSpec& spec = BinSpec::log_per_decade(10));

// Frequency-class recurrence statistics. The common class is the shortest
// prefix of the empirical ranking holding at least common_share of all
// tokens; the rare class is the longest suffix holding at most rare_share.
// Each class histogram is over per-document occurrence counts f_d >= 1 of
// its terms, normalized over (term, document) incidences.
struct BurstinessReport {
  double common_share = 0.0;  // requested thresholds
  double rare_share = 0.0;
  std::vector<TermId> common_terms;  // in empirical rank order
  std::vector<TermId> rare_terms;
  double common_share_actual = 0.0;
  double rare_share_actual = 0.0;
  double middle_share_actual = 0.0;
  Histogram common_fd;  // integer-binned
  Histogram rare_fd;
  std::uint64_t common_incidences = 0;
  std::uint64_t rare_incidences = 0;
};

BurstinessReport measure_burstiness(const Corpus& corpus,
                                    double common_share = 0.71,
                                    double rare_share = 0.08);

// Cosine of the raw term-frequency vectors; in [0, 1], 1 for identical
// direction. Both documents must be non-empty.
double cosine_similarity(const Document& p, const Document& q);

struct SimilarityHistogram {
  Histogram histogram;
  std::uint64_t pair_count = 0;   // pairs measured
  std::uint64_t total_pairs = 0;  // pairs available
  bool exhaustive = true;
  std::uint64_t seed = 0;  // meaningful when subsampled
};

// Default similarity binning: width 0.01 on [0, 1].
BinSpec similarity_bin_spec();

// Distribution of cosine similarity over unordered document pairs:
// exhaustive when the pair count fits the budget, otherwise exactly
// pair_budget distinct pairs sampled uniformly with the given seed.
SimilarityHistogram similarity_distribution(const Corpus& corpus,
                                            const BinSpec& spec,
                                            std::uint64_t pair_budget = 5000000,
                                            std::uint64_t seed = 0,
                                            unsigned threads = 1);

}  // namespace textlab
