#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textlab/corpus.hpp"
#include "textlab/rank_sampler.hpp"
#include "textlab/rng.hpp"

namespace textlab {

// One document length: round(exp(mu + sigma * N(0,1))), clamped to >= 1.
std::uint64_t draw_lognormal_length(double mu, double sigma2, Rng& rng);

// Appends L tokens to the running chain: sample a rank, emit the term that
// currently holds it, bump its count. The state carries the post-document
// counts, which is what the cross-document memory chain consumes.
Document generate_document(RankState& state, const RankDistribution& dist,
                           std::uint64_t length, Rng& rng,
                           std::string id = "");

// Full dynamic-ranking corpus: D documents on one memory chain. Before each
// document (including the first), if z > 0 a threshold r* is drawn and every
// term currently ranked >= r* has its count reset; z = 0 never resets.
// Lengths are i.i.d. lognormal. Token, length, and reset draws run on
// separate substreams of params.seed, so changing z leaves the drawn length
// sequence untouched.
Corpus generate_corpus(const ModelParams& params);
// Same chain driven by an arbitrary rank distribution (e.g. an empirical
// table) instead of r^-gamma_s; dist.vocab_size() must match params.
Corpus generate_corpus(const ModelParams& params, const RankDistribution& dist);

// Null baseline: every token i.i.d. from the rank distribution applied to
// the baseline ordering (term r-1 has probability P(r)); no dynamics, no
// memory. params.z is ignored.
Corpus generate_zipf_null(const ModelParams& params);
Corpus generate_zipf_null(const ModelParams& params, const RankDistribution& dist);

// Per-topic multinomial baseline.
struct TopicProfile {
  std::string topic_id;
  // Sparse p(t|c), sorted by term id; probabilities >= 0 summing to 1.
  std::vector<std::pair<TermId, double>> term_probs;
  std::uint64_t doc_count = 0;
  // Explicit lengths (size doc_count) win over the lognormal spec.
  std::vector<std::uint64_t> doc_lengths;
  double lognormal_mu = 0.0;
  double lognormal_sigma2 = 0.0;
};

// Throws std::domain_error on any violated profile constraint.
void validate_topic_profile(const TopicProfile& profile, std::uint32_t vocab_size);

// doc_count documents per topic, tokens i.i.d. from p(t|c). Document order
// follows the profile list; meta records each document's topic.
Corpus generate_topic_corpus(const std::vector<TopicProfile>& profiles,
                             std::uint32_t vocab_size, std::uint64_t seed);

// Empirical profiles from a labeled corpus: p(t|c) is the term's share of
// the topic's tokens; doc_count and doc_lengths are taken verbatim.
// topic_of[i] labels corpus.documents[i]; profiles come out in first-
// appearance order of the labels.
std::vector<TopicProfile> topic_profiles_from_corpus(
    const Corpus& corpus, const std::vector<std::string>& topic_of);

}  // namespace textlab
