#include "textlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace textlab {

namespace {

// Substream ids of a generation seed.
constexpr std::uint64_t kLengthStream = 1;
constexpr std::uint64_t kResetStream = 2;
constexpr std::uint64_t kTokenStream = 3;

std::string doc_id(std::uint64_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "doc-%06llu", static_cast<unsigned long long>(i));
  return buf;
}

Document counts_to_document(std::string id,
                            const std::map<TermId, std::uint32_t>& counts) {
  Document doc;
  doc.id = std::move(id);
  doc.counts.assign(counts.begin(), counts.end());
  for (const auto& [term, count] : counts) doc.length += count;
  return doc;
}

Json generator_meta(const char* model, const ModelParams& params) {
  return Json{{"generator", model}, {"params", params_to_json(params)}};
}

}  // namespace

std::uint64_t draw_lognormal_length(double mu, double sigma2, Rng& rng) {
  if (!(sigma2 >= 0.0)) throw std::domain_error("sigma2 must be >= 0");
  const double x = std::exp(mu + std::sqrt(sigma2) * normal01(rng));
  const double rounded = std::round(x);
  return rounded < 1.0 ? 1 : static_cast<std::uint64_t>(rounded);
}

Document generate_document(RankState& state, const RankDistribution& dist,
                           std::uint64_t length, Rng& rng, std::string id) {
  if (length < 1) throw std::domain_error("document length must be >= 1");
  if (state.vocab_size() != dist.vocab_size())
    throw std::domain_error("state and distribution vocab sizes differ");
  std::map<TermId, std::uint32_t> counts;
  for (std::uint64_t i = 0; i < length; ++i) {
    const Rank r = dist.sample(rng);
    const TermId t = state.term_at_rank(r);
    ++counts[t];
    state.increment(t);
  }
  return counts_to_document(std::move(id), counts);
}

Corpus generate_corpus(const ModelParams& params) {
  return generate_corpus(
      params, RankDistribution::power_law(params.vocab_size,
                                          params.sampler_exponent));
}

Corpus generate_corpus(const ModelParams& params, const RankDistribution& dist) {
  validate_params(params);
  if (dist.vocab_size() != params.vocab_size)
    throw std::domain_error("distribution vocab size must match params");

  Rng len_rng = make_stream(params.seed, kLengthStream);
  Rng reset_rng = make_stream(params.seed, kResetStream);
  Rng token_rng = make_stream(params.seed, kTokenStream);

  RankState state(params.vocab_size);
  Corpus corpus;
  corpus.vocab_size = params.vocab_size;
  corpus.meta = generator_meta("dynamic", params);
  corpus.documents.reserve(params.num_docs);
  const std::uint64_t no_reset = static_cast<std::uint64_t>(params.vocab_size) + 1;
  for (std::uint64_t i = 0; i < params.num_docs; ++i) {
    if (params.z > 0.0) {
      const std::uint64_t r_star = draw_r_star(params.z, reset_rng);
      state.reset_suffix(std::min(r_star, no_reset));
    }
    const std::uint64_t length =
        draw_lognormal_length(params.lognormal_mu, params.lognormal_sigma2, len_rng);
    corpus.documents.push_back(
        generate_document(state, dist, length, token_rng, doc_id(i)));
  }
  return corpus;
}

Corpus generate_zipf_null(const ModelParams& params) {
  return generate_zipf_null(
      params, RankDistribution::power_law(params.vocab_size,
                                          params.sampler_exponent));
}

Corpus generate_zipf_null(const ModelParams& params, const RankDistribution& dist) {
  validate_params(params);
  if (dist.vocab_size() != params.vocab_size)
    throw std::domain_error("distribution vocab size must match params");

  Rng len_rng = make_stream(params.seed, kLengthStream);
  Rng token_rng = make_stream(params.seed, kTokenStream);

  Corpus corpus;
  corpus.vocab_size = params.vocab_size;
  corpus.meta = generator_meta("null", params);
  corpus.documents.reserve(params.num_docs);
  for (std::uint64_t i = 0; i < params.num_docs; ++i) {
    const std::uint64_t length =
        draw_lognormal_length(params.lognormal_mu, params.lognormal_sigma2, len_rng);
    std::map<TermId, std::uint32_t> counts;
    for (std::uint64_t k = 0; k < length; ++k) {
      ++counts[static_cast<TermId>(dist.sample(token_rng) - 1)];
    }
    corpus.documents.push_back(counts_to_document(doc_id(i), counts));
  }
  return corpus;
}

void validate_topic_profile(const TopicProfile& profile, std::uint32_t vocab_size) {
  if (profile.term_probs.empty())
    throw std::domain_error("topic '" + profile.topic_id + "': no term probabilities");
  double sum = 0.0;
  TermId prev = 0;
  bool first = true;
  for (const auto& [term, p] : profile.term_probs) {
    if (term >= vocab_size)
      throw std::domain_error("topic '" + profile.topic_id + "': term id out of range");
    if (!first && term <= prev)
      throw std::domain_error("topic '" + profile.topic_id + "': terms not sorted");
    if (!(p >= 0.0))
      throw std::domain_error("topic '" + profile.topic_id + "': negative probability");
    sum += p;
    prev = term;
    first = false;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::domain_error("topic '" + profile.topic_id + "': probabilities sum to " +
                            std::to_string(sum));
  if (!profile.doc_lengths.empty() && profile.doc_lengths.size() != profile.doc_count)
    throw std::domain_error("topic '" + profile.topic_id +
                            "': doc_lengths size differs from doc_count");
  for (const auto length : profile.doc_lengths) {
    if (length < 1)
      throw std::domain_error("topic '" + profile.topic_id + "': zero-length document");
  }
  if (profile.doc_lengths.empty() && !(profile.lognormal_sigma2 >= 0.0))
    throw std::domain_error("topic '" + profile.topic_id + "': negative sigma2");
}

Corpus generate_topic_corpus(const std::vector<TopicProfile>& profiles,
                             std::uint32_t vocab_size, std::uint64_t seed) {
  if (profiles.empty()) throw std::domain_error("no topic profiles");
  for (const auto& profile : profiles) validate_topic_profile(profile, vocab_size);

  Corpus corpus;
  corpus.vocab_size = vocab_size;
  Json topics = Json::array();

  for (std::size_t ci = 0; ci < profiles.size(); ++ci) {
    const auto& profile = profiles[ci];
    // Cumulative table for inverse-CDF sampling; zero-probability terms
    // occupy zero-width intervals and are never drawn.
    std::vector<double> cum;
    cum.reserve(profile.term_probs.size());
    double acc = 0.0;
    for (const auto& [term, p] : profile.term_probs) {
      acc += p;
      cum.push_back(acc);
    }
    cum.back() = 1.0;

    Rng len_rng = make_stream(mix_seed(seed, ci), kLengthStream);
    Rng token_rng = make_stream(mix_seed(seed, ci), kTokenStream);
    for (std::uint64_t j = 0; j < profile.doc_count; ++j) {
      const std::uint64_t length =
          profile.doc_lengths.empty()
              ? draw_lognormal_length(profile.lognormal_mu,
                                      profile.lognormal_sigma2, len_rng)
              : profile.doc_lengths[j];
      std::map<TermId, std::uint32_t> counts;
      for (std::uint64_t k = 0; k < length; ++k) {
        const double u = uniform01(token_rng);
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
        ++counts[profile.term_probs[idx].first];
      }
      corpus.documents.push_back(
          counts_to_document(profile.topic_id + "-" + std::to_string(j), counts));
      topics.push_back(profile.topic_id);
    }
  }
  corpus.meta = Json{{"generator", "topic"},
                     {"seed", seed},
                     {"doc_topics", std::move(topics)}};
  return corpus;
}

std::vector<TopicProfile> topic_profiles_from_corpus(
    const Corpus& corpus, const std::vector<std::string>& topic_of) {
  if (topic_of.size() != corpus.documents.size())
    throw std::domain_error("one topic label per document required");

  std::vector<TopicProfile> profiles;
  std::map<std::string, std::size_t> index;
  std::vector<std::map<TermId, std::uint64_t>> counts;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto [it, inserted] = index.try_emplace(topic_of[i], profiles.size());
    if (inserted) {
      profiles.push_back(TopicProfile{topic_of[i], {}, 0, {}, 0.0, 0.0});
      counts.emplace_back();
    }
    const std::size_t ci = it->second;
    auto& profile = profiles[ci];
    ++profile.doc_count;
    profile.doc_lengths.push_back(corpus.documents[i].length);
    for (const auto& [term, count] : corpus.documents[i].counts)
      counts[ci][term] += count;
  }
  for (std::size_t ci = 0; ci < profiles.size(); ++ci) {
    std::uint64_t total = 0;
    for (const auto& [term, c] : counts[ci]) total += c;
    auto& probs = profiles[ci].term_probs;
    probs.reserve(counts[ci].size());
    for (const auto& [term, c] : counts[ci])
      probs.emplace_back(term, static_cast<double>(c) / static_cast<double>(total));
  }
  return profiles;
}

}  // namespace textlab
