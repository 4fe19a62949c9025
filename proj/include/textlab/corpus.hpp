#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace textlab {

using Json = nlohmann::ordered_json;

// Terms are dense integers: a vocabulary of size V uses exactly {0..V-1}.
// Generators assign ids so that term t has initial global rank t+1.
using TermId = std::uint32_t;

// 1-based position in a ranking of the vocabulary.
using Rank = std::uint32_t;

// Bag-of-words document: per-term occurrence counts plus the token total.
// Token order is discarded at document completion; no in-scope statistic
// depends on it.
struct Document {
  std::string id;
  // Sorted by term id, counts >= 1. Holds both the per-document frequency
  // f_d and the term-frequency weight used for cosine similarity.
  std::vector<std::pair<TermId, std::uint32_t>> counts;
  std::uint64_t length = 0;  // must equal the sum of counts

  std::uint32_t count_of(TermId t) const;
  bool operator==(const Document&) const = default;
};

// Builds a well-formed document: merges duplicate term entries, sorts by
// term id, derives length. Rejects zero counts.
Document make_document(std::string id,
                       std::vector<std::pair<TermId, std::uint32_t>> counts);

// Number of distinct terms w.
std::size_t document_vocab_size(const Document& doc);

struct Corpus {
  std::uint32_t vocab_size = 0;
  // Document order is the generation order (the memory-chain order).
  std::vector<Document> documents;
  // Provenance: generator name and parameters, or source path; seed.
  Json meta;

  std::uint64_t total_tokens() const;
  bool operator==(const Corpus&) const = default;
};

// Returns a description of every violated Document/Corpus invariant, one
// string per violation naming the offending document. Empty means valid.
std::vector<std::string> validate_corpus(const Corpus& corpus);

// All generation knobs of the document models.
struct ModelParams {
  std::uint32_t vocab_size = 1;      // V
  std::uint64_t num_docs = 0;        // D
  double lognormal_mu = 0.0;         // mu of log length
  double lognormal_sigma2 = 0.0;     // sigma^2 of log length
  double z = 1.0;                    // memory parameter in [0,1]
  double sampler_exponent = 1.0;     // gamma_s of P(r) ~ r^-gamma_s
  std::uint64_t seed = 0;

  bool operator==(const ModelParams&) const = default;
};

// Throws std::domain_error on any violated parameter constraint.
void validate_params(const ModelParams& params);

Json params_to_json(const ModelParams& params);
ModelParams params_from_json(const Json& j);

// Token sequences retained for prefix-mode vocabulary-growth measurement.
// Produced by ingestion in raw mode and stored in a sidecar file.
struct RawDocument {
  std::string id;
  std::vector<TermId> terms;  // in original token order
  bool operator==(const RawDocument&) const = default;
};

struct RawCorpus {
  std::uint32_t vocab_size = 0;
  std::vector<RawDocument> documents;
  bool operator==(const RawCorpus&) const = default;
};

}  // namespace textlab
