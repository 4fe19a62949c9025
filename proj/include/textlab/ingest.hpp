#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "textlab/corpus.hpp"

namespace textlab {

struct TokenizerConfig {
  bool lowercase = true;
  std::size_t min_token_length = 1;
};

// Splits text into maximal runs of word characters: ASCII alphanumerics plus
// any non-ASCII codepoint (no Unicode tables; non-ASCII text is kept rather
// than dropped). ASCII letters are lowercased when cfg.lowercase is set.
// Invalid UTF-8 raises InputError. Deterministic and stateless.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& cfg = {});

struct TokenizedDocument {
  std::string id;
  std::vector<std::string> tokens;
};

// Headline corpus statistics: vocabulary size, document counts, mean distinct
// words per document, length moments, and the lognormal length fit.
struct CorpusStats {
  std::uint32_t vocab_size = 0;
  std::uint64_t documents = 0;        // documents with at least one token
  std::uint64_t empty_documents = 0;  // excluded from the corpus
  double mean_distinct = 0.0;
  double mean_length = 0.0;
  double var_length = 0.0;  // population variance
  double lognormal_mu = 0.0;
  double lognormal_sigma2 = 0.0;
};

Json stats_to_json(const CorpusStats& stats);

struct BuiltCorpus {
  Corpus corpus;
  RawCorpus raw;  // same document order as corpus.documents
  std::vector<std::string> term_strings;  // TermId -> token
  CorpusStats stats;
};

// Assigns term ids by descending global frequency (ties by first occurrence),
// converts documents to count maps, and computes stats over the non-empty
// documents. Empty documents are tallied in stats.empty_documents and left
// out of the corpus. All documents empty -> domain error.
BuiltCorpus build_corpus(const std::vector<TokenizedDocument>& docs);

// Recomputes the statistics of an existing corpus; empty_documents is not
// recoverable from a corpus (empties were never stored) so the caller passes
// the known count, default 0.
CorpusStats compute_stats(const Corpus& corpus, std::uint64_t empty_documents = 0);

// Input readers. Directory mode takes one plain-text document per regular
// file, ordered by filename; id = filename. JSONL mode takes one
// {"id": ..., "text": ...} object per line.
std::vector<TokenizedDocument> read_text_directory(
    const std::filesystem::path& dir, const TokenizerConfig& cfg = {});
std::vector<TokenizedDocument> read_jsonl_texts(std::istream& in,
                                                const TokenizerConfig& cfg = {});
std::vector<TokenizedDocument> read_jsonl_texts(
    const std::filesystem::path& path, const TokenizerConfig& cfg = {});

}  // namespace textlab
