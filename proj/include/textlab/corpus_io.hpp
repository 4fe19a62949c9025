#pragma once

#include <filesystem>
#include <iosfwd>

#include "textlab/corpus.hpp"

namespace textlab {

// Corpus file format: line-delimited JSON, UTF-8, LF endings. The first line
// is a header {"vocab_size": V, "meta": {...}}; every following line is one
// document {"id": "...", "counts": {"<termId>": <count>, ...}} with counts
// keyed by decimal term id in ascending order.
void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

Corpus load_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

// Token-sequence sidecar: header {"vocab_size": V}, then one
// {"id": "...", "terms": [<termId>, ...]} per line.
void save_raw_corpus(const RawCorpus& raw, const std::filesystem::path& path);
RawCorpus load_raw_corpus(const std::filesystem::path& path);

}  // namespace textlab
