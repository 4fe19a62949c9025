#include "textlab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "textlab/errors.hpp"
#include "textlab/fitting.hpp"

namespace textlab {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

// Structural UTF-8 validation; returns the codepoint length at `i` or throws.
std::size_t utf8_sequence_length(std::string_view text, std::size_t i) {
  const unsigned char lead = static_cast<unsigned char>(text[i]);
  if (lead < 0x80) return 1;
  std::size_t len;
  std::uint32_t cp;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    throw InputError("invalid UTF-8 lead byte");
  }
  if (i + len > text.size()) throw InputError("truncated UTF-8 sequence");
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char c = static_cast<unsigned char>(text[i + k]);
    if ((c & 0xC0) != 0x80) throw InputError("invalid UTF-8 continuation byte");
    cp = (cp << 6) | (c & 0x3F);
  }
  static constexpr std::uint32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len]) throw InputError("overlong UTF-8 encoding");
  if (cp >= 0xD800 && cp <= 0xDFFF) throw InputError("UTF-8 surrogate codepoint");
  if (cp > 0x10FFFF) throw InputError("UTF-8 codepoint out of range");
  return len;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& cfg) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_chars = 0;
  const auto flush = [&]() {
    if (current_chars >= cfg.min_token_length) tokens.push_back(current);
    current.clear();
    current_chars = 0;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t len = utf8_sequence_length(text, i);
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      if (len == 1) {
        current.push_back(cfg.lowercase && c >= 'A' && c <= 'Z'
                              ? static_cast<char>(c - 'A' + 'a')
                              : text[i]);
      } else {
        current.append(text.substr(i, len));
      }
      ++current_chars;
    } else {
      flush();
    }
    i += len;
  }
  flush();
  return tokens;
}

BuiltCorpus build_corpus(const std::vector<TokenizedDocument>& docs) {
  if (docs.empty()) throw std::domain_error("no documents to build from");

  // Global frequency and first-occurrence order per distinct token.
  std::unordered_map<std::string_view, std::uint32_t> index;
  std::vector<std::string_view> first_seen;
  std::vector<std::uint64_t> freq;
  for (const auto& doc : docs) {
    for (const auto& token : doc.tokens) {
      auto [it, inserted] =
          index.try_emplace(token, static_cast<std::uint32_t>(first_seen.size()));
      if (inserted) {
        first_seen.push_back(token);
        freq.push_back(0);
      }
      ++freq[it->second];
    }
  }
  if (first_seen.empty()) throw std::domain_error("all documents are empty");

  // TermId order: frequency descending, first occurrence ascending.
  std::vector<std::uint32_t> order(first_seen.size());
  for (std::uint32_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (freq[a] != freq[b]) return freq[a] > freq[b];
    return a < b;
  });
  std::vector<TermId> id_of(first_seen.size());
  BuiltCorpus built;
  built.term_strings.reserve(order.size());
  for (TermId id = 0; id < order.size(); ++id) {
    id_of[order[id]] = id;
    built.term_strings.emplace_back(first_seen[order[id]]);
  }

  const auto vocab = static_cast<std::uint32_t>(order.size());
  built.corpus.vocab_size = vocab;
  built.raw.vocab_size = vocab;
  std::vector<std::uint64_t> lengths;
  for (const auto& doc : docs) {
    if (doc.tokens.empty()) {
      ++built.stats.empty_documents;
      continue;
    }
    RawDocument raw_doc;
    raw_doc.id = doc.id;
    raw_doc.terms.reserve(doc.tokens.size());
    std::map<TermId, std::uint32_t> counts;
    for (const auto& token : doc.tokens) {
      const TermId id = id_of[index.at(token)];
      raw_doc.terms.push_back(id);
      ++counts[id];
    }
    built.corpus.documents.push_back(
        make_document(doc.id, {counts.begin(), counts.end()}));
    built.raw.documents.push_back(std::move(raw_doc));
    lengths.push_back(doc.tokens.size());
  }

  validate_corpus(built.corpus);
  const CorpusStats from_corpus =
      compute_stats(built.corpus, built.stats.empty_documents);
  built.stats = from_corpus;
  return built;
}

CorpusStats compute_stats(const Corpus& corpus, std::uint64_t empty_documents) {
  if (corpus.documents.empty())
    throw std::domain_error("corpus has no documents");
  CorpusStats stats;
  stats.vocab_size = corpus.vocab_size;
  stats.documents = corpus.documents.size();
  stats.empty_documents = empty_documents;
  std::vector<std::uint64_t> lengths;
  lengths.reserve(corpus.documents.size());
  double sum_distinct = 0.0;
  double sum_n = 0.0;
  for (const auto& doc : corpus.documents) {
    sum_distinct += static_cast<double>(doc.counts.size());
    sum_n += static_cast<double>(doc.length);
    lengths.push_back(doc.length);
  }
  const double d = static_cast<double>(stats.documents);
  stats.mean_distinct = sum_distinct / d;
  stats.mean_length = sum_n / d;
  double var = 0.0;
  for (std::uint64_t n : lengths) {
    const double delta = static_cast<double>(n) - stats.mean_length;
    var += delta * delta;
  }
  stats.var_length = var / d;
  if (lengths.size() >= 2) {
    const LognormalFit fit = fit_lognormal(lengths);
    stats.lognormal_mu = fit.mu;
    stats.lognormal_sigma2 = fit.sigma2;
  } else {
    stats.lognormal_mu = std::log(static_cast<double>(lengths[0]));
    stats.lognormal_sigma2 = 0.0;
  }
  return stats;
}

Json stats_to_json(const CorpusStats& stats) {
  return Json{{"vocab_size", stats.vocab_size},
              {"documents", stats.documents},
              {"empty_documents", stats.empty_documents},
              {"mean_distinct", stats.mean_distinct},
              {"mean_length", stats.mean_length},
              {"var_length", stats.var_length},
              {"lognormal_mu", stats.lognormal_mu},
              {"lognormal_sigma2", stats.lognormal_sigma2}};
}

std::vector<TokenizedDocument> read_text_directory(
    const std::filesystem::path& dir, const TokenizerConfig& cfg) {
  if (!std::filesystem::is_directory(dir))
    throw InputError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<TokenizedDocument> docs;
  docs.reserve(files.size());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    docs.push_back({path.filename().string(), tokenize(text, cfg)});
  }
  return docs;
}

std::vector<TokenizedDocument> read_jsonl_texts(std::istream& in,
                                                const TokenizerConfig& cfg) {
  std::vector<TokenizedDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json record = Json::parse(line);
      docs.push_back({record.at("id").get<std::string>(),
                      tokenize(record.at("text").get<std::string>(), cfg)});
    } catch (const Json::exception& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<TokenizedDocument> read_jsonl_texts(
    const std::filesystem::path& path, const TokenizerConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_jsonl_texts(in, cfg);
}

}  // namespace textlab
