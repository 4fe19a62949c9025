#include "textlab/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace textlab {

std::uint32_t Document::count_of(TermId t) const {
  const auto it = std::lower_bound(
      counts.begin(), counts.end(), t,
      [](const auto& entry, TermId term) { return entry.first < term; });
  return (it != counts.end() && it->first == t) ? it->second : 0;
}

Document make_document(std::string id,
                       std::vector<std::pair<TermId, std::uint32_t>> counts) {
  std::sort(counts.begin(), counts.end());
  std::vector<std::pair<TermId, std::uint32_t>> merged;
  merged.reserve(counts.size());
  std::uint64_t length = 0;
  for (const auto& [term, count] : counts) {
    if (count == 0) throw std::domain_error("document counts must be positive");
    if (!merged.empty() && merged.back().first == term) {
      merged.back().second += count;
    } else {
      merged.push_back({term, count});
    }
    length += count;
  }
  Document doc;
  doc.id = std::move(id);
  doc.counts = std::move(merged);
  doc.length = length;
  return doc;
}

std::size_t document_vocab_size(const Document& doc) { return doc.counts.size(); }

std::uint64_t Corpus::total_tokens() const {
  std::uint64_t total = 0;
  for (const auto& doc : documents) total += doc.length;
  return total;
}

std::vector<std::string> validate_corpus(const Corpus& corpus) {
  std::vector<std::string> violations;
  auto flag = [&](const Document& doc, const std::string& what) {
    violations.push_back("document '" + doc.id + "': " + what);
  };
  for (const auto& doc : corpus.documents) {
    std::uint64_t sum = 0;
    bool sorted = true;
    for (std::size_t i = 0; i < doc.counts.size(); ++i) {
      const auto& [term, count] = doc.counts[i];
      if (count == 0) flag(doc, "nonpositive count");
      if (term >= corpus.vocab_size) flag(doc, "term id out of range");
      if (i > 0 && doc.counts[i - 1].first >= term) sorted = false;
      sum += count;
    }
    if (!sorted) flag(doc, "counts not sorted by term id");
    if (sum != doc.length) flag(doc, "length mismatch");
    if (doc.length == 0) flag(doc, "empty document");
  }
  return violations;
}

void validate_params(const ModelParams& params) {
  if (params.vocab_size < 1) throw std::domain_error("vocab_size must be >= 1");
  if (!(params.z >= 0.0 && params.z <= 1.0)) {
    throw std::domain_error("z must lie in [0, 1]");
  }
  if (!(params.lognormal_sigma2 >= 0.0)) {
    throw std::domain_error("lognormal_sigma2 must be >= 0");
  }
  if (!std::isfinite(params.lognormal_mu)) {
    throw std::domain_error("lognormal_mu must be finite");
  }
  if (!(params.sampler_exponent >= 0.0)) {
    throw std::domain_error("sampler_exponent must be >= 0");
  }
}

Json params_to_json(const ModelParams& p) {
  return Json{{"vocab_size", p.vocab_size},
              {"num_docs", p.num_docs},
              {"lognormal_mu", p.lognormal_mu},
              {"lognormal_sigma2", p.lognormal_sigma2},
              {"z", p.z},
              {"sampler_exponent", p.sampler_exponent},
              {"seed", p.seed}};
}

ModelParams params_from_json(const Json& j) {
  ModelParams p;
  p.vocab_size = j.at("vocab_size").get<std::uint32_t>();
  p.num_docs = j.at("num_docs").get<std::uint64_t>();
  p.lognormal_mu = j.at("lognormal_mu").get<double>();
  p.lognormal_sigma2 = j.at("lognormal_sigma2").get<double>();
  p.z = j.at("z").get<double>();
  p.sampler_exponent = j.at("sampler_exponent").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

}  // namespace textlab
