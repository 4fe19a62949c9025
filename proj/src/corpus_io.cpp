#include "textlab/corpus_io.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include "textlab/errors.hpp"

namespace textlab {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

}  // namespace

void save_corpus(const Corpus& corpus, std::ostream& out) {
  Json header{{"vocab_size", corpus.vocab_size}, {"meta", corpus.meta}};
  out << header.dump() << '\n';
  for (const auto& doc : corpus.documents) {
    Json counts = Json::object();
    for (const auto& [term, count] : doc.counts) {
      counts[std::to_string(term)] = count;
    }
    Json record{{"id", doc.id}, {"counts", std::move(counts)}};
    out << record.dump() << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  auto out = open_output(path);
  save_corpus(corpus, out);
  if (!out) throw InputError("failed writing " + path.string());
}

Corpus load_corpus(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("corpus file is empty");
  Corpus corpus;
  try {
    const Json header = Json::parse(line);
    corpus.vocab_size = header.at("vocab_size").get<std::uint32_t>();
    corpus.meta = header.value("meta", Json::object());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const Json record = Json::parse(line);
      Document doc;
      doc.id = record.at("id").get<std::string>();
      const auto& counts = record.at("counts");
      doc.counts.reserve(counts.size());
      for (const auto& [key, value] : counts.items()) {
        const unsigned long term = std::stoul(key);
        const std::uint32_t count = value.get<std::uint32_t>();
        doc.counts.emplace_back(static_cast<TermId>(term), count);
        doc.length += count;
      }
      std::sort(doc.counts.begin(), doc.counts.end());
      corpus.documents.push_back(std::move(doc));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed corpus record: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed corpus record: ") + e.what());
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_corpus(in);
}

void save_raw_corpus(const RawCorpus& raw, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << Json{{"vocab_size", raw.vocab_size}}.dump() << '\n';
  for (const auto& doc : raw.documents) {
    Json record{{"id", doc.id}, {"terms", doc.terms}};
    out << record.dump() << '\n';
  }
  if (!out) throw InputError("failed writing " + path.string());
}

RawCorpus load_raw_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw InputError("sidecar file is empty");
  RawCorpus raw;
  try {
    raw.vocab_size = Json::parse(line).at("vocab_size").get<std::uint32_t>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json record = Json::parse(line);
      RawDocument doc;
      doc.id = record.at("id").get<std::string>();
      doc.terms = record.at("terms").get<std::vector<TermId>>();
      raw.documents.push_back(std::move(doc));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed sidecar record: ") + e.what());
  }
  return raw;
}

}  // namespace textlab
