#include <algorithm>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "textlab/corpus.hpp"
#include "textlab/corpus_io.hpp"
#include "textlab/errors.hpp"

#include <doctest.h>

using namespace textlab;

TEST_SUITE("corpus") {

TEST_CASE("make_document merges duplicates, sorts, and derives length") {
  const Document doc = make_document("d0", {{2, 1}, {1, 3}, {2, 2}});
  REQUIRE(doc.counts.size() == 2);
  CHECK(doc.counts[0] == std::pair<TermId, std::uint32_t>{1, 3});
  CHECK(doc.counts[1] == std::pair<TermId, std::uint32_t>{2, 3});
  CHECK(doc.length == 6);
  CHECK(document_vocab_size(doc) == 2);
}

TEST_CASE("make_document rejects zero counts") {
  CHECK_THROWS_AS(make_document("d0", {{1, 0}}), std::domain_error);
}

TEST_CASE("count_of returns zero for absent terms") {
  const Document doc = make_document("d0", {{3, 2}, {7, 5}});
  CHECK(doc.count_of(3) == 2);
  CHECK(doc.count_of(7) == 5);
  CHECK(doc.count_of(0) == 0);
  CHECK(doc.count_of(5) == 0);
}

TEST_CASE("validate_corpus accepts well-formed corpora") {
  Corpus corpus;
  corpus.vocab_size = 10;
  corpus.documents.push_back(make_document("a", {{0, 1}, {9, 2}}));
  corpus.documents.push_back(make_document("b", {{4, 7}}));
  CHECK(validate_corpus(corpus).empty());
  CHECK(corpus.total_tokens() == 10);
}

TEST_CASE("validate_corpus reports each violation with the document id") {
  Corpus corpus;
  corpus.vocab_size = 5;

  Document out_of_range;
  out_of_range.id = "bad-term";
  out_of_range.counts = {{5, 1}};
  out_of_range.length = 1;
  corpus.documents.push_back(out_of_range);

  Document bad_length;
  bad_length.id = "bad-length";
  bad_length.counts = {{0, 2}};
  bad_length.length = 3;
  corpus.documents.push_back(bad_length);

  Document unsorted;
  unsorted.id = "unsorted";
  unsorted.counts = {{3, 1}, {1, 1}};
  unsorted.length = 2;
  corpus.documents.push_back(unsorted);

  Document empty;
  empty.id = "empty";
  corpus.documents.push_back(empty);

  const auto violations = validate_corpus(corpus);
  REQUIRE(violations.size() == 4);
  CHECK(violations[0].find("bad-term") != std::string::npos);
  CHECK(violations[1].find("bad-length") != std::string::npos);
  CHECK(violations[2].find("unsorted") != std::string::npos);
  CHECK(violations[3].find("empty") != std::string::npos);
}

TEST_CASE("validate_params enforces each constraint") {
  ModelParams p;
  p.vocab_size = 100;
  p.num_docs = 10;
  p.lognormal_mu = 2.0;
  p.lognormal_sigma2 = 1.0;
  p.z = 0.5;
  p.sampler_exponent = 1.0;
  CHECK_NOTHROW(validate_params(p));

  ModelParams bad = p;
  bad.vocab_size = 0;
  CHECK_THROWS_AS(validate_params(bad), std::domain_error);
  bad = p;
  bad.z = -0.1;
  CHECK_THROWS_AS(validate_params(bad), std::domain_error);
  bad = p;
  bad.z = 1.1;
  CHECK_THROWS_AS(validate_params(bad), std::domain_error);
  bad = p;
  bad.lognormal_sigma2 = -1.0;
  CHECK_THROWS_AS(validate_params(bad), std::domain_error);
  bad = p;
  bad.lognormal_mu = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_params(bad), std::domain_error);
  bad = p;
  bad.sampler_exponent = -0.5;
  CHECK_THROWS_AS(validate_params(bad), std::domain_error);
}

TEST_CASE("params survive a json round trip") {
  ModelParams p;
  p.vocab_size = 1000;
  p.num_docs = 250;
  p.lognormal_mu = 4.79;
  p.lognormal_sigma2 = 1.91;
  p.z = 0.1;
  p.sampler_exponent = 1.0;
  p.seed = 987654321;
  CHECK(params_from_json(params_to_json(p)) == p);
}

TEST_CASE("corpus io round-trips documents, vocab size, and meta") {
  Corpus corpus;
  corpus.vocab_size = 20;
  corpus.meta = Json{{"generator", "test"}, {"seed", 5}};
  corpus.documents.push_back(make_document("doc-000", {{0, 3}, {12, 1}}));
  corpus.documents.push_back(make_document("doc-001", {{19, 2}}));

  std::stringstream buf;
  save_corpus(corpus, buf);
  const Corpus loaded = load_corpus(buf);
  CHECK(loaded == corpus);
}

TEST_CASE("saved corpora use one LF-terminated json line per record") {
  Corpus corpus;
  corpus.vocab_size = 3;
  corpus.documents.push_back(make_document("a", {{1, 1}}));
  std::stringstream buf;
  save_corpus(corpus, buf);
  const std::string text = buf.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  // Header first, with the vocabulary size.
  CHECK(text.substr(0, text.find('\n')).find("\"vocab_size\":3") != std::string::npos);
}

TEST_CASE("counts serialize keyed by decimal term id in ascending order") {
  Corpus corpus;
  corpus.vocab_size = 30;
  corpus.documents.push_back(make_document("a", {{21, 1}, {3, 2}, {10, 1}}));
  std::stringstream buf;
  save_corpus(corpus, buf);
  std::string header, doc_line;
  std::getline(buf, header);
  std::getline(buf, doc_line);
  const auto p3 = doc_line.find("\"3\":2");
  const auto p10 = doc_line.find("\"10\":1");
  const auto p21 = doc_line.find("\"21\":1");
  REQUIRE(p3 != std::string::npos);
  REQUIRE(p10 != std::string::npos);
  REQUIRE(p21 != std::string::npos);
  CHECK(p3 < p10);
  CHECK(p10 < p21);
}

TEST_CASE("load tolerates blank lines and rejects malformed input") {
  {
    std::stringstream buf("{\"vocab_size\":5,\"meta\":{}}\n\n{\"id\":\"x\",\"counts\":{\"0\":2}}\n");
    const Corpus corpus = load_corpus(buf);
    REQUIRE(corpus.documents.size() == 1);
    CHECK(corpus.documents[0].length == 2);
  }
  {
    std::stringstream buf("not json\n");
    CHECK_THROWS_AS(load_corpus(buf), InputError);
  }
  {
    std::stringstream empty("");
    CHECK_THROWS_AS(load_corpus(empty), InputError);
  }
  {
    std::stringstream buf("{\"vocab_size\":5}\n{\"id\":\"x\"}\n");  // counts missing
    CHECK_THROWS_AS(load_corpus(buf), InputError);
  }
}

TEST_CASE("raw sidecar round-trips token sequences") {
  RawCorpus raw;
  raw.vocab_size = 9;
  raw.documents.push_back({"a", {3, 3, 0, 8, 3}});
  raw.documents.push_back({"b", {1}});
  const auto path = std::filesystem::temp_directory_path() / "textlab_raw_roundtrip.jsonl";
  save_raw_corpus(raw, path);
  const RawCorpus loaded = load_raw_corpus(path);
  std::filesystem::remove(path);
  CHECK(loaded == raw);
}

}  // TEST_SUITE
