#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "textlab/analysis.hpp"
#include "textlab/generators.hpp"

#include <doctest.h>

using namespace textlab;

namespace {

Corpus tiny_corpus() {
  Corpus corpus;
  corpus.vocab_size = 5;
  corpus.documents.push_back(make_document("a", {{0, 2}, {1, 1}}));
  corpus.documents.push_back(make_document("b", {{1, 1}, {2, 1}}));
  return corpus;
}

// Dense-vector reference for the sparse cosine.
double dense_cosine(const Document& p, const Document& q, std::uint32_t v) {
  std::vector<double> a(v, 0.0);
  std::vector<double> b(v, 0.0);
  for (const auto& [term, count] : p.counts) a[term] = count;
  for (const auto& [term, count] : q.counts) b[term] = count;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::uint32_t t = 0; t < v; ++t) {
    dot += a[t] * b[t];
    na += a[t] * a[t];
    nb += b[t] * b[t];
  }
  return dot / std::sqrt(na * nb);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("global frequencies recount the corpus exactly") {
  const Corpus corpus = tiny_corpus();
  const auto table = global_frequencies(corpus);
  CHECK(table.freq == std::vector<std::uint64_t>{2, 2, 1, 0, 0});
  CHECK(table.total_tokens == 5);
  // Ties by term id; zero-frequency terms trail.
  CHECK(table.rank_order == std::vector<TermId>{0, 1, 2, 3, 4});
  CHECK_THROWS_AS(global_frequencies(Corpus{}), std::domain_error);
}

TEST_CASE("identical documents double frequencies but keep the order") {
  Corpus corpus;
  corpus.vocab_size = 3;
  corpus.documents.push_back(make_document("a", {{0, 2}, {1, 1}}));
  corpus.documents.push_back(make_document("b", {{0, 2}, {1, 1}}));
  const auto table = global_frequencies(corpus);
  CHECK(table.freq == std::vector<std::uint64_t>{4, 2, 0});
  CHECK(table.rank_order[0] == 0);
  CHECK(table.rank_order[1] == 1);
}

TEST_CASE("frequency recount matches a generated corpus token by token") {
  ModelParams p;
  p.vocab_size = 30;
  p.num_docs = 50;
  p.lognormal_mu = 3.0;
  p.lognormal_sigma2 = 0.4;
  p.sampler_exponent = 1.0;
  p.seed = 61;
  const Corpus corpus = generate_zipf_null(p);
  const auto table = global_frequencies(corpus);
  std::vector<std::uint64_t> recount(30, 0);
  std::uint64_t total = 0;
  for (const auto& doc : corpus.documents)
    for (const auto& [term, count] : doc.counts) {
      recount[term] += count;
      total += count;
    }
  CHECK(table.freq == recount);
  CHECK(table.total_tokens == total);
  CHECK(total == corpus.total_tokens());
}

TEST_CASE("zipf histogram counts terms by frequency value") {
  Corpus corpus;
  corpus.vocab_size = 8;
  // f_g values: 8, 4, 4, 2, 2, 2, 2, 1.
  corpus.documents.push_back(make_document(
      "a", {{0, 8}, {1, 4}, {2, 4}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 1}}));
  const auto table = global_frequencies(corpus);
  const Histogram h = zipf_histogram(table, BinSpec::logarithmic(2.0));
  // Bins [1,2): 1 term; [2,4): 4; [4,8): 2; [8,16): 1.
  REQUIRE(h.bins().size() == 4);
  CHECK(h.bins()[0].count == 1);
  CHECK(h.bins()[1].count == 4);
  CHECK(h.bins()[2].count == 2);
  CHECK(h.bins()[3].count == 1);
  CHECK(h.total() == 8);
}

TEST_CASE("zipf histogram ignores unseen vocabulary") {
  const Corpus corpus = tiny_corpus();  // terms 3 and 4 never occur
  const Histogram h = zipf_histogram(global_frequencies(corpus), BinSpec::integer());
  CHECK(h.total() == 3);
}

TEST_CASE("per-document heaps on a uniform corpus gives one point per length") {
  Corpus corpus;
  corpus.vocab_size = 10;
  corpus.documents.push_back(make_document("a", {{0, 1}, {1, 1}, {2, 1}}));
  const auto curve = measure_heaps(corpus, HeapsMode::kPerDocument);
  REQUIRE(curve.lengths.size() == 1);
  CHECK(curve.lengths[0] == 3.0);
  CHECK(curve.expected_w[0] == 3.0);

  Corpus repeated;
  repeated.vocab_size = 2;
  repeated.documents.push_back(make_document("b", {{0, 50}}));
  const auto point = measure_heaps(repeated, HeapsMode::kPerDocument);
  REQUIRE(point.lengths.size() == 1);
  CHECK(point.lengths[0] == 50.0);
  CHECK(point.expected_w[0] == 1.0);
}

TEST_CASE("per-document heaps averages within length bins") {
  Corpus corpus;
  corpus.vocab_size = 100;
  // Two docs in the same log bin (lengths 10 and 12), one far away.
  corpus.documents.push_back(make_document("a", {{0, 5}, {1, 5}}));          // n=10, w=2
  corpus.documents.push_back(make_document("b", {{0, 3}, {1, 3}, {2, 6}}));  // n=12, w=3
  corpus.documents.push_back(make_document("c", {{0, 1000}}));               // n=1000, w=1
  const auto curve = measure_heaps(corpus, HeapsMode::kPerDocument, BinSpec::logarithmic(10.0));
  REQUIRE(curve.lengths.size() == 2);
  CHECK(curve.lengths[0] == doctest::Approx(11.0));
  CHECK(curve.expected_w[0] == doctest::Approx(2.5));
  CHECK(curve.lengths[1] == doctest::Approx(1000.0));
  CHECK(curve.expected_w[1] == doctest::Approx(1.0));
}

TEST_CASE("prefix mode needs token sequences") {
  CHECK_THROWS_AS(measure_heaps(tiny_corpus(), HeapsMode::kPrefix), std::domain_error);
}

TEST_CASE("prefix heaps walks token order and drops short documents") {
  RawCorpus raw;
  raw.vocab_size = 6;
  raw.documents.push_back({"a", {0, 0, 1, 2, 0, 3}});  // w(1)=1 w(2)=1 w(4)=3 w(6)=4
  raw.documents.push_back({"b", {5, 4}});              // w(1)=1 w(2)=2
  const auto curve = measure_heaps(raw, BinSpec::logarithmic(2.0));
  // Grid from edges 1, 2, 4 (and 8 > max length 6 stops the grid).
  REQUIRE(curve.lengths.size() == 3);
  CHECK(curve.lengths[0] == 1.0);
  CHECK(curve.expected_w[0] == doctest::Approx(1.0));  // both docs
  CHECK(curve.lengths[1] == 2.0);
  CHECK(curve.expected_w[1] == doctest::Approx(1.5));  // (1 + 2) / 2
  CHECK(curve.lengths[2] == 4.0);
  CHECK(curve.expected_w[2] == doctest::Approx(3.0));  // only doc a remains
}

TEST_CASE("burstiness crosses the common share and respects the rare cap") {
  Corpus corpus;
  corpus.vocab_size = 4;
  // Frequencies: t0=80, t1=10, t2=6, t3=4 (total 100).
  corpus.documents.push_back(make_document("a", {{0, 80}, {1, 10}, {2, 6}, {3, 4}}));
  const auto report = measure_burstiness(corpus, 0.71, 0.08);
  // t0 alone crosses 0.71; suffix: t3 (0.04) + t2 (0.06) would overshoot 0.08.
  CHECK(report.common_terms == std::vector<TermId>{0});
  CHECK(report.rare_terms == std::vector<TermId>{3});
  CHECK(report.common_share_actual == doctest::Approx(0.80));
  CHECK(report.rare_share_actual == doctest::Approx(0.04));
  CHECK(report.middle_share_actual == doctest::Approx(0.16));
  CHECK(report.common_incidences == 1);
  CHECK(report.rare_incidences == 1);
}

TEST_CASE("burstiness histograms are normalized over incidences") {
  Corpus corpus;
  corpus.vocab_size = 3;
  // t0 dominates (92/98); t1 and t2 each hold 3/98, and the suffix
  // {t1, t2} has cumulative share 6/98 <= 0.08, so both are rare.
  corpus.documents.push_back(make_document("a", {{0, 40}, {2, 2}}));
  corpus.documents.push_back(make_document("b", {{0, 52}, {1, 3}, {2, 1}}));
  const auto report = measure_burstiness(corpus, 0.71, 0.08);
  CHECK(report.common_terms == std::vector<TermId>{0});
  CHECK(report.rare_terms == std::vector<TermId>{1, 2});
  CHECK(report.rare_incidences == 3);
  // Rare f_d values: t1 in b (3), t2 in a (2), t2 in b (1) -> mass 1/3 each.
  const auto mass = report.rare_fd.mass();
  double sum = 0.0;
  for (double m : mass) sum += m;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.rare_fd.total() == 3);
  REQUIRE(report.rare_fd.bins().size() == 3);
  for (const auto& bin : report.rare_fd.bins()) CHECK(bin.count == 1);

  // Every document holding exactly one distinct term once: point mass at 1.
  Corpus singles;
  singles.vocab_size = 3;
  singles.documents.push_back(make_document("a", {{0, 1}}));
  singles.documents.push_back(make_document("b", {{1, 1}}));
  singles.documents.push_back(make_document("c", {{2, 1}}));
  const auto point = measure_burstiness(singles, 0.5, 0.3);
  REQUIRE(point.common_fd.bins().size() == 1);
  CHECK(point.common_fd.bins()[0].index == 1);
}

TEST_CASE("burstiness rejects bad shares and overlapping classes") {
  const Corpus corpus = tiny_corpus();
  CHECK_THROWS_AS(measure_burstiness(corpus, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(measure_burstiness(corpus, 1.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(measure_burstiness(corpus, 0.7, -0.1), std::domain_error);
  // Shares demanding overlapping prefix and suffix must fail.
  CHECK_THROWS_AS(measure_burstiness(corpus, 0.99, 0.99), std::domain_error);
}

TEST_CASE("cosine matches hand values and rejects empty documents") {
  const Document p = make_document("p", {{0, 1}, {1, 2}});
  const Document q = make_document("q", {{1, 1}, {2, 1}});
  CHECK(cosine_similarity(p, q) == doctest::Approx(2.0 / std::sqrt(10.0)).epsilon(1e-12));
  CHECK(cosine_similarity(p, p) == doctest::Approx(1.0).epsilon(1e-12));
  const Document disjoint = make_document("r", {{3, 4}});
  CHECK(cosine_similarity(p, disjoint) == 0.0);
  Document empty;
  empty.id = "e";
  CHECK_THROWS_AS(cosine_similarity(p, empty), std::domain_error);
}

TEST_CASE("cosine is symmetric, scale-invariant, and matches the dense oracle") {
  ModelParams params;
  params.vocab_size = 30;
  params.num_docs = 40;
  params.lognormal_mu = 2.5;
  params.lognormal_sigma2 = 0.5;
  params.sampler_exponent = 1.0;
  params.seed = 77;
  const Corpus corpus = generate_zipf_null(params);
  for (std::size_t i = 0; i < corpus.documents.size(); i += 3) {
    for (std::size_t j = i + 1; j < corpus.documents.size(); j += 5) {
      const auto& p = corpus.documents[i];
      const auto& q = corpus.documents[j];
      const double s = cosine_similarity(p, q);
      CHECK(s == doctest::Approx(cosine_similarity(q, p)).epsilon(1e-15));
      CHECK(s == doctest::Approx(dense_cosine(p, q, 30)).epsilon(1e-12));
      CHECK(s >= 0.0);
      CHECK(s <= 1.0 + 1e-12);
      // Scaling every count of one side leaves the cosine unchanged.
      Document scaled = p;
      for (auto& [term, count] : scaled.counts) count *= 7;
      scaled.length *= 7;
      CHECK(cosine_similarity(scaled, q) == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("two identical documents give a point mass at similarity one") {
  Corpus corpus;
  corpus.vocab_size = 4;
  corpus.documents.push_back(make_document("a", {{0, 2}, {1, 1}}));
  corpus.documents.push_back(make_document("b", {{0, 2}, {1, 1}}));
  const auto sim = similarity_distribution(corpus, similarity_bin_spec());
  CHECK(sim.exhaustive);
  CHECK(sim.pair_count == 1);
  CHECK(sim.total_pairs == 1);
  // All mass in the last bin [0.99, 1.0), which holds s = 1 by clamping.
  const auto& bins = sim.histogram.bins();
  CHECK(bins.back().count == 1);
  CHECK(sim.histogram.total() == 1);
}

TEST_CASE("mutually disjoint documents give a point mass at zero") {
  Corpus corpus;
  corpus.vocab_size = 6;
  for (TermId t = 0; t < 6; t += 2)
    corpus.documents.push_back(make_document("d" + std::to_string(t), {{t, 3}}));
  const auto sim = similarity_distribution(corpus, similarity_bin_spec());
  CHECK(sim.pair_count == 3);
  CHECK(sim.histogram.bins().front().count == 3);
}

TEST_CASE("similarity histogram needs two usable documents") {
  Corpus corpus;
  corpus.vocab_size = 2;
  corpus.documents.push_back(make_document("a", {{0, 1}}));
  CHECK_THROWS_AS(similarity_distribution(corpus, similarity_bin_spec()),
                  std::domain_error);
}

TEST_CASE("a full-budget subsample reproduces the exhaustive histogram") {
  ModelParams params;
  params.vocab_size = 200;
  params.num_docs = 60;
  params.lognormal_mu = 3.0;
  params.lognormal_sigma2 = 0.3;
  params.sampler_exponent = 1.0;
  params.seed = 31;
  const Corpus corpus = generate_corpus(params);
  const std::uint64_t all_pairs = 60 * 59 / 2;
  const auto exhaustive =
      similarity_distribution(corpus, similarity_bin_spec(), all_pairs, 1);
  CHECK(exhaustive.exhaustive);
  // A budget equal to the pair count covers every pair: same histogram.
  const auto budgeted =
      similarity_distribution(corpus, similarity_bin_spec(), all_pairs, 99);
  REQUIRE(budgeted.histogram.bins().size() == exhaustive.histogram.bins().size());
  for (std::size_t i = 0; i < budgeted.histogram.bins().size(); ++i)
    CHECK(budgeted.histogram.bins()[i].count == exhaustive.histogram.bins()[i].count);
}

TEST_CASE("subsampling measures exactly the requested number of distinct pairs") {
  ModelParams params;
  params.vocab_size = 100;
  params.num_docs = 80;
  params.lognormal_mu = 2.0;
  params.lognormal_sigma2 = 0.2;
  params.sampler_exponent = 1.0;
  params.seed = 15;
  const Corpus corpus = generate_zipf_null(params);
  const auto sub = similarity_distribution(corpus, similarity_bin_spec(), 500, 42);
  CHECK(!sub.exhaustive);
  CHECK(sub.pair_count == 500);
  CHECK(sub.total_pairs == 80 * 79 / 2);
  CHECK(sub.histogram.total() == 500);
  CHECK(sub.seed == 42);
  // Deterministic for a fixed seed.
  const auto again = similarity_distribution(corpus, similarity_bin_spec(), 500, 42);
  for (std::size_t i = 0; i < sub.histogram.bins().size(); ++i)
    CHECK(again.histogram.bins()[i].count == sub.histogram.bins()[i].count);
  // Dense sampling path (budget > half the pairs) also hits the exact count.
  const auto dense = similarity_distribution(corpus, similarity_bin_spec(), 3000, 42);
  CHECK(!dense.exhaustive);
  CHECK(dense.pair_count == 3000);
  CHECK(dense.histogram.total() == 3000);
}

TEST_CASE("similarity is thread-count invariant") {
  ModelParams params;
  params.vocab_size = 300;
  params.num_docs = 70;
  params.lognormal_mu = 3.0;
  params.lognormal_sigma2 = 0.5;
  params.z = 0.1;
  params.sampler_exponent = 1.0;
  params.seed = 8;
  const Corpus corpus = generate_corpus(params);
  const auto one = similarity_distribution(corpus, similarity_bin_spec(), 5000000, 0, 1);
  const auto four = similarity_distribution(corpus, similarity_bin_spec(), 5000000, 0, 4);
  REQUIRE(one.histogram.bins().size() == four.histogram.bins().size());
  for (std::size_t i = 0; i < one.histogram.bins().size(); ++i)
    CHECK(one.histogram.bins()[i].count == four.histogram.bins()[i].count);
  const auto sub1 = similarity_distribution(corpus, similarity_bin_spec(), 800, 5, 1);
  const auto sub3 = similarity_distribution(corpus, similarity_bin_spec(), 800, 5, 3);
  for (std::size_t i = 0; i < sub1.histogram.bins().size(); ++i)
    CHECK(sub1.histogram.bins()[i].count == sub3.histogram.bins()[i].count);
}

}  // TEST_SUITE
