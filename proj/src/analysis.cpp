#include "textlab/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "textlab/rng.hpp"

namespace textlab {

GlobalFrequencyTable global_frequencies(const Corpus& corpus) {
  if (corpus.documents.empty()) throw std::domain_error("empty corpus");
  GlobalFrequencyTable table;
  table.freq.assign(corpus.vocab_size, 0);
  for (const auto& doc : corpus.documents) {
    for (const auto& [term, count] : doc.counts) {
      table.freq[term] += count;
      table.total_tokens += count;
    }
  }
  table.rank_order.resize(corpus.vocab_size);
  std::iota(table.rank_order.begin(), table.rank_order.end(), 0);
  std::sort(table.rank_order.begin(), table.rank_order.end(),
            [&](TermId a, TermId b) {
              if (table.freq[a] != table.freq[b]) return table.freq[a] > table.freq[b];
              return a < b;
            });
  return table;
}

Histogram zipf_histogram(const GlobalFrequencyTable& table, const BinSpec& spec) {
  std::vector<double> values;
  values.reserve(table.freq.size());
  for (const auto f : table.freq) {
    if (f > 0) values.push_back(static_cast<double>(f));
  }
  return Histogram::build(spec, values);
}

HeapsCurve measure_heaps(const Corpus& corpus, HeapsMode mode, const BinSpec& spec) {
  if (mode == HeapsMode::kPrefix) {
    throw std::domain_error(
        "prefix mode requires token sequences (raw corpus input)");
  }
  bool any = false;
  // Accumulate (sum n, sum w, count) per occupied length bin.
  std::map<std::int64_t, std::array<double, 3>> bins;
  for (const auto& doc : corpus.documents) {
    if (doc.length == 0) continue;
    any = true;
    auto& cell = bins[spec.bin_index(static_cast<double>(doc.length))];
    cell[0] += static_cast<double>(doc.length);
    cell[1] += static_cast<double>(document_vocab_size(doc));
    cell[2] += 1.0;
  }
  if (!any) throw std::domain_error("no non-empty documents");
  HeapsCurve curve;
  curve.lengths.reserve(bins.size());
  curve.expected_w.reserve(bins.size());
  for (const auto& [idx, cell] : bins) {
    curve.lengths.push_back(cell[0] / cell[2]);
    curve.expected_w.push_back(cell[1] / cell[2]);
  }
  return curve;
}

HeapsCurve measure_heaps(const RawCorpus& raw, const BinSpec& spec) {
  std::uint64_t max_len = 0;
  for (const auto& doc : raw.documents)
    max_len = std::max<std::uint64_t>(max_len, doc.terms.size());
  if (max_len == 0) throw std::domain_error("no non-empty documents");

  // Integer n grid from the bin edges, deduplicated after rounding.
  std::vector<std::uint64_t> grid;
  for (std::int64_t idx = spec.bin_index(1.0);; ++idx) {
    const double edge = spec.lower_edge(idx);
    if (edge > static_cast<double>(max_len)) break;
    const auto n = static_cast<std::uint64_t>(std::max(1.0, std::round(edge)));
    if (grid.empty() || grid.back() != n) grid.push_back(n);
  }

  std::vector<double> sum_w(grid.size(), 0.0);
  std::vector<std::uint64_t> doc_count(grid.size(), 0);
  std::vector<bool> seen(raw.vocab_size, false);
  std::vector<TermId> touched;
  for (const auto& doc : raw.documents) {
    touched.clear();
    std::uint64_t distinct = 0;
    std::size_t gi = 0;
    while (gi < grid.size() && grid[gi] == 0) ++gi;
    for (std::size_t pos = 0; pos < doc.terms.size(); ++pos) {
      const TermId t = doc.terms[pos];
      if (t >= raw.vocab_size) throw std::domain_error("term id out of range");
      if (!seen[t]) {
        seen[t] = true;
        touched.push_back(t);
        ++distinct;
      }
      while (gi < grid.size() && grid[gi] == pos + 1) {
        sum_w[gi] += static_cast<double>(distinct);
        ++doc_count[gi];
        ++gi;
      }
    }
    for (const TermId t : touched) seen[t] = false;
  }

  HeapsCurve curve;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    if (doc_count[gi] == 0) continue;  // no document reaches this length
    curve.lengths.push_back(static_cast<double>(grid[gi]));
    curve.expected_w.push_back(sum_w[gi] / static_cast<double>(doc_count[gi]));
  }
  return curve;
}

BurstinessReport measure_burstiness(const Corpus& corpus, double common_share,
                                    double rare_share) {
  if (!(common_share > 0.0 && common_share < 1.0) ||
      !(rare_share > 0.0 && rare_share < 1.0)) {
    throw std::domain_error("class shares must lie in (0, 1)");
  }
  const GlobalFrequencyTable table = global_frequencies(corpus);
  const double total = static_cast<double>(table.total_tokens);

  // Observed terms only; zero-frequency ids occupy no rank mass.
  std::vector<TermId> observed;
  observed.reserve(table.rank_order.size());
  for (const TermId t : table.rank_order) {
    if (table.freq[t] > 0) observed.push_back(t);
  }

  BurstinessReport report;
  report.common_share = common_share;
  report.rare_share = rare_share;

  // Shortest prefix reaching the common share; the crossing term is in.
  double acc = 0.0;
  std::size_t prefix_end = 0;  // one past the last common term
  while (prefix_end < observed.size() && acc < common_share) {
    acc += static_cast<double>(table.freq[observed[prefix_end]]) / total;
    ++prefix_end;
  }
  report.common_share_actual = acc;

  // Longest suffix staying within the rare share; an overshooting term is out.
  double rare_acc = 0.0;
  std::size_t suffix_begin = observed.size();
  while (suffix_begin > 0) {
    const double next =
        rare_acc + static_cast<double>(table.freq[observed[suffix_begin - 1]]) / total;
    if (next > rare_share) break;
    rare_acc = next;
    --suffix_begin;
  }
  report.rare_share_actual = rare_acc;
  report.middle_share_actual = 1.0 - acc - rare_acc;

  if (suffix_begin < prefix_end) throw std::domain_error("frequency classes overlap");

  report.common_terms.assign(observed.begin(), observed.begin() + prefix_end);
  report.rare_terms.assign(observed.begin() + suffix_begin, observed.end());

  // 0 = neither, 1 = common, 2 = rare.
  std::vector<std::uint8_t> class_of(corpus.vocab_size, 0);
  for (const TermId t : report.common_terms) class_of[t] = 1;
  for (const TermId t : report.rare_terms) class_of[t] = 2;

  std::vector<double> common_values;
  std::vector<double> rare_values;
  for (const auto& doc : corpus.documents) {
    for (const auto& [term, count] : doc.counts) {
      if (class_of[term] == 1) common_values.push_back(count);
      else if (class_of[term] == 2) rare_values.push_back(count);
    }
  }
  report.common_incidences = common_values.size();
  report.rare_incidences = rare_values.size();
  report.common_fd = Histogram::build(BinSpec::integer(), common_values);
  report.rare_fd = Histogram::build(BinSpec::integer(), rare_values);
  return report;
}

double cosine_similarity(const Document& p, const Document& q) {
  if (p.counts.empty() || q.counts.empty())
    throw std::domain_error("cosine of an empty document");
  double dot = 0.0;
  double pp = 0.0;
  double qq = 0.0;
  auto pi = p.counts.begin();
  auto qi = q.counts.begin();
  while (pi != p.counts.end() && qi != q.counts.end()) {
    if (pi->first < qi->first) {
      pp += static_cast<double>(pi->second) * pi->second;
      ++pi;
    } else if (qi->first < pi->first) {
      qq += static_cast<double>(qi->second) * qi->second;
      ++qi;
    } else {
      dot += static_cast<double>(pi->second) * qi->second;
      pp += static_cast<double>(pi->second) * pi->second;
      qq += static_cast<double>(qi->second) * qi->second;
      ++pi;
      ++qi;
    }
  }
  for (; pi != p.counts.end(); ++pi) pp += static_cast<double>(pi->second) * pi->second;
  for (; qi != q.counts.end(); ++qi) qq += static_cast<double>(qi->second) * qi->second;
  return dot / std::sqrt(pp * qq);
}

BinSpec similarity_bin_spec() { return BinSpec::linear_range(0.01, 0.0, 1.0); }

namespace {

struct PairSpace {
  std::uint64_t docs = 0;

  std::uint64_t total() const { return docs * (docs - 1) / 2; }

  // Pairs are indexed row-major over i < j: index = offset(i) + (j - i - 1).
  std::uint64_t offset(std::uint64_t i) const {
    return i * (2 * docs - i - 1) / 2;
  }

  std::pair<std::uint32_t, std::uint32_t> decode(std::uint64_t k) const {
    std::uint64_t lo = 0;
    std::uint64_t hi = docs - 1;  // i < docs - 1
    while (lo + 1 < hi) {
      const std::uint64_t mid = (lo + hi) / 2;
      if (offset(mid) <= k) lo = mid;
      else hi = mid;
    }
    const std::uint64_t i = (hi > lo && offset(hi) <= k) ? hi : lo;
    const std::uint64_t j = i + 1 + (k - offset(i));
    return {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
  }
};

// Exactly `budget` distinct pair indices, uniform over [0, total).
std::vector<std::uint64_t> sample_pair_indices(std::uint64_t total,
                                               std::uint64_t budget, Rng& rng) {
  std::vector<std::uint64_t> picked;
  picked.reserve(budget);
  if (budget * 2 <= total) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(budget * 2);
    while (seen.size() < budget) {
      const std::uint64_t k = uniform_below(rng, total);
      if (seen.insert(k).second) picked.push_back(k);
    }
  } else {
    // Dense case: exclude total - budget indices instead.
    std::unordered_set<std::uint64_t> excluded;
    excluded.reserve((total - budget) * 2);
    while (excluded.size() < total - budget) excluded.insert(uniform_below(rng, total));
    for (std::uint64_t k = 0; k < total; ++k) {
      if (!excluded.count(k)) picked.push_back(k);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

SimilarityHistogram similarity_distribution(const Corpus& corpus,
                                            const BinSpec& spec,
                                            std::uint64_t pair_budget,
                                            std::uint64_t seed,
                                            unsigned threads) {
  std::vector<const Document*> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    if (!doc.counts.empty()) docs.push_back(&doc);
  }
  if (docs.size() < 2) throw std::domain_error("need at least 2 non-empty documents");
  if (pair_budget < 1) throw std::domain_error("pair budget must be >= 1");

  const PairSpace space{docs.size()};
  const std::uint64_t total = space.total();

  SimilarityHistogram result;
  result.total_pairs = total;
  result.exhaustive = total <= pair_budget;
  result.seed = seed;
  result.pair_count = result.exhaustive ? total : pair_budget;

  std::vector<std::uint64_t> sampled;
  if (!result.exhaustive) {
    Rng rng = make_stream(seed, 17);
    sampled = sample_pair_indices(total, pair_budget, rng);
  }

  std::vector<double> values(result.pair_count);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                   std::min<std::uint64_t>(
                                                       result.pair_count, 1024))));
  auto run_chunk = [&](std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    if (result.exhaustive) {
      auto [i, j] = space.decode(begin);
      for (std::uint64_t k = begin; k < end; ++k) {
        values[k] = cosine_similarity(*docs[i], *docs[j]);
        if (++j == docs.size()) {
          ++i;
          j = i + 1;
        }
      }
    } else {
      for (std::uint64_t k = begin; k < end; ++k) {
        const auto [i, j] = space.decode(sampled[k]);
        values[k] = cosine_similarity(*docs[i], *docs[j]);
      }
    }
  };

  if (workers == 1) {
    run_chunk(0, result.pair_count);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (result.pair_count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
      const std::uint64_t end = std::min(result.pair_count, begin + chunk);
      pool.emplace_back(run_chunk, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  result.histogram = Histogram::build(spec, values);
  return result;
}

}  // namespace textlab
