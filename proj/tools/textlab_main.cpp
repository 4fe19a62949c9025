#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "textlab/analysis.hpp"
#include "textlab/corpus.hpp"
#include "textlab/corpus_io.hpp"
#include "textlab/errors.hpp"
#include "textlab/fitting.hpp"
#include "textlab/generators.hpp"
#include "textlab/heaps.hpp"
#include "textlab/histogram.hpp"
#include "textlab/ingest.hpp"
#include "textlab/rank_sampler.hpp"

namespace fs = std::filesystem;
using namespace textlab;

namespace {

// Flag combinations the parser cannot express; mapped to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative output paths land under $TEXTLAB_OUT_DIR when it is set.
fs::path resolve_out(const fs::path& p) {
  if (p.is_absolute()) return p;
  const char* base = std::getenv("TEXTLAB_OUT_DIR");
  if (base == nullptr || *base == '\0') return p;
  return fs::path(base) / p;
}

void ensure_parent(const fs::path& path) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
}

std::ofstream open_out(const fs::path& path) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// FNV-1a 64-bit over the file's bytes, as a hex string.
std::string file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read back " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char chunk[65536];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(chunk[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Every command writes exactly one manifest describing its run; re-running
// with the recorded parameters reproduces the recorded artifact checksums.
class Manifest {
 public:
  Manifest(std::string command, Json parameters)
      : start_(std::chrono::steady_clock::now()),
        command_(std::move(command)),
        parameters_(std::move(parameters)) {}

  void add_input(const fs::path& path) { inputs_.push_back(path.string()); }
  void add_output(const fs::path& path) {
    outputs_.push_back({{"path", path.string()}, {"checksum", file_checksum(path)}});
  }

  void write(const fs::path& path) {
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    Json m{{"command", command_},
           {"parameters", parameters_},
           {"inputs", inputs_},
           {"outputs", outputs_},
           {"duration_seconds", elapsed}};
    auto out = open_out(path);
    out << m.dump(2) << '\n';
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::string command_;
  Json parameters_;
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
};

void write_json(const fs::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

// lo,hi,count,density rows for a histogram.
void write_histogram_csv(const fs::path& path, const Histogram& h) {
  auto out = open_out(path);
  out << "lo,hi,count,density\n";
  const auto density = h.densities();
  for (std::size_t i = 0; i < h.bins().size(); ++i) {
    const auto& bin = h.bins()[i];
    out << num(bin.lo) << ',' << num(bin.hi) << ',' << bin.count << ','
        << num(density[i]) << '\n';
  }
}

void write_curve_csv(const fs::path& path, const HeapsCurve& curve) {
  auto out = open_out(path);
  out << "n,expected_w\n";
  for (std::size_t i = 0; i < curve.lengths.size(); ++i)
    out << num(curve.lengths[i]) << ',' << num(curve.expected_w[i]) << '\n';
}

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string model;
  std::string out;
  std::string topics;
  std::uint32_t vocab = 0;
  std::uint64_t docs = 0;
  double mu = 0.0;
  double sigma2 = 0.0;
  double gamma_s = 1.0;
  double z = 1.0;
  std::uint64_t seed = 0;
  bool vocab_set = false, docs_set = false, mu_set = false, sigma2_set = false;
};

std::vector<TopicProfile> load_topic_profiles(const fs::path& path,
                                              std::uint32_t& vocab_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  Json j;
  try {
    in >> j;
    vocab_out = j.at("vocab_size").get<std::uint32_t>();
    std::vector<TopicProfile> profiles;
    for (const Json& p : j.at("profiles")) {
      TopicProfile profile;
      profile.topic_id = p.at("topic_id").get<std::string>();
      for (const Json& tp : p.at("term_probs"))
        profile.term_probs.emplace_back(tp.at(0).get<TermId>(),
                                        tp.at(1).get<double>());
      profile.doc_count = p.at("doc_count").get<std::uint64_t>();
      if (p.contains("doc_lengths"))
        profile.doc_lengths = p.at("doc_lengths").get<std::vector<std::uint64_t>>();
      profile.lognormal_mu = p.value("lognormal_mu", 0.0);
      profile.lognormal_sigma2 = p.value("lognormal_sigma2", 0.0);
      profiles.push_back(std::move(profile));
    }
    return profiles;
  } catch (const Json::exception& e) {
    throw InputError("malformed topic profile file: " + std::string(e.what()));
  }
}

int cmd_generate(const GenerateArgs& args) {
  const fs::path out = resolve_out(args.out);
  Corpus corpus;
  Json params_json;
  if (args.model == "topic") {
    if (args.topics.empty())
      throw UsageError("--model topic requires --topics <profile file>");
    std::uint32_t vocab = 0;
    const auto profiles = load_topic_profiles(args.topics, vocab);
    if (args.vocab_set && args.vocab != vocab)
      throw UsageError("--vocab disagrees with the profile file");
    try {
      corpus = generate_topic_corpus(profiles, vocab, args.seed);
    } catch (const std::domain_error& e) {
      throw InputError(std::string("invalid topic profile: ") + e.what());
    }
    params_json = {{"model", "topic"},
                   {"topics", args.topics},
                   {"vocab", vocab},
                   {"seed", args.seed}};
  } else {
    if (!args.vocab_set || !args.docs_set || !args.mu_set || !args.sigma2_set)
      throw UsageError("--model " + args.model +
                       " requires --vocab, --docs, --mu, and --sigma2");
    ModelParams params;
    params.vocab_size = args.vocab;
    params.num_docs = args.docs;
    params.lognormal_mu = args.mu;
    params.lognormal_sigma2 = args.sigma2;
    params.sampler_exponent = args.gamma_s;
    params.z = args.z;
    params.seed = args.seed;
    validate_params(params);
    corpus = args.model == "dynamic" ? generate_corpus(params)
                                     : generate_zipf_null(params);
    params_json = params_to_json(params);
    params_json["model"] = args.model;
  }

  Manifest manifest("generate", params_json);
  ensure_parent(out);
  save_corpus(corpus, out);
  manifest.add_output(out);
  if (!args.topics.empty()) manifest.add_input(args.topics);
  manifest.write(out.string() + ".manifest.json");
  return 0;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string corpus;
  std::string out_dir;
  std::string raw;  // token-sequence sidecar, enables prefix-mode heaps
  std::vector<std::string> compare;
  bool zipf = false, heaps = false, burstiness = false, similarity = false;
  std::string heaps_mode = "perdoc";
  double common_share = 0.71;
  double rare_share = 0.08;
  std::uint64_t pair_budget = 5000000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 0;
};

void write_compare_csv(const fs::path& out_path, const fs::path& a,
                       const fs::path& b) {
  const auto read_lines = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot open " + p.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw InputError("empty report: " + p.string());
    return lines;
  };
  const auto la = read_lines(a);
  const auto lb = read_lines(b);
  if (la[0] != lb[0])
    throw InputError("report headers differ: '" + la[0] + "' vs '" + lb[0] + "'");
  std::string src_a = a.stem().string();
  std::string src_b = b.stem().string();
  if (src_a == src_b) {
    src_a = a.string();
    src_b = b.string();
  }
  auto out = open_out(out_path);
  out << "source," << la[0] << '\n';
  for (std::size_t i = 1; i < la.size(); ++i) out << src_a << ',' << la[i] << '\n';
  for (std::size_t i = 1; i < lb.size(); ++i) out << src_b << ',' << lb[i] << '\n';
}

int cmd_analyze(AnalyzeArgs args) {
  if (!(args.common_share > 0.0 && args.common_share < 1.0) ||
      !(args.rare_share > 0.0 && args.rare_share < 1.0))
    throw UsageError("--common-share and --rare-share must lie in (0, 1)");
  if (args.corpus.empty() && args.compare.empty())
    throw UsageError("nothing to do: give a corpus and/or --compare");
  const bool none_selected =
      !args.zipf && !args.heaps && !args.burstiness && !args.similarity;
  if (none_selected) args.zipf = args.heaps = args.burstiness = args.similarity = true;
  if (args.heaps_mode != "perdoc" && args.heaps_mode != "prefix")
    throw UsageError("--heaps-mode must be perdoc or prefix");
  if (args.heaps_mode == "prefix" && args.raw.empty())
    throw UsageError("--heaps-mode prefix requires --raw <sidecar>");
  if (!args.corpus.empty() && args.similarity && !args.seed_set)
    throw UsageError("similarity subsampling is randomized: --seed is required");
  const unsigned threads = args.threads == 0 ? default_threads() : args.threads;

  const fs::path dir = resolve_out(args.out_dir);
  fs::create_directories(dir);
  Json params{{"common_share", args.common_share},
              {"rare_share", args.rare_share},
              {"pair_budget", args.pair_budget},
              {"heaps_mode", args.heaps_mode},
              {"threads", threads}};
  if (args.seed_set) params["seed"] = args.seed;
  Manifest manifest("analyze", params);

  if (!args.corpus.empty()) {
    const Corpus corpus = load_corpus(args.corpus);
    manifest.add_input(args.corpus);
    try {
      if (args.zipf) {
        const auto table = global_frequencies(corpus);
        auto ranks = open_out(dir / "zipf_ranks.csv");
        ranks << "rank,term,frequency\n";
        std::uint64_t rank = 0;
        for (TermId t : table.rank_order) {
          if (table.freq[t] == 0) break;
          ranks << ++rank << ',' << t << ',' << table.freq[t] << '\n';
        }
        ranks.close();
        manifest.add_output(dir / "zipf_ranks.csv");
        write_histogram_csv(dir / "zipf_hist.csv",
                            zipf_histogram(table, BinSpec::log_per_decade(10)));
        manifest.add_output(dir / "zipf_hist.csv");
      }
      if (args.heaps) {
        HeapsCurve curve;
        if (args.heaps_mode == "prefix") {
          const RawCorpus raw = load_raw_corpus(args.raw);
          manifest.add_input(args.raw);
          curve = measure_heaps(raw, BinSpec::log_per_decade(10));
        } else {
          curve = measure_heaps(corpus, HeapsMode::kPerDocument,
                                BinSpec::log_per_decade(10));
        }
        write_curve_csv(dir / "heaps.csv", curve);
        manifest.add_output(dir / "heaps.csv");
      }
      if (args.burstiness) {
        const auto report =
            measure_burstiness(corpus, args.common_share, args.rare_share);
        auto csv = open_out(dir / "burstiness.csv");
        csv << "class,f_d,count,mass\n";
        const auto dump_class = [&csv](const char* name, const Histogram& h) {
          const auto mass = h.mass();
          for (std::size_t i = 0; i < h.bins().size(); ++i)
            if (h.bins()[i].count > 0)
              csv << name << ',' << h.bins()[i].index << ',' << h.bins()[i].count
                  << ',' << num(mass[i]) << '\n';
        };
        dump_class("common", report.common_fd);
        dump_class("rare", report.rare_fd);
        csv.close();
        manifest.add_output(dir / "burstiness.csv");
        write_json(dir / "burstiness.json",
                   Json{{"common_share", report.common_share},
                        {"rare_share", report.rare_share},
                        {"common_share_actual", report.common_share_actual},
                        {"rare_share_actual", report.rare_share_actual},
                        {"middle_share_actual", report.middle_share_actual},
                        {"common_terms", report.common_terms.size()},
                        {"rare_terms", report.rare_terms.size()},
                        {"common_incidences", report.common_incidences},
                        {"rare_incidences", report.rare_incidences}});
        manifest.add_output(dir / "burstiness.json");
      }
      if (args.similarity) {
        const auto sim =
            similarity_distribution(corpus, similarity_bin_spec(),
                                    args.pair_budget, args.seed, threads);
        write_histogram_csv(dir / "similarity.csv", sim.histogram);
        manifest.add_output(dir / "similarity.csv");
        write_json(dir / "similarity.json",
                   Json{{"pair_count", sim.pair_count},
                        {"total_pairs", sim.total_pairs},
                        {"exhaustive", sim.exhaustive},
                        {"seed", sim.seed}});
        manifest.add_output(dir / "similarity.json");
      }
    } catch (const std::domain_error& e) {
      // The corpus cannot support the requested measurement.
      throw InputError(e.what());
    }
  }

  if (!args.compare.empty()) {
    manifest.add_input(args.compare[0]);
    manifest.add_input(args.compare[1]);
    write_compare_csv(dir / "compare.csv", args.compare[0], args.compare[1]);
    manifest.add_output(dir / "compare.csv");
  }

  manifest.write(dir / "manifest.json");
  return 0;
}

// ------------------------------------------------------------------- heaps

struct HeapsArgs {
  std::string mode;
  std::string out;
  std::string table;
  std::uint32_t vocab = 0;
  bool vocab_set = false;
  double gamma = 0.0;
  bool gamma_set = false;
  bool uniform = false;
  double nmax = 0.0;
};

RankDistribution load_rank_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<double> weights;
  double w = 0.0;
  while (in >> w) weights.push_back(w);
  if (!in.eof()) throw InputError("non-numeric entry in " + path.string());
  try {
    return RankDistribution::from_table(std::move(weights));
  } catch (const std::domain_error& e) {
    throw InputError("invalid rank table: " + std::string(e.what()));
  }
}

int cmd_heaps(const HeapsArgs& args) {
  const int sources = (args.gamma_set ? 1 : 0) + (args.uniform ? 1 : 0) +
                      (args.table.empty() ? 0 : 1);
  if (sources != 1)
    throw UsageError("give exactly one of --gamma, --uniform, --table");
  if (args.table.empty() && !args.vocab_set)
    throw UsageError("--vocab is required unless --table is given");
  if (!(args.nmax >= 1.0)) throw UsageError("--nmax must be at least 1");

  RankDistribution dist =
      !args.table.empty()
          ? load_rank_table(args.table)
          : RankDistribution::power_law(args.vocab, args.uniform ? 0.0 : args.gamma);

  const auto n_max_int = static_cast<std::uint64_t>(args.nmax);
  HeapsCurve curve;
  if (args.mode == "exact") {
    const double cells = args.nmax * std::min<double>(args.nmax, dist.vocab_size());
    if (cells > 2e9)
      throw UsageError("exact mode table too large; reduce --nmax or --vocab");
    const HeapsDistribution table = evolve_master_equation(dist, n_max_int);
    for (std::uint64_t n = 1; n <= n_max_int; ++n) {
      curve.lengths.push_back(static_cast<double>(n));
      curve.expected_w.push_back(table.expected_w(n));
    }
  } else if (args.mode == "meanfield") {
    curve = expected_vocab_recursion(dist, n_max_int);
  } else {
    curve = integrate_heaps_ode(dist, args.nmax);
  }

  const fs::path out = resolve_out(args.out);
  Json params{{"mode", args.mode},
              {"vocab", dist.vocab_size()},
              {"nmax", args.nmax}};
  if (args.gamma_set) params["gamma"] = args.gamma;
  if (args.uniform) params["uniform"] = true;
  if (!args.table.empty()) params["table"] = args.table;
  Manifest manifest("heaps", params);
  if (!args.table.empty()) manifest.add_input(args.table);

  write_curve_csv(out, curve);
  manifest.add_output(out);

  Json summary{{"mode", args.mode},
               {"vocab", dist.vocab_size()},
               {"nmax", args.nmax},
               {"final_expected_w", curve.expected_w.back()}};
  try {
    const BetaFit fit = fit_beta_top_decade(curve);
    summary["beta"] = fit.beta;
    summary["beta_standard_error"] = fit.standard_error;
    summary["beta_window"] = Json{fit.n_lo, fit.n_hi};
    summary["beta_points"] = fit.points;
  } catch (const std::domain_error&) {
    summary["beta"] = nullptr;  // curve too short to fit
  }
  fs::path summary_path = out;
  summary_path.replace_extension(".summary.json");
  write_json(summary_path, summary);
  manifest.add_output(summary_path);

  manifest.write(out.string() + ".manifest.json");
  return 0;
}

// --------------------------------------------------------------------- fit

struct FitLognormalArgs {
  std::string corpus;
  std::string out;
};

int cmd_fit_lognormal(const FitLognormalArgs& args) {
  const Corpus corpus = load_corpus(args.corpus);
  std::vector<std::uint64_t> lengths;
  lengths.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) lengths.push_back(doc.length);
  LognormalFit fit;
  try {
    fit = fit_lognormal(lengths);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  const fs::path out = resolve_out(args.out);
  Manifest manifest("fit lognormal", Json{{"corpus", args.corpus}});
  manifest.add_input(args.corpus);
  write_json(out, Json{{"mu", fit.mu},
                       {"sigma2", fit.sigma2},
                       {"n_samples", fit.n_samples},
                       {"log_likelihood", fit.log_likelihood}});
  manifest.add_output(out);
  manifest.write(out.string() + ".manifest.json");
  return 0;
}

struct FitTailArgs {
  std::string corpus;
  std::string out;
  std::string method = "mle";
  std::uint64_t x_min = 0;
};

int cmd_fit_tail(const FitTailArgs& args) {
  if (args.method != "mle" && args.method != "regression")
    throw UsageError("--method must be mle or regression");
  if (args.x_min < 1) throw UsageError("--xmin must be at least 1");
  const Corpus corpus = load_corpus(args.corpus);
  std::vector<std::uint64_t> freqs;
  try {
    const auto table = global_frequencies(corpus);
    for (std::uint64_t f : table.freq)
      if (f > 0) freqs.push_back(f);
    const TailExponentFit fit = args.method == "mle"
                                    ? fit_tail_exponent(freqs, args.x_min)
                                    : fit_tail_regression(freqs, args.x_min);
    const fs::path out = resolve_out(args.out);
    Manifest manifest("fit tail", Json{{"corpus", args.corpus},
                                       {"x_min", args.x_min},
                                       {"method", args.method}});
    manifest.add_input(args.corpus);
    write_json(out, Json{{"exponent", fit.exponent},
                         {"x_min", fit.x_min},
                         {"standard_error", fit.standard_error},
                         {"method", fit.method},
                         {"n_tail", fit.n_tail}});
    manifest.add_output(out);
    manifest.write(out.string() + ".manifest.json");
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  return 0;
}

struct FitZArgs {
  std::string target;
  std::string out_dir;
  std::vector<double> grid;
  std::uint32_t vocab = 0;
  std::uint64_t docs = 0;
  double mu = 0.0;
  double sigma2 = 0.0;
  double gamma_s = 1.0;
  std::uint32_t replicas = 3;
  std::uint64_t seed = 0;
  std::uint64_t pair_budget = 5000000;
  unsigned threads = 0;
};

int cmd_fit_z(const FitZArgs& args) {
  ModelParams base;
  base.vocab_size = args.vocab;
  base.num_docs = args.docs;
  base.lognormal_mu = args.mu;
  base.lognormal_sigma2 = args.sigma2;
  base.sampler_exponent = args.gamma_s;
  base.seed = args.seed;
  try {
    validate_params(base);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const std::vector<double> grid = args.grid.empty() ? default_z_grid() : args.grid;
  for (double z : grid)
    if (!(z >= 0.0 && z <= 1.0)) throw UsageError("grid z values must lie in [0, 1]");
  if (args.replicas == 0) throw UsageError("--replicas must be at least 1");
  const unsigned threads = args.threads == 0 ? default_threads() : args.threads;

  const fs::path dir = resolve_out(args.out_dir);
  fs::create_directories(dir);
  Manifest manifest("fit z", Json{{"target", args.target},
                                  {"vocab", args.vocab},
                                  {"docs", args.docs},
                                  {"mu", args.mu},
                                  {"sigma2", args.sigma2},
                                  {"gamma_s", args.gamma_s},
                                  {"grid", grid},
                                  {"replicas", args.replicas},
                                  {"seed", args.seed},
                                  {"pair_budget", args.pair_budget},
                                  {"threads", threads}});

  const Corpus target_corpus = load_corpus(args.target);
  manifest.add_input(args.target);
  ZCalibration cal;
  try {
    const auto target = similarity_distribution(
        target_corpus, similarity_bin_spec(), args.pair_budget, args.seed, threads);
    cal = calibrate_z(target, base, grid, args.replicas, args.seed, threads);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }

  auto csv = open_out(dir / "calibration.csv");
  csv << "z,divergence,replica_mean,replica_std\n";
  for (std::size_t i = 0; i < cal.grid.size(); ++i)
    csv << num(cal.grid[i]) << ',' << num(cal.divergences[i]) << ','
        << num(cal.replica_mean[i]) << ',' << num(cal.replica_std[i]) << '\n';
  csv.close();
  manifest.add_output(dir / "calibration.csv");
  write_json(dir / "calibration.json",
             Json{{"best_z", cal.best_z},
                  {"best_index", cal.best_index},
                  {"grid", cal.grid},
                  {"divergences", cal.divergences},
                  {"replica_mean", cal.replica_mean},
                  {"replica_std", cal.replica_std},
                  {"target", cal.target_description},
                  {"replicas", cal.replicas},
                  {"seed", cal.seed}});
  manifest.add_output(dir / "calibration.json");
  manifest.write(dir / "manifest.json");
  return 0;
}

// ------------------------------------------------------------------ ingest

struct IngestArgs {
  std::string input;
  std::string out;
  std::string format = "auto";
  std::string raw;
  std::string stats;
  bool keep_case = false;
  std::size_t min_token_length = 1;
};

int cmd_ingest(const IngestArgs& args) {
  std::string format = args.format;
  if (format == "auto")
    format = fs::is_directory(args.input) ? "dir" : "jsonl";
  if (format != "dir" && format != "jsonl" && format != "corpus")
    throw UsageError("--format must be auto, dir, jsonl, or corpus");
  if (format == "corpus" && !args.raw.empty())
    throw UsageError("--raw is unavailable for --format corpus (counts only)");

  const fs::path out = resolve_out(args.out);
  const fs::path stats_path =
      args.stats.empty() ? fs::path(out.string() + ".stats.json")
                         : resolve_out(args.stats);
  Manifest manifest("ingest", Json{{"input", args.input},
                                   {"format", format},
                                   {"lowercase", !args.keep_case},
                                   {"min_token_length", args.min_token_length}});
  manifest.add_input(args.input);

  Corpus corpus;
  CorpusStats stats;
  if (format == "corpus") {
    corpus = load_corpus(args.input);
    try {
      stats = compute_stats(corpus);
    } catch (const std::domain_error& e) {
      throw InputError(e.what());
    }
  } else {
    TokenizerConfig cfg;
    cfg.lowercase = !args.keep_case;
    cfg.min_token_length = args.min_token_length;
    const auto docs = format == "dir" ? read_text_directory(args.input, cfg)
                                      : read_jsonl_texts(fs::path(args.input), cfg);
    BuiltCorpus built;
    try {
      built = build_corpus(docs);
    } catch (const std::domain_error& e) {
      throw InputError(e.what());
    }
    corpus = std::move(built.corpus);
    stats = built.stats;
    corpus.meta = Json{{"source", args.input},
                       {"term_strings", built.term_strings}};
    if (!args.raw.empty()) {
      const fs::path raw_path = resolve_out(args.raw);
      ensure_parent(raw_path);
      save_raw_corpus(built.raw, raw_path);
      manifest.add_output(raw_path);
    }
  }

  ensure_parent(out);
  save_corpus(corpus, out);
  manifest.add_output(out);
  write_json(stats_path, stats_to_json(stats));
  manifest.add_output(stats_path);
  manifest.write(out.string() + ".manifest.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generative corpus simulator and statistics lab"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "write a synthetic corpus");
  cmd_gen->add_option("--model", gen.model, "dynamic | null | topic")
      ->required()
      ->check(CLI::IsMember({"dynamic", "null", "topic"}));
  cmd_gen->add_option("--out", gen.out, "corpus output path")->required();
  cmd_gen->add_option("--vocab", gen.vocab, "vocabulary size V")
      ->check(CLI::PositiveNumber);
  cmd_gen->add_option("--docs", gen.docs, "number of documents D");
  cmd_gen->add_option("--mu", gen.mu, "lognormal mu of document length");
  cmd_gen->add_option("--sigma2", gen.sigma2, "lognormal sigma^2");
  cmd_gen->add_option("--gamma-s", gen.gamma_s, "rank sampler exponent")->capture_default_str();
  cmd_gen->add_option("--z", gen.z, "memory parameter in [0, 1]")->capture_default_str();
  cmd_gen->add_option("--seed", gen.seed, "master RNG seed")->required();
  cmd_gen->add_option("--topics", gen.topics, "topic profile JSON (topic model)");

  AnalyzeArgs an;
  auto* cmd_an = app.add_subcommand("analyze", "measure corpus statistics");
  cmd_an->add_option("corpus", an.corpus, "corpus file");
  cmd_an->add_option("--out-dir", an.out_dir, "report directory")->required();
  cmd_an->add_flag("--zipf", an.zipf, "global frequency reports");
  cmd_an->add_flag("--heaps", an.heaps, "vocabulary growth report");
  cmd_an->add_flag("--burstiness", an.burstiness, "per-class f_d report");
  cmd_an->add_flag("--similarity", an.similarity, "pairwise cosine report");
  cmd_an->add_option("--heaps-mode", an.heaps_mode, "perdoc | prefix")->capture_default_str();
  cmd_an->add_option("--raw", an.raw, "token-sequence sidecar for prefix mode");
  cmd_an->add_option("--common-share", an.common_share, "common-class share")->capture_default_str();
  cmd_an->add_option("--rare-share", an.rare_share, "rare-class share")->capture_default_str();
  cmd_an->add_option("--pair-budget", an.pair_budget, "max similarity pairs")->capture_default_str();
  cmd_an->add_option("--seed", an.seed, "seed for pair subsampling");
  cmd_an->add_option("--threads", an.threads, "worker threads (0 = auto)");
  cmd_an->add_option("--compare", an.compare,
                     "merge two report CSVs into compare.csv")
      ->expected(2);

  HeapsArgs hp;
  auto* cmd_hp = app.add_subcommand("heaps", "vocabulary-growth analytics");
  cmd_hp->add_option("--mode", hp.mode, "exact | meanfield | ode")
      ->required()
      ->check(CLI::IsMember({"exact", "meanfield", "ode"}));
  cmd_hp->add_option("--vocab", hp.vocab, "vocabulary size V");
  cmd_hp->add_option("--gamma", hp.gamma, "rank distribution exponent");
  cmd_hp->add_flag("--uniform", hp.uniform, "uniform rank distribution");
  cmd_hp->add_option("--table", hp.table, "empirical rank weights, one per line");
  cmd_hp->add_option("--nmax", hp.nmax, "largest document length")->required();
  cmd_hp->add_option("--out", hp.out, "curve CSV path")->required();

  auto* cmd_fit = app.add_subcommand("fit", "parameter estimation");
  cmd_fit->require_subcommand(1);

  FitLognormalArgs fl;
  auto* cmd_fl = cmd_fit->add_subcommand("lognormal", "document-length fit");
  cmd_fl->add_option("--corpus", fl.corpus, "corpus file")->required();
  cmd_fl->add_option("--out", fl.out, "fit JSON path")->required();

  FitTailArgs ft;
  auto* cmd_ft = cmd_fit->add_subcommand("tail", "frequency tail exponent");
  cmd_ft->add_option("--corpus", ft.corpus, "corpus file")->required();
  cmd_ft->add_option("--xmin", ft.x_min, "tail cutoff (inclusive)")->required();
  cmd_ft->add_option("--method", ft.method, "mle | regression")->capture_default_str();
  cmd_ft->add_option("--out", ft.out, "fit JSON path")->required();

  FitZArgs fz;
  auto* cmd_fz = cmd_fit->add_subcommand("z", "memory-parameter calibration");
  cmd_fz->add_option("--target", fz.target, "target corpus file")->required();
  cmd_fz->add_option("--out-dir", fz.out_dir, "calibration output directory")
      ->required();
  cmd_fz->add_option("--vocab", fz.vocab, "model vocabulary size")->required();
  cmd_fz->add_option("--docs", fz.docs, "model document count")->required();
  cmd_fz->add_option("--mu", fz.mu, "lognormal mu")->required();
  cmd_fz->add_option("--sigma2", fz.sigma2, "lognormal sigma^2")->required();
  cmd_fz->add_option("--gamma-s", fz.gamma_s, "rank sampler exponent")->capture_default_str();
  cmd_fz->add_option("--grid", fz.grid, "candidate z values")->delimiter(',');
  cmd_fz->add_option("--replicas", fz.replicas, "corpora per candidate")->capture_default_str();
  cmd_fz->add_option("--seed", fz.seed, "master RNG seed")->required();
  cmd_fz->add_option("--pair-budget", fz.pair_budget, "max similarity pairs")->capture_default_str();
  cmd_fz->add_option("--threads", fz.threads, "worker threads (0 = auto)");

  IngestArgs ing;
  auto* cmd_ing = app.add_subcommand("ingest", "build a corpus from text");
  cmd_ing->add_option("--input", ing.input, "directory, JSONL file, or corpus")
      ->required();
  cmd_ing->add_option("--out", ing.out, "corpus output path")->required();
  cmd_ing->add_option("--format", ing.format, "auto | dir | jsonl | corpus")->capture_default_str();
  cmd_ing->add_option("--raw", ing.raw, "also write a token-sequence sidecar");
  cmd_ing->add_option("--stats", ing.stats, "stats JSON path");
  cmd_ing->add_flag("--keep-case", ing.keep_case, "skip ASCII lowercasing");
  cmd_ing->add_option("--min-token-length", ing.min_token_length,
                      "drop shorter tokens")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_gen->parsed()) {
      gen.vocab_set = cmd_gen->count("--vocab") > 0;
      gen.docs_set = cmd_gen->count("--docs") > 0;
      gen.mu_set = cmd_gen->count("--mu") > 0;
      gen.sigma2_set = cmd_gen->count("--sigma2") > 0;
      return cmd_generate(gen);
    }
    if (cmd_an->parsed()) {
      an.seed_set = cmd_an->count("--seed") > 0;
      return cmd_analyze(an);
    }
    if (cmd_hp->parsed()) {
      hp.vocab_set = cmd_hp->count("--vocab") > 0;
      hp.gamma_set = cmd_hp->count("--gamma") > 0;
      return cmd_heaps(hp);
    }
    if (cmd_fl->parsed()) return cmd_fit_lognormal(fl);
    if (cmd_ft->parsed()) return cmd_fit_tail(ft);
    if (cmd_fz->parsed()) return cmd_fit_z(fz);
    if (cmd_ing->parsed()) return cmd_ingest(ing);
    std::fprintf(stderr, "error: no command selected\n");
    return 1;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
