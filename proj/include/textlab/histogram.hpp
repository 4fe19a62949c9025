#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace textlab {

enum class Binning { kLinear, kLogarithmic, kInteger };

// Anchored binning grid. Linear bins are [k*width, (k+1)*width), logarithmic
// bins are [base^k, base^(k+1)), integer bins are [k, k+1). Because the grid
// is anchored (not data-dependent), histograms built with the same spec have
// commensurable bins and can be merged or compared bin-wise.
struct BinSpec {
  Binning kind = Binning::kInteger;
  double width = 1.0;  // linear
  double base = 2.0;   // logarithmic, > 1
  // When set (linear only), the histogram covers exactly [lo, hi) and values
  // outside are clamped into the edge bins; hi itself lands in the last bin.
  std::optional<std::pair<double, double>> range;

  static BinSpec integer();
  static BinSpec linear(double width);
  static BinSpec linear_range(double width, double lo, double hi);
  static BinSpec logarithmic(double base);
  static BinSpec log_per_decade(int bins_per_decade);
  // "int" | "linear:<width>" | "log:<base>" | "logdec:<bins per decade>"
  static BinSpec parse(const std::string& text);

  std::string describe() const;
  bool operator==(const BinSpec& other) const;

  std::int64_t bin_index(double x) const;
  double lower_edge(std::int64_t index) const;
  double upper_edge(std::int64_t index) const;
};

struct HistogramBin {
  std::int64_t index = 0;  // ordinal in the spec's anchored grid
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t count = 0;
};

// Sample counts over a contiguous run of anchored bins. Interior bins with
// zero count are materialized so that bins tile [lo, hi) without gaps.
class Histogram {
 public:
  Histogram() = default;

  static Histogram build(const BinSpec& spec, std::span<const double> values);

  const BinSpec& spec() const { return spec_; }
  const std::vector<HistogramBin>& bins() const { return bins_; }
  std::uint64_t total() const { return total_; }

  // Per-bin probability mass, count / total. Sums to 1.
  std::vector<double> mass() const;
  // Per-bin density, count / (total * bin width). Integrates to 1.
  std::vector<double> densities() const;

  // Adds counts from another histogram built with the same spec.
  void merge(const Histogram& other);

 private:
  BinSpec spec_;
  std::vector<HistogramBin> bins_;
  std::uint64_t total_ = 0;
};

// Jensen-Shannon divergence (natural log, range [0, ln 2]) between the mass
// distributions of two histograms with the same binning spec. Bins are
// aligned by grid index; both histograms must be non-empty.
double js_divergence(const Histogram& a, const Histogram& b);

}  // namespace textlab
