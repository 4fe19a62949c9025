#include "textlab/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace textlab {

BinSpec BinSpec::integer() { return BinSpec{Binning::kInteger, 1.0, 2.0, {}}; }

BinSpec BinSpec::linear(double width) {
  if (!(width > 0.0)) throw std::domain_error("bin width must be > 0");
  return BinSpec{Binning::kLinear, width, 2.0, {}};
}

BinSpec BinSpec::linear_range(double width, double lo, double hi) {
  if (!(width > 0.0)) throw std::domain_error("bin width must be > 0");
  if (!(hi > lo)) throw std::domain_error("bin range must be non-empty");
  return BinSpec{Binning::kLinear, width, 2.0, std::make_pair(lo, hi)};
}

BinSpec BinSpec::logarithmic(double base) {
  if (!(base > 1.0)) throw std::domain_error("log bin base must be > 1");
  return BinSpec{Binning::kLogarithmic, 1.0, base, {}};
}

BinSpec BinSpec::log_per_decade(int bins_per_decade) {
  if (bins_per_decade < 1) throw std::domain_error("bins per decade must be >= 1");
  return logarithmic(std::pow(10.0, 1.0 / bins_per_decade));
}

BinSpec BinSpec::parse(const std::string& text) {
  if (text == "int" || text == "integer") return integer();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "linear") return linear(std::stod(arg));
    if (head == "log") return logarithmic(std::stod(arg));
    if (head == "logdec") return log_per_decade(std::stoi(arg));
  } catch (const std::logic_error&) {
    throw std::domain_error("bad binning argument: " + text);
  }
  throw std::domain_error("unknown binning spec: " + text);
}

std::string BinSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Binning::kInteger:
      os << "integer";
      break;
    case Binning::kLinear:
      os << "linear:" << width;
      if (range) os << "[" << range->first << "," << range->second << ")";
      break;
    case Binning::kLogarithmic:
      os << "log:" << base;
      break;
  }
  return os.str();
}

bool BinSpec::operator==(const BinSpec& other) const {
  if (kind != other.kind || range != other.range) return false;
  if (kind == Binning::kLinear && width != other.width) return false;
  if (kind == Binning::kLogarithmic && base != other.base) return false;
  return true;
}

std::int64_t BinSpec::bin_index(double x) const {
  switch (kind) {
    case Binning::kInteger:
      return static_cast<std::int64_t>(std::floor(x));
    case Binning::kLinear: {
      std::int64_t idx = static_cast<std::int64_t>(std::floor(x / width));
      if (range) {
        const std::int64_t lo = static_cast<std::int64_t>(std::floor(range->first / width));
        // hi is an exclusive edge; the last bin is the one just below it.
        const std::int64_t hi = static_cast<std::int64_t>(std::ceil(range->second / width)) - 1;
        idx = std::clamp(idx, lo, hi);
      }
      return idx;
    }
    case Binning::kLogarithmic: {
      if (!(x > 0.0)) throw std::domain_error("log binning requires positive values");
      std::int64_t idx = static_cast<std::int64_t>(std::floor(std::log(x) / std::log(base)));
      // log() rounding can put x one bin off near an edge; fix by comparison.
      while (upper_edge(idx) <= x) ++idx;
      while (lower_edge(idx) > x) --idx;
      return idx;
    }
  }
  throw std::logic_error("unreachable");
}

double BinSpec::lower_edge(std::int64_t index) const {
  switch (kind) {
    case Binning::kInteger:
      return static_cast<double>(index);
    case Binning::kLinear:
      return static_cast<double>(index) * width;
    case Binning::kLogarithmic:
      return std::pow(base, static_cast<double>(index));
  }
  throw std::logic_error("unreachable");
}

double BinSpec::upper_edge(std::int64_t index) const {
  return lower_edge(index + 1);
}

Histogram Histogram::build(const BinSpec& spec, std::span<const double> values) {
  Histogram h;
  h.spec_ = spec;

  std::int64_t min_idx = 0;
  std::int64_t max_idx = -1;
  if (spec.kind == Binning::kLinear && spec.range) {
    // Materialize the full fixed range even if some bins stay empty, so two
    // fixed-range histograms always share identical bin layouts.
    min_idx = static_cast<std::int64_t>(std::floor(spec.range->first / spec.width));
    max_idx = static_cast<std::int64_t>(std::ceil(spec.range->second / spec.width)) - 1;
  } else if (!values.empty()) {
    min_idx = max_idx = spec.bin_index(values.front());
    for (double v : values) {
      const std::int64_t i = spec.bin_index(v);
      min_idx = std::min(min_idx, i);
      max_idx = std::max(max_idx, i);
    }
  }

  if (max_idx >= min_idx) {
    h.bins_.reserve(static_cast<std::size_t>(max_idx - min_idx + 1));
    for (std::int64_t i = min_idx; i <= max_idx; ++i) {
      h.bins_.push_back({i, spec.lower_edge(i), spec.upper_edge(i), 0});
    }
    for (double v : values) {
      ++h.bins_[static_cast<std::size_t>(spec.bin_index(v) - min_idx)].count;
    }
    h.total_ = values.size();
  }
  return h;
}

std::vector<double> Histogram::mass() const {
  std::vector<double> m(bins_.size(), 0.0);
  if (total_ == 0) return m;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    m[i] = static_cast<double>(bins_[i].count) / static_cast<double>(total_);
  }
  return m;
}

std::vector<double> Histogram::densities() const {
  std::vector<double> d(bins_.size(), 0.0);
  if (total_ == 0) return d;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    const double w = bins_[i].hi - bins_[i].lo;
    d[i] = static_cast<double>(bins_[i].count) / (static_cast<double>(total_) * w);
  }
  return d;
}

void Histogram::merge(const Histogram& other) {
  if (!(spec_ == other.spec_)) throw std::domain_error("histogram specs differ");
  if (other.bins_.empty()) return;
  if (bins_.empty()) {
    *this = other;
    return;
  }
  const std::int64_t lo = std::min(bins_.front().index, other.bins_.front().index);
  const std::int64_t hi = std::max(bins_.back().index, other.bins_.back().index);
  std::vector<HistogramBin> merged;
  merged.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) {
    merged.push_back({i, spec_.lower_edge(i), spec_.upper_edge(i), 0});
  }
  for (const auto& b : bins_) merged[static_cast<std::size_t>(b.index - lo)].count += b.count;
  for (const auto& b : other.bins_) merged[static_cast<std::size_t>(b.index - lo)].count += b.count;
  bins_ = std::move(merged);
  total_ += other.total_;
}

double js_divergence(const Histogram& a, const Histogram& b) {
  if (!(a.spec() == b.spec())) throw std::domain_error("histogram specs differ");
  if (a.total() == 0 || b.total() == 0) {
    throw std::domain_error("js divergence of an empty histogram");
  }
  std::map<std::int64_t, std::pair<double, double>> mass;
  for (const auto& bin : a.bins()) {
    mass[bin.index].first = static_cast<double>(bin.count) / static_cast<double>(a.total());
  }
  for (const auto& bin : b.bins()) {
    mass[bin.index].second = static_cast<double>(bin.count) / static_cast<double>(b.total());
  }
  double js = 0.0;
  for (const auto& [idx, pq] : mass) {
    const auto [p, q] = pq;
    const double m = 0.5 * (p + q);
    if (p > 0.0) js += 0.5 * p * std::log(p / m);
    if (q > 0.0) js += 0.5 * q * std::log(q / m);
  }
  return js;
}

}  // namespace textlab
