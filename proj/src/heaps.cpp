#include "textlab/heaps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "textlab/errors.hpp"

namespace textlab {

std::uint32_t HeapsDistribution::max_w(std::uint64_t n) const {
  if (n < 1 || n > rows_.size()) throw std::domain_error("n out of range");
  return static_cast<std::uint32_t>(rows_[n - 1].size());
}

double HeapsDistribution::probability(std::uint32_t w, std::uint64_t n) const {
  if (n < 1 || n > rows_.size()) throw std::domain_error("n out of range");
  const auto& row = rows_[n - 1];
  if (w < 1 || w > row.size()) return 0.0;
  return row[w - 1];
}

double HeapsDistribution::expected_w(std::uint64_t n) const {
  if (n < 1 || n > rows_.size()) throw std::domain_error("n out of range");
  const auto& row = rows_[n - 1];
  double e = 0.0;
  for (std::size_t w = row.size(); w-- > 0;) e += static_cast<double>(w + 1) * row[w];
  return e;
}

HeapsDistribution evolve_master_equation(const RankDistribution& dist,
                                         std::uint64_t n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  const std::uint32_t v = dist.vocab_size();
  HeapsDistribution table;
  table.vocab_ = v;
  table.rows_.reserve(n_max);
  table.rows_.push_back({1.0});  // P(1, 1) = 1
  for (std::uint64_t n = 1; n < n_max; ++n) {
    const auto& prev = table.rows_.back();
    const std::uint32_t w_prev = static_cast<std::uint32_t>(prev.size());
    const std::uint32_t w_next = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(n + 1, v));
    std::vector<double> next(w_next, 0.0);
    for (std::uint32_t w = 1; w <= w_next; ++w) {
      double p = 0.0;
      // Stay at w: the next token repeats one of the w seen words.
      if (w <= w_prev) p += prev[w - 1] * dist.cumulative(w);
      // Grow from w-1: the next token is new.
      if (w >= 2 && w - 1 <= w_prev) p += prev[w - 2] * dist.survival(w - 1);
      next[w - 1] = p;
    }
    table.rows_.push_back(std::move(next));
  }
  return table;
}

HeapsCurve expected_vocab_recursion(const RankDistribution& dist,
                                    std::uint64_t n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  HeapsCurve curve;
  curve.lengths.reserve(n_max);
  curve.expected_w.reserve(n_max);
  double w = 1.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    curve.lengths.push_back(static_cast<double>(n));
    curve.expected_w.push_back(w);
    w += dist.survival_at(w);
  }
  return curve;
}

namespace {

// One RK4 pass over a fixed geometric grid; the right-hand side
// f(w) = 1 - F(w) is autonomous.
HeapsCurve rk4_geometric(const RankDistribution& dist, double n_max,
                         std::size_t steps) {
  HeapsCurve curve;
  curve.lengths.reserve(steps + 1);
  curve.expected_w.reserve(steps + 1);
  const double ratio = std::pow(n_max, 1.0 / static_cast<double>(steps));
  double n = 1.0;
  double w = 1.0;
  curve.lengths.push_back(n);
  curve.expected_w.push_back(w);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double n_next = k == steps ? n_max : std::pow(ratio, static_cast<double>(k));
    const double h = n_next - n;
    const double k1 = dist.survival_at(w);
    const double k2 = dist.survival_at(w + 0.5 * h * k1);
    const double k3 = dist.survival_at(w + 0.5 * h * k2);
    const double k4 = dist.survival_at(w + h * k3);
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    w = std::min(w, static_cast<double>(dist.vocab_size()));
    n = n_next;
    curve.lengths.push_back(n);
    curve.expected_w.push_back(w);
  }
  return curve;
}

}  // namespace

HeapsCurve integrate_heaps_ode(const RankDistribution& dist, double n_max,
                               const OdeControls& controls) {
  if (!(n_max >= 1.0)) throw std::domain_error("n_max must be >= 1");
  if (controls.steps_per_decade < 1)
    throw std::domain_error("steps_per_decade must be >= 1");
  if (n_max == 1.0) return HeapsCurve{{1.0}, {1.0}};

  const double decades = std::log10(n_max);
  const auto steps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(decades * controls.steps_per_decade)));
  const HeapsCurve coarse = rk4_geometric(dist, n_max, steps);
  const HeapsCurve fine = rk4_geometric(dist, n_max, 2 * steps);

  // Shared grid points of the doubled run are the even-indexed ones.
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.lengths.size(); ++i) {
    const double a = coarse.expected_w[i];
    const double b = fine.expected_w[2 * i];
    worst = std::max(worst, std::abs(a - b) / b);
  }
  if (worst > controls.relative_tolerance) {
    std::ostringstream os;
    os << "step-halving check failed: relative change " << worst << " > "
       << controls.relative_tolerance << " at " << controls.steps_per_decade
       << " steps/decade (n_max " << n_max << ")";
    throw ConvergenceError(os.str());
  }
  return fine;
}

double uniform_expected_vocab(std::uint32_t vocab_size, double n) {
  if (vocab_size < 1) throw std::domain_error("vocab_size must be >= 1");
  const double v = static_cast<double>(vocab_size);
  // V (1 - (1 - 1/V)^n), written via expm1/log1p to keep precision at
  // large V and n.
  return -v * std::expm1(n * std::log1p(-1.0 / v));
}

BetaFit fit_beta(const HeapsCurve& curve, double n_lo, double n_hi) {
  if (!(n_hi > n_lo)) throw std::domain_error("empty fit window");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < curve.lengths.size(); ++i) {
    const double n = curve.lengths[i];
    if (n < n_lo || n > n_hi) continue;
    if (!(n > 0.0) || !(curve.expected_w[i] > 0.0))
      throw std::domain_error("fit window contains nonpositive values");
    xs.push_back(std::log(n));
    ys.push_back(std::log(curve.expected_w[i]));
  }
  const std::size_t m = xs.size();
  if (m < 5) throw std::domain_error("need at least 5 points in the fit window");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::domain_error("fit window has no n spread");

  BetaFit fit;
  fit.beta = sxy / sxx;
  fit.intercept = my - fit.beta * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.beta * xs[i]);
    rss += r * r;
  }
  fit.standard_error = m > 2 ? std::sqrt(rss / (static_cast<double>(m - 2) * sxx)) : 0.0;
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  fit.points = m;
  return fit;
}

BetaFit fit_beta_top_decade(const HeapsCurve& curve) {
  if (curve.lengths.empty()) throw std::domain_error("empty curve");
  const double n_hi = curve.lengths.back();
  return fit_beta(curve, n_hi / 10.0, n_hi);
}

double curve_value_at(const HeapsCurve& curve, double n) {
  if (curve.lengths.empty()) throw std::domain_error("empty curve");
  if (!(n > 0.0)) throw std::domain_error("n must be positive");
  const auto& xs = curve.lengths;
  if (n <= xs.front()) return curve.expected_w.front();
  if (n >= xs.back()) return curve.expected_w.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), n);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (std::log(n) - std::log(xs[lo])) /
                   (std::log(xs[hi]) - std::log(xs[lo]));
  return std::exp((1.0 - t) * std::log(curve.expected_w[lo]) +
                  t * std::log(curve.expected_w[hi]));
}

}  // namespace textlab
