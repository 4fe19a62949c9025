#include "textlab/fitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "textlab/generators.hpp"
#include "textlab/histogram.hpp"

namespace textlab {

LognormalFit fit_lognormal(const std::vector<std::uint64_t>& lengths) {
  if (lengths.size() < 2)
    throw std::domain_error("lognormal fit needs at least 2 samples");
  std::vector<double> logs;
  logs.reserve(lengths.size());
  for (std::uint64_t x : lengths) {
    if (x < 1) throw std::domain_error("lengths must be positive");
    logs.push_back(std::log(static_cast<double>(x)));
  }
  const double n = static_cast<double>(logs.size());
  double mean = 0.0;
  for (double v : logs) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : logs) var += (v - mean) * (v - mean);
  var /= n;

  LognormalFit fit;
  fit.mu = mean;
  fit.sigma2 = var;
  fit.n_samples = logs.size();
  if (var == 0.0) {
    fit.log_likelihood = std::numeric_limits<double>::infinity();
  } else {
    double ll = 0.0;
    for (double v : logs)
      ll += -v - 0.5 * std::log(2.0 * std::numbers::pi * var) -
            (v - mean) * (v - mean) / (2.0 * var);
    fit.log_likelihood = ll;
  }
  return fit;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw std::domain_error("hurwitz_zeta requires s > 1");
  if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta requires a > 0");
  // Sum directly until the argument is large enough for the asymptotic
  // correction series to converge fast, then apply Euler-Maclaurin.
  const double goal = std::max(30.0, 2.0 * s);
  const std::size_t n_direct =
      a >= goal ? 0 : static_cast<std::size_t>(goal - a) + 1;
  double sum = 0.0;
  for (std::size_t k = 0; k < n_direct; ++k)
    sum += std::pow(a + static_cast<double>(k), -s);
  const double b = a + static_cast<double>(n_direct);
  sum += std::pow(b, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(b, -s);
  // Correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * b^(-s-2j+1).
  static constexpr double kBernOverFact[] = {
      1.0 / 12.0,                      // B2/2!
      -1.0 / 720.0,                    // B4/4!
      1.0 / 30240.0,                   // B6/6!
      -1.0 / 1209600.0,                // B8/8!
      1.0 / 47900160.0,                // B10/10!
      -691.0 / 1307674368000.0,        // B12/12!
      1.0 / 74724249600.0,             // B14/14!
      -3617.0 / 10670622842880000.0,   // B16/16!
  };
  double poch = s;
  double power = std::pow(b, -s - 1.0);
  const double inv_b2 = 1.0 / (b * b);
  for (std::size_t j = 0; j < std::size(kBernOverFact); ++j) {
    sum += kBernOverFact[j] * poch * power;
    poch *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power *= inv_b2;
  }
  return sum;
}

namespace {

// Second derivative of ln zeta(s, a) in s, by central differences.
double log_zeta_curvature(double s, double a) {
  const double h = 1e-4 * std::max(1.0, std::abs(s));
  const double f0 = std::log(hurwitz_zeta(s - h, a));
  const double f1 = std::log(hurwitz_zeta(s, a));
  const double f2 = std::log(hurwitz_zeta(s + h, a));
  return (f2 - 2.0 * f1 + f0) / (h * h);
}

}  // namespace

TailExponentFit fit_tail_exponent(const std::vector<std::uint64_t>& values,
                                  std::uint64_t x_min) {
  if (x_min < 1) throw std::domain_error("x_min must be at least 1");
  double sum_log = 0.0;
  std::size_t n = 0;
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t hi = 0;
  for (std::uint64_t v : values) {
    if (v < x_min) continue;
    sum_log += std::log(static_cast<double>(v));
    ++n;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (n < 50)
    throw std::domain_error("tail fit needs at least 50 samples at or above x_min");
  if (lo == hi) throw std::domain_error("tail has no variation");

  const double a = static_cast<double>(x_min);
  const double mean_log = sum_log / static_cast<double>(n);
  // Minimize the negative mean log-likelihood ln zeta(alpha, a) + alpha * E[ln x].
  const auto objective = [&](double alpha) {
    return std::log(hurwitz_zeta(alpha, a)) + alpha * mean_log;
  };
  double bracket_lo = 1.0 + 1e-6;
  double bracket_hi = 25.0;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = bracket_hi - invphi * (bracket_hi - bracket_lo);
  double x2 = bracket_lo + invphi * (bracket_hi - bracket_lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (bracket_hi - bracket_lo > 1e-10) {
    if (f1 < f2) {
      bracket_hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = bracket_hi - invphi * (bracket_hi - bracket_lo);
      f1 = objective(x1);
    } else {
      bracket_lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = bracket_lo + invphi * (bracket_hi - bracket_lo);
      f2 = objective(x2);
    }
  }
  const double alpha = 0.5 * (bracket_lo + bracket_hi);

  TailExponentFit fit;
  fit.exponent = alpha;
  fit.x_min = x_min;
  fit.method = "mle";
  fit.n_tail = n;
  // Asymptotic SE from the Fisher information n * d^2 ln zeta / d alpha^2.
  const double curvature = log_zeta_curvature(alpha, a);
  fit.standard_error =
      curvature > 0.0 ? 1.0 / std::sqrt(static_cast<double>(n) * curvature)
                      : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

TailExponentFit fit_tail_regression(const std::vector<std::uint64_t>& values,
                                    std::uint64_t x_min) {
  if (x_min < 1) throw std::domain_error("x_min must be at least 1");
  std::vector<double> tail;
  for (std::uint64_t v : values)
    if (v >= x_min) tail.push_back(static_cast<double>(v));
  if (tail.size() < 50)
    throw std::domain_error("tail fit needs at least 50 samples at or above x_min");

  const Histogram h = Histogram::build(BinSpec::logarithmic(2.0), tail);
  std::vector<double> xs;
  std::vector<double> ys;
  const auto density = h.densities();
  for (std::size_t i = 0; i < h.bins().size(); ++i) {
    if (h.bins()[i].count == 0) continue;
    xs.push_back(std::log(std::sqrt(h.bins()[i].lo * h.bins()[i].hi)));
    ys.push_back(std::log(density[i]));
  }
  if (xs.size() < 3)
    throw std::domain_error("tail regression needs at least 3 occupied bins");

  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - my - slope * (xs[i] - mx);
    rss += r * r;
  }

  TailExponentFit fit;
  fit.exponent = -slope;
  fit.x_min = x_min;
  fit.method = "regression";
  fit.n_tail = tail.size();
  fit.standard_error =
      xs.size() > 2 ? std::sqrt(rss / ((m - 2.0) * sxx)) : 0.0;
  return fit;
}

std::vector<std::uint64_t> sample_discrete_power_law(double exponent,
                                                     std::uint64_t x_min,
                                                     std::size_t n, Rng& rng) {
  if (!(exponent > 1.0))
    throw std::domain_error("discrete power law needs exponent > 1");
  if (x_min < 1) throw std::domain_error("x_min must be at least 1");
  const double z_min = hurwitz_zeta(exponent, static_cast<double>(x_min));
  const auto survival = [&](std::uint64_t x) {
    return hurwitz_zeta(exponent, static_cast<double>(x)) / z_min;
  };
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01_open(rng);
    // Find the largest x with P(X >= x) > u: bracket by doubling, then bisect.
    std::uint64_t lo = x_min;       // survival(lo) > u
    std::uint64_t hi = 2 * x_min;   // candidate upper end
    while (survival(hi) > u) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (survival(mid) > u)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(lo);
  }
  return out;
}

std::vector<double> default_z_grid() {
  return {1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
}

ZCalibration calibrate_z(const SimilarityHistogram& target,
                         const ModelParams& base_params,
                         const std::vector<double>& grid, std::uint32_t replicas,
                         std::uint64_t seed, unsigned threads) {
  if (grid.empty()) throw std::domain_error("z grid is empty");
  if (replicas == 0) throw std::domain_error("calibration needs at least one replica");
  for (double z : grid)
    if (!(z >= 0.0 && z <= 1.0))
      throw std::domain_error("z candidates must lie in [0, 1]");
  if (target.histogram.total() == 0)
    throw std::domain_error("target similarity histogram is empty");

  const BinSpec spec = target.histogram.spec();
  const std::uint64_t budget = target.pair_count;
  const std::size_t n_cells = grid.size() * replicas;
  std::vector<Histogram> cell_hist(n_cells);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= n_cells) return;
      const std::size_t zi = k / replicas;
      const std::uint32_t ri = static_cast<std::uint32_t>(k % replicas);
      try {
        ModelParams params = base_params;
        params.z = grid[zi];
        params.seed = mix_seed(mix_seed(seed, zi), ri);
        const Corpus corpus = generate_corpus(params);
        cell_hist[k] =
            similarity_distribution(corpus, spec, budget, params.seed, 1).histogram;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_cells);
        return;
      }
    }
  };

  const unsigned n_workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_cells)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ZCalibration cal;
  cal.grid = grid;
  cal.replicas = replicas;
  cal.seed = seed;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s; pairs=%llu/%llu; exhaustive=%d",
                spec.describe().c_str(),
                static_cast<unsigned long long>(target.pair_count),
                static_cast<unsigned long long>(target.total_pairs),
                target.exhaustive ? 1 : 0);
  cal.target_description = buf;
  cal.divergences.resize(grid.size());
  cal.replica_mean.resize(grid.size());
  cal.replica_std.resize(grid.size());
  for (std::size_t zi = 0; zi < grid.size(); ++zi) {
    Histogram pooled = cell_hist[zi * replicas];
    std::vector<double> per_replica;
    per_replica.push_back(js_divergence(cell_hist[zi * replicas], target.histogram));
    for (std::uint32_t ri = 1; ri < replicas; ++ri) {
      const Histogram& h = cell_hist[zi * replicas + ri];
      pooled.merge(h);
      per_replica.push_back(js_divergence(h, target.histogram));
    }
    cal.divergences[zi] = js_divergence(pooled, target.histogram);
    double mean = 0.0;
    for (double d : per_replica) mean += d;
    mean /= static_cast<double>(per_replica.size());
    double var = 0.0;
    for (double d : per_replica) var += (d - mean) * (d - mean);
    var /= static_cast<double>(per_replica.size());
    cal.replica_mean[zi] = mean;
    cal.replica_std[zi] = std::sqrt(var);
  }
  cal.best_index = static_cast<std::size_t>(
      std::min_element(cal.divergences.begin(), cal.divergences.end()) -
      cal.divergences.begin());
  cal.best_z = grid[cal.best_index];
  return cal;
}

}  // namespace textlab
