#ifndef MUTSEL_STATS_HPP
#define MUTSEL_STATS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mutsel/rng.hpp"

namespace mutsel {

// Result of a replicated Monte Carlo run. std_error is the sample standard
// deviation divided by sqrt(n_samples); given the same (seed, n_samples,
// params) the estimate is bit-identical because replicates draw from
// counter-derived streams and accumulate in index order.
struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  // Paths excluded for lacking a certain classification (see the absorption
  // estimators); 0 for everything else.
  std::int64_t n_excluded = 0;
};

// Welford accumulator; numerically stable and order-deterministic.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::int64_t n() const { return n_; }
  double mean() const { return mean_; }
  double sample_variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Runs `value(replicate_seed)` for replicate indices 0..reps-1 with seeds
// derived from the master seed, in index order. A NaN return marks the
// replicate as excluded (not folded into the mean).
template <class F>
MonteCarloEstimate mc_estimate(std::int64_t reps, std::uint64_t master_seed, F&& value) {
  RunningStats acc;
  std::int64_t excluded = 0;
  for (std::int64_t i = 0; i < reps; ++i) {
    const double v = value(substream_seed(master_seed, static_cast<std::uint64_t>(i)));
    if (v != v) {
      ++excluded;
    } else {
      acc.add(v);
    }
  }
  return MonteCarloEstimate{acc.mean(), acc.std_error(), acc.n(), master_seed, excluded};
}

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF given as
// a callable; `samples` is copied and sorted internally.
double ks_statistic_exponential(std::vector<double> samples, double rate);

// Complement of the Kolmogorov distribution, Q(lambda) = 2 sum_{k>=1}
// (-1)^{k-1} exp(-2 k^2 lambda^2). Asymptotic p-value for statistic d on n
// samples uses the Stephens correction lambda = (sqrt(n)+0.12+0.11/sqrt(n))*d.
double kolmogorov_q(double lambda);
double ks_p_value(double d, std::size_t n);

// Total variation distance between two empirical distributions given as
// count histograms (keys are states; any key works, including a sentinel).
double tv_distance(const std::map<std::int64_t, std::int64_t>& a, std::int64_t na,
                   const std::map<std::int64_t, std::int64_t>& b, std::int64_t nb);

// Standard error of the mean of a correlated series via batch means.
double batch_means_se(const std::vector<double>& series, int n_batches = 100);

}  // namespace mutsel

#endif
