#include "mutsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mutsel {

double RunningStats::std_error() const {
  if (n_ == 0) return 0.0;
  return std::sqrt(sample_variance() / static_cast<double>(n_));
}

double ks_statistic_exponential(std::vector<double> samples, double rate) {
  if (samples.empty()) throw std::invalid_argument("KS needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = -std::expm1(-rate * samples[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(f - lo, hi - f));
  }
  return d;
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  const double q = 2.0 * sum;
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

double ks_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

double tv_distance(const std::map<std::int64_t, std::int64_t>& a, std::int64_t na,
                   const std::map<std::int64_t, std::int64_t>& b, std::int64_t nb) {
  if (na <= 0 || nb <= 0) throw std::invalid_argument("TV needs nonempty histograms");
  double acc = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    double pa = 0.0, pb = 0.0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      pa = static_cast<double>(ia->second) / static_cast<double>(na);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      pb = static_cast<double>(ib->second) / static_cast<double>(nb);
      ++ib;
    } else {
      pa = static_cast<double>(ia->second) / static_cast<double>(na);
      pb = static_cast<double>(ib->second) / static_cast<double>(nb);
      ++ia;
      ++ib;
    }
    acc += std::abs(pa - pb);
  }
  return 0.5 * acc;
}

double batch_means_se(const std::vector<double>& series, int n_batches) {
  if (n_batches < 2 || series.size() < static_cast<std::size_t>(2 * n_batches))
    throw std::invalid_argument("batch means needs >= 2 samples per batch");
  const std::size_t per = series.size() / static_cast<std::size_t>(n_batches);
  RunningStats batches;
  // A remainder shorter than a full batch is dropped; batches stay equal-sized.
  for (int b = 0; b < n_batches; ++b) {
    double m = 0.0;
    const std::size_t off = static_cast<std::size_t>(b) * per;
    for (std::size_t i = 0; i < per; ++i) m += series[off + i];
    batches.add(m / static_cast<double>(per));
  }
  return std::sqrt(batches.sample_variance() / static_cast<double>(n_batches));
}

}  // namespace mutsel
