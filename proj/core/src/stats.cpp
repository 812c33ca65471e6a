#include "banach/stats.hpp"

#include <cmath>

#include "banach/error.hpp"
#include "banach/rng.hpp"

namespace banach {

void RunningMean::merge(const RunningMean& other) noexcept {
  if (other.count_ == 0) return;
  std::size_t total = count_ + other.count_;
  mean_ += (other.mean_ - mean_) * (static_cast<double>(other.count_) / static_cast<double>(total));
  count_ = total;
}

double power_mean(std::span<const double> values, double p) {
  if (values.empty()) throw UsageError("power_mean of an empty sample");
  RunningMean acc;
  if (p == 1.0) {
    for (double v : values) acc.add(v);
    return acc.mean();
  }
  for (double v : values) acc.add(std::pow(v, p));
  return std::pow(acc.mean(), 1.0 / p);
}

double bootstrap_stderr(std::span<const double> values,
                        const std::function<double(std::span<const double>)>& statistic,
                        std::size_t resamples, std::uint64_t seed) {
  if (values.empty()) throw UsageError("bootstrap of an empty sample");
  if (resamples < 2) throw UsageError("bootstrap needs at least 2 resamples");
  CounterStream stream(seed);
  std::vector<double> resample(values.size());
  RunningMean mean;
  std::vector<double> stats(resamples);
  for (std::size_t b = 0; b < resamples; ++b) {
    for (double& v : resample) v = values[stream.below(values.size())];
    stats[b] = statistic(resample);
    mean.add(stats[b]);
  }
  double ss = 0.0;
  for (double s : stats) ss += (s - mean.mean()) * (s - mean.mean());
  return std::sqrt(ss / static_cast<double>(resamples - 1));
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("least_squares: size mismatch");
  if (x.size() < 2) throw UsageError("least_squares: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw UsageError("least_squares: abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace banach
