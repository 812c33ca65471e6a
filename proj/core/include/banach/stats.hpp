#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace banach {

// Running mean that is exact when all inputs coincide.
class RunningMean {
 public:
  void add(double x) noexcept {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
  }
  // Merges another accumulator as if its inputs had been added here.
  void merge(const RunningMean& other) noexcept;

  double mean() const noexcept { return mean_; }
  std::size_t count() const noexcept { return count_; }

 private:
  double mean_ = 0.0;
  std::size_t count_ = 0;
};

// (mean of |x|^p)^(1/p) for x >= 0.
double power_mean(std::span<const double> values, double p);

// Standard deviation of `statistic` over `resamples` bootstrap resamples
// (with replacement) of `values`. Resample indices come from the counter
// stream keyed by `seed`.
double bootstrap_stderr(std::span<const double> values,
                        const std::function<double(std::span<const double>)>& statistic,
                        std::size_t resamples, std::uint64_t seed);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares of y on x. Requires >= 2 points and non-constant x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace banach
