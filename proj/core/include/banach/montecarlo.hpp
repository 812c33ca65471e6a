#pragma once

// Randomized integration of X-valued functions.
//
//   standard:   A0 f = (1/n) sum_i f(xi_i)
//   separated:  Ar f = S(P_k f) + A0 (f - P_k f),  k = ceil(n^{1/d})
//
// xi_i is drawn from the counter stream keyed by the run seed: coordinate a
// of point i is uniform(draw(seed, i*d + a)). Both algorithms with the same
// seed therefore see the same points.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "banach/functions.hpp"
#include "banach/interp.hpp"
#include "banach/space.hpp"

namespace banach {

enum class Algorithm { Standard, Separated };

std::string_view to_string(Algorithm algo) noexcept;
// `std` or `sep`.
Algorithm parse_algorithm(std::string_view spelling);

struct MCConfig {
  std::size_t n = 1;
  int r = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  double moment_p = 2.0;

  // Throws UsageError unless n >= 1, trials >= 1, r >= 0 and 1 <= moment_p <= 2.
  void validate() const;
};

// Smallest k with k^d >= n.
std::size_t cells_for(std::size_t n, std::size_t d);

// Point i of the stream keyed by `seed`.
void draw_point(std::uint64_t seed, std::size_t i, std::span<double> out) noexcept;

Element standard_mc(const TestProblem& f, std::size_t n, std::uint64_t seed);

// Separated estimator with the interpolant and its node samples prepared
// once. estimate() is const and may run concurrently.
class SeparatedMonteCarlo {
 public:
  SeparatedMonteCarlo(TestProblem f, std::size_t n, int r,
                      std::size_t node_budget = kDefaultNodeBudget);

  Element estimate(std::uint64_t seed) const;

  const InterpolationOperator& interpolation() const noexcept { return op_; }
  const std::vector<Element>& node_samples() const noexcept { return samples_; }
  const Element& interpolant_integral() const noexcept { return main_part_; }
  std::size_t sample_count() const noexcept { return n_; }
  // Function values used by one estimate: M node values plus n samples.
  std::size_t cardinality() const noexcept { return op_.node_count() + n_; }

 private:
  TestProblem f_;
  std::size_t n_;
  InterpolationOperator op_;
  std::vector<Element> samples_;
  Element main_part_;
};

Element sep_mc(const TestProblem& f, std::size_t n, int r, std::uint64_t seed);

// A realized randomized quadrature sum_i a_i f(t_i).
struct QuadratureRealization {
  std::size_t d = 1;
  std::vector<double> node_coords;  // cardinality() * d, row-major
  std::vector<double> weights;

  std::size_t cardinality() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return std::span<const double>(node_coords).subspan(i * d, d);
  }
  double weight_sum() const;
  Element apply(const TestProblem& f) const;
};

// Node/weight form of the estimator with the same (n, r, seed). r = 0 gives
// the standard estimator (nodes xi_i, weights 1/n); r >= 1 gives interpolation
// nodes u_j with weights b_j - (1/n) sum_i psi_j(xi_i) followed by xi_i with
// weights 1/n.
QuadratureRealization as_quadrature(const TestProblem& f, std::size_t n, int r,
                                    std::uint64_t seed);

struct ErrorMoment {
  double p = 1.0;
  // (mean ||S f - A f||^p)^{1/p} over the trials.
  double value = 0.0;
  // Bootstrap standard error of `value`.
  double std_error = 0.0;
  std::size_t trials = 0;
  // mean ||S f - A f||, the first moment.
  double mean_norm = 0.0;
};

struct ErrorMomentOptions {
  // Overrides the problem's exact integral.
  std::optional<Element> reference;
  std::size_t bootstrap_resamples = 1000;
  // 0 = hardware concurrency. Results do not depend on this.
  std::size_t threads = 1;
  std::size_t node_budget = kDefaultNodeBudget;
};

// Per-trial outputs; trial t uses seed derive_seed(seed, t).
std::vector<Element> trial_outputs(Algorithm algo, const TestProblem& f, std::size_t n, int r,
                                   std::size_t trials, std::uint64_t seed,
                                   std::size_t threads = 1,
                                   std::size_t node_budget = kDefaultNodeBudget);

ErrorMoment error_moment(Algorithm algo, const TestProblem& f, std::size_t n, int r, double p,
                         std::size_t trials, std::uint64_t seed,
                         const ErrorMomentOptions& options = {});

struct RatePoint {
  std::size_t n = 0;
  ErrorMoment moment;
};

struct RateReport {
  std::vector<RatePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  // Rows excluded from the fit, one line each.
  std::vector<std::string> notes;
};

// Least squares of log(value) on log(n). Non-positive values are excluded
// with a note; at least 3 remaining points with distinct n are required.
RateReport rate_fit(std::vector<RatePoint> points);

// -r/d - 1 + 1/p
double theoretical_exponent(int r, std::size_t d, double p);

// error_moment at each n (seeded with derive_seed(seed, n)) followed by rate_fit.
RateReport rate_experiment(Algorithm algo, const TestProblem& f, std::span<const std::size_t> ns,
                           int r, double p, std::size_t trials, std::uint64_t seed,
                           const ErrorMomentOptions& options = {});

struct SumDiagnosticPoint {
  std::size_t n = 0;
  double moment = 0.0;
  double ratio = 0.0;
  double std_error = 0.0;
};

// For eta_i = s_i U_i e_{J_i} in l_1^m (random sign, U uniform on [0,1], J
// uniform), i.i.d., mean zero with ess-sup norm 1: reports
// (E||sum eta_i||^p)^{1/p} and its ratio to n^{1/p}.
std::vector<SumDiagnosticPoint> bounded_sum_diagnostic(std::size_t m,
                                                       std::span<const std::size_t> ns, double p,
                                                       std::size_t trials, std::uint64_t seed);

}  // namespace banach
