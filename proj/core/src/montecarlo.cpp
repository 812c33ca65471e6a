#include "banach/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "banach/error.hpp"
#include "banach/parallel.hpp"
#include "banach/rng.hpp"
#include "banach/stats.hpp"

namespace banach {

std::string_view to_string(Algorithm algo) noexcept {
  return algo == Algorithm::Standard ? "std" : "sep";
}

Algorithm parse_algorithm(std::string_view spelling) {
  if (spelling == "std") return Algorithm::Standard;
  if (spelling == "sep") return Algorithm::Separated;
  throw UsageError("unknown algorithm '" + std::string(spelling) + "' (expected std or sep)");
}

void MCConfig::validate() const {
  if (n < 1) throw UsageError("n must be >= 1");
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (r < 0) throw UsageError("r must be >= 0");
  if (!(moment_p >= 1.0 && moment_p <= 2.0)) throw UsageError("moment p must lie in [1, 2]");
}

std::size_t cells_for(std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) throw UsageError("cells_for needs n >= 1 and d >= 1");
  auto reaches = [&](std::size_t k) {
    std::size_t v = 1;
    for (std::size_t a = 0; a < d; ++a) {
      if (v >= (n + k - 1) / k) return true;  // v * k >= n without overflow
      v *= k;
    }
    return v >= n;
  };
  auto k = static_cast<std::size_t>(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d)));
  k = std::max<std::size_t>(1, k > 1 ? k - 1 : k);
  while (!reaches(k)) ++k;
  return k;
}

void draw_point(std::uint64_t seed, std::size_t i, std::span<double> out) noexcept {
  CounterStream stream(seed, static_cast<std::uint64_t>(i) * out.size());
  for (double& x : out) x = stream.uniform();
}

namespace {

void require_finite(std::span<const double> v, const TestProblem& f) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericError("non-finite value of '" + f.name + "' at a sample point");
  }
}

}  // namespace

Element standard_mc(const TestProblem& f, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw UsageError("standard_mc needs n >= 1");
  const std::size_t dim = f.space.dim();
  std::vector<double> t(f.d), value(dim);
  std::vector<RunningMean> mean(dim);
  for (std::size_t i = 0; i < n; ++i) {
    draw_point(seed, i, t);
    f.evaluator(t, value);
    require_finite(value, f);
    for (std::size_t c = 0; c < dim; ++c) mean[c].add(value[c]);
  }
  Element out(dim);
  for (std::size_t c = 0; c < dim; ++c) out[c] = mean[c].mean();
  return out;
}

SeparatedMonteCarlo::SeparatedMonteCarlo(TestProblem f, std::size_t n, int r,
                                         std::size_t node_budget)
    : f_(std::move(f)),
      n_(n),
      op_(InterpolationOperator::build(r, cells_for(std::max<std::size_t>(n, 1), f_.d), f_.d,
                                       node_budget)) {
  if (n < 1) throw UsageError("sep_mc needs n >= 1");
  if (r > f_.smoothness) {
    throw UsageError("problem '" + f_.name + "' is certified only up to C^" +
                     std::to_string(f_.smoothness) + ", separated estimator needs C^" +
                     std::to_string(r));
  }
  samples_ = sample_nodes(op_, f_);
  main_part_ = integrate_interpolant(op_, samples_);
}

Element SeparatedMonteCarlo::estimate(std::uint64_t seed) const {
  const std::size_t dim = f_.space.dim();
  std::vector<double> t(f_.d), value(dim);
  std::vector<RunningMean> mean(dim);
  InterpolationOperator::LocalBasis basis;
  for (std::size_t i = 0; i < n_; ++i) {
    draw_point(seed, i, t);
    f_.evaluator(t, value);
    require_finite(value, f_);
    op_.local_basis(t, basis);
    for (std::size_t q = 0; q < basis.node_ids.size(); ++q) {
      const Element& s = samples_[basis.node_ids[q]];
      for (std::size_t c = 0; c < dim; ++c) value[c] -= basis.values[q] * s[c];
    }
    for (std::size_t c = 0; c < dim; ++c) mean[c].add(value[c]);
  }
  Element out = main_part_;
  for (std::size_t c = 0; c < dim; ++c) out[c] += mean[c].mean();
  return out;
}

Element sep_mc(const TestProblem& f, std::size_t n, int r, std::uint64_t seed) {
  return SeparatedMonteCarlo(f, n, r).estimate(seed);
}

double QuadratureRealization::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

Element QuadratureRealization::apply(const TestProblem& f) const {
  if (f.d != d) throw UsageError("quadrature and problem dimensions differ");
  const std::size_t dim = f.space.dim();
  Element out(dim);
  std::vector<double> value(dim);
  for (std::size_t i = 0; i < cardinality(); ++i) {
    f.evaluator(node(i), value);
    require_finite(value, f);
    for (std::size_t c = 0; c < dim; ++c) out[c] += weights[i] * value[c];
  }
  return out;
}

QuadratureRealization as_quadrature(const TestProblem& f, std::size_t n, int r,
                                    std::uint64_t seed) {
  if (n < 1) throw UsageError("as_quadrature needs n >= 1");
  if (r < 0) throw UsageError("as_quadrature needs r >= 0");
  QuadratureRealization q;
  q.d = f.d;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> t(f.d);

  if (r >= 1) {
    if (r > f.smoothness) {
      throw UsageError("problem '" + f.name + "' is certified only up to C^" +
                       std::to_string(f.smoothness));
    }
    const auto op = InterpolationOperator::build(r, cells_for(n, f.d), f.d);
    std::vector<double> correction(op.node_count(), 0.0);
    InterpolationOperator::LocalBasis basis;
    for (std::size_t i = 0; i < n; ++i) {
      draw_point(seed, i, t);
      op.local_basis(t, basis);
      for (std::size_t k = 0; k < basis.node_ids.size(); ++k) {
        correction[basis.node_ids[k]] += basis.values[k];
      }
    }
    for (std::size_t j = 0; j < op.node_count(); ++j) {
      const auto u = op.node(j);
      q.node_coords.insert(q.node_coords.end(), u.begin(), u.end());
      q.weights.push_back(op.weights()[j] - inv_n * correction[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    draw_point(seed, i, t);
    q.node_coords.insert(q.node_coords.end(), t.begin(), t.end());
    q.weights.push_back(inv_n);
  }
  return q;
}

std::vector<Element> trial_outputs(Algorithm algo, const TestProblem& f, std::size_t n, int r,
                                   std::size_t trials, std::uint64_t seed, std::size_t threads,
                                   std::size_t node_budget) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (n < 1) throw UsageError("n must be >= 1");
  std::vector<Element> outputs(trials);
  if (algo == Algorithm::Standard) {
    parallel_for(trials, threads, [&](std::size_t t) {
      outputs[t] = standard_mc(f, n, derive_seed(seed, t));
    });
  } else {
    if (r < 1) throw UsageError("the separated estimator needs r >= 1");
    const SeparatedMonteCarlo estimator(f, n, r, node_budget);
    parallel_for(trials, threads, [&](std::size_t t) {
      outputs[t] = estimator.estimate(derive_seed(seed, t));
    });
  }
  return outputs;
}

ErrorMoment error_moment(Algorithm algo, const TestProblem& f, std::size_t n, int r, double p,
                         std::size_t trials, std::uint64_t seed,
                         const ErrorMomentOptions& options) {
  MCConfig{n, r, seed, trials, p}.validate();
  if (trials < 2) throw UsageError("error_moment needs at least 2 trials");
  const Element* reference = options.reference ? &*options.reference
                             : f.exact_integral ? &*f.exact_integral
                                                : nullptr;
  if (!reference) {
    throw UsageError("problem '" + f.name + "' has no exact integral and no reference was given");
  }
  if (!f.space.contains(*reference)) throw UsageError("reference integral has the wrong dimension");

  const auto outputs = trial_outputs(algo, f, n, r, trials, seed, options.threads, options.node_budget);
  std::vector<double> errors(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    errors[t] = norm(f.space, axpy(f.space, -1.0, outputs[t], *reference));
  }
  ErrorMoment m;
  m.p = p;
  m.trials = trials;
  m.value = power_mean(errors, p);
  m.mean_norm = power_mean(errors, 1.0);
  const bool all_zero = std::all_of(errors.begin(), errors.end(), [](double e) { return e == 0.0; });
  m.std_error = all_zero ? 0.0
                         : bootstrap_stderr(
                               errors, [p](std::span<const double> v) { return power_mean(v, p); },
                               options.bootstrap_resamples, derive_seed(seed, kBootstrapStream));
  return m;
}

RateReport rate_fit(std::vector<RatePoint> points) {
  RateReport report;
  std::vector<double> x, y;
  std::set<std::size_t> seen;
  for (const auto& pt : points) {
    if (!seen.insert(pt.n).second) {
      throw UsageError("rate_fit: duplicate n=" + std::to_string(pt.n));
    }
    if (pt.n == 0) throw UsageError("rate_fit: n must be positive");
    if (!(pt.moment.value > 0.0) || !std::isfinite(pt.moment.value)) {
      report.notes.push_back("excluded n=" + std::to_string(pt.n) + ": value " +
                             format_double(pt.moment.value) + " is not positive");
      continue;
    }
    x.push_back(std::log(static_cast<double>(pt.n)));
    y.push_back(std::log(pt.moment.value));
  }
  if (x.size() < 3) {
    throw UsageError("rate_fit needs at least 3 points with positive values, got " +
                     std::to_string(x.size()));
  }
  const LinearFit fit = least_squares(x, y);
  report.points = std::move(points);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.r2 = fit.r2;
  return report;
}

double theoretical_exponent(int r, std::size_t d, double p) {
  return -static_cast<double>(r) / static_cast<double>(d) - 1.0 + 1.0 / p;
}

RateReport rate_experiment(Algorithm algo, const TestProblem& f, std::span<const std::size_t> ns,
                           int r, double p, std::size_t trials, std::uint64_t seed,
                           const ErrorMomentOptions& options) {
  std::vector<RatePoint> points;
  points.reserve(ns.size());
  for (std::size_t n : ns) {
    points.push_back({n, error_moment(algo, f, n, r, p, trials, derive_seed(seed, n), options)});
  }
  return rate_fit(std::move(points));
}

std::vector<SumDiagnosticPoint> bounded_sum_diagnostic(std::size_t m,
                                                       std::span<const std::size_t> ns, double p,
                                                       std::size_t trials, std::uint64_t seed) {
  if (m < 1) throw UsageError("diagnostic needs m >= 1");
  if (trials < 2) throw UsageError("diagnostic needs at least 2 trials");
  if (!(p >= 1.0 && p <= 2.0)) throw UsageError("moment p must lie in [1, 2]");
  const auto space = SpaceDescriptor::lq(Exponent(1.0), m);
  std::vector<SumDiagnosticPoint> out;
  for (std::size_t n : ns) {
    if (n < 1) throw UsageError("diagnostic needs n >= 1");
    const std::uint64_t master = derive_seed(seed, n);
    std::vector<double> norms(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      CounterStream stream(derive_seed(master, t));
      Element sum(m);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = stream.sign();
        const double u = stream.uniform();
        sum[stream.below(m)] += s * u;
      }
      norms[t] = norm(space, sum);
    }
    SumDiagnosticPoint pt;
    pt.n = n;
    pt.moment = power_mean(norms, p);
    const double scale = std::pow(static_cast<double>(n), 1.0 / p);
    pt.ratio = pt.moment / scale;
    pt.std_error = bootstrap_stderr(
                       norms, [p](std::span<const double> v) { return power_mean(v, p); }, 1000,
                       derive_seed(master, kBootstrapStream)) /
                   scale;
    out.push_back(pt);
  }
  return out;
}

}  // namespace banach
