#pragma once

// Test problems f: [0,1]^d -> X, the smooth bump, and the bump-based fooling
// family whose integrals encode an arbitrary vector family.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "banach/space.hpp"

namespace banach {

// Writes f(t) into `out` (length space.dim()). Must be pure and reentrant.
using Evaluator = std::function<void(std::span<const double> t, std::span<double> out)>;

inline constexpr int kAnalyticSmoothness = 16;

struct TestProblem {
  std::string name;
  std::size_t d = 1;
  SpaceDescriptor space = SpaceDescriptor::scalar();
  Evaluator evaluator;
  // Largest r for which f is certified to lie in C^r(Q, X).
  int smoothness = 0;
  // Upper bound on ||f||_{C^r(Q,X)} for 0 <= r <= smoothness.
  std::function<double(int r)> cr_norm_bound;
  std::optional<Element> exact_integral;

  Element operator()(std::span<const double> t) const;
  void eval_into(std::span<const double> t, std::span<double> out) const { evaluator(t, out); }
  double cr_bound(int r) const;
};

// prod_i g(t_i) with g(s) = exp(-1/(s(1-s))) on (0,1) and 0 elsewhere.
double bump_eval(std::span<const double> t) noexcept;
double bump_profile(double s) noexcept;

// Composite trapezoid approximation of the integral of g over [0,1].
double bump_integral_1d(std::size_t intervals);

// sigma_d = (sigma_1)^d, sigma_1 computed once with 2^12 intervals.
double bump_integral(std::size_t d);

// sup_s |g^{(order)}(s)| from repeated central differences on a 2^12-interval
// grid. Cached per order.
double bump_derivative_sup(int order);

// max_{|alpha| <= r} sup_t |D^alpha psi(t)| for the d-variate bump; uses
// D^alpha psi = prod_a g^{(alpha_a)}(t_a).
double bump_derivative_constant(int r, std::size_t d);

struct FoolingFamily {
  std::size_t m = 0;
  int r = 0;
  std::size_t d = 0;
  SpaceDescriptor space = SpaceDescriptor::scalar();
  std::vector<Element> vectors;
  double c0 = 0.0;
  double sigma = 0.0;
  // max_i ||x_i||
  double vector_sup = 0.0;
  // f_i supported on the subcube with multi-index i (axis 0 fastest).
  std::vector<TestProblem> members;

  // Lower corner of subcube i.
  std::vector<double> corner(std::size_t i) const;
  // S f_i = c0^{-1} sigma m^{-r-d} ||(x_i)||_inf^{-1} x_i.
  Element integral(std::size_t i) const;
  // sum_i alpha_i f_i.
  TestProblem combination(std::span<const double> alpha) const;
};

FoolingFamily make_fooling_family(std::size_t m, int r, std::size_t d, const SpaceDescriptor& space,
                                  std::vector<Element> vectors);

// Builds a documented problem from `<name>[:key=value,...]`:
//   const:c=1          every coordinate equals c
//   poly:deg=2         coordinate j is prod_a t_a^{e_j}, e_j = deg - ((dim-1-j) mod deg)
//   expsum[:seed=s]    coordinate j is c_j exp(<w_j, t>); without a seed c_j = 1, w_j = (1,..,1)
//   trig:freq=1        coordinate j is prod_a sin(2 pi freq t_a + j pi / (2 dim))
//   coordinate-mix     coordinate j is prod_a (1 + t_a)^{-(j+1)/2}
//   lacunary:s=1.05,base=3
//                      coordinate j is sum_l base^{-l s} cos(base^l pi <v, t> + 1.1 l + 0.7 j),
//                      v_a = 1 + 0.618034 a; lies in C^{ceil(s)-1} and no smoother class of
//                      that order, so interpolation residuals decay like k^{-s}
// All carry closed-form exact integrals.
TestProblem registry_problem(std::string_view spelling, std::size_t d, const SpaceDescriptor& space);

// Wraps an arbitrary evaluator.
TestProblem make_problem(std::string name, std::size_t d, const SpaceDescriptor& space,
                         Evaluator evaluator, int smoothness, std::function<double(int)> cr_bound,
                         std::optional<Element> exact_integral = std::nullopt);

// Grid estimate of ||f||_{C^r(Q,X)}: mixed partials from repeated central
// differences on a uniform grid with `grid_per_axis` points per axis. d <= 3.
double cr_norm_estimate(const TestProblem& f, int r, std::size_t grid_per_axis);

// Coordinatewise composite Gauss-Legendre (5 points per cell, `cells` per axis).
// Independent reference for exact integrals; d <= 3.
Element reference_integral(const TestProblem& f, std::size_t cells);

}  // namespace banach
