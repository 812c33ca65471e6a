#pragma once

// Composite tensor-product Lagrange interpolation of degree r on the
// partition of [0,1]^d into k^d subcubes of side 1/k.
//
// Each subcube carries r+1 equispaced nodes per axis including both ends, so
// neighbouring subcubes share their boundary nodes and the global node set is
// the tensor grid {i/(rk) : 0 <= i <= rk}^d with M = (rk+1)^d nodes.
//
//   (P f)(t) = sum_j f(u_j) psi_j(t),   b_j = int_Q psi_j(t) dt.

#include <cstddef>
#include <span>
#include <vector>

#include "banach/functions.hpp"
#include "banach/space.hpp"

namespace banach {

inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 24;

class InterpolationOperator {
 public:
  // Nonzero basis functions at a point: (r+1)^d node ids and values.
  struct LocalBasis {
    std::vector<std::size_t> node_ids;
    std::vector<double> values;
  };

  static InterpolationOperator build(int r, std::size_t k, std::size_t d,
                                     std::size_t node_budget = kDefaultNodeBudget);

  int degree() const noexcept { return r_; }
  std::size_t cells_per_axis() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return d_; }
  std::size_t node_count() const noexcept { return weights_.size(); }
  std::size_t nodes_per_axis() const noexcept { return axis_nodes_.size(); }

  // Coordinates of global node j.
  std::vector<double> node(std::size_t j) const;
  const std::vector<double>& weights() const noexcept { return weights_; }
  // Per-axis node positions i/(rk); node j has multi-index digits in base rk+1, axis 0 fastest.
  const std::vector<double>& axis_nodes() const noexcept { return axis_nodes_; }
  // Closed-form integrals of the r+1 univariate Lagrange basis polynomials on [0,1].
  const std::vector<double>& newton_cotes() const noexcept { return newton_cotes_; }

  // Subcube containing t; on shared faces the subcube with the smaller
  // multi-index wins. Returned as per-axis cell indices.
  std::vector<std::size_t> locate(std::span<const double> t) const;

  // Global node ids of subcube `cell` (flat index, axis 0 fastest), (r+1)^d entries.
  std::vector<std::size_t> cell_nodes(std::size_t cell) const;

  void local_basis(std::span<const double> t, LocalBasis& out) const;
  // Same, with the subcube forced instead of located; used for continuity checks.
  void local_basis_in_cell(std::span<const double> t, std::span<const std::size_t> cell,
                           LocalBasis& out) const;

 private:
  InterpolationOperator() = default;

  // Univariate basis values at local coordinate u in node units [0, r].
  void axis_basis(double u, std::span<double> out) const;

  int r_ = 0;
  std::size_t k_ = 0;
  std::size_t d_ = 0;
  std::vector<double> axis_nodes_;
  std::vector<double> axis_weights_;
  std::vector<double> newton_cotes_;
  std::vector<double> barycentric_;
  std::vector<double> weights_;
};

InterpolationOperator build_interp(int r, std::size_t k, std::size_t d,
                                   std::size_t node_budget = kDefaultNodeBudget);

// f(u_j) for every node, in node order.
std::vector<Element> sample_nodes(const InterpolationOperator& op, const TestProblem& f);

Element apply_interp(const InterpolationOperator& op, std::span<const Element> samples,
                     std::span<const double> t);
Element apply_interp(const InterpolationOperator& op, const TestProblem& f,
                     std::span<const double> t);

// sum_j b_j f(u_j) = S(P f).
Element integrate_interpolant(const InterpolationOperator& op, std::span<const Element> samples);
Element integrate_interpolant(const InterpolationOperator& op, const TestProblem& f);

// max over the uniform grid {i/(g-1)}^d of ||f(t) - (P f)(t)||.
double sup_error_estimate(const InterpolationOperator& op, const TestProblem& f,
                          std::size_t grid_per_axis);

}  // namespace banach
