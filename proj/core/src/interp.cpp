#include "banach/interp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "banach/error.hpp"

namespace banach {

namespace {

// Integrals over [0,1] of the Lagrange basis on the nodes l/r, l = 0..r,
// by exact integration of the monomial expansion.
std::vector<double> newton_cotes_weights(int r) {
  std::vector<double> out(static_cast<std::size_t>(r) + 1);
  for (int l = 0; l <= r; ++l) {
    std::vector<double> poly{1.0};  // coefficients, constant term first
    double denom = 1.0;
    for (int m = 0; m <= r; ++m) {
      if (m == l) continue;
      const double root = static_cast<double>(m) / r;
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t e = 0; e < poly.size(); ++e) {
        next[e + 1] += poly[e];
        next[e] -= root * poly[e];
      }
      poly.swap(next);
      denom *= static_cast<double>(l - m) / r;
    }
    double integral = 0.0;
    for (std::size_t e = 0; e < poly.size(); ++e) integral += poly[e] / static_cast<double>(e + 1);
    out[static_cast<std::size_t>(l)] = integral / denom;
  }
  return out;
}

}  // namespace

InterpolationOperator InterpolationOperator::build(int r, std::size_t k, std::size_t d,
                                                   std::size_t node_budget) {
  if (r < 1) throw UsageError("interpolation degree r must be >= 1");
  if (k < 1) throw UsageError("interpolation needs k >= 1");
  if (d < 1) throw UsageError("interpolation needs d >= 1");
  const std::size_t per_axis = static_cast<std::size_t>(r) * k + 1;
  std::size_t total = 1;
  for (std::size_t a = 0; a < d; ++a) {
    if (total > node_budget / per_axis) {
      throw UsageError("interpolation with r=" + std::to_string(r) + ", k=" + std::to_string(k) +
                       ", d=" + std::to_string(d) + " exceeds the node budget of " +
                       std::to_string(node_budget));
    }
    total *= per_axis;
  }

  InterpolationOperator op;
  op.r_ = r;
  op.k_ = k;
  op.d_ = d;
  const double rk = static_cast<double>(per_axis - 1);
  op.axis_nodes_.resize(per_axis);
  for (std::size_t i = 0; i < per_axis; ++i) op.axis_nodes_[i] = static_cast<double>(i) / rk;

  op.newton_cotes_ = newton_cotes_weights(r);
  op.axis_weights_.assign(per_axis, 0.0);
  const double cell_width = 1.0 / static_cast<double>(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (int l = 0; l <= r; ++l) {
      op.axis_weights_[c * static_cast<std::size_t>(r) + static_cast<std::size_t>(l)] +=
          op.newton_cotes_[static_cast<std::size_t>(l)] * cell_width;
    }
  }

  op.barycentric_.resize(static_cast<std::size_t>(r) + 1);
  for (int l = 0; l <= r; ++l) {
    double prod = 1.0;
    for (int m = 0; m <= r; ++m) {
      if (m != l) prod *= static_cast<double>(l - m);
    }
    op.barycentric_[static_cast<std::size_t>(l)] = 1.0 / prod;
  }

  op.weights_.resize(total);
  for (std::size_t j = 0; j < total; ++j) {
    std::size_t rest = j;
    double w = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      w *= op.axis_weights_[rest % per_axis];
      rest /= per_axis;
    }
    op.weights_[j] = w;
  }
  return op;
}

InterpolationOperator build_interp(int r, std::size_t k, std::size_t d, std::size_t node_budget) {
  return InterpolationOperator::build(r, k, d, node_budget);
}

std::vector<double> InterpolationOperator::node(std::size_t j) const {
  const std::size_t per_axis = axis_nodes_.size();
  std::vector<double> t(d_);
  for (std::size_t a = 0; a < d_; ++a) {
    t[a] = axis_nodes_[j % per_axis];
    j /= per_axis;
  }
  return t;
}

namespace {

struct AxisPosition {
  std::size_t cell;
  double local;  // in node units, [0, r]
};

// Position along one axis in node units, snapped to an exact node when
// within rounding of one.
double node_units(double t, std::size_t rk) {
  const double g = t * static_cast<double>(rk);
  const double nearest = std::round(g);
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(g));
  return std::abs(g - nearest) <= tol ? nearest : g;
}

AxisPosition axis_position(double t, int r, std::size_t k) {
  const std::size_t rr = static_cast<std::size_t>(r);
  const double g = node_units(t, rr * k);
  const double rmax = static_cast<double>(rr * k);
  if (g <= 0.0) return {0, g};
  if (g >= rmax) return {k - 1, g - static_cast<double>((k - 1) * rr)};
  std::size_t cell;
  if (g == std::floor(g)) {
    // Exact node: a shared face belongs to the lower subcube.
    cell = (static_cast<std::size_t>(g) - 1) / rr;
  } else {
    cell = std::min(static_cast<std::size_t>(std::floor(g / static_cast<double>(rr))), k - 1);
  }
  return {cell, g - static_cast<double>(cell * rr)};
}

}  // namespace

std::vector<std::size_t> InterpolationOperator::locate(std::span<const double> t) const {
  if (t.size() != d_) throw UsageError("locate: point has the wrong dimension");
  std::vector<std::size_t> cell(d_);
  for (std::size_t a = 0; a < d_; ++a) cell[a] = axis_position(t[a], r_, k_).cell;
  return cell;
}

std::vector<std::size_t> InterpolationOperator::cell_nodes(std::size_t cell) const {
  const std::size_t per_axis = axis_nodes_.size();
  const std::size_t local = static_cast<std::size_t>(r_) + 1;
  std::vector<std::size_t> base(d_);
  for (std::size_t a = 0; a < d_; ++a) {
    base[a] = (cell % k_) * static_cast<std::size_t>(r_);
    cell /= k_;
  }
  std::size_t count = 1;
  for (std::size_t a = 0; a < d_; ++a) count *= local;
  std::vector<std::size_t> ids(count);
  for (std::size_t q = 0; q < count; ++q) {
    std::size_t rest = q, id = 0, stride = 1;
    for (std::size_t a = 0; a < d_; ++a) {
      id += (base[a] + rest % local) * stride;
      rest /= local;
      stride *= per_axis;
    }
    ids[q] = id;
  }
  return ids;
}

void InterpolationOperator::axis_basis(double u, std::span<double> out) const {
  const std::size_t local = static_cast<std::size_t>(r_) + 1;
  for (std::size_t l = 0; l < local; ++l) {
    if (u == static_cast<double>(l)) {
      std::fill(out.begin(), out.end(), 0.0);
      out[l] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t l = 0; l < local; ++l) {
    out[l] = barycentric_[l] / (u - static_cast<double>(l));
    denom += out[l];
  }
  for (double& v : out) v /= denom;
}

void InterpolationOperator::local_basis(std::span<const double> t, LocalBasis& out) const {
  if (t.size() != d_) throw UsageError("local_basis: point has the wrong dimension");
  std::vector<std::size_t> cell(d_);
  for (std::size_t a = 0; a < d_; ++a) cell[a] = axis_position(t[a], r_, k_).cell;
  local_basis_in_cell(t, cell, out);
}

void InterpolationOperator::local_basis_in_cell(std::span<const double> t,
                                                std::span<const std::size_t> cell,
                                                LocalBasis& out) const {
  const std::size_t local = static_cast<std::size_t>(r_) + 1;
  const std::size_t per_axis = axis_nodes_.size();
  const std::size_t rr = static_cast<std::size_t>(r_);
  double axis_values[8 * 6];
  std::vector<double> axis_values_big;
  double* values = axis_values;
  if (d_ * local > std::size(axis_values)) {
    axis_values_big.resize(d_ * local);
    values = axis_values_big.data();
  }
  for (std::size_t a = 0; a < d_; ++a) {
    const double u = node_units(t[a], rr * k_) - static_cast<double>(cell[a] * rr);
    axis_basis(u, std::span<double>(values + a * local, local));
  }
  std::size_t count = 1;
  for (std::size_t a = 0; a < d_; ++a) count *= local;
  out.node_ids.resize(count);
  out.values.resize(count);
  for (std::size_t q = 0; q < count; ++q) {
    std::size_t rest = q, id = 0, stride = 1;
    double v = 1.0;
    for (std::size_t a = 0; a < d_; ++a) {
      const std::size_t l = rest % local;
      rest /= local;
      id += (cell[a] * rr + l) * stride;
      stride *= per_axis;
      v *= values[a * local + l];
    }
    out.node_ids[q] = id;
    out.values[q] = v;
  }
}

std::vector<Element> sample_nodes(const InterpolationOperator& op, const TestProblem& f) {
  if (f.d != op.dimension()) throw UsageError("problem and interpolation dimensions differ");
  std::vector<Element> samples;
  samples.reserve(op.node_count());
  for (std::size_t j = 0; j < op.node_count(); ++j) {
    Element v = f(op.node(j));
    if (!v.is_finite()) throw NumericError("non-finite value of '" + f.name + "' at a node");
    samples.push_back(std::move(v));
  }
  return samples;
}

Element apply_interp(const InterpolationOperator& op, std::span<const Element> samples,
                     std::span<const double> t) {
  if (samples.size() != op.node_count()) throw UsageError("apply_interp: sample count mismatch");
  InterpolationOperator::LocalBasis basis;
  op.local_basis(t, basis);
  Element out(samples.front().size());
  for (std::size_t q = 0; q < basis.node_ids.size(); ++q) {
    const Element& s = samples[basis.node_ids[q]];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += basis.values[q] * s[c];
  }
  return out;
}

Element apply_interp(const InterpolationOperator& op, const TestProblem& f,
                     std::span<const double> t) {
  return apply_interp(op, sample_nodes(op, f), t);
}

Element integrate_interpolant(const InterpolationOperator& op, std::span<const Element> samples) {
  if (samples.size() != op.node_count()) {
    throw UsageError("integrate_interpolant: sample count mismatch");
  }
  Element out(samples.front().size());
  const auto& b = op.weights();
  for (std::size_t j = 0; j < samples.size(); ++j) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += b[j] * samples[j][c];
  }
  return out;
}

Element integrate_interpolant(const InterpolationOperator& op, const TestProblem& f) {
  return integrate_interpolant(op, sample_nodes(op, f));
}

double sup_error_estimate(const InterpolationOperator& op, const TestProblem& f,
                          std::size_t grid_per_axis) {
  if (grid_per_axis < 2) throw UsageError("sup_error_estimate needs grid_per_axis >= 2");
  const auto samples = sample_nodes(op, f);
  const std::size_t d = op.dimension();
  std::size_t points = 1;
  for (std::size_t a = 0; a < d; ++a) points *= grid_per_axis;
  std::vector<double> t(d);
  double worst = 0.0;
  Element diff(f.space.dim());
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    for (std::size_t a = 0; a < d; ++a) {
      t[a] = static_cast<double>(rest % grid_per_axis) / static_cast<double>(grid_per_axis - 1);
      rest /= grid_per_axis;
    }
    Element exact = f(t);
    Element approx = apply_interp(op, samples, t);
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = exact[c] - approx[c];
    worst = std::max(worst, norm(f.space, diff));
  }
  return worst;
}

}  // namespace banach
