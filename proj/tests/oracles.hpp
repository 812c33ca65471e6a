#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

// l_q norm straight from the definition; q = +inf for the max norm.
inline double lq_norm(const std::vector<double>& x, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double c : x) m = std::max(m, std::abs(c));
    return m;
  }
  double s = 0.0;
  for (double c : x) s += std::pow(std::abs(c), q);
  return std::pow(s, 1.0 / q);
}

// (2^-n sum over all 2^n sign patterns of ||sum eps_i x_i||^p)^(1/p).
inline double rademacher_bruteforce(const std::vector<std::vector<double>>& xs, double q,
                                    double p) {
  const std::size_t n = xs.size();
  const std::size_t dim = xs.front().size();
  long double total = 0.0L;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> s(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double eps = ((mask >> i) & 1U) ? -1.0 : 1.0;
      for (std::size_t c = 0; c < dim; ++c) s[c] += eps * xs[i][c];
    }
    total += std::pow(static_cast<long double>(lq_norm(s, q)), static_cast<long double>(p));
  }
  return static_cast<double>(
      std::pow(total / static_cast<long double>(std::size_t{1} << n), 1.0L / p));
}

// Minimal first moment over subsets of size >= need, by brute force.
inline double min_subset_moment(const std::vector<std::vector<double>>& xs, double q,
                                std::size_t need) {
  const std::size_t n = xs.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::vector<double>> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) sub.push_back(xs[i]);
    }
    if (sub.size() < need) continue;
    best = std::min(best, rademacher_bruteforce(sub, q, 1.0));
  }
  return best;
}

// Univariate Lagrange basis polynomial l on nodes x, product form.
inline double lagrange(const std::vector<double>& x, std::size_t l, double s) {
  double v = 1.0;
  for (std::size_t m = 0; m < x.size(); ++m) {
    if (m != l) v *= (s - x[m]) / (x[l] - x[m]);
  }
  return v;
}

// Composite Simpson with `intervals` (even) subintervals.
inline double simpson(const std::function<double(double)>& g, double a, double b,
                      std::size_t intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  double s = g(a) + g(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    s += (i % 2 ? 4.0 : 2.0) * g(a + static_cast<double>(i) * h);
  }
  return s * h / 3.0;
}

// Piecewise polynomial interpolant of a scalar g on [0,1]: k cells, r+1
// equispaced nodes each, cell chosen by floor with the last cell closed.
inline double piecewise_interpolant(const std::function<double(double)>& g, int r, std::size_t k,
                                    double t) {
  std::size_t cell = std::min(static_cast<std::size_t>(t * static_cast<double>(k)), k - 1);
  const double a = static_cast<double>(cell) / static_cast<double>(k);
  const double h = 1.0 / static_cast<double>(k);
  std::vector<double> nodes(static_cast<std::size_t>(r) + 1);
  for (int l = 0; l <= r; ++l) nodes[static_cast<std::size_t>(l)] = a + h * l / r;
  double v = 0.0;
  for (std::size_t l = 0; l < nodes.size(); ++l) v += g(nodes[l]) * lagrange(nodes, l, t);
  return v;
}

}  // namespace oracle
