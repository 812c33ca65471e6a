#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "banach/error.hpp"
#include "banach/functions.hpp"
#include "banach/interp.hpp"
#include "banach/stats.hpp"
#include "oracles.hpp"

using namespace banach;

namespace {

// Scalar problem from a plain function of t.
TestProblem scalar_problem(std::function<double(std::span<const double>)> g, std::size_t d) {
  return make_problem("test", d, SpaceDescriptor::scalar(),
                      [g](std::span<const double> t, std::span<double> out) { out[0] = g(t); },
                      kAnalyticSmoothness, [](int) { return 1.0; });
}

// Tensor monomial prod_a t_a^{e_a} with random coefficients in three coordinates.
TestProblem tensor_poly(int deg, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t terms = static_cast<std::size_t>(std::pow(deg + 1, d));
  std::vector<double> coef(3 * terms);
  for (auto& c : coef) c = u(gen);
  return make_problem(
      "tensor-poly", d, SpaceDescriptor::parse("lq:2:3"),
      [coef, deg, d, terms](std::span<const double> t, std::span<double> out) {
        for (std::size_t c = 0; c < 3; ++c) {
          double s = 0.0;
          for (std::size_t q = 0; q < terms; ++q) {
            std::size_t rest = q;
            double mono = 1.0;
            for (std::size_t a = 0; a < d; ++a) {
              mono *= std::pow(t[a], static_cast<int>(rest % static_cast<std::size_t>(deg + 1)));
              rest /= static_cast<std::size_t>(deg + 1);
            }
            s += coef[c * terms + q] * mono;
          }
          out[c] = s;
        }
      },
      kAnalyticSmoothness, [](int) { return 1.0; });
}

double hump(std::span<const double> t) { return t[0] * (1.0 - t[0]); }

}  // namespace

TEST(BuildInterp, WeightExamples) {
  const auto a = build_interp(1, 1, 1);
  EXPECT_EQ(a.axis_nodes(), (std::vector<double>{0.0, 1.0}));
  EXPECT_NEAR(a.weights()[0], 0.5, 1e-15);
  EXPECT_NEAR(a.weights()[1], 0.5, 1e-15);

  const auto b = build_interp(2, 1, 1);
  EXPECT_EQ(b.axis_nodes(), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_NEAR(b.weights()[0], 1.0 / 6, 1e-15);
  EXPECT_NEAR(b.weights()[1], 4.0 / 6, 1e-15);
  EXPECT_NEAR(b.weights()[2], 1.0 / 6, 1e-15);

  const auto c = build_interp(1, 2, 1);
  EXPECT_EQ(c.axis_nodes(), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_NEAR(c.weights()[0], 0.25, 1e-15);
  EXPECT_NEAR(c.weights()[1], 0.5, 1e-15);
  EXPECT_NEAR(c.weights()[2], 0.25, 1e-15);
}

TEST(BuildInterp, NewtonCotesMatchesIntegratedLagrangeBasis) {
  for (int r = 1; r <= 5; ++r) {
    std::vector<double> x(static_cast<std::size_t>(r) + 1);
    for (int l = 0; l <= r; ++l) x[static_cast<std::size_t>(l)] = static_cast<double>(l) / r;
    const auto op = build_interp(r, 1, 1);
    for (std::size_t l = 0; l < x.size(); ++l) {
      const double ref = oracle::simpson([&](double s) { return oracle::lagrange(x, l, s); }, 0.0,
                                         1.0, 1 << 12);
      EXPECT_NEAR(op.newton_cotes()[l], ref, 1e-12) << "r=" << r << " l=" << l;
    }
  }
}

TEST(BuildInterp, Invariants) {
  for (int r : {1, 2, 3, 4}) {
    for (std::size_t k : {1U, 2U, 5U}) {
      for (std::size_t d : {1U, 2U, 3U}) {
        const auto op = build_interp(r, k, d);
        EXPECT_EQ(op.node_count(), static_cast<std::size_t>(std::pow(r * k + 1, d)));
        double sum = 0.0;
        for (double w : op.weights()) sum += w;
        EXPECT_NEAR(sum, 1.0, 1e-12);
        for (std::size_t j = 0; j < op.node_count(); ++j) {
          for (double c : op.node(j)) {
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
          }
        }
      }
    }
  }
}

TEST(BuildInterp, Errors) {
  EXPECT_THROW(build_interp(0, 2, 1), UsageError);
  EXPECT_THROW(build_interp(1, 0, 1), UsageError);
  EXPECT_THROW(build_interp(1, 1, 0), UsageError);
  EXPECT_THROW(build_interp(2, 1000, 3), UsageError);
  EXPECT_THROW(build_interp(1, 9, 2, 99), UsageError);
  EXPECT_NO_THROW(build_interp(1, 9, 2, 100));
}

TEST(ApplyInterp, PolynomialReproduction) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r : {1, 2, 3}) {
    for (std::size_t k : {1U, 2U, 4U}) {
      for (std::size_t d : {1U, 2U}) {
        const auto f = tensor_poly(r, d, 100 * r + 10 * k + d);
        const auto op = build_interp(r, k, d);
        const auto samples = sample_nodes(op, f);
        for (int i = 0; i < 50; ++i) {
          std::vector<double> t(d);
          for (auto& c : t) c = u(gen);
          const Element want = f(t), got = apply_interp(op, samples, t);
          for (std::size_t c = 0; c < 3; ++c) {
            EXPECT_NEAR(got[c], want[c], 1e-10) << "r=" << r << " k=" << k << " d=" << d;
          }
        }
        EXPECT_LE(sup_error_estimate(op, f, d == 1 ? 101 : 21), 1e-10);
      }
    }
  }
}

TEST(ApplyInterp, ExactAtNodes) {
  const auto f = registry_problem("expsum:seed=4", 2, SpaceDescriptor::parse("lq:1:3"));
  const auto op = build_interp(3, 3, 2);
  const auto samples = sample_nodes(op, f);
  for (std::size_t j = 0; j < op.node_count(); ++j) {
    EXPECT_EQ(apply_interp(op, samples, op.node(j)), samples[j]) << j;
  }
}

TEST(ApplyInterp, HumpThroughEndpoints) {
  const auto f = scalar_problem(hump, 1);
  const auto op = build_interp(1, 1, 1);
  EXPECT_EQ(apply_interp(op, f, std::vector<double>{0.5})[0], 0.0);
  EXPECT_EQ(f(std::vector<double>{0.5})[0], 0.25);
}

TEST(ApplyInterp, MatchesDirectLagrangeOracle) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto g = [](double s) { return std::sin(3.0 * s) + s * s * s * s; };
  const auto f = scalar_problem([&](std::span<const double> t) { return g(t[0]); }, 1);
  for (int r : {1, 2, 4}) {
    for (std::size_t k : {1U, 3U, 7U}) {
      const auto op = build_interp(r, k, 1);
      const auto samples = sample_nodes(op, f);
      for (int i = 0; i < 100; ++i) {
        const double t = u(gen);
        EXPECT_NEAR(apply_interp(op, samples, std::vector<double>{t})[0],
                    oracle::piecewise_interpolant(g, r, k, t), 1e-12);
      }
    }
  }
}

TEST(ApplyInterp, TensorProductOfOneDimensionalOracles) {
  // For a product function the tensor interpolant is the product of the
  // one-dimensional interpolants.
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto g1 = [](double s) { return std::exp(s); };
  auto g2 = [](double s) { return std::cos(2.0 * s); };
  const auto f = scalar_problem([&](std::span<const double> t) { return g1(t[0]) * g2(t[1]); }, 2);
  const auto op = build_interp(2, 3, 2);
  const auto samples = sample_nodes(op, f);
  for (int i = 0; i < 100; ++i) {
    const double a = u(gen), b = u(gen);
    const double want = oracle::piecewise_interpolant(g1, 2, 3, a) *
                        oracle::piecewise_interpolant(g2, 2, 3, b);
    EXPECT_NEAR(apply_interp(op, samples, std::vector<double>{a, b})[0], want, 1e-12);
  }
}

TEST(ApplyInterp, SharedFacesBelongToLowerCell) {
  const auto op = build_interp(2, 4, 2);
  EXPECT_EQ(op.locate(std::vector<double>{0.25, 0.5}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(op.locate(std::vector<double>{0.0, 1.0}), (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(op.locate(std::vector<double>{0.3, 0.76}), (std::vector<std::size_t>{1, 3}));
}

TEST(ApplyInterp, ContinuousAcrossCellBoundaries) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> face(1, 3);
  const auto f = registry_problem("trig:freq=2", 2, SpaceDescriptor::parse("lq:2:2"));
  const auto op = build_interp(3, 4, 2);
  const auto samples = sample_nodes(op, f);
  InterpolationOperator::LocalBasis lb;
  auto eval = [&](const std::vector<double>& t, const std::vector<std::size_t>& cell) {
    op.local_basis_in_cell(t, cell, lb);
    Element out(2);
    for (std::size_t q = 0; q < lb.node_ids.size(); ++q) {
      for (std::size_t c = 0; c < 2; ++c) out[c] += lb.values[q] * samples[lb.node_ids[q]][c];
    }
    return out;
  };
  for (int i = 0; i < 100; ++i) {
    const std::size_t b = face(gen);
    const double other = u(gen);
    const std::vector<double> t{static_cast<double>(b) / 4.0, other};
    std::vector<std::size_t> lower = op.locate(t), upper = lower;
    lower[0] = b - 1;
    upper[0] = b;
    const Element x = eval(t, lower), y = eval(t, upper);
    for (std::size_t c = 0; c < 2; ++c) EXPECT_NEAR(x[c], y[c], 1e-10);
  }
}

TEST(IntegrateInterpolant, Examples) {
  const auto c = registry_problem("const:c=2.5", 2, SpaceDescriptor::scalar());
  EXPECT_NEAR(integrate_interpolant(build_interp(3, 5, 2), c)[0], 2.5, 1e-14);
  const auto lin = scalar_problem([](std::span<const double> t) { return t[0]; }, 1);
  EXPECT_EQ(integrate_interpolant(build_interp(1, 1, 1), lin)[0], 0.5);
  const auto sq = scalar_problem([](std::span<const double> t) { return t[0] * t[0]; }, 1);
  EXPECT_NEAR(integrate_interpolant(build_interp(2, 1, 1), sq)[0], 1.0 / 3.0, 1e-15);
}

TEST(IntegrateInterpolant, ExactOnPolynomials) {
  for (int r : {1, 2, 3}) {
    const auto f = registry_problem("poly:deg=" + std::to_string(r), 2, SpaceDescriptor::parse("lq:2:3"));
    const Element got = integrate_interpolant(build_interp(r, 2, 2), f);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(got[c], (*f.exact_integral)[c], 1e-14);
  }
}

TEST(SupError, Examples) {
  const auto f = scalar_problem(hump, 1);
  EXPECT_DOUBLE_EQ(sup_error_estimate(build_interp(1, 1, 1), f, 3), 0.25);
  const auto p = registry_problem("poly:deg=2", 2, SpaceDescriptor::scalar());
  EXPECT_LE(sup_error_estimate(build_interp(2, 3, 2), p, 33), 1e-10);
  EXPECT_THROW(sup_error_estimate(build_interp(1, 1, 1), f, 1), UsageError);
}

TEST(SupError, NestedGridsAreMonotone) {
  // 17, 33 and 65 points are nested grids, so each maximum ranges over a
  // superset of the previous one.
  const auto f = registry_problem("expsum:seed=2", 1, SpaceDescriptor::parse("lq:inf:3"));
  const auto op = build_interp(2, 3, 1);
  const double a = sup_error_estimate(op, f, 17);
  const double b = sup_error_estimate(op, f, 33);
  const double c = sup_error_estimate(op, f, 65);
  EXPECT_LE(a, b + 1e-15);
  EXPECT_LE(b, c + 1e-15);
}

TEST(SupError, DecayRate) {
  const auto f = registry_problem("trig", 1, SpaceDescriptor::scalar());
  for (int r : {1, 2}) {
    std::vector<double> x, y;
    for (std::size_t k = 2; k <= 64; k *= 2) {
      x.push_back(std::log(static_cast<double>(k)));
      y.push_back(std::log(sup_error_estimate(build_interp(r, k, 1), f, 4097)));
    }
    EXPECT_LE(least_squares(x, y).slope, -r + 0.2) << "r=" << r;
  }
}
