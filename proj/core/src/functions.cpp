#include "banach/functions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "banach/error.hpp"
#include "banach/rng.hpp"

namespace banach {

Element TestProblem::operator()(std::span<const double> t) const {
  Element out(space.dim());
  evaluator(t, out.coords());
  return out;
}

double TestProblem::cr_bound(int r) const {
  if (r < 0 || r > smoothness) {
    throw UsageError("problem '" + name + "' is certified only up to C^" +
                     std::to_string(smoothness) + ", requested r=" + std::to_string(r));
  }
  return cr_norm_bound(r);
}

// ---------------------------------------------------------------------------
// Bump

double bump_profile(double s) noexcept {
  if (!(s > 0.0 && s < 1.0)) return 0.0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}

double bump_eval(std::span<const double> t) noexcept {
  double v = 1.0;
  for (double s : t) {
    v *= bump_profile(s);
    if (v == 0.0) return 0.0;
  }
  return v;
}

double bump_integral_1d(std::size_t intervals) {
  if (intervals < 2) throw UsageError("bump_integral_1d needs at least 2 intervals");
  // g and all its derivatives vanish at both ends, so the trapezoid rule
  // converges faster than any power of the step.
  const double h = 1.0 / static_cast<double>(intervals);
  double s = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) s += bump_profile(static_cast<double>(i) * h);
  return s * h;
}

namespace {

constexpr std::size_t kBumpGridIntervals = std::size_t{1} << 12;

double sigma_1d() {
  static const double value = bump_integral_1d(kBumpGridIntervals);
  return value;
}

}  // namespace

double bump_integral(std::size_t d) {
  if (d == 0) throw UsageError("bump_integral requires d >= 1");
  return std::pow(sigma_1d(), static_cast<double>(d));
}

double bump_derivative_sup(int order) {
  if (order < 0) throw UsageError("derivative order must be non-negative");
  static std::mutex mutex;
  static std::map<int, double> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  const std::size_t n = kBumpGridIntervals;
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = bump_profile(static_cast<double>(i) * h);
  std::vector<double> next(n + 1, 0.0);
  for (int k = 0; k < order; ++k) {
    // g vanishes to all orders at the endpoints, so the one-point loss at
    // each end of the stencil is harmless.
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 1; i < n; ++i) next[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    values.swap(next);
  }
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::abs(v));
  cache.emplace(order, sup);
  return sup;
}

double bump_derivative_constant(int r, std::size_t d) {
  if (r < 0) throw UsageError("r must be non-negative");
  if (d == 0) throw UsageError("d must be positive");
  std::vector<double> sups(static_cast<std::size_t>(r) + 1);
  for (int j = 0; j <= r; ++j) sups[static_cast<std::size_t>(j)] = bump_derivative_sup(j);
  // Maximise prod_a sups[alpha_a] over multi-indices with |alpha| <= r.
  double best = 0.0;
  std::vector<int> alpha(d, 0);
  for (;;) {
    int total = 0;
    for (int a : alpha) total += a;
    if (total <= r) {
      double v = 1.0;
      for (int a : alpha) v *= sups[static_cast<std::size_t>(a)];
      best = std::max(best, v);
    }
    std::size_t axis = 0;
    while (axis < d && ++alpha[axis] > r) alpha[axis++] = 0;
    if (axis == d) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Fooling family

namespace {

std::vector<std::size_t> multi_index(std::size_t flat, std::size_t base, std::size_t d) {
  std::vector<std::size_t> idx(d);
  for (std::size_t a = 0; a < d; ++a) {
    idx[a] = flat % base;
    flat /= base;
  }
  return idx;
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > (std::size_t{1} << 40) / std::max<std::size_t>(base, 1)) {
      throw UsageError("problem size " + std::to_string(base) + "^" + std::to_string(exp) +
                       " is too large");
    }
    out *= base;
  }
  return out;
}

}  // namespace

std::vector<double> FoolingFamily::corner(std::size_t i) const {
  auto idx = multi_index(i, m, d);
  std::vector<double> t(d);
  for (std::size_t a = 0; a < d; ++a) t[a] = static_cast<double>(idx[a]) / static_cast<double>(m);
  return t;
}

Element FoolingFamily::integral(std::size_t i) const {
  const double scale = sigma / (c0 * std::pow(static_cast<double>(m), r + static_cast<double>(d)) *
                                vector_sup);
  Element out = space.zero();
  axpy_inplace(space, scale, vectors.at(i), out);
  return out;
}

TestProblem FoolingFamily::combination(std::span<const double> alpha) const {
  if (alpha.size() != members.size()) {
    throw UsageError("combination: expected " + std::to_string(members.size()) + " coefficients");
  }
  std::vector<double> coeffs(alpha.begin(), alpha.end());
  std::vector<Evaluator> parts;
  parts.reserve(members.size());
  for (const auto& f : members) parts.push_back(f.evaluator);
  const std::size_t dim = space.dim();
  Evaluator eval = [coeffs, parts, dim](std::span<const double> t, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> tmp(dim);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (coeffs[i] == 0.0) continue;
      parts[i](t, tmp);
      for (std::size_t c = 0; c < dim; ++c) out[c] += coeffs[i] * tmp[c];
    }
  };
  Element exact = space.zero();
  for (std::size_t i = 0; i < members.size(); ++i) axpy_inplace(space, alpha[i], integral(i), exact);
  return make_problem("fooling-combination", d, space, std::move(eval), kAnalyticSmoothness,
                      [](int) { return 1.0; }, std::move(exact));
}

FoolingFamily make_fooling_family(std::size_t m, int r, std::size_t d, const SpaceDescriptor& space,
                                  std::vector<Element> vectors) {
  if (m == 0 || d == 0) throw UsageError("fooling family needs m >= 1 and d >= 1");
  if (r < 0) throw UsageError("fooling family needs r >= 0");
  const std::size_t count = checked_power(m, d);
  if (vectors.size() != count) {
    throw UsageError("fooling family with m=" + std::to_string(m) + ", d=" + std::to_string(d) +
                     " needs " + std::to_string(count) + " vectors, got " +
                     std::to_string(vectors.size()));
  }
  FoolingFamily family;
  family.m = m;
  family.r = r;
  family.d = d;
  family.space = space;
  for (const auto& x : vectors) family.vector_sup = std::max(family.vector_sup, norm(space, x));
  if (family.vector_sup == 0.0) throw UsageError("fooling family vectors are all zero");
  family.vectors = std::move(vectors);
  family.c0 = bump_derivative_constant(r, d);
  family.sigma = bump_integral(d);

  const double md = static_cast<double>(m);
  const double amplitude = 1.0 / (family.c0 * std::pow(md, r) * family.vector_sup);
  family.members.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> corner = family.corner(i);
    Element x = family.vectors[i];
    const std::size_t dim = space.dim();
    Evaluator eval = [corner, x, md, amplitude, dim](std::span<const double> t,
                                                     std::span<double> out) {
      std::array<double, 8> local_small{};
      std::vector<double> local_big;
      std::span<double> local;
      if (t.size() <= local_small.size()) {
        local = std::span<double>(local_small.data(), t.size());
      } else {
        local_big.resize(t.size());
        local = local_big;
      }
      for (std::size_t a = 0; a < t.size(); ++a) local[a] = md * (t[a] - corner[a]);
      const double w = amplitude * bump_eval(local);
      for (std::size_t c = 0; c < dim; ++c) out[c] = w * x[c];
    };
    family.members.push_back(make_problem(
        "fooling-member-" + std::to_string(i), d, space, std::move(eval), kAnalyticSmoothness,
        [](int) { return 1.0; }, family.integral(i)));
  }
  return family;
}

// ---------------------------------------------------------------------------
// Registry

TestProblem make_problem(std::string name, std::size_t d, const SpaceDescriptor& space,
                         Evaluator evaluator, int smoothness, std::function<double(int)> cr_bound,
                         std::optional<Element> exact_integral) {
  if (d == 0) throw UsageError("problem dimension d must be >= 1");
  if (exact_integral && !space.contains(*exact_integral)) {
    throw UsageError("exact integral does not belong to " + space.to_string());
  }
  TestProblem p;
  p.name = std::move(name);
  p.d = d;
  p.space = space;
  p.evaluator = std::move(evaluator);
  p.smoothness = smoothness;
  p.cr_norm_bound = std::move(cr_bound);
  p.exact_integral = std::move(exact_integral);
  return p;
}

namespace {

struct Params {
  std::string name;
  std::map<std::string, std::string, std::less<>> values;

  double real(std::string_view key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    double v = 0.0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("problem parameter " + std::string(key) + "='" + s + "' is not a number");
    }
    return v;
  }
  long integer(std::string_view key, long fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    long v = 0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("problem parameter " + std::string(key) + "='" + s + "' is not an integer");
    }
    return v;
  }
  bool has(std::string_view key) const { return values.contains(key); }
  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : values) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        throw UsageError("problem '" + name + "' has no parameter '" + k + "'");
      }
    }
  }
};

Params parse_params(std::string_view spelling) {
  Params p;
  auto colon = spelling.find(':');
  p.name = std::string(spelling.substr(0, colon));
  if (colon == std::string_view::npos) return p;
  std::string_view rest = spelling.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw UsageError("malformed problem parameter '" + std::string(item) + "'");
    }
    p.values[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return p;
}

TestProblem const_problem(const Params& params, std::size_t d, const SpaceDescriptor& space) {
  params.allow({"c"});
  const double c = params.real("c", 1.0);
  const std::size_t dim = space.dim();
  Element exact(std::vector<double>(dim, c));
  const double bound = norm(space, exact);
  return make_problem(
      params.name, d, space,
      [c](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), c); },
      kAnalyticSmoothness, [bound](int) { return bound; }, exact);
}

TestProblem poly_problem(const Params& params, std::size_t d, const SpaceDescriptor& space) {
  params.allow({"deg"});
  const long deg = params.integer("deg", 2);
  if (deg < 1) throw UsageError("poly needs deg >= 1");
  const std::size_t dim = space.dim();
  std::vector<int> exps(dim);
  Element exact(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    exps[j] = static_cast<int>(deg - static_cast<long>((dim - 1 - j) % static_cast<std::size_t>(deg)));
    exact[j] = std::pow(1.0 / (exps[j] + 1.0), static_cast<double>(d));
  }
  // |D^alpha t^e| <= e!/(e-a)! <= e^r per axis, so sum_j prod_a e_j^{alpha_a} <= sum_j e_j^r.
  auto bound = [exps](int r) {
    double s = 0.0;
    for (int e : exps) s += std::pow(static_cast<double>(e), r);
    return std::max(1.0, s);
  };
  return make_problem(
      params.name + ":deg=" + std::to_string(deg), d, space,
      [exps](std::span<const double> t, std::span<double> out) {
        for (std::size_t j = 0; j < out.size(); ++j) {
          double v = 1.0;
          for (double s : t) v *= std::pow(s, exps[j]);
          out[j] = v;
        }
      },
      kAnalyticSmoothness, bound, exact);
}

// (e^w - 1) / w, continuous at w = 0.
double exp_mean(double w) { return w == 0.0 ? 1.0 : std::expm1(w) / w; }

TestProblem expsum_problem(const Params& params, std::size_t d, const SpaceDescriptor& space) {
  params.allow({"seed"});
  const std::size_t dim = space.dim();
  std::vector<double> coef(dim, 1.0);
  std::vector<double> rates(dim * d, 1.0);
  std::string name = params.name;
  if (params.has("seed")) {
    const auto seed = static_cast<std::uint64_t>(params.integer("seed", 0));
    CounterStream stream(derive_seed(seed, kFamilyStream));
    for (auto& c : coef) c = stream.uniform(0.5, 1.5);
    for (auto& w : rates) w = stream.uniform(-2.0, 2.0);
    name += ":seed=" + std::to_string(seed);
  }
  Element exact(dim);
  double base_bound = 0.0;
  double wmax = 1.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double v = coef[j];
    double growth = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      v *= exp_mean(rates[j * d + a]);
      growth += std::max(0.0, rates[j * d + a]);
      wmax = std::max(wmax, std::abs(rates[j * d + a]));
    }
    exact[j] = v;
    base_bound += std::abs(coef[j]) * std::exp(growth);
  }
  return make_problem(
      name, d, space,
      [coef, rates, d](std::span<const double> t, std::span<double> out) {
        for (std::size_t j = 0; j < out.size(); ++j) {
          double arg = 0.0;
          for (std::size_t a = 0; a < d; ++a) arg += rates[j * d + a] * t[a];
          out[j] = coef[j] * std::exp(arg);
        }
      },
      kAnalyticSmoothness, [base_bound, wmax](int r) { return base_bound * std::pow(wmax, r); },
      exact);
}

TestProblem trig_problem(const Params& params, std::size_t d, const SpaceDescriptor& space) {
  params.allow({"freq"});
  const double freq = params.real("freq", 1.0);
  const double omega = 2.0 * std::numbers::pi * freq;
  const std::size_t dim = space.dim();
  std::vector<double> phase(dim);
  Element exact(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    phase[j] = static_cast<double>(j) * std::numbers::pi / (2.0 * static_cast<double>(dim));
    double per_axis = omega == 0.0 ? std::sin(phase[j])
                                   : (std::cos(phase[j]) - std::cos(omega + phase[j])) / omega;
    exact[j] = std::pow(per_axis, static_cast<double>(d));
  }
  std::string name = params.name + ":freq=" + format_double(freq);
  const double wmax = std::max(1.0, std::abs(omega));
  return make_problem(
      name, d, space,
      [omega, phase](std::span<const double> t, std::span<double> out) {
        for (std::size_t j = 0; j < out.size(); ++j) {
          double v = 1.0;
          for (double s : t) v *= std::sin(omega * s + phase[j]);
          out[j] = v;
        }
      },
      kAnalyticSmoothness,
      [wmax, dim](int r) { return static_cast<double>(dim) * std::pow(wmax, r); }, exact);
}

TestProblem coordinate_mix_problem(const Params& params, std::size_t d,
                                   const SpaceDescriptor& space) {
  params.allow({});
  const std::size_t dim = space.dim();
  Element exact(dim);
  std::vector<double> beta(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    beta[j] = 0.5 * static_cast<double>(j + 1);
    double per_axis = beta[j] == 1.0 ? std::log(2.0)
                                     : (std::pow(2.0, 1.0 - beta[j]) - 1.0) / (1.0 - beta[j]);
    exact[j] = std::pow(per_axis, static_cast<double>(d));
  }
  // |d^a/ds^a (1+s)^{-b}| <= b(b+1)...(b+a-1) on [0,1].
  auto bound = [beta, d](int r) {
    double s = 0.0;
    for (double b : beta) {
      double rising = 1.0;
      for (int a = 0; a < r; ++a) rising *= b + a;
      s += std::max(1.0, rising);
    }
    (void)d;
    return s;
  };
  return make_problem(
      params.name, d, space,
      [beta](std::span<const double> t, std::span<double> out) {
        for (std::size_t j = 0; j < out.size(); ++j) {
          double v = 1.0;
          for (double s : t) v *= std::pow(1.0 + s, -beta[j]);
          out[j] = v;
        }
      },
      kAnalyticSmoothness, bound, exact);
}

TestProblem lacunary_problem(const Params& params, std::size_t d, const SpaceDescriptor& space) {
  params.allow({"s", "base", "terms"});
  const double s = params.real("s", 1.05);
  const double base = params.real("base", 3.0);
  if (!(s > 0.0)) throw UsageError("lacunary needs s > 0");
  if (!(base > 1.0)) throw UsageError("lacunary needs base > 1");
  // Default truncation drops terms below 1e-12 in amplitude.
  const long default_terms = static_cast<long>(std::ceil(12.0 * std::log(10.0) / (s * std::log(base))));
  const long terms = params.integer("terms", default_terms);
  if (terms < 1 || terms > 64) throw UsageError("lacunary needs 1 <= terms <= 64");

  const std::size_t dim = space.dim();
  const auto nterms = static_cast<std::size_t>(terms);
  std::vector<double> amp(nterms), freq(nterms);
  for (std::size_t l = 0; l < nterms; ++l) {
    amp[l] = std::pow(base, -static_cast<double>(l) * s);
    freq[l] = std::pow(base, static_cast<double>(l)) * std::numbers::pi;
  }
  std::vector<double> dir(d);
  for (std::size_t a = 0; a < d; ++a) dir[a] = 1.0 + 0.618034 * static_cast<double>(a);

  Element exact(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double total = 0.0;
    for (std::size_t l = 0; l < nterms; ++l) {
      const double phase = 1.1 * static_cast<double>(l) + 0.7 * static_cast<double>(j);
      std::complex<double> z = std::polar(1.0, phase);
      for (std::size_t a = 0; a < d; ++a) {
        const double w = freq[l] * dir[a];
        z *= (std::polar(1.0, w) - 1.0) / std::complex<double>(0.0, w);
      }
      total += amp[l] * z.real();
    }
    exact[j] = total;
  }
  const int smoothness = static_cast<int>(std::ceil(s)) - 1;
  const double vmax = dir.back();
  auto bound = [amp, freq, vmax, dim](int r) {
    double b = 0.0;
    for (std::size_t l = 0; l < amp.size(); ++l) b += amp[l] * std::pow(std::max(1.0, freq[l] * vmax), r);
    return static_cast<double>(dim) * b;
  };
  std::string name = params.name + ":s=" + format_double(s) + ",base=" + format_double(base) +
                     ",terms=" + std::to_string(terms);
  return make_problem(
      name, d, space,
      [amp, freq, dir](std::span<const double> t, std::span<double> out) {
        double x = 0.0;
        for (std::size_t a = 0; a < t.size(); ++a) x += dir[a] * t[a];
        for (std::size_t j = 0; j < out.size(); ++j) {
          double v = 0.0;
          for (std::size_t l = 0; l < amp.size(); ++l) {
            v += amp[l] * std::cos(freq[l] * x + 1.1 * static_cast<double>(l) +
                                   0.7 * static_cast<double>(j));
          }
          out[j] = v;
        }
      },
      smoothness, bound, exact);
}

}  // namespace

TestProblem registry_problem(std::string_view spelling, std::size_t d, const SpaceDescriptor& space) {
  if (d == 0) throw UsageError("problem dimension d must be >= 1");
  Params params = parse_params(spelling);
  if (params.name == "const") return const_problem(params, d, space);
  if (params.name == "poly") return poly_problem(params, d, space);
  if (params.name == "expsum") return expsum_problem(params, d, space);
  if (params.name == "trig") return trig_problem(params, d, space);
  if (params.name == "coordinate-mix") return coordinate_mix_problem(params, d, space);
  if (params.name == "lacunary") return lacunary_problem(params, d, space);
  throw UsageError("unknown problem '" + params.name +
                   "' (expected const, poly, expsum, trig, coordinate-mix or lacunary)");
}

// ---------------------------------------------------------------------------
// Grid diagnostics

namespace {

// Samples f on the tensor grid; layout [point][coordinate], axis 0 fastest.
std::vector<double> sample_grid(const TestProblem& f, std::size_t g) {
  const std::size_t dim = f.space.dim();
  const std::size_t points = checked_power(g, f.d);
  std::vector<double> data(points * dim);
  std::vector<double> t(f.d);
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    for (std::size_t a = 0; a < f.d; ++a) {
      t[a] = static_cast<double>(rest % g) / static_cast<double>(g - 1);
      rest /= g;
    }
    f.evaluator(t, std::span<double>(data.data() + p * dim, dim));
  }
  return data;
}

// One central difference along `axis`; entries within one step of the
// boundary on that axis are marked invalid.
void central_difference(std::vector<double>& data, std::vector<char>& valid, std::size_t g,
                        std::size_t d, std::size_t dim, std::size_t axis, double h) {
  std::size_t stride = 1;
  for (std::size_t a = 0; a < axis; ++a) stride *= g;
  const std::size_t points = valid.size();
  std::vector<double> out(data.size(), 0.0);
  std::vector<char> out_valid(points, 0);
  for (std::size_t p = 0; p < points; ++p) {
    const std::size_t coord = (p / stride) % g;
    if (coord == 0 || coord + 1 == g) continue;
    if (!valid[p - stride] || !valid[p + stride]) continue;
    out_valid[p] = 1;
    for (std::size_t c = 0; c < dim; ++c) {
      out[p * dim + c] = (data[(p + stride) * dim + c] - data[(p - stride) * dim + c]) / (2.0 * h);
    }
  }
  (void)d;
  data.swap(out);
  valid.swap(out_valid);
}

}  // namespace

double cr_norm_estimate(const TestProblem& f, int r, std::size_t grid_per_axis) {
  if (f.d > 3) throw UsageError("cr_norm_estimate supports d <= 3");
  if (grid_per_axis < 3) throw UsageError("cr_norm_estimate needs >= 3 grid points per axis");
  if (r < 0) throw UsageError("r must be non-negative");
  const std::size_t g = grid_per_axis;
  const std::size_t dim = f.space.dim();
  const std::vector<double> base = sample_grid(f, g);
  const std::size_t points = base.size() / dim;
  const double h = 1.0 / static_cast<double>(g - 1);

  double best = 0.0;
  std::vector<int> alpha(f.d, 0);
  for (;;) {
    int total = 0;
    for (int a : alpha) total += a;
    if (total <= r) {
      std::vector<double> data = base;
      std::vector<char> valid(points, 1);
      for (std::size_t a = 0; a < f.d; ++a) {
        for (int k = 0; k < alpha[a]; ++k) central_difference(data, valid, g, f.d, dim, a, h);
      }
      for (std::size_t p = 0; p < points; ++p) {
        if (!valid[p]) continue;
        best = std::max(best, norm_unchecked(f.space, std::span<const double>(data.data() + p * dim, dim)));
      }
    }
    std::size_t axis = 0;
    while (axis < f.d && ++alpha[axis] > r) alpha[axis++] = 0;
    if (axis == f.d) break;
  }
  return best;
}

Element reference_integral(const TestProblem& f, std::size_t cells) {
  if (f.d > 3) throw UsageError("reference_integral supports d <= 3");
  if (cells == 0) throw UsageError("reference_integral needs cells >= 1");
  // 5-point Gauss-Legendre on [0,1].
  static constexpr std::array<double, 5> x = {
      0.046910077030668004, 0.23076534494715845, 0.5, 0.76923465505284155, 0.95308992296933200};
  static constexpr std::array<double, 5> w = {
      0.11846344252809454, 0.23931433524968324, 0.28444444444444444, 0.23931433524968324,
      0.11846344252809454};
  const std::size_t per_axis = cells * x.size();
  std::vector<double> nodes(per_axis), weights(per_axis);
  const double h = 1.0 / static_cast<double>(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t q = 0; q < x.size(); ++q) {
      nodes[c * x.size() + q] = (static_cast<double>(c) + x[q]) * h;
      weights[c * x.size() + q] = w[q] * h;
    }
  }
  const std::size_t dim = f.space.dim();
  const std::size_t points = checked_power(per_axis, f.d);
  std::vector<double> sum(dim, 0.0), value(dim), t(f.d);
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    double weight = 1.0;
    for (std::size_t a = 0; a < f.d; ++a) {
      const std::size_t i = rest % per_axis;
      rest /= per_axis;
      t[a] = nodes[i];
      weight *= weights[i];
    }
    f.evaluator(t, value);
    for (std::size_t c = 0; c < dim; ++c) sum[c] += weight * value[c];
  }
  return Element(std::move(sum));
}

}  // namespace banach
