#include "banach/rademacher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "banach/error.hpp"
#include "banach/parallel.hpp"
#include "banach/rng.hpp"
#include "banach/stats.hpp"

namespace banach {

std::string_view to_string(MomentMethod method) noexcept {
  return method == MomentMethod::Exact ? "exact" : "sampled";
}

namespace {

// Row-major copy of a family with dimension checks.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data).subspan(i * cols, cols);
  }
};

Matrix pack(const SpaceDescriptor& space, std::span<const Element> vectors) {
  Matrix m;
  m.rows = vectors.size();
  m.cols = space.dim();
  m.data.reserve(m.rows * m.cols);
  for (const auto& x : vectors) {
    if (!space.contains(x)) {
      throw UsageError("vector of dimension " + std::to_string(x.size()) + " is not in " +
                       space.to_string());
    }
    if (!x.is_finite()) throw NumericError("vector family has a non-finite coordinate");
    m.data.insert(m.data.end(), x.coords().begin(), x.coords().end());
  }
  return m;
}

void check_p(double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw UsageError("moment p must lie in [1, 2]");
}

double power(double v, double p) { return p == 1.0 ? v : std::pow(v, p); }
double root(double v, double p) { return p == 1.0 ? v : std::pow(v, 1.0 / p); }

constexpr std::size_t kChunkBits = 12;

// Mean of ||sum_{i in rows} eps_i x_i||^p over all sign patterns of the
// selected rows, with eps of the first selected row fixed to +1.
double exact_power_mean(const SpaceDescriptor& space, const Matrix& m,
                        std::span<const std::size_t> rows, double p, std::size_t threads) {
  const std::size_t n = rows.size();
  if (n == 0) return 0.0;
  if (n > kExactCutoff) {
    throw UsageError("exact enumeration is limited to n <= " + std::to_string(kExactCutoff) +
                     " vectors, got " + std::to_string(n));
  }
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  const std::uint64_t chunk = std::min<std::uint64_t>(patterns, std::uint64_t{1} << kChunkBits);
  const std::size_t chunks = static_cast<std::size_t>(patterns / chunk);
  std::vector<RunningMean> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::vector<double> sum(m.cols);
    RunningMean acc;
    for (std::uint64_t mask = c * chunk; mask < (c + 1) * chunk; ++mask) {
      auto first = m.row(rows[0]);
      std::copy(first.begin(), first.end(), sum.begin());
      for (std::size_t i = 1; i < n; ++i) {
        auto x = m.row(rows[i]);
        if ((mask >> (i - 1)) & 1U) {
          for (std::size_t k = 0; k < m.cols; ++k) sum[k] -= x[k];
        } else {
          for (std::size_t k = 0; k < m.cols; ++k) sum[k] += x[k];
        }
      }
      acc.add(power(norm_unchecked(space, sum), p));
    }
    partial[c] = acc;
  });
  RunningMean total;
  for (const auto& part : partial) total.merge(part);
  return total.mean();
}

// ||sum eps_i x_i|| for `samples` sign draws; draw k reads words starting at
// counter k * words of the stream keyed by `key`.
std::vector<double> sampled_norms(const SpaceDescriptor& space, const Matrix& m,
                                  std::span<const std::size_t> rows, std::size_t samples,
                                  std::uint64_t key, std::size_t threads) {
  const std::size_t n = rows.size();
  const std::size_t words = std::max<std::size_t>(1, (n + 63) / 64);
  std::vector<double> norms(samples);
  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(samples, 64));
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<double> sum(m.cols);
    const std::size_t begin = samples * b / blocks, end = samples * (b + 1) / blocks;
    for (std::size_t k = begin; k < end; ++k) {
      CounterStream stream(key, static_cast<std::uint64_t>(k) * words);
      std::fill(sum.begin(), sum.end(), 0.0);
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) bits = stream.next();
        auto x = m.row(rows[i]);
        const bool negative = (bits >> (i % 64)) & 1U;
        for (std::size_t c = 0; c < m.cols; ++c) sum[c] += negative ? -x[c] : x[c];
      }
      norms[k] = norm_unchecked(space, sum);
    }
  });
  return norms;
}

std::vector<std::size_t> iota_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

}  // namespace

double exact_rademacher_moment(const SpaceDescriptor& space, std::span<const Element> vectors,
                               double p, std::size_t threads) {
  check_p(p);
  if (vectors.empty()) throw UsageError("rademacher moment needs at least one vector");
  const Matrix m = pack(space, vectors);
  return root(exact_power_mean(space, m, iota_rows(m.rows), p, threads), p);
}

RademacherEstimate rademacher_moment(const SpaceDescriptor& space, std::span<const Element> vectors,
                                     double p, const RademacherOptions& options) {
  check_p(p);
  if (vectors.empty()) throw UsageError("rademacher moment needs at least one vector");
  RademacherEstimate est;
  est.p = p;
  est.method = options.method;
  const Matrix m = pack(space, vectors);
  const auto rows = iota_rows(m.rows);
  if (options.method == MomentMethod::Exact) {
    est.value = root(exact_power_mean(space, m, rows, p, options.threads), p);
    return est;
  }
  if (options.samples < 2) throw UsageError("sampled moment needs at least 2 samples");
  const auto norms = sampled_norms(space, m, rows, options.samples, derive_seed(options.seed, 0),
                                   options.threads);
  est.samples = options.samples;
  est.value = power_mean(norms, p);
  est.std_error = bootstrap_stderr(
      norms, [p](std::span<const double> v) { return power_mean(v, p); }, 1000,
      derive_seed(options.seed, kBootstrapStream));
  return est;
}

// ---------------------------------------------------------------------------
// Families

VectorFamily basis_family(const SpaceDescriptor& space, std::size_t n) {
  if (n < 1 || n > space.dim()) {
    throw UsageError("basis family of size " + std::to_string(n) + " does not fit in " +
                     space.to_string());
  }
  VectorFamily f{"basis", {}};
  for (std::size_t i = 1; i <= n; ++i) f.vectors.push_back(basis_vector(space, i));
  return f;
}

VectorFamily constant_family(const SpaceDescriptor& space, std::size_t n, const Element& x) {
  if (n < 1) throw UsageError("family needs n >= 1");
  if (!space.contains(x)) throw UsageError("constant family vector is not in " + space.to_string());
  return VectorFamily{"constant", std::vector<Element>(n, x)};
}

VectorFamily constant_family(const SpaceDescriptor& space, std::size_t n) {
  Element ones(std::vector<double>(space.dim(), 1.0));
  const double scale = 1.0 / norm(space, ones);
  for (std::size_t c = 0; c < ones.size(); ++c) ones[c] *= scale;
  return constant_family(space, n, ones);
}

VectorFamily random_unit_family(const SpaceDescriptor& space, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw UsageError("family needs n >= 1");
  CounterStream stream(derive_seed(seed, kFamilyStream));
  VectorFamily f{"random", {}};
  while (f.vectors.size() < n) {
    Element x(space.dim());
    for (std::size_t c = 0; c < x.size(); ++c) x[c] = stream.uniform(-1.0, 1.0);
    const double len = norm(space, x);
    if (len == 0.0) continue;
    for (std::size_t c = 0; c < x.size(); ++c) x[c] /= len;
    f.vectors.push_back(std::move(x));
  }
  return f;
}

VectorFamily named_family(std::string_view name, const SpaceDescriptor& space, std::size_t n,
                          std::uint64_t seed) {
  if (name == "basis") return basis_family(space, n);
  if (name == "constant") return constant_family(space, n);
  if (name == "random") return random_unit_family(space, n, seed);
  throw UsageError("unknown family '" + std::string(name) + "' (expected basis, constant or random)");
}

TypeConstantEstimate sigma_lower_bound(const SpaceDescriptor& space, double p, std::size_t n,
                                       std::span<const VectorFamily> families, std::uint64_t seed) {
  check_p(p);
  if (families.empty()) throw UsageError("sigma_lower_bound needs at least one family");
  TypeConstantEstimate out;
  out.p = p;
  out.n = n;
  const double scale = std::pow(static_cast<double>(n), 1.0 / p);
  for (const auto& family : families) {
    if (family.vectors.size() != n) {
      throw UsageError("family '" + family.name + "' has " + std::to_string(family.vectors.size()) +
                       " vectors, expected " + std::to_string(n));
    }
    double max_norm = 0.0;
    for (const auto& x : family.vectors) max_norm = std::max(max_norm, norm(space, x));
    if (max_norm == 0.0) throw UsageError("family '" + family.name + "' is identically zero");
    RademacherOptions options;
    options.method = n <= kExactCutoff ? MomentMethod::Exact : MomentMethod::Sampled;
    options.seed = seed;
    FamilyRatio ratio;
    ratio.family = family.name;
    ratio.moment = rademacher_moment(space, family.vectors, p, options);
    ratio.ratio = ratio.moment.value / (scale * max_norm);
    if (out.ratios.empty() || ratio.ratio > out.lower_bound) {
      out.lower_bound = ratio.ratio;
      out.witness_family = family.name;
    }
    out.ratios.push_back(std::move(ratio));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subset search and partition

double default_gamma(std::size_t d) {
  if (d < 1) throw UsageError("default_gamma needs d >= 1");
  return 0.5 * std::pow(8.0 / 9.0, static_cast<double>(d));
}

std::size_t partition_step_bound(std::size_t n, double gamma) {
  if (n <= 1) return 1;
  return static_cast<std::size_t>(
             std::ceil(std::log(static_cast<double>(n)) / -std::log1p(-gamma))) +
         1;
}

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw UsageError("gamma must lie in (0, 1)");
}

std::size_t min_subset_size(std::size_t n, double gamma) {
  // ceil(gamma n), ignoring rounding noise in the product.
  const double target = gamma * static_cast<double>(n);
  auto size = static_cast<std::size_t>(std::ceil(target - 1e-9));
  return std::clamp<std::size_t>(size, 1, n);
}

double subset_first_moment(const SpaceDescriptor& space, const Matrix& m,
                           std::span<const std::size_t> rows, const SubsetSearchOptions& options) {
  if (!options.sampled) return exact_power_mean(space, m, rows, 1.0, 1);
  const auto norms = sampled_norms(space, m, rows, options.samples,
                                   derive_seed(options.seed, 0), 1);
  return power_mean(norms, 1.0);
}

double subset_moment_p(const SpaceDescriptor& space, const Matrix& m,
                       std::span<const std::size_t> rows, double p,
                       const SubsetSearchOptions& options) {
  if (!options.sampled) return root(exact_power_mean(space, m, rows, p, 1), p);
  const auto norms = sampled_norms(space, m, rows, options.samples,
                                   derive_seed(options.seed, 0), 1);
  return power_mean(norms, p);
}

}  // namespace

SubsetResult subset_search(const SpaceDescriptor& space, std::span<const Element> vectors,
                           double gamma, double p, const SubsetSearchOptions& options) {
  check_gamma(gamma);
  check_p(p);
  const std::size_t n = vectors.size();
  if (n == 0) throw UsageError("subset_search needs at least one vector");
  const std::size_t limit = options.sampled ? kExactCutoff : kSubsetSearchCutoff;
  if (n > limit) {
    throw UsageError("subset_search is exhaustive and limited to n <= " + std::to_string(limit) +
                     ", got " + std::to_string(n));
  }
  const Matrix m = pack(space, vectors);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale += norm_unchecked(space, m.row(i));
  const double tol = 1e-12 * std::max(scale, 1e-300);
  const std::size_t need = min_subset_size(n, gamma);

  std::uint64_t best_mask = 0;
  std::size_t best_size = 0;
  double best = 0.0;
  std::vector<std::size_t> rows;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < need) continue;
    rows.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) rows.push_back(i);
    }
    const double moment = subset_first_moment(space, m, rows, options);
    const bool better = best_mask == 0 || moment < best - tol ||
                        (moment <= best + tol && size < best_size);
    if (better) {
      best_mask = mask;
      best_size = size;
      best = moment;
    }
  }
  SubsetResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1U) result.indices.push_back(i);
  }
  result.moment = best;
  result.moment_p = p == 1.0 ? best : subset_moment_p(space, m, result.indices, p, options);
  return result;
}

bool PartitionTrace::satisfies_invariants(std::size_t n) const {
  if (blocks.size() != per_block_moment.size() || blocks.size() != remaining_before.size()) {
    return false;
  }
  std::vector<char> seen(n, 0);
  std::size_t remaining = n;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (blocks[l].empty() || remaining_before[l] != remaining) return false;
    for (std::size_t i : blocks[l]) {
      if (i >= n || seen[i]) return false;
      seen[i] = 1;
    }
    if (static_cast<double>(blocks[l].size()) < gamma * static_cast<double>(remaining) - 1e-9) {
      return false;
    }
    remaining -= blocks[l].size();
    const double residual_bound =
        std::pow(1.0 - gamma, static_cast<double>(l + 1)) * static_cast<double>(n);
    if (static_cast<double>(remaining) > residual_bound + 1e-9) return false;
  }
  return remaining == 0;
}

PartitionTrace greedy_partition(const SpaceDescriptor& space, std::span<const Element> vectors,
                                double gamma, double p, const SubsetSearchOptions& options) {
  check_gamma(gamma);
  const std::size_t n = vectors.size();
  if (n == 0) throw UsageError("greedy_partition needs at least one vector");
  PartitionTrace trace;
  trace.gamma = gamma;
  std::vector<std::size_t> remaining = iota_rows(n);
  const std::size_t max_steps = partition_step_bound(n, gamma);
  while (!remaining.empty()) {
    if (trace.blocks.size() >= max_steps) {
      throw NumericError("greedy_partition exceeded its step bound");
    }
    std::vector<Element> sub;
    sub.reserve(remaining.size());
    for (std::size_t i : remaining) sub.push_back(vectors[i]);
    const SubsetResult found = subset_search(space, sub, gamma, p, options);
    std::vector<std::size_t> block;
    std::vector<char> taken(remaining.size(), 0);
    for (std::size_t pos : found.indices) {
      block.push_back(remaining[pos]);
      taken[pos] = 1;
    }
    trace.remaining_before.push_back(remaining.size());
    trace.blocks.push_back(std::move(block));
    trace.per_block_moment.push_back(found.moment);
    std::vector<std::size_t> next;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      if (!taken[pos]) next.push_back(remaining[pos]);
    }
    remaining.swap(next);
  }
  return trace;
}

MomentReconstruction reconstruct_full_moment(const PartitionTrace& trace,
                                             const SpaceDescriptor& space,
                                             std::span<const Element> vectors, double p) {
  check_p(p);
  if (!trace.satisfies_invariants(vectors.size())) {
    throw UsageError("partition trace does not match a family of " +
                     std::to_string(vectors.size()) + " vectors");
  }
  MomentReconstruction out;
  for (double v : trace.per_block_moment) out.block_sum += v;
  if (vectors.size() <= kExactCutoff) {
    out.full_moment = exact_rademacher_moment(space, vectors, 1.0);
  } else {
    RademacherOptions options;
    options.method = MomentMethod::Sampled;
    out.full_moment = rademacher_moment(space, vectors, 1.0, options).value;
  }
  out.bound_holds = out.block_sum >= out.full_moment * (1.0 - 1e-12) - 1e-300;
  return out;
}

}  // namespace banach
