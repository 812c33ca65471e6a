#pragma once

// Rademacher averages (E||sum eps_i x_i||^p)^{1/p}, lower estimates of the
// equal-norm type constant sigma_{p,n}(X), and the subset search / inductive
// partition used to bound a full Rademacher sum by sums over blocks.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "banach/space.hpp"

namespace banach {

enum class MomentMethod { Exact, Sampled };

std::string_view to_string(MomentMethod method) noexcept;

// Largest family size enumerated exactly (2^{n-1} patterns by eps -> -eps symmetry).
inline constexpr std::size_t kExactCutoff = 20;
// Largest family size accepted by the exhaustive subset search with exact moments.
inline constexpr std::size_t kSubsetSearchCutoff = 14;

struct RademacherEstimate {
  double p = 1.0;
  double value = 0.0;
  MomentMethod method = MomentMethod::Exact;
  std::size_t samples = 0;   // sampled only
  double std_error = 0.0;    // sampled only
};

struct RademacherOptions {
  MomentMethod method = MomentMethod::Exact;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

RademacherEstimate rademacher_moment(const SpaceDescriptor& space, std::span<const Element> vectors,
                                     double p, const RademacherOptions& options = {});

// Exact (E||sum eps_i x_i||^p)^{1/p}; n <= kExactCutoff.
double exact_rademacher_moment(const SpaceDescriptor& space, std::span<const Element> vectors,
                               double p, std::size_t threads = 1);

struct VectorFamily {
  std::string name;
  std::vector<Element> vectors;
};

// e_1..e_n; requires n <= dim.
VectorFamily basis_family(const SpaceDescriptor& space, std::size_t n);
// n copies of x (default: the all-ones vector scaled to unit norm).
VectorFamily constant_family(const SpaceDescriptor& space, std::size_t n);
VectorFamily constant_family(const SpaceDescriptor& space, std::size_t n, const Element& x);
// n vectors with coordinates uniform on [-1,1], normalised to unit norm.
VectorFamily random_unit_family(const SpaceDescriptor& space, std::size_t n, std::uint64_t seed);

// Builds `basis`, `constant` or `random`.
VectorFamily named_family(std::string_view name, const SpaceDescriptor& space, std::size_t n,
                          std::uint64_t seed);

struct FamilyRatio {
  std::string family;
  double ratio = 0.0;
  RademacherEstimate moment;
};

struct TypeConstantEstimate {
  double p = 1.0;
  std::size_t n = 0;
  // max over families of moment / (n^{1/p} max_i ||x_i||); a lower bound for sigma_{p,n}(X).
  double lower_bound = 0.0;
  std::string witness_family;
  std::vector<FamilyRatio> ratios;
};

TypeConstantEstimate sigma_lower_bound(const SpaceDescriptor& space, double p, std::size_t n,
                                       std::span<const VectorFamily> families,
                                       std::uint64_t seed = 0);

struct SubsetResult {
  std::vector<std::size_t> indices;  // ascending, positions within the searched family
  double moment = 0.0;               // E||sum_{i in I} eps_i x_i||
  double moment_p = 0.0;             // (E||.||^p)^{1/p}
};

struct SubsetSearchOptions {
  // Use sampled moments (allows up to kExactCutoff vectors).
  bool sampled = false;
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
};

// Among subsets with |I| >= ceil(gamma n), the one with the smallest first
// Rademacher moment. Ties (relative 1e-12) go to the smaller subset, then to
// the smaller bitmask.
SubsetResult subset_search(const SpaceDescriptor& space, std::span<const Element> vectors,
                           double gamma, double p, const SubsetSearchOptions& options = {});

struct PartitionTrace {
  // Blocks in construction order; indices refer to the original family.
  std::vector<std::vector<std::size_t>> blocks;
  double gamma = 0.0;
  // First moments E||sum_{i in I_l} eps_i x_i||.
  std::vector<double> per_block_moment;
  // |remaining| before each step.
  std::vector<std::size_t> remaining_before;

  // Disjoint, exhaustive over {0..n-1}, |I_l| >= gamma |remaining_l| and
  // |remaining after l| <= (1-gamma)^l n for every l.
  bool satisfies_invariants(std::size_t n) const;
};

// Applies subset_search to the indices not yet covered until none remain.
PartitionTrace greedy_partition(const SpaceDescriptor& space, std::span<const Element> vectors,
                                double gamma, double p, const SubsetSearchOptions& options = {});

// ceil(log n / -log(1 - gamma)) + 1
std::size_t partition_step_bound(std::size_t n, double gamma);

// 8^d / (2 * 9^d)
double default_gamma(std::size_t d);

struct MomentReconstruction {
  double block_sum = 0.0;    // sum_l E||sum_{I_l} eps_i x_i||
  double full_moment = 0.0;  // E||sum_i eps_i x_i||
  bool bound_holds = false;  // block_sum >= full_moment (up to 1e-12 relative)
};

MomentReconstruction reconstruct_full_moment(const PartitionTrace& trace,
                                             const SpaceDescriptor& space,
                                             std::span<const Element> vectors, double p);

}  // namespace banach
