#pragma once

// Finite-dimensional real Banach spaces: the scalar field and l_q^m.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace banach {

// Exponent q in [1, inf] with an explicit infinity marker.
class Exponent {
 public:
  explicit Exponent(double q);
  static Exponent infinity() noexcept { return Exponent(); }

  bool is_infinite() const noexcept { return infinite_; }
  // Finite value; meaningless when is_infinite().
  double value() const noexcept { return value_; }

  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent() noexcept : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

// A vector of a concrete space. Length is checked against the owning space
// by every operation that takes both.
class Element {
 public:
  Element() = default;
  explicit Element(std::size_t dim) : coords_(dim, 0.0) {}
  explicit Element(std::vector<double> coords) : coords_(std::move(coords)) {}
  Element(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }

  bool is_finite() const noexcept;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::vector<double> coords_;
};

class SpaceDescriptor {
 public:
  enum class Kind { ScalarReal, Lq };

  static SpaceDescriptor scalar() noexcept { return SpaceDescriptor(); }
  static SpaceDescriptor lq(Exponent q, std::size_t dim);

  // `scalar`, or `lq:<q>:<m>` with q a real >= 1 or `inf`.
  static SpaceDescriptor parse(std::string_view spelling);

  Kind kind() const noexcept { return kind_; }
  const Exponent& q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return dim_; }

  bool contains(const Element& x) const noexcept { return x.size() == dim_; }
  Element zero() const { return Element(dim_); }

  // Inverse of parse(); finite q printed in shortest round-trip form.
  std::string to_string() const;

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

 private:
  SpaceDescriptor() noexcept : kind_(Kind::ScalarReal), q_(Exponent::infinity()), dim_(1) {}
  SpaceDescriptor(Kind kind, Exponent q, std::size_t dim) noexcept
      : kind_(kind), q_(q), dim_(dim) {}

  Kind kind_;
  Exponent q_;
  std::size_t dim_;
};

// ||x||_q; |x| on the scalar field. Throws UsageError on a dimension mismatch
// and NumericError on a non-finite coordinate.
double norm(const SpaceDescriptor& space, const Element& x);

// Norm of a raw coordinate block, no validation. For inner loops that have
// already checked dimensions.
double norm_unchecked(const SpaceDescriptor& space, std::span<const double> x) noexcept;

// a*x + y.
Element axpy(const SpaceDescriptor& space, double a, const Element& x, const Element& y);

// y <- a*x + y.
void axpy_inplace(const SpaceDescriptor& space, double a, const Element& x, Element& y);

// e_i with 1-based i, 1 <= i <= dim.
Element basis_vector(const SpaceDescriptor& space, std::size_t i);

// Formats coordinates as `c1;c2;...` with round-trip precision.
std::string format_element(const Element& x);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace banach
