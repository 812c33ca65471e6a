#include "banach/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "banach/error.hpp"

namespace banach {

Exponent::Exponent(double q) : value_(q), infinite_(false) {
  if (std::isinf(q) && q > 0) {
    value_ = 0.0;
    infinite_ = true;
    return;
  }
  if (!(q >= 1.0)) {
    throw UsageError("exponent q must satisfy q >= 1, got " + format_double(q));
  }
}

std::string Exponent::to_string() const {
  return infinite_ ? std::string("inf") : format_double(value_);
}

bool Element::is_finite() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double c) { return std::isfinite(c); });
}

SpaceDescriptor SpaceDescriptor::lq(Exponent q, std::size_t dim) {
  if (dim == 0) throw UsageError("l_q^m requires m >= 1");
  return SpaceDescriptor(Kind::Lq, q, dim);
}

namespace {

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

SpaceDescriptor SpaceDescriptor::parse(std::string_view spelling) {
  if (spelling == "scalar") return scalar();
  if (!spelling.starts_with("lq:")) {
    throw UsageError("unknown space '" + std::string(spelling) +
                     "' (expected `scalar` or `lq:<q>:<m>`)");
  }
  std::string_view rest = spelling.substr(3);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("space spelling '" + std::string(spelling) + "' is missing :<m>");
  }
  std::string_view qs = rest.substr(0, colon);
  std::string_view ms = rest.substr(colon + 1);
  Exponent q = qs == "inf" ? Exponent::infinity() : Exponent(parse_real(qs, "q"));
  std::size_t m = 0;
  auto [ptr, ec] = std::from_chars(ms.data(), ms.data() + ms.size(), m);
  if (ec != std::errc() || ptr != ms.data() + ms.size()) {
    throw UsageError("cannot parse dimension from '" + std::string(ms) + "'");
  }
  return lq(q, m);
}

std::string SpaceDescriptor::to_string() const {
  if (kind_ == Kind::ScalarReal) return "scalar";
  return "lq:" + q_.to_string() + ":" + std::to_string(dim_);
}

double norm_unchecked(const SpaceDescriptor& space, std::span<const double> x) noexcept {
  if (space.kind() == SpaceDescriptor::Kind::ScalarReal || x.size() == 1) {
    return x.empty() ? 0.0 : std::abs(x[0]);
  }
  const Exponent& q = space.q();
  if (q.is_infinite()) {
    double m = 0.0;
    for (double c : x) m = std::max(m, std::abs(c));
    return m;
  }
  if (q.value() == 1.0) {
    double s = 0.0;
    for (double c : x) s += std::abs(c);
    return s;
  }
  // Scale by the max modulus so large or tiny coordinates do not overflow.
  double scale = 0.0;
  for (double c : x) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  if (q.value() == 2.0) {
    for (double c : x) {
      double r = c / scale;
      s += r * r;
    }
    return scale * std::sqrt(s);
  }
  for (double c : x) s += std::pow(std::abs(c) / scale, q.value());
  return scale * std::pow(s, 1.0 / q.value());
}

namespace {

void require_member(const SpaceDescriptor& space, const Element& x, const char* what) {
  if (!space.contains(x)) {
    throw UsageError(std::string(what) + ": element has dimension " + std::to_string(x.size()) +
                     " but space " + space.to_string() + " has dimension " +
                     std::to_string(space.dim()));
  }
}

}  // namespace

double norm(const SpaceDescriptor& space, const Element& x) {
  require_member(space, x, "norm");
  if (!x.is_finite()) throw NumericError("norm: non-finite coordinate");
  return norm_unchecked(space, x.coords());
}

Element axpy(const SpaceDescriptor& space, double a, const Element& x, const Element& y) {
  Element out = y;
  axpy_inplace(space, a, x, out);
  return out;
}

void axpy_inplace(const SpaceDescriptor& space, double a, const Element& x, Element& y) {
  require_member(space, x, "axpy");
  require_member(space, y, "axpy");
  if (a == 0.0) return;
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Element basis_vector(const SpaceDescriptor& space, std::size_t i) {
  if (i < 1 || i > space.dim()) {
    throw UsageError("basis_vector: index " + std::to_string(i) + " outside 1.." +
                     std::to_string(space.dim()));
  }
  Element e(space.dim());
  e[i - 1] = 1.0;
  return e;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_element(const Element& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ';';
    out += format_double(x[i]);
  }
  return out;
}

}  // namespace banach
