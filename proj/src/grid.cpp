#include "trigsum/grid.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "trigsum/errors.hpp"

namespace trigsum::grid {
namespace {

[[noreturn]] void bad_spec(std::string_view spec, std::string_view why) {
  throw InvalidArgument(fmt::format("bad grid spec '{}': {}", spec, why));
}

template <class T>
T parse_number(std::string_view spec, std::string_view field) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    bad_spec(spec, fmt::format("cannot parse '{}'", field));
  }
  return value;
}

void check_count(int n) {
  if (n < 2) throw InvalidArgument(fmt::format("grid needs n >= 2, got {}", n));
}

}  // namespace

std::vector<double> linear(double a, double b, int n) {
  check_count(n);
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("grid endpoints must be finite");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    out[k] = a + s * (b - a);
  }
  out.back() = b;
  return out;
}

std::vector<double> geometric(double a, double b, int n) {
  check_count(n);
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument(fmt::format("geometric grid needs positive endpoints, got {} and {}", a, b));
  }
  // Interpolating decimal exponents keeps 10^k points exact.
  const double la = std::log10(a);
  const double lb = std::log10(b);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    out[k] = std::pow(10.0, la + s * (lb - la));
  }
  out.front() = a;
  out.back() = b;
  return out;
}

Spec parse_spec(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) bad_spec(spec, "expected kind:a:b:n");
  Spec out;
  out.kind = std::string(parts[0]);
  if (out.kind != "linear" && out.kind != "geometric") {
    bad_spec(spec, "kind must be linear or geometric");
  }
  out.a = parse_number<double>(spec, parts[1]);
  out.b = parse_number<double>(spec, parts[2]);
  out.n = parse_number<int>(spec, parts[3]);
  return out;
}

std::vector<double> expand(const Spec& spec) {
  return spec.kind == "linear" ? linear(spec.a, spec.b, spec.n)
                               : geometric(spec.a, spec.b, spec.n);
}

std::vector<double> parse(std::string_view spec) { return expand(parse_spec(spec)); }

}  // namespace trigsum::grid
