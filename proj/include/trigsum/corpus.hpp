#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trigsum {

/// Behaviour of the weighted mass M(T) = (1/T) * integral over |t|<T of |t f(t)|.
///   vanishing  - M(T) -> 0
///   bounded    - M(T) <= B for T > T1
///   divergent  - M(T) unbounded
enum class ConditionClass { vanishing, bounded, divergent };

std::string_view to_string(ConditionClass c) noexcept;

namespace corpus {

/// Monotone majorant E with |f(t)| <= E(|t|) for |t| >= from.
struct Envelope {
  double from = 0.0;
  std::function<double(double)> bound;

  /// Integral of E(u)/u over [T, inf). When only `tail_upper` is set the pair
  /// brackets the true tail as [0, upper]; when both are set, [lower, upper].
  std::function<double(double)> tail_upper;
  std::function<double(double)> tail_lower;

  /// Set when the tail integral of E(u)/u is infinite (no usable tail form).
  bool tail_divergent = false;

  /// f is real, nonnegative and nonincreasing in |t| on |t| >= from. Enables
  /// the oscillatory truncation bound.
  bool monotone = false;

  bool has_tail() const noexcept { return static_cast<bool>(tail_upper); }
};

template <class Sig>
struct ClosedForm {
  std::function<Sig> eval;
  std::string domain;
};

struct ClosedForms {
  /// I_T(x) = integral over |t|<T of f(t) e^{itx}.
  std::optional<ClosedForm<std::complex<double>(double x, double T)>> partial;
  /// M(T).
  std::optional<ClosedForm<double(double T)>> mass;
  /// Q(T) = T * integral over |t|>T of |f(t)/t|.
  std::optional<ClosedForm<double(double T)>> tail;
  /// The limit of I_T(x) as T -> inf.
  std::optional<ClosedForm<std::complex<double>(double x)>> transform;
};

/// A named integrand on the real line together with the analytic facts the
/// other modules rely on. Catalogue entries are immutable.
struct TestFunction {
  std::string name;
  std::string description;
  std::function<std::complex<double>(double)> f;

  /// Smallest a with f(t) = 0 for |t| > a; empty when the support is unbounded.
  std::optional<double> support_radius;
  std::optional<Envelope> envelope;

  bool globally_integrable = false;
  ConditionClass condition_class = ConditionClass::bounded;

  /// Discontinuities. The value at a jump is the midpoint of the one-sided limits.
  std::vector<double> jump_points;
  /// Points where f is continuous but not smooth (e.g. |t| at 0).
  std::vector<double> kink_points;

  /// f(-t) == f(t) and f is real.
  bool even_real = false;

  /// Whether the partial integrals I_T(x) have a finite limit at x.
  std::function<bool(double)> limit_exists_at;

  ClosedForms closed_forms;

  std::complex<double> operator()(double t) const { return f(t); }

  /// Batched evaluation into split real/imaginary storage.
  void eval(std::span<const double> t, std::span<double> re, std::span<double> im) const;

  /// Sorted union of jump and kink points.
  std::vector<double> breakpoints() const;

  bool compact() const noexcept { return support_radius.has_value(); }

  /// The function c*f, c > 0, with envelope and closed forms rescaled.
  TestFunction scaled(double c) const;
};

struct CatalogueEntry {
  std::string name;
  std::string description;
  std::optional<double> support_radius;
  bool globally_integrable;
  ConditionClass condition_class;
};

/// Throws UnknownFunction listing the catalogue.
const TestFunction& get(std::string_view name);

/// Lexicographic by name.
std::vector<CatalogueEntry> list();

std::vector<std::string> names();

}  // namespace corpus
}  // namespace trigsum
