#pragma once

// Partial integrals, Lebesgue means and their difference.
//
//   I_T(x)       = integral over |t| < T of f(t) e^{itx}
//   mean(x, h)   = integral over R of f(t) e^{itx} sin(th)/(th)
//   D(x, h)      = mean(x, h) - I_{1/h}(x)
//
// The mean is the symmetric difference quotient of the formal integral
// L(x) = integral of f(t) e^{itx} / (it); L itself need not exist and is never
// evaluated. The mean is computed on |t| <= T_max with a certified bound on
// the discarded tail.

#include <complex>
#include <optional>
#include <string_view>

#include "trigsum/corpus.hpp"
#include "trigsum/quad.hpp"

namespace trigsum::summability {

struct EvalPoint {
  double x = 0.0;
  double h = 1.0;  // > 0
  double T = 1.0;  // > 0

  void validate() const;
};

enum class TruncationMethod { support, absolute, oscillatory };

std::string_view to_string(TruncationMethod m) noexcept;

struct Truncation {
  double T_max = 0.0;
  /// Certified bound on |mean - mean restricted to |t| <= T_max|.
  double tail_bound = 0.0;
  TruncationMethod method = TruncationMethod::support;
};

struct MeanResult {
  std::complex<double> value{};
  double truncation_T = 0.0;
  double tail_bound = 0.0;
  quad::QuadResult quad;

  double budget() const noexcept { return quad.abs_error_estimate + tail_bound; }
};

struct DiffResult {
  std::complex<double> value{};
  double budget = 0.0;
  MeanResult mean;
  quad::QuadResult partial;
};

quad::QuadResult partial_integral(const corpus::TestFunction& fn, double x, double T, double tol);

/// (2/h) * envelope tail at T: bounds the kernel-weighted tail through
/// |sinc(th)| <= 1/(|t| h). Valid for T >= envelope start.
double absolute_tail_bound(const corpus::TestFunction& fn, double h, double T);

/// Second-mean-value bound for monotone envelopes: writes the kernel as a
/// combination of sin(t (x +/- h)) against the nonincreasing weight f(t)/(th).
/// Infinite when the envelope is not flagged monotone.
double oscillatory_tail_bound(const corpus::TestFunction& fn, double x, double h, double T);

/// Smallest T_max (to bisection precision) whose certified tail bound is
/// <= eps_tail. Compact support short-circuits to the support radius. Without
/// x only the absolute bound is used. The oscillatory bound is only applied
/// when the absolute tail is finite, i.e. when the mean exists as a Lebesgue
/// integral. Throws TruncationUnachievable otherwise.
Truncation choose_truncation(const corpus::TestFunction& fn, double h, double eps_tail,
                             std::optional<double> x = std::nullopt);

/// Mean over |t| <= T_max only; tail_bound is left at zero.
MeanResult truncated_mean(const corpus::TestFunction& fn, double x, double h, double T_max,
                          double tol);

MeanResult lebesgue_mean(const corpus::TestFunction& fn, double x, double h, double eps_tail,
                         double tol);

/// Splits `tol` evenly between the truncated tail and the quadrature.
MeanResult lebesgue_mean(const corpus::TestFunction& fn, double x, double h, double tol);

/// D(x, h) with the mean computed at (eps_tail, tol) and I_{1/h} at tol.
DiffResult mean_minus_partial(const corpus::TestFunction& fn, double x, double h,
                              double eps_tail, double tol);

DiffResult mean_minus_partial(const corpus::TestFunction& fn, double x, double h, double tol);

}  // namespace trigsum::summability
