#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "trigsum/corpus.hpp"

namespace trigsum::quad {

struct Interval {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Oscillation content of an integrand: the panel width is capped at half a
/// period of the fastest frequency, and no panel straddles a jump point.
struct OscillationSpec {
  std::vector<double> frequencies;
  std::vector<double> jump_points;

  double max_frequency() const noexcept;
};

struct QuadResult {
  std::complex<double> value{};
  double abs_error_estimate = 0.0;
  std::size_t panels_used = 0;
  std::size_t evaluations = 0;
  /// False when the tolerance was not met; value and estimate are still the
  /// best available.
  bool converged = true;
};

/// Fills re/im with the integrand sampled at t. Real integrands leave im at zero.
using Integrand =
    std::function<void(std::span<const double> t, std::span<double> re, std::span<double> im)>;

struct Options {
  /// Upper bound on the width of initial panels, independent of frequencies.
  double max_width = std::numeric_limits<double>::infinity();
  std::size_t max_panels = std::size_t{1} << 21;
};

/// Deterministic initial partition of `interval`: breaks at interior jump
/// points, then equal panels per segment no wider than
/// min(max_width, pi / max frequency).
std::vector<Interval> panelize(Interval interval, const OscillationSpec& osc,
                               double max_width = std::numeric_limits<double>::infinity());

/// Globally adaptive 7/15 Gauss-Kronrod quadrature over a finite interval.
/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below `tol`. Panel contributions are combined with
/// compensated summation in left-to-right order.
QuadResult integrate_finite(const Integrand& integrand, Interval interval,
                            const OscillationSpec& osc, double tol, const Options& options = {});

enum class TailWeight { abs_over_t };

/// Lower limit of the analytic remainder in integrate_tail for a given T.
double default_envelope_start(double T) noexcept;

/// Integral of |f(t)/t| over |t| > T. The range T <= |t| <= T_env is done
/// numerically in s = 1/t; beyond T_env the envelope tail form is used, added
/// to the value when exact and carried in the error estimate otherwise.
QuadResult integrate_tail(const corpus::TestFunction& fn, double T, TailWeight weight, double tol);

}  // namespace trigsum::quad
