#pragma once

// Theorem-level experiments: uniform sweeps of D(x, h) over an x window and
// pointwise checks at a convergence point of the partial integrals.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigsum/corpus.hpp"

namespace trigsum::harness {

// Verdict thresholds.
inline constexpr double kDecayRatio = 0.5;       // final < ratio * first
inline constexpr double kStabilityFactor = 10.0;  // no-limit when stability > factor * budget
inline constexpr double kClassifyTmin = 1.0;
inline constexpr double kClassifyTmax = 1e4;
inline constexpr int kClassifyPoints = 40;

enum class Verdict { converging, not_converging, inconclusive, no_limit_detected };

std::string_view to_string(Verdict v) noexcept;

struct SweepReport {
  std::string fn_name;
  std::vector<double> x_grid;
  std::vector<double> h_seq;
  /// D[k][j] = D(x_grid[j], h_seq[k]); NaN where the cell failed.
  std::vector<std::vector<std::complex<double>>> D;
  std::vector<std::vector<double>> budget;
  std::vector<double> sup_abs_D;   // per h
  std::vector<double> sup_budget;  // per h, max cell budget over x
  Verdict verdict = Verdict::inconclusive;
  ConditionClass classification = ConditionClass::bounded;
  bool hypothesis_violation = false;
  double tol = 0.0;
  std::vector<std::string> notes;
};

struct ConvergenceReport {
  std::string fn_name;
  double x0 = 0.0;
  std::complex<double> ell_hat{};
  double stability = 0.0;
  double extrapolation_budget = 0.0;
  std::vector<double> T_seq;
  std::vector<std::complex<double>> I_values;
  std::vector<double> I_error;  // quadrature estimates
  std::vector<double> h_seq;
  std::vector<std::complex<double>> mean_values;
  std::vector<double> mean_residual;  // |mean - ell_hat|
  std::vector<double> abs_D;          // |D(x0, h)|
  std::vector<double> D_budget;
  Verdict verdict = Verdict::inconclusive;
  ConditionClass classification = ConditionClass::bounded;
  bool hypothesis_violation = false;
  double tol = 0.0;
  std::vector<std::string> notes;
};

struct Extrapolation {
  std::complex<double> ell_hat{};
  double stability = 0.0;
  bool no_limit = false;
};

/// One stage of pair averaging a_k = (v_k + v_{k+1})/2. ell_hat is the mean
/// of the last two a_k and stability the spread (max - min modulus distance)
/// of the last three. Flags no-limit when stability > 10 budget and the raw
/// values drift monotonically in real or imaginary part.
Extrapolation extrapolate_limit(std::span<const double> T_seq,
                                std::span<const std::complex<double>> values, double budget);

/// 1e4 + k pi/|x0| (k = 0..7) so consecutive samples sit half a period of the
/// I_T oscillation apart; 1e3 * 2^k when x0 = 0.
std::vector<double> default_tauberian_T_seq(double x0);

/// Cells are evaluated concurrently; the report is assembled in grid order.
SweepReport abelian_sweep(const corpus::TestFunction& fn, std::span<const double> x_grid,
                          std::span<const double> h_seq, double tol);

ConvergenceReport tauberian_check(const corpus::TestFunction& fn, double x0,
                                  std::span<const double> T_seq, std::span<const double> h_seq,
                                  double tol);

}  // namespace trigsum::harness
