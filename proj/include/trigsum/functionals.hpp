#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigsum/corpus.hpp"

namespace trigsum::functionals {

// Decade-ratio classification constants. The last grid value is compared
// with the value at the largest grid point at least one decade below it.
inline constexpr double kVanishingRatio = 0.8;
inline constexpr double kDivergentRatio = 2.0;
inline constexpr double kLemma2Ratio = 0.8;
inline constexpr double kLemma3Factor = 4.0;
inline constexpr double kDefaultT1 = 1.0;

struct ConditionReport {
  std::string fn_name;
  std::vector<double> T_grid;
  std::vector<double> M_values;
  ConditionClass classification = ConditionClass::bounded;
  double B_hat = 0.0;  // sup of M over grid points with T > T1
  double T1 = kDefaultT1;
};

enum class Verdict { pass, fail, not_applicable };

std::string_view to_string(Verdict v) noexcept;

struct LemmaReport {
  std::string fn_name;
  std::vector<double> T_grid;
  std::vector<double> M_values;
  std::vector<double> Q_values;  // +inf where the tail integral diverges
  ConditionClass classification = ConditionClass::bounded;
  double B_hat = 0.0;
  double T1 = kDefaultT1;
  Verdict lemma2_verdict = Verdict::not_applicable;
  Verdict lemma3_verdict = Verdict::not_applicable;
  /// max over T > T1 of Q(T) / (4 B_hat); 0 when Q vanishes there.
  double bound_ratio = 0.0;
};

/// M(T) = (1/T) * integral over |t| < T of |t f(t)|, to absolute accuracy tol.
double weighted_mass(const corpus::TestFunction& fn, double T, double tol);

/// Q(T) = T * integral over |t| > T of |f(t)/t|. +inf when that integral diverges.
double tail_functional(const corpus::TestFunction& fn, double T, double tol);

/// Grid must be strictly increasing, positive, and span at least three decades.
ConditionReport classify_conditions(const corpus::TestFunction& fn, std::span<const double> T_grid,
                                    double T1, double tol);

/// Lemma 2' check: applicable to vanishing-M functions; passes when Q is
/// nonincreasing over the top decade and drops below kLemma2Ratio times its
/// value a decade earlier (or is already below tol).
LemmaReport verify_lemma2(const corpus::TestFunction& fn, std::span<const double> T_grid,
                          double tol);

/// Lemma 3' check: applicable unless divergent-M; passes when
/// Q(T) <= 4 B_hat + tol at every grid T > T1.
LemmaReport verify_lemma3(const corpus::TestFunction& fn, double T1,
                          std::span<const double> T_grid, double tol);

/// Both verdicts from one pass over the grid.
LemmaReport lemma_report(const corpus::TestFunction& fn, std::span<const double> T_grid,
                         double T1, double tol);

}  // namespace trigsum::functionals
