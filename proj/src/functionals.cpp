#include "trigsum/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "trigsum/errors.hpp"
#include "trigsum/quad.hpp"

namespace trigsum::functionals {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_T(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidArgument(fmt::format("T must be positive and finite, got {}", T));
  }
}

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidArgument(fmt::format("tolerance must be positive, got {}", tol));
  }
}

void check_grid(std::span<const double> grid) {
  if (grid.size() < 3) throw GridTooSmall("T grid needs at least 3 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw InvalidArgument(fmt::format("T grid values must be positive, got {}", grid[i]));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidArgument("T grid must be strictly increasing");
    }
  }
  if (grid.back() < 1e3 * grid.front() * (1.0 - 1e-12)) {
    throw GridTooSmall(fmt::format("T grid [{}, {}] spans fewer than three decades",
                                   grid.front(), grid.back()));
  }
}

// Largest index whose T lies at least one decade below the last grid point.
std::size_t decade_reference(std::span<const double> grid) {
  const double target = grid.back() / 10.0 * (1.0 + 1e-12);
  std::size_t ref = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= target) ref = i;
  }
  return ref;
}

bool nonincreasing_from(std::span<const double> values, std::size_t from, double slack) {
  for (std::size_t i = from; i + 1 < values.size(); ++i) {
    if (values[i + 1] > values[i] + slack) return false;
  }
  return true;
}

// Values over the top decade decay: nonincreasing and either below `ratio`
// times the reference value or already negligible.
bool decays(std::span<const double> grid, std::span<const double> values, double ratio,
            double tol) {
  const std::size_t ref = decade_reference(grid);
  const double last = values.back();
  return nonincreasing_from(values, ref, 2.0 * tol) &&
         (last < ratio * values[ref] || last <= tol);
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

double weighted_mass(const corpus::TestFunction& fn, double T, double tol) {
  check_T(T);
  check_tol(tol);
  double reach = T;
  if (fn.support_radius) {
    reach = std::min(T, *fn.support_radius);
    if (reach == 0.0) return 0.0;
  }
  quad::Integrand integrand = [&fn](std::span<const double> t, std::span<double> re,
                                    std::span<double> /*im*/) {
    for (std::size_t i = 0; i < t.size(); ++i) re[i] = std::abs(t[i] * fn(t[i]));
  };
  quad::OscillationSpec osc;
  osc.jump_points = fn.breakpoints();
  osc.jump_points.push_back(0.0);
  // Dyadic panels so a narrow bump near the origin is never skipped on a wide interval.
  for (double b = 1.0; b < reach; b *= 2.0) {
    osc.jump_points.push_back(b);
    osc.jump_points.push_back(-b);
  }
  const quad::QuadResult r = quad::integrate_finite(integrand, {-reach, reach}, osc, tol * T);
  if (!r.converged) {
    throw ToleranceNotMet(fmt::format("M({}) for '{}': estimate {} exceeds {}", T, fn.name,
                                      r.abs_error_estimate, tol * T));
  }
  return r.value.real() / T;
}

double tail_functional(const corpus::TestFunction& fn, double T, double tol) {
  check_T(T);
  check_tol(tol);
  const quad::QuadResult r = quad::integrate_tail(fn, T, quad::TailWeight::abs_over_t, tol / T);
  if (std::isinf(r.value.real())) return kInf;
  if (!r.converged) {
    throw ToleranceNotMet(fmt::format("Q({}) for '{}': estimate {} exceeds {}", T, fn.name,
                                      r.abs_error_estimate * T, tol));
  }
  return T * r.value.real();
}

ConditionReport classify_conditions(const corpus::TestFunction& fn, std::span<const double> T_grid,
                                    double T1, double tol) {
  check_grid(T_grid);
  check_tol(tol);
  if (!(T1 > 0.0)) throw InvalidArgument("T1 must be positive");

  ConditionReport report;
  report.fn_name = fn.name;
  report.T_grid.assign(T_grid.begin(), T_grid.end());
  report.T1 = T1;
  report.M_values.reserve(T_grid.size());
  for (const double T : T_grid) report.M_values.push_back(weighted_mass(fn, T, tol));

  const std::size_t ref = decade_reference(T_grid);
  if (report.M_values.back() > kDivergentRatio * report.M_values[ref]) {
    report.classification = ConditionClass::divergent;
  } else if (decays(T_grid, report.M_values, kVanishingRatio, tol)) {
    report.classification = ConditionClass::vanishing;
  } else {
    report.classification = ConditionClass::bounded;
  }

  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (T_grid[i] > T1) report.B_hat = std::max(report.B_hat, report.M_values[i]);
  }
  return report;
}

LemmaReport lemma_report(const corpus::TestFunction& fn, std::span<const double> T_grid,
                         double T1, double tol) {
  const ConditionReport conditions = classify_conditions(fn, T_grid, T1, tol);

  LemmaReport report;
  report.fn_name = fn.name;
  report.T_grid = conditions.T_grid;
  report.M_values = conditions.M_values;
  report.classification = conditions.classification;
  report.B_hat = conditions.B_hat;
  report.T1 = T1;
  report.Q_values.reserve(T_grid.size());
  for (const double T : T_grid) report.Q_values.push_back(tail_functional(fn, T, tol));

  if (report.classification == ConditionClass::vanishing) {
    report.lemma2_verdict = decays(T_grid, report.Q_values, kLemma2Ratio, tol) ? Verdict::pass
                                                                                : Verdict::fail;
  }

  const double bound = kLemma3Factor * report.B_hat;
  double ratio = 0.0;
  bool within = true;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] > T1)) continue;
    const double q = report.Q_values[i];
    if (!(q <= bound + tol)) within = false;
    if (q > 0.0) ratio = std::max(ratio, bound > 0.0 ? q / bound : kInf);
  }
  report.bound_ratio = ratio;
  if (report.classification != ConditionClass::divergent) {
    report.lemma3_verdict = within ? Verdict::pass : Verdict::fail;
  }
  return report;
}

LemmaReport verify_lemma2(const corpus::TestFunction& fn, std::span<const double> T_grid,
                          double tol) {
  return lemma_report(fn, T_grid, kDefaultT1, tol);
}

LemmaReport verify_lemma3(const corpus::TestFunction& fn, double T1,
                          std::span<const double> T_grid, double tol) {
  return lemma_report(fn, T_grid, T1, tol);
}

}  // namespace trigsum::functionals
