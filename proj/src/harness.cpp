#include "trigsum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "trigsum/errors.hpp"
#include "trigsum/functionals.hpp"
#include "trigsum/grid.hpp"
#include "trigsum/summability.hpp"

namespace trigsum::harness {
namespace {

using cplx = std::complex<double>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidArgument(fmt::format("tolerance must be positive, got {}", tol));
  }
}

void check_h_seq(std::span<const double> h_seq) {
  if (h_seq.size() < 3) throw GridTooSmall("h sequence needs at least 3 values");
  for (std::size_t i = 0; i < h_seq.size(); ++i) {
    if (!(h_seq[i] > 0.0) || !std::isfinite(h_seq[i])) {
      throw InvalidArgument(fmt::format("h values must be positive, got {}", h_seq[i]));
    }
    if (i > 0 && !(h_seq[i] < h_seq[i - 1])) {
      throw InvalidArgument("h sequence must be strictly decreasing");
    }
  }
  if (h_seq.back() > 1e-2 * h_seq.front() * (1.0 + 1e-12)) {
    throw GridTooSmall(fmt::format("h sequence [{}, {}] spans fewer than two decades",
                                   h_seq.front(), h_seq.back()));
  }
}

ConditionClass classify(const corpus::TestFunction& fn, double tol) {
  const std::vector<double> T_grid = grid::geometric(kClassifyTmin, kClassifyTmax, kClassifyPoints);
  return functionals::classify_conditions(fn, T_grid, functionals::kDefaultT1, tol).classification;
}

std::string threshold_note() {
  return fmt::format(
      "verdict rule: suprema nonincreasing along h within cell budgets and final < {} x first "
      "(or final within budget); thresholds are engineering choices",
      kDecayRatio);
}

// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::converging:
      return "converging";
    case Verdict::not_converging:
      return "not-converging";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::no_limit_detected:
      return "no-limit-detected";
  }
  return "unknown";
}

Extrapolation extrapolate_limit(std::span<const double> T_seq, std::span<const cplx> values,
                                double budget) {
  if (values.size() < 4 || T_seq.size() != values.size()) {
    throw InvalidArgument("extrapolation needs at least 4 samples with matching T values");
  }
  for (std::size_t i = 1; i < T_seq.size(); ++i) {
    if (!(T_seq[i] > T_seq[i - 1])) throw InvalidArgument("T sequence must be increasing");
  }
  std::vector<cplx> avg(values.size() - 1);
  for (std::size_t k = 0; k + 1 < values.size(); ++k) avg[k] = 0.5 * (values[k] + values[k + 1]);

  Extrapolation out;
  const std::size_t m = avg.size();
  out.ell_hat = 0.5 * (avg[m - 2] + avg[m - 1]);
  for (std::size_t i = m - 3; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out.stability = std::max(out.stability, std::abs(avg[i] - avg[j]));
    }
  }

  auto monotone = [&](auto part) {
    bool up = true;
    bool down = true;
    for (std::size_t k = 1; k < values.size(); ++k) {
      const double d = part(values[k]) - part(values[k - 1]);
      if (!(d > 0.0)) up = false;
      if (!(d < 0.0)) down = false;
    }
    return up || down;
  };
  const bool drifts = monotone([](cplx v) { return v.real(); }) ||
                      monotone([](cplx v) { return v.imag(); });
  out.no_limit = out.stability > kStabilityFactor * budget && drifts;
  return out;
}

std::vector<double> default_tauberian_T_seq(double x0) {
  std::vector<double> out;
  for (int k = 0; k < 8; ++k) {
    out.push_back(x0 != 0.0 ? 1e4 + k * std::numbers::pi / std::fabs(x0) : 1e3 * std::ldexp(1.0, k));
  }
  return out;
}

SweepReport abelian_sweep(const corpus::TestFunction& fn, std::span<const double> x_grid,
                          std::span<const double> h_seq, double tol) {
  check_tol(tol);
  check_h_seq(h_seq);
  if (x_grid.empty()) throw InvalidArgument("x grid is empty");
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    if (!std::isfinite(x_grid[j])) throw InvalidArgument("x grid values must be finite");
    if (j > 0 && !(x_grid[j] > x_grid[j - 1])) {
      throw InvalidArgument("x grid must be strictly increasing");
    }
  }

  SweepReport report;
  report.fn_name = fn.name;
  report.x_grid.assign(x_grid.begin(), x_grid.end());
  report.h_seq.assign(h_seq.begin(), h_seq.end());
  report.tol = tol;
  report.classification = classify(fn, tol);
  if (report.classification != ConditionClass::vanishing) {
    report.hypothesis_violation = true;
    report.notes.push_back(fmt::format(
        "hypothesis violation: '{}' is {}, the uniform theorem requires vanishing-M", fn.name,
        to_string(report.classification)));
  }
  report.notes.push_back(fmt::format("uniformity proxy: supremum over {} points on [{}, {}]",
                                     x_grid.size(), x_grid.front(), x_grid.back()));

  const std::size_t nx = x_grid.size();
  const std::size_t nh = h_seq.size();
  report.D.assign(nh, std::vector<cplx>(nx));
  report.budget.assign(nh, std::vector<double>(nx));
  std::vector<std::optional<std::string>> failures(nx * nh);

  parallel_for(nx * nh, [&](std::size_t cell) {
    const std::size_t k = cell / nx;
    const std::size_t j = cell % nx;
    try {
      const summability::DiffResult d =
          summability::mean_minus_partial(fn, x_grid[j], h_seq[k], tol);
      report.D[k][j] = d.value;
      report.budget[k][j] = d.budget;
    } catch (const std::exception& e) {
      report.D[k][j] = {kNaN, kNaN};
      report.budget[k][j] = kNaN;
      failures[cell] = fmt::format("cell x = {}, h = {}: {}", x_grid[j], h_seq[k], e.what());
    }
  });

  bool failed = false;
  for (const auto& f : failures) {
    if (f) {
      report.notes.push_back(*f);
      failed = true;
    }
  }

  report.sup_abs_D.resize(nh);
  report.sup_budget.resize(nh);
  for (std::size_t k = 0; k < nh; ++k) {
    double sup = 0.0;
    double bud = 0.0;
    for (std::size_t j = 0; j < nx; ++j) {
      const double a = std::abs(report.D[k][j]);
      sup = std::isnan(a) || std::isnan(sup) ? kNaN : std::max(sup, a);
      bud = std::isnan(report.budget[k][j]) || std::isnan(bud) ? kNaN
                                                              : std::max(bud, report.budget[k][j]);
    }
    report.sup_abs_D[k] = sup;
    report.sup_budget[k] = bud;
  }

  report.notes.push_back(threshold_note());
  if (failed) {
    report.verdict = Verdict::inconclusive;
    return report;
  }
  bool nonincreasing = true;
  for (std::size_t k = 1; k < nh; ++k) {
    const double slack = report.sup_budget[k] + report.sup_budget[k - 1];
    if (report.sup_abs_D[k] > report.sup_abs_D[k - 1] + slack) nonincreasing = false;
  }
  const double first = report.sup_abs_D.front();
  const double last = report.sup_abs_D.back();
  const bool small = last < kDecayRatio * first || last <= report.sup_budget.back();
  report.verdict = nonincreasing && small ? Verdict::converging : Verdict::not_converging;
  return report;
}

ConvergenceReport tauberian_check(const corpus::TestFunction& fn, double x0,
                                  std::span<const double> T_seq, std::span<const double> h_seq,
                                  double tol) {
  check_tol(tol);
  check_h_seq(h_seq);
  if (!std::isfinite(x0)) throw InvalidArgument("x0 must be finite");

  ConvergenceReport report;
  report.fn_name = fn.name;
  report.x0 = x0;
  report.T_seq.assign(T_seq.begin(), T_seq.end());
  report.h_seq.assign(h_seq.begin(), h_seq.end());
  report.tol = tol;
  report.classification = classify(fn, tol);
  if (report.classification == ConditionClass::divergent) {
    report.hypothesis_violation = true;
    report.notes.push_back(fmt::format(
        "hypothesis violation: '{}' is divergent-M, the pointwise theorem requires bounded M",
        fn.name));
  }
  if (fn.limit_exists_at && !fn.limit_exists_at(x0)) {
    report.notes.push_back(
        fmt::format("catalogue metadata: partial integrals of '{}' do not converge at x0 = {}",
                    fn.name, x0));
  }

  double extrap_budget = tol;
  report.I_values.reserve(T_seq.size());
  for (const double T : T_seq) {
    const quad::QuadResult r = summability::partial_integral(fn, x0, T, tol);
    report.I_values.push_back(r.value);
    report.I_error.push_back(r.abs_error_estimate);
    extrap_budget = std::max(extrap_budget, r.abs_error_estimate);
  }
  report.extrapolation_budget = extrap_budget;
  const Extrapolation ex = extrapolate_limit(T_seq, report.I_values, extrap_budget);
  report.ell_hat = ex.ell_hat;
  report.stability = ex.stability;
  if (!ex.no_limit && ex.stability > kStabilityFactor * extrap_budget) {
    report.notes.push_back(fmt::format(
        "extrapolation unstable (spread {:.3g}) without monotone drift; ell_hat is approximate",
        ex.stability));
  }

  bool failed = false;
  for (const double h : h_seq) {
    try {
      const summability::DiffResult d = summability::mean_minus_partial(fn, x0, h, tol);
      report.mean_values.push_back(d.mean.value);
      report.mean_residual.push_back(std::abs(d.mean.value - report.ell_hat));
      report.abs_D.push_back(std::abs(d.value));
      report.D_budget.push_back(d.budget);
    } catch (const std::exception& e) {
      report.mean_values.push_back({kNaN, kNaN});
      report.mean_residual.push_back(kNaN);
      report.abs_D.push_back(kNaN);
      report.D_budget.push_back(kNaN);
      report.notes.push_back(fmt::format("h = {}: {}", h, e.what()));
      failed = true;
    }
  }

  report.notes.push_back(
      fmt::format("verdict rule: final |D| is the smallest along h within budgets and final < {} "
                  "x first (or final within budget); thresholds are engineering choices",
                  kDecayRatio));
  if (ex.no_limit) {
    report.verdict = Verdict::no_limit_detected;
    return report;
  }
  if (failed) {
    report.verdict = Verdict::inconclusive;
    return report;
  }
  const std::size_t n = report.abs_D.size();
  const double last = report.abs_D.back();
  const double last_budget = report.D_budget.back();
  bool minimal = true;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (last > report.abs_D[k] + report.D_budget[k] + last_budget) minimal = false;
  }
  const bool small = last < kDecayRatio * report.abs_D.front() || last <= last_budget;
  report.verdict = minimal && small ? Verdict::converging : Verdict::not_converging;
  return report;
}

}  // namespace trigsum::harness
