#include "trigsum/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include <fmt/format.h>

#include "trigsum/errors.hpp"
#include "trigsum/simd/kernels.hpp"

namespace trigsum::quad {
namespace {

using simd::kNodes;

constexpr std::size_t kBatchPanels = 128;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxInitialPanels = std::size_t{1} << 26;

struct Panel {
  double lo;
  double hi;
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;
  double resabs = 0.0;
};

// Evaluates batches of panels through the dispatched kernels. Buffers are
// reused between calls.
class BatchEvaluator {
 public:
  BatchEvaluator(const Integrand& integrand, const simd::KernelTable& kernels)
      : integrand_(integrand), kernels_(kernels) {}

  void evaluate(std::span<Panel> panels) {
    for (std::size_t start = 0; start < panels.size(); start += kBatchPanels) {
      const std::size_t count = std::min(kBatchPanels, panels.size() - start);
      evaluate_batch(panels.subspan(start, count));
    }
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  void evaluate_batch(std::span<Panel> panels) {
    const std::size_t p_count = panels.size();
    const std::size_t n = p_count * kNodes;
    centers_.resize(p_count);
    half_widths_.resize(p_count);
    for (std::size_t p = 0; p < p_count; ++p) {
      centers_[p] = 0.5 * (panels[p].lo + panels[p].hi);
      half_widths_[p] = 0.5 * (panels[p].hi - panels[p].lo);
    }
    nodes_.resize(n);
    re_.assign(n, 0.0);
    im_.assign(n, 0.0);
    kernels_.map_nodes(centers_, half_widths_, nodes_);
    integrand_(nodes_, re_, im_);
    evaluations_ += n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(re_[i]) || !std::isfinite(im_[i])) throw NonFiniteSample(nodes_[i]);
    }
    value_re_.resize(p_count);
    value_im_.resize(p_count);
    error_.resize(p_count);
    resabs_.resize(p_count);
    kernels_.gk_reduce(half_widths_, re_, im_,
                       simd::GkOutput{value_re_, value_im_, error_, resabs_});
    for (std::size_t p = 0; p < p_count; ++p) {
      panels[p].re = value_re_[p];
      panels[p].im = value_im_[p];
      panels[p].err = error_[p];
      panels[p].resabs = resabs_[p];
    }
  }

  const Integrand& integrand_;
  const simd::KernelTable& kernels_;
  std::size_t evaluations_ = 0;
  std::vector<double> centers_, half_widths_, nodes_, re_, im_;
  std::vector<double> value_re_, value_im_, error_, resabs_;
};

bool at_roundoff_floor(const Panel& p) noexcept {
  return p.err <= 50.0 * kEps * p.resabs * (1.0 + 1e-9);
}

void check_frequencies(const OscillationSpec& osc) {
  for (const double f : osc.frequencies) {
    if (!std::isfinite(f) || f < 0.0) {
      throw InvalidArgument(fmt::format("frequency {} must be finite and nonnegative", f));
    }
  }
}

}  // namespace

double OscillationSpec::max_frequency() const noexcept {
  double m = 0.0;
  for (const double f : frequencies) m = std::max(m, f);
  return m;
}

std::vector<Interval> panelize(Interval interval, const OscillationSpec& osc, double max_width) {
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi) || !(interval.lo < interval.hi)) {
    throw InvalidArgument(
        fmt::format("invalid interval [{}, {}]", interval.lo, interval.hi));
  }
  check_frequencies(osc);

  std::vector<double> breaks{interval.lo};
  std::vector<double> jumps = osc.jump_points;
  std::sort(jumps.begin(), jumps.end());
  for (const double j : jumps) {
    if (j > interval.lo && j < interval.hi && j != breaks.back()) breaks.push_back(j);
  }
  breaks.push_back(interval.hi);

  double width = max_width;
  const double f_max = osc.max_frequency();
  if (f_max > 0.0) width = std::min(width, std::numbers::pi / f_max);

  std::vector<Interval> panels;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    std::size_t n = 1;
    if (std::isfinite(width)) {
      const double count = std::ceil((b - a) / width);
      if (count > static_cast<double>(kMaxInitialPanels)) {
        throw InvalidArgument(fmt::format(
            "oscillation over [{}, {}] needs {:.3g} panels (limit {})", a, b, count,
            kMaxInitialPanels));
      }
      n = std::max<std::size_t>(1, static_cast<std::size_t>(count));
      if ((b - a) / static_cast<double>(n) > width) ++n;
    }
    const double len = b - a;
    for (std::size_t k = 0; k < n; ++k) {
      const double lo = k == 0 ? a : a + len * static_cast<double>(k) / static_cast<double>(n);
      const double hi =
          k + 1 == n ? b : a + len * static_cast<double>(k + 1) / static_cast<double>(n);
      panels.push_back({lo, hi});
    }
  }
  return panels;
}

QuadResult integrate_finite(const Integrand& integrand, Interval interval,
                            const OscillationSpec& osc, double tol, const Options& options) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidArgument(fmt::format("tolerance must be positive, got {}", tol));
  }
  const std::vector<Interval> initial = panelize(interval, osc, options.max_width);
  if (initial.size() > options.max_panels) {
    throw InvalidArgument(fmt::format("initial partition has {} panels, limit is {}",
                                      initial.size(), options.max_panels));
  }

  const simd::KernelTable& kernels = simd::kernels();
  BatchEvaluator evaluator(integrand, kernels);

  std::vector<Panel> panels;
  panels.reserve(initial.size());
  for (const Interval& iv : initial) panels.push_back({iv.lo, iv.hi});
  evaluator.evaluate(panels);

  // Largest error first; ties broken by index so the refinement order is reproducible.
  using Entry = std::pair<double, std::size_t>;
  auto lower_priority = [](const Entry& a, const Entry& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);

  double total_err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    total_err += panels[i].err;
    heap.push({panels[i].err, i});
  }

  bool converged = true;
  std::array<Panel, 2> children{};
  while (true) {
    if (total_err <= tol) {
      total_err = 0.0;
      for (const Panel& p : panels) total_err += p.err;
      if (total_err <= tol) break;
    }
    if (heap.empty() || panels.size() >= options.max_panels) {
      converged = false;
      break;
    }
    const std::size_t i = heap.top().second;
    heap.pop();
    const Panel parent = panels[i];
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(parent.lo < mid && mid < parent.hi) || at_roundoff_floor(parent)) continue;

    children[0] = Panel{parent.lo, mid};
    children[1] = Panel{mid, parent.hi};
    evaluator.evaluate(children);
    total_err += children[0].err + children[1].err - parent.err;
    panels[i] = children[0];
    panels.push_back(children[1]);
    heap.push({children[0].err, i});
    heap.push({children[1].err, panels.size() - 1});
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  std::vector<double> re(panels.size()), im(panels.size()), err(panels.size());
  for (std::size_t i = 0; i < panels.size(); ++i) {
    re[i] = panels[i].re;
    im[i] = panels[i].im;
    err[i] = panels[i].err;
  }

  QuadResult result;
  result.value = {kernels.compensated_sum(re), kernels.compensated_sum(im)};
  result.abs_error_estimate = kernels.compensated_sum(err);
  result.panels_used = panels.size();
  result.evaluations = evaluator.evaluations();
  result.converged = converged && result.abs_error_estimate <= tol;
  return result;
}

double default_envelope_start(double T) noexcept { return std::max(1e4, 10.0 * T); }

QuadResult integrate_tail(const corpus::TestFunction& fn, double T, TailWeight /*weight*/,
                          double tol) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidArgument(fmt::format("tail start must be positive and finite, got {}", T));
  }
  const std::vector<double> fn_breaks = fn.breakpoints();

  if (fn.support_radius) {
    const double radius = *fn.support_radius;
    if (T >= radius) return QuadResult{};
    Integrand direct = [&fn](std::span<const double> t, std::span<double> re,
                             std::span<double> /*im*/) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        re[i] = (std::abs(fn(t[i])) + std::abs(fn(-t[i]))) / t[i];
      }
    };
    OscillationSpec osc;
    for (const double p : fn_breaks) osc.jump_points.push_back(std::fabs(p));
    return integrate_finite(direct, {T, radius}, osc, tol);
  }

  if (!fn.envelope) {
    throw EnvelopeUnavailable(fmt::format("'{}' has unbounded support and no envelope", fn.name));
  }
  const corpus::Envelope& env = *fn.envelope;
  if (env.tail_divergent) {
    QuadResult r;
    r.value = std::numeric_limits<double>::infinity();
    return r;
  }
  if (!env.has_tail()) {
    throw EnvelopeUnavailable(fmt::format("'{}' has no closed-form envelope tail", fn.name));
  }

  // Two sides, each bracketed by [lower, upper]: value takes the midpoint,
  // the half-width goes into the estimate.
  auto remainder = [&env](double start) {
    const double upper = env.tail_upper(start);
    const double lower = env.tail_lower ? env.tail_lower(start) : 0.0;
    return std::pair{upper + lower, upper - lower};
  };
  double t_env = std::max(default_envelope_start(T), env.from);
  auto [rem_value, rem_err] = remainder(t_env);
  while (rem_err > 0.25 * tol && t_env < 1e300) {
    t_env *= 10.0;
    std::tie(rem_value, rem_err) = remainder(t_env);
  }

  Integrand reciprocal = [&fn](std::span<const double> s, std::span<double> re,
                               std::span<double> /*im*/) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double t = 1.0 / s[i];
      re[i] = (std::abs(fn(t)) + std::abs(fn(-t))) / s[i];
    }
  };
  OscillationSpec osc;
  for (const double p : fn_breaks) {
    const double a = std::fabs(p);
    if (a > T && a < t_env) osc.jump_points.push_back(1.0 / a);
  }
  QuadResult r = integrate_finite(reciprocal, {1.0 / t_env, 1.0 / T}, osc, 0.75 * tol);
  r.value += rem_value;
  r.abs_error_estimate += rem_err;
  r.converged = r.converged && r.abs_error_estimate <= tol;
  return r;
}

}  // namespace trigsum::quad
