#include "trigsum/summability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "trigsum/errors.hpp"
#include "trigsum/simd/kernels.hpp"

namespace trigsum::summability {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxTruncation = 1e15;
constexpr int kBisections = 48;

quad::Options wide_options() {
  quad::Options o;
  o.max_panels = std::size_t{1} << 22;
  return o;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(fmt::format("{} must be positive and finite, got {}", what, v));
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(fmt::format("{} must be finite, got {}", what, v));
}

// f(t) e^{itx} sinc(th); h == 0 drops the kernel.
quad::Integrand modulated(const corpus::TestFunction& fn, double x, double h) {
  return [&fn, x, h](std::span<const double> t, std::span<double> re, std::span<double> im) {
    fn.eval(t, re, im);
    simd::kernels().modulate(t, re, im, x, h);
  };
}

const corpus::Envelope& tail_envelope(const corpus::TestFunction& fn) {
  if (!fn.envelope || fn.envelope->tail_divergent || !fn.envelope->has_tail()) {
    throw TruncationUnachievable(fmt::format(
        "'{}' has no integrable envelope tail; the mean is not a Lebesgue integral", fn.name));
  }
  return *fn.envelope;
}

}  // namespace

void EvalPoint::validate() const {
  check_finite(x, "x");
  check_positive(h, "h");
  check_positive(T, "T");
}

std::string_view to_string(TruncationMethod m) noexcept {
  switch (m) {
    case TruncationMethod::support:
      return "support";
    case TruncationMethod::absolute:
      return "absolute";
    case TruncationMethod::oscillatory:
      return "oscillatory";
  }
  return "unknown";
}

quad::QuadResult partial_integral(const corpus::TestFunction& fn, double x, double T, double tol) {
  check_finite(x, "x");
  check_positive(T, "T");
  double reach = T;
  if (fn.support_radius) {
    reach = std::min(T, *fn.support_radius);
    if (reach == 0.0) return quad::QuadResult{};
  }
  quad::OscillationSpec osc{{std::fabs(x)}, fn.breakpoints()};
  return quad::integrate_finite(modulated(fn, x, 0.0), {-reach, reach}, osc, tol, wide_options());
}

double absolute_tail_bound(const corpus::TestFunction& fn, double h, double T) {
  const corpus::Envelope& env = tail_envelope(fn);
  return 2.0 * env.tail_upper(std::max(T, env.from)) / h;
}

double oscillatory_tail_bound(const corpus::TestFunction& fn, double x, double h, double T) {
  if (!fn.envelope || !fn.envelope->monotone || !fn.envelope->bound) return kInf;
  const corpus::Envelope& env = *fn.envelope;
  if (T < env.from || !(T > 0.0)) return kInf;
  const double g = env.bound(T) / (T * h);
  const double w_plus = std::fabs(x + h);
  const double w_minus = std::fabs(x - h);
  double inv = 0.0;
  bool zero_frequency = false;
  for (const double w : {w_plus, w_minus}) {
    if (w > 0.0) {
      inv += 1.0 / w;
    } else {
      zero_frequency = true;
    }
  }
  if (fn.even_real) {
    // Both half-lines combine to the integral of g(t) [sin(t(x+h)) - sin(t(x-h))].
    return 2.0 * g * inv;
  }
  double bound = 4.0 * g * inv;
  if (zero_frequency) {
    if (!env.has_tail() || env.tail_divergent) return kInf;
    bound += env.tail_upper(T) / h;
  }
  return bound;
}

Truncation choose_truncation(const corpus::TestFunction& fn, double h, double eps_tail,
                             std::optional<double> x) {
  check_positive(h, "h");
  check_positive(eps_tail, "eps_tail");
  if (x) check_finite(*x, "x");
  if (fn.support_radius) return {*fn.support_radius, 0.0, TruncationMethod::support};

  const corpus::Envelope& env = tail_envelope(fn);
  auto certify = [&](double T) {
    Truncation tr{T, absolute_tail_bound(fn, h, T), TruncationMethod::absolute};
    if (x) {
      const double osc = oscillatory_tail_bound(fn, *x, h, T);
      if (osc < tr.tail_bound) {
        tr.tail_bound = osc;
        tr.method = TruncationMethod::oscillatory;
      }
    }
    return tr;
  };

  double hi = std::max(1.0, env.from);
  Truncation best = certify(hi);
  if (best.tail_bound <= eps_tail) return best;
  double lo = hi;
  while (best.tail_bound > eps_tail) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxTruncation) {
      throw TruncationUnachievable(fmt::format(
          "no T_max <= {:.3g} bounds the tail of '{}' by {} at h = {}", kMaxTruncation, fn.name,
          eps_tail, h));
    }
    best = certify(hi);
  }
  for (int i = 0; i < kBisections; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    const Truncation trial = certify(mid);
    if (trial.tail_bound <= eps_tail) {
      hi = mid;
      best = trial;
    } else {
      lo = mid;
    }
  }
  return best;
}

MeanResult truncated_mean(const corpus::TestFunction& fn, double x, double h, double T_max,
                          double tol) {
  check_finite(x, "x");
  check_positive(h, "h");
  MeanResult result;
  result.truncation_T = T_max;
  if (T_max == 0.0) return result;
  check_positive(T_max, "T_max");
  quad::OscillationSpec osc{{std::fabs(x), h, std::fabs(x + h), std::fabs(x - h)},
                            fn.breakpoints()};
  result.quad =
      quad::integrate_finite(modulated(fn, x, h), {-T_max, T_max}, osc, tol, wide_options());
  result.value = result.quad.value;
  return result;
}

MeanResult lebesgue_mean(const corpus::TestFunction& fn, double x, double h, double eps_tail,
                         double tol) {
  check_finite(x, "x");
  const Truncation tr = choose_truncation(fn, h, eps_tail, x);
  MeanResult result = truncated_mean(fn, x, h, tr.T_max, tol);
  result.tail_bound = tr.tail_bound;
  return result;
}

MeanResult lebesgue_mean(const corpus::TestFunction& fn, double x, double h, double tol) {
  return lebesgue_mean(fn, x, h, 0.5 * tol, 0.5 * tol);
}

DiffResult mean_minus_partial(const corpus::TestFunction& fn, double x, double h,
                              double eps_tail, double tol) {
  DiffResult d;
  d.mean = lebesgue_mean(fn, x, h, eps_tail, tol);
  d.partial = partial_integral(fn, x, 1.0 / h, tol);
  d.value = d.mean.value - d.partial.value;
  d.budget = d.mean.budget() + d.partial.abs_error_estimate;
  return d;
}

DiffResult mean_minus_partial(const corpus::TestFunction& fn, double x, double h, double tol) {
  return mean_minus_partial(fn, x, h, 0.5 * tol, 0.5 * tol);
}

}  // namespace trigsum::summability
