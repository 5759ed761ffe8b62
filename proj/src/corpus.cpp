#include "trigsum/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trigsum/errors.hpp"

namespace trigsum {

std::string_view to_string(ConditionClass c) noexcept {
  switch (c) {
    case ConditionClass::vanishing:
      return "vanishing-M";
    case ConditionClass::bounded:
      return "bounded-M";
    case ConditionClass::divergent:
      return "divergent-M";
  }
  return "unknown";
}

namespace corpus {
namespace {

using cplx = std::complex<double>;

// E1(z) for z > 0.
double exp_integral_e1(double z) { return -std::expint(-z); }

// 2 sin(xT)/x, continued to 2T at x = 0.
double symmetric_sine(double x, double T) {
  if (x == 0.0) return 2.0 * T;
  return 2.0 * std::sin(x * T) / x;
}

bool always(double) { return true; }

TestFunction make_box() {
  TestFunction fn;
  fn.name = "box";
  fn.description = "indicator of [-1,1]";
  fn.f = [](double t) -> cplx {
    const double a = std::fabs(t);
    if (a < 1.0) return 1.0;
    if (a == 1.0) return 0.5;
    return 0.0;
  };
  fn.support_radius = 1.0;
  fn.envelope = Envelope{
      .from = 0.0,
      .bound = [](double u) { return u <= 1.0 ? 1.0 : 0.0; },
      .tail_upper = [](double T) { return T < 1.0 ? -std::log(T) : 0.0; },
      .tail_lower = [](double T) { return T < 1.0 ? -std::log(T) : 0.0; },
      .monotone = true,
  };
  fn.globally_integrable = true;
  fn.condition_class = ConditionClass::vanishing;
  fn.jump_points = {-1.0, 1.0};
  fn.even_real = true;
  fn.limit_exists_at = always;
  fn.closed_forms.partial = {[](double x, double T) -> cplx {
                               return symmetric_sine(x, std::min(T, 1.0));
                             },
                             "all x, T > 0"};
  fn.closed_forms.mass = {[](double T) { return T >= 1.0 ? 1.0 / T : T; }, "T > 0"};
  fn.closed_forms.tail = {[](double T) { return T >= 1.0 ? 0.0 : -2.0 * T * std::log(T); },
                          "T > 0"};
  fn.closed_forms.transform = {[](double x) -> cplx { return symmetric_sine(x, 1.0); }, "all x"};
  return fn;
}

TestFunction make_gaussian() {
  TestFunction fn;
  fn.name = "gaussian";
  fn.description = "exp(-t^2)";
  fn.f = [](double t) -> cplx { return std::exp(-t * t); };
  fn.envelope = Envelope{
      .from = 0.0,
      .bound = [](double u) { return std::exp(-u * u); },
      .tail_upper = [](double T) { return 0.5 * exp_integral_e1(T * T); },
      .tail_lower = [](double T) { return 0.5 * exp_integral_e1(T * T); },
      .monotone = true,
  };
  fn.globally_integrable = true;
  fn.condition_class = ConditionClass::vanishing;
  fn.even_real = true;
  fn.limit_exists_at = always;
  fn.closed_forms.mass = {[](double T) { return -std::expm1(-T * T) / T; }, "T > 0"};
  fn.closed_forms.tail = {[](double T) { return T * exp_integral_e1(T * T); }, "T > 0"};
  fn.closed_forms.transform = {
      [](double x) -> cplx { return std::sqrt(std::numbers::pi) * std::exp(-0.25 * x * x); },
      "all x"};
  return fn;
}

TestFunction make_exp_abs() {
  TestFunction fn;
  fn.name = "exp_abs";
  fn.description = "exp(-|t|)";
  fn.f = [](double t) -> cplx { return std::exp(-std::fabs(t)); };
  fn.envelope = Envelope{
      .from = 0.0,
      .bound = [](double u) { return std::exp(-u); },
      .tail_upper = [](double T) { return exp_integral_e1(T); },
      .tail_lower = [](double T) { return exp_integral_e1(T); },
      .monotone = true,
  };
  fn.globally_integrable = true;
  fn.condition_class = ConditionClass::vanishing;
  fn.kink_points = {0.0};
  fn.even_real = true;
  fn.limit_exists_at = always;
  fn.closed_forms.partial = {[](double x, double T) -> cplx {
                               const double decay = std::exp(-T);
                               return 2.0 *
                                      (1.0 - decay * (std::cos(T * x) - x * std::sin(T * x))) /
                                      (1.0 + x * x);
                             },
                             "all x, T > 0"};
  fn.closed_forms.mass = {[](double T) { return 2.0 * (1.0 - (1.0 + T) * std::exp(-T)) / T; },
                          "T > 0"};
  fn.closed_forms.tail = {[](double T) { return 2.0 * T * exp_integral_e1(T); }, "T > 0"};
  fn.closed_forms.transform = {[](double x) -> cplx { return 2.0 / (1.0 + x * x); }, "all x"};
  return fn;
}

TestFunction make_shifted_reciprocal() {
  TestFunction fn;
  fn.name = "shifted_reciprocal";
  fn.description = "1/(1+|t|)";
  fn.f = [](double t) -> cplx { return 1.0 / (1.0 + std::fabs(t)); };
  fn.envelope = Envelope{
      .from = 0.0,
      .bound = [](double u) { return 1.0 / (1.0 + u); },
      .tail_upper = [](double T) { return std::log1p(1.0 / T); },
      .tail_lower = [](double T) { return std::log1p(1.0 / T); },
      .monotone = true,
  };
  fn.globally_integrable = false;
  fn.condition_class = ConditionClass::bounded;
  fn.kink_points = {0.0};
  fn.even_real = true;
  fn.limit_exists_at = [](double x) { return x != 0.0; };
  fn.closed_forms.partial = {[](double x, double T) -> cplx {
                               if (x != 0.0) return std::numeric_limits<double>::quiet_NaN();
                               return 2.0 * std::log1p(T);
                             },
                             "x = 0 only"};
  fn.closed_forms.mass = {[](double T) { return 2.0 * (1.0 - std::log1p(T) / T); }, "T > 0"};
  fn.closed_forms.tail = {[](double T) { return 2.0 * T * std::log1p(1.0 / T); }, "T > 0"};
  return fn;
}

TestFunction make_log_damped() {
  TestFunction fn;
  fn.name = "log_damped";
  fn.description = "1/((1+|t|) ln(2+|t|))";
  auto f = [](double u) { return 1.0 / ((1.0 + u) * std::log(2.0 + u)); };
  fn.f = [f](double t) -> cplx { return f(std::fabs(t)); };
  // ln(2+u) >= ln(2+T) on [T, inf) turns the shifted-reciprocal tail into a bound.
  fn.envelope = Envelope{
      .from = 0.0,
      .bound = f,
      .tail_upper = [](double T) { return std::log1p(1.0 / T) / std::log(2.0 + T); },
      .tail_lower = {},
      .monotone = true,
  };
  fn.globally_integrable = false;
  fn.condition_class = ConditionClass::vanishing;
  fn.kink_points = {0.0};
  fn.even_real = true;
  fn.limit_exists_at = [](double x) { return x != 0.0; };
  return fn;
}

TestFunction make_constant_one() {
  TestFunction fn;
  fn.name = "constant_one";
  fn.description = "1";
  fn.f = [](double) -> cplx { return 1.0; };
  fn.envelope = Envelope{
      .from = 0.0,
      .bound = [](double) { return 1.0; },
      .tail_upper = {},
      .tail_lower = {},
      .tail_divergent = true,
      .monotone = true,
  };
  fn.globally_integrable = false;
  fn.condition_class = ConditionClass::divergent;
  fn.even_real = true;
  fn.limit_exists_at = [](double) { return false; };
  fn.closed_forms.partial = {[](double x, double T) -> cplx { return symmetric_sine(x, T); },
                             "all x, T > 0"};
  fn.closed_forms.mass = {[](double T) { return T; }, "T > 0"};
  return fn;
}

TestFunction make_zero() {
  TestFunction fn;
  fn.name = "zero";
  fn.description = "0";
  fn.f = [](double) -> cplx { return 0.0; };
  fn.support_radius = 0.0;
  fn.globally_integrable = true;
  fn.condition_class = ConditionClass::vanishing;
  fn.even_real = true;
  fn.limit_exists_at = always;
  fn.closed_forms.partial = {[](double, double) -> cplx { return 0.0; }, "all x, T > 0"};
  fn.closed_forms.mass = {[](double) { return 0.0; }, "T > 0"};
  fn.closed_forms.tail = {[](double) { return 0.0; }, "T > 0"};
  fn.closed_forms.transform = {[](double) -> cplx { return 0.0; }, "all x"};
  return fn;
}

const std::vector<TestFunction>& catalogue() {
  static const std::vector<TestFunction> entries = [] {
    std::vector<TestFunction> v{make_box(),         make_constant_one(),      make_exp_abs(),
                                make_gaussian(),    make_log_damped(),        make_shifted_reciprocal(),
                                make_zero()};
    std::sort(v.begin(), v.end(),
              [](const TestFunction& a, const TestFunction& b) { return a.name < b.name; });
    return v;
  }();
  return entries;
}

}  // namespace

void TestFunction::eval(std::span<const double> t, std::span<double> re,
                        std::span<double> im) const {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const cplx v = f(t[i]);
    re[i] = v.real();
    im[i] = v.imag();
  }
}

std::vector<double> TestFunction::breakpoints() const {
  std::vector<double> out = jump_points;
  out.insert(out.end(), kink_points.begin(), kink_points.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TestFunction TestFunction::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scale factor must be positive");
  TestFunction g = *this;
  g.name = name + "*" + std::to_string(c);
  g.description = std::to_string(c) + " * (" + description + ")";
  g.f = [f = f, c](double t) { return c * f(t); };
  if (g.envelope) {
    Envelope& e = *g.envelope;
    if (e.bound) e.bound = [b = e.bound, c](double u) { return c * b(u); };
    if (e.tail_upper) e.tail_upper = [b = e.tail_upper, c](double T) { return c * b(T); };
    if (e.tail_lower) e.tail_lower = [b = e.tail_lower, c](double T) { return c * b(T); };
  }
  ClosedForms& cf = g.closed_forms;
  if (cf.partial) cf.partial->eval = [p = cf.partial->eval, c](double x, double T) { return c * p(x, T); };
  if (cf.mass) cf.mass->eval = [p = cf.mass->eval, c](double T) { return c * p(T); };
  if (cf.tail) cf.tail->eval = [p = cf.tail->eval, c](double T) { return c * p(T); };
  if (cf.transform) cf.transform->eval = [p = cf.transform->eval, c](double x) { return c * p(x); };
  return g;
}

const TestFunction& get(std::string_view name) {
  for (const TestFunction& fn : catalogue()) {
    if (fn.name == name) return fn;
  }
  throw UnknownFunction(std::string(name), names());
}

std::vector<CatalogueEntry> list() {
  std::vector<CatalogueEntry> out;
  for (const TestFunction& fn : catalogue()) {
    out.push_back({fn.name, fn.description, fn.support_radius, fn.globally_integrable,
                   fn.condition_class});
  }
  return out;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const TestFunction& fn : catalogue()) out.push_back(fn.name);
  return out;
}

}  // namespace corpus
}  // namespace trigsum
