#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "si_series.hpp"
#include "trigsum/errors.hpp"
#include "trigsum/quad.hpp"
#include "trigsum/simd/kernels.hpp"
#include "trigsum/summability.hpp"

using namespace trigsum;
using trigsum::testing::si_series;

namespace {
constexpr double kTol = 1e-9;
}

TEST(SiSeries, KnownValues) {
  EXPECT_NEAR(2.0 * si_series(1.0), 1.8921661407343660299, 1e-15);
  EXPECT_NEAR(2.0 * si_series(0.1) / 0.1, 1.9988892221655390031, 1e-15);
}

TEST(PartialIntegral, Examples) {
  const auto& box = corpus::get("box");
  EXPECT_NEAR(summability::partial_integral(box, 0.0, 2.0, kTol).value.real(), 2.0, kTol);
  EXPECT_NEAR(summability::partial_integral(box, 1.0, 2.0, kTol).value.real(), 2.0 * std::sin(1.0),
              kTol);
  EXPECT_NEAR(summability::partial_integral(corpus::get("gaussian"), 0.0, 10.0, 1e-10).value.real(),
              std::sqrt(std::numbers::pi), 1e-8);
  EXPECT_EQ(summability::partial_integral(corpus::get("zero"), 3.0, 5.0, kTol).value, 0.0);
}

TEST(PartialIntegral, ClosedFormsAcrossCorpus) {
  for (const auto& name : corpus::names()) {
    const auto& fn = corpus::get(name);
    if (!fn.closed_forms.partial) continue;
    for (double x : {0.0, 0.7, 3.0}) {
      for (double T : {0.5, 4.0, 60.0}) {
        const auto expected = fn.closed_forms.partial->eval(x, T);
        if (std::isnan(expected.real())) continue;
        const auto r = summability::partial_integral(fn, x, T, kTol);
        EXPECT_NEAR(r.value.real(), expected.real(), kTol * std::max(1.0, std::abs(expected)))
            << name << " x=" << x << " T=" << T;
      }
    }
  }
}

TEST(PartialIntegral, ShiftedReciprocalFrozen) {
  // 2 [cos 1 (Ci(1+T) - Ci(1)) + sin 1 (Si(1+T) - Si(1))], mpmath.
  const auto& sr = corpus::get("shifted_reciprocal");
  EXPECT_NEAR(summability::partial_integral(sr, 1.0, 1.0, kTol).value.real(), 1.2020887705086313,
              kTol);
  EXPECT_NEAR(summability::partial_integral(sr, 1.0, 1000.0, kTol).value.real(),
              0.68840690428408348, kTol);
}

TEST(PartialIntegral, CompactSupportIndependentOfT) {
  const auto& box = corpus::get("box");
  for (double x : {-2.0, 0.0, 0.5, 9.0}) {
    const auto a = summability::partial_integral(box, x, 1.0, kTol);
    for (double T : {1.5, 10.0, 1e4}) {
      const auto b = summability::partial_integral(box, x, T, kTol);
      EXPECT_LE(std::abs(a.value - b.value), a.abs_error_estimate + b.abs_error_estimate + 1e-15);
    }
  }
}

TEST(LebesgueMean, BoxMatchesSineIntegral) {
  const auto& box = corpus::get("box");
  for (double h : {1.0, 0.1, 0.01, 1e-5}) {
    const auto r = summability::lebesgue_mean(box, 0.0, h, kTol);
    EXPECT_NEAR(r.value.real(), 2.0 * si_series(h) / h, 1e-12) << h;
    EXPECT_EQ(r.tail_bound, 0.0);
    EXPECT_EQ(r.truncation_T, 1.0);
  }
}

TEST(LebesgueMean, BoxApproachesTwoFromBelow) {
  const auto& box = corpus::get("box");
  const double g1 = 2.0 - summability::lebesgue_mean(box, 0.0, 0.1, kTol).value.real();
  const double g2 = 2.0 - summability::lebesgue_mean(box, 0.0, 0.01, kTol).value.real();
  EXPECT_GT(g1, 0.0);
  EXPECT_GT(g2, 0.0);
  EXPECT_NEAR(g1 / g2, 100.0, 0.1);
}

TEST(LebesgueMean, ZeroFunction) {
  const auto r = summability::lebesgue_mean(corpus::get("zero"), 2.0, 0.3, kTol);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.budget(), 0.0);
}

TEST(LebesgueMean, ClosedFormTransformsInTheLimit) {
  // mean -> transform as h -> 0, with |mean - transform| = O(h^2)
  for (const char* name : {"gaussian", "exp_abs"}) {
    const auto& fn = corpus::get(name);
    for (double x : {0.0, 1.5}) {
      const auto r = summability::lebesgue_mean(fn, x, 1e-4, kTol);
      EXPECT_NEAR(r.value.real(), fn.closed_forms.transform->eval(x).real(), 1e-7) << name;
    }
  }
}

TEST(LebesgueMean, ShiftedReciprocalFrozen) {
  const auto& sr = corpus::get("shifted_reciprocal");
  const struct {
    double h, mean;
  } rows[] = {{1.0, 1.1717753382007128},
              {0.1, 0.68895361464285960},
              {0.01, 0.68677781140474401},
              {0.001, 0.68675614198695594}};
  for (const auto& r : rows) {
    const auto m = summability::lebesgue_mean(sr, 1.0, r.h, kTol);
    EXPECT_LE(std::abs(m.value.real() - r.mean), m.budget()) << r.h;
  }
}

TEST(LebesgueMean, ConstantOneHasNoLebesgueMean) {
  EXPECT_THROW(summability::lebesgue_mean(corpus::get("constant_one"), 1.0, 0.1, kTol),
               TruncationUnachievable);
}

TEST(MeanMinusPartial, Examples) {
  const auto& box = corpus::get("box");
  const auto d = summability::mean_minus_partial(box, 0.0, 0.1, kTol);
  EXPECT_NEAR(d.value.real(), 2.0 * si_series(0.1) / 0.1 - 2.0, 1e-12);
  EXPECT_NEAR(d.value.real(), -1.111e-3, 1e-6);
  EXPECT_LT(std::abs(summability::mean_minus_partial(box, 0.0, 0.01, kTol).value),
            std::abs(d.value));
  EXPECT_EQ(summability::mean_minus_partial(corpus::get("zero"), 1.0, 0.1, kTol).value, 0.0);
  EXPECT_DOUBLE_EQ(d.budget, d.mean.budget() + d.partial.abs_error_estimate);
}

TEST(MeanMinusPartial, FrozenOracleValues) {
  const struct {
    const char* fn;
    double x, h, D;
  } rows[] = {{"log_damped", 0.0, 1.0, 0.41801762051852520},
              {"log_damped", 0.0, 0.1, 0.27809896367278247},
              {"log_damped", 0.0, 0.01, 0.16510640313053601},
              {"log_damped", 0.0, 0.001, 0.11464648684174050},
              {"shifted_reciprocal", 1.0, 1.0, -0.030313432307918483},
              {"shifted_reciprocal", 1.0, 0.1, 0.086340326530182965},
              {"shifted_reciprocal", 1.0, 0.01, 0.010215933412272059},
              {"shifted_reciprocal", 1.0, 0.001, -0.0016507622971275464}};
  for (const auto& r : rows) {
    const auto d = summability::mean_minus_partial(corpus::get(r.fn), r.x, r.h, kTol);
    EXPECT_LE(std::abs(d.value.real() - r.D), d.budget) << r.fn << " h=" << r.h;
  }
}

TEST(ChooseTruncation, Examples) {
  EXPECT_EQ(summability::choose_truncation(corpus::get("box"), 0.01, 1e-10).T_max, 1.0);
  const auto g = summability::choose_truncation(corpus::get("gaussian"), 0.01, 1e-10);
  EXPECT_LE(g.T_max, 10.0);
  EXPECT_LE(g.tail_bound, 1e-10);
  const auto s = summability::choose_truncation(corpus::get("shifted_reciprocal"), 0.1, 1e-3);
  EXPECT_LE(s.T_max, 4.0 * 2.0 / (0.1 * 1e-3));
  EXPECT_LE(s.tail_bound, 1e-3);
  EXPECT_THROW(summability::choose_truncation(corpus::get("constant_one"), 0.1, 1e-3),
               TruncationUnachievable);
  EXPECT_THROW(summability::choose_truncation(corpus::get("box"), 0.0, 1e-3), InvalidArgument);
}

TEST(ChooseTruncation, NearMinimal) {
  for (const char* name : {"gaussian", "exp_abs", "shifted_reciprocal", "log_damped"}) {
    const auto& fn = corpus::get(name);
    const auto tr = summability::choose_truncation(fn, 0.1, 1e-6);
    EXPECT_EQ(tr.method, summability::TruncationMethod::absolute);
    EXPECT_LE(summability::absolute_tail_bound(fn, 0.1, tr.T_max), 1e-6);
    if (tr.T_max > 1.0) {
      EXPECT_GT(summability::absolute_tail_bound(fn, 0.1, tr.T_max * 0.999), 1e-6) << name;
    }
  }
}

TEST(ChooseTruncation, OscillatoryBoundShortensSlowTails) {
  const auto& sr = corpus::get("shifted_reciprocal");
  const auto plain = summability::choose_truncation(sr, 0.01, 1e-6);
  const auto osc = summability::choose_truncation(sr, 0.01, 1e-6, 3.0);
  EXPECT_EQ(osc.method, summability::TruncationMethod::oscillatory);
  EXPECT_LT(osc.T_max, plain.T_max);
}

// The certified bound against a brute-force tail: |mean(2 T) - mean(T)| <= tail_bound.
TEST(ChooseTruncation, CertificateHolds) {
  for (const char* name : {"gaussian", "exp_abs", "shifted_reciprocal", "log_damped"}) {
    const auto& fn = corpus::get(name);
    for (double x : {0.0, 0.5, 4.0}) {
      for (double h : {0.3, 0.03}) {
        const auto tr = summability::choose_truncation(fn, h, 1e-5, x);
        const auto a = summability::truncated_mean(fn, x, h, tr.T_max, 1e-10);
        const auto b = summability::truncated_mean(fn, x, h, 4.0 * tr.T_max, 1e-10);
        EXPECT_LE(std::abs(a.value - b.value), tr.tail_bound + 2e-10)
            << name << " x=" << x << " h=" << h;
      }
    }
  }
}

TEST(Symmetry, ConjugateAndEven) {
  for (const char* name : {"box", "gaussian", "exp_abs", "shifted_reciprocal", "log_damped"}) {
    const auto& fn = corpus::get(name);
    for (double x : {0.5, 2.0}) {
      const auto p = summability::partial_integral(fn, x, 30.0, kTol);
      const auto q = summability::partial_integral(fn, -x, 30.0, kTol);
      const double pb = p.abs_error_estimate + q.abs_error_estimate + 1e-14;
      EXPECT_LE(std::abs(p.value - std::conj(q.value)), pb) << name;
      EXPECT_LE(std::abs(p.value.imag()), pb) << name;
      EXPECT_LE(std::abs(p.value - q.value), pb) << name;

      const auto m = summability::lebesgue_mean(fn, x, 0.2, kTol);
      const auto n = summability::lebesgue_mean(fn, -x, 0.2, kTol);
      const double mb = m.budget() + n.budget() + 1e-14;
      EXPECT_LE(std::abs(m.value - std::conj(n.value)), mb) << name;
      EXPECT_LE(std::abs(m.value.imag()), mb) << name;
      EXPECT_LE(std::abs(m.value - n.value), mb) << name;
    }
  }
}

TEST(KernelBound, MeanBoundedByAbsoluteIntegral) {
  for (const char* name : {"box", "gaussian", "exp_abs", "shifted_reciprocal", "log_damped"}) {
    const auto& fn = corpus::get(name);
    const double h = 0.05;
    const double eps = 1e-6;
    const auto tr = summability::choose_truncation(fn, h, eps);
    quad::Integrand g = [&fn, h](std::span<const double> t, std::span<double> re,
                                 std::span<double>) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        re[i] = std::abs(fn(t[i])) * std::fabs(simd::sinc(t[i] * h));
      }
    };
    const auto abs_int = quad::integrate_finite(g, {-tr.T_max, tr.T_max},
                                                {{h}, fn.breakpoints()}, 1e-10);
    for (double x : {0.0, 1.0, 7.0}) {
      const auto m = summability::lebesgue_mean(fn, x, h, eps, 1e-10);
      EXPECT_LE(std::abs(m.value), abs_int.value.real() + eps + abs_int.abs_error_estimate + 1e-10)
          << name;
    }
  }
}

TEST(Backends, ScalarAndAvx2AgreeOnMeans) {
  if (!simd::isa_supported(simd::Isa::avx2)) GTEST_SKIP();
  const auto& fn = corpus::get("log_damped");
  simd::force_isa(simd::Isa::scalar);
  const auto a = summability::mean_minus_partial(fn, 2.5, 0.01, kTol);
  simd::force_isa(simd::Isa::avx2);
  const auto b = summability::mean_minus_partial(fn, 2.5, 0.01, kTol);
  EXPECT_LE(std::abs(a.value - b.value), 1e-12);
}

TEST(EvalPoint, Validation) {
  EXPECT_NO_THROW((summability::EvalPoint{0.0, 0.1, 1.0}.validate()));
  EXPECT_THROW((summability::EvalPoint{0.0, 0.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((summability::EvalPoint{0.0, 0.1, -1.0}.validate()), InvalidArgument);
  EXPECT_THROW((summability::EvalPoint{NAN, 0.1, 1.0}.validate()), InvalidArgument);
}
