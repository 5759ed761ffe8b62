#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "trigsum/corpus.hpp"
#include "trigsum/errors.hpp"
#include "trigsum/quad.hpp"

using namespace trigsum;

TEST(Catalogue, SortedUniqueAndComplete) {
  const auto names = corpus::names();
  EXPECT_GE(names.size(), 6u);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
  for (const char* n :
       {"box", "constant_one", "exp_abs", "gaussian", "log_damped", "shifted_reciprocal"}) {
    EXPECT_NO_THROW(corpus::get(n)) << n;
  }
}

TEST(Catalogue, UnknownNameListsAlternatives) {
  try {
    corpus::get("sinc");
    FAIL();
  } catch (const UnknownFunction& e) {
    EXPECT_EQ(e.available(), corpus::names());
    EXPECT_NE(std::string(e.what()).find("gaussian"), std::string::npos);
  }
}

TEST(Catalogue, ListMirrorsEntries) {
  for (const auto& e : corpus::list()) {
    const auto& fn = corpus::get(e.name);
    EXPECT_EQ(e.support_radius, fn.support_radius);
    EXPECT_EQ(e.condition_class, fn.condition_class);
    EXPECT_EQ(e.globally_integrable, fn.globally_integrable);
  }
}

TEST(Catalogue, ConditionClassNames) {
  EXPECT_EQ(to_string(ConditionClass::vanishing), "vanishing-M");
  EXPECT_EQ(to_string(ConditionClass::bounded), "bounded-M");
  EXPECT_EQ(to_string(ConditionClass::divergent), "divergent-M");
}

TEST(Box, MidpointAtJumps) {
  const auto& box = corpus::get("box");
  EXPECT_EQ(box(1.0).real(), 0.5);
  EXPECT_EQ(box(-1.0).real(), 0.5);
  EXPECT_EQ(box(0.999).real(), 1.0);
  EXPECT_EQ(box(1.001).real(), 0.0);
}

// Every member: real, even, envelope dominates |f| beyond its start.
TEST(Catalogue, EvenRealAndEnveloped) {
  for (const auto& name : corpus::names()) {
    const auto& fn = corpus::get(name);
    for (double t : {0.0, 0.3, 1.0, 2.5, 17.0, 1e3, 1e6}) {
      EXPECT_EQ(fn(t), fn(-t)) << name;
      EXPECT_EQ(fn(t).imag(), 0.0) << name;
      if (fn.envelope && fn.envelope->bound && t >= fn.envelope->from && t != 1.0) {
        EXPECT_LE(std::abs(fn(t)), fn.envelope->bound(t) * (1 + 1e-15)) << name << " " << t;
      }
    }
  }
}

TEST(Catalogue, BatchedEvalMatchesScalar) {
  const std::vector<double> t{-3.0, -1.0, 0.0, 0.5, 1.0, 40.0};
  for (const auto& name : corpus::names()) {
    const auto& fn = corpus::get(name);
    std::vector<double> re(t.size()), im(t.size());
    fn.eval(t, re, im);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(re[i], fn(t[i]).real());
      EXPECT_EQ(im[i], fn(t[i]).imag());
    }
  }
}

TEST(Catalogue, BreakpointsSortedUnion) {
  const auto& box = corpus::get("box");
  EXPECT_EQ(box.breakpoints(), (std::vector<double>{-1.0, 1.0}));
  EXPECT_EQ(corpus::get("exp_abs").breakpoints(), (std::vector<double>{0.0}));
  EXPECT_TRUE(corpus::get("gaussian").breakpoints().empty());
}

// Envelope tail forms against direct quadrature of E(u)/u.
TEST(Catalogue, EnvelopeTailsMatchQuadrature) {
  for (const char* name : {"gaussian", "exp_abs", "shifted_reciprocal", "log_damped"}) {
    const auto& env = *corpus::get(name).envelope;
    for (double T : {0.5, 2.0, 8.0}) {
      quad::Integrand g = [&env](std::span<const double> s, std::span<double> re,
                                 std::span<double>) {
        for (std::size_t i = 0; i < s.size(); ++i) re[i] = env.bound(1.0 / s[i]) / s[i];
      };
      // u = 1/s, u in [T, 1e8]
      const double tail_part =
          quad::integrate_finite(g, {1e-8, 1.0 / T}, {}, 1e-12).value.real();
      const double rest = env.tail_upper(1e8);
      if (env.tail_lower) {
        EXPECT_NEAR(env.tail_upper(T), tail_part + rest, 1e-10) << name << " " << T;
        EXPECT_NEAR(env.tail_lower(T), tail_part + env.tail_lower(1e8), 1e-10) << name;
      } else {
        EXPECT_GE(env.tail_upper(T), tail_part) << name << " " << T;
      }
    }
  }
}

TEST(Catalogue, ClosedFormsAgreeWithQuadrature) {
  for (const auto& name : corpus::names()) {
    const auto& fn = corpus::get(name);
    if (fn.closed_forms.mass) {
      for (double T : {0.5, 1.0, 3.0}) {
        quad::Integrand g = [&fn](std::span<const double> t, std::span<double> re,
                                  std::span<double>) {
          for (std::size_t i = 0; i < t.size(); ++i) re[i] = std::abs(t[i] * fn(t[i]));
        };
        quad::OscillationSpec osc{{}, fn.breakpoints()};
        osc.jump_points.push_back(0.0);
        const double m = quad::integrate_finite(g, {-T, T}, osc, 1e-13).value.real() / T;
        EXPECT_NEAR(fn.closed_forms.mass->eval(T), m, 1e-12) << name << " " << T;
      }
    }
    if (fn.closed_forms.transform && !fn.compact() && fn.envelope) {
      // transform at x = 0 equals the integral of f
      const double reach = 40.0;
      quad::Integrand g = [&fn](std::span<const double> t, std::span<double> re,
                                std::span<double> im) { fn.eval(t, re, im); };
      const double v =
          quad::integrate_finite(g, {-reach, reach}, {{}, fn.breakpoints()}, 1e-13).value.real();
      EXPECT_NEAR(fn.closed_forms.transform->eval(0.0).real(), v, 1e-12) << name;
    }
  }
}

TEST(Scaled, RescalesValueEnvelopeAndClosedForms) {
  const auto& sr = corpus::get("shifted_reciprocal");
  const auto g = sr.scaled(3.0);
  EXPECT_DOUBLE_EQ(g(2.0).real(), 1.0);
  EXPECT_DOUBLE_EQ(g.envelope->tail_upper(1.0), 3.0 * std::log(2.0));
  EXPECT_DOUBLE_EQ(g.closed_forms.mass->eval(10.0), 3.0 * sr.closed_forms.mass->eval(10.0));
  EXPECT_THROW(sr.scaled(0.0), InvalidArgument);
  EXPECT_THROW(sr.scaled(-1.0), InvalidArgument);
}

TEST(Metadata, LimitPoints) {
  EXPECT_FALSE(corpus::get("shifted_reciprocal").limit_exists_at(0.0));
  EXPECT_TRUE(corpus::get("shifted_reciprocal").limit_exists_at(1.0));
  EXPECT_FALSE(corpus::get("constant_one").limit_exists_at(1.0));
  EXPECT_TRUE(corpus::get("box").limit_exists_at(0.0));
}
