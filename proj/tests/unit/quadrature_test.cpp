#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "yukawa/quadrature.hpp"

using yukawa::IntegrationSpec;
using yukawa::integrate_halfline;
using yukawa::integrate_partial;

namespace {

IntegrationSpec scale(double s) {
  IntegrationSpec spec;
  spec.decay_scale = s;
  return spec;
}

}  // namespace

TEST(Halfline, Exponential) {
  EXPECT_NEAR(integrate_halfline([](double r) { return std::exp(-r); }, scale(1)), 1.0, 1e-12);
}

TEST(Halfline, LinearTimesExponential) {
  EXPECT_NEAR(integrate_halfline([](double r) { return r * std::exp(-r); }, scale(1)), 1.0, 1e-12);
}

TEST(Halfline, HydrogenGroundDensity) {
  const auto f = [](double r) { return 4 * r * r * std::exp(-2 * r); };
  EXPECT_NEAR(integrate_halfline(f, scale(0.5)), 1.0, 1e-12);
}

TEST(Halfline, PolynomialMoments) {
  double fact = 1.0;
  for (int k = 0; k <= 12; ++k) {
    if (k > 0) fact *= k;
    const double v = integrate_halfline([k](double r) { return std::pow(r, k) * std::exp(-r); }, scale(1));
    EXPECT_NEAR(v, fact, 1e-11 * fact) << k;
  }
}

TEST(Halfline, Linearity) {
  const auto f = [](double r) { return r * std::exp(-r); };
  const auto g = [](double r) { return 4 * r * r * std::exp(-2 * r); };
  const auto s = scale(1);
  const double combined = integrate_halfline([&](double r) { return 2.5 * f(r) - 0.75 * g(r); }, s);
  EXPECT_NEAR(combined, 2.5 * integrate_halfline(f, s) - 0.75 * integrate_halfline(g, s), 1e-12 * std::fabs(combined));
}

TEST(Halfline, ScaleTranslation) {
  const auto f = [](double r) { return r * r * std::exp(-r); };
  const double base = integrate_halfline(f, scale(1));
  for (double s : {0.1, 10.0}) {
    const double scaled = integrate_halfline([&](double r) { return f(r / s); }, scale(s)) / s;
    EXPECT_NEAR(scaled, base, 1e-10 * base) << s;
  }
}

TEST(Halfline, RationalIntegrandUsesFallback) {
  // 1/(1+r^2) e^{-r}: not polynomial; reference from the exp-sinh rule is
  // Ci(1) sin(1) + (pi/2 - Si(1)) cos(1).
  const double ref = 0.6214496242358134;
  const double v = integrate_halfline([](double r) { return std::exp(-r) / (1 + r * r); }, scale(1));
  EXPECT_NEAR(v, ref, 1e-10);
}

TEST(Halfline, Deterministic) {
  const auto f = [](double r) { return std::exp(-r) / (1 + r * r); };
  EXPECT_EQ(integrate_halfline(f, scale(1)), integrate_halfline(f, scale(1)));
}

TEST(Halfline, NonConvergenceCarriesEstimate) {
  IntegrationSpec spec;
  spec.max_subdivisions = 2;
  spec.rel_tol = 1e-14;
  const auto f = [](double r) { return std::exp(-r) * std::sin(40.0 * r) / std::sqrt(r + 1e-9); };
  try {
    (void)integrate_halfline(f, spec);
    FAIL() << "expected IntegrationError";
  } catch (const yukawa::IntegrationError& e) {
    EXPECT_TRUE(std::isfinite(e.partial_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Halfline, RejectsBadSpec) {
  IntegrationSpec spec;
  spec.decay_scale = 0;
  EXPECT_THROW(integrate_halfline([](double) { return 0.0; }, spec), std::invalid_argument);
  spec = IntegrationSpec{};
  spec.rel_tol = 1.0;
  EXPECT_THROW(integrate_halfline([](double) { return 0.0; }, spec), std::invalid_argument);
  spec = IntegrationSpec{};
  spec.max_subdivisions = 0;
  EXPECT_THROW(integrate_halfline([](double) { return 0.0; }, spec), std::invalid_argument);
}

TEST(Partial, Examples) {
  const IntegrationSpec spec;
  EXPECT_NEAR(integrate_partial([](double r) { return std::exp(-r); }, std::log(2.0), spec), 0.5, 1e-14);
  EXPECT_NEAR(integrate_partial([](double) { return 1.0; }, 3.25, spec), 3.25, 1e-14);
  EXPECT_NEAR(integrate_partial([](double r) { return r; }, 2.0, spec), 2.0, 1e-14);
}

TEST(Partial, Additive) {
  const IntegrationSpec spec;
  const auto f = [](double r) { return r * r * std::exp(-r); };
  const double whole = integrate_partial(f, 3.0, spec);
  const double split = integrate_partial(f, 1.2, spec) + yukawa::integrate_interval(f, 1.2, 3.0, spec);
  EXPECT_NEAR(whole, split, 1e-12);
}

TEST(Partial, RejectsBadLimit) {
  const IntegrationSpec spec;
  EXPECT_THROW(integrate_partial([](double) { return 1.0; }, -1.0, spec), std::invalid_argument);
  EXPECT_THROW(integrate_partial([](double) { return 1.0; }, INFINITY, spec), std::invalid_argument);
}

TEST(Tail, ComplementsPartial) {
  const IntegrationSpec spec;
  const auto f = [](double r) { return r * std::exp(-r); };
  EXPECT_NEAR(integrate_partial(f, 2.0, spec) + yukawa::integrate_tail(f, 2.0, spec), 1.0, 1e-12);
}
