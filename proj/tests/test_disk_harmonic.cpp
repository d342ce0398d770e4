#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rbvp/disk_harmonic.hpp"
#include "rbvp/error.hpp"

using namespace rbvp;

namespace {

BoundaryFunction upper_half(std::size_t n) {
  return BoundaryFunction::sample_real([](double t) { return t < kPi ? 1.0 : 0.0; }, n,
                                       Parameterization::angle, kTwoPi, Interpolation::nearest);
}

// Nearest cells are centered on the nodes, so the sampled arc is shifted by h/2.
double upper_half_measure(std::size_t n, cd z) {
  const double h = kTwoPi / static_cast<double>(n);
  return oracle::arc_measure(-0.5 * h, kPi - 0.5 * h, z);
}

}  // namespace

TEST(Poisson, ConstantsAreHarmonic) {
  const auto c = BoundaryFunction::real(std::vector<double>(256, 2.5));
  for (cd z : {cd(0.0), cd(0.5, 0.3), cd(-0.9, 0.1), cd(0.0, 0.999)}) {
    EXPECT_NEAR(poisson_integral(c, z).value, 2.5, 1e-12);
  }
}

TEST(Poisson, Cosine3) {
  const auto c = BoundaryFunction::sample_real([](double t) { return std::cos(3 * t); }, 1024);
  EXPECT_NEAR(poisson_integral(c, std::polar(0.5, kPi / 4)).value, -0.08838834764831845, 1e-10);
}

TEST(Poisson, StepMeanValueAndHarmonicMeasure) {
  const auto step = upper_half(1024);
  EXPECT_NEAR(poisson_integral(step, 0.0).value, 0.5, 1e-12);
  for (cd z : {cd(0.3, 0.2), cd(-0.6, -0.5), cd(0.0, 0.95), cd(0.99, 0.05)}) {
    EXPECT_NEAR(poisson_integral(step, z).value, upper_half_measure(1024, z), 1e-6) << z;
  }
}

TEST(Poisson, UnderResolvedIsFlaggedNearCircle) {
  const auto step = upper_half(256);
  const SchwarzIntegral s(step);
  EXPECT_FALSE(poisson_integral(step, 0.5).under_resolved);
  const cd z = std::polar(0.999, 1.0);
  const auto v = s.poisson(z);
  EXPECT_TRUE(v.under_resolved);
  EXPECT_NEAR(v.value, upper_half_measure(256, z), 1e-8);
}

TEST(Poisson, MaximumPrinciple) {
  const auto data = BoundaryFunction::sample_real(
      [](double t) { return std::sin(3 * t) + (t > 2.0 && t < 2.5 ? 2.0 : 0.0); }, 1024,
      Parameterization::angle, kTwoPi, Interpolation::nearest);
  const auto v = data.real_samples();
  const double lo = *std::min_element(v.begin(), v.end());
  const double hi = *std::max_element(v.begin(), v.end());
  for (int k = 0; k < 200; ++k) {
    const double u = poisson_integral(data, std::polar(0.005 * k, 0.37 * k)).value;
    EXPECT_GE(u, lo - 1e-12);
    EXPECT_LE(u, hi + 1e-12);
  }
}

TEST(Conjugate, Multiplier) {
  const auto c = BoundaryFunction::real(std::vector<double>(1024, 4.0));
  for (double v : conjugate_function(c).real_samples()) EXPECT_NEAR(v, 0.0, 1e-12);
  const auto cos5 = BoundaryFunction::sample_real([](double t) { return std::cos(5 * t); }, 1024);
  const auto sin5 = BoundaryFunction::sample_real([](double t) { return std::sin(5 * t); }, 1024);
  const auto a = conjugate_function(cos5);
  const auto b = conjugate_function(sin5);
  for (std::size_t j = 0; j < 1024; ++j) {
    EXPECT_NEAR(a[j].real(), std::sin(5 * a.node(j)), 1e-12);
    EXPECT_NEAR(b[j].real(), -std::cos(5 * b.node(j)), 1e-12);
  }
}

TEST(Conjugate, TwiceIsMinusMeanFree) {
  const auto f = BoundaryFunction::sample_real([](double t) { return 1.0 + std::exp(std::cos(t)); }, 512);
  const auto cc = conjugate_function(conjugate_function(f));
  const double mean = [&] {
    double s = 0.0;
    for (double v : f.real_samples()) s += v;
    return s / 512.0;
  }();
  for (std::size_t j = 0; j < 512; ++j) EXPECT_NEAR(cc[j].real(), -(f[j].real() - mean), 1e-12);
}

TEST(Schwarz, TrigonometricPolynomials) {
  const auto c = BoundaryFunction::sample_real([](double t) { return std::cos(t); }, 1024);
  EXPECT_LT(std::abs(schwarz_operator(c, cd(0.3, -0.4)).value - cd(0.3, -0.4)), 1e-10);
  const auto one = BoundaryFunction::real(std::vector<double>(1024, 1.0));
  EXPECT_LT(std::abs(schwarz_operator(one, cd(0.5, 0.5)).value - 1.0), 1e-12);
  const auto mix = BoundaryFunction::sample_real([](double t) { return std::cos(2 * t) + 3 * std::sin(t); }, 1024);
  const cd z(0.4, 0.2);
  EXPECT_LT(std::abs(schwarz_operator(mix, z).value - (z * z - cd(0, 3) * z)), 1e-9);
}

TEST(Schwarz, ImaginaryPartVanishesAtOriginAndDerivative) {
  const auto f = BoundaryFunction::sample_real([](double t) { return std::exp(std::sin(t)); }, 1024);
  const SchwarzIntegral s(f);
  EXPECT_NEAR(s.schwarz(0.0).value.imag(), 0.0, 1e-14);
  const double d = 1e-5;
  for (cd z : {cd(0.2, 0.1), cd(-0.5, 0.4)}) {
    const cd fd = (s.schwarz(z + d).value - s.schwarz(z - d).value) / (2 * d);
    EXPECT_LT(std::abs(s.derivative(z).value - fd), 1e-7);
  }
}

TEST(Stieltjes, ZeroAndSmoothPrimitive) {
  const PoissonStieltjes zero([](double) { return 0.0; }, 4096);
  EXPECT_EQ(zero(cd(0.3, 0.1)).value, 0.0);
  EXPECT_EQ(zero(cd(0.3, 0.1), StieltjesMode::luzin_kernel).value, 0.0);
  const PoissonStieltjes sine([](double t) { return std::sin(t); }, 4096);
  for (double th : {0.0, 0.7, 2.0, 4.5}) {
    const cd z = std::polar(0.5, th);
    EXPECT_NEAR(sine(z).value, 0.5 * std::cos(th), 1e-6);
    EXPECT_NEAR(sine(z, StieltjesMode::luzin_kernel).value, 0.5 * std::cos(th), 1e-6);
  }
}

TEST(Stieltjes, CantorModesAgreeWithRefinedOracle) {
  const auto& c = cantor_field();
  const cd z = std::polar(0.9, kPi);
  const double sum = c(z).value;
  const double kernel = c(z, StieltjesMode::luzin_kernel).value;
  const double ref = oracle::cantor_stieltjes(z, 18);
  EXPECT_NEAR(sum, kernel, 1e-3);
  EXPECT_NEAR(sum, ref, 1e-3);
  EXPECT_NEAR(kernel, ref, 1e-3);
}

TEST(Stieltjes, HerglotzRealPartIsSumMode) {
  const PoissonStieltjes ps([](double t) { return std::sin(t) - 0.3 * std::sin(3 * t); }, 2048);
  for (cd z : {cd(0.2, 0.3), cd(-0.7, 0.1)}) EXPECT_NEAR(ps.herglotz(z).value.real(), ps(z).value, 1e-12);
}

TEST(NullCantor, ValuesOnAndOffTheSupport) {
  EXPECT_NEAR(null_harmonic_cantor(0.0), 1.0 / (2.0 * kPi), 1e-6);
  const auto mids = cantor_gap_midpoints(2);
  ASSERT_EQ(mids.size(), 3u);
  for (double th : mids) EXPECT_LE(std::abs(null_harmonic_cantor(std::polar(1.0 - 1e-4, th))), 0.02);
  double mx = 0.0;
  for (int k = 0; k < 4096; ++k) mx = std::max(mx, null_harmonic_cantor(std::polar(1.0 - 1e-4, kTwoPi * k / 4096)));
  EXPECT_GE(mx, 1.0);
}

TEST(NullCantor, MatchesRefinedOracleInside) {
  for (cd z : {cd(0.3, 0.1), cd(-0.5, 0.5), cd(0.0, -0.8)}) {
    EXPECT_NEAR(null_harmonic_cantor(z), oracle::cantor_stieltjes(z, 16), 1e-6) << z;
  }
}

TEST(GapMidpoints, Generations) {
  const auto m = cantor_gap_midpoints(3);
  EXPECT_EQ(m.size(), 7u);
  EXPECT_NEAR(m.front(), kTwoPi * (1.5 / 27.0), 1e-14);
  for (double t : m) EXPECT_NEAR(cantor_function(t / kTwoPi - 1e-9), cantor_function(t / kTwoPi + 1e-9), 1e-15);
}

TEST(Nontangential, ContinuousFunction) {
  const auto path = StolzPath::standard(cd(0, 1), 0.7);
  const auto s = sample_nontangential([](cd z) { return z; }, path);
  EXPECT_TRUE(s.converged);
  EXPECT_LT(std::abs(s.estimate - cd(0, 1)), 1e-10);
  for (cd p : path.points()) EXPECT_LT(std::abs(p), 1.0);
}

TEST(Nontangential, FatouLimitOfStepData) {
  const auto step = upper_half(4096);
  const SchwarzIntegral s(step);
  for (double th : {0.5, 1.5, 2.6}) {
    const auto path = StolzPath::standard(std::polar(1.0, th), 0.5, 0.0, 10);
    EXPECT_LE(path.gaps.back(), 1e-5 * 1.01);
    const auto lim = sample_nontangential([&](cd z) { return cd(s.poisson(z).value); }, path);
    EXPECT_NEAR(lim.estimate.real(), 1.0, 1e-3);
  }
}

TEST(Nontangential, NullCantorLimitAtGap) {
  const double th = cantor_gap_midpoints(1).front();
  const auto path = StolzPath::standard(std::polar(1.0, th));
  const auto lim = sample_nontangential([](cd z) { return cd(null_harmonic_cantor(z)); }, path);
  EXPECT_LE(std::abs(lim.estimate), 2e-2);
}

TEST(Nontangential, DivergenceFlagged) {
  const auto path = StolzPath::standard(cd(1.0));
  const auto s = sample_nontangential([](cd z) { return 1.0 / (1.0 - z); }, path);
  EXPECT_FALSE(s.converged);
}

TEST(Anchors, DeterministicAndEquallySpaced) {
  const auto a = uniform_anchors(64, 7);
  const auto b = uniform_anchors(64, 7);
  const auto c = uniform_anchors(64, 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (std::size_t k = 1; k < a.size(); ++k) EXPECT_NEAR(a[k] - a[k - 1], kTwoPi / 64, 1e-12);
  for (double t : a) {
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, kTwoPi);
  }
}
