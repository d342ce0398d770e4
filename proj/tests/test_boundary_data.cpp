#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "rbvp/boundary_data.hpp"
#include "rbvp/error.hpp"

using namespace rbvp;

TEST(BoundaryFunction, ZeroSamplesEvaluateToZero) {
  const auto f = BoundaryFunction::real(std::vector<double>(256, 0.0));
  for (double s : {0.0, 0.1, 3.0, 6.28}) EXPECT_EQ(f(s), cd(0.0));
}

TEST(BoundaryFunction, NodeHitReturnsSample) {
  const auto f = BoundaryFunction::sample_real([](double t) { return std::cos(3 * t); }, 256);
  for (std::size_t j = 0; j < 256; j += 7) EXPECT_NEAR(f.real_at(f.node(j)), std::cos(3 * f.node(j)), 1e-12);
  // pi/6 is not a node of the 256 grid; linear interpolation error is h^2 k^2 / 8.
  const double h = kTwoPi / 256;
  EXPECT_NEAR(f.real_at(kPi / 6), 0.0, h * h * 9 / 8);
}

TEST(BoundaryFunction, StepDataSides) {
  const auto f = BoundaryFunction::sample_real([](double t) { return t < kPi ? -1.0 : 1.0; }, 256,
                                               Parameterization::angle, kTwoPi, Interpolation::nearest);
  EXPECT_EQ(f.real_at(kPi / 2), -1.0);
  EXPECT_EQ(f.real_at(3 * kPi / 2), 1.0);
}

TEST(BoundaryFunction, RejectsNonFiniteAndEmpty) {
  std::vector<double> v(16, 1.0);
  v[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(BoundaryFunction::real(v), Error);
  EXPECT_THROW(BoundaryFunction::real({}), Error);
}

TEST(BoundaryFunction, EvaluationIsPeriodic) {
  const auto f = BoundaryFunction::sample_real([](double t) { return std::sin(t) + 0.2 * std::cos(4 * t); }, 512);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int k = 0; k < 50; ++k) {
    const double s = u(rng);
    EXPECT_NEAR(f.real_at(s), f.real_at(s + kTwoPi), 1e-12);
    EXPECT_NEAR(f.real_at(s), f.real_at(s - 2 * kTwoPi), 1e-12);
  }
}

TEST(UnimodularField, RejectsNonUnimodular) {
  EXPECT_THROW(UnimodularField::from_samples(BoundaryFunction::complex(std::vector<cd>(16, cd(1.1)))), Error);
  EXPECT_THROW(UnimodularField::normalized(BoundaryFunction::complex(std::vector<cd>(16, cd(0.0)))), Error);
}

TEST(UnimodularField, BranchIsPrincipalAndWindingCounted) {
  const auto z = UnimodularField::normalized(
      BoundaryFunction::sample_complex([](double t) { return std::polar(2.0, 3.0 * t); }, 256));
  EXPECT_EQ(z.winding_number(), 3);
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double b = z.branch()[j].real();
    EXPECT_GT(b, -kPi - 1e-12);
    EXPECT_LE(b, kPi + 1e-12);
    EXPECT_NEAR(std::abs(std::polar(1.0, b) - z.base()[j]), 0.0, 1e-12);
  }
}

TEST(Cantor, EndpointsAndSymmetry) {
  EXPECT_EQ(cantor_function(0.0), 0.0);
  EXPECT_EQ(cantor_function(1.0), 1.0);
  EXPECT_NEAR(cantor_function(0.5), 0.5, 1e-15);
  EXPECT_THROW(cantor_function(-0.1), Error);
  EXPECT_THROW(cantor_function(1.5), Error);
}

TEST(Cantor, MatchesDigitScanOracle) {
  EXPECT_NEAR(cantor_function(0.25), oracle::cantor_rational(1, 4), 1e-15);
  for (std::uint64_t q : {7u, 11u, 13u, 81u, 100u}) {
    for (std::uint64_t p = 1; p < q; ++p) {
      const double x = static_cast<double>(p) / static_cast<double>(q);
      EXPECT_NEAR(cantor_function(x), oracle::cantor_exact(x), 1e-15) << p << "/" << q;
    }
  }
}

TEST(Cantor, MonotoneAndSymmetric) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng);
    const double b = u(rng);
    EXPECT_LE(cantor_function(std::min(a, b)), cantor_function(std::max(a, b)));
    EXPECT_NEAR(cantor_function(1.0 - a), 1.0 - cantor_function(a), 1e-14);
  }
}

TEST(LuzinPrimitive, ZeroData) {
  const auto p = luzin_primitive(BoundaryFunction::real(std::vector<double>(256, 0.0)));
  for (double t : {0.0, 1.0, 4.0, kTwoPi}) EXPECT_EQ(p(t), 0.0);
}

TEST(LuzinPrimitive, MeanZeroCosineGivesSine) {
  const auto p = luzin_primitive(BoundaryFunction::sample_real([](double t) { return std::cos(t); }, 1024));
  EXPECT_NEAR(p.singular_correction(), 0.0, 1e-12);
  for (int k = 0; k <= 40; ++k) {
    const double t = kTwoPi * k / 40.0 + 0.013;
    EXPECT_NEAR(p(std::min(t, kTwoPi)), std::sin(std::min(t, kTwoPi)), 1e-10);
  }
}

TEST(LuzinPrimitive, ConstantDataSubtractsCantorStaircase) {
  const auto p = luzin_primitive(BoundaryFunction::real(std::vector<double>(1024, 1.0)));
  EXPECT_EQ(p(0.0), 0.0);
  EXPECT_EQ(p(kTwoPi), 0.0);
  for (int k = 1; k < 30; ++k) {
    const double t = kTwoPi * k / 30.0;
    EXPECT_NEAR(p(t), t - kTwoPi * oracle::cantor_exact(t / kTwoPi), 1e-10);
  }
  const double d = 1e-7;
  EXPECT_NEAR((p(kPi + d) - p(kPi - d)) / (2 * d), 1.0, 1e-6);
}

TEST(LuzinPrimitive, ClampsLargeData) {
  const auto data = BoundaryFunction::sample_real([](double t) { return t < 2.0 ? 50.0 : 0.0; }, 1024,
                                                  Parameterization::angle, kTwoPi, Interpolation::nearest);
  const auto p = luzin_primitive(data, 10.0);
  const double d = 1e-7;
  const double m = kTwoPi * 0.5;
  EXPECT_NEAR((p(m + d) - p(m - d)) / (2 * d), 0.0, 1e-6);
  const double m1 = kTwoPi * (1.5 / 9.0);
  EXPECT_NEAR((p(m1 + d) - p(m1 - d)) / (2 * d), 10.0, 1e-6);
}

TEST(LuzinPrimitive, ContinuousUnderRefinement) {
  const auto data = BoundaryFunction::sample_real([](double t) { return t < 2.0 ? 1.0 : -3.0; }, 2048,
                                                  Parameterization::angle, kTwoPi, Interpolation::nearest);
  const auto p = luzin_primitive(data);
  double prev = INFINITY;
  double first = 0.0;
  for (int n : {64, 256, 1024, 4096}) {
    double jump = 0.0;
    for (int k = 0; k < n; ++k) {
      jump = std::max(jump, std::abs(p(kTwoPi * (k + 1) / n) - p(kTwoPi * k / n)));
    }
    EXPECT_LT(jump, prev);
    if (n == 64) first = jump;
    prev = jump;
  }
  EXPECT_LT(prev, 0.25 * first);
}

TEST(Caratheodory, CatalogExamples) {
  const auto psi = BoundaryFunction::complex(std::vector<cd>(64, cd(3.0)));
  const auto same = compose_caratheodory(CaratheodoryMap::identity(), psi);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_EQ(same[j], cd(3.0));
  const auto affine = compose_caratheodory(CaratheodoryMap::affine(2.0, 1.0, 64), psi);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(std::abs(affine[j] - 7.0), 0.0, 1e-14);
  const auto circle = BoundaryFunction::sample_complex([](double t) { return std::polar(1.0, t); }, 64);
  const auto mod = compose_caratheodory(CaratheodoryMap::modulus(), circle);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(mod[j].real(), 1.0, 1e-12);
}

TEST(Caratheodory, TabulatedIsContinuousInW) {
  std::vector<double> grid;
  std::vector<cd> vals;
  for (int k = 0; k <= 20; ++k) {
    grid.push_back(-1.0 + 0.1 * k);
    vals.push_back(std::sin(grid.back()));
  }
  const auto m = CaratheodoryMap::tabulated(grid, vals);
  double prev = INFINITY;
  for (double dw : {1e-2, 1e-3, 1e-4}) {
    double osc = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double w = -1.2 + 0.012 * k;
      osc = std::max(osc, std::abs(m(0.0, w + dw) - m(0.0, w)));
    }
    EXPECT_LT(osc, prev);
    prev = osc;
  }
}

TEST(ShiftMap, IdentityAndRotation) {
  const auto psi = BoundaryFunction::sample_real([](double t) { return std::cos(t); }, 1024);
  const auto same = apply_shift(psi, ShiftMap::identity(1024), ShiftDirection::forward);
  for (std::size_t j = 0; j < 1024; ++j) EXPECT_NEAR(same[j].real(), psi[j].real(), 1e-14);
  const auto rot = apply_shift(psi, ShiftMap::rotation(kPi / 2, 1024), ShiftDirection::forward);
  for (std::size_t j = 0; j < 1024; ++j) EXPECT_NEAR(rot[j].real(), -std::sin(psi.node(j)), 1e-3);
}

TEST(ShiftMap, SineShiftMatchesDirectEvaluation) {
  const std::size_t n = 4096;
  const auto beta = ShiftMap::from_function([](double s) { return s + 0.1 * std::sin(s); }, n);
  const auto psi = BoundaryFunction::sample_real([](double t) { return std::cos(t); }, n);
  const auto out = apply_shift(psi, beta, ShiftDirection::forward);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = psi.node(j);
    EXPECT_NEAR(out[j].real(), std::cos(s + 0.1 * std::sin(s)), 1e-6);
  }
}

TEST(ShiftMap, InverseRoundTripAndMonotonicity) {
  const auto beta = ShiftMap::from_function([](double s) { return s + 0.3 * std::sin(2 * s) / 2; }, 1024);
  for (int k = 0; k < 100; ++k) {
    const double s = kTwoPi * k / 100.0;
    EXPECT_NEAR(beta.inverse(beta.forward(s)), s, 1e-9);
    EXPECT_LT(beta.forward(s), beta.forward(s + 0.01));
  }
  EXPECT_THROW(ShiftMap::from_function([](double s) { return s + 2.0 * std::sin(s); }, 256), Error);
}
