#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rbvp/conformal.hpp"
#include "rbvp/error.hpp"
#include "rbvp/poincare.hpp"

using namespace rbvp;

TEST(Catalog, IdentityMoebiusAndDegenerateEllipse) {
  const auto id = ConformalMap::identity();
  EXPECT_EQ(id(cd(0.3, 0.1)), cd(0.3, 0.1));
  const auto ext = ConformalMap::moebius_to_exterior();
  EXPECT_TRUE(ext.exterior());
  EXPECT_LT(std::abs(ext(0.5) - 2.0), 1e-15);
  const auto e = ConformalMap::ellipse(1.0, 1.0);
  for (cd z : {cd(0.3, 0.1), cd(-0.5, 0.7), cd(0.0, -0.99)}) EXPECT_LT(std::abs(e(z) - z), 1e-12);
  EXPECT_THROW(ConformalMap::ellipse(-1.0, 1.0), Error);
}

TEST(Ellipse, BoundaryNormalizationAndLength) {
  const double a = 1.2;
  const double b = 0.8;
  const auto m = ConformalMap::ellipse(a, b);
  EXPECT_LT(std::abs(m(0.0)), 1e-12);
  EXPECT_GT(m.derivative(0.0).real(), 0.0);
  EXPECT_NEAR(m.derivative(0.0).imag(), 0.0, 1e-12);
  for (int k = 0; k < 64; ++k) {
    const cd w = m.boundary_point(kTwoPi * k / 64);
    EXPECT_NEAR(std::norm(w.real() / a) + std::norm(w.imag() / b), 1.0, 1e-9);
  }
  EXPECT_NEAR(m.length(), oracle::ellipse_perimeter(a, b), 1e-8);
}

TEST(Ellipse, InverseAndDerivative) {
  const auto m = ConformalMap::ellipse(1.5, 1.0);
  const double d = 1e-6;
  for (cd z : {cd(0.2, 0.1), cd(-0.6, 0.3), cd(0.1, -0.85)}) {
    EXPECT_LT(std::abs(m.inverse(m(z)) - z), 1e-10);
    const cd fd = (m(z + d) - m(z - d)) / (2 * d);
    EXPECT_LT(std::abs(m.derivative(z) - fd), 1e-7);
  }
}

TEST(Ellipse, ArclengthIsMonotoneAndInvertible) {
  const auto m = ConformalMap::ellipse(1.5, 1.0);
  double prev = -1.0;
  for (int k = 0; k < 100; ++k) {
    const double th = kTwoPi * k / 100;
    const double s = m.arclength(th);
    EXPECT_GT(s, prev);
    prev = s;
    EXPECT_NEAR(m.angle_at(s), th, 1e-9);
  }
  EXPECT_LT(prev, m.length());
  EXPECT_NEAR(m.arclength(kTwoPi), 0.0, 1e-12);
  const auto table = m.table();
  ASSERT_FALSE(table.empty());
  for (const auto& row : table) EXPECT_NEAR(row.speed, std::abs(m.derivative(std::polar(1.0, row.theta))), 1e-6);
}

TEST(Theodorsen, CircleConvergesImmediately) {
  const auto m = ConformalMap::theodorsen([](double) { return 2.0; }, 256);
  EXPECT_LE(m.report().iterations, 1);
  for (cd z : {cd(0.3, 0.1), cd(-0.5, 0.2)}) EXPECT_LT(std::abs(m(z) - 2.0 * z), 1e-12);
  for (std::size_t j = 0; j < m.correspondence().size(); ++j) {
    EXPECT_NEAR(m.correspondence()[j], kTwoPi * j / m.correspondence().size(), 1e-12);
  }
}

TEST(Theodorsen, PerturbedCircleSelfConsistency) {
  const auto rho = [](double t) { return 1.0 + 0.1 * std::cos(t); };
  const auto m = ConformalMap::theodorsen(rho, 512);
  EXPECT_LE(m.report().residual, 1e-8);
  const auto& corr = m.correspondence();
  for (std::size_t j = 0; j < corr.size(); j += 8) {
    const double th = kTwoPi * j / corr.size();
    EXPECT_NEAR(std::abs(m.boundary_point(th)) - rho(corr[j]), 0.0, 1e-8);
  }
  for (std::size_t j = 1; j < corr.size(); ++j) EXPECT_GT(corr[j], corr[j - 1]);
}

TEST(Theodorsen, WildBoundaryIsRejectedOrFlagged) {
  const auto wild = [](double t) { return 1.0 + 0.5 * std::cos(6 * t); };
  try {
    const auto m = ConformalMap::theodorsen(wild, 512);
    EXPECT_TRUE(m.report().contraction_warning);
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "conformal");
  }
}

TEST(Pushforward, IdentityAndScaledCircle) {
  const auto id = ConformalMap::identity();
  const auto data = BoundaryFunction::sample_real([](double t) { return std::sin(2 * t); }, 256);
  const auto same = pushforward_boundary_data(id, data);
  for (std::size_t j = 0; j < 256; ++j) EXPECT_NEAR(same[j].real(), data[j].real(), 1e-12);

  const auto big = ConformalMap::identity(2.0);
  EXPECT_NEAR(big.length(), 4.0 * kPi, 1e-12);
  const auto s_data = BoundaryFunction::sample_real([](double s) { return std::cos(s / 2); }, 512,
                                                    Parameterization::natural, big.length());
  const auto pulled = pushforward_boundary_data(big, s_data);
  for (std::size_t j = 0; j < pulled.size(); ++j) EXPECT_NEAR(pulled[j].real(), std::cos(pulled.node(j)), 1e-10);
}

TEST(Pushforward, ConstantsAndRoundTripOnEllipse) {
  const auto m = ConformalMap::ellipse(1.2, 0.8);
  const auto five = BoundaryFunction::real(std::vector<double>(512, 5.0), Parameterization::natural, m.length());
  for (double v : pushforward_boundary_data(m, five).real_samples()) EXPECT_NEAR(v, 5.0, 1e-12);
  const auto smooth = BoundaryFunction::sample_real(
      [&](double s) { return std::cos(kTwoPi * s / m.length()); }, 1024, Parameterization::natural, m.length());
  const auto there = pushforward_boundary_data(m, smooth, PushDirection::to_disk);
  const auto back = pushforward_boundary_data(m, there, PushDirection::from_disk);
  for (std::size_t j = 0; j < back.size(); ++j) EXPECT_NEAR(back[j].real(), smooth[j].real(), 1e-4);
  EXPECT_THROW(pushforward_boundary_data(m, BoundaryFunction::real(std::vector<double>(64, 1.0))), Error);
}

TEST(Normal, DiskCircleAndEllipse) {
  const auto disk = inner_normal(ConformalMap::identity());
  for (std::size_t j = 0; j < disk.normal.size(); j += 37) {
    EXPECT_LT(std::abs(disk.normal[j] + std::polar(1.0, disk.normal.node(j))), 1e-12);
  }
  const auto big = ConformalMap::identity(2.0);
  const auto n2 = inner_normal(big);
  for (std::size_t j = 0; j < n2.normal.size(); j += 37) {
    const cd zeta = big.boundary_point(big.angle_at(n2.normal.node(j)));
    EXPECT_LT(std::abs(n2.normal[j] + zeta / std::abs(zeta)), 1e-10);
  }
  const double a = 1.2;
  const double b = 0.8;
  const auto e = ConformalMap::ellipse(a, b);
  EXPECT_LT(std::abs(e.inner_normal_at_angle(0.0) - cd(-1.0, 0.0)), 1e-8);
  for (double th : {0.4, 1.3, 2.9, 5.0}) {
    const cd w = e.boundary_point(th);
    const double t = std::atan2(w.imag() / b, w.real() / a);
    EXPECT_LT(std::abs(e.inner_normal_at_angle(th) - oracle::ellipse_inner_normal(a, b, t)), 1e-8);
  }
}
