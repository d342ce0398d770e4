#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rbvp/error.hpp"
#include "rbvp/riemann.hpp"

using namespace rbvp;

namespace {

constexpr std::size_t kN = 1024;

BoundaryFunction zeta_power(int k) {
  return BoundaryFunction::sample_complex([k](double t) { return std::polar(1.0, k * t); }, kN);
}

BoundaryFunction complex_constant(cd v) { return BoundaryFunction::complex(std::vector<cd>(kN, v)); }

GridSource bump() {
  return GridSource::sample([](cd z) { return std::exp(-50.0 * std::norm(z)); }, cd(-0.8, -0.8),
                            cd(0.8, 0.8), 1.0 / 128);
}

const std::vector<cd> kInside{cd(0.3, 0.2), cd(-0.5, 0.1), cd(0.0, 0.8), cd(0.1, -0.6)};
const std::vector<cd> kOutside{cd(1.5, 0.2), cd(-2.0, 1.0), cd(0.0, 3.0), cd(0.7, -1.1)};

RelationOptions relation(std::uint64_t seed = 0) { return {uniform_anchors(64, seed), {}}; }

}  // namespace

TEST(Jump, PositiveMonomial) {
  const auto p = solve_jump(zeta_power(1), std::nullopt);
  for (cd z : kInside) EXPECT_LT(std::abs(p.f_plus(z) - z), 1e-10);
  for (cd z : kOutside) EXPECT_LT(std::abs(p.f_minus(z)), 1e-10);
}

TEST(Jump, NegativeMonomial) {
  const auto p = solve_jump(zeta_power(-1), std::nullopt);
  for (cd z : kInside) EXPECT_LT(std::abs(p.f_plus(z)), 1e-10);
  for (cd z : kOutside) EXPECT_LT(std::abs(p.f_minus(z) + 1.0 / z), 1e-10);
}

TEST(Jump, FourierSplitMatchesTaylorCoefficients) {
  const auto B = BoundaryFunction::sample_complex([](double t) { return std::exp(std::polar(0.7, t)); }, kN);
  const auto p = solve_jump(B, std::nullopt);
  // f+ = exp(0.7 z), f- = 0 for entire data.
  for (cd z : kInside) EXPECT_LT(std::abs(p.f_plus(z) - std::exp(0.7 * z)), 1e-8);
  const auto C = BoundaryFunction::sample_complex(
      [](double t) { return std::exp(std::polar(0.7, t)) + std::exp(std::polar(0.4, -t)); }, kN);
  const auto q = solve_jump(C, std::nullopt);
  for (cd z : kOutside) EXPECT_LT(std::abs(q.f_minus(z) + std::exp(0.4 / z) - 1.0), 1e-8) << z;
}

TEST(Jump, GaussianSourcePairedPaths) {
  const auto B = zeta_power(1);
  const auto p = solve_jump(B, bump());
  EXPECT_LE(max_residual(paired_jump_residuals(p, B, uniform_anchors(64, 0))), 1e-2);
  for (cd z : {cd(0.05, 0.02), cd(-0.1, 0.1)}) {
    const cd t = oracle::gaussian_t(50.0, z);
    EXPECT_LT(std::abs(p.f_plus(z) - (z + t)), 1e-2) << z;
  }
  // Far from the source f- is the normalization plus T_g.
  const cd far(10.0, 0.0);
  EXPECT_LT(std::abs(p.f_minus(far) - (p.minus_at_infinity + t_operator(bump(), far))), 1e-3);
}

TEST(Jump, SourcePartIsContinuousAcross) {
  const auto zero = complex_constant(0.0);
  const auto p = solve_jump(zero, bump());
  for (double t : uniform_anchors(16, 1)) {
    const cd zeta = std::polar(1.0, t);
    const double r = 1.0 - 1e-3;
    EXPECT_LT(std::abs(p.f_plus(r * zeta) - p.f_minus(zeta / r)), 1e-2) << t;
  }
}

TEST(Shift, IdentityAgreesWithJump) {
  const auto B = BoundaryFunction::sample_complex(
      [](double t) { return std::polar(1.0, t) + 0.3 * std::polar(1.0, -2.0 * t); }, kN);
  const auto id = ShiftMap::identity(kN);
  const auto s = solve_riemann_shift(B, id, std::nullopt, std::nullopt, relation());
  const auto j = solve_jump(B, std::nullopt);
  const auto rs = shift_residuals(s, B, id, uniform_anchors(64, 0));
  const auto rj = shift_residuals(j, B, id, uniform_anchors(64, 0));
  EXPECT_LE(max_residual(rs), 1e-3);
  EXPECT_LE(max_residual(rj), 1e-3);
}

TEST(Shift, RotationAbsorbedByConstants) {
  const auto s = solve_riemann_shift(complex_constant(1.0), ShiftMap::rotation(0.2, kN), std::nullopt,
                                     std::nullopt, relation());
  for (cd z : kInside) EXPECT_LT(std::abs(s.f_plus(z) - 1.0), 1e-10);
  for (cd z : kOutside) EXPECT_LT(std::abs(s.f_minus(z)), 1e-10);
}

TEST(Shift, SineShift) {
  const auto B = zeta_power(1);
  const auto beta = ShiftMap::from_function([](double s) { return s + 0.1 * std::sin(s); }, kN);
  const auto s = solve_riemann_shift(B, beta, std::nullopt, std::nullopt, relation(3));
  EXPECT_LE(max_residual(shift_residuals(s, B, beta, uniform_anchors(64, 3))), 1e-2);
}

TEST(Shift, SeedOffsetShiftsMinusByConstant) {
  const auto B = zeta_power(1);
  const auto beta = ShiftMap::from_function([](double s) { return s + 0.1 * std::sin(s); }, kN);
  const auto psi = BoundaryFunction::sample_complex([](double t) { return cd(std::cos(2 * t), 0.0); }, kN);
  std::vector<cd> moved(kN);
  for (std::size_t j = 0; j < kN; ++j) moved[j] = psi[j] + 0.25;
  const auto a = solve_riemann_shift(B, beta, std::nullopt, psi, relation());
  const auto b = solve_riemann_shift(B, beta, std::nullopt, BoundaryFunction::complex(moved), relation());
  // The null factor makes f- large near its exceptional arcs, so compare relative to size.
  for (cd z : kOutside) {
    EXPECT_LE(std::abs(b.f_minus(z) - a.f_minus(z) - 0.25), 1e-12 * (1.0 + std::abs(a.f_minus(z)))) << z;
  }
  for (double t : uniform_anchors(64, 0)) {
    const auto la = sided_limit([&](cd z) { return a.f_minus(z); }, t, true);
    const auto lb = sided_limit([&](cd z) { return b.f_minus(z); }, t, true);
    EXPECT_LT(std::abs(lb.estimate - la.estimate - 0.25), 1e-9) << t;
  }
}

TEST(Nonlinear, IdentityReducesToSeed) {
  const auto id = ShiftMap::identity(kN);
  const auto psi = BoundaryFunction::sample_complex(
      [](double t) { return cd(std::cos(t), 0.5 * std::sin(3 * t)); }, kN);
  const auto ident = CaratheodoryMap::identity();
  const auto p = solve_nonlinear(ident, id, id, std::nullopt, psi, relation());
  EXPECT_LE(max_residual(nonlinear_residuals(p, ident, id, id, uniform_anchors(64, 0))), 1e-3);
  for (double t : uniform_anchors(16, 2)) {
    const auto lim = sided_limit([&](cd z) { return p.f_plus(z); }, t, false);
    EXPECT_LT(std::abs(lim.estimate - psi(t)), 1e-3);
  }
}

TEST(Nonlinear, AffineConstants) {
  const auto id = ShiftMap::identity(kN);
  const auto phic = CaratheodoryMap::affine(2.0, 1.0, kN);
  const auto p = solve_nonlinear(phic, id, id, std::nullopt, complex_constant(1.0), relation());
  for (cd z : kInside) EXPECT_LT(std::abs(p.f_plus(z) - 3.0), 1e-10);
  for (cd z : kOutside) EXPECT_LT(std::abs(p.f_minus(z) - 1.0), 1e-10);
}

TEST(Nonlinear, ModulusOfUnimodularSeed) {
  const auto id = ShiftMap::identity(kN);
  const auto phic = CaratheodoryMap::modulus();
  const auto p = solve_nonlinear(phic, id, id, std::nullopt, zeta_power(1), relation());
  EXPECT_LE(max_residual(nonlinear_residuals(p, phic, id, id, uniform_anchors(64, 0))), 1e-3);
  for (cd z : kInside) EXPECT_LT(std::abs(p.f_plus(z) - 1.0), 1e-3);
}

TEST(Mixed, DirectionalDerivativeIdentity) {
  const auto a = [](cd z) { return std::sin(z) * z + 1.0 / (z - 3.0); };
  const auto da = [](cd z) { return std::cos(z) * z + std::sin(z) - 1.0 / ((z - 3.0) * (z - 3.0)); };
  const double d = 1e-5;
  for (int k = 0; k < 10; ++k) {
    const cd z = std::polar(0.15 + 0.08 * k, 1.3 * k);
    const cd nu = std::polar(1.0, 0.7 * k + 0.2);
    const cd fd = (a(z + d * nu) - a(z - d * nu)) / (2.0 * d);
    EXPECT_LT(std::abs(fd - nu * da(z)), 1e-6);
  }
}

TEST(Mixed, PotentialDirectionalDerivativeMatchesDifferences) {
  const auto g = bump();
  const double d = 1e-4;
  for (cd z : {cd(0.2, 0.1), cd(1.0, 0.0), cd(-0.3, 0.6)}) {
    const cd nu = std::polar(1.0, 0.8);
    const cd fd = (t_operator(g, z + d * nu) - t_operator(g, z - d * nu)) / (2.0 * d);
    EXPECT_LT(std::abs(potential_directional_derivative(g, z, nu) - fd), 2e-2) << z;
  }
}

TEST(Mixed, ZeroSeed) {
  const auto id = ShiftMap::identity(kN);
  const auto ident = CaratheodoryMap::identity();
  const auto nu = UnimodularField::constant(1.0, kN);
  const auto m = solve_mixed(ident, nu, id, id, std::nullopt, complex_constant(0.0), relation());
  EXPECT_LE(max_residual(mixed_residuals(m, ident, id, id, uniform_anchors(64, 0))), 1e-3);
  for (cd z : kInside) EXPECT_LT(std::abs(m.pair.f_plus(z)), 1e-3);
  for (cd z : kOutside) EXPECT_LT(std::abs(m.minus_normal_derivative(z, 1.0)), 1e-3);
}

TEST(Mixed, UnitSeedWithLinearGrowth) {
  const auto id = ShiftMap::identity(kN);
  const auto ident = CaratheodoryMap::identity();
  const auto nu = UnimodularField::constant(1.0, kN);
  const auto m = solve_mixed(ident, nu, id, id, std::nullopt, complex_constant(1.0), relation());
  EXPECT_LE(max_residual(mixed_residuals(m, ident, id, id, uniform_anchors(64, 0))), 1e-2);
  for (cd z : {cd(3.0, 0.0), cd(-2.0, 2.0), cd(0.0, -5.0)}) EXPECT_LT(std::abs(m.pair.f_minus(z) - z), 1e-2);
  for (cd z : kInside) EXPECT_LT(std::abs(m.pair.f_plus(z) - 1.0), 1e-2);
}

TEST(Mixed, SmoothSourceTrace) {
  const auto id = ShiftMap::identity(kN);
  const auto ident = CaratheodoryMap::identity();
  const auto g = bump();
  const auto nu = UnimodularField::normalized(zeta_power(1));
  const auto m = solve_mixed(ident, nu, id, id, g, complex_constant(0.0), relation());
  for (double t : uniform_anchors(64, 0)) {
    const cd zeta = std::polar(1.0, t);
    const auto lim = sided_limit([&](cd w) { return m.pair.f_plus(w); }, t, false);
    EXPECT_LT(std::abs(lim.estimate - potential_directional_derivative(g, zeta, zeta)), 2e-2) << t;
  }
}

TEST(Mixed, RoughSourceRejected) {
  const auto rough = GridSource::sample([](cd z) { return std::abs(z) <= 0.5 ? 1.0 : 0.0; }, cd(-0.6, -0.6),
                                        cd(0.6, 0.6), 1.0 / 64);
  const auto id = ShiftMap::identity(kN);
  EXPECT_THROW(solve_mixed(CaratheodoryMap::identity(), UnimodularField::constant(1.0, kN), id, id, rough,
                           complex_constant(0.0), relation()),
               Error);
}

TEST(RiemannPoincare, ZeroSeedGivesConstants) {
  const auto one = UnimodularField::constant(1.0, kN);
  const auto psi = BoundaryFunction::real(std::vector<double>(kN, 0.0));
  const auto ident = CaratheodoryMap::identity();
  const auto p = solve_riemann_poincare(ident, one, one, std::nullopt, psi, relation());
  EXPECT_LE(max_residual(riemann_poincare_residuals(p, ident, uniform_anchors(64, 0))), 1e-3);
  for (cd z : kInside) EXPECT_LT(std::abs(p.plus.gradient(z)), 1e-8);
  for (cd z : kOutside) EXPECT_LT(std::abs(p.minus.gradient(z)), 1e-8);
}

TEST(RiemannPoincare, DoubledNormalDerivative) {
  const auto inner = UnimodularField::normalized(
      BoundaryFunction::sample_complex([](double t) { return -std::polar(1.0, t); }, kN));
  const auto outer = UnimodularField::normalized(zeta_power(1));
  const auto psi = BoundaryFunction::real(std::vector<double>(kN, 1.0));
  const auto twice = CaratheodoryMap::affine(2.0, 0.0, kN);
  const auto p = solve_riemann_poincare(twice, inner, outer, std::nullopt, psi, relation());
  const auto res = riemann_poincare_residuals(p, twice, uniform_anchors(64, 0));
  EXPECT_LE(max_residual(res), 2e-2);
  for (const auto& r : res) EXPECT_NEAR(r.plus_limit.real(), 2.0, 2e-2) << r.theta;
}

TEST(RiemannPoincare, SourceOnTheDisk) {
  const auto G = GridSource::sample([](cd z) { return std::abs(z) <= 1.0 ? 4.0 : 0.0; }, cd(-1.05, -1.05),
                                    cd(1.05, 1.05), 1.0 / 128, 8);
  const auto one = UnimodularField::constant(1.0, kN);
  const auto psi = BoundaryFunction::real(std::vector<double>(kN, 0.0));
  const auto p = solve_riemann_poincare(CaratheodoryMap::identity(), one, one, G, psi, relation());
  const double h = 1.0 / 128;
  for (cd z : {cd(0.1, 0.2), cd(-0.3, -0.1), cd(0.4, 0.4)}) {
    const auto& U = p.plus;
    const double lap = (U(z + h) + U(z - h) + U(z + cd(0, h)) + U(z - cd(0, h)) - 4.0 * U(z)) / (h * h);
    EXPECT_NEAR(lap, 4.0, 1e-2) << z;
  }
}

TEST(Validation, JumpDataRequiresUnitCoefficient) {
  auto d = JumpData::jump(zeta_power(1));
  EXPECT_NO_THROW(d.validate());
  d.A = complex_constant(2.0);
  EXPECT_THROW(d.validate(), Error);
  std::vector<cd> bad(kN, 0.0);
  bad[3] = cd(std::nan(""), 0.0);
  EXPECT_THROW(JumpData::jump(BoundaryFunction::complex(bad)).validate(), Error);
}
