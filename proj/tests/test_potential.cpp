#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rbvp/error.hpp"
#include "rbvp/potential.hpp"

using namespace rbvp;

namespace {

GridSource unit_disk(double h) {
  return GridSource::sample([](cd z) { return std::abs(z) <= 1.0 ? 1.0 : 0.0; }, cd(-1.05, -1.05),
                            cd(1.05, 1.05), h, 8);
}

GridSource gaussian(double a, double half, double h) {
  return GridSource::sample([a](cd z) { return std::exp(-a * std::norm(z)); }, cd(-half, -half),
                            cd(half, half), h);
}

}  // namespace

TEST(GridSource, RejectsLeakingSupport) {
  EXPECT_THROW(GridSource::sample([](cd) { return 1.0; }, cd(-1, -1), cd(1, 1), 1.0 / 16), Error);
}

TEST(GridSource, NormsAndSupport) {
  const auto g = unit_disk(1.0 / 64);
  EXPECT_NEAR(g.l1_norm(), oracle::pi, 1e-3);
  EXPECT_NEAR(g.support_radius(), 1.0, 2.0 / 64);
  EXPECT_DOUBLE_EQ(g.max_abs(), 1.0);
}

TEST(Potential, ZeroSource) {
  const PotentialField f{GridSource::zero(cd(-1, -1), cd(1, 1), 1.0 / 32)};
  for (cd z : {cd(0.0), cd(0.3, 0.4), cd(2.0, 0.0)}) {
    EXPECT_EQ(newtonian_potential(f, z), 0.0);
    EXPECT_EQ(t_operator(f.source, z), cd(0.0));
  }
}

TEST(Potential, UnitDiskClosedForm) {
  const PotentialField f{unit_disk(1.0 / 128)};
  EXPECT_NEAR(newtonian_potential(f, 0.0), -0.25, 5e-3);
  EXPECT_NEAR(newtonian_potential(f, 2.0), 0.5 * std::log(2.0), 5e-3);
  for (cd z : {cd(0.3, 0.4), cd(-0.7, 0.2), cd(1.6, -0.9), cd(0.0, 1.9)}) {
    EXPECT_NEAR(newtonian_potential(f, z), oracle::disk_potential(z), 5e-3);
  }
}

TEST(Potential, UnitDiskMatchesRefinedBruteForce) {
  const PotentialField f{unit_disk(1.0 / 128)};
  const auto ind = [](cd w) { return std::abs(w) <= 1.0 ? 1.0 : 0.0; };
  for (cd z : {cd(0.0), cd(2.0)}) {
    const double brute = oracle::brute_potential(ind, cd(-1.0, -1.0), cd(1.0, 1.0), 1.0 / 512, z);
    EXPECT_NEAR(brute, oracle::disk_potential(z), 5e-3);
    EXPECT_NEAR(newtonian_potential(f, z), brute, 5e-3);
  }
}

TEST(TOperator, UnitDiskClosedForm) {
  const auto g = unit_disk(1.0 / 128);
  EXPECT_LT(std::abs(t_operator(g, cd(0.3, 0.4)) - cd(0.3, -0.4)), 5e-3);
  EXPECT_LT(std::abs(t_operator(g, 2.0) - 0.5), 5e-3);
  EXPECT_LT(std::abs(vekua_H(g, cd(-0.2, 0.5)) - cd(-0.2, -0.5)), 5e-3);
}

TEST(Potential, GaussianClosedForms) {
  const double a = 8.0;
  const auto g = gaussian(a, 2.0, 1.0 / 128);
  const PotentialField f{g};
  for (cd z : {cd(0.1, 0.05), cd(0.3, -0.2), cd(-0.6, 0.4), cd(1.2, 0.3), cd(0.0, 2.5)}) {
    EXPECT_NEAR(newtonian_potential(f, z), oracle::gaussian_potential(a, z), 1e-4) << z;
    EXPECT_LT(std::abs(t_operator(g, z) - oracle::gaussian_t(a, z)), 1e-3) << z;
  }
}

TEST(Potential, KernelModesAgreeAwayFromSupport) {
  const auto g = gaussian(8.0, 2.0, 1.0 / 64);
  const PotentialField exact{g, KernelMode::cell_exact};
  const PotentialField mid{g, KernelMode::midpoint};
  for (cd z : {cd(2.0, 0.0), cd(0.0, -2.5)}) {
    EXPECT_NEAR(newtonian_potential(exact, z), newtonian_potential(mid, z), 1e-5);
    EXPECT_LT(std::abs(t_operator(g, z, KernelMode::cell_exact) - t_operator(g, z, KernelMode::midpoint)), 1e-5);
  }
}

TEST(Potential, HEqualsTOperator) {
  const auto g = gaussian(20.0, 1.25, 1.0 / 64);
  for (cd z : {cd(0.1, 0.1), cd(0.5, -0.3), cd(2.0, 1.0)}) EXPECT_EQ(vekua_H(g, z), t_operator(g, z));
}

TEST(Potential, DzOfTAgreesWithDifferences) {
  const auto g = gaussian(8.0, 2.0, 1.0 / 128);
  const double d = 1e-3;
  for (cd z : {cd(0.2, 0.1), cd(-0.4, 0.3), cd(1.3, -0.2)}) {
    const cd fd = 0.5 * ((t_operator(g, z + d) - t_operator(g, z - d)) / (2 * d) -
                         cd(0, 1) * (t_operator(g, z + cd(0, d)) - t_operator(g, z - cd(0, d))) / (2 * d));
    EXPECT_LT(std::abs(t_operator_dz(g, z) - fd), 2e-2) << z;
  }
}

TEST(LaplacianResidual, ZeroAndGaussian) {
  const PotentialField zero{GridSource::zero(cd(-1, -1), cd(1, 1), 1.0 / 32)};
  const std::vector<cd> probes{cd(0.0), cd(0.2, 0.1)};
  const auto rz = laplacian_residual(zero, probes);
  EXPECT_LE(rz.max_abs_error, 1e-12);
  const PotentialField f{gaussian(8.0, 2.0, 1.0 / 128)};
  const auto rep = laplacian_residual(f, center_probes(f.source, 0.5, 8));
  EXPECT_GT(rep.probes, 10u);
  EXPECT_LE(rep.max_rel_error, 1e-2);
}

TEST(LaplacianResidual, SecondOrderInH) {
  double prev = 0.0;
  for (double h : {1.0 / 64, 1.0 / 128}) {
    const PotentialField f{gaussian(8.0, 2.0, h)};
    const double e = laplacian_residual(f, center_probes(f.source, 0.5, 8)).max_abs_error;
    if (prev > 0.0) {
      EXPECT_GT(prev / e, 3.0);
    }
    prev = e;
  }
}

TEST(LaplacianResidual, UnitDiskInterior) {
  const PotentialField f{unit_disk(1.0 / 128)};
  const auto rep = laplacian_residual(f, center_probes(f.source, 0.8, 16));
  EXPECT_LE(rep.max_abs_error, 1e-2);
}

TEST(LaplacianResidual, RejectsProbeNearEdge) {
  const PotentialField f{gaussian(8.0, 2.0, 1.0 / 32)};
  const std::vector<cd> probes{cd(1.99, 0.0)};
  EXPECT_THROW(laplacian_residual(f, probes), Error);
}

TEST(Batch, SerialAndParallelAgree) {
  const auto g = gaussian(20.0, 1.25, 1.0 / 64);
  const PotentialField f{g};
  std::vector<cd> pts;
  for (int k = 0; k < 97; ++k) pts.push_back(std::polar(0.02 * k, 0.7 * k));
  const auto ns = newtonian_potential_batch(f, pts, Execution::serial);
  const auto np = newtonian_potential_batch(f, pts, Execution::parallel);
  const auto ts = t_operator_batch(g, pts, KernelMode::cell_exact, Execution::serial);
  const auto tp = t_operator_batch(g, pts, KernelMode::cell_exact, Execution::parallel);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    EXPECT_EQ(ns[k], np[k]);
    EXPECT_EQ(ts[k], tp[k]);
    EXPECT_EQ(ns[k], newtonian_potential(f, pts[k]));
  }
}

TEST(Potential, LinearInSource) {
  const auto g1 = gaussian(8.0, 2.0, 1.0 / 64);
  const auto g2 = GridSource::sample([](cd z) { return std::exp(-20.0 * std::norm(z - cd(0.3, 0.0))); },
                                     cd(-2.0, -2.0), cd(2.0, 2.0), 1.0 / 64);
  const auto sum = g1.combined(2.0, g2, -3.0);
  for (cd z : {cd(0.1, 0.2), cd(-0.5, 0.5), cd(2.0, 0.0)}) {
    const cd lhs = t_operator(sum, z);
    const cd rhs = 2.0 * t_operator(g1, z) - 3.0 * t_operator(g2, z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  }
}
