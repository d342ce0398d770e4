#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rbvp/boundary_data.hpp"

namespace rbvp {

struct HarmonicValue {
  double value = 0.0;
  bool under_resolved = false;
};

struct AnalyticValue {
  cd value{};
  bool under_resolved = false;
};

/// Poisson and Schwarz integrals of real angle-parameterized data.
///
/// When (1 - |z|) >= 4 * 2pi / N the trapezoid rule is used. Closer to the
/// circle the declared interpolant is integrated directly (exact arcs for
/// `nearest`, graded Gauss panels for `linear`) and the result is flagged.
class SchwarzIntegral {
 public:
  explicit SchwarzIntegral(const BoundaryFunction& phi);

  HarmonicValue poisson(cd z) const;
  AnalyticValue schwarz(cd z) const;
  AnalyticValue derivative(cd z) const;
  bool resolved(cd z) const noexcept;
  std::size_t size() const noexcept { return values_.size(); }
  double mean() const noexcept { return mean_; }

 private:
  AnalyticValue integrate(cd z, bool derivative) const;

  std::vector<double> values_;
  std::vector<cd> nodes_;
  Interpolation interp_;
  double mean_ = 0.0;
};

HarmonicValue poisson_integral(const BoundaryFunction& phi, cd z);
AnalyticValue schwarz_operator(const BoundaryFunction& phi, cd z);

/// Spectral conjugate (multiplier -i sign n). Nyquist content is dropped.
BoundaryFunction conjugate_function(const BoundaryFunction& phi);

enum class StieltjesMode { stieltjes_sum, luzin_kernel };

/// Poisson-Stieltjes integral (1/2pi) int P_r(theta - t) dPhi(t) of a
/// continuous primitive on [0, 2pi].
///
/// Both modes share a uniform partition of `cells` intervals, graded towards
/// arg z when the kernel is narrower than the partition. The sum mode places
/// the kernel at cell midpoints; the kernel mode integrates by parts and keeps
/// the endpoint term (1/2pi) P_r(theta) (Phi(2pi) - Phi(0)).
class PoissonStieltjes {
 public:
  PoissonStieltjes(std::function<double(double)> primitive, std::size_t cells);
  static PoissonStieltjes from_primitive(const ContinuousPrimitive& phi, std::size_t refine = 16);

  HarmonicValue operator()(cd z, StieltjesMode mode = StieltjesMode::stieltjes_sum) const;
  /// (1/2pi) int (zeta + z) / (zeta - z) dPhi, real part equal to the sum mode.
  /// With derivative = true the z-derivative of the same sum.
  AnalyticValue herglotz(cd z, bool derivative = false) const;
  std::size_t cells() const noexcept { return nodes_.size() - 1; }

 private:
  std::function<double(double)> primitive_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

HarmonicValue poisson_stieltjes(const ContinuousPrimitive& phi, cd z, StieltjesMode mode,
                                std::size_t refine = 16);

/// Cantor staircase t -> C(t / 2pi) as a primitive on [0, 2pi].
double cantor_primitive(double t);

/// Poisson-Stieltjes integral of the Cantor measure (mass 1), shared instance.
double null_harmonic_cantor(cd z);
const PoissonStieltjes& cantor_field();

/// Midpoints of the removed intervals of generation 1..generation, scaled to
/// [0, 2pi].
std::vector<double> cantor_gap_midpoints(int generation);

/// Harmonic extension of boundary data (absolutely continuous or Stieltjes).
class HarmonicRep {
 public:
  explicit HarmonicRep(const BoundaryFunction& data);
  explicit HarmonicRep(PoissonStieltjes stieltjes);
  double operator()(cd z) const;

 private:
  std::optional<SchwarzIntegral> data_;
  std::optional<PoissonStieltjes> stieltjes_;
};

struct StolzPath {
  cd anchor{1.0};
  double aperture = 0.5;
  std::vector<double> gaps;
  double ray_offset = 0.0;

  static StolzPath standard(cd anchor, double aperture = 0.5, double ray_offset = 0.0,
                            int levels = 8);
  std::vector<cd> points() const;
};

struct NontangentialSample {
  std::vector<cd> values;
  cd estimate{};
  bool converged = false;
  bool diverged = false;
};

NontangentialSample sample_nontangential(const std::function<cd(cd)>& field,
                                         const StolzPath& path, double tol = 1e-3);

/// Limit estimate of a sequence sampled at geometrically shrinking gaps.
NontangentialSample sequence_limit(std::vector<cd> values, double tol = 1e-3);

/// Mirror a Stolz path of the disk into |z| > 1 (z -> 1 / conj z).
std::vector<cd> exterior_points(const StolzPath& path);

/// `count` equally spaced angles with a seeded random offset.
std::vector<double> uniform_anchors(std::size_t count, std::uint64_t seed = 0);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_rule(std::size_t n);

}  // namespace rbvp
