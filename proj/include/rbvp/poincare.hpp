#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbvp/analytic.hpp"
#include "rbvp/conformal.hpp"
#include "rbvp/disk_harmonic.hpp"
#include "rbvp/hilbert.hpp"
#include "rbvp/potential.hpp"

namespace rbvp {

/// Unit normal into the domain, sampled over the natural parameter.
struct NormalField {
  BoundaryFunction normal;
  UnimodularField field() const { return UnimodularField::normalized(normal); }
};

NormalField inner_normal(const ConformalMap& map);

/// Per-anchor check of the three normal-derivative statements.
struct NeumannAnchor {
  double theta = 0.0;
  double trace = 0.0;
  bool trace_converged = false;
  double difference_quotient = 0.0;
  double angular_limit = 0.0;
  bool angular_converged = false;
  double residual = 0.0;
  double consistency = 0.0;
};

struct NeumannCertificate {
  std::vector<NeumannAnchor> anchors;
  double tolerance = 2e-2;
  /// Fraction of anchors with residual and consistency within tolerance.
  double certified_fraction() const;
};

/// U = Re F + N_G with F' = A, where h = A + H solves the Hilbert problem
/// Re(nu h) = phi and H = conj(grad N_G).
class PoissonSolution {
 public:
  PoissonSolution(GeneralizedSolution field, std::optional<GridSource> G, UnimodularField direction);

  /// Exterior representation: F given directly on |z| > 1.
  static PoissonSolution exterior(std::function<cd(cd)> antiderivative,
                                  std::function<cd(cd)> derivative, std::optional<GridSource> G,
                                  UnimodularField direction);

  double operator()(cd w) const;
  /// U at successive points; F is accumulated segment by segment.
  std::vector<double> along(const std::vector<cd>& points) const;
  cd antiderivative(cd w) const;
  cd analytic_derivative(cd w) const;
  double potential(cd w) const;
  /// conj(grad N_G).
  cd potential_gradient(cd w) const;
  cd conj_gradient(cd w) const { return analytic_derivative(w) + potential_gradient(w); }
  cd gradient(cd w) const { return std::conj(conj_gradient(w)); }
  double directional_derivative(cd nu, cd w) const;

  bool is_exterior() const noexcept { return exterior_; }
  const ConformalMap& map() const { return *map_; }
  const UnimodularField& direction() const noexcept { return direction_; }
  const std::optional<GridSource>& source() const noexcept { return source_; }
  const std::optional<GeneralizedSolution>& field() const noexcept { return field_; }

  std::vector<cd> homogeneous_params;
  std::vector<std::string> warnings;
  std::optional<NeumannCertificate> certificate;

 private:
  PoissonSolution() = default;
  bool inside(cd w) const;

  std::optional<GeneralizedSolution> field_;
  Analytic disk_integrand_;
  std::function<cd(cd)> ext_f_;
  std::function<cd(cd)> ext_df_;
  std::optional<GridSource> source_;
  std::shared_ptr<const ConformalMap> map_;
  UnimodularField direction_ = UnimodularField::constant(1.0, 16);
  bool exterior_ = false;
};

struct PoincareOptions {
  HilbertOptions hilbert;
  /// Negative control: solve with -conj(nu) in place of conj(nu).
  bool flip_lambda_sign = false;
};

PoissonSolution solve_poincare(const ConformalMap& map, const UnimodularField& nu,
                               const BoundaryFunction& phi, const std::optional<GridSource>& G,
                               const PoincareOptions& options = {});

struct NeumannOptions {
  PoincareOptions poincare;
  std::size_t anchors = 64;
  std::uint64_t seed = 0;
  double tolerance = 2e-2;
};

/// Poincare problem with the inner normal, plus the per-anchor certificate.
PoissonSolution solve_neumann(const ConformalMap& map, const BoundaryFunction& phi,
                              const std::optional<GridSource>& G,
                              const NeumannOptions& options = {});

NeumannCertificate certify_neumann(const PoissonSolution& U, const BoundaryFunction& phi,
                                   const std::vector<double>& anchors, double tolerance = 2e-2);

/// Finite trace of U along the line zeta + t nu (t in gaps, into the domain).
struct TraceEstimate {
  double value = 0.0;
  bool converged = false;
  bool diverged = false;
  std::vector<double> samples;
};
TraceEstimate boundary_trace_along_line(const PoissonSolution& U, cd zeta, cd nu,
                                        const std::vector<double>& gaps);

std::vector<double> default_line_gaps(int levels = 8);

/// Stolz residuals |dU/dnu - phi| at disk anchors for an interior solution.
std::vector<AnchorResidual> poincare_residuals(const PoissonSolution& U,
                                               const BoundaryFunction& phi,
                                               const std::vector<double>& anchors);

/// Exterior Poincare problem on |z| > 1: Re(nu (A + H)) -> phi with nu and phi
/// over the angle of the unit circle. A real residue of A is kept as a
/// log|z| term; an imaginary one is removed with a null addition.
PoissonSolution solve_poincare_exterior(const UnimodularField& nu, const BoundaryFunction& phi,
                                        const std::optional<GridSource>& G,
                                        const std::vector<double>& avoid = {});

}  // namespace rbvp
