#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rbvp/analytic.hpp"
#include "rbvp/boundary_data.hpp"
#include "rbvp/hilbert.hpp"
#include "rbvp/poincare.hpp"
#include "rbvp/potential.hpp"

namespace rbvp {

/// Coefficients of f+ = A f- + B. Only A = 1 is supported.
struct JumpData {
  BoundaryFunction A;
  BoundaryFunction B;
  std::optional<ShiftMap> beta;
  std::optional<ShiftMap> beta_star;

  static JumpData jump(const BoundaryFunction& B);
  void validate() const;
};

/// f+ on the unit disk and f- on |z| > 1 (stored on the disk through 1/z),
/// both of the form analytic part + T_g with the same source.
struct SolutionPair {
  GeneralizedSolution plus;
  GeneralizedSolution minus;
  /// Value of the analytic part of f- at infinity (after removing linear growth).
  cd minus_at_infinity{};
  /// Coefficient of z in the analytic part of f- (nonzero only for mixed problems).
  cd minus_linear{};
  std::vector<std::string> notes;

  cd f_plus(cd z) const { return plus(z); }
  cd f_minus(cd z) const { return minus(z); }
};

SolutionPair solve_jump(const BoundaryFunction& B, const std::optional<GridSource>& g);

/// Certification options shared by the anchored solvers: anchors (disk
/// angles) are kept away from the exceptional arcs of the null factors.
struct RelationOptions {
  std::vector<double> anchors;
  NullOptions nulls;
};

SolutionPair solve_riemann_shift(const BoundaryFunction& B, const ShiftMap& beta,
                                 const std::optional<GridSource>& g,
                                 const std::optional<BoundaryFunction>& psi = std::nullopt,
                                 const RelationOptions& options = {});

SolutionPair solve_nonlinear(const CaratheodoryMap& phi_c, const ShiftMap& beta,
                             const ShiftMap& beta_star, const std::optional<GridSource>& g,
                             const BoundaryFunction& psi, const RelationOptions& options = {});

/// Mixed problem: the nu-derivative of f- tends to a on the circle and
/// f+(beta) = phi_c(zeta, [df-/dnu](beta*)).
struct MixedSolution {
  SolutionPair pair;
  UnimodularField nu = UnimodularField::constant(1.0, 16);
  /// (A-)' on |z| > 1.
  std::function<cd(cd)> minus_derivative;
  /// Boundary values a + dH/dnu used to build f+.
  BoundaryFunction derivative_trace = BoundaryFunction::real(std::vector<double>(16, 0.0));

  /// d f- / d nu at an exterior point for the direction nu.
  cd minus_normal_derivative(cd z, cd direction) const;
};

MixedSolution solve_mixed(const CaratheodoryMap& phi_c, const UnimodularField& nu,
                          const ShiftMap& beta, const ShiftMap& beta_star,
                          const std::optional<GridSource>& g, const BoundaryFunction& a,
                          const RelationOptions& options = {});

/// d H / d nu = nu dH/dz + conj(nu) dH/dzbar for H = T_g.
cd potential_directional_derivative(const GridSource& g, cd z, cd nu);

struct PoissonPair {
  PoissonSolution plus;
  PoissonSolution minus;
};

/// [dU/dmu]+ = phi_c(zeta, [dU/dnu]-) with [dU/dnu]- = psi.
PoissonPair solve_riemann_poincare(const CaratheodoryMap& phi_c, const UnimodularField& mu,
                                   const UnimodularField& nu, const std::optional<GridSource>& G,
                                   const BoundaryFunction& psi, const RelationOptions& options = {});

// ---------------------------------------------------------------------------
// Anchored certification

struct RelationResidual {
  double theta = 0.0;
  cd plus_limit{};
  cd minus_limit{};
  double residual = 0.0;
  bool converged = false;
};

/// Stolz limit of fn at e^{i theta} from inside (exterior = false) or outside.
NontangentialSample sided_limit(const std::function<cd(cd)>& fn, double theta, bool exterior);

/// |f+(r zeta) - f-(zeta / r) - B(zeta)| at a fixed r.
std::vector<RelationResidual> paired_jump_residuals(const SolutionPair& pair,
                                                    const BoundaryFunction& B,
                                                    const std::vector<double>& anchors,
                                                    double r = 1.0 - 1e-3);

/// |L+(beta(zeta)) - L-(zeta) - B(zeta)| with Stolz limits.
std::vector<RelationResidual> shift_residuals(const SolutionPair& pair, const BoundaryFunction& B,
                                              const ShiftMap& beta,
                                              const std::vector<double>& anchors);

/// |L+(beta(zeta)) - phi_c(zeta, L-(beta*(zeta)))|.
std::vector<RelationResidual> nonlinear_residuals(const SolutionPair& pair,
                                                  const CaratheodoryMap& phi_c,
                                                  const ShiftMap& beta, const ShiftMap& beta_star,
                                                  const std::vector<double>& anchors);

/// |L+(beta(zeta)) - phi_c(zeta, [df-/dnu](beta*(zeta)))| with the exterior
/// limit of the derivative.
std::vector<RelationResidual> mixed_residuals(const MixedSolution& sol,
                                              const CaratheodoryMap& phi_c, const ShiftMap& beta,
                                              const ShiftMap& beta_star,
                                              const std::vector<double>& anchors);

/// |[dU/dmu]+ - phi_c(zeta, [dU/dnu]-)| with both Stolz limits.
std::vector<RelationResidual> riemann_poincare_residuals(const PoissonPair& pair,
                                                         const CaratheodoryMap& phi_c,
                                                         const std::vector<double>& anchors);

double max_residual(const std::vector<RelationResidual>& r);
double median_residual(const std::vector<RelationResidual>& r);

}  // namespace rbvp
