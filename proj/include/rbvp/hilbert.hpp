#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbvp/analytic.hpp"
#include "rbvp/boundary_data.hpp"
#include "rbvp/conformal.hpp"
#include "rbvp/potential.hpp"

namespace rbvp {

/// h = A + H on a domain D = f(disk): A analytic (stored as A o f on the disk),
/// H = T_g for the source g (absent when g = 0).
struct GeneralizedSolution {
  Analytic disk_analytic;
  std::optional<GridSource> source;
  std::shared_ptr<const ConformalMap> map;
  std::vector<cd> homogeneous_params;
  std::vector<std::string> warnings;

  cd operator()(cd w) const { return analytic_part(w) + potential_part(w); }
  cd analytic_part(cd w) const;
  /// dA/dw at a domain point.
  cd analytic_derivative(cd w) const;
  cd potential_part(cd w) const;
  /// h(f(z)) for z in the unit disk.
  cd at_disk(cd z) const;
  /// Disk preimage of a domain point.
  cd to_disk(cd w) const;
  /// Adds c * member to the analytic part (members live on the same disk).
  GeneralizedSolution with_member(const Analytic& member, cd c) const;
};

struct HilbertOptions {
  /// Imaginary constant of the particular solution (real).
  double c0 = 0.0;
  /// Real coefficients of Cantor-type null additions (members 2, 3, ...).
  std::vector<double> null_coefficients;
  /// exp(conjugate of the branch) is clamped to [1/clamp, clamp].
  double clamp = 1e8;
};

/// T_g at the boundary points f(e^{i theta}). Where the support reaches the
/// boundary the value is extrapolated quadratically from points at 3h, 6h and
/// 9h along the inner normal, which avoids the O(h) error of the cell band.
std::vector<cd> source_boundary_trace(const GridSource& g, const ConformalMap& map,
                                      const std::vector<double>& thetas);

/// Canonical factor of a unimodular field: exp(i S[alpha]) times z^kappa for
/// positive winding kappa, and the boundary weight exp(conj alpha).
struct HilbertFactor {
  Analytic rotation;
  std::vector<double> weight;
  int winding = 0;
  bool clamped = false;
};
HilbertFactor hilbert_factor(const UnimodularField& lambda, double clamp = 1e8);

/// Analytic f on the disk with Re(conj(lambda) f) -> phi along Stolz paths at
/// continuity points of the data.
GeneralizedSolution solve_hilbert_disk(const UnimodularField& lambda, const BoundaryFunction& phi,
                                       const HilbertOptions& options = {});

/// Hilbert problem for h = A + T_g on the image of the map. lambda and phi are
/// sampled over the natural parameter of the boundary.
GeneralizedSolution solve_hilbert_generalized(const UnimodularField& lambda,
                                              const BoundaryFunction& phi,
                                              const std::optional<GridSource>& g,
                                              const ConformalMap& map,
                                              const HilbertOptions& options = {});

GeneralizedSolution solve_dirichlet_generalized(const BoundaryFunction& phi,
                                                const std::optional<GridSource>& g,
                                                const ConformalMap& map,
                                                const HilbertOptions& options = {});

/// A Cantor staircase supported on [start, start + width] inside [0, 2pi].
struct CantorArc {
  double start = 0.0;
  double width = kTwoPi;
  double primitive(double t) const;
  /// Midpoints of removed intervals of generations 1..generation on this arc.
  std::vector<double> gap_midpoints(int generation) const;
};

struct HomogeneousMember {
  Analytic function;
  /// Null measure for members built from staircases.
  std::optional<CantorArc> arc;
};

struct HomogeneousFamily {
  std::vector<HomogeneousMember> members;
  std::vector<double> singular_values;
  std::vector<cd> probes;
};

/// k null solutions of Re(conj(lambda) f) = 0 with a rank certificate.
HomogeneousFamily homogeneous_family(const UnimodularField& lambda, std::size_t k);

/// Stolz-sampled boundary residual |Re(conj(lambda) h) - phi| for a disk
/// solution (identity map) at the given anchors.
struct AnchorResidual {
  double theta = 0.0;
  double residual = 0.0;
  bool converged = false;
};
std::vector<AnchorResidual> hilbert_residuals(const GeneralizedSolution& h,
                                              const UnimodularField& lambda,
                                              const BoundaryFunction& phi,
                                              const std::vector<double>& anchors);

double median_residual(const std::vector<AnchorResidual>& r);

}  // namespace rbvp
