#include "rbvp/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbvp/error.hpp"

namespace rbvp {
namespace {

const char* kModule = "poincare";

bool unit_disk(const ConformalMap& map) {
  return map.kind() == MapKind::identity && std::abs(map.length() - kTwoPi) < 1e-12;
}

Analytic map_derivative(std::shared_ptr<const ConformalMap> m) {
  return Analytic([m](cd z) { return m->derivative(z); },
                  [m](cd z) {
                    const double d = 1e-6;
                    return (m->derivative(z + d) - m->derivative(z - d)) / (2.0 * d);
                  });
}

double boundary_parameter(const ConformalMap& map, double theta) {
  return unit_disk(map) ? wrap_parameter(theta, kTwoPi) : map.arclength(theta);
}

}  // namespace

// ---------------------------------------------------------------------------

NormalField inner_normal(const ConformalMap& map) {
  const std::size_t n = map.grid_size();
  const double length = map.length();
  std::vector<cd> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = length * static_cast<double>(j) / static_cast<double>(n);
    const double theta = unit_disk(map) ? s : map.angle_at(s);
    const cd zeta = std::polar(1.0, theta);
    if (!(std::abs(map.derivative(zeta)) > 1e-10)) {
      throw Error(kModule, "degenerate boundary tangent");
    }
    cd nrm = map.inner_normal_at_angle(theta);
    const cd probe = map(zeta) + 1e-6 * length * nrm;
    const bool in = map.exterior()                    ? std::abs(probe) > 1.0
                    : map.kind() == MapKind::identity ? std::abs(map.inverse(probe)) < 1.0
                                                      : std::abs(map.inverse(probe)) < 1.0 - 1e-12;
    if (!in) nrm = -nrm;
    v[j] = nrm;
  }
  return {BoundaryFunction::complex(std::move(v), Parameterization::natural, length)};
}

double NeumannCertificate::certified_fraction() const {
  if (anchors.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& a : anchors) {
    if (a.residual <= tolerance && a.consistency <= tolerance) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(anchors.size());
}

// ---------------------------------------------------------------------------

PoissonSolution::PoissonSolution(GeneralizedSolution field, std::optional<GridSource> G,
                                 UnimodularField direction)
    : field_(std::move(field)), direction_(std::move(direction)) {
  if (G && !G->empty()) source_ = std::move(G);
  map_ = field_->map;
  disk_integrand_ = unit_disk(*map_) ? field_->disk_analytic
                                     : field_->disk_analytic * map_derivative(map_);
  homogeneous_params = field_->homogeneous_params;
  warnings = field_->warnings;
}

PoissonSolution PoissonSolution::exterior(std::function<cd(cd)> antiderivative,
                                          std::function<cd(cd)> derivative,
                                          std::optional<GridSource> G,
                                          UnimodularField direction) {
  PoissonSolution u;
  u.exterior_ = true;
  u.ext_f_ = std::move(antiderivative);
  u.ext_df_ = std::move(derivative);
  if (G && !G->empty()) u.source_ = std::move(G);
  u.map_ = std::make_shared<ConformalMap>(ConformalMap::moebius_to_exterior());
  u.direction_ = std::move(direction);
  return u;
}

bool PoissonSolution::inside(cd w) const {
  if (exterior_) return std::abs(w) > 1.0;
  if (map_->kind() == MapKind::identity) return std::abs(map_->inverse(w)) < 1.0;
  const cd z = map_->inverse(w);
  return std::abs(z) < 1.0 && std::abs((*map_)(z) - w) < 1e-9;
}

cd PoissonSolution::antiderivative(cd w) const {
  if (exterior_) return ext_f_(w);
  const cd z = unit_disk(*map_) ? w : map_->inverse(w);
  return radial_antiderivative(disk_integrand_, z).value;
}

cd PoissonSolution::analytic_derivative(cd w) const {
  return exterior_ ? ext_df_(w) : field_->analytic_part(w);
}

double PoissonSolution::potential(cd w) const {
  return source_ ? newtonian_potential({*source_, KernelMode::cell_exact}, w) : 0.0;
}

cd PoissonSolution::potential_gradient(cd w) const {
  return source_ ? 0.5 * t_operator(*source_, w) : cd(0.0);
}

double PoissonSolution::operator()(cd w) const { return antiderivative(w).real() + potential(w); }

std::vector<double> PoissonSolution::along(const std::vector<cd>& points) const {
  std::vector<double> out(points.size());
  if (points.empty()) return out;
  if (exterior_) {
    for (std::size_t k = 0; k < points.size(); ++k) out[k] = (*this)(points[k]);
    return out;
  }
  const bool disk = unit_disk(*map_);
  cd prev = disk ? points[0] : map_->inverse(points[0]);
  cd f = radial_antiderivative(disk_integrand_, prev).value;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const cd z = disk ? points[k] : map_->inverse(points[k]);
    if (k > 0) {
      bool warn = false;
      f += segment_integral([this](cd t) { return disk_integrand_(t); }, prev, z, 1e-11, &warn);
    }
    prev = z;
    out[k] = f.real() + potential(points[k]);
  }
  return out;
}

double PoissonSolution::directional_derivative(cd nu, cd w) const {
  if (!inside(w)) throw Error(kModule, "directional derivative requested outside the domain");
  return (nu * conj_gradient(w)).real();
}

// ---------------------------------------------------------------------------

PoissonSolution solve_poincare(const ConformalMap& map, const UnimodularField& nu,
                               const BoundaryFunction& phi, const std::optional<GridSource>& G,
                               const PoincareOptions& options) {
  std::vector<cd> lam(nu.size());
  for (std::size_t j = 0; j < lam.size(); ++j) {
    lam[j] = (options.flip_lambda_sign ? -1.0 : 1.0) * std::conj(nu.base()[j]);
  }
  const auto lambda = UnimodularField::normalized(nu.base().with_samples(std::move(lam), true));
  std::optional<GridSource> half;
  if (G && !G->empty()) half = G->scaled(0.5);
  auto field = solve_hilbert_generalized(lambda, phi, half, map, options.hilbert);
  return PoissonSolution(std::move(field), G, nu);
}

std::vector<double> default_line_gaps(int levels) {
  std::vector<double> g;
  for (int k = 0; k < levels; ++k) g.push_back(0.1 * std::pow(4.0, -k));
  return g;
}

TraceEstimate boundary_trace_along_line(const PoissonSolution& U, cd zeta, cd nu,
                                        const std::vector<double>& gaps) {
  if (U.is_exterior()) throw Error(kModule, "line traces are implemented for interior domains");
  const ConformalMap& map = U.map();
  const double theta = unit_disk(map) ? std::arg(zeta) : std::arg(map.inverse(zeta));
  const cd n = map.inner_normal_at_angle(theta);
  if (!((n * std::conj(nu)).real() > 1e-12)) {
    throw Error(kModule, "line direction is not transversal into the domain");
  }
  std::vector<cd> pts;
  for (double t : gaps) pts.push_back(zeta + t * nu);
  TraceEstimate out;
  out.samples = U.along(pts);
  std::vector<cd> seq(out.samples.begin(), out.samples.end());
  const auto lim = sequence_limit(std::move(seq));
  out.value = lim.estimate.real();
  out.converged = lim.converged;
  out.diverged = lim.diverged;
  return out;
}

NeumannCertificate certify_neumann(const PoissonSolution& U, const BoundaryFunction& phi,
                                   const std::vector<double>& anchors, double tolerance) {
  NeumannCertificate cert;
  cert.tolerance = tolerance;
  cert.anchors.resize(anchors.size());
  const ConformalMap& map = U.map();
  const auto gaps = default_line_gaps();
  const auto count = static_cast<std::ptrdiff_t>(anchors.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    auto& a = cert.anchors[static_cast<std::size_t>(k)];
    a.theta = anchors[static_cast<std::size_t>(k)];
    const cd zeta = map.boundary_point(a.theta);
    const cd n = map.inner_normal_at_angle(a.theta);
    const double target = phi.real_at(boundary_parameter(map, a.theta));

    std::vector<cd> pts;
    for (double t : gaps) pts.push_back(zeta + t * n);
    const auto vals = U.along(pts);
    const auto trace = sequence_limit(std::vector<cd>(vals.begin(), vals.end()));
    a.trace = trace.estimate.real();
    a.trace_converged = trace.converged;

    std::vector<cd> slopes;
    for (std::size_t j = 0; j + 1 < gaps.size(); ++j) {
      slopes.emplace_back((vals[j] - vals[j + 1]) / (gaps[j] - gaps[j + 1]));
    }
    a.difference_quotient = sequence_limit(std::move(slopes)).estimate.real();

    const auto path = StolzPath::standard(std::polar(1.0, a.theta));
    const auto ang = sample_nontangential(
        [&](cd z) { return cd((n * U.conj_gradient(map(z))).real()); }, path);
    a.angular_limit = ang.estimate.real();
    a.angular_converged = ang.converged;
    a.residual = ang.diverged ? std::numeric_limits<double>::infinity()
                              : std::abs(a.angular_limit - target);
    a.consistency = std::abs(a.difference_quotient - a.angular_limit);
    if (!std::isfinite(a.consistency)) a.consistency = std::numeric_limits<double>::infinity();
  }
  return cert;
}

PoissonSolution solve_neumann(const ConformalMap& map, const BoundaryFunction& phi,
                              const std::optional<GridSource>& G, const NeumannOptions& options) {
  const auto nu = inner_normal(map).field();
  PoissonSolution U = solve_poincare(map, nu, phi, G, options.poincare);
  U.certificate = certify_neumann(U, phi, uniform_anchors(options.anchors, options.seed),
                                  options.tolerance);
  return U;
}

std::vector<AnchorResidual> poincare_residuals(const PoissonSolution& U,
                                               const BoundaryFunction& phi,
                                               const std::vector<double>& anchors) {
  if (U.is_exterior()) throw Error(kModule, "poincare_residuals expects an interior solution");
  std::vector<AnchorResidual> out(anchors.size());
  const ConformalMap& map = U.map();
  const auto count = static_cast<std::ptrdiff_t>(anchors.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    auto& r = out[static_cast<std::size_t>(k)];
    r.theta = anchors[static_cast<std::size_t>(k)];
    const double s = boundary_parameter(map, r.theta);
    const cd nu = U.direction()(s);
    const double target = phi.real_at(s);
    const auto sample = sample_nontangential(
        [&](cd z) { return cd((nu * U.conj_gradient(map(z))).real()); },
        StolzPath::standard(std::polar(1.0, r.theta)));
    r.converged = sample.converged;
    r.residual = sample.diverged ? std::numeric_limits<double>::infinity()
                                 : std::abs(sample.estimate.real() - target);
  }
  return out;
}

// ---------------------------------------------------------------------------

PoissonSolution solve_poincare_exterior(const UnimodularField& nu, const BoundaryFunction& phi,
                                        const std::optional<GridSource>& G,
                                        const std::vector<double>& avoid) {
  if (phi.is_complex()) throw Error(kModule, "phi must be real");
  if (std::abs(phi.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "exterior data must be sampled over the unit circle");
  }
  const std::size_t n = phi.size();
  const bool has_source = G && !G->empty();
  std::vector<cd> lam(n);
  std::vector<double> data(n);
  std::vector<cd> hv(n, cd(0.0));
  if (has_source) {
    std::vector<double> thetas(n);
    for (std::size_t j = 0; j < n; ++j) thetas[j] = -phi.node(j);
    hv = source_boundary_trace(*G, ConformalMap::identity(1.0), thetas);
    for (auto& v : hv) v *= 0.5;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double s = wrap_parameter(-phi.node(j), kTwoPi);
    const cd v = nu(s);
    lam[j] = std::conj(v);
    data[j] = phi.real_at(s) - (v * hv[j]).real();
  }
  const auto lambda_u = UnimodularField::normalized(BoundaryFunction::complex(std::move(lam)));
  const auto reduced =
      BoundaryFunction::real(std::move(data), Parameterization::angle, kTwoPi, phi.interpolation());
  const GeneralizedSolution B = solve_hilbert_disk(lambda_u, reduced);

  Analytic disk_a = B.disk_analytic;
  const cd residue = disk_a.derivative(0.0);
  if (std::abs(residue.imag()) > 1e-14) {
    NullOptions opt;
    for (double t : avoid) opt.avoid.push_back(wrap_parameter(-t, kTwoPi));
    auto q = std::make_shared<NullFactor>(1, opt);
    const Analytic rotation = hilbert_factor(lambda_u).rotation;
    const cd e = cd(0.0, -residue.imag()) / rotation(0.0);
    const Analytic uq([q](cd u) { return u * (*q)(u); },
                      [q](cd u) { return (*q)(u) + u * q->derivative(u); });
    disk_a = disk_a + (rotation * uq).scaled(e);
  }
  const double real_residue = residue.real();
  const Analytic reduced_a = disk_a + Analytic::monomial(1).scaled(-real_residue);
  auto anti = std::make_shared<ExteriorAntiderivative>([reduced_a](cd u) { return reduced_a(u); });
  auto F = [anti, real_residue](cd z) { return (*anti)(z) + real_residue * std::log(z); };
  auto dF = [disk_a](cd z) { return disk_a(1.0 / z); };
  auto U = PoissonSolution::exterior(F, dF, G, nu);
  U.homogeneous_params = B.homogeneous_params;
  U.warnings = B.warnings;
  return U;
}

}  // namespace rbvp
