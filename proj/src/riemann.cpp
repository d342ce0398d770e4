#include "rbvp/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "rbvp/error.hpp"

namespace rbvp {
namespace {

const char* kModule = "riemann";
constexpr double kMaxRoughness = 0.25;

void require_circle_data(const BoundaryFunction& d, const char* what) {
  if (d.parameterization() != Parameterization::angle || std::abs(d.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, std::string(what) + " must be sampled over the angle of the unit circle");
  }
  for (const cd& v : d.samples()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(kModule, std::string(what) + " has non-finite samples");
    }
  }
}

std::shared_ptr<const ConformalMap> disk_map() {
  static const auto m = std::make_shared<const ConformalMap>(ConformalMap::identity(1.0));
  return m;
}

std::shared_ptr<const ConformalMap> exterior_map() {
  static const auto m = std::make_shared<const ConformalMap>(ConformalMap::moebius_to_exterior());
  return m;
}

std::optional<GridSource> nonempty(const std::optional<GridSource>& g) {
  if (g && !g->empty()) return g;
  return std::nullopt;
}

/// T_g at the uniform boundary nodes of `like`.
std::vector<cd> boundary_source(const std::optional<GridSource>& g, const BoundaryFunction& like) {
  std::vector<cd> out(like.size(), cd(0.0));
  if (!g) return out;
  std::vector<double> thetas(like.size());
  for (std::size_t j = 0; j < thetas.size(); ++j) thetas[j] = like.node(j);
  return source_boundary_trace(*g, *disk_map(), thetas);
}

BoundaryFunction minus_samples(const BoundaryFunction& d, const std::vector<cd>& sub) {
  std::vector<cd> v(d.samples().begin(), d.samples().end());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= sub[j];
  return d.with_samples(std::move(v), true);
}

BoundaryFunction add_samples(const BoundaryFunction& a, const BoundaryFunction& b) {
  if (!a.same_grid(b)) throw Error(kModule, "boundary data on different grids");
  std::vector<cd> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] + b[j];
  return a.with_samples(std::move(v), true);
}

NullOptions with_avoid(NullOptions opt, const std::vector<double>& angles, int orientation,
                       const ShiftMap* shift) {
  opt.avoid.clear();
  for (double t : angles) {
    const double u = shift ? shift->forward(t) : t;
    opt.avoid.push_back(wrap_parameter(orientation * u, kTwoPi));
  }
  return opt;
}

GeneralizedSolution make_side(Analytic a, const std::optional<GridSource>& g, bool exterior) {
  GeneralizedSolution s;
  s.disk_analytic = std::move(a);
  s.source = g;
  s.map = exterior ? exterior_map() : disk_map();
  return s;
}

/// Complex Dirichlet problem on |z| > 1 solved on the disk through u = 1/z.
std::shared_ptr<ComplexDirichlet> exterior_dirichlet(const BoundaryFunction& data,
                                                     const NullOptions& opt) {
  return std::make_shared<ComplexDirichlet>(reflect_angle(data), opt);
}

Analytic disk_of(std::shared_ptr<ComplexDirichlet> d) {
  return Analytic([d](cd z) { return (*d)(z); }, [d](cd z) { return d->derivative(z); });
}

}  // namespace

// ---------------------------------------------------------------------------

JumpData JumpData::jump(const BoundaryFunction& B) {
  return {BoundaryFunction::complex(std::vector<cd>(B.size(), cd(1.0))), B, std::nullopt,
          std::nullopt};
}

void JumpData::validate() const {
  for (const cd& v : A.samples()) {
    if (std::abs(v - 1.0) > 1e-12) throw Error(kModule, "only A = 1 is supported");
  }
  require_circle_data(B, "B");
}

// ---------------------------------------------------------------------------

SolutionPair solve_jump(const BoundaryFunction& B, const std::optional<GridSource>& g) {
  require_circle_data(B, "B");
  const auto src = nonempty(g);
  SolutionPair out;
  out.plus = make_side(cauchy_inside(B), src, false);
  const Analytic reflected = cauchy_inside(reflect_angle(B));
  cd mean = 0.0;
  for (const cd& v : B.samples()) mean += v;
  mean /= static_cast<double>(B.size());
  out.minus = make_side((reflected + Analytic::constant(-mean)).scaled(-1.0), src, true);
  out.minus_at_infinity = 0.0;
  return out;
}

SolutionPair solve_riemann_shift(const BoundaryFunction& B, const ShiftMap& beta,
                                 const std::optional<GridSource>& g,
                                 const std::optional<BoundaryFunction>& psi,
                                 const RelationOptions& options) {
  require_circle_data(B, "B");
  const auto src = nonempty(g);
  const BoundaryFunction seed =
      psi ? *psi : BoundaryFunction::complex(std::vector<cd>(B.size(), cd(0.0)));
  require_circle_data(seed, "psi");
  const auto tg = boundary_source(src, B);
  const BoundaryFunction phi = apply_shift(add_samples(seed, B), beta, ShiftDirection::inverse);

  auto plus = std::make_shared<ComplexDirichlet>(
      minus_samples(phi, tg), with_avoid(options.nulls, options.anchors, 1, &beta));
  auto minus = exterior_dirichlet(minus_samples(seed, boundary_source(src, seed)),
                                  with_avoid(options.nulls, options.anchors, -1, nullptr));
  SolutionPair out;
  out.plus = make_side(disk_of(plus), src, false);
  out.minus = make_side(disk_of(minus), src, true);
  out.minus_at_infinity = (*minus)(0.0);
  out.notes.push_back("plus negative order " + std::to_string(plus->negative_order()));
  out.notes.push_back("minus negative order " + std::to_string(minus->negative_order()));
  return out;
}

SolutionPair solve_nonlinear(const CaratheodoryMap& phi_c, const ShiftMap& beta,
                             const ShiftMap& beta_star, const std::optional<GridSource>& g,
                             const BoundaryFunction& psi, const RelationOptions& options) {
  require_circle_data(psi, "psi");
  const auto src = nonempty(g);
  const auto tg = boundary_source(src, psi);
  const BoundaryFunction composed =
      compose_caratheodory(phi_c, apply_shift(psi, beta_star, ShiftDirection::forward));
  const BoundaryFunction plus_data = apply_shift(composed, beta, ShiftDirection::inverse);

  auto plus = std::make_shared<ComplexDirichlet>(
      minus_samples(plus_data, tg), with_avoid(options.nulls, options.anchors, 1, &beta));
  auto minus = exterior_dirichlet(minus_samples(psi, tg),
                                  with_avoid(options.nulls, options.anchors, -1, &beta_star));
  SolutionPair out;
  out.plus = make_side(disk_of(plus), src, false);
  out.minus = make_side(disk_of(minus), src, true);
  out.minus_at_infinity = (*minus)(0.0);
  return out;
}

// ---------------------------------------------------------------------------

cd potential_directional_derivative(const GridSource& g, cd z, cd nu) {
  return nu * t_operator_dz(g, z) + std::conj(nu) * g.value_at(z);
}

cd MixedSolution::minus_normal_derivative(cd z, cd direction) const {
  cd d = direction * minus_derivative(z);
  if (pair.minus.source) d += potential_directional_derivative(*pair.minus.source, z, direction);
  return d;
}

MixedSolution solve_mixed(const CaratheodoryMap& phi_c, const UnimodularField& nu,
                          const ShiftMap& beta, const ShiftMap& beta_star,
                          const std::optional<GridSource>& g, const BoundaryFunction& a,
                          const RelationOptions& options) {
  require_circle_data(a, "a");
  const auto src = nonempty(g);
  if (src && src->roughness() > kMaxRoughness) {
    throw Error(kModule, "mixed problems need a smooth source (roughness above gate)");
  }
  const std::size_t n = a.size();
  std::vector<cd> ratio(n);
  std::vector<cd> trace(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = a.node(j);
    const cd v = nu(s);
    ratio[j] = a[j] / v;
    trace[j] = a[j];
    if (src) trace[j] += potential_directional_derivative(*src, std::polar(1.0, s), v);
  }

  // (A-)' through u = 1/z, then remove the residue so that A- is single valued.
  const NullOptions opt = with_avoid(options.nulls, options.anchors, -1, &beta_star);
  auto e = exterior_dirichlet(a.with_samples(std::move(ratio), true), opt);
  const cd residue = e->derivative(0.0);
  Analytic e_disk = disk_of(e);
  if (std::abs(residue) > 1e-14) {
    auto q = std::make_shared<NullFactor>(1, opt);
    const Analytic uq([q](cd u) { return u * (*q)(u); },
                      [q](cd u) { return (*q)(u) + u * q->derivative(u); });
    e_disk = e_disk + uq.scaled(-residue);
  }
  auto anti = std::make_shared<ExteriorAntiderivative>([e_disk](cd u) { return e_disk(u); });

  MixedSolution out;
  out.nu = nu;
  out.minus_derivative = [e_disk](cd z) { return e_disk(1.0 / z); };
  out.derivative_trace = a.with_samples(trace, true);

  const BoundaryFunction composed = compose_caratheodory(
      phi_c, apply_shift(out.derivative_trace, beta_star, ShiftDirection::forward));
  const BoundaryFunction plus_data = apply_shift(composed, beta, ShiftDirection::inverse);
  auto plus = std::make_shared<ComplexDirichlet>(
      minus_samples(plus_data, boundary_source(src, a)),
      with_avoid(options.nulls, options.anchors, 1, &beta));

  out.pair.plus = make_side(disk_of(plus), src, false);
  out.pair.minus = make_side(Analytic([anti](cd u) { return (*anti)(1.0 / u); },
                                      [e_disk](cd u) { return -e_disk(u) / (u * u); }),
                             src, true);
  out.pair.minus_linear = anti->coefficients().empty() ? cd(0.0) : anti->coefficients()[0];
  out.pair.minus_at_infinity = 0.0;
  if (std::abs(residue) > 1e-14) out.pair.notes.push_back("residue removed by a null addition");
  return out;
}

// ---------------------------------------------------------------------------

PoissonPair solve_riemann_poincare(const CaratheodoryMap& phi_c, const UnimodularField& mu,
                                   const UnimodularField& nu, const std::optional<GridSource>& G,
                                   const BoundaryFunction& psi, const RelationOptions& options) {
  if (psi.is_complex()) throw Error(kModule, "psi must be real");
  require_circle_data(psi, "psi");
  PoissonSolution minus = solve_poincare_exterior(nu, psi, G, options.anchors);
  const BoundaryFunction composed = compose_caratheodory(phi_c, psi);
  const BoundaryFunction plus_data = composed.with_real_samples(composed.real_samples());
  PoissonSolution plus = solve_poincare(*disk_map(), mu, plus_data, G);
  return {std::move(plus), std::move(minus)};
}

// ---------------------------------------------------------------------------

NontangentialSample sided_limit(const std::function<cd(cd)>& fn, double theta, bool exterior) {
  const auto path = StolzPath::standard(std::polar(1.0, theta));
  const auto pts = exterior ? exterior_points(path) : path.points();
  std::vector<cd> values;
  values.reserve(pts.size());
  for (const cd& z : pts) values.push_back(fn(z));
  return sequence_limit(std::move(values));
}

namespace {

template <typename Body>
std::vector<RelationResidual> for_anchors(const std::vector<double>& anchors, Body body) {
  std::vector<RelationResidual> out(anchors.size());
  const auto count = static_cast<std::ptrdiff_t>(anchors.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    auto& r = out[static_cast<std::size_t>(k)];
    r.theta = anchors[static_cast<std::size_t>(k)];
    body(r);
    if (!std::isfinite(r.residual)) r.residual = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

std::vector<RelationResidual> paired_jump_residuals(const SolutionPair& pair,
                                                    const BoundaryFunction& B,
                                                    const std::vector<double>& anchors, double r) {
  return for_anchors(anchors, [&](RelationResidual& out) {
    const cd zeta = std::polar(1.0, out.theta);
    out.plus_limit = pair.f_plus(r * zeta);
    out.minus_limit = pair.f_minus(zeta / r);
    out.residual = std::abs(out.plus_limit - out.minus_limit - B(out.theta));
    out.converged = true;
  });
}

std::vector<RelationResidual> shift_residuals(const SolutionPair& pair, const BoundaryFunction& B,
                                              const ShiftMap& beta,
                                              const std::vector<double>& anchors) {
  return for_anchors(anchors, [&](RelationResidual& out) {
    const auto lp = sided_limit([&](cd z) { return pair.f_plus(z); }, beta.forward(out.theta), false);
    const auto lm = sided_limit([&](cd z) { return pair.f_minus(z); }, out.theta, true);
    out.plus_limit = lp.estimate;
    out.minus_limit = lm.estimate;
    out.converged = lp.converged && lm.converged;
    out.residual = std::abs(lp.estimate - lm.estimate - B(out.theta));
  });
}

std::vector<RelationResidual> nonlinear_residuals(const SolutionPair& pair,
                                                  const CaratheodoryMap& phi_c,
                                                  const ShiftMap& beta, const ShiftMap& beta_star,
                                                  const std::vector<double>& anchors) {
  return for_anchors(anchors, [&](RelationResidual& out) {
    const auto lp = sided_limit([&](cd z) { return pair.f_plus(z); }, beta.forward(out.theta), false);
    const auto lm =
        sided_limit([&](cd z) { return pair.f_minus(z); }, beta_star.forward(out.theta), true);
    out.plus_limit = lp.estimate;
    out.minus_limit = lm.estimate;
    out.converged = lp.converged && lm.converged;
    out.residual = std::abs(lp.estimate - phi_c(out.theta, lm.estimate));
  });
}

std::vector<RelationResidual> mixed_residuals(const MixedSolution& sol,
                                              const CaratheodoryMap& phi_c, const ShiftMap& beta,
                                              const ShiftMap& beta_star,
                                              const std::vector<double>& anchors) {
  return for_anchors(anchors, [&](RelationResidual& out) {
    const double t = beta_star.forward(out.theta);
    const cd direction = sol.nu(wrap_parameter(t, kTwoPi));
    const auto lp =
        sided_limit([&](cd z) { return sol.pair.f_plus(z); }, beta.forward(out.theta), false);
    const auto lm =
        sided_limit([&](cd z) { return sol.minus_normal_derivative(z, direction); }, t, true);
    out.plus_limit = lp.estimate;
    out.minus_limit = lm.estimate;
    out.converged = lp.converged && lm.converged;
    out.residual = std::abs(lp.estimate - phi_c(out.theta, lm.estimate));
  });
}

std::vector<RelationResidual> riemann_poincare_residuals(const PoissonPair& pair,
                                                         const CaratheodoryMap& phi_c,
                                                         const std::vector<double>& anchors) {
  return for_anchors(anchors, [&](RelationResidual& out) {
    const cd mu = pair.plus.direction()(out.theta);
    const cd nu = pair.minus.direction()(out.theta);
    const auto lp = sided_limit(
        [&](cd z) { return cd((mu * pair.plus.conj_gradient(z)).real()); }, out.theta, false);
    const auto lm = sided_limit(
        [&](cd z) { return cd((nu * pair.minus.conj_gradient(z)).real()); }, out.theta, true);
    out.plus_limit = lp.estimate;
    out.minus_limit = lm.estimate;
    out.converged = lp.converged && lm.converged;
    out.residual = std::abs(lp.estimate - phi_c(out.theta, lm.estimate));
  });
}

double max_residual(const std::vector<RelationResidual>& r) {
  double m = 0.0;
  for (const auto& x : r) m = std::max(m, x.residual);
  return m;
}

double median_residual(const std::vector<RelationResidual>& r) {
  if (r.empty()) throw Error(kModule, "no anchors");
  std::vector<double> v;
  for (const auto& x : r) v.push_back(x.residual);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace rbvp
