#include "rbvp/hilbert.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "rbvp/error.hpp"
#include "rbvp/fourier.hpp"

namespace rbvp {
namespace {

const char* kModule = "hilbert";
constexpr std::size_t kStaircaseCells = 4096 * 16;

bool unit_disk(const ConformalMap& map) {
  return map.kind() == MapKind::identity && std::abs(map.length() - kTwoPi) < 1e-12;
}

UnimodularField resample(const UnimodularField& lambda, const BoundaryFunction& like) {
  if (lambda.base().same_grid(like)) return lambda;
  return UnimodularField::normalized(BoundaryFunction::sample_complex(
      [&](double s) { return lambda(s); }, like.size(), like.parameterization(), like.length()));
}

bool inside_polygon(const std::vector<cd>& poly, cd p) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const cd a = poly[i];
    const cd b = poly[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag()) &&
        p.real() < (b.real() - a.real()) * (p.imag() - a.imag()) / (b.imag() - a.imag()) + a.real()) {
      in = !in;
    }
  }
  return in;
}

void require_support_inside(const GridSource& g, const ConformalMap& map) {
  if (g.empty()) return;
  if (map.exterior()) throw Error(kModule, "sources on exterior domains are not supported");
  const double h = g.cell_size();
  std::vector<cd> poly;
  if (!unit_disk(map)) {
    const std::size_t n = 2048;
    poly.reserve(n);
    for (std::size_t k = 0; k < n; ++k) poly.push_back(map.boundary_point(kTwoPi * k / n));
  }
  for (const auto& c : g.cells()) {
    bool touches = false;
    for (int dx = -1; dx <= 1 && !touches; dx += 2) {
      for (int dy = -1; dy <= 1 && !touches; dy += 2) {
        const cd p(c.x + 0.5 * h * dx, c.y + 0.5 * h * dy);
        touches = poly.empty() ? std::abs(p) < 1.0 : inside_polygon(poly, p);
      }
    }
    if (!touches) throw Error(kModule, "source support leaks outside the domain");
  }
}

Analytic staircase_member(const CantorArc& arc) {
  auto ps = std::make_shared<PoissonStieltjes>([arc](double t) { return arc.primitive(t); },
                                               kStaircaseCells);
  return Analytic([ps](cd z) { return ps->herglotz(z).value; },
                  [ps](cd z) { return ps->herglotz(z, true).value; });
}

CantorArc default_arc(std::size_t index, int attempt) {
  if (index == 2 && attempt == 0) return {};
  CantorArc arc;
  const double j = static_cast<double>(index);
  arc.width = kTwoPi * (0.3 + 0.1 * static_cast<double>((index + 2) % 5));
  double frac = 0.618033988749895 * (j - 1.0) + 0.1 * attempt;
  frac -= std::floor(frac);
  arc.start = (kTwoPi - arc.width) * frac;
  return arc;
}

/// Analytic function with the Herglotz kernel of a unit point mass at theta.
Analytic point_mass(double theta) {
  const cd e = std::polar(1.0, theta);
  return Analytic([e](cd z) { return (e + z) / (e - z); },
                  [e](cd z) { return 2.0 * e / ((e - z) * (e - z)); });
}

/// Taylor coefficients c_0..c_{count-1} of f from samples on |z| = radius.
std::vector<cd> taylor(const Analytic& f, std::size_t count, double radius = 0.5) {
  const std::size_t p = 256;
  std::vector<cd> v(p);
  for (std::size_t k = 0; k < p; ++k) v[k] = f(std::polar(radius, kTwoPi * k / p));
  const auto spec = fourier::forward(v);
  std::vector<cd> c(count);
  for (std::size_t k = 0; k < count; ++k) {
    c[k] = spec[k] / (static_cast<double>(p) * std::pow(radius, static_cast<double>(k)));
  }
  return c;
}

/// f / z^m for f vanishing to order m at 0; a series is used near the origin.
Analytic divide_by_power(const Analytic& f, int m) {
  constexpr double kSeriesRadius = 0.1;
  constexpr std::size_t kTerms = 28;
  auto c = std::make_shared<std::vector<cd>>(taylor(f, kTerms + static_cast<std::size_t>(m)));
  return Analytic(
      [f, m, c](cd z) {
        if (std::abs(z) >= kSeriesRadius) return f(z) / std::pow(z, m);
        cd acc = 0.0;
        for (std::size_t k = c->size(); k-- > static_cast<std::size_t>(m);) acc = acc * z + (*c)[k];
        return acc;
      },
      [f, m, c](cd z) {
        if (std::abs(z) >= kSeriesRadius) {
          const cd zm = std::pow(z, m);
          return f.derivative(z) / zm - static_cast<double>(m) * f(z) / (zm * z);
        }
        cd acc = 0.0;
        for (std::size_t k = c->size(); k-- > static_cast<std::size_t>(m) + 1;) {
          acc = acc * z + static_cast<double>(k - m) * (*c)[k];
        }
        return acc;
      });
}

/// Adds i d + sum b_j P_j (real d, b_j; point masses at 2pi j / (2m - 1)) so that
/// the Taylor coefficients of order < m vanish. Returns the corrected function.
Analytic cancel_low_order(const Analytic& inner, int m, std::vector<cd>& params) {
  const auto c = taylor(inner, static_cast<std::size_t>(m));
  const int masses = 2 * m - 1;
  std::vector<double> angles(masses);
  for (int j = 0; j < masses; ++j) angles[j] = kTwoPi * j / masses;
  // Unknowns: d, b_1..b_{masses}; equations: Re/Im of c_0..c_{m-1}.
  const int rows = 2 * m;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, masses + 1);
  Eigen::VectorXd rhs(rows);
  a(1, 0) = 1.0;
  for (int k = 0; k < m; ++k) {
    rhs(2 * k) = -c[k].real();
    rhs(2 * k + 1) = -c[k].imag();
    for (int j = 0; j < masses; ++j) {
      const cd coef = k == 0 ? cd(1.0) : 2.0 * std::polar(1.0, -k * angles[j]);
      a(2 * k, j + 1) = coef.real();
      a(2 * k + 1, j + 1) = coef.imag();
    }
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
  if ((a * x - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) {
    throw Error(kModule, "could not cancel the low-order coefficients");
  }
  Analytic out = inner + Analytic::constant(cd(0.0, x(0)));
  params.push_back(cd(0.0, x(0)));
  for (int j = 0; j < masses; ++j) {
    out = out + point_mass(angles[j]).scaled(x(j + 1));
    params.push_back(cd(x(j + 1)));
  }
  return out;
}

}  // namespace

std::vector<cd> source_boundary_trace(const GridSource& g, const ConformalMap& map,
                                      const std::vector<double>& thetas) {
  const std::size_t n = thetas.size();
  const double h = g.cell_size();
  const double d = 3.0 * h;
  std::vector<cd> direct;
  std::vector<cd> extra;
  std::vector<std::size_t> near;
  std::vector<cd> pts(n);
  for (std::size_t j = 0; j < n; ++j) {
    pts[j] = map.boundary_point(thetas[j]);
    const cd nrm = map.inner_normal_at_angle(thetas[j]);
    bool touches = false;
    for (int k = -3; k <= 3 && !touches; ++k) touches = g.value_at(pts[j] + (k * h) * nrm) != 0.0;
    if (touches) {
      near.push_back(j);
      for (int k = 1; k <= 3; ++k) extra.push_back(pts[j] + (k * d) * nrm);
    }
  }
  std::vector<cd> out = t_operator_batch(g, pts);
  if (!near.empty()) {
    const auto ev = t_operator_batch(g, extra);
    for (std::size_t m = 0; m < near.size(); ++m) {
      out[near[m]] = 3.0 * ev[3 * m] - 3.0 * ev[3 * m + 1] + ev[3 * m + 2];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

cd GeneralizedSolution::to_disk(cd w) const { return unit_disk(*map) ? w : map->inverse(w); }

cd GeneralizedSolution::analytic_part(cd w) const { return disk_analytic(to_disk(w)); }

cd GeneralizedSolution::analytic_derivative(cd w) const {
  const cd z = to_disk(w);
  return disk_analytic.derivative(z) / map->derivative(z);
}

cd GeneralizedSolution::potential_part(cd w) const {
  return source ? vekua_H(*source, w) : cd(0.0);
}

cd GeneralizedSolution::at_disk(cd z) const {
  const cd a = disk_analytic(z);
  return source ? a + vekua_H(*source, (*map)(z)) : a;
}

GeneralizedSolution GeneralizedSolution::with_member(const Analytic& member, cd c) const {
  GeneralizedSolution out = *this;
  out.disk_analytic = disk_analytic + member.scaled(c);
  out.homogeneous_params.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------

HilbertFactor hilbert_factor(const UnimodularField& lambda, double clamp) {
  const BoundaryFunction& base = lambda.base();
  if (base.parameterization() != Parameterization::angle ||
      std::abs(base.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "disk solver expects lambda over disk angle");
  }
  HilbertFactor out;
  out.winding = lambda.winding_number();
  UnimodularField reduced = lambda;
  if (out.winding > 0) {
    std::vector<cd> v(base.samples().begin(), base.samples().end());
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] *= std::polar(1.0, -out.winding * base.node(j));
    }
    reduced = UnimodularField::normalized(base.with_samples(std::move(v), true));
  }
  // Unwrapped phase: periodic once the winding is removed.
  std::vector<double> phase = reduced.branch().real_samples();
  for (std::size_t j = 1; j < phase.size(); ++j) {
    phase[j] = phase[j - 1] + std::remainder(phase[j] - phase[j - 1], kTwoPi);
  }
  const BoundaryFunction alpha = reduced.branch().with_real_samples(phase);
  auto conj = fourier::conjugate(alpha.real_samples());
  const double bound = std::log(clamp);
  out.weight.resize(conj.size());
  for (std::size_t j = 0; j < conj.size(); ++j) {
    if (!std::isfinite(conj[j]) || std::abs(conj[j]) > 700.0) {
      throw Error(kModule,
                  "exp of the conjugate branch overflows; smooth the branch of arg lambda");
    }
    if (std::abs(conj[j]) > bound) {
      conj[j] = std::copysign(bound, conj[j]);
      out.clamped = true;
    }
    out.weight[j] = std::exp(conj[j]);
  }
  out.rotation = schwarz_field(alpha).scaled(cd(0.0, 1.0)).exp();
  if (out.winding > 0) out.rotation = Analytic::monomial(out.winding) * out.rotation;
  return out;
}

namespace {

// Re(conj(lambda) h) = phi with lambda = zeta^{-m} lambda0: z^m h solves the
// problem for lambda0 and must vanish to order m at the origin.
GeneralizedSolution solve_negative_winding(const UnimodularField& lam, const BoundaryFunction& phi,
                                           int m, const HilbertOptions& options) {
  const BoundaryFunction& base = lam.base();
  std::vector<cd> v(base.samples().begin(), base.samples().end());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::polar(1.0, m * base.node(j));
  const auto reduced = UnimodularField::normalized(base.with_samples(std::move(v), true));
  const HilbertFactor fac = hilbert_factor(reduced, options.clamp);
  auto samples = phi.real_samples();
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] *= fac.weight[j];
  Analytic inner = schwarz_field(phi.with_real_samples(std::move(samples)));
  GeneralizedSolution out;
  out.map = std::make_shared<ConformalMap>(ConformalMap::identity(1.0));
  for (std::size_t k = 0; k < options.null_coefficients.size(); ++k) {
    const double c = options.null_coefficients[k];
    if (c != 0.0) inner = inner + staircase_member(default_arc(k + 2, 0)).scaled(c);
  }
  if (options.c0 != 0.0) out.warnings.push_back("imaginary constant fixed by the winding");
  inner = cancel_low_order(inner, m, out.homogeneous_params);
  out.disk_analytic = divide_by_power(fac.rotation * inner, m);
  if (fac.clamped) out.warnings.push_back("conjugate branch clamped; boundary weight distorted");
  return out;
}

}  // namespace

GeneralizedSolution solve_hilbert_disk(const UnimodularField& lambda, const BoundaryFunction& phi,
                                       const HilbertOptions& options) {
  if (phi.is_complex()) throw Error(kModule, "phi must be real");
  if (phi.parameterization() != Parameterization::angle ||
      std::abs(phi.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "disk solver expects phi over disk angle");
  }
  const UnimodularField lam = resample(lambda, phi);
  const int winding = lam.winding_number();
  if (winding < 0) return solve_negative_winding(lam, phi, -winding, options);
  const HilbertFactor fac = hilbert_factor(lam, options.clamp);
  auto samples = phi.real_samples();
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] *= fac.weight[j];
  Analytic inner = schwarz_field(phi.with_real_samples(std::move(samples)));
  GeneralizedSolution out;
  out.map = std::make_shared<ConformalMap>(ConformalMap::identity(1.0));
  if (options.c0 != 0.0) inner = inner + Analytic::constant(cd(0.0, options.c0));
  out.homogeneous_params.push_back(cd(options.c0));
  for (std::size_t k = 0; k < options.null_coefficients.size(); ++k) {
    const double c = options.null_coefficients[k];
    out.homogeneous_params.push_back(cd(c));
    if (c != 0.0) inner = inner + staircase_member(default_arc(k + 2, 0)).scaled(c);
  }
  out.disk_analytic = fac.rotation * inner;
  if (fac.clamped) out.warnings.push_back("conjugate branch clamped; boundary weight distorted");
  return out;
}

GeneralizedSolution solve_hilbert_generalized(const UnimodularField& lambda,
                                              const BoundaryFunction& phi,
                                              const std::optional<GridSource>& g,
                                              const ConformalMap& map,
                                              const HilbertOptions& options) {
  if (phi.is_complex()) throw Error(kModule, "phi must be real");
  if (map.exterior()) throw Error(kModule, "interior domain maps only");
  if (std::abs(phi.length() - map.length()) > 1e-9 * map.length()) {
    throw Error(kModule, "phi must be sampled over the natural parameter of the boundary");
  }
  const bool disk = unit_disk(map);
  const bool has_source = g && !g->empty();
  if (has_source) require_support_inside(*g, map);

  const UnimodularField lam = resample(lambda, phi);
  auto data = phi.real_samples();
  if (has_source) {
    std::vector<cd> pts(data.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double s = phi.node(j);
      pts[j] = disk ? std::polar(1.0, s) : map.boundary_point(map.angle_at(s));
    }
    std::vector<double> thetas(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      thetas[j] = disk ? phi.node(j) : map.angle_at(phi.node(j));
    }
    const auto hv = source_boundary_trace(*g, map, thetas);
    for (std::size_t j = 0; j < data.size(); ++j) data[j] -= (std::conj(lam.base()[j]) * hv[j]).real();
  }
  BoundaryFunction reduced = phi.with_real_samples(std::move(data));
  UnimodularField disk_lambda = lam;
  if (!disk) {
    reduced = pushforward_boundary_data(map, reduced);
    disk_lambda = UnimodularField::normalized(pushforward_boundary_data(map, lam.base()));
  } else if (reduced.parameterization() != Parameterization::angle) {
    reduced = BoundaryFunction::real(reduced.real_samples(), Parameterization::angle, kTwoPi,
                                     reduced.interpolation());
    disk_lambda = UnimodularField::from_samples(BoundaryFunction::complex(
        std::vector<cd>(lam.base().samples().begin(), lam.base().samples().end())));
  }
  GeneralizedSolution out = solve_hilbert_disk(disk_lambda, reduced, options);
  out.map = std::make_shared<ConformalMap>(map);
  if (has_source) out.source = *g;
  return out;
}

GeneralizedSolution solve_dirichlet_generalized(const BoundaryFunction& phi,
                                                const std::optional<GridSource>& g,
                                                const ConformalMap& map,
                                                const HilbertOptions& options) {
  const auto one = UnimodularField::constant(1.0, phi.size(), phi.parameterization(), phi.length());
  return solve_hilbert_generalized(one, phi, g, map, options);
}

// ---------------------------------------------------------------------------

double CantorArc::primitive(double t) const {
  if (t <= start) return 0.0;
  if (t >= start + width) return 1.0;
  return cantor_function(std::clamp((t - start) / width, 0.0, 1.0));
}

std::vector<double> CantorArc::gap_midpoints(int generation) const {
  auto mids = cantor_gap_midpoints(generation);
  for (double& m : mids) m = start + width * m / kTwoPi;
  return mids;
}

HomogeneousFamily homogeneous_family(const UnimodularField& lambda, std::size_t k) {
  if (k == 0) throw Error(kModule, "homogeneous_family needs k >= 1");
  const HilbertFactor fac = hilbert_factor(lambda);
  for (int attempt = 0; attempt < 4; ++attempt) {
    HomogeneousFamily fam;
    fam.members.push_back({fac.rotation.scaled(cd(0.0, 1.0)), std::nullopt});
    for (std::size_t j = 2; j <= k; ++j) {
      const CantorArc arc = default_arc(j, attempt);
      fam.members.push_back({fac.rotation * staircase_member(arc), arc});
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double r = 0.2 + 0.5 * static_cast<double>(i) / static_cast<double>(k);
      fam.probes.push_back(std::polar(r, kTwoPi * static_cast<double>(i) / static_cast<double>(k) + 0.3));
    }
    Eigen::MatrixXcd m(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) m(i, j) = fam.members[j].function(fam.probes[i]);
      const double norm = m.col(j).norm();
      if (!(norm > 0.0)) throw Error(kModule, "homogeneous member vanishes at the probes");
      m.col(j) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    fam.singular_values.assign(sv.data(), sv.data() + sv.size());
    if (sv(sv.size() - 1) >= 1e-6) return fam;
  }
  throw Error(kModule, "homogeneous family is rank deficient");
}

// ---------------------------------------------------------------------------

std::vector<AnchorResidual> hilbert_residuals(const GeneralizedSolution& h,
                                              const UnimodularField& lambda,
                                              const BoundaryFunction& phi,
                                              const std::vector<double>& anchors) {
  std::vector<AnchorResidual> out(anchors.size());
  const bool disk = unit_disk(*h.map);
  const auto count = static_cast<std::ptrdiff_t>(anchors.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const double theta = anchors[static_cast<std::size_t>(k)];
    const double s = disk ? theta : h.map->arclength(theta);
    const cd lam = lambda(s);
    const double target = phi.real_at(s);
    const auto path = StolzPath::standard(std::polar(1.0, theta));
    const auto sample = sample_nontangential(
        [&](cd z) { return cd((std::conj(lam) * h.at_disk(z)).real()); }, path);
    auto& r = out[static_cast<std::size_t>(k)];
    r.theta = theta;
    r.converged = sample.converged;
    r.residual = sample.diverged ? std::numeric_limits<double>::infinity()
                                 : std::abs(sample.estimate.real() - target);
  }
  return out;
}

double median_residual(const std::vector<AnchorResidual>& r) {
  if (r.empty()) throw Error(kModule, "no anchors");
  std::vector<double> v;
  for (const auto& a : r) v.push_back(a.residual);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace rbvp
