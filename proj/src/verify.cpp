#include "rbvp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "rbvp/analytic.hpp"
#include "rbvp/boundary_data.hpp"
#include "rbvp/disk_harmonic.hpp"
#include "rbvp/error.hpp"
#include "rbvp/hilbert.hpp"
#include "rbvp/io.hpp"
#include "rbvp/poincare.hpp"
#include "rbvp/potential.hpp"
#include "rbvp/riemann.hpp"

namespace rbvp::verify {
namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kSamples = 1024;
constexpr std::size_t kAnchors = 64;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Sink {
  std::vector<Check>& out;
  int criterion;
  void operator()(std::string name, std::string invariant, double measured, double bound,
                  bool upper = true, std::string detail = {}) const {
    Check c;
    c.criterion = criterion;
    c.name = std::move(name);
    c.invariant = std::move(invariant);
    c.measured = measured;
    c.bound = bound;
    c.upper = upper;
    c.pass = std::isfinite(measured) && (upper ? measured <= bound : measured >= bound);
    c.detail = std::move(detail);
    out.push_back(std::move(c));
  }
};

GridSource disk_indicator(double value, double h) {
  return GridSource::sample([value](cd z) { return std::abs(z) <= 1.0 ? value : 0.0; },
                            cd(-1.05, -1.05), cd(1.05, 1.05), h, 8);
}

GridSource gaussian(double a, double half_width, double h) {
  return GridSource::sample([a](cd z) { return std::exp(-a * std::norm(z)); },
                            cd(-half_width, -half_width), cd(half_width, half_width), h);
}

std::vector<cd> ring_probes(std::initializer_list<double> radii, int per_ring) {
  std::vector<cd> out;
  for (double r : radii) {
    for (int k = 0; k < per_ring; ++k) out.push_back(std::polar(r, 0.39 * k + 0.05));
  }
  return out;
}

BoundaryFunction real_const(double v) { return BoundaryFunction::real(std::vector<double>(kSamples, v)); }

// Wirtinger derivatives by central differences of a real function.
cd fd_dz(const std::function<double(cd)>& f, cd z, double d) {
  const double fx = (f(z + d) - f(z - d)) / (2.0 * d);
  const double fy = (f(z + cd(0.0, d)) - f(z - cd(0.0, d))) / (2.0 * d);
  return 0.5 * cd(fx, -fy);
}

// ---------------------------------------------------------------------------
// potentials

void criterion_1(std::vector<Check>& out) {
  const Sink add{out, 1};
  const auto t0 = Clock::now();
  const PotentialField f{disk_indicator(1.0, 1.0 / 128)};
  const auto inner = ring_probes({0.0, 0.3, 0.6, 0.9}, 16);
  const auto outer = ring_probes({1.5, 1.75, 2.0}, 16);
  const auto ni = newtonian_potential_batch(f, inner);
  const auto no = newtonian_potential_batch(f, outer);
  double ei = 0.0;
  double eo = 0.0;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    ei = std::max(ei, std::abs(ni[k] - (std::norm(inner[k]) - 1.0) / 4.0));
  }
  for (std::size_t k = 0; k < outer.size(); ++k) {
    eo = std::max(eo, std::abs(no[k] - std::log(std::abs(outer[k])) / 2.0));
  }
  const double t = seconds_since(t0);
  add("newtonian potential of the unit disk, |z| <= 0.9", "potential: N_G closed form inside",
      ei, 5e-3);
  add("newtonian potential of the unit disk, 1.5 <= |z| <= 2",
      "potential: N_G closed form outside", eo, 5e-3);
  add("closed-form check runtime [s]", "potential: desk-scale cost", t, 10.0);
}

void criterion_4(std::vector<Check>& out) {
  const Sink add{out, 4};
  const PotentialField f{gaussian(20.0, 1.25, 1.0 / 128)};
  const auto probes = center_probes(f.source, 0.5, 4);
  const auto rep = laplacian_residual(f, probes);
  add("five-point Laplacian of N_G vs G on |z| <= 0.5", "potential: Delta N_G = G",
      rep.max_rel_error, 1e-2, true, std::to_string(rep.probes) + " probes");
}

// ---------------------------------------------------------------------------
// identities

double dz_error(double h) {
  const GridSource g = gaussian(20.0, 1.25, h);
  const PotentialField f{g};
  const auto n = [&](cd w) { return newtonian_potential(f, w); };
  double e = 0.0;
  for (int k = 0; k < 10; ++k) {
    const cd z = std::polar(0.1 + 0.07 * k, 0.7 * k) + cd(0.001, 0.0013);
    e = std::max(e, std::abs(fd_dz(n, z, 2.0 * h) - t_operator(g, z) / 4.0));
  }
  return e;
}

void criterion_2(std::vector<Check>& out) {
  const Sink add{out, 2};
  const double e1 = dz_error(1.0 / 128);
  const double e2 = dz_error(1.0 / 256);
  add("FD d/dz N_G vs T_G/4 at h = 1/128", "potential: 4 dN_G/dz = T_G", e1, 5e-2);
  add("refinement gain of d/dz N_G vs T_G/4 (h = 1/128 -> 1/256)",
      "potential: 4 dN_G/dz = T_G converges", e2 > 0.0 ? e1 / e2 : INFINITY, 1.7, false);
}

void criterion_3(std::vector<Check>& out) {
  const Sink add{out, 3};
  const double h = 1.0 / 128;
  const GridSource g = gaussian(20.0, 1.25, h);
  const PotentialField f2{g.scaled(2.0)};
  const auto n = [&](cd w) { return newtonian_potential(f2, w); };
  double structural = 0.0;
  double fd = 0.0;
  for (int k = 0; k < 10; ++k) {
    const cd z = std::polar(0.05 + 0.08 * k, 1.1 * k) + cd(0.0007, 0.0011);
    structural = std::max(structural, std::abs(vekua_H(g, z) - t_operator(g, z)));
    const cd conj_grad = 2.0 * fd_dz(n, z, 2.0 * h);
    fd = std::max(fd, std::abs(conj_grad - t_operator(g, z)));
  }
  add("H and T_g share one code path", "potential: H = T_g", structural, 0.0);
  add("FD conj(grad N_2g) vs T_g at h = 1/128", "potential: conj(grad N_2g) = T_g", fd, 5e-2);
}

void criterion_6(std::vector<Check>& out) {
  const Sink add{out, 6};
  const auto data = BoundaryFunction::sample_real([](double t) { return std::cos(t) + 0.5 * std::sin(2 * t); }, 4096);
  const auto phi = luzin_primitive(data);
  const auto ps = PoissonStieltjes::from_primitive(phi, 16);
  const auto& cantor = cantor_field();
  double smooth = 0.0;
  double singular = 0.0;
  for (double r : {0.0, 0.5, 0.8, 0.95}) {
    for (int k = 0; k < 8; ++k) {
      const cd z = std::polar(r, 0.77 * k + 0.1);
      smooth = std::max(smooth, std::abs(ps(z).value - ps(z, StieltjesMode::luzin_kernel).value));
      singular = std::max(singular, std::abs(cantor(z).value -
                                             cantor(z, StieltjesMode::luzin_kernel).value));
    }
  }
  add("Stieltjes sum vs Luzin kernel, C1 primitive", "disk_harmonic: Poisson-Stieltjes modes agree",
      smooth, 1e-6);
  add("Stieltjes sum vs Luzin kernel, Cantor primitive",
      "disk_harmonic: Poisson-Stieltjes modes agree", singular, 1e-3);
}

// ---------------------------------------------------------------------------
// dirichlet

void criterion_5(std::vector<Check>& out) {
  const Sink add{out, 5};
  double dir = 0.0;
  double conj = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const auto c = BoundaryFunction::sample_real([k](double t) { return std::cos(k * t); }, kSamples);
    const SchwarzIntegral s(c);
    for (double r : {0.0, 0.3, 0.6, 0.9}) {
      for (int j = 0; j < 8; ++j) {
        const double th = 0.81 * j + 0.2;
        dir = std::max(dir, std::abs(s.poisson(std::polar(r, th)).value - std::pow(r, k) * std::cos(k * th)));
      }
    }
    const auto cc = conjugate_function(c);
    for (std::size_t j = 0; j < kSamples; ++j) {
      conj = std::max(conj, std::abs(cc[j].real() - std::sin(k * c.node(j))));
    }
  }
  add("Poisson integral of cos(k theta), k <= 8", "disk_harmonic: P[cos k] = r^k cos k", dir, 1e-10);
  add("conjugate of cos(k theta) equals sin(k theta)", "disk_harmonic: spectral conjugate pairs",
      conj, 1e-12);
}

void criterion_7(std::vector<Check>& out) {
  const Sink add{out, 7};
  const std::size_t n = 4096;
  const auto one = BoundaryFunction::real(std::vector<double>(n, 1.0));
  const auto step = BoundaryFunction::sample_real([](double t) { return t < 2.0 ? 1.0 : -0.5; }, n,
                                                  Parameterization::angle, kTwoPi,
                                                  Interpolation::nearest);
  const auto mids = cantor_gap_midpoints(3);
  const char* names[] = {"constant data", "step data"};
  int idx = 0;
  for (const auto* data : {&one, &step}) {
    const auto phi = luzin_primitive(*data);
    const double ends = std::abs(phi(0.0)) + std::abs(phi(kTwoPi));
    double fd = 0.0;
    const double d = 1e-7;
    for (double m : mids) {
      const double deriv = (phi(m + d) - phi(m - d)) / (2.0 * d);
      fd = std::max(fd, std::abs(deriv - data->real_at(m)));
    }
    add(std::string("primitive endpoints vanish, ") + names[idx],
        "boundary_data: Phi(0) = Phi(2pi) = 0", ends, 0.0);
    add(std::string("FD derivative at removed-interval midpoints, ") + names[idx],
        "boundary_data: Phi' = clamp(phi) off the Cantor set", fd, 1e-6);
    ++idx;
  }
}

void criterion_8(std::vector<Check>& out) {
  const Sink add{out, 8};
  double gap = 0.0;
  for (double th : cantor_gap_midpoints(3)) {
    gap = std::max(gap, std::abs(null_harmonic_cantor(std::polar(1.0 - 1e-4, th))));
  }
  double circle = 0.0;
  for (int k = 0; k < 4096; ++k) {
    circle = std::max(circle, null_harmonic_cantor(std::polar(1.0 - 1e-4, kTwoPi * k / 4096.0)));
  }
  add("Cantor null harmonic at removed-interval midpoints", "disk_harmonic: null value a.e.", gap,
      2e-2);
  add("Cantor null harmonic circle maximum", "disk_harmonic: null solution is nontrivial", circle,
      0.5, false);
  const auto lam = UnimodularField::from_angle(
      BoundaryFunction::sample_real([](double t) { return 0.3 * std::sin(t); }, kSamples));
  double smallest = 0.0;
  std::string detail;
  try {
    const auto fam = homogeneous_family(lam, 5);
    smallest = fam.singular_values.back();
  } catch (const Error& e) {
    detail = e.what();
  }
  add("homogeneous family rank certificate, k = 5", "hilbert: k independent null solutions",
      smallest, 1e-6, false, detail);
}

// ---------------------------------------------------------------------------
// hilbert

void criterion_9(std::vector<Check>& out, const Options& opt) {
  const Sink add{out, 9};
  const auto lam = UnimodularField::from_angle(
      BoundaryFunction::sample_real([](double t) { return 0.3 * std::sin(t); }, kSamples));
  const auto fstar = [](cd z) { return z * z + 1.0; };
  const auto phi = BoundaryFunction::sample_real(
      [&](double t) { return (std::conj(lam(t)) * fstar(std::polar(1.0, t))).real(); }, kSamples);
  const auto anchors = uniform_anchors(kAnchors, opt.seed);
  const auto sol = solve_hilbert_disk(lam, phi);
  add("manufactured z^2 + 1, median Stolz residual", "hilbert: Re(conj(lambda) f) -> phi",
      median_residual(hilbert_residuals(sol, lam, phi, anchors)), 1e-2);

  const GridSource g = gaussian(50.0, 0.8, 1.0 / 128);
  std::vector<double> thetas(kSamples);
  for (std::size_t j = 0; j < kSamples; ++j) thetas[j] = phi.node(j);
  std::vector<cd> pts(kSamples);
  for (std::size_t j = 0; j < kSamples; ++j) pts[j] = std::polar(1.0, thetas[j]);
  const auto tg = t_operator_batch(g, pts);
  std::vector<double> gp(kSamples);
  for (std::size_t j = 0; j < kSamples; ++j) {
    gp[j] = (std::conj(lam.base()[j]) * (fstar(pts[j]) + tg[j])).real();
  }
  const auto gphi = BoundaryFunction::real(std::move(gp));
  const auto gen = solve_hilbert_generalized(lam, gphi, g, ConformalMap::identity(1.0));
  add("manufactured z^2 + 1 + T_g, median Stolz residual",
      "hilbert: Re(conj(lambda) (A + T_g)) -> phi",
      median_residual(hilbert_residuals(gen, lam, gphi, anchors)), 1e-2);

  const auto fam = homogeneous_family(lam, 5);
  double worst = 0.0;
  for (const auto& m : fam.members) {
    const auto s = sol.with_member(m.function, 1.0);
    worst = std::max(worst, median_residual(hilbert_residuals(s, lam, phi, anchors)));
  }
  add("superposition with each homogeneous member, worst median",
      "hilbert: null additions keep the boundary relation", worst, 2e-2);
}

// ---------------------------------------------------------------------------
// neumann

void criterion_10(std::vector<Check>& out, const Options& opt) {
  const Sink add{out, 10};
  const double h = 1.0 / 128;
  const auto map = ConformalMap::identity(1.0);
  NeumannOptions no;
  no.seed = opt.seed;
  no.anchors = kAnchors;
  no.poincare.flip_lambda_sign = opt.flip_lambda_sign;
  const auto U = solve_neumann(map, real_const(-2.0), disk_indicator(4.0, h), no);
  double lap = 0.0;
  double grad = 0.0;
  for (int k = 0; k < 20; ++k) {
    const cd z = std::polar(0.04 * k, 0.9 * k);
    const double l = (U(z + h) + U(z - h) + U(z + cd(0, h)) + U(z - cd(0, h)) - 4.0 * U(z)) / (h * h);
    lap = std::max(lap, std::abs(l - 4.0));
    grad = std::max(grad, std::abs(U.gradient(z) - 2.0 * z));
  }
  const auto& cert = *U.certificate;
  std::size_t res_ok = 0;
  double cons = 0.0;
  for (const auto& a : cert.anchors) {
    res_ok += a.residual <= 2e-2;
    cons = std::max(cons, a.consistency);
  }
  add("Laplacian of U for |z|^2 with G = 4", "poincare: Delta U = G", lap, 1e-2);
  add("fraction of anchors with normal-derivative residual <= 2e-2",
      "poincare: dU/dn -> phi at anchors",
      static_cast<double>(res_ok) / static_cast<double>(cert.anchors.size()), 0.9, false);
  add("gradient error against |z|^2 at interior probes", "poincare: grad U = grad U*", grad, 2e-2);
  add("worst per-anchor gap between difference quotient and angular limit",
      "poincare: Neumann statements agree", cons, 2e-2);
}

void criterion_11(std::vector<Check>& out, const Options& opt) {
  const Sink add{out, 11};
  NeumannOptions no;
  no.seed = opt.seed;
  no.anchors = kAnchors;
  no.tolerance = 5e-2;
  no.poincare.flip_lambda_sign = opt.flip_lambda_sign;
  const auto U = solve_neumann(ConformalMap::identity(1.0), real_const(1.0), std::nullopt, no);
  std::size_t ok = 0;
  for (const auto& a : U.certificate->anchors) ok += a.residual <= 5e-2;
  add("nonclassical Neumann phi = 1: fraction of anchors within 5e-2",
      "poincare: solvable without the compatibility condition",
      static_cast<double>(ok) / static_cast<double>(U.certificate->anchors.size()), 0.9, false);
}

// ---------------------------------------------------------------------------
// riemann

void criterion_12(std::vector<Check>& out, const Options& opt) {
  const Sink add{out, 12};
  const auto anchors = uniform_anchors(kAnchors, opt.seed);
  const auto B = BoundaryFunction::sample_complex([](double t) { return std::polar(1.0, t); }, kSamples);
  {
    const auto p = solve_jump(B, std::nullopt);
    double e = 0.0;
    for (cd z : {cd(0.3, 0.2), cd(-0.5, 0.1), cd(0.0, 0.8)}) e = std::max(e, std::abs(p.f_plus(z) - z));
    for (cd z : {cd(1.5, 0.2), cd(-2.0, 1.0), cd(0.0, 3.0)}) e = std::max(e, std::abs(p.f_minus(z)));
    add("jump B = zeta: f+ = z and f- = 0", "riemann: Cauchy integral of zeta", e, 1e-10);
  }
  {
    const GridSource g = gaussian(50.0, 0.8, 1.0 / 128);
    const auto p = solve_jump(B, g);
    add("jump B = zeta with a Gaussian source, paired-path residual",
        "riemann: f+ - f- = B across the circle",
        max_residual(paired_jump_residuals(p, B, anchors)), 1e-2);
  }
  RelationOptions ro{anchors, {}};
  {
    const auto beta = ShiftMap::from_function([](double s) { return s + 0.1 * std::sin(s); }, kSamples);
    const auto p = solve_riemann_shift(B, beta, std::nullopt, std::nullopt, ro);
    add("shift beta = s + 0.1 sin s, B = zeta, anchored relation",
        "riemann: f+(beta) = f- + B", max_residual(shift_residuals(p, B, beta, anchors)), 1e-2);
  }
  {
    const auto id = ShiftMap::identity(kSamples);
    const auto psi = BoundaryFunction::sample_complex([](double t) { return std::polar(1.0, t); }, kSamples);
    const auto phic = CaratheodoryMap::modulus();
    const auto p = solve_nonlinear(phic, id, id, std::nullopt, psi, ro);
    add("nonlinear |w| with psi = e^{i theta}, anchored relation",
        "riemann: f+(beta) = phi_c(zeta, f-(beta*))",
        max_residual(nonlinear_residuals(p, phic, id, id, anchors)), 1e-2);
  }
}

void criterion_13(std::vector<Check>& out, const Options& opt) {
  const Sink add{out, 13};
  const auto anchors = uniform_anchors(kAnchors, opt.seed);
  {
    // dA/dnu = nu A' for A(z) = z^3 + e^z.
    const auto a = [](cd z) { return z * z * z + std::exp(z); };
    const auto da = [](cd z) { return 3.0 * z * z + std::exp(z); };
    double e = 0.0;
    const double d = 1e-5;
    for (int k = 0; k < 12; ++k) {
      const cd z = std::polar(0.1 + 0.07 * k, 0.9 * k);
      const cd nu = std::polar(1.0, 0.53 * k - 1.0);
      const cd fd = (a(z + d * nu) - a(z - d * nu)) / (2.0 * d);
      e = std::max(e, std::abs(fd - nu * da(z)));
    }
    add("FD directional derivative of an analytic function", "riemann: dA/dnu = nu A'", e, 1e-6);
  }
  const auto id = ShiftMap::identity(kSamples);
  const auto ident = CaratheodoryMap::identity();
  const RelationOptions ro{anchors, {}};
  const auto zero = BoundaryFunction::complex(std::vector<cd>(kSamples, 0.0));
  const auto one = BoundaryFunction::complex(std::vector<cd>(kSamples, 1.0));
  const auto nu1 = UnimodularField::constant(1.0, kSamples);
  {
    const auto m = solve_mixed(ident, nu1, id, id, std::nullopt, zero, ro);
    add("mixed a = 0: anchored relation", "riemann: f+(beta) = phi_c(zeta, df-/dnu (beta*))",
        max_residual(mixed_residuals(m, ident, id, id, anchors)), 1e-3);
  }
  {
    const auto m = solve_mixed(ident, nu1, id, id, std::nullopt, one, ro);
    double growth = 0.0;
    for (cd z : {cd(3.0, 0.0), cd(-2.0, 2.0), cd(0.0, -5.0)}) {
      growth = std::max(growth, std::abs(m.pair.f_minus(z) - z));
    }
    add("mixed a = 1, nu = 1: anchored relation", "riemann: f+(beta) = phi_c(zeta, df-/dnu (beta*))",
        max_residual(mixed_residuals(m, ident, id, id, anchors)), 1e-2);
    add("mixed a = 1, nu = 1: A-(z) - z -> 0 at infinity", "riemann: exterior normalization",
        growth, 1e-2);
  }
  {
    const GridSource g = gaussian(50.0, 0.8, 1.0 / 128);
    const auto nu = UnimodularField::normalized(
        BoundaryFunction::sample_complex([](double t) { return std::polar(1.0, t); }, kSamples));
    const auto m = solve_mixed(ident, nu, id, id, g, zero, ro);
    double e = 0.0;
    for (double t : anchors) {
      const auto lim = sided_limit([&](cd w) { return m.pair.f_plus(w); }, t, false);
      e = std::max(e, std::abs(lim.estimate - potential_directional_derivative(g, std::polar(1.0, t),
                                                                               std::polar(1.0, t))));
    }
    add("mixed with a smooth source: f+ boundary vs dH/dnu", "riemann: potential-derivative trace",
        e, 2e-2);
  }
}

using Runner = std::function<void(std::vector<Check>&, const Options&)>;

const std::map<std::string, std::vector<Runner>>& table() {
  static const std::map<std::string, std::vector<Runner>> t = {
      {"identities",
       {[](auto& o, auto&) { criterion_2(o); }, [](auto& o, auto&) { criterion_3(o); },
        [](auto& o, auto&) { criterion_6(o); }}},
      {"potentials", {[](auto& o, auto&) { criterion_1(o); }, [](auto& o, auto&) { criterion_4(o); }}},
      {"dirichlet",
       {[](auto& o, auto&) { criterion_5(o); }, [](auto& o, auto&) { criterion_7(o); },
        [](auto& o, auto&) { criterion_8(o); }}},
      {"hilbert", {criterion_9}},
      {"neumann", {criterion_10, criterion_11}},
      {"riemann", {criterion_12, criterion_13}},
  };
  return t;
}

void run_guarded(const Runner& r, std::vector<Check>& out, const Options& opt) {
  try {
    r(out, opt);
  } catch (const std::exception& e) {
    Check c;
    c.name = "suite step raised";
    c.invariant = "verify: components run without errors";
    c.measured = INFINITY;
    c.detail = e.what();
    out.push_back(std::move(c));
  }
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"criterion", c.criterion},
                   {"name", c.name},
                   {"invariant", c.invariant},
                   {"measured", std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr)},
                   {"bound", c.bound},
                   {"comparison", c.upper ? "<=" : ">="},
                   {"pass", c.pass},
                   {"detail", c.detail}});
  }
  return {{"schema_version", io::kSchemaVersion},
          {"suite", suite},
          {"seconds", seconds},
          {"passed", passed()},
          {"checks", arr}};
}

std::string Report::summary() const {
  std::ostringstream s;
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e %s %.3e", c.measured, c.upper ? "<=" : ">=", c.bound);
    s << (c.pass ? "PASS " : "FAIL ") << "[" << c.criterion << "] " << c.name << ": " << buf
      << "  (" << c.invariant << ")";
    if (!c.detail.empty()) s << " -- " << c.detail;
    s << '\n';
  }
  return s.str();
}

const std::vector<std::string>& suites() {
  static const std::vector<std::string> s = {"identities", "potentials", "dirichlet", "hilbert",
                                             "neumann",    "riemann",    "all"};
  return s;
}

Report run(const std::string& suite, const Options& options) {
  const auto& t = table();
  Report rep;
  rep.suite = suite;
  const auto t0 = Clock::now();
  if (suite == "all") {
    for (const auto& name : suites()) {
      if (name == "all") continue;
      for (const auto& r : t.at(name)) run_guarded(r, rep.checks, options);
    }
    rep.seconds = seconds_since(t0);
    const bool clean = rep.passed();
    const Sink add{rep.checks, 14};
    add("verify all wall time [s]", "cli: full run within 10 minutes", rep.seconds, 600.0);
    add("failed checks in verify all", "cli: zero failures", clean ? 0.0 : 1.0, 0.0);
    return rep;
  }
  const auto it = t.find(suite);
  if (it == t.end()) throw Error("cli", "unknown verification suite '" + suite + "'");
  for (const auto& r : it->second) run_guarded(r, rep.checks, options);
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace rbvp::verify
