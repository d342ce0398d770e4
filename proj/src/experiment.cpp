#include "rbvp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "rbvp/analytic.hpp"
#include "rbvp/error.hpp"
#include "rbvp/hilbert.hpp"
#include "rbvp/io.hpp"
#include "rbvp/poincare.hpp"
#include "rbvp/riemann.hpp"

namespace rbvp {
namespace {

namespace fs = std::filesystem;
using config::ExperimentConfig;

struct Context {
  const ExperimentConfig& cfg;
  ConformalMap map;
  bool disk;
  Parameterization param;
  double length;
  std::size_t n;
  std::vector<double> anchors;
  fs::path dir;
  ExperimentResult result;

  explicit Context(const ExperimentConfig& c)
      : cfg(c),
        map(config::domain(c.get("domain", "disk"))),
        disk(map.kind() == MapKind::identity && std::abs(map.length() - kTwoPi) < 1e-12),
        param(disk ? Parameterization::angle : Parameterization::natural),
        length(map.length()),
        n(c.samples()),
        anchors(uniform_anchors(c.anchors(), c.seed())),
        dir(c.output_dir()) {
    fs::create_directories(dir);
  }

  std::string path(const std::string& name) {
    const std::string p = (dir / name).string();
    result.artifacts.push_back(p);
    return p;
  }

  BoundaryFunction real_data(const std::string& key, const std::string& fallback) const {
    return config::boundary(cfg.get(key, fallback), n, false, param, length);
  }
  BoundaryFunction complex_data(const std::string& key, const std::string& fallback) const {
    return config::boundary(cfg.get(key, fallback), n, true, param, length);
  }
  std::optional<GridSource> grid_source(const std::string& key) const {
    return config::source(cfg.get(key, "zero"), map, cfg.h());
  }
  UnimodularField coefficient(const std::string& key, const std::string& fallback) const {
    return config::field(cfg.get(key, fallback), map, n);
  }
  double tol(double fallback) const { return cfg.number("tol", fallback); }

  void line(std::string label, std::string invariant, double measured, double bound,
            bool upper = true) {
    result.lines.push_back({std::move(label), std::move(invariant), measured, bound, upper});
  }

  io::Lattice interior_lattice() const {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (int k = 0; k < 512; ++k) {
      const cd p = map.boundary_point(kTwoPi * k / 512.0);
      lo_x = std::min(lo_x, p.real());
      lo_y = std::min(lo_y, p.imag());
      hi_x = std::max(hi_x, p.real());
      hi_y = std::max(hi_y, p.imag());
    }
    const std::size_t m = cfg.count("grid", 41);
    return {cd(lo_x, lo_y), cd(hi_x, hi_y), m, m};
  }
  io::Lattice exterior_lattice() const {
    const std::size_t m = cfg.count("grid", 41);
    return {cd(-2.0, -2.0), cd(2.0, 2.0), m, m};
  }

  /// Interior probes map(r e^{i t}) for r <= 0.6.
  std::vector<cd> probes() const {
    std::vector<cd> out;
    for (int k = 0; k < 20; ++k) out.push_back(map(std::polar(0.03 * k, 0.9 * k)));
    return out;
  }

  void require_disk(const char* what) const {
    if (!disk) throw Error("cli", std::string(what) + " runs on the unit disk only");
  }
};

double laplacian_error(const std::function<double(cd)>& u, const std::optional<GridSource>& G,
                       const std::vector<cd>& probes, double h) {
  double e = 0.0;
  for (const cd z : probes) {
    const double lap = (u(z + h) + u(z - h) + u(z + cd(0, h)) + u(z - cd(0, h)) - 4.0 * u(z)) / (h * h);
    e = std::max(e, std::abs(lap - (G ? G->value_at(z) : 0.0)));
  }
  return e;
}

double wirtinger_error(const GeneralizedSolution& s, const GridSource& g,
                       const std::vector<cd>& probes, double d) {
  double e = 0.0;
  for (const cd z : probes) {
    const cd dzb = 0.5 * ((s(z + d) - s(z - d)) / (2.0 * d) +
                          cd(0.0, 1.0) * (s(z + cd(0, d)) - s(z - cd(0, d))) / (2.0 * d));
    e = std::max(e, std::abs(dzb - g.value_at(z)));
  }
  return e;
}

void run_hilbert(Context& c, bool dirichlet) {
  const auto lam = dirichlet ? config::field("const:1", c.map, c.n)
                             : c.coefficient("lambda", "const:1");
  const auto phi = c.real_data("phi", "zero");
  const auto g = c.grid_source("g");
  const auto sol = solve_hilbert_generalized(lam, phi, g, c.map);
  const auto res = hilbert_residuals(sol, lam, phi, c.anchors);
  const std::string name = dirichlet ? "dirichlet" : "hilbert";
  io::write_solution_grid(c.path(name + "_grid.csv"), sol, c.interior_lattice());
  io::write_json(c.path(name + "_residuals.json"), io::to_json(res));
  c.line("median Stolz boundary residual", "hilbert: Re(conj(lambda) h) -> phi", median_residual(res),
         c.tol(1e-2));
  if (g) {
    c.line("FD d/dzbar of h vs g at interior probes", "potential: d/dzbar T_g = g",
           wirtinger_error(sol, *g, c.probes(), g->cell_size()), 5e-2);
  }
  for (const auto& w : sol.warnings) c.result.notes.push_back(w);
}

void run_poincare(Context& c, bool neumann) {
  auto phi = c.real_data("phi", "zero");
  if (c.cfg.flag("outward")) {
    auto v = phi.real_samples();
    for (double& x : v) x = -x;
    phi = phi.with_real_samples(std::move(v));
  }
  const auto G = c.grid_source("G");
  const double h = G ? G->cell_size() : c.cfg.h();
  if (neumann) {
    NeumannOptions no;
    no.anchors = c.cfg.anchors();
    no.seed = c.cfg.seed();
    no.tolerance = c.tol(2e-2);
    const auto U = solve_neumann(c.map, phi, G, no);
    io::write_poisson_grid(c.path("neumann_grid.csv"), U, c.interior_lattice());
    io::write_json(c.path("neumann_certificate.json"), io::to_json(*U.certificate));
    c.line("FD Laplacian of U vs G at interior probes", "poincare: Delta U = G",
           laplacian_error([&](cd z) { return U(z); }, G, c.probes(), h), 1e-2);
    std::size_t ok = 0;
    double worst = 0.0;
    for (const auto& a : U.certificate->anchors) {
      ok += a.residual <= no.tolerance;
      worst = std::max(worst, a.residual);
    }
    c.line("fraction of anchors with normal-derivative residual within tolerance",
           "poincare: dU/dn -> phi at anchors",
           static_cast<double>(ok) / static_cast<double>(U.certificate->anchors.size()), 0.9, false);
    c.line("certified fraction (residual and Neumann consistency)",
           "poincare: Neumann statements agree", U.certificate->certified_fraction(), 0.9, false);
    for (const auto& w : U.warnings) c.result.notes.push_back(w);
    return;
  }
  const auto nu = c.coefficient("nu", "inner");
  const auto U = solve_poincare(c.map, nu, phi, G);
  const auto res = poincare_residuals(U, phi, c.anchors);
  io::write_poisson_grid(c.path("poincare_grid.csv"), U, c.interior_lattice());
  io::write_json(c.path("poincare_residuals.json"), io::to_json(res));
  c.line("median directional-derivative residual", "poincare: dU/dnu -> phi", median_residual(res),
         c.tol(2e-2));
  c.line("FD Laplacian of U vs G at interior probes", "poincare: Delta U = G",
         laplacian_error([&](cd z) { return U(z); }, G, c.probes(), h), 1e-2);
}

void write_pair(Context& c, const SolutionPair& p, const std::string& stem) {
  io::write_solution_grid(c.path(stem + "_plus.csv"), p.plus, c.interior_lattice());
  io::write_solution_grid(c.path(stem + "_minus.csv"), p.minus, c.exterior_lattice(), true);
}

/// Fourier split of a `fourier:` or `const:` jump: f+ carries every coefficient.
void exact_split_line(Context& c, const SolutionPair& p) {
  const std::string spec = c.cfg.get("B", "zero");
  const auto colon = spec.find(':');
  const std::string form = spec.substr(0, colon);
  if ((form != "fourier" && form != "const") || c.cfg.get("g", "zero") != "zero") return;
  std::vector<cd> coeff;
  std::stringstream args(spec.substr(colon + 1));
  for (std::string item; std::getline(args, item, ',');) coeff.push_back(config::parse_complex(item));
  double e = 0.0;
  for (cd z : {cd(0.3, 0.2), cd(-0.5, 0.1), cd(0.0, 0.8), cd(0.6, -0.6)}) {
    cd exact = form == "const" ? coeff.at(0) : 0.0;
    if (form == "fourier") {
      for (std::size_t k = 0; k < coeff.size(); ++k) exact += coeff[k] * std::pow(z, static_cast<int>(k + 1));
    }
    e = std::max(e, std::abs(p.f_plus(z) - exact));
    e = std::max(e, std::abs(p.f_minus(1.0 / z)));
  }
  c.line("f+ equals the Fourier polynomial and f- vanishes", "riemann: Cauchy integral of a polynomial",
         e, 1e-10);
}

void relation(Context& c, const std::vector<RelationResidual>& r, const std::string& stem,
              const std::string& invariant, double bound) {
  io::write_json(c.path(stem + "_relation.json"), io::to_json(r));
  c.line("max anchored relation residual", invariant, max_residual(r), c.tol(bound));
}

void run_riemann(Context& c) {
  c.require_disk(c.cfg.problem.c_str());
  const auto g = c.grid_source("g");
  const RelationOptions ro{c.anchors, {}};
  const std::string& p = c.cfg.problem;
  if (p == "jump") {
    const auto B = c.complex_data("B", "zero");
    const auto pair = solve_jump(B, g);
    write_pair(c, pair, "jump");
    exact_split_line(c, pair);
    relation(c, paired_jump_residuals(pair, B, c.anchors), "jump", "riemann: f+ - f- = B", 1e-2);
  } else if (p == "shift") {
    const auto B = c.complex_data("B", "zero");
    const auto beta = config::shift(c.cfg.get("beta", "identity"), c.n);
    std::optional<BoundaryFunction> psi;
    if (c.cfg.has("psi")) psi = c.complex_data("psi", "zero");
    const auto pair = solve_riemann_shift(B, beta, g, psi, ro);
    write_pair(c, pair, "shift");
    relation(c, shift_residuals(pair, B, beta, c.anchors), "shift", "riemann: f+(beta) = f- + B", 1e-2);
  } else if (p == "nonlinear") {
    const auto phic = config::caratheodory(c.cfg.get("map", "identity"), c.n);
    const auto beta = config::shift(c.cfg.get("beta", "identity"), c.n);
    const auto beta_star = config::shift(c.cfg.get("beta_star", "identity"), c.n);
    const auto psi = c.complex_data("psi", "zero");
    const auto pair = solve_nonlinear(phic, beta, beta_star, g, psi, ro);
    write_pair(c, pair, "nonlinear");
    relation(c, nonlinear_residuals(pair, phic, beta, beta_star, c.anchors), "nonlinear",
             "riemann: f+(beta) = phi_c(zeta, f-(beta*))", 1e-2);
  } else if (p == "mixed") {
    const auto phic = config::caratheodory(c.cfg.get("map", "identity"), c.n);
    const auto beta = config::shift(c.cfg.get("beta", "identity"), c.n);
    const auto beta_star = config::shift(c.cfg.get("beta_star", "identity"), c.n);
    const auto nu = c.coefficient("nu", "const:1");
    const auto a = c.complex_data("a", "zero");
    const auto sol = solve_mixed(phic, nu, beta, beta_star, g, a, ro);
    io::write_solution_grid(c.path("mixed_plus.csv"), sol.pair.plus, c.interior_lattice());
    relation(c, mixed_residuals(sol, phic, beta, beta_star, c.anchors), "mixed",
             "riemann: f+(beta) = phi_c(zeta, df-/dnu (beta*))", 1e-2);
  }
}

void run_riemann_poincare(Context& c) {
  c.require_disk("riemann_poincare");
  const auto phic = config::caratheodory(c.cfg.get("map", "identity"), c.n);
  const auto mu = c.coefficient("mu", "inner");
  const auto nu = c.coefficient("nu", "outer");
  const auto G = c.grid_source("G");
  const auto psi = c.real_data("psi", "zero");
  const auto pair = solve_riemann_poincare(phic, mu, nu, G, psi, {c.anchors, {}});
  io::write_poisson_grid(c.path("riemann_poincare_plus.csv"), pair.plus, c.interior_lattice());
  const auto r = riemann_poincare_residuals(pair, phic, c.anchors);
  io::write_json(c.path("riemann_poincare_relation.json"), io::to_json(r));
  c.line("median anchored relation residual", "riemann: [dU/dmu]+ = phi_c(zeta, [dU/dnu]-)",
         median_residual(r), c.tol(2e-2));
  const double h = G ? G->cell_size() : c.cfg.h();
  c.line("FD Laplacian of U+ vs G at interior probes", "poincare: Delta U = G",
         laplacian_error([&](cd z) { return pair.plus(z); }, G, c.probes(), h), 1e-2);
}

void run_luzin(Context& c) {
  const auto phi = config::boundary(c.cfg.get("phi", "const:1"), c.n, false);
  const auto P = luzin_primitive(phi, c.cfg.number("bound", 1e6));
  {
    std::ostringstream csv;
    csv << "theta,Phi\n";
    for (std::size_t j = 0; j <= c.n; ++j) {
      const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(c.n);
      csv << io::number(t) << ',' << io::number(P(t)) << '\n';
    }
    io::write_text(c.path("luzin_primitive.csv"), csv.str());
  }
  const auto field = PoissonStieltjes::from_primitive(P, 16);
  const io::Lattice lat{cd(-1.0, -1.0), cd(1.0, 1.0), c.cfg.count("grid", 41), c.cfg.count("grid", 41)};
  std::vector<cd> pts;
  for (const cd z : lat.points()) {
    if (std::abs(z) < 1.0 - 1e-9) pts.push_back(z);
  }
  std::vector<cd> vals(pts.size());
  const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    vals[static_cast<std::size_t>(k)] = field(pts[static_cast<std::size_t>(k)]).value;
  }
  io::write_points(c.path("luzin_field.csv"), pts, vals, false);
  c.line("|Phi(0)| + |Phi(2pi)|", "boundary_data: Phi(0) = Phi(2pi) = 0",
         std::abs(P(0.0)) + std::abs(P(kTwoPi)), 0.0);
  double fd = 0.0;
  const double d = 1e-7;
  const double bound = P.truncation_bound();
  for (double m : cantor_gap_midpoints(3)) {
    const double clamped = std::clamp(phi.real_at(m), -bound, bound);
    fd = std::max(fd, std::abs((P(m + d) - P(m - d)) / (2.0 * d) - clamped));
  }
  c.line("FD derivative of Phi at removed-interval midpoints vs clamped phi",
         "boundary_data: Phi' = clamp(phi) off the Cantor set", fd, 1e-6);
}

}  // namespace

bool SummaryLine::pass() const {
  return std::isfinite(measured) && (upper ? measured <= bound : measured >= bound);
}

bool ExperimentResult::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const SummaryLine& l) { return l.pass(); });
}

std::string ExperimentResult::summary() const {
  std::ostringstream s;
  for (const auto& l : lines) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e %s %.3e", l.measured, l.upper ? "<=" : ">=", l.bound);
    s << (l.pass() ? "PASS " : "FAIL ") << l.label << ": " << buf << "  (" << l.invariant << ")\n";
  }
  for (const auto& n : notes) s << "note: " << n << '\n';
  for (const auto& a : artifacts) s << "wrote " << a << '\n';
  return s.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.problem == "verify") throw Error("cli", "use the verify command for verification suites");
  Context c(cfg);
  const std::string& p = cfg.problem;
  if (p == "hilbert" || p == "dirichlet") {
    run_hilbert(c, p == "dirichlet");
  } else if (p == "poincare" || p == "neumann") {
    run_poincare(c, p == "neumann");
  } else if (p == "jump" || p == "shift" || p == "nonlinear" || p == "mixed") {
    run_riemann(c);
  } else if (p == "riemann_poincare") {
    run_riemann_poincare(c);
  } else if (p == "luzin_demo") {
    run_luzin(c);
  }
  const std::string text = c.result.summary();
  io::write_text((c.dir / (p + "_summary.txt")).string(), text);
  return std::move(c.result);
}

}  // namespace rbvp
