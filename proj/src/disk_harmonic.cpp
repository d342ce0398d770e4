#include "rbvp/disk_harmonic.hpp"

#include <array>
#include <cmath>
#include <random>

#include "rbvp/error.hpp"
#include "rbvp/fourier.hpp"

namespace rbvp {
namespace {

const char* kModule = "disk_harmonic";
constexpr std::size_t kPanelOrder = 10;
constexpr int kMaxDepth = 48;

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > kPi ? kTwoPi - d : d;
}

// 1 - 2 r cos s + r^2 without cancellation near r = 1, s = 0.
double kernel_denominator(double r, double s) {
  const double q = std::sin(0.5 * s);
  return (1.0 - r) * (1.0 - r) + 4.0 * r * q * q;
}

double poisson_kernel(double r, double s) {
  return (1.0 - r) * (1.0 + r) / kernel_denominator(r, s);
}

// d/ds of the Poisson kernel.
double poisson_kernel_slope(double r, double s) {
  const double den = kernel_denominator(r, s);
  return -2.0 * r * (1.0 - r) * (1.0 + r) * std::sin(s) / (den * den);
}

bool needs_split(double a, double b, double theta, double gap) {
  const double width = b - a;
  const double d = std::max(0.0, circular_distance(0.5 * (a + b), theta) - 0.5 * width);
  return width > std::max(d, gap);
}

}  // namespace

const GaussRule& gauss_rule(std::size_t n) {
  static const std::array<GaussRule, 33> rules = [] {
    std::array<GaussRule, 33> out;
    for (std::size_t m = 1; m < out.size(); ++m) {
      auto& rule = out[m];
      rule.x.resize(m);
      rule.w.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
          double p0 = 1.0;
          double p1 = x;
          for (std::size_t k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = p2;
          }
          if (m == 1) p0 = 1.0;
          dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
          const double dx = p1 / dp;
          x -= dx;
          if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
      }
    }
    return out;
  }();
  if (n == 0 || n >= rules.size()) throw Error(kModule, "unsupported Gauss order");
  return rules[n];
}

// ---------------------------------------------------------------------------

SchwarzIntegral::SchwarzIntegral(const BoundaryFunction& phi) : interp_(phi.interpolation()) {
  if (phi.parameterization() != Parameterization::angle ||
      std::abs(phi.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "disk integrals need angle-parameterized data on [0, 2pi)");
  }
  if (phi.is_complex()) throw Error(kModule, "expected real boundary data");
  values_ = phi.real_samples();
  nodes_.resize(values_.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    nodes_[j] = std::polar(1.0, phi.node(j));
    sum += values_[j];
  }
  mean_ = sum / static_cast<double>(values_.size());
}

bool SchwarzIntegral::resolved(cd z) const noexcept {
  return (1.0 - std::abs(z)) >= 4.0 * kTwoPi / static_cast<double>(values_.size());
}

AnalyticValue SchwarzIntegral::integrate(cd z, bool derivative) const {
  const std::size_t n = values_.size();
  if (!(std::abs(z) < 1.0)) throw Error(kModule, "evaluation point outside the open disk");
  if (resolved(z)) {
    cd acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cd d = nodes_[j] - z;
      acc += derivative ? values_[j] * 2.0 * nodes_[j] / (d * d)
                        : values_[j] * (nodes_[j] + z) / d;
    }
    return {acc / static_cast<double>(n), false};
  }

  const double h = kTwoPi / static_cast<double>(n);
  cd acc = 0.0;
  if (interp_ == Interpolation::nearest) {
    const cd i(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = h * (static_cast<double>(j) - 0.5);
      const cd za = std::polar(1.0, a) - z;
      const cd zb = std::polar(1.0, a + h) - z;
      const cd cell = derivative ? 2.0 * i * (1.0 / zb - 1.0 / za)
                                 : -2.0 * i * std::log(zb / za) - h;
      acc += values_[j] * cell;
    }
    return {acc / kTwoPi, true};
  }

  const double theta = std::arg(z);
  const double gap = 1.0 - std::abs(z);
  const GaussRule& rule = gauss_rule(kPanelOrder);
  const GaussRule& mid_rule = gauss_rule(6);
  const GaussRule& far_rule = gauss_rule(4);
  auto kernel = [&](double t) {
    const cd zeta = std::polar(1.0, t);
    const cd d = zeta - z;
    return derivative ? 2.0 * zeta / (d * d) : (zeta + z) / d;
  };
  std::function<cd(double, double, double, double, int)> panel =
      [&](double a, double b, double fa, double fb, int depth) -> cd {
    if (depth < kMaxDepth && needs_split(a, b, theta, gap)) {
      const double m = 0.5 * (a + b);
      const double fm = 0.5 * (fa + fb);
      return panel(a, m, fa, fm, depth + 1) + panel(m, b, fm, fb, depth + 1);
    }
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double dist = std::hypot(std::max(0.0, circular_distance(mid, theta) - half), gap);
    const GaussRule& r = dist > 16.0 * half ? far_rule : dist > 6.0 * half ? mid_rule : rule;
    cd s = 0.0;
    for (std::size_t k = 0; k < r.x.size(); ++k) {
      const double tau = 0.5 * (1.0 + r.x[k]);
      s += r.w[k] * kernel(mid + half * r.x[k]) * (fa + tau * (fb - fa));
    }
    return half * s;
  };
  for (std::size_t j = 0; j < n; ++j) {
    acc += panel(h * static_cast<double>(j), h * static_cast<double>(j + 1), values_[j],
                 values_[(j + 1) % n], 0);
  }
  return {acc / kTwoPi, true};
}

HarmonicValue SchwarzIntegral::poisson(cd z) const {
  const auto v = integrate(z, false);
  return {v.value.real(), v.under_resolved};
}

AnalyticValue SchwarzIntegral::schwarz(cd z) const { return integrate(z, false); }

AnalyticValue SchwarzIntegral::derivative(cd z) const { return integrate(z, true); }

HarmonicValue poisson_integral(const BoundaryFunction& phi, cd z) {
  return SchwarzIntegral(phi).poisson(z);
}

AnalyticValue schwarz_operator(const BoundaryFunction& phi, cd z) {
  return SchwarzIntegral(phi).schwarz(z);
}

BoundaryFunction conjugate_function(const BoundaryFunction& phi) {
  if (phi.is_complex()) throw Error(kModule, "conjugate_function expects real data");
  return phi.with_real_samples(fourier::conjugate(phi.real_samples()));
}

// ---------------------------------------------------------------------------

PoissonStieltjes::PoissonStieltjes(std::function<double(double)> primitive, std::size_t cells)
    : primitive_(std::move(primitive)) {
  if (cells < 4) throw Error(kModule, "Stieltjes partition too coarse");
  nodes_.resize(cells + 1);
  values_.resize(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) {
    nodes_[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(cells);
    values_[k] = primitive_(k == cells ? kTwoPi : nodes_[k]);
  }
}

PoissonStieltjes PoissonStieltjes::from_primitive(const ContinuousPrimitive& phi,
                                                  std::size_t refine) {
  if (std::abs(phi.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "Stieltjes integrals need a primitive on [0, 2pi]");
  }
  return PoissonStieltjes([phi](double t) { return phi(t); }, phi.base_size() * refine);
}

HarmonicValue PoissonStieltjes::operator()(cd z, StieltjesMode mode) const {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw Error(kModule, "evaluation point outside the open disk");
  const double theta = std::arg(z);
  const double gap = 1.0 - r;
  const std::size_t m = nodes_.size() - 1;
  const bool flagged = gap < 4.0 * kTwoPi / static_cast<double>(m);
  const bool sum_mode = mode == StieltjesMode::stieltjes_sum;

  auto contribution = [&](double a, double b, double fa, double fb) {
    if (sum_mode && fb == fa) return 0.0;
    if (sum_mode) return poisson_kernel(r, theta - 0.5 * (a + b)) * (fb - fa);
    return 0.5 * (b - a) *
           (poisson_kernel_slope(r, theta - a) * fa + poisson_kernel_slope(r, theta - b) * fb);
  };
  std::function<double(double, double, double, double, int)> cell =
      [&](double a, double b, double fa, double fb, int depth) -> double {
    if (flagged && depth < kMaxDepth && needs_split(a, b, theta, gap)) {
      const double mid = 0.5 * (a + b);
      const double fm = primitive_(mid);
      return cell(a, mid, fa, fm, depth + 1) + cell(mid, b, fm, fb, depth + 1);
    }
    return contribution(a, b, fa, fb);
  };

  double acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    acc += cell(nodes_[k], nodes_[k + 1], values_[k], values_[k + 1], 0);
  }
  if (!sum_mode) acc += poisson_kernel(r, theta) * (values_[m] - values_[0]);
  return {acc / kTwoPi, flagged};
}

AnalyticValue PoissonStieltjes::herglotz(cd z, bool derivative) const {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw Error(kModule, "evaluation point outside the open disk");
  const double theta = std::arg(z);
  const double gap = 1.0 - r;
  const std::size_t m = nodes_.size() - 1;
  const bool flagged = gap < 4.0 * kTwoPi / static_cast<double>(m);
  std::function<cd(double, double, double, double, int)> cell =
      [&](double a, double b, double fa, double fb, int depth) -> cd {
    if (flagged && depth < kMaxDepth && needs_split(a, b, theta, gap)) {
      const double mid = 0.5 * (a + b);
      const double fm = primitive_(mid);
      return cell(a, mid, fa, fm, depth + 1) + cell(mid, b, fm, fb, depth + 1);
    }
    if (fb == fa) return cd(0.0);
    const cd zeta = std::polar(1.0, 0.5 * (a + b));
    const cd d = zeta - z;
    return (derivative ? 2.0 * zeta / (d * d) : (zeta + z) / d) * (fb - fa);
  };
  cd acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    acc += cell(nodes_[k], nodes_[k + 1], values_[k], values_[k + 1], 0);
  }
  return {acc / kTwoPi, flagged};
}

HarmonicValue poisson_stieltjes(const ContinuousPrimitive& phi, cd z, StieltjesMode mode,
                                std::size_t refine) {
  return PoissonStieltjes::from_primitive(phi, refine)(z, mode);
}

double cantor_primitive(double t) {
  return cantor_function(std::clamp(t / kTwoPi, 0.0, 1.0));
}

const PoissonStieltjes& cantor_field() {
  static const PoissonStieltjes field(cantor_primitive, 4096 * 16);
  return field;
}

double null_harmonic_cantor(cd z) { return cantor_field()(z).value; }

std::vector<double> cantor_gap_midpoints(int generation) {
  std::vector<double> out;
  std::vector<double> starts{0.0};
  double width = 1.0;
  for (int g = 1; g <= generation; ++g) {
    std::vector<double> next;
    for (double a : starts) {
      out.push_back(kTwoPi * (a + 0.5 * width));
      next.push_back(a);
      next.push_back(a + 2.0 * width / 3.0);
    }
    starts = std::move(next);
    width /= 3.0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

HarmonicRep::HarmonicRep(const BoundaryFunction& data) : data_(SchwarzIntegral(data)) {}

HarmonicRep::HarmonicRep(PoissonStieltjes stieltjes) : stieltjes_(std::move(stieltjes)) {}

double HarmonicRep::operator()(cd z) const {
  if (data_) return data_->poisson(z).value;
  return (*stieltjes_)(z).value;
}

StolzPath StolzPath::standard(cd anchor, double aperture, double ray_offset, int levels) {
  if (std::abs(std::abs(anchor) - 1.0) > 1e-12) throw Error(kModule, "anchor must be unimodular");
  if (!(aperture > 0.0 && aperture < kPi / 2)) throw Error(kModule, "aperture outside (0, pi/2)");
  if (!(ray_offset > -1.0 && ray_offset < 1.0)) throw Error(kModule, "ray offset outside (-1, 1)");
  StolzPath p;
  p.anchor = anchor;
  p.aperture = aperture;
  p.ray_offset = ray_offset;
  double g = 0.1;
  for (int k = 0; k < levels; ++k) {
    p.gaps.push_back(g);
    g *= 0.25;
  }
  return p;
}

std::vector<cd> StolzPath::points() const {
  const cd dir = std::polar(1.0, ray_offset * aperture);
  std::vector<cd> out;
  out.reserve(gaps.size());
  for (double g : gaps) out.push_back(anchor * (1.0 - g * dir));
  return out;
}

NontangentialSample sequence_limit(std::vector<cd> values, double tol) {
  NontangentialSample s;
  for (const cd& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      s.diverged = true;
      s.estimate = cd(std::nan(""), std::nan(""));
      s.values = std::move(values);
      return s;
    }
  }
  s.values = std::move(values);
  const std::size_t n = s.values.size();
  if (n == 0) throw Error(kModule, "empty sample sequence");
  s.estimate = s.values.back();
  if (n < 4) return s;
  std::vector<double> d;
  for (std::size_t k = 1; k < n; ++k) d.push_back(std::abs(s.values[k] - s.values[k - 1]));
  const std::size_t m = d.size();
  const double slack = 1e-14 * (1.0 + std::abs(s.values.back()));
  s.converged = d[m - 3] + slack >= d[m - 2] && d[m - 2] + slack >= d[m - 1] && d[m - 1] <= tol;
  if (s.converged && d[m - 1] > 0.0) {
    const double q = d[m - 2] / d[m - 1];
    if (q >= 2.0 && q <= 8.0) {
      s.estimate = s.values[n - 1] + (s.values[n - 1] - s.values[n - 2]) / (q - 1.0);
    }
  }
  return s;
}

NontangentialSample sample_nontangential(const std::function<cd(cd)>& field,
                                         const StolzPath& path, double tol) {
  std::vector<cd> values;
  for (const cd& z : path.points()) {
    values.push_back(field(z));
    if (!std::isfinite(values.back().real()) || !std::isfinite(values.back().imag())) break;
  }
  return sequence_limit(std::move(values), tol);
}

std::vector<cd> exterior_points(const StolzPath& path) {
  auto pts = path.points();
  for (auto& z : pts) z = 1.0 / std::conj(z);
  return pts;
}

std::vector<double> uniform_anchors(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = seed == 0 ? 0.5 : unit(rng);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = kTwoPi * (static_cast<double>(k) + offset) / static_cast<double>(count);
  }
  return out;
}

}  // namespace rbvp
