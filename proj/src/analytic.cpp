#include "rbvp/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "rbvp/error.hpp"
#include "rbvp/fourier.hpp"

namespace rbvp {
namespace {

const char* kModule = "analytic";

cd complex_expm1(cd w) {
  const double x = w.real();
  const double y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

void require_disk_data(const BoundaryFunction& d) {
  if (d.parameterization() != Parameterization::angle || std::abs(d.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "expected angle-parameterized data on the unit circle");
  }
}

}  // namespace

Analytic Analytic::constant(cd c) {
  return Analytic([c](cd) { return c; }, [](cd) { return cd(0.0); });
}

Analytic Analytic::identity() {
  return Analytic([](cd z) { return z; }, [](cd) { return cd(1.0); });
}

Analytic Analytic::monomial(int power) {
  return Analytic([power](cd z) { return std::pow(z, power); },
                  [power](cd z) {
                    return power == 0 ? cd(0.0) : static_cast<double>(power) * std::pow(z, power - 1);
                  });
}

Analytic Analytic::scaled(cd c) const {
  auto v = value_;
  auto d = derivative_;
  return Analytic([v, c](cd z) { return c * v(z); }, [d, c](cd z) { return c * d(z); });
}

Analytic Analytic::exp() const {
  auto v = value_;
  auto d = derivative_;
  return Analytic([v](cd z) { return std::exp(v(z)); },
                  [v, d](cd z) { return std::exp(v(z)) * d(z); });
}

Analytic operator+(const Analytic& a, const Analytic& b) {
  return Analytic([a, b](cd z) { return a(z) + b(z); },
                  [a, b](cd z) { return a.derivative(z) + b.derivative(z); });
}

Analytic operator*(const Analytic& a, const Analytic& b) {
  return Analytic([a, b](cd z) { return a(z) * b(z); },
                  [a, b](cd z) { return a.derivative(z) * b(z) + a(z) * b.derivative(z); });
}

// ---------------------------------------------------------------------------

Analytic schwarz_field(const BoundaryFunction& phi) {
  auto s = std::make_shared<SchwarzIntegral>(phi);
  return Analytic([s](cd z) { return s->schwarz(z).value; },
                  [s](cd z) { return s->derivative(z).value; });
}

Analytic schwarz_field_complex(const BoundaryFunction& B) {
  require_disk_data(B);
  const auto re = schwarz_field(B.with_real_samples(B.real_samples()));
  if (!B.is_complex()) return re;
  const auto im = schwarz_field(B.with_real_samples(B.imag_samples()));
  return re + im.scaled(cd(0.0, 1.0));
}

namespace {
cd sample_mean(const BoundaryFunction& B) {
  cd m = 0.0;
  for (std::size_t j = 0; j < B.size(); ++j) m += B[j];
  return m / static_cast<double>(B.size());
}

BoundaryFunction conjugate_samples(const BoundaryFunction& B) {
  std::vector<cd> v(B.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::conj(B[j]);
  return B.with_samples(std::move(v), true);
}
}  // namespace

Analytic cauchy_inside(const BoundaryFunction& B) {
  const auto s = schwarz_field_complex(B);
  const cd mean = sample_mean(B);
  return Analytic([s, mean](cd z) { return 0.5 * (s(z) + mean); },
                  [s](cd z) { return 0.5 * s.derivative(z); });
}

Analytic cauchy_outside(const BoundaryFunction& B) {
  const auto s = schwarz_field_complex(conjugate_samples(B));
  const cd mean = sample_mean(B);
  return Analytic(
      [s, mean](cd z) {
        if (!(std::abs(z) > 1.0)) throw Error(kModule, "exterior Cauchy integral needs |z| > 1");
        return 0.5 * (mean - std::conj(s(1.0 / std::conj(z))));
      },
      [s](cd z) { return 0.5 * std::conj(s.derivative(1.0 / std::conj(z))) / (z * z); });
}

BoundaryFunction reflect_angle(const BoundaryFunction& data) {
  const std::size_t n = data.size();
  std::vector<cd> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = data[(n - j) % n];
  return data.with_samples(std::move(v), data.is_complex());
}

// ---------------------------------------------------------------------------

NullFactor::NullFactor(int order, const NullOptions& opt) : order_(order) {
  if (order < 1) throw Error(kModule, "null factor order must be positive");
  if (!(opt.exceptional_fraction > 0.0 && opt.exceptional_fraction < 0.5)) {
    throw Error(kModule, "exceptional fraction must lie in (0, 0.5)");
  }
  double width = kTwoPi * opt.exceptional_fraction;
  // Place the arc (in the z^order plane) in the widest gap between avoided angles,
  // narrowed to half of that gap.
  double center = 0.0;
  if (!opt.avoid.empty()) {
    std::vector<double> t;
    for (double theta : opt.avoid) t.push_back(wrap_parameter(order * theta, kTwoPi));
    std::sort(t.begin(), t.end());
    double best = -1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double next = (k + 1 < t.size()) ? t[k + 1] : t[0] + kTwoPi;
      if (next - t[k] > best) {
        best = next - t[k];
        center = 0.5 * (t[k] + next);
      }
    }
    width = std::min(width, 0.5 * best);
  } else {
    center = kPi / 7.0;
  }
  c_ = kTwoPi * opt.decay / width;
  a_ = wrap_parameter(center - 0.5 * width, kTwoPi);
  b_ = a_ + width;
}

cd NullFactor::w_of(cd u, cd* dw) const {
  const cd eb = std::polar(1.0, -b_);
  const cd ea = std::polar(1.0, -a_);
  const cd pre = cd(0.0, -c_ / kPi);
  if (dw) *dw = pre * (-eb / (1.0 - u * eb) + ea / (1.0 - u * ea));
  return pre * (std::log(1.0 - u * eb) - std::log(1.0 - u * ea));
}

cd NullFactor::operator()(cd z) const { return std::exp(w_of(std::pow(z, order_), nullptr)); }

cd NullFactor::derivative(cd z) const {
  cd dw;
  const cd w = w_of(std::pow(z, order_), &dw);
  return std::exp(w) * dw * static_cast<double>(order_) * std::pow(z, order_ - 1);
}

cd NullFactor::one_minus(cd z) const { return -complex_expm1(w_of(std::pow(z, order_), nullptr)); }

bool NullFactor::exceptional(double theta, double margin) const {
  const double m = order_ * margin;
  const double t = wrap_parameter(order_ * theta - a_ + m, kTwoPi);
  return t < (b_ - a_) + 2.0 * m;
}

// ---------------------------------------------------------------------------

ComplexDirichlet::ComplexDirichlet(const BoundaryFunction& data, const NullOptions& opt) {
  require_disk_data(data);
  plus_ = cauchy_inside(data);
  const std::size_t n = data.size();
  const auto spec = fourier::forward(data.samples());
  double scale = 1.0;
  for (const cd& c : spec) scale = std::max(scale, std::abs(c) / static_cast<double>(n));
  std::size_t order = 0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    if (std::abs(spec[n - k]) / static_cast<double>(n) > opt.truncation * scale) order = k;
  }
  negative_.resize(order);
  for (std::size_t k = 1; k <= order; ++k) negative_[k - 1] = spec[n - k] / static_cast<double>(n);
  if (order > 0) factor_ = std::make_shared<NullFactor>(static_cast<int>(order), opt);
}

cd ComplexDirichlet::pole_part(cd z, cd* derivative) const {
  const cd w = 1.0 / z;
  cd p = 0.0;
  cd dp = 0.0;
  for (std::size_t k = negative_.size(); k-- > 0;) {
    dp = dp * w + p;
    p = p * w + negative_[k];
  }
  // p(w) = sum_k c_k w^{k}, value = w p(w)
  if (derivative) *derivative = -(w * w) * (p + w * dp);
  return w * p;
}

cd ComplexDirichlet::cauchy_disk(cd z, bool derivative) const {
  constexpr int points = 32;
  constexpr double radius = 0.05;
  cd acc = 0.0;
  for (int p = 0; p < points; ++p) {
    const cd w = std::polar(radius, kTwoPi * p / points);
    cd dn;
    const cd value = plus_(w) + pole_part(w, &dn) * factor_->one_minus(w);
    const cd d = w - z;
    acc += derivative ? value * w / (d * d) : value * w / d;
  }
  return acc / static_cast<double>(points);
}

cd ComplexDirichlet::operator()(cd z) const {
  if (!factor_) return plus_(z);
  if (std::abs(z) < 0.01) return cauchy_disk(z, false);
  return plus_(z) + pole_part(z, nullptr) * factor_->one_minus(z);
}

cd ComplexDirichlet::derivative(cd z) const {
  if (!factor_) return plus_.derivative(z);
  if (std::abs(z) < 0.01) return cauchy_disk(z, true);
  cd dn;
  const cd n = pole_part(z, &dn);
  return plus_.derivative(z) + dn * factor_->one_minus(z) - n * factor_->derivative(z);
}

Analytic ComplexDirichlet::analytic() const {
  auto self = std::make_shared<ComplexDirichlet>(*this);
  return Analytic([self](cd z) { return (*self)(z); }, [self](cd z) { return self->derivative(z); });
}

bool ComplexDirichlet::exceptional(double theta, double margin) const {
  return factor_ && factor_->exceptional(theta, margin);
}

// ---------------------------------------------------------------------------

cd segment_integral(const std::function<cd(cd)>& fn, cd z0, cd z1, double tol, bool* warning) {
  // Gauss-Kronrod 7/15 pair; the Gauss nodes are the odd Kronrod nodes.
  static constexpr double xk[8] = {0.991455371120812639, 0.949107912342758525,
                                   0.864864423359769073, 0.741531185599394440,
                                   0.586087235467691130, 0.405845151377397167,
                                   0.207784955007898468, 0.000000000000000000};
  static constexpr double wk[8] = {0.022935322010529225, 0.063092092629978553,
                                   0.104790010322250184, 0.140653259715525919,
                                   0.169004726639267903, 0.190350578064785410,
                                   0.204432940075298892, 0.209482141084727828};
  static constexpr double wg[4] = {0.129484966168869693, 0.279705391489276668,
                                   0.381830050505118945, 0.417959183673469388};
  auto rule = [&](cd a, cd b, cd* gauss) {
    const cd half = 0.5 * (b - a);
    const cd mid = 0.5 * (a + b);
    const cd fc = fn(mid);
    cd k = wk[7] * fc;
    cd g = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const cd f = fn(mid - half * xk[j]) + fn(mid + half * xk[j]);
      k += wk[j] * f;
      if (j % 2 == 1) g += wg[j / 2] * f;
    }
    *gauss = half * g;
    return half * k;
  };
  std::function<cd(cd, cd, int)> adapt = [&](cd a, cd b, int depth) -> cd {
    cd g;
    const cd k = rule(a, b, &g);
    if (std::abs(k - g) <= tol * (1.0 + std::abs(k))) return k;
    if (depth >= 40) {
      if (warning) *warning = true;
      return k;
    }
    const cd m = 0.5 * (a + b);
    return adapt(a, m, depth + 1) + adapt(m, b, depth + 1);
  };
  if (z0 == z1) return 0.0;
  return adapt(z0, z1, 0);
}

Antiderivative radial_antiderivative(const Analytic& a, cd z, double tol) {
  Antiderivative out;
  if (!(std::abs(z) < 1.0)) throw Error(kModule, "antiderivative needs an interior point");
  // Geometric grading towards the circle: panel lengths comparable to the
  // distance from the boundary.
  const double r = std::abs(z);
  const std::function<cd(cd)> fn = [&a](cd w) { return a(w); };
  double lo = 0.0;
  while (lo < r) {
    const double hi = std::min(r, std::max(lo + 0.5 * (1.0 - lo), lo + 1e-300));
    const double end = (r - hi) < 0.25 * (1.0 - hi) ? r : hi;
    out.value += segment_integral(fn, z * (lo / r), z * (end / r), tol, &out.warning);
    lo = end;
  }
  return out;
}

Analytic integrate_analytic(const Analytic& a) {
  return Analytic([a](cd z) { return radial_antiderivative(a, z).value; },
                  [a](cd z) { return a(z); });
}

ExteriorAntiderivative::ExteriorAntiderivative(std::function<cd(cd)> disk_function,
                                               std::size_t coefficients)
    : fn_(std::move(disk_function)) {
  const std::size_t p = coefficients;
  std::vector<cd> samples(p);
  for (std::size_t k = 0; k < p; ++k) {
    samples[k] = fn_(std::polar(0.5, kTwoPi * static_cast<double>(k) / static_cast<double>(p)));
  }
  const auto spec = fourier::forward(samples);
  coeff_.resize(p / 2);
  for (std::size_t k = 0; k < p / 2; ++k) coeff_[k] = spec[k] / static_cast<double>(p);
  double scale = 0.0;
  for (const cd& c : coeff_) scale = std::max(scale, std::abs(c));
  if (coeff_.size() > 1 && std::abs(coeff_[1]) > 1e-9 * std::max(1.0, scale)) {
    throw Error(kModule, "exterior derivative has a nonzero residue");
  }
}

// coeff_[k] = e_k 0.5^k.
cd ExteriorAntiderivative::series(cd z) const {
  const cd w = 1.0 / z;
  const cd x = w / 0.5;
  cd acc = 0.0;
  for (std::size_t k = coeff_.size(); k-- > 2;) {
    acc = acc * x + coeff_[k] / (0.5 * (1.0 - static_cast<double>(k)));
  }
  return coeff_[0] / w + acc * x;
}

cd ExteriorAntiderivative::operator()(cd z) const {
  const double r = std::abs(z);
  if (!(r > 1.0)) throw Error(kModule, "exterior antiderivative needs |z| > 1");
  if (r >= 2.0) return series(z);
  const cd z0 = 2.0 * z / r;
  bool warn = false;
  return series(z0) + segment_integral([this](cd t) { return fn_(1.0 / t); }, z0, z, 1e-13, &warn);
}

}  // namespace rbvp
