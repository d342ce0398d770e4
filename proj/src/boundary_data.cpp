#include "rbvp/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbvp/error.hpp"
#include "rbvp/fourier.hpp"

namespace rbvp {
namespace {

const char* kModule = "boundary_data";

void validate_samples(std::span<const cd> values, double length) {
  if (values.size() < 4 || !is_power_of_two(values.size())) {
    throw Error(kModule, "sample count must be a power of two >= 4, got " +
                             std::to_string(values.size()));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(kModule, "parameter length must be positive and finite");
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag())) {
      throw Error(kModule, "non-finite sample at index " + std::to_string(j));
    }
  }
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

double wrap_parameter(double s, double length) noexcept {
  double r = std::fmod(s, length);
  if (r < 0.0) r += length;
  if (r >= length) r = 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// BoundaryFunction

BoundaryFunction::BoundaryFunction(std::vector<cd> values, Parameterization param, double length,
                                   Interpolation interp, bool is_complex)
    : values_(std::move(values)),
      param_(param),
      length_(length),
      interp_(interp),
      complex_(is_complex) {
  validate_samples(values_, length_);
}

BoundaryFunction BoundaryFunction::real(std::vector<double> samples, Parameterization param,
                                        double length, Interpolation interp) {
  std::vector<cd> v(samples.begin(), samples.end());
  return BoundaryFunction(std::move(v), param, length, interp, false);
}

BoundaryFunction BoundaryFunction::complex(std::vector<cd> samples, Parameterization param,
                                           double length, Interpolation interp) {
  return BoundaryFunction(std::move(samples), param, length, interp, true);
}

BoundaryFunction BoundaryFunction::sample_real(const std::function<double(double)>& fn,
                                               std::size_t n, Parameterization param,
                                               double length, Interpolation interp) {
  std::vector<double> v(n);
  const double h = length / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = fn(h * static_cast<double>(j));
  return real(std::move(v), param, length, interp);
}

BoundaryFunction BoundaryFunction::sample_complex(const std::function<cd(double)>& fn,
                                                  std::size_t n, Parameterization param,
                                                  double length, Interpolation interp) {
  std::vector<cd> v(n);
  const double h = length / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = fn(h * static_cast<double>(j));
  return complex(std::move(v), param, length, interp);
}

std::vector<double> BoundaryFunction::real_samples() const {
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) out[j] = values_[j].real();
  return out;
}

std::vector<double> BoundaryFunction::imag_samples() const {
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) out[j] = values_[j].imag();
  return out;
}

cd BoundaryFunction::operator()(double s) const {
  const std::size_t n = values_.size();
  const double h = spacing();
  const double u = wrap_parameter(s, length_) / h;
  if (interp_ == Interpolation::nearest) {
    auto k = static_cast<std::size_t>(std::floor(u + 0.5));
    return values_[k % n];
  }
  const auto k = static_cast<std::size_t>(std::floor(u));
  const double tau = u - static_cast<double>(k);
  const cd a = values_[k % n];
  const cd b = values_[(k + 1) % n];
  if (tau == 0.0) return a;
  return a + tau * (b - a);
}

BoundaryFunction BoundaryFunction::with_samples(std::vector<cd> samples, bool is_complex) const {
  if (samples.size() != values_.size()) {
    throw Error(kModule, "with_samples: sample count mismatch");
  }
  return BoundaryFunction(std::move(samples), param_, length_, interp_, is_complex);
}

BoundaryFunction BoundaryFunction::with_real_samples(std::vector<double> samples) const {
  std::vector<cd> v(samples.begin(), samples.end());
  return with_samples(std::move(v), false);
}

BoundaryFunction BoundaryFunction::with_interpolation(Interpolation interp) const {
  return BoundaryFunction(values_, param_, length_, interp, complex_);
}

bool BoundaryFunction::same_grid(const BoundaryFunction& other) const noexcept {
  return other.size() == size() && other.param_ == param_ &&
         std::abs(other.length_ - length_) <= 1e-12 * length_;
}

// ---------------------------------------------------------------------------
// UnimodularField

UnimodularField::UnimodularField(BoundaryFunction base, BoundaryFunction branch)
    : base_(std::move(base)), branch_(std::move(branch)) {}

UnimodularField UnimodularField::from_samples(const BoundaryFunction& lambda) {
  std::vector<double> branch(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const cd v = lambda[j];
    if (std::abs(std::abs(v) - 1.0) > 1e-12) {
      throw Error(kModule, "coefficient is not unimodular at sample " + std::to_string(j));
    }
    branch[j] = std::arg(v);
  }
  auto base = BoundaryFunction::complex(std::vector<cd>(lambda.samples().begin(),
                                                        lambda.samples().end()),
                                        lambda.parameterization(), lambda.length(),
                                        lambda.interpolation());
  auto br = BoundaryFunction::real(std::move(branch), lambda.parameterization(), lambda.length(),
                                   lambda.interpolation());
  return UnimodularField(std::move(base), std::move(br));
}

UnimodularField UnimodularField::normalized(const BoundaryFunction& lambda) {
  std::vector<cd> v(lambda.samples().begin(), lambda.samples().end());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double m = std::abs(v[j]);
    if (m < 1e-300) throw Error(kModule, "cannot normalize a zero coefficient");
    v[j] /= m;
  }
  return from_samples(lambda.with_samples(std::move(v), true));
}

UnimodularField UnimodularField::from_angle(const BoundaryFunction& angle) {
  std::vector<cd> v(angle.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::polar(1.0, angle[j].real());
  return from_samples(angle.with_samples(std::move(v), true));
}

UnimodularField UnimodularField::constant(cd value, std::size_t n, Parameterization param,
                                          double length) {
  return normalized(BoundaryFunction::complex(std::vector<cd>(n, value), param, length));
}

cd UnimodularField::operator()(double s) const {
  const cd v = base_(s);
  const double m = std::abs(v);
  return m > 0.0 ? v / m : cd(1.0);
}

int UnimodularField::winding_number() const {
  double total = 0.0;
  const std::size_t n = base_.size();
  for (std::size_t j = 0; j < n; ++j) {
    total += std::arg(base_[(j + 1) % n] / base_[j]);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

UnimodularField UnimodularField::conjugated() const {
  std::vector<cd> v(base_.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::conj(base_[j]);
  return from_samples(base_.with_samples(std::move(v), true));
}

// ---------------------------------------------------------------------------
// Cantor staircase and Luzin primitive

double cantor_function(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(kModule, "cantor_function: argument outside [0,1]");
  if (x == 1.0) return 1.0;
  if (x == 0.0) return 0.0;
  // x = p / 2^shift exactly; the ternary digits come from integer arithmetic.
  int e = 0;
  std::frexp(x, &e);
  const int shift = 53 - e;
  __extension__ typedef unsigned __int128 u128;
  if (shift > 124) return 0.0;  // x < 2^-71: C(x) < 1e-28
  u128 p = static_cast<u128>(std::ldexp(x, shift));
  const u128 q = static_cast<u128>(1) << shift;
  double result = 0.0;
  double scale = 0.5;
  for (int k = 0; k < 64; ++k) {
    p *= 3;
    const auto d = static_cast<int>(p / q);
    p %= q;
    if (d == 1) return result + scale;
    if (d == 2) result += scale;
    scale *= 0.5;
  }
  return result;
}

namespace {
constexpr std::size_t kPrimitiveRefinement = 16;
}

ContinuousPrimitive luzin_primitive(const BoundaryFunction& phi, double truncation_bound) {
  if (!(truncation_bound > 0.0)) throw Error(kModule, "truncation bound must be positive");
  if (phi.is_complex()) throw Error(kModule, "luzin_primitive expects real data");
  ContinuousPrimitive out;
  out.length_ = phi.length();
  out.bound_ = truncation_bound;
  out.n_ = phi.size();
  out.interp_ = phi.interpolation();
  const std::size_t n = phi.size();
  const double h = phi.spacing();

  std::vector<double> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = std::clamp(phi[j].real(), -truncation_bound, truncation_bound);
  }

  if (out.interp_ == Interpolation::nearest) {
    out.cells_ = c;
    out.prefix_.assign(n + 1, 0.0);
    out.prefix_[1] = 0.5 * h * c[0];
    for (std::size_t k = 2; k <= n; ++k) out.prefix_[k] = out.prefix_[k - 1] + h * c[k - 1];
    out.mass_ = out.prefix_[n] + 0.5 * h * c[0];
    return out;
  }

  const auto spec = fourier::forward(fourier::to_complex(c));
  const double omega = kTwoPi / out.length_;
  const std::size_t m = n * kPrimitiveRefinement;
  std::vector<cd> pint(m, cd(0.0));
  std::vector<cd> pder(m, cd(0.0));
  auto place = [&](long f, cd coeff) {
    const std::size_t idx = f >= 0 ? static_cast<std::size_t>(f) : m - static_cast<std::size_t>(-f);
    pder[idx] += coeff;
    pint[idx] += coeff / (cd(0.0, 1.0) * omega * static_cast<double>(f));
  };
  for (std::size_t k = 0; k < n; ++k) {
    const long f = fourier::frequency(k, n);
    if (f == 0) continue;
    const cd coeff = spec[k] / static_cast<double>(n);
    if (2 * static_cast<std::size_t>(std::labs(f)) == n) {
      place(f, 0.5 * coeff);
      place(-f, 0.5 * coeff);
    } else {
      place(f, coeff);
    }
  }
  auto p = fourier::inverse(pint);
  auto dp = fourier::inverse(pder);
  out.table_.resize(m);
  out.slope_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.table_[k] = p[k].real() * static_cast<double>(m);
    out.slope_[k] = dp[k].real() * static_cast<double>(m);
  }
  out.mean_ = spec[0].real() / static_cast<double>(n);
  out.mass_ = out.mean_ * out.length_;
  return out;
}

double ContinuousPrimitive::absolutely_continuous_part(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= length_) return mass_;
  if (interp_ == Interpolation::nearest) {
    const double h = length_ / static_cast<double>(n_);
    const double u = t / h;
    if (u < 0.5) return cells_[0] * t;
    auto k = static_cast<std::size_t>(std::floor(u + 0.5));
    if (k > n_) k = n_;
    const double value = (k == n_) ? cells_[0] : cells_[k];
    return prefix_[k] + value * (t - (static_cast<double>(k) - 0.5) * h);
  }
  const std::size_t m = table_.size();
  const double dx = length_ / static_cast<double>(m);
  const double u = t / dx;
  auto k = static_cast<std::size_t>(std::floor(u));
  if (k >= m) k = m - 1;
  const double tau = u - static_cast<double>(k);
  const std::size_t k1 = (k + 1) % m;
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + tau;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double periodic =
      h00 * table_[k] + h10 * dx * slope_[k] + h01 * table_[k1] + h11 * dx * slope_[k1];
  return mean_ * t + (periodic - table_[0]);
}

double ContinuousPrimitive::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= length_) return 0.0;
  return absolutely_continuous_part(t) - mass_ * cantor_function(t / length_);
}

// ---------------------------------------------------------------------------
// Caratheodory maps

CaratheodoryMap CaratheodoryMap::affine(BoundaryFunction a, BoundaryFunction b) {
  if (!a.same_grid(b)) throw Error(kModule, "affine map coefficients on different grids");
  return CaratheodoryMap(Affine{std::move(a), std::move(b)});
}

CaratheodoryMap CaratheodoryMap::affine(cd a, cd b, std::size_t n, Parameterization param,
                                        double length) {
  return affine(BoundaryFunction::complex(std::vector<cd>(n, a), param, length),
                BoundaryFunction::complex(std::vector<cd>(n, b), param, length));
}

CaratheodoryMap CaratheodoryMap::clamp(double bound) {
  if (!(bound > 0.0)) throw Error(kModule, "clamp bound must be positive");
  return CaratheodoryMap(Clamp{bound});
}

CaratheodoryMap CaratheodoryMap::tabulated(std::vector<double> w_grid, std::vector<cd> values) {
  if (w_grid.size() < 2 || w_grid.size() != values.size()) {
    throw Error(kModule, "tabulated map needs matching grids of size >= 2");
  }
  for (std::size_t k = 1; k < w_grid.size(); ++k) {
    if (!(w_grid[k] > w_grid[k - 1])) throw Error(kModule, "tabulated w-grid must increase");
  }
  return CaratheodoryMap(Tabulated{std::move(w_grid), std::move(values)});
}

cd CaratheodoryMap::operator()(double s, cd w) const {
  struct Visitor {
    double s;
    cd w;
    cd operator()(const Identity&) const { return w; }
    cd operator()(const Affine& f) const { return f.a(s) * w + f.b(s); }
    cd operator()(const Modulus&) const { return cd(std::abs(w)); }
    cd operator()(const Clamp& f) const {
      return {std::clamp(w.real(), -f.bound, f.bound), std::clamp(w.imag(), -f.bound, f.bound)};
    }
    cd operator()(const Tabulated& f) const {
      const double x = w.real();
      if (x <= f.w_grid.front()) return f.values.front();
      if (x >= f.w_grid.back()) return f.values.back();
      const auto it = std::upper_bound(f.w_grid.begin(), f.w_grid.end(), x);
      const auto k = static_cast<std::size_t>(it - f.w_grid.begin()) - 1;
      const double tau = (x - f.w_grid[k]) / (f.w_grid[k + 1] - f.w_grid[k]);
      return f.values[k] + tau * (f.values[k + 1] - f.values[k]);
    }
  };
  return std::visit(Visitor{s, w}, form_);
}

std::string CaratheodoryMap::name() const {
  struct Visitor {
    std::string operator()(const Identity&) const { return "identity"; }
    std::string operator()(const Affine&) const { return "affine"; }
    std::string operator()(const Modulus&) const { return "modulus"; }
    std::string operator()(const Clamp&) const { return "clamp"; }
    std::string operator()(const Tabulated&) const { return "tabulated"; }
  };
  return std::visit(Visitor{}, form_);
}

BoundaryFunction compose_caratheodory(const CaratheodoryMap& map, const BoundaryFunction& psi) {
  if (const auto* aff = std::get_if<CaratheodoryMap::Affine>(&map.form())) {
    if (aff->a.parameterization() != psi.parameterization() ||
        std::abs(aff->a.length() - psi.length()) > 1e-12 * psi.length()) {
      throw Error(kModule, "compose_caratheodory: parameterization mismatch");
    }
  }
  std::vector<cd> out(psi.size());
  bool any_imag = false;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    out[j] = map(psi.node(j), psi[j]);
    any_imag = any_imag || out[j].imag() != 0.0;
  }
  return psi.with_samples(std::move(out), psi.is_complex() || any_imag);
}

// ---------------------------------------------------------------------------
// Shift maps

ShiftMap::ShiftMap(std::vector<double> lift, double length)
    : lift_(std::move(lift)), length_(length) {
  const std::size_t n = lift_.size();
  if (n < 4) throw Error(kModule, "shift map needs at least 4 samples");
  const double h = length_ / static_cast<double>(n);
  lower_ = std::numeric_limits<double>::infinity();
  upper_ = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double next = (j + 1 < n) ? lift_[j + 1] : lift_[0] + length_;
    const double slope = (next - lift_[j]) / h;
    if (!(slope > 0.0) || !std::isfinite(slope)) {
      throw Error(kModule, "shift map is not strictly increasing at sample " + std::to_string(j));
    }
    lower_ = std::min(lower_, slope);
    upper_ = std::max(upper_, slope);
  }
}

ShiftMap ShiftMap::from_function(const std::function<double(double)>& lift, std::size_t n,
                                 double length) {
  std::vector<double> v(n);
  const double h = length / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = lift(h * static_cast<double>(j));
  return ShiftMap(std::move(v), length);
}

ShiftMap ShiftMap::identity(std::size_t n, double length) {
  return from_function([](double s) { return s; }, n, length);
}

ShiftMap ShiftMap::rotation(double offset, std::size_t n, double length) {
  return from_function([offset](double s) { return s + offset; }, n, length);
}

double ShiftMap::forward(double s) const {
  const std::size_t n = lift_.size();
  const double h = length_ / static_cast<double>(n);
  const double u = wrap_parameter(s, length_) / h;
  auto k = static_cast<std::size_t>(std::floor(u));
  if (k >= n) k = n - 1;
  const double tau = u - static_cast<double>(k);
  const double a = lift_[k];
  const double b = (k + 1 < n) ? lift_[k + 1] : lift_[0] + length_;
  return wrap_parameter(a + tau * (b - a), length_);
}

double ShiftMap::inverse(double t) const {
  const std::size_t n = lift_.size();
  const double h = length_ / static_cast<double>(n);
  const double base = lift_[0];
  const double tt = base + wrap_parameter(t - base, length_);
  auto it = std::upper_bound(lift_.begin(), lift_.end(), tt);
  const auto k = static_cast<std::size_t>(it - lift_.begin()) - 1;
  const double a = lift_[k];
  const double b = (k + 1 < n) ? lift_[k + 1] : lift_[0] + length_;
  if (!(b > a)) throw Error(kModule, "shift inversion hit a non-monotone segment");
  const double tau = (tt - a) / (b - a);
  return wrap_parameter(h * (static_cast<double>(k) + tau), length_);
}

BoundaryFunction apply_shift(const BoundaryFunction& psi, const ShiftMap& beta,
                             ShiftDirection direction) {
  if (std::abs(psi.length() - beta.length()) > 1e-12 * psi.length()) {
    throw Error(kModule, "apply_shift: parameter interval mismatch");
  }
  std::vector<cd> out(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double s = psi.node(j);
    const double t = direction == ShiftDirection::forward ? beta.forward(s) : beta.inverse(s);
    out[j] = psi(t);
  }
  return psi.with_samples(std::move(out), psi.is_complex());
}

}  // namespace rbvp
