#include "rbvp/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbvp/error.hpp"
#include "rbvp/fourier.hpp"

namespace rbvp {
namespace {

const char* kModule = "conformal";

double hermite(double y0, double y1, double d0, double d1, double dx, double tau) {
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + tau) * dx * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * dx * d1;
}

}  // namespace

ConformalMap ConformalMap::identity(double radius, std::size_t grid) {
  if (!(radius > 0.0)) throw Error(kModule, "radius must be positive");
  ConformalMap m;
  m.kind_ = MapKind::identity;
  m.scale_ = radius;
  m.series_ = {cd(std::log(radius))};
  m.build_tables(grid);
  return m;
}

ConformalMap ConformalMap::moebius_to_exterior(std::size_t grid) {
  ConformalMap m;
  m.kind_ = MapKind::moebius_to_exterior;
  m.build_tables(grid);
  return m;
}

ConformalMap ConformalMap::ellipse(double a, double b, std::size_t grid) {
  if (!(a >= b && b > 0.0)) throw Error(kModule, "ellipse needs semi-axes a >= b > 0");
  auto radius = [a, b](double phi) {
    const double c = b * std::cos(phi);
    const double s = a * std::sin(phi);
    return a * b / std::sqrt(c * c + s * s);
  };
  ConformalMap m = theodorsen(radius, grid, 1e-14, 400);
  m.kind_ = MapKind::ellipse;
  m.ellipse_a_ = a;
  m.ellipse_b_ = b;
  return m;
}

ConformalMap ConformalMap::theodorsen(const BoundaryFunction& radius, double tol, int max_iter) {
  if (radius.parameterization() != Parameterization::angle || radius.is_complex()) {
    throw Error(kModule, "radius data must be real over the polar angle");
  }
  for (std::size_t j = 0; j < radius.size(); ++j) {
    if (!(radius[j].real() > 0.0)) throw Error(kModule, "radius must be positive");
  }
  const std::size_t grid = std::max<std::size_t>(1024, radius.size());
  return theodorsen([&radius](double phi) { return radius.real_at(phi); }, grid, tol, max_iter);
}

ConformalMap ConformalMap::theodorsen(const std::function<double(double)>& radius,
                                      std::size_t grid, double tol, int max_iter) {
  if (grid < 16 || !is_power_of_two(grid)) throw Error(kModule, "grid must be a power of two");
  const std::size_t n = grid;
  std::vector<double> theta(n), lifted(n), u(n);
  for (std::size_t j = 0; j < n; ++j) {
    theta[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    lifted[j] = theta[j];
  }

  TheodorsenReport rep;
  const double fd = 1e-6;
  for (std::size_t j = 0; j < 4 * n; ++j) {
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(4 * n);
    const double d = (std::log(radius(phi + fd)) - std::log(radius(phi - fd))) / (2 * fd);
    rep.oscillation = std::max(rep.oscillation, std::abs(d));
  }
  rep.contraction_warning = rep.oscillation >= 0.3;

  double previous = std::numeric_limits<double>::infinity();
  int increases = 0;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = radius(wrap_parameter(lifted[j], kTwoPi));
      if (!(r > 0.0) || !std::isfinite(r)) throw Error(kModule, "radius must be positive");
      u[j] = std::log(r);
    }
    const auto conj = fourier::conjugate(u);
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double next = theta[j] + conj[j];
      residual = std::max(residual, std::abs(next - lifted[j]));
      lifted[j] = next;
    }
    rep.iterations = it + 1;
    rep.residual = residual;
    increases = residual > previous ? increases + 1 : 0;
    if (increases >= 5) {
      throw Error(kModule, "boundary correspondence iteration is not contracting (oscillation " +
                               std::to_string(rep.oscillation) + ")");
    }
    previous = residual;
    if (residual <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(kModule, "boundary correspondence did not converge, residual " +
                             std::to_string(rep.residual));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double next = (j + 1 < n) ? lifted[j + 1] : lifted[0] + kTwoPi;
    if (!(next > lifted[j])) throw Error(kModule, "boundary correspondence is not monotone");
    u[j] = std::log(radius(wrap_parameter(lifted[j], kTwoPi)));
  }

  const auto spec = fourier::forward(fourier::to_complex(u));
  ConformalMap m;
  m.kind_ = MapKind::theodorsen;
  m.series_.assign(n / 2 + 1, cd(0.0));
  const double inv = 1.0 / static_cast<double>(n);
  m.series_[0] = cd(spec[0].real() * inv);
  for (std::size_t k = 1; k < n / 2; ++k) m.series_[k] = 2.0 * spec[k] * inv;
  m.series_[n / 2] = cd(spec[n / 2].real() * inv);
  const double cutoff = 1e-18 * std::max(1.0, std::abs(m.series_[0]));
  while (m.series_.size() > 1 && std::abs(m.series_.back()) < cutoff) m.series_.pop_back();
  m.correspondence_ = std::move(lifted);
  m.report_ = rep;
  m.build_tables(n);
  return m;
}

std::string ConformalMap::name() const {
  switch (kind_) {
    case MapKind::identity: return "identity";
    case MapKind::moebius_to_exterior: return "moebius_to_exterior";
    case MapKind::ellipse: return "ellipse";
    case MapKind::theodorsen: return "theodorsen";
  }
  return "unknown";
}

cd ConformalMap::log_ratio(cd z, cd* dlog) const {
  cd g = 0.0;
  cd dg = 0.0;
  for (std::size_t k = series_.size(); k-- > 0;) {
    dg = dg * z + g;
    g = g * z + series_[k];
  }
  if (dlog) *dlog = dg;
  return g;
}

cd ConformalMap::operator()(cd z) const {
  switch (kind_) {
    case MapKind::identity: return scale_ * z;
    case MapKind::moebius_to_exterior:
      if (z == cd(0.0)) throw Error(kModule, "exterior map is singular at 0");
      return 1.0 / z;
    default: return z * std::exp(log_ratio(z, nullptr));
  }
}

cd ConformalMap::derivative(cd z) const {
  switch (kind_) {
    case MapKind::identity: return cd(scale_);
    case MapKind::moebius_to_exterior: return -1.0 / (z * z);
    default: {
      cd dg;
      const cd g = log_ratio(z, &dg);
      return std::exp(g) * (1.0 + z * dg);
    }
  }
}

cd ConformalMap::inverse(cd w) const {
  if (kind_ == MapKind::identity) return w / scale_;
  if (kind_ == MapKind::moebius_to_exterior) {
    if (w == cd(0.0)) throw Error(kModule, "0 is not in the exterior domain");
    return 1.0 / w;
  }
  cd z = w / std::exp(series_[0]);
  if (std::abs(z) > 0.999) z *= 0.999 / std::abs(z);
  for (int it = 0; it < 100; ++it) {
    const cd dz = ((*this)(z) - w) / derivative(z);
    cd next = z - dz;
    double damp = 1.0;
    while (std::abs(next) > 1.0 && damp > 1e-6) {
      damp *= 0.5;
      next = z - damp * dz;
    }
    z = next;
    if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

void ConformalMap::build_tables(std::size_t grid) {
  if (grid < 16 || !is_power_of_two(grid)) throw Error(kModule, "grid must be a power of two");
  const std::size_t n = grid;
  speed_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    speed_[j] = std::abs(derivative(std::polar(1.0, t)));
    if (!(speed_[j] > 1e-10)) throw Error(kModule, "degenerate boundary derivative");
  }
  const auto spec = fourier::forward(fourier::to_complex(speed_));
  std::vector<cd> anti(n, cd(0.0));
  for (std::size_t k = 1; k < n; ++k) {
    const long f = fourier::frequency(k, n);
    if (2 * static_cast<std::size_t>(std::labs(f)) == n) continue;
    anti[k] = spec[k] / (cd(0.0, 1.0) * static_cast<double>(f));
  }
  const auto periodic = fourier::inverse(anti);
  const double mean = spec[0].real() / static_cast<double>(n);
  theta_to_s_.resize(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    theta_to_s_[j] = mean * t + periodic[j].real() - periodic[0].real();
  }
  length_ = mean * kTwoPi;
  theta_to_s_[n] = length_;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(theta_to_s_[j + 1] > theta_to_s_[j])) throw Error(kModule, "arclength is not monotone");
  }
}

double ConformalMap::arclength(double theta) const {
  const std::size_t n = speed_.size();
  const double dx = kTwoPi / static_cast<double>(n);
  const double u = wrap_parameter(theta, kTwoPi) / dx;
  auto k = static_cast<std::size_t>(std::floor(u));
  if (k >= n) k = n - 1;
  const double tau = u - static_cast<double>(k);
  return hermite(theta_to_s_[k], theta_to_s_[k + 1], speed_[k], speed_[(k + 1) % n], dx, tau);
}

double ConformalMap::angle_at(double s) const {
  const std::size_t n = speed_.size();
  const double dx = kTwoPi / static_cast<double>(n);
  const double target = wrap_parameter(s, length_);
  auto it = std::upper_bound(theta_to_s_.begin(), theta_to_s_.end(), target);
  auto k = static_cast<std::size_t>(it - theta_to_s_.begin());
  k = k == 0 ? 0 : k - 1;
  if (k >= n) k = n - 1;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double v =
        hermite(theta_to_s_[k], theta_to_s_[k + 1], speed_[k], speed_[(k + 1) % n], dx, mid);
    (v < target ? lo : hi) = mid;
  }
  return dx * (static_cast<double>(k) + 0.5 * (lo + hi));
}

cd ConformalMap::inner_normal_at_angle(double theta) const {
  const cd zeta = std::polar(1.0, theta);
  const cd tangent = cd(0.0, 1.0) * zeta * derivative(zeta);
  return cd(0.0, 1.0) * tangent / std::abs(tangent);
}

std::vector<ConformalMap::TableRow> ConformalMap::table() const {
  std::vector<TableRow> rows(speed_.size());
  for (std::size_t j = 0; j < speed_.size(); ++j) {
    rows[j] = {kTwoPi * static_cast<double>(j) / static_cast<double>(speed_.size()),
               theta_to_s_[j], speed_[j]};
  }
  return rows;
}

BoundaryFunction pushforward_boundary_data(const ConformalMap& map, const BoundaryFunction& data,
                                           PushDirection direction) {
  const std::size_t n = data.size();
  std::vector<cd> out(n);
  if (direction == PushDirection::to_disk) {
    const bool angle_ok = data.parameterization() == Parameterization::angle &&
                          std::abs(map.length() - kTwoPi) <= 1e-8 * kTwoPi;
    if (!(data.parameterization() == Parameterization::natural || angle_ok) ||
        std::abs(data.length() - map.length()) > 1e-8 * map.length()) {
      throw Error(kModule, "pushforward: data is not over the natural parameter of the map");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      out[j] = data(map.arclength(theta));
    }
    auto f = BoundaryFunction::complex(std::move(out), Parameterization::angle, kTwoPi,
                                       data.interpolation());
    return data.is_complex() ? f
                             : BoundaryFunction::real(f.real_samples(), Parameterization::angle,
                                                      kTwoPi, data.interpolation());
  }
  if (data.parameterization() != Parameterization::angle ||
      std::abs(data.length() - kTwoPi) > 1e-12) {
    throw Error(kModule, "pushforward: expected disk-angle data");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double s = map.length() * static_cast<double>(j) / static_cast<double>(n);
    out[j] = data(map.angle_at(s));
  }
  auto f = BoundaryFunction::complex(std::move(out), Parameterization::natural, map.length(),
                                     data.interpolation());
  return data.is_complex() ? f
                           : BoundaryFunction::real(f.real_samples(), Parameterization::natural,
                                                    map.length(), data.interpolation());
}

}  // namespace rbvp
