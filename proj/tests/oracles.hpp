#pragma once

// Reference values computed without the library: closed forms, brute-force
// sums and exact digit scans.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Cantor function of p/q by exact ternary digit scan.
inline double cantor_rational(unsigned __int128 p, unsigned __int128 q, int digits = 128) {
  double value = 0.0;
  double weight = 0.5;
  for (int k = 0; k < digits; ++k) {
    p *= 3;
    const auto d = static_cast<int>(p / q);
    p %= q;
    if (d == 1) return value + weight;
    if (d == 2) value += weight;
    weight *= 0.5;
  }
  return value;
}

// Cantor function of a double in [2^-40, 1), scanned from its exact binary value.
inline double cantor_exact(double x) {
  if (x >= 1.0) return 1.0;
  const auto p = static_cast<unsigned __int128>(std::ldexp(x, 92));
  return cantor_rational(p, static_cast<unsigned __int128>(1) << 92);
}

// Logarithmic potential of the indicator of the unit disk.
inline double disk_potential(cd z) {
  const double r = std::abs(z);
  return r <= 1.0 ? (r * r - 1.0) / 4.0 : std::log(r) / 2.0;
}

// Area Cauchy transform of the indicator of the unit disk.
inline cd disk_t(cd z) { return std::abs(z) <= 1.0 ? std::conj(z) : 1.0 / z; }

// exp(-a |z|^2): N = ln r / (2a) + E1(a r^2) / (4a), T = (1 - e^{-a r^2}) conj z / (a r^2).
inline double gaussian_potential(double a, cd z) {
  const double r2 = std::norm(z);
  const double e1 = -std::expint(-a * r2);
  return std::log(r2) / (4.0 * a) + e1 / (4.0 * a);
}
inline cd gaussian_t(double a, cd z) {
  const double r2 = std::norm(z);
  if (r2 < 1e-12) return std::conj(z);
  return -std::expm1(-a * r2) * std::conj(z) / (a * r2);
}

// Midpoint-rule logarithmic potential of fn over a box, cell size h.
inline double brute_potential(const std::function<double(cd)>& fn, cd lo, cd hi, double h, cd z) {
  const int nx = static_cast<int>(std::lround((hi.real() - lo.real()) / h));
  const int ny = static_cast<int>(std::lround((hi.imag() - lo.imag()) / h));
  double s = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const cd w = lo + cd((i + 0.5) * h, (j + 0.5) * h);
      const double g = fn(w);
      if (g != 0.0) s += g * std::log(std::abs(z - w));
    }
  }
  return s * h * h / (2.0 * pi);
}

// Poisson integral of the indicator of the arc (a, b) (harmonic measure).
inline double arc_measure(double a, double b, cd z) {
  const cd ea = std::polar(1.0, a);
  const cd eb = std::polar(1.0, b);
  // The subtended angle lies in ((b - a) / 2, (b - a) / 2 + pi).
  double angle = std::arg((eb - z) / (ea - z));
  while (angle < 0.5 * (b - a)) angle += 2.0 * pi;
  while (angle > 0.5 * (b - a) + pi) angle -= 2.0 * pi;
  return angle / pi - (b - a) / (2.0 * pi);
}

inline double poisson_kernel(cd z, double t) {
  const double r2 = std::norm(z);
  return (1.0 - r2) / std::norm(std::polar(1.0, t) - z);
}

// Poisson-Stieltjes integral of the Cantor measure with point masses at the
// centers of the 2^generation intervals of that generation.
inline double cantor_stieltjes(cd z, int generation) {
  std::vector<double> lo{0.0};
  double width = 1.0;
  for (int g = 0; g < generation; ++g) {
    width /= 3.0;
    std::vector<double> next;
    next.reserve(lo.size() * 2);
    for (double x : lo) {
      next.push_back(x);
      next.push_back(x + 2.0 * width);
    }
    lo.swap(next);
  }
  const double mass = std::ldexp(1.0, -generation);
  double s = 0.0;
  for (double x : lo) s += poisson_kernel(z, 2.0 * pi * (x + 0.5 * width));
  return s * mass / (2.0 * pi);
}

// Perimeter of the ellipse x^2/a^2 + y^2/b^2 = 1 by composite Simpson.
inline double ellipse_perimeter(double a, double b, int n = 20000) {
  auto f = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  const double h = 2.0 * pi / n;
  double s = f(0.0) + f(2.0 * pi);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return s * h / 3.0;
}

// Inner unit normal of the ellipse at the point (a cos t, b sin t).
inline cd ellipse_inner_normal(double a, double b, double t) {
  const cd outward(b * std::cos(t), a * std::sin(t));
  return -outward / std::abs(outward);
}

inline cd polynomial(const std::vector<cd>& c, cd z) {
  cd s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

}  // namespace oracle
