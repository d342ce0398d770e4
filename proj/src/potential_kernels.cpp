// Per-point cell sums for the log kernel and the Cauchy kernel.
// Cells within kNear cell widths (Chebyshev) of the evaluation point are
// integrated in closed form; the rest use the midpoint rule.

#include <cmath>

#include "rbvp/potential.hpp"

namespace rbvp {
namespace {

constexpr double kNear = 2.5;

// F with d^2F/dxdy = ln(x^2 + y^2) / 2.
double log_corner(double x, double y) {
  double r = 0.0;
  const double rr = x * x + y * y;
  if (x != 0.0 && y != 0.0) r += x * y * (std::log(rr) - 3.0);
  if (x != 0.0) r += x * x * std::atan(y / x);
  if (y != 0.0) r += y * y * std::atan(x / y);
  return 0.5 * r;
}

// Integral of ln|w - z| over [u1,u2]x[v1,v2] in w - z coordinates.
double log_cell(double u1, double u2, double v1, double v2) {
  return log_corner(u2, v2) - log_corner(u1, v2) - log_corner(u2, v1) + log_corner(u1, v1);
}

// Antiderivatives of u/(u^2+v^2) and v/(u^2+v^2) in both variables.
double fu(double u, double v) {
  const double rr = u * u + v * v;
  double r = -v;
  if (v != 0.0 && rr > 0.0) r += 0.5 * v * std::log(rr);
  if (u != 0.0) r += u * std::atan(v / u);
  return r;
}

double fv(double u, double v) { return fu(v, u); }

// Integral of 1/(z - w) over the cell.
cd cauchy_cell(double u1, double u2, double v1, double v2) {
  const double iu = fu(u2, v2) - fu(u1, v2) - fu(u2, v1) + fu(u1, v1);
  const double iv = fv(u2, v2) - fv(u1, v2) - fv(u2, v1) + fv(u1, v1);
  return -cd(iu, -iv);
}

// Principal value of the integral of 1/(w - z)^2 over the cell.
cd beurling_cell(double u1, double u2, double v1, double v2) {
  const cd i(0.0, 1.0);
  const cd c11(u1, v1), c12(u1, v2), c21(u2, v1), c22(u2, v2);
  cd r = i * std::log(c22 / c21) - i * std::log(c12 / c11);
  if (u1 < 0.0 && u2 > 0.0 && v1 < 0.0 && v2 > 0.0) r += kPi;
  return r;
}

}  // namespace

double newtonian_potential(const PotentialField& field, cd z) {
  const GridSource& src = field.source;
  const double h = src.cell_size();
  const double half = 0.5 * h;
  const double area = h * h;
  const double reach = field.mode == KernelMode::cell_exact ? kNear * h : half;
  double near_sum = 0.0;
  double far_sum = 0.0;
  for (const auto& c : src.cells()) {
    const double dx = c.x - z.real();
    const double dy = c.y - z.imag();
    if (std::abs(dx) < reach && std::abs(dy) < reach) {
      near_sum += c.value * log_cell(dx - half, dx + half, dy - half, dy + half);
    } else {
      far_sum += c.value * std::log(dx * dx + dy * dy);
    }
  }
  return (near_sum + 0.5 * area * far_sum) / kTwoPi;
}

cd t_operator(const GridSource& source, cd z, KernelMode mode) {
  const double h = source.cell_size();
  const double half = 0.5 * h;
  const double area = h * h;
  const double reach = kNear * h;
  cd near_sum = 0.0;
  double far_re = 0.0;
  double far_im = 0.0;
  for (const auto& c : source.cells()) {
    const double dx = z.real() - c.x;
    const double dy = z.imag() - c.y;
    const bool near = std::abs(dx) < reach && std::abs(dy) < reach;
    if (near && mode == KernelMode::cell_exact) {
      near_sum += c.value * cauchy_cell(-dx - half, -dx + half, -dy - half, -dy + half);
      continue;
    }
    if (mode == KernelMode::midpoint && std::abs(dx) < half && std::abs(dy) < half) continue;
    const double s = c.value / (dx * dx + dy * dy);
    far_re += s * dx;
    far_im -= s * dy;
  }
  return (near_sum + area * cd(far_re, far_im)) / kPi;
}

cd vekua_H(const GridSource& g, cd z) { return t_operator(g, z, KernelMode::cell_exact); }

cd t_operator_dz(const GridSource& source, cd z) {
  const double h = source.cell_size();
  const double half = 0.5 * h;
  const double area = h * h;
  const double reach = kNear * h;
  cd sum = 0.0;
  for (const auto& c : source.cells()) {
    const double dx = c.x - z.real();
    const double dy = c.y - z.imag();
    if (std::abs(dx) < reach && std::abs(dy) < reach) {
      sum += c.value * beurling_cell(dx - half, dx + half, dy - half, dy + half);
    } else {
      const cd d(dx, dy);
      sum += c.value * area / (d * d);
    }
  }
  return -sum / kPi;
}

std::vector<double> newtonian_potential_batch(const PotentialField& field,
                                              std::span<const cd> points, Execution exec) {
  std::vector<double> out(points.size());
  const auto n = static_cast<long>(points.size());
  if (exec == Execution::serial) {
    for (long k = 0; k < n; ++k) out[k] = newtonian_potential(field, points[k]);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < n; ++k) out[k] = newtonian_potential(field, points[k]);
  }
  return out;
}

std::vector<cd> t_operator_batch(const GridSource& source, std::span<const cd> points,
                                 KernelMode mode, Execution exec) {
  std::vector<cd> out(points.size());
  const auto n = static_cast<long>(points.size());
  if (exec == Execution::serial) {
    for (long k = 0; k < n; ++k) out[k] = t_operator(source, points[k], mode);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < n; ++k) out[k] = t_operator(source, points[k], mode);
  }
  return out;
}

}  // namespace rbvp
