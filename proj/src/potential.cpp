#include "rbvp/potential.hpp"

#include <algorithm>
#include <cmath>

#include "rbvp/error.hpp"

namespace rbvp {
namespace {
const char* kModule = "potential";
}

GridSource GridSource::from_values(std::vector<double> values, std::size_t nx, std::size_t ny,
                                   cd origin, double h, double exponent) {
  if (nx < 3 || ny < 3) throw Error(kModule, "grid must have at least 3x3 cells");
  if (values.size() != nx * ny) throw Error(kModule, "value count does not match dimensions");
  if (!(h > 0.0)) throw Error(kModule, "cell size must be positive");
  if (!(exponent > 2.0)) throw Error(kModule, "integrability exponent must exceed 2");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(kModule, "non-finite source value");
  }
  GridSource s;
  s.values_ = std::move(values);
  s.nx_ = nx;
  s.ny_ = ny;
  s.origin_ = origin;
  s.h_ = h;
  s.exponent_ = exponent;
  for (std::size_t i = 0; i < nx; ++i) {
    if (s.value(i, 0) != 0.0 || s.value(i, ny - 1) != 0.0) {
      throw Error(kModule, "source does not vanish on the grid boundary ring");
    }
  }
  for (std::size_t j = 0; j < ny; ++j) {
    if (s.value(0, j) != 0.0 || s.value(nx - 1, j) != 0.0) {
      throw Error(kModule, "source does not vanish on the grid boundary ring");
    }
  }
  s.finalize();
  return s;
}

GridSource GridSource::sample(const std::function<double(cd)>& fn, cd lo, cd hi, double h,
                              int subsamples, double exponent) {
  if (!(h > 0.0)) throw Error(kModule, "cell size must be positive");
  if (subsamples < 1) throw Error(kModule, "subsamples must be >= 1");
  const auto nx = static_cast<std::size_t>(std::lround((hi.real() - lo.real()) / h));
  const auto ny = static_cast<std::size_t>(std::lround((hi.imag() - lo.imag()) / h));
  if (nx < 3 || ny < 3) throw Error(kModule, "box too small for the cell size");
  std::vector<double> v(nx * ny, 0.0);
  const double sub = h / subsamples;
  double peak = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      double acc = 0.0;
      const double x0 = lo.real() + h * static_cast<double>(i);
      const double y0 = lo.imag() + h * static_cast<double>(j);
      for (int b = 0; b < subsamples; ++b) {
        for (int a = 0; a < subsamples; ++a) {
          acc += fn(cd(x0 + (a + 0.5) * sub, y0 + (b + 0.5) * sub));
        }
      }
      v[j * nx + i] = acc / (subsamples * subsamples);
      peak = std::max(peak, std::abs(v[j * nx + i]));
    }
  }
  for (auto& x : v) {
    if (std::abs(x) < 1e-12 * peak) x = 0.0;
  }
  return from_values(std::move(v), nx, ny, lo, h, exponent);
}

GridSource GridSource::zero(cd lo, cd hi, double h) {
  return sample([](cd) { return 0.0; }, lo, hi, h);
}

void GridSource::finalize() {
  cells_.clear();
  double lp = 0.0;
  l1_norm_ = 0.0;
  max_abs_ = 0.0;
  support_radius_ = 0.0;
  const double area = h_ * h_;
  const double half_diag = h_ * std::sqrt(0.5);
  for (std::size_t j = 0; j < ny_; ++j) {
    for (std::size_t i = 0; i < nx_; ++i) {
      const double v = value(i, j);
      if (v == 0.0) continue;
      const cd c = center(i, j);
      cells_.push_back({c.real(), c.imag(), v});
      lp += std::pow(std::abs(v), exponent_) * area;
      l1_norm_ += std::abs(v) * area;
      max_abs_ = std::max(max_abs_, std::abs(v));
      support_radius_ = std::max(support_radius_, std::abs(c) + half_diag);
    }
  }
  lp_norm_ = std::pow(lp, 1.0 / exponent_);
  if (!std::isfinite(lp_norm_)) throw Error(kModule, "L^p norm is not finite");
}

cd GridSource::center(std::size_t i, std::size_t j) const noexcept {
  return origin_ + cd(h_ * (static_cast<double>(i) + 0.5), h_ * (static_cast<double>(j) + 0.5));
}

double GridSource::value_at(cd z) const noexcept {
  const double u = (z.real() - origin_.real()) / h_;
  const double v = (z.imag() - origin_.imag()) / h_;
  if (u < 0.0 || v < 0.0) return 0.0;
  const auto i = static_cast<std::size_t>(u);
  const auto j = static_cast<std::size_t>(v);
  if (i >= nx_ || j >= ny_) return 0.0;
  return value(i, j);
}

GridSource GridSource::scaled(double factor) const {
  GridSource s = *this;
  for (auto& v : s.values_) v *= factor;
  s.finalize();
  return s;
}

GridSource GridSource::combined(double a, const GridSource& other, double b) const {
  if (other.nx_ != nx_ || other.ny_ != ny_ || other.h_ != h_ || other.origin_ != origin_) {
    throw Error(kModule, "combined: grids differ");
  }
  GridSource s = *this;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    s.values_[k] = a * values_[k] + b * other.values_[k];
  }
  s.finalize();
  return s;
}

double GridSource::roughness() const noexcept {
  if (max_abs_ == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t j = 0; j < ny_; ++j) {
    for (std::size_t i = 0; i < nx_; ++i) {
      if (i + 1 < nx_) worst = std::max(worst, std::abs(value(i + 1, j) - value(i, j)));
      if (j + 1 < ny_) worst = std::max(worst, std::abs(value(i, j + 1) - value(i, j)));
    }
  }
  return worst / max_abs_;
}

LaplacianReport laplacian_residual(const PotentialField& field, std::span<const cd> probes) {
  const GridSource& src = field.source;
  const double h = src.cell_size();
  const cd lo = src.origin();
  const cd hi = src.upper_corner();
  for (const cd& z : probes) {
    const double margin = std::min({z.real() - lo.real(), hi.real() - z.real(),
                                    z.imag() - lo.imag(), hi.imag() - z.imag()});
    if (margin < 4.0 * h) throw Error(kModule, "probe closer than 4h to the grid boundary");
  }
  std::vector<cd> pts;
  pts.reserve(probes.size() * 5);
  for (const cd& z : probes) {
    pts.push_back(z);
    pts.push_back(z + h);
    pts.push_back(z - h);
    pts.push_back(z + cd(0.0, h));
    pts.push_back(z - cd(0.0, h));
  }
  const auto vals = newtonian_potential_batch(field, pts);
  LaplacianReport rep;
  rep.probes = probes.size();
  const double floor = 1e-3 * src.max_abs();
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double* v = &vals[5 * k];
    const double lap = (v[1] + v[2] + v[3] + v[4] - 4.0 * v[0]) / (h * h);
    const double g = src.value_at(probes[k]);
    const double err = std::abs(lap - g);
    const double scale = std::max(std::abs(g), floor);
    const double rel = scale > 0.0 ? err / scale : err;
    rep.max_abs_error = std::max(rep.max_abs_error, err);
    rep.max_rel_error = std::max(rep.max_rel_error, rel);
    rep.mean_rel_error += rel;
  }
  if (!probes.empty()) rep.mean_rel_error /= static_cast<double>(probes.size());
  return rep;
}

std::vector<cd> center_probes(const GridSource& source, double radius, std::size_t stride) {
  std::vector<cd> out;
  if (stride == 0) stride = 1;
  for (std::size_t j = 0; j < source.ny(); j += stride) {
    for (std::size_t i = 0; i < source.nx(); i += stride) {
      const cd c = source.center(i, j);
      if (std::abs(c) <= radius) out.push_back(c);
    }
  }
  return out;
}

}  // namespace rbvp
