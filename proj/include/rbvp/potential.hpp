#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "rbvp/boundary_data.hpp"

namespace rbvp {

/// Compactly supported real density on a uniform grid of square cells.
///
/// Cell (i, j) has center origin + (i + 0.5) h + i (j + 0.5) h and is stored at
/// index j * nx + i. The outer ring of cells must vanish.
class GridSource {
 public:
  struct Cell {
    double x;
    double y;
    double value;
  };

  static GridSource from_values(std::vector<double> values, std::size_t nx, std::size_t ny,
                                cd origin, double h, double exponent = 4.0);

  /// Samples fn over the box [lo.real, hi.real] x [lo.imag, hi.imag]. With
  /// subsamples > 1 each cell holds the mean over a subsamples^2 midpoint grid.
  /// Values below 1e-12 * max |fn| are set to zero.
  static GridSource sample(const std::function<double(cd)>& fn, cd lo, cd hi, double h,
                           int subsamples = 1, double exponent = 4.0);

  static GridSource zero(cd lo, cd hi, double h);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double cell_size() const noexcept { return h_; }
  cd origin() const noexcept { return origin_; }
  cd upper_corner() const noexcept {
    return origin_ + cd(h_ * static_cast<double>(nx_), h_ * static_cast<double>(ny_));
  }
  double exponent() const noexcept { return exponent_; }
  double lp_norm() const noexcept { return lp_norm_; }
  double l1_norm() const noexcept { return l1_norm_; }
  double max_abs() const noexcept { return max_abs_; }
  /// Radius of the smallest origin-centered disk containing all nonzero cells.
  double support_radius() const noexcept { return support_radius_; }
  bool empty() const noexcept { return cells_.empty(); }

  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t i, std::size_t j) const noexcept { return values_[j * nx_ + i]; }
  cd center(std::size_t i, std::size_t j) const noexcept;
  /// Cell value at an arbitrary point, 0 outside the grid.
  double value_at(cd z) const noexcept;
  /// Nonzero cells only, in storage order.
  std::span<const Cell> cells() const noexcept { return cells_; }

  GridSource scaled(double factor) const;
  /// a * this + b * other; grids must coincide.
  GridSource combined(double a, const GridSource& other, double b) const;

  /// Largest difference between edge-adjacent cells divided by max |value|.
  double roughness() const noexcept;

 private:
  GridSource() = default;
  void finalize();

  std::vector<double> values_;
  std::vector<Cell> cells_;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  cd origin_{};
  double h_ = 0.0;
  double exponent_ = 4.0;
  double lp_norm_ = 0.0;
  double l1_norm_ = 0.0;
  double max_abs_ = 0.0;
  double support_radius_ = 0.0;
};

enum class KernelMode { midpoint, cell_exact };

struct PotentialField {
  GridSource source;
  KernelMode mode = KernelMode::cell_exact;
};

/// (1/2pi) int ln|z - w| G(w) dm(w)
double newtonian_potential(const PotentialField& field, cd z);

/// (1/pi) int G(w) / (z - w) dm(w)
cd t_operator(const GridSource& source, cd z, KernelMode mode = KernelMode::cell_exact);

/// conj(grad N_{2g}) = T_g. Shares the t_operator code path.
cd vekua_H(const GridSource& g, cd z);

/// d/dz of T_g, i.e. -(1/pi) p.v. int g(w) / (z - w)^2 dm(w).
cd t_operator_dz(const GridSource& source, cd z);

struct LaplacianReport {
  double max_rel_error = 0.0;
  double mean_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t probes = 0;
};

/// Five-point Laplacian of N_G with step h at each probe against G there.
/// Relative errors use max(|G(z)|, 1e-3 * max|G|) as the scale.
LaplacianReport laplacian_residual(const PotentialField& field, std::span<const cd> probes);

/// Cell centers of the field's grid inside |z| <= radius.
std::vector<cd> center_probes(const GridSource& source, double radius, std::size_t stride = 1);

enum class Execution { serial, parallel };

std::vector<double> newtonian_potential_batch(const PotentialField& field,
                                              std::span<const cd> points,
                                              Execution exec = Execution::parallel);
std::vector<cd> t_operator_batch(const GridSource& source, std::span<const cd> points,
                                 KernelMode mode = KernelMode::cell_exact,
                                 Execution exec = Execution::parallel);

}  // namespace rbvp
