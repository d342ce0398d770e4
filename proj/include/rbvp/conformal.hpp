#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "rbvp/boundary_data.hpp"

namespace rbvp {

enum class MapKind { identity, moebius_to_exterior, ellipse, theodorsen };

struct TheodorsenReport {
  int iterations = 0;
  double residual = 0.0;
  double oscillation = 0.0;
  bool contraction_warning = false;
};

/// Conformal map of the unit disk onto a Jordan domain (or, for
/// moebius_to_exterior, of the punctured disk onto the exterior of the circle).
///
/// Interior maps are stored as f(z) = z * exp(g(z)) with g a power series,
/// g(0) real. Boundary tables on a uniform angle grid carry |f'| and the
/// arclength s(theta) measured from theta = 0.
class ConformalMap {
 public:
  static ConformalMap identity(double radius = 1.0, std::size_t grid = 1024);
  static ConformalMap moebius_to_exterior(std::size_t grid = 1024);
  static ConformalMap ellipse(double a, double b, std::size_t grid = 512);
  static ConformalMap theodorsen(const BoundaryFunction& radius, double tol = 1e-12,
                                 int max_iter = 200);
  static ConformalMap theodorsen(const std::function<double(double)>& radius, std::size_t grid,
                                 double tol = 1e-12, int max_iter = 200);

  MapKind kind() const noexcept { return kind_; }
  std::string name() const;
  bool exterior() const noexcept { return kind_ == MapKind::moebius_to_exterior; }

  cd operator()(cd z) const;
  cd derivative(cd z) const;
  /// Preimage of w (Newton, damped to stay inside the disk).
  cd inverse(cd w) const;

  double length() const noexcept { return length_; }
  std::size_t grid_size() const noexcept { return theta_to_s_.size() - 1; }
  /// Natural parameter of the image of e^{i theta}.
  double arclength(double theta) const;
  /// Disk angle whose image has natural parameter s.
  double angle_at(double s) const;
  cd boundary_point(double theta) const { return (*this)(std::polar(1.0, theta)); }
  /// Unit normal pointing into the image domain at the image of e^{i theta}.
  cd inner_normal_at_angle(double theta) const;

  /// Boundary correspondence for theodorsen maps (polar angle of f(e^{i theta})).
  const std::vector<double>& correspondence() const noexcept { return correspondence_; }
  const TheodorsenReport& report() const noexcept { return report_; }
  const std::vector<cd>& series() const noexcept { return series_; }

  struct TableRow {
    double theta;
    double s;
    double speed;
  };
  std::vector<TableRow> table() const;

 private:
  ConformalMap() = default;
  cd log_ratio(cd z, cd* dlog) const;
  void build_tables(std::size_t grid);

  MapKind kind_ = MapKind::identity;
  double scale_ = 1.0;
  std::vector<cd> series_;
  std::vector<double> correspondence_;
  std::vector<double> theta_to_s_;
  std::vector<double> speed_;
  double length_ = kTwoPi;
  TheodorsenReport report_;
  double ellipse_a_ = 1.0;
  double ellipse_b_ = 1.0;
};

enum class PushDirection { to_disk, from_disk };

/// to_disk: natural-parameter data on the image boundary -> samples at
/// uniform disk angles. from_disk is the reverse.
BoundaryFunction pushforward_boundary_data(const ConformalMap& map, const BoundaryFunction& data,
                                           PushDirection direction = PushDirection::to_disk);

}  // namespace rbvp
