#pragma once

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"
#include "rbvp/boundary_data.hpp"
#include "rbvp/conformal.hpp"
#include "rbvp/disk_harmonic.hpp"
#include "rbvp/hilbert.hpp"
#include "rbvp/poincare.hpp"
#include "rbvp/potential.hpp"
#include "rbvp/riemann.hpp"

namespace rbvp::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Reads `parameter,value` or `parameter,value_re,value_im` rows after a
/// one-line header. Parameters must form the uniform grid j * length / N.
BoundaryFunction read_boundary(const std::string& path,
                               Parameterization param = Parameterization::angle,
                               double length = kTwoPi,
                               Interpolation interp = Interpolation::linear);
void write_boundary(const std::string& path, const BoundaryFunction& data);

/// Dense matrix with header lines `origin,x,y`, `h,value` and `dims,nx,ny`,
/// followed by ny rows of nx values (row j holds cells (0..nx-1, j)).
GridSource read_grid_source(const std::string& path, double exponent = 4.0);
void write_grid_source(const std::string& path, const GridSource& g);

/// Rectangular sample lattice, row-major in y then x.
struct Lattice {
  cd lo{-1.0, -1.0};
  cd hi{1.0, 1.0};
  std::size_t nx = 41;
  std::size_t ny = 41;
  std::vector<cd> points() const;
};

/// x,y,value[,value_im]
void write_points(const std::string& path, const std::vector<cd>& points,
                  const std::vector<cd>& values, bool complex_values);
/// gap,value_re,value_im
void write_path(const std::string& path, const StolzPath& stolz, const NontangentialSample& s);
/// theta,s,speed
void write_correspondence(const std::string& path, const ConformalMap& map);
/// x,y,re,im for lattice points inside the domain (|to_disk| < 1).
void write_solution_grid(const std::string& path, const GeneralizedSolution& h, const Lattice& lat,
                         bool exterior = false);
/// x,y,U,U_x,U_y for lattice points inside the domain.
void write_poisson_grid(const std::string& path, const PoissonSolution& U, const Lattice& lat);

json limit_record(double anchor, double aperture, const NontangentialSample& s);
json to_json(const std::vector<AnchorResidual>& r);
json to_json(const NeumannCertificate& c);
json to_json(const std::vector<RelationResidual>& r);

void write_json(const std::string& path, const json& j);
void write_text(const std::string& path, const std::string& text);

/// Fixed-precision number formatting shared by all CSV writers.
std::string number(double v);

}  // namespace rbvp::io
