#include "rbvp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rbvp/error.hpp"

namespace rbvp::io {
namespace {

const char* kModule = "io";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ';' || c == '\t' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse(const std::string& s, const std::string& path) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(kModule, path + ": not a number: '" + s + "'");
  }
  return v;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kModule, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(kModule, "cannot write " + path);
  return out;
}

}  // namespace

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BoundaryFunction read_boundary(const std::string& path, Parameterization param, double length,
                               Interpolation interp) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(kModule, path + ": empty file");
  const auto header = split(line);
  if (header.size() != 2 && header.size() != 3) {
    throw Error(kModule, path + ": header must name 2 or 3 columns");
  }
  const bool complex = header.size() == 3;
  std::vector<double> s;
  std::vector<cd> v;
  while (std::getline(in, line)) {
    const auto f = split(line);
    if (f.empty()) continue;
    if (f.size() != header.size()) throw Error(kModule, path + ": ragged row");
    s.push_back(parse(f[0], path));
    v.emplace_back(parse(f[1], path), complex ? parse(f[2], path) : 0.0);
  }
  if (v.empty()) throw Error(kModule, path + ": no samples");
  const double h = length / static_cast<double>(v.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(s[j] - h * static_cast<double>(j)) > 1e-9 * std::max(1.0, length)) {
      throw Error(kModule, path + ": parameters are not the uniform grid j*L/N");
    }
  }
  return complex ? BoundaryFunction::complex(std::move(v), param, length, interp)
                 : BoundaryFunction::real([&] {
                     std::vector<double> r;
                     for (const cd& c : v) r.push_back(c.real());
                     return r;
                   }(), param, length, interp);
}

void write_boundary(const std::string& path, const BoundaryFunction& data) {
  auto out = open_out(path);
  out << (data.is_complex() ? "parameter,value_re,value_im\n" : "parameter,value\n");
  for (std::size_t j = 0; j < data.size(); ++j) {
    out << number(data.node(j)) << ',' << number(data[j].real());
    if (data.is_complex()) out << ',' << number(data[j].imag());
    out << '\n';
  }
}

GridSource read_grid_source(const std::string& path, double exponent) {
  auto in = open_in(path);
  std::string line;
  std::vector<std::vector<std::string>> head;
  for (int k = 0; k < 3; ++k) {
    if (!std::getline(in, line)) throw Error(kModule, path + ": truncated header");
    head.push_back(split(line));
  }
  if (head[0].size() != 3 || head[0][0] != "origin" || head[1].size() != 2 || head[1][0] != "h" ||
      head[2].size() != 3 || head[2][0] != "dims") {
    throw Error(kModule, path + ": header must be origin,x,y / h,value / dims,nx,ny");
  }
  const cd origin(parse(head[0][1], path), parse(head[0][2], path));
  const double h = parse(head[1][1], path);
  const auto nx = static_cast<std::size_t>(parse(head[2][1], path));
  const auto ny = static_cast<std::size_t>(parse(head[2][2], path));
  std::vector<double> values;
  values.reserve(nx * ny);
  while (std::getline(in, line)) {
    const auto f = split(line);
    if (f.empty()) continue;
    if (f.size() != nx) throw Error(kModule, path + ": row length differs from nx");
    for (const auto& x : f) values.push_back(parse(x, path));
  }
  if (values.size() != nx * ny) throw Error(kModule, path + ": row count differs from ny");
  return GridSource::from_values(std::move(values), nx, ny, origin, h, exponent);
}

void write_grid_source(const std::string& path, const GridSource& g) {
  auto out = open_out(path);
  out << "origin," << number(g.origin().real()) << ',' << number(g.origin().imag()) << '\n';
  out << "h," << number(g.cell_size()) << '\n';
  out << "dims," << g.nx() << ',' << g.ny() << '\n';
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) out << (i ? "," : "") << number(g.value(i, j));
    out << '\n';
  }
}

std::vector<cd> Lattice::points() const {
  std::vector<cd> out;
  out.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = ny > 1 ? lo.imag() + (hi.imag() - lo.imag()) * j / (ny - 1.0) : lo.imag();
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = nx > 1 ? lo.real() + (hi.real() - lo.real()) * i / (nx - 1.0) : lo.real();
      out.emplace_back(x, y);
    }
  }
  return out;
}

void write_points(const std::string& path, const std::vector<cd>& points,
                  const std::vector<cd>& values, bool complex_values) {
  if (points.size() != values.size()) throw Error(kModule, "points and values differ in size");
  auto out = open_out(path);
  out << (complex_values ? "x,y,value,value_im\n" : "x,y,value\n");
  for (std::size_t k = 0; k < points.size(); ++k) {
    out << number(points[k].real()) << ',' << number(points[k].imag()) << ','
        << number(values[k].real());
    if (complex_values) out << ',' << number(values[k].imag());
    out << '\n';
  }
}

void write_path(const std::string& path, const StolzPath& stolz, const NontangentialSample& s) {
  auto out = open_out(path);
  out << "gap,value_re,value_im\n";
  for (std::size_t k = 0; k < s.values.size() && k < stolz.gaps.size(); ++k) {
    out << number(stolz.gaps[k]) << ',' << number(s.values[k].real()) << ','
        << number(s.values[k].imag()) << '\n';
  }
}

void write_correspondence(const std::string& path, const ConformalMap& map) {
  auto out = open_out(path);
  out << "theta,s,speed\n";
  for (const auto& row : map.table()) {
    out << number(row.theta) << ',' << number(row.s) << ',' << number(row.speed) << '\n';
  }
}

void write_solution_grid(const std::string& path, const GeneralizedSolution& h, const Lattice& lat,
                         bool exterior) {
  const auto pts = lat.points();
  std::vector<cd> vals(pts.size());
  std::vector<char> keep(pts.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const cd w = pts[static_cast<std::size_t>(k)];
    const bool in = exterior ? std::abs(w) > 1.0 : std::abs(h.to_disk(w)) < 1.0 - 1e-9;
    if (!in) continue;
    keep[static_cast<std::size_t>(k)] = 1;
    vals[static_cast<std::size_t>(k)] = h(w);
  }
  auto out = open_out(path);
  out << "x,y,re,im\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!keep[k]) continue;
    out << number(pts[k].real()) << ',' << number(pts[k].imag()) << ',' << number(vals[k].real())
        << ',' << number(vals[k].imag()) << '\n';
  }
}

void write_poisson_grid(const std::string& path, const PoissonSolution& U, const Lattice& lat) {
  auto pts = lat.points();
  std::vector<cd> inside;
  for (const cd& w : pts) {
    const bool in = U.is_exterior() ? std::abs(w) > 1.0 + 1e-9
                                    : std::abs(U.map().inverse(w)) < 1.0 - 1e-9;
    if (in) inside.push_back(w);
  }
  std::vector<double> u(inside.size());
  std::vector<cd> grad(inside.size());
  const auto count = static_cast<std::ptrdiff_t>(inside.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    u[i] = U(inside[i]);
    grad[i] = U.gradient(inside[i]);
  }
  auto out = open_out(path);
  out << "x,y,U,U_x,U_y\n";
  for (std::size_t k = 0; k < inside.size(); ++k) {
    out << number(inside[k].real()) << ',' << number(inside[k].imag()) << ',' << number(u[k]) << ','
        << number(grad[k].real()) << ',' << number(grad[k].imag()) << '\n';
  }
}

json limit_record(double anchor, double aperture, const NontangentialSample& s) {
  return {{"anchor", anchor},
          {"aperture", aperture},
          {"estimate", {s.estimate.real(), s.estimate.imag()}},
          {"flag", s.diverged ? "diverged" : (s.converged ? "converged" : "unconverged")}};
}

json to_json(const std::vector<AnchorResidual>& r) {
  json a = json::array();
  for (const auto& x : r) {
    a.push_back({{"anchor", x.theta}, {"residual", x.residual}, {"converged", x.converged}});
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "boundary_residual"}, {"anchors", a}};
}

json to_json(const NeumannCertificate& c) {
  json a = json::array();
  for (const auto& x : c.anchors) {
    a.push_back({{"anchor", x.theta},
                 {"trace", x.trace},
                 {"trace_converged", x.trace_converged},
                 {"difference_quotient", x.difference_quotient},
                 {"angular_limit", x.angular_limit},
                 {"angular_converged", x.angular_converged},
                 {"residual", x.residual},
                 {"consistency", x.consistency}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "neumann_certificate"},
          {"tolerance", c.tolerance},
          {"certified_fraction", c.certified_fraction()},
          {"anchors", a}};
}

json to_json(const std::vector<RelationResidual>& r) {
  json a = json::object();
  for (const auto& x : r) {
    a[number(x.theta)] = {{"plus", {x.plus_limit.real(), x.plus_limit.imag()}},
                          {"minus", {x.minus_limit.real(), x.minus_limit.imag()}},
                          {"residual", x.residual},
                          {"converged", x.converged}};
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "relation_residual"}, {"anchors", a}};
}

void write_json(const std::string& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace rbvp::io
