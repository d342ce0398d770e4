#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbvp/boundary_data.hpp"
#include "rbvp/conformal.hpp"
#include "rbvp/potential.hpp"

namespace rbvp::config {

/// Problems understood by the driver.
const std::vector<std::string>& problems();

/// Flat key/value configuration. Sections of a config file only group keys;
/// `[grid] h = 1/64` and `h = 1/64` are the same entry.
struct ExperimentConfig {
  std::string problem;
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  bool flag(const std::string& key) const;

  std::size_t samples() const { return count("samples", 1024); }
  std::size_t anchors() const { return count("anchors", 64); }
  std::uint64_t seed() const { return count("seed", 0); }
  double h() const { return number("h", 1.0 / 128); }
  std::string output_dir() const;

  /// Throws on unknown problems, non-positive tolerances, fewer than 16
  /// anchors, or missing `file:` inputs.
  void validate() const;
};

/// Reads `key = value` lines; `#` starts a comment; `[name]` opens a section.
ExperimentConfig read_config_file(const std::string& path);

/// "2", "-0.3i", "1+2i", "0.5-1e-3i".
cd parse_complex(const std::string& text);
/// "0.25", "1/128".
double parse_real(const std::string& text);

/// Named domains: disk, ellipse:a,b, star:eps,k (radius 1 + eps cos k theta).
ConformalMap domain(const std::string& spec);

/// Boundary data forms over [0, length):
///   zero, const:v, fourier:c1,c2,... (sum c_k e^{2 pi i k s / L}),
///   step:lo,hi,inside[,outside], file:path.
/// Real data keeps the real part.
BoundaryFunction boundary(const std::string& spec, std::size_t n, bool complex_values,
                          Parameterization param = Parameterization::angle,
                          double length = kTwoPi);

/// Source forms: zero, const:v (v on the domain), gauss:a (exp(-a |z|^2)),
/// file:path (dense matrix). Returns nullopt for zero.
std::optional<GridSource> source(const std::string& spec, const ConformalMap& map, double h);

/// Unimodular forms: inner, outer, const:c, angle:<boundary form>.
UnimodularField field(const std::string& spec, const ConformalMap& map, std::size_t n);

/// Shift forms: identity, rotation:c, sine:eps (s + eps sin s).
ShiftMap shift(const std::string& spec, std::size_t n);

/// Caratheodory forms: identity, affine:a,b, modulus, clamp:b.
CaratheodoryMap caratheodory(const std::string& spec, std::size_t n);

}  // namespace rbvp::config
