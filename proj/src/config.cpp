#include "rbvp/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rbvp/error.hpp"
#include "rbvp/io.hpp"
#include "rbvp/poincare.hpp"

namespace rbvp::config {
namespace {

const char* kModule = "cli";

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

/// Splits "form:args" at the first colon.
std::pair<std::string, std::string> form_of(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {trim(spec), ""};
  return {trim(spec.substr(0, colon)), spec.substr(colon + 1)};
}

double strict_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw Error(kModule, "empty number");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw Error(kModule, "not a number: '" + t + "'");
  return v;
}

std::vector<double> reals(const std::string& args, std::size_t min_count, const std::string& form) {
  std::vector<double> out;
  for (const auto& a : split_args(args)) out.push_back(parse_real(a));
  if (out.size() < min_count) {
    throw Error(kModule, form + " needs at least " + std::to_string(min_count) + " arguments");
  }
  return out;
}

}  // namespace

const std::vector<std::string>& problems() {
  static const std::vector<std::string> p = {"hilbert", "dirichlet", "poincare", "neumann",
                                             "jump",    "shift",     "nonlinear", "mixed",
                                             "riemann_poincare", "luzin_demo", "verify"};
  return p;
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  return has(key) ? parse_real(values.at(key)) : fallback;
}

std::size_t ExperimentConfig::count(const std::string& key, std::size_t fallback) const {
  if (!has(key)) return fallback;
  const double v = parse_real(values.at(key));
  if (!(v >= 0.0) || v != std::floor(v)) throw Error(kModule, key + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool ExperimentConfig::flag(const std::string& key) const {
  if (!has(key)) return false;
  const std::string v = values.at(key);
  return v.empty() || v == "1" || v == "true" || v == "yes" || v == "on";
}

std::string ExperimentConfig::output_dir() const {
  if (const char* env = std::getenv("RBVP_OUTPUT_DIR"); env && *env) return env;
  return get("out", "rbvp_out");
}

void ExperimentConfig::validate() const {
  if (std::find(problems().begin(), problems().end(), problem) == problems().end()) {
    throw Error(kModule, "unknown problem '" + problem + "'");
  }
  if (anchors() < 16) throw Error(kModule, "anchor count must be at least 16");
  for (const char* key : {"tol", "h"}) {
    if (has(key) && !(number(key, 0.0) > 0.0)) throw Error(kModule, std::string(key) + " must be positive");
  }
  for (const auto& [key, value] : values) {
    const auto [form, args] = form_of(value);
    std::string path;
    if (form == "file") {
      path = args;
    } else if (form == "angle") {
      const auto [inner, inner_args] = form_of(args);
      if (inner == "file") path = inner_args;
    }
    if (!path.empty() && !std::filesystem::exists(path)) {
      throw Error(kModule, key + ": file not found: " + path);
    }
  }
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kModule, "cannot open config " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(kModule, path + ":" + std::to_string(lineno) + ": bad section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(kModule, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "problem") {
      cfg.problem = value;
    } else {
      cfg.values[key] = value;
    }
  }
  return cfg;
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    const double den = strict_double(t.substr(slash + 1));
    if (den == 0.0) throw Error(kModule, "division by zero in '" + t + "'");
    return strict_double(t.substr(0, slash)) / den;
  }
  return strict_double(t);
}

cd parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw Error(kModule, "empty complex number");
  if (t.back() != 'i') return {parse_real(t), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return strict_double(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(t)};
  return {strict_double(t.substr(0, split)), imag_of(t.substr(split))};
}

ConformalMap domain(const std::string& spec) {
  const auto [form, args] = form_of(spec);
  if (form == "disk") return ConformalMap::identity(1.0);
  if (form == "ellipse") {
    const auto v = reals(args, 2, "ellipse");
    return ConformalMap::ellipse(v[0], v[1]);
  }
  if (form == "star") {
    const auto v = reals(args, 2, "star");
    const double eps = v[0];
    const double k = v[1];
    return ConformalMap::theodorsen([eps, k](double t) { return 1.0 + eps * std::cos(k * t); }, 512);
  }
  throw Error(kModule, "unknown domain '" + spec + "'");
}

BoundaryFunction boundary(const std::string& spec, std::size_t n, bool complex_values,
                          Parameterization param, double length) {
  const auto [form, args] = form_of(spec);
  std::function<cd(double)> fn;
  Interpolation interp = Interpolation::linear;
  if (form == "zero") {
    fn = [](double) { return cd(0.0); };
  } else if (form == "const") {
    const cd v = parse_complex(args);
    fn = [v](double) { return v; };
  } else if (form == "fourier") {
    std::vector<cd> c;
    for (const auto& a : split_args(args)) c.push_back(parse_complex(a));
    fn = [c, length](double s) {
      cd acc = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        acc += c[k] * std::polar(1.0, kTwoPi * static_cast<double>(k + 1) * s / length);
      }
      return acc;
    };
  } else if (form == "step") {
    const auto parts = split_args(args);
    if (parts.size() < 3) throw Error(kModule, "step needs lo,hi,inside[,outside]");
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    const cd in = parse_complex(parts[2]);
    const cd out = parts.size() > 3 ? parse_complex(parts[3]) : cd(0.0);
    fn = [=](double s) { return s >= lo && s < hi ? in : out; };
    interp = Interpolation::nearest;
  } else if (form == "file") {
    auto data = io::read_boundary(args, param, length);
    if (data.size() != n) data = BoundaryFunction::sample_complex([&](double s) { return data(s); }, n, param, length);
    if (!complex_values && data.is_complex()) return data.with_real_samples(data.real_samples());
    return data;
  } else {
    throw Error(kModule, "unknown data form '" + spec + "'");
  }
  if (complex_values) return BoundaryFunction::sample_complex(fn, n, param, length, interp);
  return BoundaryFunction::sample_real([&](double s) { return fn(s).real(); }, n, param, length, interp);
}

std::optional<GridSource> source(const std::string& spec, const ConformalMap& map, double h) {
  const auto [form, args] = form_of(spec);
  if (form == "zero" || form.empty()) return std::nullopt;
  if (form == "file") return io::read_grid_source(args);
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  std::vector<cd> poly;
  for (int k = 0; k < 1024; ++k) {
    const cd p = map.boundary_point(kTwoPi * k / 1024.0);
    poly.push_back(p);
    lo_x = std::min(lo_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_x = std::max(hi_x, p.real());
    hi_y = std::max(hi_y, p.imag());
  }
  const bool disk = map.kind() == MapKind::identity;
  auto inside = [poly, disk, &map](cd z) {
    if (disk) return std::abs(z) <= map.length() / kTwoPi;
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
      const cd a = poly[i];
      const cd b = poly[j];
      if ((a.imag() > z.imag()) != (b.imag() > z.imag()) &&
          z.real() < (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real()) {
        in = !in;
      }
    }
    return in;
  };
  const double margin = 0.05;
  const cd lo(lo_x - margin, lo_y - margin);
  const cd hi(hi_x + margin, hi_y + margin);
  if (form == "const") {
    const double v = parse_real(args);
    return GridSource::sample([=](cd z) { return inside(z) ? v : 0.0; }, lo, hi, h, 8);
  }
  if (form == "gauss") {
    const double a = parse_real(args);
    if (!(a > 0.0)) throw Error(kModule, "gauss needs a positive rate");
    return GridSource::sample([=](cd z) { return inside(z) ? std::exp(-a * std::norm(z)) : 0.0; },
                              lo, hi, h);
  }
  throw Error(kModule, "unknown source form '" + spec + "'");
}

UnimodularField field(const std::string& spec, const ConformalMap& map, std::size_t n) {
  const auto [form, args] = form_of(spec);
  const bool disk = map.kind() == MapKind::identity && std::abs(map.length() - kTwoPi) < 1e-12;
  const auto param = disk ? Parameterization::angle : Parameterization::natural;
  const double length = map.length();
  if (form == "inner" || form == "outer") {
    const BoundaryFunction nrm = inner_normal(map).normal;
    const double sign = form == "inner" ? 1.0 : -1.0;
    return UnimodularField::normalized(BoundaryFunction::sample_complex(
        [&](double s) { return sign * nrm(s); }, n, param, length));
  }
  if (form == "const") return UnimodularField::constant(parse_complex(args) / std::abs(parse_complex(args)), n, param, length);
  if (form == "angle") return UnimodularField::from_angle(boundary(args, n, false, param, length));
  throw Error(kModule, "unknown coefficient form '" + spec + "'");
}

ShiftMap shift(const std::string& spec, std::size_t n) {
  const auto [form, args] = form_of(spec);
  if (form == "identity") return ShiftMap::identity(n);
  if (form == "rotation") return ShiftMap::rotation(parse_real(args), n);
  if (form == "sine") {
    const double eps = parse_real(args);
    return ShiftMap::from_function([eps](double s) { return s + eps * std::sin(s); }, n);
  }
  throw Error(kModule, "unknown shift form '" + spec + "'");
}

CaratheodoryMap caratheodory(const std::string& spec, std::size_t n) {
  const auto [form, args] = form_of(spec);
  if (form == "identity") return CaratheodoryMap::identity();
  if (form == "modulus") return CaratheodoryMap::modulus();
  if (form == "clamp") return CaratheodoryMap::clamp(parse_real(args));
  if (form == "affine") {
    const auto parts = split_args(args);
    if (parts.size() != 2) throw Error(kModule, "affine needs a,b");
    return CaratheodoryMap::affine(parse_complex(parts[0]), parse_complex(parts[1]), n);
  }
  throw Error(kModule, "unknown boundary relation '" + spec + "'");
}

}  // namespace rbvp::config
