#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rbvp {

using cd = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Parameterization { angle, natural };
enum class Interpolation { nearest, linear };

/// Uniformly sampled measurable data on a closed boundary curve.
///
/// Sample j sits at parameter s_j = j*L/N. Values between samples follow the
/// declared interpolation rule; `nearest` treats sample j as the value on the
/// cell [s_j - h/2, s_j + h/2).
class BoundaryFunction {
 public:
  static BoundaryFunction real(std::vector<double> samples,
                               Parameterization param = Parameterization::angle,
                               double length = kTwoPi,
                               Interpolation interp = Interpolation::linear);
  static BoundaryFunction complex(std::vector<cd> samples,
                                  Parameterization param = Parameterization::angle,
                                  double length = kTwoPi,
                                  Interpolation interp = Interpolation::linear);

  // Convenience samplers: evaluate fn at the uniform nodes.
  static BoundaryFunction sample_real(const std::function<double(double)>& fn, std::size_t n,
                                      Parameterization param = Parameterization::angle,
                                      double length = kTwoPi,
                                      Interpolation interp = Interpolation::linear);
  static BoundaryFunction sample_complex(const std::function<cd(double)>& fn, std::size_t n,
                                         Parameterization param = Parameterization::angle,
                                         double length = kTwoPi,
                                         Interpolation interp = Interpolation::linear);

  std::size_t size() const noexcept { return values_.size(); }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(values_.size()); }
  Parameterization parameterization() const noexcept { return param_; }
  Interpolation interpolation() const noexcept { return interp_; }
  bool is_complex() const noexcept { return complex_; }
  double node(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }

  std::span<const cd> samples() const noexcept { return values_; }
  std::vector<double> real_samples() const;
  std::vector<double> imag_samples() const;
  cd operator[](std::size_t j) const noexcept { return values_[j]; }

  /// Interpolated value at an arbitrary parameter (wrapped into [0, L)).
  cd operator()(double s) const;
  double real_at(double s) const { return (*this)(s).real(); }

  /// Same metadata, new samples (count must match).
  BoundaryFunction with_samples(std::vector<cd> samples, bool is_complex) const;
  BoundaryFunction with_real_samples(std::vector<double> samples) const;
  BoundaryFunction with_interpolation(Interpolation interp) const;

  bool same_grid(const BoundaryFunction& other) const noexcept;

 private:
  BoundaryFunction(std::vector<cd> values, Parameterization param, double length,
                   Interpolation interp, bool is_complex);

  std::vector<cd> values_;
  Parameterization param_;
  double length_;
  Interpolation interp_;
  bool complex_;
};

double wrap_parameter(double s, double length) noexcept;
bool is_power_of_two(std::size_t n) noexcept;

/// Unimodular coefficient field lambda together with a pointwise branch of
/// its argument. The branch is the principal value in (-pi, pi].
class UnimodularField {
 public:
  /// Rejects samples with ||lambda| - 1| > 1e-12.
  static UnimodularField from_samples(const BoundaryFunction& lambda);
  /// Normalizes lambda/|lambda| first; rejects zeros.
  static UnimodularField normalized(const BoundaryFunction& lambda);
  /// exp(i * angle) for real angle samples.
  static UnimodularField from_angle(const BoundaryFunction& angle);
  static UnimodularField constant(cd value, std::size_t n,
                                  Parameterization param = Parameterization::angle,
                                  double length = kTwoPi);

  const BoundaryFunction& base() const noexcept { return base_; }
  const BoundaryFunction& branch() const noexcept { return branch_; }
  std::size_t size() const noexcept { return base_.size(); }
  cd operator()(double s) const;

  /// Net winding of the sampled field (sum of wrapped phase increments / 2pi).
  int winding_number() const;

  UnimodularField conjugated() const;

 private:
  UnimodularField(BoundaryFunction base, BoundaryFunction branch);
  BoundaryFunction base_;
  BoundaryFunction branch_;
};

/// Middle-thirds Cantor staircase by exact ternary digit scan (64 digits).
double cantor_function(double x);

/// Continuous primitive Phi of clamped data with Phi(0) = Phi(L) = 0.
///
/// Phi(t) = int_0^t clamp(phi, +-bound) - M * C(t / L), M = int_0^L clamp(phi).
/// For `linear` data the cumulative integral is taken spectrally (exact for
/// trigonometric polynomials); for `nearest` data it is the exact integral of
/// the piecewise-constant function.
class ContinuousPrimitive {
 public:
  double operator()(double t) const;
  /// Cumulative integral of the clamped data without the singular term.
  double absolutely_continuous_part(double t) const;
  double singular_correction() const noexcept { return mass_; }
  double truncation_bound() const noexcept { return bound_; }
  double length() const noexcept { return length_; }
  std::size_t base_size() const noexcept { return n_; }

 private:
  friend ContinuousPrimitive luzin_primitive(const BoundaryFunction&, double);
  ContinuousPrimitive() = default;

  double length_ = kTwoPi;
  double bound_ = 0.0;
  double mass_ = 0.0;
  std::size_t n_ = 0;
  Interpolation interp_ = Interpolation::linear;
  // nearest: prefix sums of cell integrals; linear: refined value/derivative tables.
  std::vector<double> cells_;
  std::vector<double> prefix_;
  std::vector<double> table_;
  std::vector<double> slope_;
  double mean_ = 0.0;
};

ContinuousPrimitive luzin_primitive(const BoundaryFunction& phi, double truncation_bound = 1e6);

/// Pointwise boundary relation (zeta, w) -> value, continuous in w.
class CaratheodoryMap {
 public:
  struct Identity {};
  struct Affine {
    BoundaryFunction a;
    BoundaryFunction b;
  };
  struct Modulus {};
  struct Clamp {
    double bound;
  };
  /// Piecewise-linear in Re(w) over an increasing grid, constant beyond it.
  struct Tabulated {
    std::vector<double> w_grid;
    std::vector<cd> values;
  };
  using Form = std::variant<Identity, Affine, Modulus, Clamp, Tabulated>;

  static CaratheodoryMap identity() { return CaratheodoryMap(Identity{}); }
  static CaratheodoryMap affine(BoundaryFunction a, BoundaryFunction b);
  static CaratheodoryMap affine(cd a, cd b, std::size_t n,
                                Parameterization param = Parameterization::angle,
                                double length = kTwoPi);
  static CaratheodoryMap modulus() { return CaratheodoryMap(Modulus{}); }
  static CaratheodoryMap clamp(double bound);
  static CaratheodoryMap tabulated(std::vector<double> w_grid, std::vector<cd> values);

  /// Evaluate at boundary parameter s.
  cd operator()(double s, cd w) const;
  const Form& form() const noexcept { return form_; }
  std::string name() const;

 private:
  explicit CaratheodoryMap(Form form) : form_(std::move(form)) {}
  Form form_;
};

BoundaryFunction compose_caratheodory(const CaratheodoryMap& map, const BoundaryFunction& psi);

/// Bi-Lipschitz increasing reparameterization of [0, L) onto itself.
/// Samples are stored as a lift: beta(s_{j}) for j = 0..N-1 with
/// beta(s + L) = beta(s) + L.
class ShiftMap {
 public:
  static ShiftMap from_function(const std::function<double(double)>& lift, std::size_t n,
                                double length = kTwoPi);
  static ShiftMap identity(std::size_t n, double length = kTwoPi);
  static ShiftMap rotation(double offset, std::size_t n, double length = kTwoPi);

  double forward(double s) const;
  double inverse(double t) const;
  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return lift_.size(); }
  double lower_bound() const noexcept { return lower_; }
  double upper_bound() const noexcept { return upper_; }

 private:
  ShiftMap(std::vector<double> lift, double length);
  std::vector<double> lift_;
  double length_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

enum class ShiftDirection { forward, inverse };

BoundaryFunction apply_shift(const BoundaryFunction& psi, const ShiftMap& beta,
                             ShiftDirection direction);

}  // namespace rbvp
