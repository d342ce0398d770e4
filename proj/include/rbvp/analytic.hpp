#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "rbvp/boundary_data.hpp"
#include "rbvp/disk_harmonic.hpp"

namespace rbvp {

/// Type-erased analytic function with its derivative.
class Analytic {
 public:
  using Fn = std::function<cd(cd)>;

  Analytic() : Analytic(constant(0.0)) {}
  Analytic(Fn value, Fn derivative) : value_(std::move(value)), derivative_(std::move(derivative)) {}

  static Analytic constant(cd c);
  static Analytic identity();
  static Analytic monomial(int power);

  cd operator()(cd z) const { return value_(z); }
  cd derivative(cd z) const { return derivative_(z); }

  Analytic scaled(cd c) const;
  Analytic exp() const;
  friend Analytic operator+(const Analytic& a, const Analytic& b);
  friend Analytic operator*(const Analytic& a, const Analytic& b);

 private:
  Fn value_;
  Fn derivative_;
};

/// S[phi] for real data: analytic with Re = Poisson integral, Im(0) = 0.
Analytic schwarz_field(const BoundaryFunction& phi);

/// S[Re B] + i S[Im B].
Analytic schwarz_field_complex(const BoundaryFunction& B);

/// Cauchy integral (1/2pi i) int B(zeta) dzeta / (zeta - z) inside the disk.
Analytic cauchy_inside(const BoundaryFunction& B);
/// The same integral for |z| > 1 (vanishes at infinity).
Analytic cauchy_outside(const BoundaryFunction& B);

/// Reverse the angle orientation: samples at theta_j become samples at -theta_j.
BoundaryFunction reflect_angle(const BoundaryFunction& data);

struct NullOptions {
  /// Total measure of the exceptional boundary set, as a fraction of the circle.
  double exceptional_fraction = 0.05;
  /// Off the exceptional set the null factor has modulus exp(-decay).
  double decay = 12.0;
  /// Frequencies with |coefficient| below this are dropped.
  double truncation = 1e-12;
  /// Boundary angles (disk side) to keep away from the exceptional set.
  std::vector<double> avoid;
};

/// Bounded-type analytic factor Q(z) = exp(W(z^order)) with Q(0) = 1 to the
/// given order, |Q| = exp(-decay) on the circle off `order` small arcs.
class NullFactor {
 public:
  NullFactor(int order, const NullOptions& opt);
  cd operator()(cd z) const;
  cd derivative(cd z) const;
  /// 1 - Q computed without cancellation near z = 0.
  cd one_minus(cd z) const;
  int order() const noexcept { return order_; }
  /// True if the boundary angle lies in an exceptional arc widened by margin.
  bool exceptional(double theta, double margin = 0.0) const;
  double arc_start() const noexcept { return a_; }
  double arc_end() const noexcept { return b_; }

 private:
  cd w_of(cd u, cd* dw) const;
  int order_;
  double a_ = 0.0;
  double b_ = 0.0;
  double c_ = 0.0;
};

/// Analytic function in the disk whose nontangential boundary values equal the
/// complex data off a small exceptional set: C+[D] plus the negative-frequency
/// part of D multiplied by 1 - Q.
class ComplexDirichlet {
 public:
  ComplexDirichlet(const BoundaryFunction& data, const NullOptions& opt = {});

  cd operator()(cd z) const;
  cd derivative(cd z) const;
  Analytic analytic() const;
  int negative_order() const noexcept { return static_cast<int>(negative_.size()); }
  const NullFactor* factor() const noexcept { return factor_.get(); }
  bool exceptional(double theta, double margin = 0.0) const;

 private:
  cd pole_part(cd z, cd* derivative) const;
  cd cauchy_disk(cd z, bool derivative) const;

  Analytic plus_;
  std::vector<cd> negative_;  // coefficient of z^{-k} at index k - 1
  std::shared_ptr<NullFactor> factor_;
};

/// F(z) = int_0^z A(w) dw along the radial segment (adaptive Gauss).
struct Antiderivative {
  cd value{};
  bool warning = false;
};
Antiderivative radial_antiderivative(const Analytic& a, cd z, double tol = 1e-12);

/// Adaptive Gauss integral of fn over the segment [z0, z1].
cd segment_integral(const std::function<cd(cd)>& fn, cd z0, cd z1, double tol, bool* warning);

/// Analytic function F with F(0) = 0 and F' = a.
Analytic integrate_analytic(const Analytic& a);

/// Antiderivative of an exterior function E(1/z) with E analytic on the disk
/// and E'(0) = 0: F(z) = e0 z + sum_{k>=2} e_k z^{1-k} / (1 - k) + const,
/// normalized so that F(z) - e0 z -> 0 at infinity.
class ExteriorAntiderivative {
 public:
  ExteriorAntiderivative(std::function<cd(cd)> disk_function, std::size_t coefficients = 256);
  cd operator()(cd z) const;
  cd derivative(cd z) const { return fn_(1.0 / z); }
  const std::vector<cd>& coefficients() const noexcept { return coeff_; }

 private:
  cd series(cd z) const;
  std::function<cd(cd)> fn_;
  std::vector<cd> coeff_;
};

}  // namespace rbvp
