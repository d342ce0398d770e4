#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rbvp::fourier {

using cd = std::complex<double>;

// X_k = sum_j x_j exp(-2 pi i j k / N)
std::vector<cd> forward(std::span<const cd> x);
// x_j = (1/N) sum_k X_k exp(2 pi i j k / N)
std::vector<cd> inverse(std::span<const cd> X);

std::vector<cd> to_complex(std::span<const double> x);

/// Signed frequency of DFT bin k for length n (Nyquist reported as +n/2).
long frequency(std::size_t k, std::size_t n) noexcept;

/// Boundary conjugate function: multiplier -i sign(n), zero at n = 0 and at
/// the Nyquist bin.
std::vector<double> conjugate(std::span<const double> samples);

/// Trigonometric interpolant of the samples evaluated on a grid `factor`
/// times finer (zero padding, Nyquist split symmetrically).
std::vector<cd> refine(std::span<const cd> samples, std::size_t factor);

}  // namespace rbvp::fourier
