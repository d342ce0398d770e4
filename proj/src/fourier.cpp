#include "rbvp/fourier.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace rbvp::fourier {
namespace {

// fftw planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<cd> transform(std::span<const cd> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<cd> out(x.size());
  if (n == 0) return out;
  std::vector<cd> in(x.begin(), x.end());
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, pin, pout, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<cd> forward(std::span<const cd> x) { return transform(x, FFTW_FORWARD); }

std::vector<cd> inverse(std::span<const cd> X) {
  auto out = transform(X, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(X.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<cd> to_complex(std::span<const double> x) {
  return std::vector<cd>(x.begin(), x.end());
}

long frequency(std::size_t k, std::size_t n) noexcept {
  const auto kk = static_cast<long>(k);
  const auto nn = static_cast<long>(n);
  return (2 * kk <= nn) ? kk : kk - nn;
}

std::vector<double> conjugate(std::span<const double> samples) {
  const std::size_t n = samples.size();
  auto spec = forward(to_complex(samples));
  const cd minus_i(0.0, -1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const long f = frequency(k, n);
    if (f == 0 || 2 * static_cast<std::size_t>(std::labs(f)) == n) {
      spec[k] = 0.0;
    } else {
      spec[k] *= (f > 0 ? minus_i : -minus_i);
    }
  }
  auto back = inverse(spec);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = back[j].real();
  return out;
}

std::vector<cd> refine(std::span<const cd> samples, std::size_t factor) {
  const std::size_t n = samples.size();
  const std::size_t m = n * factor;
  auto spec = forward(samples);
  std::vector<cd> padded(m, cd(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const long f = frequency(k, n);
    if (2 * static_cast<std::size_t>(std::labs(f)) == n && n > 1) {
      padded[static_cast<std::size_t>(f)] += 0.5 * spec[k];
      padded[m - static_cast<std::size_t>(f)] += 0.5 * spec[k];
    } else if (f >= 0) {
      padded[static_cast<std::size_t>(f)] += spec[k];
    } else {
      padded[m - static_cast<std::size_t>(-f)] += spec[k];
    }
  }
  auto out = inverse(padded);
  const double scale = static_cast<double>(factor);
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace rbvp::fourier
