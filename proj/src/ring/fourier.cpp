#include "ring/fourier.hpp"

#include <cmath>
#include <numbers>

#include "ring/errors.hpp"

namespace ring {

namespace {

bool is_pow2(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> even = a[i + k];
        std::complex<double> odd = a[i + k + len / 2] * w;
        a[i + k] = even + odd;
        a[i + k + len / 2] = even - odd;
        w *= wlen;
      }
    }
  }
}

void dft_direct(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sgn = inverse ? 1.0 : -1.0;
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t j = 0; j < n; ++j) {
      // reduce j*k mod n first so the angle stays small
      const double ang = sgn * 2.0 * std::numbers::pi * double((j * k) % n) / double(n);
      acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a = std::move(out);
}

} // namespace

void dft(std::vector<std::complex<double>>& a, bool inverse) {
  if (a.empty()) throw DomainError("dft: empty input");
  if (is_pow2(a.size()))
    fft_radix2(a, inverse);
  else
    dft_direct(a, inverse);
  if (inverse)
    for (auto& v : a) v /= double(a.size());
}

std::complex<double> AngularModes::mode(int n) const {
  if (2 * std::abs(n) > n_samples) return {0.0, 0.0};
  int k = n >= 0 ? n : n + n_samples;
  if (k == n_samples) k = 0;
  return c[size_t(k)];
}

AngularModes angular_modes(const std::vector<std::complex<double>>& samples) {
  if (samples.size() < 2) throw DomainError("angular_modes: need at least 2 samples");
  AngularModes m;
  m.n_samples = int(samples.size());
  m.c = samples;
  dft(m.c, false);
  for (auto& v : m.c) v /= double(m.n_samples);
  return m;
}

} // namespace ring
