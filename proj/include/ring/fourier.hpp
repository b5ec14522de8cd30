#pragma once

#include <complex>
#include <vector>

namespace ring {

// In-place discrete Fourier transform, forward convention
//   out[k] = sum_j in[j] exp(-2*pi*i*j*k/n).
// Radix-2 when n is a power of two, direct O(n^2) evaluation otherwise.
// The inverse applies the conjugate kernel and divides by n.
void dft(std::vector<std::complex<double>>& a, bool inverse);

// Fourier coefficients of samples on a uniform angular grid,
//   samples[j] = sum_n c_n exp(i*n*theta_j),  theta_j = 2*pi*j/N,
// resolvable for |n| <= N/2. mode(n) returns c_n by signed index.
struct AngularModes {
  int n_samples = 0;
  std::vector<std::complex<double>> c; // DFT layout divided by N

  std::complex<double> mode(int n) const;
};

AngularModes angular_modes(const std::vector<std::complex<double>>& samples);

} // namespace ring
