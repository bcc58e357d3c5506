#pragma once

#include <complex>

namespace enpp::detail {

// Unnormalized 2D real-to-complex transform of an n x n row-major array into
// the n x (n/2+1) half plane. Safe to call concurrently.
void fft_forward(int n, const double* in, std::complex<double>* out);

// Unnormalized inverse of fft_forward. The input is not modified.
void fft_inverse(int n, const std::complex<double>* in, double* out);

}  // namespace enpp::detail
