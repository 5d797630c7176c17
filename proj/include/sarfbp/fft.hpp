#pragma once

#include <vector>

#include "sarfbp/array2d.hpp"

namespace sarfbp::fft {

/// Kernel sign convention: sign = +1 applies exp(+j*k*x) (image -> spectrum
/// direction throughout this toolkit), sign = -1 its inverse. All centered
/// transforms are unitary (1/sqrt(n) per axis) and place both the spatial
/// origin and k = 0 at index n/2, which requires even lengths.
void centered_dft(std::vector<cplx>& v, int sign);

/// Transform each row in place (along the column index).
void centered_dft_rows(Array2D& a, int sign);

/// Transform each column in place (along the row index).
void centered_dft_cols(Array2D& a, int sign);

/// Frequency axis of a centered transform: k[i] = (i - n/2) * 2*pi/(n*spacing).
std::vector<double> freq_axis(std::size_t n, double spacing);

/// Trigonometric (zero-padding) interpolation by an integer factor. Matches
/// the continuous Fourier-series evaluation of the input samples, with the
/// Nyquist coefficient split evenly for even lengths. y[factor*i] == x[i].
std::vector<cplx> upsample_trig(const std::vector<cplx>& x, int factor);

}  // namespace sarfbp::fft
