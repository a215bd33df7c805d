#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qrel {

/// In-place radix-2 FFT. Length must be a power of two.
/// Forward convention: X_k = sum_j x_j exp(-2*pi*i*j*k/n).
/// The inverse applies the conjugate kernel and the 1/n factor.
void fft_inplace(Eigen::VectorXcd& data, bool inverse);

} // namespace qrel
