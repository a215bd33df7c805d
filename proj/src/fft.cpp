#include "qrel/fft.hpp"

#include <numbers>
#include <stdexcept>
#include <vector>

namespace qrel {

namespace {

bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

void fft_inplace(Eigen::VectorXcd& data, bool inverse) {
    const Eigen::Index n = data.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_inplace: length must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(n / 2));
    for (Eigen::Index k = 0; k < n / 2; ++k) {
        const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }

    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const Eigen::Index stride = n / len;
        for (Eigen::Index i = 0; i < n; i += len) {
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                const std::complex<double> w = twiddle[static_cast<std::size_t>(k * stride)];
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
            }
        }
    }

    if (inverse) data /= static_cast<double>(n);
}

} // namespace qrel
