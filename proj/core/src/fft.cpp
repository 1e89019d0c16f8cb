#include "drlqr/fft.hpp"

#include <cmath>
#include <numbers>

#include "drlqr/errors.hpp"

namespace drlqr {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

// In-place iterative radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse.
void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j]           = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
    if (!is_power_of_two(static_cast<int>(x.size()))) {
        throw InputError("dft: length must be a power of two");
    }
    auto a = x;
    fft_radix2(a, -1);
    return a;
}

std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& x) {
    if (!is_power_of_two(static_cast<int>(x.size()))) {
        throw InputError("idft: length must be a power of two");
    }
    auto a = x;
    fft_radix2(a, +1);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= scale;
    return a;
}

}  // namespace drlqr
