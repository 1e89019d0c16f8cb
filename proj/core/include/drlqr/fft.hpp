#pragma once

#include <complex>
#include <vector>

namespace drlqr {

/// Radix-2 DFT, X_k = sum_n x_n exp(-j 2 pi k n / N). Length must be a
/// power of two.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);

/// Inverse with the 1/N factor, so idft(dft(x)) == x.
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& x);

bool is_power_of_two(int n);

}  // namespace drlqr
