#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace drlqr {

/// Values of a matrix-valued function at N uniformly spaced points of the
/// unit circle, z_k = exp(j 2*pi*k / N), k = 0..N-1. This is the library's
/// working representation of transfer operators.
struct GridSamples {
    int                          grid_size = 0;  // N
    int                          rows      = 0;
    int                          cols      = 0;
    std::vector<Eigen::MatrixXcd> values;        // one rows x cols matrix per sample
    std::string                  label;

    GridSamples() = default;
    GridSamples(int N, int r, int c, std::string lbl = {});

    static double               omega(int k, int N);
    static std::complex<double> z(int k, int N);

    double               omega(int k) const { return omega(k, grid_size); }
    std::complex<double> z(int k) const { return z(k, grid_size); }

    Eigen::MatrixXcd&       operator[](int k) { return values[static_cast<size_t>(k)]; }
    const Eigen::MatrixXcd& operator[](int k) const { return values[static_cast<size_t>(k)]; }

    bool is_square() const { return rows == cols; }
    bool same_grid(const GridSamples& other) const { return grid_size == other.grid_size; }
};

/// Max relative violation of value(N-k) = conj(value(k)); zero for samples
/// of a real-coefficient transfer function.
double conjugate_symmetry_residual(const GridSamples& g);

/// Fraction of total impulse-response energy at negative time indices
/// (grid indices above N/2 after the inverse DFT). Small for causal samples.
double anticausal_energy_ratio(const GridSamples& g);

/// max_k Frobenius norm over the grid.
double grid_inf_norm(const GridSamples& g);

/// max_k largest eigenvalue of Hermitian square samples.
double grid_peak_eigenvalue(const GridSamples& g);

}  // namespace drlqr
