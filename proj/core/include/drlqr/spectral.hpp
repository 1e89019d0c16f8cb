#pragma once

#include <cstdint>
#include <vector>

#include "drlqr/grid.hpp"

namespace drlqr {

/// p x p Hermitian PSD samples of a power spectrum on the grid.
struct Spectrum {
    GridSamples samples;

    int p() const { return samples.rows; }
    static Spectrum validated(GridSamples g, double herm_tol = 1e-10, double psd_tol = 1e-10);
};

/// Samples of a causal, minimum-phase spectral factor L with L*L equal to
/// the source spectrum on the grid.
struct CausalFactor {
    GridSamples samples;

    int p() const { return samples.rows; }
};

/// Cepstral factorization of a scalar (p = 1) spectrum: take the log, keep
/// the causal half of its inverse DFT, exponentiate. The grid identity
/// |L(z_k)|^2 = N(z_k) is exact by construction; the factor is positive at
/// infinity. Samples at or below `floor` are rejected.
CausalFactor cepstral_factor(const Spectrum& spectrum, double floor = 1e-12);

/// Principal (Hermitian PSD) square root; eigenvalues in [-1e-10, 0) are
/// clipped to zero, non-Hermitian input beyond tolerance is rejected.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& M, double herm_tol = 1e-10);

/// Frequency-averaged trace (1/N) sum_k tr X(z_k); the time-averaged
/// operator trace of the block-Toeplitz operator X represents.
double avg_trace(const GridSamples& X);

/// Same quadrature before discarding the imaginary residue.
std::complex<double> avg_trace_complex(const GridSamples& X);

/// First `taps` inverse-DFT coefficients of the factor samples, plus the
/// fraction of impulse-response energy beyond the truncation.
struct ImpulseResponse {
    std::vector<Eigen::MatrixXd> coeffs;  // l_0 .. l_{taps-1}, each p x p
    double                       tail_energy = 0.0;  // relative
};
ImpulseResponse causal_impulse(const CausalFactor& L, int taps);

/// Stationary Gaussian sequence with spectrum L L*: i.i.d. standard normal
/// innovations filtered through the truncated causal impulse response. The
/// filter is warmed up over `taps` pre-samples so the output is stationary
/// from index 0. Deterministic given the seed. Rejects truncations with
/// relative tail energy above 1e-6.
std::vector<Eigen::VectorXd> stationary_gaussian(const CausalFactor& L, int horizon, int taps,
                                                 std::uint64_t seed);

}  // namespace drlqr
