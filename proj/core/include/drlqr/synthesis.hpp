#pragma once

#include <optional>
#include <vector>

#include "drlqr/frequency.hpp"
#include "drlqr/hinf.hpp"
#include "drlqr/spectral.hpp"

namespace drlqr {

struct SynthesisConfig {
    double r            = 1.0;    // Wasserstein-2 radius, > 0
    int    N            = 1024;   // grid size, power of two
    double fp_tol       = 1e-9;   // fixed-point relative tolerance
    int    fp_max_iters = 200000;
    double gamma_tol    = 1e-6;   // bisection residual tolerance, relative to r^2
    double gamma_cap    = 1e9;    // bracket ceiling as a multiple of gamma_hinf

    void validate() const;
};

struct FixedPointDiagnostics {
    int                 iterations = 0;
    bool                converged  = false;
    std::vector<double> residuals;     // successive relative sup-changes of N
    std::vector<double> bw_distances;  // Bures-Wasserstein distances between iterates
};

struct SynthesisResult {
    double                gamma_star = 0.0;
    GridSamples           K;      // controller samples, d x p
    Spectrum              Nspec;  // worst-case spectrum N = L*L
    CausalFactor          L;
    double                cost = 0.0;  // worst-case expected cost at radius r
    double                gamma_hinf = 0.0;
    double                residual   = 0.0;  // radius-equation residual at gamma_star
    FixedPointDiagnostics diagnostics;       // from the final fixed-point solve
};

/// Grid quadrature of F_1: Bbar = (1/N) sum_k (I - z_k Abar)^{-1} Dbar L(z_k).
Eigen::MatrixXd f1_bbar(const CausalFactor& L, const LqrBlocks& blocks);

/// F_2: per-sample spectrum update
///   N(z) = 1/4 (I + sqrt(I + 4 gamma^{-1} (S*S + U*U)))^2
/// with S(z) = Cbar (z^{-1} I - Abar)^{-1} Bbar and U*U = L* TKcircQuad L.
Spectrum f2_spectrum(const Eigen::MatrixXd& Bbar, const CausalFactor& L, double gamma,
                     const LqrBlocks& blocks, const NoncausalBlocks& nb);

/// Iterate L -> factor(F_2(F_1(L), L)) until the spectrum stabilizes.
/// Initialization defaults to L = I; scalar convergence studies pass a
/// near-zero value instead. Scalar disturbances only (p = 1).
struct FixedPointResult {
    CausalFactor          L;
    Spectrum              Nspec;
    FixedPointDiagnostics diagnostics;
};
FixedPointResult fixed_point(double gamma, const LqrBlocks& blocks, const NoncausalBlocks& nb,
                             const SynthesisConfig& config,
                             std::optional<double> init_value = std::nullopt);

/// K(z) = Kcirc(z) - DeltaInv(z) S(z) L(z)^{-1} on the grid.
GridSamples controller_from_L(const CausalFactor& L, const LqrBlocks& blocks,
                              const NoncausalBlocks& nb);

/// avg_trace(((I - gamma^{-1} T*T)^{-1} - I)^2) - r^2; strictly decreasing
/// in gamma. Requires gamma above the pointwise spectral peak of T*T.
double gamma_residual(const GridSamples& TquadK, double gamma, double r);

/// Worst-case expected cost of a fixed controller with closed-loop quadratic
/// form samples TquadK: locates gamma_star by bisection on the radius
/// equation, sets Mhalf(z) = (I - gamma_star^{-1} T*T(z))^{-1} pointwise and
/// evaluates gamma r^2 + gamma Tr(2 Mhalf - M - I) + Tr(T*T M).
struct WorstCaseCost {
    double   cost       = 0.0;
    double   gamma_star = 0.0;
    Spectrum Mhalf;
};
WorstCaseCost worst_case_cost(const GridSamples& TquadK, double r, double gamma_tol = 1e-9);

/// Full synthesis: gamma bisection over fixed-point solves until the radius
/// equation residual for the synthesized controller is below
/// gamma_tol * r^2.
SynthesisResult synthesize(const StateSpace& ss, const SynthesisConfig& config);

/// Ratios of successive Bures-Wasserstein distances between spectrum
/// iterates; near-constant below one for exponential convergence. Ratios
/// where the previous distance is below 1e-14 are reported as zero.
std::vector<double> convergence_ratio(const FixedPointDiagnostics& diagnostics);

}  // namespace drlqr
