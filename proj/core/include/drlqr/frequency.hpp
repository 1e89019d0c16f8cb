#pragma once

#include "drlqr/grid.hpp"
#include "drlqr/riccati.hpp"
#include "drlqr/state_space.hpp"

namespace drlqr {

/// Samples of the plant transfer functions F(z) = (zI - A)^{-1} B_u and
/// G(z) = (zI - A)^{-1} B_w on the N-point grid. Rejects systems with an
/// eigenvalue of A within 1e-9 of the unit circle.
struct PlantFreq {
    GridSamples F;  // n x d
    GridSamples G;  // n x p
};
PlantFreq plant_freq(const StateSpace& ss, int N);

/// Closed-form frequency-domain blocks around the noncausal optimum:
///   Kcirc(z)    = -(I + F*F)^{-1} F* G,
///   DeltaInv(z) = (I - K_lqr (zI - A_K)^{-1} B_u) Rbar,
///   DKplus(z)   = -Rbar B_u' P A (zI - A)^{-1} B_w - Rbar B_u' P B_w,
///   DKminus(z)  = -Rbar B_u' (z^{-1} I - A_K')^{-1} A_K' P B_w,
///   TKcircQuad  = T_{Kcirc}* T_{Kcirc} evaluated pointwise.
struct NoncausalBlocks {
    GridSamples Kcirc;       // d x p
    GridSamples DeltaInv;    // d x d
    GridSamples DKplus;      // d x p
    GridSamples DKminus;     // d x p
    GridSamples TKcircQuad;  // p x p
};
NoncausalBlocks noncausal_blocks(const LqrBlocks& blocks, const StateSpace& ss, int N);

/// T_K* T_K (z) = (F K + G)*(F K + G) + K* K, pointwise on the grid.
GridSamples closed_loop_quadratic(const GridSamples& K, const GridSamples& F,
                                  const GridSamples& G);

/// H2-optimal disturbance-feedback controller K_H2(z) = DeltaInv(z) DKplus(z).
GridSamples h2_controller(const LqrBlocks& blocks, const NoncausalBlocks& nb);

/// Frequency response samples H (zI - F)^{-1} G + J of a state-space system.
GridSamples ss_frequency_response(const Eigen::MatrixXd& F, const Eigen::MatrixXd& G,
                                  const Eigen::MatrixXd& H, const Eigen::MatrixXd& J, int N,
                                  const std::string& label = {});

}  // namespace drlqr
