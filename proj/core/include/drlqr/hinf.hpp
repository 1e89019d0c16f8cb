#pragma once

#include "drlqr/grid.hpp"
#include "drlqr/state_space.hpp"

namespace drlqr {

struct HinfResult {
    double      gamma_hinf = 0.0;  // infimal squared closed-loop H-infinity norm
    GridSamples K;                 // central controller samples, d x p
    // Central controller realization at the certified level:
    //   x+ = (A - B_u Kx) x + (B_w - B_u Kw) w,  u = -Kx x - Kw w.
    Eigen::MatrixXd Kx;
    Eigen::MatrixXd Kw;
};

/// Bisection on the level gamma = ||T_K* T_K|| of the full-information
/// game Riccati recursion. A level is feasible when the recursion converges
/// with P^{-1} + B_u B_u' - gamma^{-1} B_w B_w' positive definite at every
/// iterate and the resulting closed loop is stable. Returns the infimum
/// within a relative bracket width of tol, plus the central controller
/// evaluated at gamma_hinf * (1 + 10 tol).
HinfResult hinf_gamma_lower_bound(const StateSpace& ss, double tol, int N);

}  // namespace drlqr
