#pragma once

#include <Eigen/Dense>

#include "drlqr/state_space.hpp"

namespace drlqr {

/// Quantities derived from the stabilizing DARE solution P. With
/// K_lqr = (R + B_u' P B_u)^{-1} B_u' P A and A_K = A - B_u K_lqr:
///   Rbar = symmetric PD square root of (R + B_u' P B_u)^{-1},
///   Abar = A_K',  Dbar = A_K' P B_w,  Cbar = -Rbar B_u'.
struct LqrBlocks {
    Eigen::MatrixXd P;
    Eigen::MatrixXd K_lqr;
    Eigen::MatrixXd A_K;
    Eigen::MatrixXd Rbar;
    Eigen::MatrixXd Abar;
    Eigen::MatrixXd Dbar;
    Eigen::MatrixXd Cbar;
};

/// Stabilizing solution of
///   P = Q + A' P A - A' P B_u (R + B_u' P B_u)^{-1} B_u' P A
/// by iterating the Riccati recursion from P = Q until the successive
/// change drops below 1e-13 * ||P|| (cap 100000 iterations).
Eigen::MatrixXd solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R);

Eigen::MatrixXd solve_dare(const StateSpace& ss);

LqrBlocks lqr_blocks(const StateSpace& ss);

/// Solve X = Alhs * X * Arhs + Crhs. Throws on resonance, i.e. when some
/// eigenvalue product lambda_i(Alhs) * lambda_j(Arhs) equals 1 within 1e-12.
Eigen::MatrixXd solve_sylvester(const Eigen::MatrixXd& Alhs, const Eigen::MatrixXd& Arhs,
                                const Eigen::MatrixXd& Crhs);

/// Spectral radius helper used by the stability checks.
double spectral_radius(const Eigen::MatrixXd& M);

/// Symmetric PD square root of a symmetric PD matrix.
Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& M);

}  // namespace drlqr
