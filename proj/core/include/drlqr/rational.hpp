#pragma once

#include <optional>
#include <vector>

#include "drlqr/riccati.hpp"
#include "drlqr/spectral.hpp"
#include "drlqr/state_space.hpp"

namespace drlqr {

/// Symmetric Laurent polynomial sum_{k=-m}^{m} c_k z^{-k} with c_k = c_{-k}
/// real, so value(omega) = c_0 + 2 sum_{k>=1} c_k cos(k omega).
struct SymTrigPoly {
    int             order = 0;
    Eigen::VectorXd coeffs;  // c_0 .. c_m

    double value(double omega) const;
    /// Minimum over a dense grid of 8N points.
    double min_on_dense_grid(int N) const;
};

/// Feasibility problem for approximating a scalar spectrum by P/Q at level
/// eps: P - (N + eps) Q <= 0, P - (N - eps) Q >= 0, P >= 0, Q >= 0 at every
/// grid frequency, with the normalization Q(1) = 1. Returns the pair when
/// the slack LP certifies feasibility, nullopt otherwise.
std::optional<std::pair<SymTrigPoly, SymTrigPoly>> chebyshev_feasible(const Spectrum& Nsamples,
                                                                      int m, double eps);

/// Bisection on eps down to the smallest feasible level (relative bracket
/// width eps_tol): best order-m rational approximation of the spectrum in
/// the sup norm over the grid.
struct RationalFit {
    SymTrigPoly P;
    SymTrigPoly Q;
    double      eps_star = 0.0;
};
RationalFit fit_rational(const Spectrum& Nsamples, int m, double eps_tol);

/// Canonical factorization of a strictly positive symmetric trigonometric
/// polynomial: R(z) = |L(z)|^2 with L(z) = sum_{k=0}^m l_k z^{-k}, all roots
/// strictly inside the unit circle and l_0 > 0.
std::vector<double> poly_canonical_factor(const SymTrigPoly& Rpoly);

/// Stable, minimum-phase rational factor L(z) = (1 + Ctil (zI - Atil)^{-1}
/// Btil) Dtil^{1/2} in controllable canonical form.
struct RealizedFactor {
    Eigen::MatrixXd Atil;  // m x m
    Eigen::VectorXd Btil;  // m
    Eigen::RowVectorXd Ctil;  // m
    double          Dtil = 1.0;

    int order() const { return static_cast<int>(Atil.rows()); }
    /// Frequency response samples of L on the grid.
    GridSamples response(int N) const;
};

/// Realize numer(z^{-1}) / denom(z^{-1}) in the factor form above. The
/// denominator must be minimum phase and numer[0] nonzero.
RealizedFactor realize_L(const std::vector<double>& numer, const std::vector<double>& denom);

/// Finite-order controller e+ = Ftil e + Gtil w, u = Htil e + Jtil w.
struct ControllerSS {
    Eigen::MatrixXd Ftil;
    Eigen::MatrixXd Gtil;
    Eigen::MatrixXd Htil;
    Eigen::MatrixXd Jtil;
    int             m = 0;  // order of the factor it was built from

    int state_dim() const { return static_cast<int>(Ftil.rows()); }
    GridSamples response(int N) const;
};

/// Assemble the controller driven by the realized factor: solves the
/// Sylvester equation Util = A_K' Util Atil + A_K' P B_w Ctil and stacks
///   Ftil = [Atil - Btil Ctil, 0; B_u Rbar^2 B_u' Util, A_K],
///   Gtil = [(Atil - Btil Ctil) Btil; -B_w + B_u Rbar^2 B_u'(P B_w + Util Btil)],
///   Htil = -[Rbar^2 B_u' Util, -K_lqr],
///   Jtil = -Rbar^2 B_u' (P B_w + Util Btil),
/// for a weight-normalized system (R = I).
ControllerSS realize_controller(const LqrBlocks& blocks, const StateSpace& ss,
                                const RealizedFactor& Lr);

/// Grid-infinity deviation max_k ||response(z_k) - Ktarget(z_k)||_F.
double freq_response_error(const ControllerSS& ctrl, const GridSamples& Ktarget);

}  // namespace drlqr
