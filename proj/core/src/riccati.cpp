#include "drlqr/riccati.hpp"

#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "drlqr/errors.hpp"

namespace drlqr {

double spectral_radius(const Eigen::MatrixXd& M) {
    if (M.rows() == 0) return 0.0;
    return M.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.eigenvalues().minCoeff() < 0.0) {
        throw InputError("sym_sqrt: matrix is not positive semidefinite");
    }
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

Eigen::MatrixXd solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R) {
    constexpr int    kMaxIters = 100000;
    constexpr double kRelTol   = 1e-13;

    Eigen::MatrixXd P = Q;
    for (int it = 0; it < kMaxIters; ++it) {
        const Eigen::MatrixXd BtP  = B.transpose() * P;
        const Eigen::MatrixXd gain = (R + BtP * B).ldlt().solve(BtP * A);
        Eigen::MatrixXd Pn = Q + A.transpose() * P * A - A.transpose() * P * B * gain;
        Pn = 0.5 * (Pn + Pn.transpose()).eval();
        const double change = (Pn - P).norm();
        P = Pn;
        if (change <= kRelTol * std::max(P.norm(), 1.0)) {
            const Eigen::MatrixXd K  = (R + B.transpose() * P * B).ldlt().solve(B.transpose() * P * A);
            const double          sr = spectral_radius(A - B * K);
            if (sr >= 1.0) {
                std::ostringstream msg;
                msg << "solve_dare: converged to a non-stabilizing solution, rho(A-BK) = " << sr;
                throw ConvergenceError(msg.str());
            }
            return P;
        }
        if (!P.allFinite() || P.norm() > 1e150) {
            throw ConvergenceError("solve_dare: Riccati recursion diverged (pair not stabilizable?)");
        }
    }
    throw ConvergenceError("solve_dare: no convergence within 100000 iterations");
}

Eigen::MatrixXd solve_dare(const StateSpace& ss) {
    return solve_dare(ss.A, ss.B_u, ss.Q, ss.R);
}

LqrBlocks lqr_blocks(const StateSpace& ss) {
    LqrBlocks b;
    b.P = solve_dare(ss);
    const Eigen::MatrixXd Ru = ss.R + ss.B_u.transpose() * b.P * ss.B_u;
    b.K_lqr = Ru.ldlt().solve(ss.B_u.transpose() * b.P * ss.A);
    b.A_K   = ss.A - ss.B_u * b.K_lqr;
    b.Rbar  = sym_sqrt(Eigen::MatrixXd(Ru.inverse()));
    b.Abar  = b.A_K.transpose();
    b.Dbar  = b.A_K.transpose() * b.P * ss.B_w;
    b.Cbar  = -b.Rbar * ss.B_u.transpose();
    return b;
}

Eigen::MatrixXd solve_sylvester(const Eigen::MatrixXd& Alhs, const Eigen::MatrixXd& Arhs,
                                const Eigen::MatrixXd& Crhs) {
    const auto eig_l = Alhs.eigenvalues();
    const auto eig_r = Arhs.eigenvalues();
    for (int i = 0; i < eig_l.size(); ++i) {
        for (int j = 0; j < eig_r.size(); ++j) {
            if (std::abs(1.0 - eig_l(i) * eig_r(j)) < 1e-12) {
                throw InputError("solve_sylvester: resonance, eigenvalue product equals 1");
            }
        }
    }
    // vec(X) = (I - Arhs' (x) Alhs)^{-1} vec(Crhs)
    const long q = Crhs.rows(), s = Crhs.cols();
    const Eigen::MatrixXd kron = Eigen::kroneckerProduct(Arhs.transpose(), Alhs);
    const Eigen::MatrixXd lhs  = Eigen::MatrixXd::Identity(q * s, q * s) - kron;
    const Eigen::VectorXd vecC = Eigen::Map<const Eigen::VectorXd>(Crhs.data(), q * s);
    const Eigen::VectorXd vecX = lhs.partialPivLu().solve(vecC);
    return Eigen::Map<const Eigen::MatrixXd>(vecX.data(), q, s);
}

}  // namespace drlqr
