#include "drlqr/hinf.hpp"

#include <sstream>

#include "drlqr/errors.hpp"
#include "drlqr/frequency.hpp"
#include "drlqr/riccati.hpp"

namespace drlqr {

namespace {

struct GameSolve {
    bool            feasible = false;
    Eigen::MatrixXd P;
};

// Value iteration for the full-information game at squared-norm level gamma:
//   P <- I + A' (P^{-1} + B_u B_u' - gamma^{-1} B_w B_w')^{-1} A.
// The level is feasible when the middle matrix stays positive definite at
// every iterate (the disturbance maximization stays concave after the input
// minimization) and the iteration converges with a stable central loop.
GameSolve game_dare(const StateSpace& ss, double gamma) {
    constexpr int    kMaxIters = 200000;
    constexpr double kRelTol   = 1e-12;

    const int n = ss.n();
    const Eigen::MatrixXd In   = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd BuBu = ss.B_u * ss.B_u.transpose();
    const Eigen::MatrixXd BwBw = ss.B_w * ss.B_w.transpose();

    Eigen::MatrixXd P = In;
    for (int it = 0; it < kMaxIters; ++it) {
        const Eigen::MatrixXd mid = P.inverse() + BuBu - BwBw / gamma;
        Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (mid + mid.transpose()));
        if (llt.info() != Eigen::Success) {
            return {};  // concavity lost: level infeasible
        }
        Eigen::MatrixXd Pn = In + ss.A.transpose() * llt.solve(ss.A);
        Pn = 0.5 * (Pn + Pn.transpose()).eval();
        const double change = (Pn - P).norm();
        P = Pn;
        if (!P.allFinite() || P.norm() > 1e12) {
            return {};  // value diverges: level infeasible
        }
        if (change <= kRelTol * P.norm()) {
            // Central gain must stabilize.
            const Eigen::MatrixXd Ru = Eigen::MatrixXd::Identity(ss.d(), ss.d()) +
                                       ss.B_u.transpose() * P * ss.B_u;
            const Eigen::MatrixXd Kx = Ru.ldlt().solve(ss.B_u.transpose() * P * ss.A);
            if (spectral_radius(ss.A - ss.B_u * Kx) >= 1.0) {
                return {};
            }
            return {true, P};
        }
    }
    return {};  // no convergence within budget: treat the level as infeasible
}

}  // namespace

HinfResult hinf_gamma_lower_bound(const StateSpace& ss, double tol, int N) {
    if (!ss.is_normalized()) {
        throw InputError("hinf_gamma_lower_bound: system must be weight-normalized");
    }

    HinfResult out;
    if (ss.B_w.norm() == 0.0) {
        out.gamma_hinf = 0.0;
        out.K  = GridSamples(N, ss.d(), ss.p(), "K_hinf");
        out.Kx = Eigen::MatrixXd::Zero(ss.d(), ss.n());
        out.Kw = Eigen::MatrixXd::Zero(ss.d(), ss.p());
        return out;
    }

    // The H2 closed-loop grid peak is an upper bound on the optimal level.
    const LqrBlocks       blocks = lqr_blocks(ss);
    const NoncausalBlocks nb     = noncausal_blocks(blocks, ss, N);
    const PlantFreq       pf     = plant_freq(ss, N);
    const GridSamples     Kh2    = h2_controller(blocks, nb);
    const double          h2peak = grid_peak_eigenvalue(closed_loop_quadratic(Kh2, pf.F, pf.G));

    double hi = std::max(h2peak * 1.05, 1e-12);
    {
        constexpr int kMaxDoublings = 60;
        int           doublings     = 0;
        while (!game_dare(ss, hi).feasible) {
            hi *= 2.0;
            if (++doublings > kMaxDoublings) {
                throw ConvergenceError(
                    "hinf_gamma_lower_bound: no feasible level found below the bracket cap");
            }
        }
    }
    double lo = 0.0;
    while (hi - lo > tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (game_dare(ss, mid).feasible) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    out.gamma_hinf = hi;

    // Central controller at a strictly feasible level.
    const double level = hi * (1.0 + 10.0 * tol);
    GameSolve    gs    = game_dare(ss, level);
    if (!gs.feasible) {
        throw ConvergenceError("hinf_gamma_lower_bound: certified level lost feasibility");
    }
    const Eigen::MatrixXd Ru = Eigen::MatrixXd::Identity(ss.d(), ss.d()) +
                               ss.B_u.transpose() * gs.P * ss.B_u;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(Ru);
    out.Kx = ldlt.solve(ss.B_u.transpose() * gs.P * ss.A);
    out.Kw = ldlt.solve(ss.B_u.transpose() * gs.P * ss.B_w);
    out.K  = ss_frequency_response(ss.A - ss.B_u * out.Kx, ss.B_w - ss.B_u * out.Kw, -out.Kx,
                                   -out.Kw, N, "K_hinf");
    return out;
}

}  // namespace drlqr
