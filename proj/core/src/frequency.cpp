#include "drlqr/frequency.hpp"

#include <sstream>

#include "drlqr/errors.hpp"
#include "drlqr/fft.hpp"

namespace drlqr {

namespace {

void check_unit_circle_eigs(const Eigen::MatrixXd& A) {
    const auto eigs = A.eigenvalues();
    for (int i = 0; i < eigs.size(); ++i) {
        if (std::abs(std::abs(eigs(i)) - 1.0) < 1e-9) {
            std::ostringstream msg;
            msg << "plant_freq: eigenvalue " << eigs(i)
                << " of A lies within 1e-9 of the unit circle; resolvent samples undefined";
            throw InputError(msg.str());
        }
    }
}

}  // namespace

PlantFreq plant_freq(const StateSpace& ss, int N) {
    if (!is_power_of_two(N)) throw InputError("plant_freq: grid size must be a power of two");
    check_unit_circle_eigs(ss.A);

    const int n = ss.n();
    PlantFreq out;
    out.F = GridSamples(N, n, ss.d(), "F");
    out.G = GridSamples(N, n, ss.p(), "G");
    const Eigen::MatrixXcd Ac = ss.A.cast<std::complex<double>>();
    for (int k = 0; k < N; ++k) {
        Eigen::MatrixXcd zIA = -Ac;
        zIA.diagonal().array() += GridSamples::z(k, N);
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(zIA);
        out.F[k] = lu.solve(ss.B_u.cast<std::complex<double>>());
        out.G[k] = lu.solve(ss.B_w.cast<std::complex<double>>());
    }
    return out;
}

NoncausalBlocks noncausal_blocks(const LqrBlocks& blocks, const StateSpace& ss, int N) {
    const PlantFreq pf = plant_freq(ss, N);
    const int d = ss.d(), p = ss.p(), n = ss.n();

    NoncausalBlocks nb;
    nb.Kcirc      = GridSamples(N, d, p, "Kcirc");
    nb.DeltaInv   = GridSamples(N, d, d, "DeltaInv");
    nb.DKplus     = GridSamples(N, d, p, "DKplus");
    nb.DKminus    = GridSamples(N, d, p, "DKminus");
    nb.TKcircQuad = GridSamples(N, p, p, "TKcircQuad");

    const Eigen::MatrixXcd AKc   = blocks.A_K.cast<std::complex<double>>();
    const Eigen::MatrixXcd AKtc  = blocks.A_K.transpose().cast<std::complex<double>>();
    const Eigen::MatrixXcd Ac    = ss.A.cast<std::complex<double>>();
    const Eigen::MatrixXcd Buc   = ss.B_u.cast<std::complex<double>>();
    const Eigen::MatrixXcd Bwc   = ss.B_w.cast<std::complex<double>>();
    const Eigen::MatrixXcd Rbarc = blocks.Rbar.cast<std::complex<double>>();
    const Eigen::MatrixXcd Klqrc = blocks.K_lqr.cast<std::complex<double>>();
    const Eigen::MatrixXcd PBw   = (blocks.P * ss.B_w).cast<std::complex<double>>();
    const Eigen::MatrixXcd BuPA  = (ss.B_u.transpose() * blocks.P * ss.A).cast<std::complex<double>>();
    const Eigen::MatrixXcd AKPBw = (blocks.A_K.transpose() * blocks.P * ss.B_w).cast<std::complex<double>>();
    const Eigen::MatrixXcd Id    = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd In    = Eigen::MatrixXcd::Identity(n, n);

    for (int k = 0; k < N; ++k) {
        const std::complex<double> zk  = GridSamples::z(k, N);
        const std::complex<double> zki = std::conj(zk);  // 1/z on the unit circle
        const Eigen::MatrixXcd& F = pf.F[k];
        const Eigen::MatrixXcd& G = pf.G[k];

        // Noncausal optimum and its closed-loop quadratic form.
        const Eigen::MatrixXcd IFF = Id + F.adjoint() * F;
        const Eigen::LDLT<Eigen::MatrixXcd> ldlt(IFF);
        nb.Kcirc[k] = -ldlt.solve(F.adjoint() * G);

        const Eigen::MatrixXcd cl = F * nb.Kcirc[k] + G;
        nb.TKcircQuad[k] = cl.adjoint() * cl + nb.Kcirc[k].adjoint() * nb.Kcirc[k];

        // DeltaInv(z) = (I - K_lqr (zI - A_K)^{-1} B_u) Rbar
        const Eigen::MatrixXcd rK = (zk * In - AKc).partialPivLu().solve(Buc);
        nb.DeltaInv[k] = (Id - Klqrc * rK) * Rbarc;

        // {Delta Kcirc}_+(z) = -Rbar B_u' P A (zI - A)^{-1} B_w - Rbar B_u' P B_w
        const Eigen::MatrixXcd rA = (zk * In - Ac).partialPivLu().solve(Bwc);
        nb.DKplus[k] = -Rbarc * (BuPA * rA + Buc.adjoint() * PBw);

        // {Delta Kcirc}_-(z) = -Rbar B_u' (z^{-1} I - A_K')^{-1} A_K' P B_w
        const Eigen::MatrixXcd rKt = (zki * In - AKtc).partialPivLu().solve(AKPBw);
        nb.DKminus[k] = -Rbarc * Buc.adjoint() * rKt;
    }
    return nb;
}

GridSamples closed_loop_quadratic(const GridSamples& K, const GridSamples& F,
                                  const GridSamples& G) {
    if (!K.same_grid(F) || !K.same_grid(G)) {
        throw InputError("closed_loop_quadratic: grid size mismatch");
    }
    if (F.cols != K.rows || G.cols != K.cols || F.rows != G.rows) {
        throw InputError("closed_loop_quadratic: incompatible shapes");
    }
    GridSamples out(K.grid_size, K.cols, K.cols, "TquadK");
    for (int k = 0; k < K.grid_size; ++k) {
        const Eigen::MatrixXcd cl = F[k] * K[k] + G[k];
        out[k] = cl.adjoint() * cl + K[k].adjoint() * K[k];
    }
    return out;
}

GridSamples h2_controller(const LqrBlocks& blocks, const NoncausalBlocks& nb) {
    (void)blocks;
    GridSamples out(nb.DeltaInv.grid_size, nb.DKplus.rows, nb.DKplus.cols, "K_h2");
    for (int k = 0; k < out.grid_size; ++k) {
        out[k] = nb.DeltaInv[k] * nb.DKplus[k];
    }
    return out;
}

GridSamples ss_frequency_response(const Eigen::MatrixXd& F, const Eigen::MatrixXd& G,
                                  const Eigen::MatrixXd& H, const Eigen::MatrixXd& J, int N,
                                  const std::string& label) {
    if (!is_power_of_two(N)) {
        throw InputError("ss_frequency_response: grid size must be a power of two");
    }
    GridSamples out(N, static_cast<int>(H.rows()), static_cast<int>(G.cols()), label);
    const long m = F.rows();
    const Eigen::MatrixXcd Fc = F.cast<std::complex<double>>();
    const Eigen::MatrixXcd Gc = G.cast<std::complex<double>>();
    const Eigen::MatrixXcd Hc = H.cast<std::complex<double>>();
    const Eigen::MatrixXcd Jc = J.cast<std::complex<double>>();
    for (int k = 0; k < N; ++k) {
        if (m == 0) {
            out[k] = Jc;
            continue;
        }
        Eigen::MatrixXcd zIF = -Fc;
        zIF.diagonal().array() += GridSamples::z(k, N);
        out[k] = Hc * zIF.partialPivLu().solve(Gc) + Jc;
    }
    return out;
}

}  // namespace drlqr
