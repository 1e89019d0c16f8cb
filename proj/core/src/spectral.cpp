#include "drlqr/spectral.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "drlqr/errors.hpp"
#include "drlqr/fft.hpp"

namespace drlqr {

Spectrum Spectrum::validated(GridSamples g, double herm_tol, double psd_tol) {
    if (!g.is_square()) throw InputError("Spectrum: samples must be square");
    for (int k = 0; k < g.grid_size; ++k) {
        const double scale = std::max(g[k].norm(), 1e-300);
        if ((g[k] - g[k].adjoint()).norm() > herm_tol * scale) {
            throw InputError("Spectrum: sample " + std::to_string(k) + " is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g[k]);
        if (es.eigenvalues().minCoeff() < -psd_tol) {
            throw InputError("Spectrum: sample " + std::to_string(k) +
                             " is not positive semidefinite");
        }
    }
    return Spectrum{std::move(g)};
}

CausalFactor cepstral_factor(const Spectrum& spectrum, double floor) {
    if (spectrum.p() != 1) {
        throw InputError("cepstral_factor: only scalar (p = 1) spectra are supported");
    }
    if (floor <= 0.0) throw InputError("cepstral_factor: floor must be positive");
    const int N = spectrum.samples.grid_size;
    if (!is_power_of_two(N)) {
        throw InputError("cepstral_factor: grid size must be a power of two");
    }

    std::vector<std::complex<double>> logN(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) {
        const double v = spectrum.samples[k](0, 0).real();
        if (v <= floor) {
            std::ostringstream msg;
            msg << "cepstral_factor: sample " << k << " = " << v << " is at or below the floor "
                << floor;
            throw InfeasibleError(msg.str());
        }
        logN[static_cast<size_t>(k)] = std::log(v);
    }
    const auto cepstrum = idft(logN);

    // Causal half of the cepstrum, endpoint bins at half weight.
    CausalFactor out;
    out.samples = GridSamples(N, 1, 1, "L");
    std::vector<std::complex<double>> causal(static_cast<size_t>(N), 0.0);
    causal[0] = 0.5 * cepstrum[0];
    for (int k = 1; k < N / 2; ++k) causal[static_cast<size_t>(k)] = cepstrum[static_cast<size_t>(k)];
    causal[static_cast<size_t>(N / 2)] = 0.5 * cepstrum[static_cast<size_t>(N / 2)];

    // exponent(z_n) = sum_k causal_k z_n^{-k} is one forward DFT.
    const auto expo = dft(causal);
    for (int k = 0; k < N; ++k) {
        out.samples[k](0, 0) = std::exp(expo[static_cast<size_t>(k)]);
    }
    return out;
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& M, double herm_tol) {
    const double scale = std::max(M.norm(), 1e-300);
    if ((M - M.adjoint()).norm() > herm_tol * scale) {
        throw InputError("hermitian_sqrt: input is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) < -1e-10 * scale) {
            throw InputError("hermitian_sqrt: input has a negative eigenvalue");
        }
        lam(i) = std::max(lam(i), 0.0);
    }
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

std::complex<double> avg_trace_complex(const GridSamples& X) {
    if (!X.is_square()) throw InputError("avg_trace: samples must be square");
    std::complex<double> acc = 0.0;
    for (const auto& v : X.values) acc += v.trace();
    return acc / static_cast<double>(X.grid_size);
}

double avg_trace(const GridSamples& X) { return avg_trace_complex(X).real(); }

ImpulseResponse causal_impulse(const CausalFactor& L, int taps) {
    const int N = L.samples.grid_size;
    if (taps <= 0 || taps > N) throw InputError("causal_impulse: taps must be in [1, N]");
    const int p = L.samples.rows;

    ImpulseResponse out;
    out.coeffs.assign(static_cast<size_t>(taps), Eigen::MatrixXd::Zero(p, p));
    double total = 0.0, tail = 0.0;
    std::vector<std::complex<double>> samples(static_cast<size_t>(N));
    for (int r = 0; r < p; ++r) {
        for (int c = 0; c < p; ++c) {
            for (int k = 0; k < N; ++k) samples[static_cast<size_t>(k)] = L.samples[k](r, c);
            const auto coeffs = idft(samples);
            for (int k = 0; k < N; ++k) {
                const double e = std::norm(coeffs[static_cast<size_t>(k)]);
                total += e;
                if (k < taps) {
                    out.coeffs[static_cast<size_t>(k)](r, c) = coeffs[static_cast<size_t>(k)].real();
                } else {
                    tail += e;
                }
            }
        }
    }
    out.tail_energy = total > 0 ? tail / total : 0.0;
    return out;
}

std::vector<Eigen::VectorXd> stationary_gaussian(const CausalFactor& L, int horizon, int taps,
                                                 std::uint64_t seed) {
    if (horizon <= 0) throw InputError("stationary_gaussian: horizon must be positive");
    const ImpulseResponse ir = causal_impulse(L, taps);
    if (ir.tail_energy > 1e-6) {
        std::ostringstream msg;
        msg << "stationary_gaussian: truncation tail energy " << ir.tail_energy
            << " exceeds 1e-6; increase taps";
        throw InputError(msg.str());
    }
    const int p = L.samples.rows;

    std::mt19937_64                  rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Innovations start at index -(taps-1) so w_0 already sees a full window.
    const int total = horizon + taps - 1;
    std::vector<Eigen::VectorXd> xi(static_cast<size_t>(total));
    for (auto& v : xi) {
        v = Eigen::VectorXd::NullaryExpr(p, [&](Eigen::Index) { return gauss(rng); });
    }

    std::vector<Eigen::VectorXd> w(static_cast<size_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(p);
        for (int k = 0; k < taps; ++k) {
            acc += ir.coeffs[static_cast<size_t>(k)] * xi[static_cast<size_t>(t + taps - 1 - k)];
        }
        w[static_cast<size_t>(t)] = acc;
    }
    return w;
}

}  // namespace drlqr
