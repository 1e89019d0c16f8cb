#include "drlqr/grid.hpp"

#include <cmath>
#include <numbers>

#include "drlqr/errors.hpp"
#include "drlqr/fft.hpp"

namespace drlqr {

GridSamples::GridSamples(int N, int r, int c, std::string lbl)
    : grid_size(N), rows(r), cols(c), label(std::move(lbl)) {
    if (N <= 0 || r <= 0 || c <= 0) {
        throw InputError("GridSamples: nonpositive dimensions");
    }
    values.assign(static_cast<size_t>(N), Eigen::MatrixXcd::Zero(r, c));
}

double GridSamples::omega(int k, int N) {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
}

std::complex<double> GridSamples::z(int k, int N) {
    const double w = omega(k, N);
    return {std::cos(w), std::sin(w)};
}

double conjugate_symmetry_residual(const GridSamples& g) {
    double worst = 0.0;
    for (int k = 0; k < g.grid_size; ++k) {
        const int        kc   = (g.grid_size - k) % g.grid_size;
        const double     ref  = g[k].norm();
        const double     diff = (g[k] - g[kc].conjugate()).norm();
        worst = std::max(worst, ref > 0 ? diff / ref : diff);
    }
    return worst;
}

double anticausal_energy_ratio(const GridSamples& g) {
    const int N = g.grid_size;
    double    total = 0.0, anti = 0.0;
    std::vector<std::complex<double>> samples(static_cast<size_t>(N));
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            for (int k = 0; k < N; ++k) samples[static_cast<size_t>(k)] = g[k](r, c);
            const auto coeffs = idft(samples);
            for (int k = 0; k < N; ++k) {
                const double e = std::norm(coeffs[static_cast<size_t>(k)]);
                total += e;
                // Indices above N/2 alias to negative time.
                if (k > N / 2) anti += e;
            }
        }
    }
    return total > 0 ? anti / total : 0.0;
}

double grid_inf_norm(const GridSamples& g) {
    double worst = 0.0;
    for (const auto& v : g.values) worst = std::max(worst, v.norm());
    return worst;
}

double grid_peak_eigenvalue(const GridSamples& g) {
    if (!g.is_square()) throw InputError("grid_peak_eigenvalue: samples not square");
    double worst = 0.0;
    for (const auto& v : g.values) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(v);
        worst = std::max(worst, es.eigenvalues().maxCoeff());
    }
    return worst;
}

}  // namespace drlqr
