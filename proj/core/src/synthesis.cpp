#include "drlqr/synthesis.hpp"

#include <cmath>
#include <sstream>

#include "drlqr/errors.hpp"
#include "drlqr/fft.hpp"

namespace drlqr {

void SynthesisConfig::validate() const {
    if (r <= 0.0) throw InputError("SynthesisConfig: radius r must be positive");
    if (!is_power_of_two(N)) throw InputError("SynthesisConfig: N must be a power of two");
    if (fp_tol <= 0.0 || fp_tol >= 1.0) throw InputError("SynthesisConfig: fp_tol out of (0,1)");
    if (gamma_tol <= 0.0 || gamma_tol >= 1.0) {
        throw InputError("SynthesisConfig: gamma_tol out of (0,1)");
    }
    if (fp_max_iters <= 0) throw InputError("SynthesisConfig: fp_max_iters must be positive");
    if (gamma_cap <= 1.0) throw InputError("SynthesisConfig: gamma_cap must exceed 1");
}

Eigen::MatrixXd f1_bbar(const CausalFactor& L, const LqrBlocks& blocks) {
    const int N = L.samples.grid_size;
    const int n = static_cast<int>(blocks.Abar.rows());
    const int p = static_cast<int>(blocks.Dbar.cols());
    if (L.samples.rows != p) throw InputError("f1_bbar: factor dimension mismatch");

    const Eigen::MatrixXcd Abar = blocks.Abar.cast<std::complex<double>>();
    const Eigen::MatrixXcd Dbar = blocks.Dbar.cast<std::complex<double>>();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, p);
    for (int k = 0; k < N; ++k) {
        Eigen::MatrixXcd IzA = -GridSamples::z(k, N) * Abar;
        IzA.diagonal().array() += 1.0;
        acc += IzA.partialPivLu().solve(Dbar * L.samples[k]);
    }
    return (acc / static_cast<double>(N)).real();
}

namespace {

// Per-sample resolvent tables reused across fixed-point iterations.
struct SynthTables {
    std::vector<Eigen::MatrixXcd> W1;  // (I - z_k Abar)^{-1} Dbar, n x p
    std::vector<Eigen::MatrixXcd> W2;  // Cbar (z_k^{-1} I - Abar)^{-1}, d x n
};

SynthTables make_tables(const LqrBlocks& blocks, int N) {
    const int n = static_cast<int>(blocks.Abar.rows());
    SynthTables t;
    t.W1.reserve(static_cast<size_t>(N));
    t.W2.reserve(static_cast<size_t>(N));
    const Eigen::MatrixXcd Abar = blocks.Abar.cast<std::complex<double>>();
    const Eigen::MatrixXcd Dbar = blocks.Dbar.cast<std::complex<double>>();
    const Eigen::MatrixXcd Cbar = blocks.Cbar.cast<std::complex<double>>();
    for (int k = 0; k < N; ++k) {
        const std::complex<double> zk = GridSamples::z(k, N);
        Eigen::MatrixXcd IzA = -zk * Abar;
        IzA.diagonal().array() += 1.0;
        t.W1.push_back(IzA.partialPivLu().solve(Dbar));

        Eigen::MatrixXcd ziA = -Abar;
        ziA.diagonal().array() += std::conj(zk);
        t.W2.push_back(Cbar * ziA.partialPivLu().inverse());
    }
    return t;
}

Eigen::MatrixXd f1_from_tables(const GridSamples& L, const SynthTables& t) {
    const int n = static_cast<int>(t.W1.front().rows());
    const int p = L.cols;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, p);
    for (int k = 0; k < L.grid_size; ++k) acc += t.W1[static_cast<size_t>(k)] * L[k];
    return (acc / static_cast<double>(L.grid_size)).real();
}

GridSamples f2_from_tables(const Eigen::MatrixXd& Bbar, const GridSamples& L, double gamma,
                           const NoncausalBlocks& nb, const SynthTables& t) {
    const int N = L.grid_size;
    const int p = L.cols;
    GridSamples out(N, p, p, "N");
    const Eigen::MatrixXcd Bbarc = Bbar.cast<std::complex<double>>();
    const Eigen::MatrixXcd Ip    = Eigen::MatrixXcd::Identity(p, p);
    for (int k = 0; k < N; ++k) {
        const Eigen::MatrixXcd S    = t.W2[static_cast<size_t>(k)] * Bbarc;
        const Eigen::MatrixXcd UqU  = L[k].adjoint() * nb.TKcircQuad[k] * L[k];
        const Eigen::MatrixXcd core = Ip + (4.0 / gamma) * (S.adjoint() * S + UqU);
        const Eigen::MatrixXcd root = hermitian_sqrt(core);
        const Eigen::MatrixXcd half = 0.5 * (Ip + root);
        out[k] = half * half;
    }
    return out;
}

// Scalar Bures-Wasserstein grid distance between spectra.
double bw_distance(const GridSamples& Na, const GridSamples& Nb) {
    double acc = 0.0;
    for (int k = 0; k < Na.grid_size; ++k) {
        const Eigen::MatrixXcd sb   = hermitian_sqrt(Nb[k]);
        const Eigen::MatrixXcd mid  = hermitian_sqrt(sb * Na[k] * sb);
        acc += (Na[k].trace() + Nb[k].trace() - 2.0 * mid.trace()).real();
    }
    return std::sqrt(std::max(acc / static_cast<double>(Na.grid_size), 0.0));
}

double sup_relative_change(const GridSamples& Nnew, const GridSamples& Nold) {
    double worst = 0.0;
    for (int k = 0; k < Nnew.grid_size; ++k) {
        const double ref = std::max(Nnew[k].norm(), 1e-300);
        worst = std::max(worst, (Nnew[k] - Nold[k]).norm() / ref);
    }
    return worst;
}

}  // namespace

Spectrum f2_spectrum(const Eigen::MatrixXd& Bbar, const CausalFactor& L, double gamma,
                     const LqrBlocks& blocks, const NoncausalBlocks& nb) {
    if (gamma <= 0.0) throw InputError("f2_spectrum: gamma must be positive");
    const SynthTables t = make_tables(blocks, L.samples.grid_size);
    return Spectrum{f2_from_tables(Bbar, L.samples, gamma, nb, t)};
}

FixedPointResult fixed_point(double gamma, const LqrBlocks& blocks, const NoncausalBlocks& nb,
                             const SynthesisConfig& config, std::optional<double> init_value) {
    config.validate();
    const int N = config.N;
    const int p = nb.TKcircQuad.rows;
    if (p != 1) {
        throw InputError("fixed_point: spectral factorization requires a scalar disturbance (p=1)");
    }

    const SynthTables tables = make_tables(blocks, N);

    CausalFactor L;
    L.samples = GridSamples(N, p, p, "L");
    const double init = init_value.value_or(1.0);
    for (int k = 0; k < N; ++k) L.samples[k](0, 0) = init;

    FixedPointResult res;
    GridSamples Nprev;
    for (int it = 0; it < config.fp_max_iters; ++it) {
        const Eigen::MatrixXd Bbar = f1_from_tables(L.samples, tables);
        GridSamples Ncur = f2_from_tables(Bbar, L.samples, gamma, nb, tables);

        if (it > 0) {
            const double rel = sup_relative_change(Ncur, Nprev);
            res.diagnostics.residuals.push_back(rel);
            res.diagnostics.bw_distances.push_back(bw_distance(Nprev, Ncur));
            if (rel <= config.fp_tol) {
                res.Nspec = Spectrum{std::move(Ncur)};
                res.L     = cepstral_factor(res.Nspec);
                res.diagnostics.iterations = it + 1;
                res.diagnostics.converged  = true;
                return res;
            }
        }
        Nprev = Ncur;
        L     = cepstral_factor(Spectrum{std::move(Ncur)});
        res.diagnostics.iterations = it + 1;
    }

    std::ostringstream msg;
    msg << "fixed_point: no convergence within " << config.fp_max_iters
        << " iterations at gamma = " << gamma
        << " (last residual = " << (res.diagnostics.residuals.empty()
                                        ? 0.0
                                        : res.diagnostics.residuals.back())
        << ")";
    throw ConvergenceError(msg.str());
}

GridSamples controller_from_L(const CausalFactor& L, const LqrBlocks& blocks,
                              const NoncausalBlocks& nb) {
    const int N = L.samples.grid_size;
    if (N != nb.Kcirc.grid_size) throw InputError("controller_from_L: grid mismatch");
    const SynthTables     tables = make_tables(blocks, N);
    const Eigen::MatrixXd Bbar   = f1_from_tables(L.samples, tables);
    const Eigen::MatrixXcd Bbarc = Bbar.cast<std::complex<double>>();

    GridSamples out(N, nb.Kcirc.rows, nb.Kcirc.cols, "K");
    for (int k = 0; k < N; ++k) {
        const Eigen::MatrixXcd& Lk = L.samples[k];
        if (std::abs(Lk.determinant()) < 1e-12) {
            throw InputError("controller_from_L: factor sample " + std::to_string(k) +
                             " is singular");
        }
        const Eigen::MatrixXcd S = tables.W2[static_cast<size_t>(k)] * Bbarc;
        out[k] = nb.Kcirc[k] - nb.DeltaInv[k] * S * Lk.inverse();
    }
    return out;
}

double gamma_residual(const GridSamples& TquadK, double gamma, double r) {
    if (!TquadK.is_square()) throw InputError("gamma_residual: samples must be square");
    const double peak = grid_peak_eigenvalue(TquadK);
    if (gamma <= peak) {
        std::ostringstream msg;
        msg << "gamma_residual: gamma = " << gamma
            << " is at or below the closed-loop spectral peak " << peak;
        throw InputError(msg.str());
    }
    const int p = TquadK.rows;
    const Eigen::MatrixXcd Ip = Eigen::MatrixXcd::Identity(p, p);
    GridSamples dev(TquadK.grid_size, p, p, "dev");
    for (int k = 0; k < TquadK.grid_size; ++k) {
        const Eigen::MatrixXcd Mhalf = (Ip - TquadK[k] / gamma).partialPivLu().solve(Ip);
        const Eigen::MatrixXcd diff  = Mhalf - Ip;
        dev[k] = diff * diff;
    }
    return avg_trace(dev) - r * r;
}

WorstCaseCost worst_case_cost(const GridSamples& TquadK, double r, double gamma_tol) {
    WorstCaseCost out;
    const int p = TquadK.rows;
    const Eigen::MatrixXcd Ip = Eigen::MatrixXcd::Identity(p, p);

    if (r == 0.0) {
        out.cost       = avg_trace(TquadK);
        out.gamma_star = std::numeric_limits<double>::infinity();
        GridSamples mh(TquadK.grid_size, p, p, "Mhalf");
        for (auto& v : mh.values) v = Ip;
        out.Mhalf = Spectrum{std::move(mh)};
        return out;
    }

    const double peak = grid_peak_eigenvalue(TquadK);
    double lo = peak * (1.0 + 1e-12) + 1e-300;
    double hi = std::max(2.0 * peak, 1e-6);
    {
        int doublings = 0;
        while (gamma_residual(TquadK, hi, r) > 0.0) {
            hi *= 2.0;
            if (++doublings > 200) {
                throw ConvergenceError("worst_case_cost: residual bracket failure");
            }
        }
    }
    double gamma = hi;
    for (int it = 0; it < 400; ++it) {
        gamma = 0.5 * (lo + hi);
        if (gamma <= lo || gamma >= hi) break;
        const double res = gamma_residual(TquadK, gamma, r);
        if (std::abs(res) <= gamma_tol * r * r) break;
        if (res > 0.0) {
            lo = gamma;
        } else {
            hi = gamma;
        }
    }
    out.gamma_star = gamma;

    GridSamples mh(TquadK.grid_size, p, p, "Mhalf");
    GridSamples integrand(TquadK.grid_size, p, p, "cost");
    for (int k = 0; k < TquadK.grid_size; ++k) {
        const Eigen::MatrixXcd Mhalf = (Ip - TquadK[k] / gamma).partialPivLu().solve(Ip);
        const Eigen::MatrixXcd M     = Mhalf * Mhalf;
        mh[k]        = Mhalf;
        integrand[k] = gamma * (2.0 * Mhalf - M - Ip) + TquadK[k] * M;
    }
    out.cost  = gamma * r * r + avg_trace(integrand);
    out.Mhalf = Spectrum{std::move(mh)};
    return out;
}

SynthesisResult synthesize(const StateSpace& ss, const SynthesisConfig& config) {
    config.validate();
    if (ss.p() != 1) {
        throw InputError("synthesize: scalar disturbances only (p = 1); spectral factorization "
                         "of matrix-valued spectra is not provided");
    }
    const StateSpace sys = ss.is_normalized() ? ss : normalize_weights(ss);

    const LqrBlocks       blocks = lqr_blocks(sys);
    const NoncausalBlocks nb     = noncausal_blocks(blocks, sys, config.N);
    const PlantFreq       pf     = plant_freq(sys, config.N);
    const HinfResult      hinf   = hinf_gamma_lower_bound(sys, config.gamma_tol, config.N);

    const double r = config.r;

    struct Eval {
        double           residual;
        FixedPointResult fp;
        GridSamples      K;
        GridSamples      Tquad;
    };
    auto evaluate = [&](double gamma) {
        Eval e{0.0, fixed_point(gamma, blocks, nb, config), {}, {}};
        e.K        = controller_from_L(e.fp.L, blocks, nb);
        e.Tquad    = closed_loop_quadratic(e.K, pf.F, pf.G);
        e.residual = gamma_residual(e.Tquad, gamma, r);
        return e;
    };

    // The residual is monotone decreasing in gamma: positive near gamma_hinf,
    // -r^2 in the nominal limit. Double to bracket, then bisect.
    const double lo_floor = hinf.gamma_hinf * (1.0 + 10.0 * config.gamma_tol);
    double lo = lo_floor;
    double hi = 2.0 * hinf.gamma_hinf;
    Eval   best;
    bool   have_best = false;
    double gamma     = hi;
    {
        int doublings = 0;
        for (;;) {
            Eval e = evaluate(hi);
            if (e.residual < 0.0) {
                best      = std::move(e);
                have_best = true;
                gamma     = hi;
                break;
            }
            lo = hi;
            hi *= 2.0;
            ++doublings;
            if (hi > config.gamma_cap * hinf.gamma_hinf) {
                std::ostringstream msg;
                msg << "synthesize: radius equation residual still positive at the bracket cap "
                    << config.gamma_cap << " * gamma_hinf; enlarge gamma_cap";
                throw ConvergenceError(msg.str());
            }
        }
    }
    for (int it = 0; it < 400; ++it) {
        if (std::abs(best.residual) <= config.gamma_tol * r * r && best.residual <= 0.0) break;
        const double mid = 0.5 * (std::max(lo, lo_floor) + hi);
        if (mid <= std::max(lo, lo_floor) || mid >= hi) break;
        Eval e = evaluate(mid);
        if (std::abs(e.residual) <= config.gamma_tol * r * r) {
            best      = std::move(e);
            have_best = true;
            gamma     = mid;
            break;
        }
        if (e.residual > 0.0) {
            lo = mid;
        } else {
            hi        = mid;
            best      = std::move(e);
            have_best = true;
            gamma     = mid;
        }
    }
    if (!have_best) {
        throw ConvergenceError("synthesize: gamma bisection failed to locate the radius root");
    }

    SynthesisResult out;
    out.gamma_star  = gamma;
    out.K           = std::move(best.K);
    out.Nspec       = std::move(best.fp.Nspec);
    out.L           = std::move(best.fp.L);
    out.gamma_hinf  = hinf.gamma_hinf;
    out.residual    = best.residual;
    out.diagnostics = std::move(best.fp.diagnostics);
    out.cost        = worst_case_cost(best.Tquad, r, config.gamma_tol).cost;
    return out;
}

std::vector<double> convergence_ratio(const FixedPointDiagnostics& diagnostics) {
    const auto& d = diagnostics.bw_distances;
    if (d.size() < 2) {
        throw InputError("convergence_ratio: needs at least 3 recorded iterations");
    }
    std::vector<double> ratios;
    ratios.reserve(d.size() - 1);
    for (size_t i = 0; i + 1 < d.size(); ++i) {
        ratios.push_back(d[i] < 1e-14 ? 0.0 : d[i + 1] / d[i]);
    }
    return ratios;
}

}  // namespace drlqr
