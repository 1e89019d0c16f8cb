#include "drlqr/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "drlqr/errors.hpp"
#include "drlqr/frequency.hpp"
#include "drlqr/lp.hpp"

namespace drlqr {

double SymTrigPoly::value(double omega) const {
    double v = coeffs(0);
    for (int k = 1; k <= order; ++k) v += 2.0 * coeffs(k) * std::cos(k * omega);
    return v;
}

double SymTrigPoly::min_on_dense_grid(int N) const {
    const int    M    = 8 * N;
    double       best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < M; ++i) {
        best = std::min(best, value(2.0 * std::numbers::pi * i / M));
    }
    return best;
}

namespace {

std::vector<double> spectrum_values(const Spectrum& Nsamples) {
    if (Nsamples.p() != 1) {
        throw InputError("rational approximation requires a scalar spectrum (p = 1)");
    }
    std::vector<double> v(static_cast<size_t>(Nsamples.samples.grid_size));
    for (int k = 0; k < Nsamples.samples.grid_size; ++k) {
        v[static_cast<size_t>(k)] = Nsamples.samples[k](0, 0).real();
    }
    return v;
}

}  // namespace

std::optional<std::pair<SymTrigPoly, SymTrigPoly>> chebyshev_feasible(const Spectrum& Nsamples,
                                                                      int m, double eps) {
    if (m < 0) throw InputError("chebyshev_feasible: order must be nonnegative");
    if (eps <= 0.0) throw InputError("chebyshev_feasible: eps must be positive");
    const auto Nv = spectrum_values(Nsamples);
    const int  N  = static_cast<int>(Nv.size());

    // Variables x = (p_0..p_m, q_1..q_m, s); q_0 is eliminated through the
    // normalization Q(1) = 1. Constraints are taken at the unique cosine
    // frequencies k = 0..N/2.
    const int nv   = 2 * m + 2;
    const int nfreq = N / 2 + 1;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4 * nfreq, nv);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(4 * nfreq);

    for (int i = 0; i < nfreq; ++i) {
        const double w  = GridSamples::omega(i, N);
        const double Ni = Nv[static_cast<size_t>(i)];
        Eigen::VectorXd pb = Eigen::VectorXd::Zero(m + 1);  // P basis
        Eigen::VectorXd qb = Eigen::VectorXd::Zero(m);      // Q basis after elimination
        pb(0) = 1.0;
        for (int k = 1; k <= m; ++k) {
            pb(k) = 2.0 * std::cos(k * w);
            qb(k - 1) = 2.0 * (std::cos(k * w) - 1.0);
        }
        const long r = 4L * i;
        // P - (N + eps) Q <= s
        G.row(r).segment(0, m + 1)     = pb;
        G.row(r).segment(m + 1, m)     = -(Ni + eps) * qb;
        G(r, nv - 1)                   = -1.0;
        h(r)                           = Ni + eps;
        // -P + (N - eps) Q <= s
        G.row(r + 1).segment(0, m + 1) = -pb;
        G.row(r + 1).segment(m + 1, m) = (Ni - eps) * qb;
        G(r + 1, nv - 1)               = -1.0;
        h(r + 1)                       = -(Ni - eps);
        // -P <= s
        G.row(r + 2).segment(0, m + 1) = -pb;
        G(r + 2, nv - 1)               = -1.0;
        h(r + 2)                       = 0.0;
        // -Q <= s
        G.row(r + 3).segment(m + 1, m) = -qb;
        G(r + 3, nv - 1)               = -1.0;
        h(r + 3)                       = 1.0;
    }

    Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
    c(nv - 1) = 1.0;

    const LpResult lp = lp_solve_min(c, G, h);
    if (!lp.optimal) {
        throw InfeasibleError("chebyshev_feasible: LP solver failed (" + lp.status + ")");
    }
    const double scale = std::max(1.0, *std::max_element(Nv.begin(), Nv.end()));
    if (lp.objective > 1e-11 * scale) {
        return std::nullopt;
    }

    SymTrigPoly P, Q;
    P.order  = m;
    Q.order  = m;
    P.coeffs = lp.x.segment(0, m + 1);
    Q.coeffs = Eigen::VectorXd(m + 1);
    Q.coeffs.tail(m) = lp.x.segment(m + 1, m);
    Q.coeffs(0) = 1.0 - 2.0 * lp.x.segment(m + 1, m).sum();
    return std::make_pair(P, Q);
}

RationalFit fit_rational(const Spectrum& Nsamples, int m, double eps_tol) {
    const auto Nv = spectrum_values(Nsamples);
    const double nmax = *std::max_element(Nv.begin(), Nv.end());
    const double nmin = *std::min_element(Nv.begin(), Nv.end());
    if (nmin <= 0.0) throw InputError("fit_rational: spectrum must be strictly positive");
    if (eps_tol <= 0.0 || eps_tol >= 1.0) throw InputError("fit_rational: eps_tol out of (0,1)");

    const double mean = std::accumulate(Nv.begin(), Nv.end(), 0.0) / Nv.size();
    double dev = 0.0;
    for (double v : Nv) dev = std::max(dev, std::abs(v - mean));

    double hi = std::max(dev * 1.000001, 1e-12 * nmax) + 1e-13 * nmax;
    auto   fit = chebyshev_feasible(Nsamples, m, hi);
    for (int grow = 0; !fit.has_value() && grow < 8; ++grow) {
        hi *= 2.0;
        fit = chebyshev_feasible(Nsamples, m, hi);
    }
    if (!fit.has_value()) {
        throw InfeasibleError("fit_rational: no feasible level found (bracket error)");
    }

    double lo = 0.0;
    while (hi - lo > eps_tol * hi + 1e-12 * nmax) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        auto trial = chebyshev_feasible(Nsamples, m, mid);
        if (trial.has_value()) {
            hi  = mid;
            fit = std::move(trial);
        } else {
            lo = mid;
        }
    }
    return RationalFit{fit->first, fit->second, hi};
}

std::vector<double> poly_canonical_factor(const SymTrigPoly& Rpoly) {
    const double cmax = Rpoly.coeffs.cwiseAbs().maxCoeff();
    if (cmax == 0.0) throw InputError("poly_canonical_factor: zero polynomial");
    if (Rpoly.min_on_dense_grid(1024) <= 1e-9 * cmax) {
        throw InfeasibleError("poly_canonical_factor: polynomial is not strictly positive");
    }

    // Drop numerically void leading coefficients.
    int m = Rpoly.order;
    while (m > 0 && std::abs(Rpoly.coeffs(m)) < 1e-12 * cmax) --m;
    if (m == 0) {
        return {std::sqrt(Rpoly.coeffs(0))};
    }

    // Roots of z^m R(z), a palindromic degree-2m polynomial.
    Eigen::VectorXd poly(2 * m + 1);  // poly(j) multiplies z^j
    for (int j = 0; j <= 2 * m; ++j) {
        poly(j) = Rpoly.coeffs(std::abs(m - j));
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    companion.bottomLeftCorner(2 * m - 1, 2 * m - 1).setIdentity();
    for (int j = 0; j < 2 * m; ++j) {
        companion(j, 2 * m - 1) = -poly(j) / poly(2 * m);
    }
    const Eigen::VectorXcd roots = companion.eigenvalues();

    std::vector<std::complex<double>> inside;
    for (int i = 0; i < roots.size(); ++i) {
        const double mag = std::abs(roots(i));
        if (std::abs(mag - 1.0) < 1e-10) {
            throw InfeasibleError(
                "poly_canonical_factor: root within 1e-10 of the unit circle (marginal spectrum)");
        }
        if (mag < 1.0) inside.push_back(roots(i));
    }
    if (static_cast<int>(inside.size()) != m) {
        std::ostringstream msg;
        msg << "poly_canonical_factor: expected " << m << " roots inside the unit circle, found "
            << inside.size();
        throw InfeasibleError(msg.str());
    }

    // l(z^{-1}) = prod (1 - rho_i z^{-1}); complex parts cancel in pairs.
    std::vector<std::complex<double>> l(static_cast<size_t>(m) + 1, 0.0);
    l[0] = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k >= 1; --k) {
            l[static_cast<size_t>(k)] -= inside[static_cast<size_t>(i)] * l[static_cast<size_t>(k - 1)];
        }
    }
    std::vector<double> out(static_cast<size_t>(m) + 1);
    std::complex<double> at_one = 0.0;
    for (int k = 0; k <= m; ++k) at_one += l[static_cast<size_t>(k)];
    const double alpha = std::sqrt(Rpoly.value(0.0)) / std::abs(at_one);
    for (int k = 0; k <= m; ++k) out[static_cast<size_t>(k)] = alpha * l[static_cast<size_t>(k)].real();
    return out;
}

GridSamples RealizedFactor::response(int N) const {
    GridSamples out = ss_frequency_response(Atil, Btil, Ctil,
                                            Eigen::MatrixXd::Identity(1, 1), N, "L");
    const double scale = std::sqrt(Dtil);
    for (auto& v : out.values) v *= scale;
    return out;
}

RealizedFactor realize_L(const std::vector<double>& numer, const std::vector<double>& denom) {
    if (numer.empty() || denom.empty()) throw InputError("realize_L: empty coefficients");
    if (numer[0] == 0.0) {
        throw InputError("realize_L: strictly delayed factor (numer[0] = 0) cannot be realized");
    }
    if (denom[0] == 0.0) throw InputError("realize_L: denominator leading coefficient is zero");
    const double a0 = numer[0], b0 = denom[0];
    if (a0 / b0 <= 0.0) {
        throw InputError("realize_L: factor normalization requires numer[0]/denom[0] > 0");
    }

    const int m = static_cast<int>(std::max(numer.size(), denom.size())) - 1;
    auto coef = [](const std::vector<double>& v, int k) {
        return k < static_cast<int>(v.size()) ? v[static_cast<size_t>(k)] : 0.0;
    };

    RealizedFactor out;
    out.Atil = Eigen::MatrixXd::Zero(m, m);
    out.Btil = Eigen::VectorXd::Zero(m);
    out.Ctil = Eigen::RowVectorXd::Zero(m);
    out.Dtil = (a0 / b0) * (a0 / b0);
    if (m == 0) return out;

    // Controllable canonical form of L / L(inf) - 1.
    for (int k = 1; k <= m; ++k) {
        out.Atil(0, k - 1) = -coef(denom, k) / b0;
        out.Ctil(k - 1)    = (b0 * coef(numer, k) - a0 * coef(denom, k)) / (a0 * b0);
    }
    out.Atil.bottomLeftCorner(m - 1, m - 1).setIdentity();
    out.Btil(0) = 1.0;

    const double rA = spectral_radius(out.Atil);
    if (rA >= 1.0) {
        std::ostringstream msg;
        msg << "realize_L: denominator is not minimum phase (rho = " << rA << ")";
        throw InputError(msg.str());
    }
    const double rAk = spectral_radius(out.Atil - out.Btil * out.Ctil);
    if (rAk >= 1.0) {
        std::ostringstream msg;
        msg << "realize_L: factor is not minimum phase (inverse rho = " << rAk << ")";
        throw InputError(msg.str());
    }
    return out;
}

GridSamples ControllerSS::response(int N) const {
    return ss_frequency_response(Ftil, Gtil, Htil, Jtil, N, "K_ss");
}

ControllerSS realize_controller(const LqrBlocks& blocks, const StateSpace& ss,
                                const RealizedFactor& Lr) {
    if (!ss.is_normalized()) {
        throw InputError("realize_controller: system must be weight-normalized (Q = R = I)");
    }
    const int n = ss.n(), d = ss.d(), p = ss.p(), m = Lr.order();

    const Eigen::MatrixXd Atk = Lr.Atil - Lr.Btil * Lr.Ctil;
    if (m > 0 && spectral_radius(Atk) >= 1.0) {
        throw InputError("realize_controller: factor inverse is unstable");
    }

    const Eigen::MatrixXd PBw  = blocks.P * ss.B_w;
    const Eigen::MatrixXd Crhs = blocks.A_K.transpose() * PBw * Lr.Ctil;
    const Eigen::MatrixXd Util = m > 0 ? solve_sylvester(blocks.A_K.transpose(), Lr.Atil, Crhs)
                                       : Eigen::MatrixXd::Zero(n, 0);

    const Eigen::MatrixXd Rb2    = blocks.Rbar * blocks.Rbar;
    const Eigen::MatrixXd RbBu   = Rb2 * ss.B_u.transpose();         // d x n
    const Eigen::MatrixXd PBwUB  = PBw + Util * Lr.Btil;             // n x p

    ControllerSS ctrl;
    ctrl.m    = m;
    ctrl.Ftil = Eigen::MatrixXd::Zero(m + n, m + n);
    ctrl.Ftil.topLeftCorner(m, m)     = Atk;
    ctrl.Ftil.bottomLeftCorner(n, m)  = ss.B_u * RbBu * Util;
    ctrl.Ftil.bottomRightCorner(n, n) = blocks.A_K;

    ctrl.Gtil = Eigen::MatrixXd::Zero(m + n, p);
    ctrl.Gtil.topRows(m)    = Atk * Lr.Btil;
    ctrl.Gtil.bottomRows(n) = -ss.B_w + ss.B_u * RbBu * PBwUB;

    ctrl.Htil = Eigen::MatrixXd::Zero(d, m + n);
    ctrl.Htil.leftCols(m)  = -RbBu * Util;
    ctrl.Htil.rightCols(n) = blocks.K_lqr;

    ctrl.Jtil = -RbBu * PBwUB;

    const double rF = spectral_radius(ctrl.Ftil);
    if (rF >= 1.0) {
        std::ostringstream msg;
        msg << "realize_controller: assembled controller is unstable, rho(Ftil) = " << rF;
        throw ConvergenceError(msg.str());
    }
    return ctrl;
}

double freq_response_error(const ControllerSS& ctrl, const GridSamples& Ktarget) {
    const GridSamples resp = ctrl.response(Ktarget.grid_size);
    if (resp.rows != Ktarget.rows || resp.cols != Ktarget.cols) {
        throw InputError("freq_response_error: shape mismatch");
    }
    double worst = 0.0;
    for (int k = 0; k < Ktarget.grid_size; ++k) {
        worst = std::max(worst, (resp[k] - Ktarget[k]).norm());
    }
    return worst;
}

}  // namespace drlqr
