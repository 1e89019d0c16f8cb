#include "drlqr/simulate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "drlqr/errors.hpp"

namespace drlqr {

namespace {

// SplitMix64 step; decorrelates per-trial seeds derived from the master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<Eigen::VectorXd> white_noise(int p, int horizon, std::uint64_t seed) {
    std::mt19937_64                  rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd>     w(static_cast<size_t>(horizon));
    for (auto& v : w) {
        v = Eigen::VectorXd::NullaryExpr(p, [&](Eigen::Index) { return gauss(rng); });
    }
    return w;
}

}  // namespace

double Trajectory::total_cost() const {
    double acc = 0.0;
    for (double c : cost) acc += c;
    return acc;
}

Trajectory simulate(const StateSpace& ss, const ControllerSS& ctrl,
                    const std::vector<Eigen::VectorXd>& w) {
    const int n = ss.n();
    if (ctrl.Htil.rows() != ss.d() || ctrl.Gtil.cols() != ss.p()) {
        throw InputError("simulate: controller dimensions do not match the plant");
    }

    Trajectory traj;
    traj.x.reserve(w.size());
    traj.u.reserve(w.size());
    traj.cost.reserve(w.size());

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ctrl.state_dim());
    for (size_t t = 0; t < w.size(); ++t) {
        const Eigen::VectorXd& wt = w[t];
        const Eigen::VectorXd  u  = ctrl.Htil * e + ctrl.Jtil * wt;
        traj.cost.push_back(x.dot(ss.Q * x) + u.dot(ss.R * u));
        traj.x.push_back(x);
        traj.u.push_back(u);

        e = ctrl.Ftil * e + ctrl.Gtil * wt;
        x = ss.A * x + ss.B_u * u + ss.B_w * wt;
        if (x.norm() > 1e12) {
            std::ostringstream msg;
            msg << "simulate: state norm exceeded 1e12 at step " << t << " (unstable loop)";
            throw ConvergenceError(msg.str());
        }
    }
    return traj;
}

std::vector<Eigen::VectorXd> worst_case_disturbance(const CausalFactor& L, int horizon, int taps,
                                                    std::uint64_t seed) {
    return stationary_gaussian(L, horizon, taps, seed);
}

SimRun monte_carlo(const StateSpace& ss, const ControllerSS& ctrl, DisturbanceKind kind,
                   int horizon, int trials, std::uint64_t seed, const CausalFactor* worst_factor,
                   int taps) {
    if (horizon <= 0 || trials <= 0) {
        throw InputError("monte_carlo: horizon and trials must be positive");
    }
    if (kind == DisturbanceKind::worst_case && worst_factor == nullptr) {
        throw InputError("monte_carlo: worst-case disturbance requires a spectral factor");
    }

    SimRun run;
    run.horizon = horizon;
    run.trials  = trials;
    run.seed    = seed;
    run.kind    = kind;
    run.mean_cum_avg_cost.assign(static_cast<size_t>(horizon), 0.0);
    run.std_cum_avg_cost.assign(static_cast<size_t>(horizon), 0.0);

    // Welford accumulation over trials, per time step.
    std::vector<double> m2(static_cast<size_t>(horizon), 0.0);
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(trial));
        std::vector<Eigen::VectorXd> w;
        if (kind == DisturbanceKind::white) {
            w = white_noise(ss.p(), horizon, s);
        } else {
            try {
                w = worst_case_disturbance(*worst_factor, horizon, taps, s);
            } catch (const Error& e) {
                throw InputError(std::string("monte_carlo: disturbance generation failed: ") +
                                 e.what());
            }
        }
        Trajectory traj;
        try {
            traj = simulate(ss, ctrl, w);
        } catch (const ConvergenceError& e) {
            std::ostringstream msg;
            msg << "monte_carlo: trial " << trial << " diverged: " << e.what();
            throw ConvergenceError(msg.str());
        }

        double acc = 0.0;
        for (int t = 0; t < horizon; ++t) {
            acc += traj.cost[static_cast<size_t>(t)];
            const double cum   = acc / (t + 1);
            const double delta = cum - run.mean_cum_avg_cost[static_cast<size_t>(t)];
            run.mean_cum_avg_cost[static_cast<size_t>(t)] += delta / (trial + 1);
            m2[static_cast<size_t>(t)] +=
                delta * (cum - run.mean_cum_avg_cost[static_cast<size_t>(t)]);
        }
    }
    for (int t = 0; t < horizon; ++t) {
        run.std_cum_avg_cost[static_cast<size_t>(t)] =
            trials > 1 ? std::sqrt(m2[static_cast<size_t>(t)] / (trials - 1)) : 0.0;
    }
    return run;
}

}  // namespace drlqr
