#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drlqr/rational.hpp"
#include "drlqr/spectral.hpp"
#include "drlqr/state_space.hpp"

namespace drlqr {

enum class DisturbanceKind { white, worst_case };

/// Rollout record: states, inputs and per-step cost x'x + u'u for a
/// weight-normalized plant, from x_0 = e_0 = 0.
struct Trajectory {
    std::vector<Eigen::VectorXd> x;
    std::vector<Eigen::VectorXd> u;
    std::vector<double>          cost;

    double total_cost() const;
};

/// Exact recursion rollout of plant + controller under a given disturbance
/// sequence. The controller sees the current disturbance (u_t may depend on
/// w_0..w_t). Throws ConvergenceError if the state norm passes 1e12.
Trajectory simulate(const StateSpace& ss, const ControllerSS& ctrl,
                    const std::vector<Eigen::VectorXd>& w);

/// Monte Carlo aggregate: per-step cumulative average cost, mean and
/// standard deviation across trials. Per-trial seeds derive from the master
/// seed, so runs are reproducible and trials independent.
struct SimRun {
    int                 horizon = 0;
    int                 trials  = 0;
    std::uint64_t       seed    = 0;
    DisturbanceKind     kind    = DisturbanceKind::white;
    std::vector<double> mean_cum_avg_cost;
    std::vector<double> std_cum_avg_cost;
};

SimRun monte_carlo(const StateSpace& ss, const ControllerSS& ctrl, DisturbanceKind kind,
                   int horizon, int trials, std::uint64_t seed,
                   const CausalFactor* worst_factor = nullptr, int taps = 256);

/// Stationary Gaussian disturbance with the worst-case spectrum L L*.
std::vector<Eigen::VectorXd> worst_case_disturbance(const CausalFactor& L, int horizon, int taps,
                                                    std::uint64_t seed);

}  // namespace drlqr
