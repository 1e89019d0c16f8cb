#pragma once

#include <Eigen/Dense>
#include <string>

namespace drlqr {

/// Result of min c'x s.t. G x <= h over free x.
struct LpResult {
    bool            optimal = false;
    Eigen::VectorXd x;
    double          objective = 0.0;
    int             iterations = 0;
    std::string     status;
};

/// Dense LP solver for few variables and many inequality rows: runs the
/// revised simplex on the dual min h'lambda s.t. G'lambda = -c, lambda >= 0,
/// whose simplex multipliers at optimality are the primal solution.
LpResult lp_solve_min(const Eigen::VectorXd& c, const Eigen::MatrixXd& G,
                      const Eigen::VectorXd& h, int max_iters = 0);

}  // namespace drlqr
