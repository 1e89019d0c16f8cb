#pragma once

#include <Eigen/Dense>
#include <string>

namespace drlqr {

/// Plant x_{t+1} = A x_t + B_u u_t + B_w w_t with quadratic state/input
/// weights Q and R. Dimensions: n states, d inputs, p disturbances.
struct StateSpace {
    Eigen::MatrixXd A;    // n x n
    Eigen::MatrixXd B_u;  // n x d
    Eigen::MatrixXd B_w;  // n x p
    Eigen::MatrixXd Q;    // n x n, symmetric PSD
    Eigen::MatrixXd R;    // d x d, symmetric PD

    int n() const { return static_cast<int>(A.rows()); }
    int d() const { return static_cast<int>(B_u.cols()); }
    int p() const { return static_cast<int>(B_w.cols()); }

    bool is_normalized(double tol = 1e-12) const;
};

/// Parse a system from the JSON schema
/// { "n", "d", "p", "A", "B_u", "B_w", "Q", "R" } and validate it:
/// consistent dimensions, symmetric Q and R, Q PSD, R PD, and both
/// (A, B_u) and (A, B_w) stabilizable (certified by a DARE solve).
/// Throws InputError with a descriptive message otherwise.
StateSpace load_system(const std::string& path);

/// Same validation applied to an in-memory system.
void validate_system(const StateSpace& ss);

/// Rescale x <- Q^{1/2} x, u <- R^{1/2} u so the weights become identity:
/// A <- Q^{1/2} A Q^{-1/2}, B_u <- Q^{1/2} B_u R^{-1/2}, B_w <- Q^{1/2} B_w.
/// Rejects singular Q (the state rescaling would be undefined).
StateSpace normalize_weights(const StateSpace& ss);

/// Serialize back to the JSON schema (used by the CLI manifest round trips).
std::string system_to_json(const StateSpace& ss);

}  // namespace drlqr
