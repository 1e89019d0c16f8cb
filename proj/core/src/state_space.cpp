#include "drlqr/state_space.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "drlqr/errors.hpp"
#include "drlqr/riccati.hpp"

namespace drlqr {

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& name, long rows,
                                 long cols) {
    if (!j.is_array() || static_cast<long>(j.size()) != rows) {
        throw InputError("system file: " + name + " must be a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " nested array");
    }
    Eigen::MatrixXd M(rows, cols);
    for (long r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<long>(row.size()) != cols) {
            throw InputError("system file: row " + std::to_string(r) + " of " + name +
                             " has wrong length");
        }
        for (long c = 0; c < cols; ++c) {
            const auto& v = row[static_cast<size_t>(c)];
            if (!v.is_number()) {
                throw InputError("system file: non-numeric entry in " + name);
            }
            M(r, c) = v.get<double>();
        }
    }
    return M;
}

void check_symmetric(const Eigen::MatrixXd& M, const std::string& name) {
    const double scale = std::max(M.norm(), 1e-300);
    if ((M - M.transpose()).norm() > 1e-12 * scale) {
        throw InputError("system file: " + name + " is not symmetric");
    }
}

}  // namespace

bool StateSpace::is_normalized(double tol) const {
    return (Q - Eigen::MatrixXd::Identity(n(), n())).norm() <= tol &&
           (R - Eigen::MatrixXd::Identity(d(), d())).norm() <= tol;
}

void validate_system(const StateSpace& ss) {
    check_symmetric(ss.Q, "Q");
    check_symmetric(ss.R, "R");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esQ(ss.Q);
    if (esQ.eigenvalues().minCoeff() < -1e-12 * std::max(ss.Q.norm(), 1.0)) {
        throw InputError("system file: Q is not positive semidefinite");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esR(ss.R);
    if (esR.eigenvalues().minCoeff() <= 0.0) {
        throw InputError("system file: R is not positive definite");
    }

    // Stabilizability of (A, B_u) and (A, B_w): a DARE solve succeeds with a
    // stable closed loop exactly when the pair is stabilizable.
    const Eigen::MatrixXd In = Eigen::MatrixXd::Identity(ss.n(), ss.n());
    try {
        (void)solve_dare(ss.A, ss.B_u, In, Eigen::MatrixXd::Identity(ss.d(), ss.d()));
    } catch (const ConvergenceError& e) {
        throw InputError(std::string("system file: (A, B_u) not stabilizable: ") + e.what());
    }
    try {
        (void)solve_dare(ss.A, ss.B_w, In, Eigen::MatrixXd::Identity(ss.p(), ss.p()));
    } catch (const ConvergenceError& e) {
        throw InputError(std::string("system file: (A, B_w) not stabilizable: ") + e.what());
    }
}

StateSpace load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open system file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("cannot parse system file " + path + ": " + e.what());
    }
    for (const char* key : {"n", "d", "p", "A", "B_u", "B_w", "Q", "R"}) {
        if (!j.contains(key)) {
            throw InputError("system file " + path + ": missing field \"" + key + "\"");
        }
    }
    const long n = j["n"].get<long>();
    const long d = j["d"].get<long>();
    const long p = j["p"].get<long>();
    if (n <= 0 || d <= 0 || p <= 0) {
        throw InputError("system file " + path + ": dimensions must be positive");
    }

    StateSpace ss;
    ss.A   = matrix_from_json(j["A"], "A", n, n);
    ss.B_u = matrix_from_json(j["B_u"], "B_u", n, d);
    ss.B_w = matrix_from_json(j["B_w"], "B_w", n, p);
    ss.Q   = matrix_from_json(j["Q"], "Q", n, n);
    ss.R   = matrix_from_json(j["R"], "R", d, d);
    validate_system(ss);
    return ss;
}

StateSpace normalize_weights(const StateSpace& ss) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esQ(ss.Q);
    const double qmin = esQ.eigenvalues().minCoeff();
    if (qmin <= 1e-12 * std::max(ss.Q.norm(), 1.0)) {
        throw InputError("normalize_weights: singular Q, state rescaling undefined");
    }
    const Eigen::MatrixXd Qh  = sym_sqrt(ss.Q);
    const Eigen::MatrixXd Qhi = Qh.inverse();
    const Eigen::MatrixXd Rhi = sym_sqrt(ss.R).inverse();

    StateSpace out;
    out.A   = Qh * ss.A * Qhi;
    out.B_u = Qh * ss.B_u * Rhi;
    out.B_w = Qh * ss.B_w;
    out.Q   = Eigen::MatrixXd::Identity(ss.n(), ss.n());
    out.R   = Eigen::MatrixXd::Identity(ss.d(), ss.d());
    return out;
}

std::string system_to_json(const StateSpace& ss) {
    auto to_nested = [](const Eigen::MatrixXd& M) {
        nlohmann::json rows = nlohmann::json::array();
        for (long r = 0; r < M.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (long c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json j;
    j["n"]   = ss.n();
    j["d"]   = ss.d();
    j["p"]   = ss.p();
    j["A"]   = to_nested(ss.A);
    j["B_u"] = to_nested(ss.B_u);
    j["B_w"] = to_nested(ss.B_w);
    j["Q"]   = to_nested(ss.Q);
    j["R"]   = to_nested(ss.R);
    return j.dump(2);
}

}  // namespace drlqr
