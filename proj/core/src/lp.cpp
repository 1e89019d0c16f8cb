#include "drlqr/lp.hpp"

#include <limits>
#include <vector>

#include "drlqr/errors.hpp"

namespace drlqr {

namespace {

// min c'x s.t. A x = b, x >= 0, dense. The basis is refactorized every
// iteration; row counts here are tiny (the dual of the caller's LP).
struct StandardFormLP {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
};

struct SimplexOutcome {
    enum class Status { optimal, unbounded, iteration_limit } status = Status::optimal;
    std::vector<long> basis;
    Eigen::VectorXd   xB;
    Eigen::VectorXd   y;  // multipliers at the final basis
    int               iterations = 0;
};

SimplexOutcome run_simplex(const StandardFormLP& lp, std::vector<long> basis, int max_iters) {
    const long m = lp.A.rows();
    const long n = lp.A.cols();
    const double cost_scale = std::max(1.0, lp.c.cwiseAbs().maxCoeff());
    const double rc_tol     = 1e-9 * cost_scale;
    const double ratio_tol  = 1e-11;

    SimplexOutcome out;
    out.basis = std::move(basis);

    std::vector<char> in_basis(static_cast<size_t>(n), 0);
    for (long j : out.basis) in_basis[static_cast<size_t>(j)] = 1;

    const int bland_after = 4 * static_cast<int>(m + n);
    for (int it = 0; it < max_iters; ++it) {
        out.iterations = it;

        Eigen::MatrixXd B(m, m);
        Eigen::VectorXd cB(m);
        for (long i = 0; i < m; ++i) {
            B.col(i) = lp.A.col(out.basis[static_cast<size_t>(i)]);
            cB(i)    = lp.c(out.basis[static_cast<size_t>(i)]);
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        out.xB = lu.solve(lp.b);
        out.y  = lu.transpose().solve(cB);

        // Dantzig pricing, falling back to Bland's rule against cycling.
        const bool bland    = it > bland_after;
        long       entering = -1;
        double     best_rc  = -rc_tol;
        for (long j = 0; j < n; ++j) {
            if (in_basis[static_cast<size_t>(j)]) continue;
            const double rc = lp.c(j) - lp.A.col(j).dot(out.y);
            if (bland) {
                if (rc < -rc_tol) {
                    entering = j;
                    break;
                }
            } else if (rc < best_rc) {
                best_rc  = rc;
                entering = j;
            }
        }
        if (entering < 0) {
            out.status = SimplexOutcome::Status::optimal;
            return out;
        }

        const Eigen::VectorXd d = lu.solve(lp.A.col(entering));
        long   leaving   = -1;
        double best_step = std::numeric_limits<double>::infinity();
        for (long i = 0; i < m; ++i) {
            if (d(i) > ratio_tol) {
                const double step = std::max(out.xB(i), 0.0) / d(i);
                if (step < best_step - 1e-15 ||
                    (step <= best_step + 1e-15 &&
                     (leaving < 0 || out.basis[static_cast<size_t>(i)] <
                                         out.basis[static_cast<size_t>(leaving)]))) {
                    best_step = step;
                    leaving   = i;
                }
            }
        }
        if (leaving < 0) {
            out.status = SimplexOutcome::Status::unbounded;
            return out;
        }

        in_basis[static_cast<size_t>(out.basis[static_cast<size_t>(leaving)])] = 0;
        in_basis[static_cast<size_t>(entering)]                                = 1;
        out.basis[static_cast<size_t>(leaving)]                                = entering;
    }
    out.status = SimplexOutcome::Status::iteration_limit;
    return out;
}

}  // namespace

LpResult lp_solve_min(const Eigen::VectorXd& c, const Eigen::MatrixXd& G,
                      const Eigen::VectorXd& h, int max_iters) {
    const long nv = c.size();
    const long m  = G.rows();
    if (G.cols() != nv || h.size() != m) throw InputError("lp_solve_min: shape mismatch");
    if (max_iters <= 0) max_iters = 200 * static_cast<int>(nv) + 20 * static_cast<int>(m) + 2000;

    LpResult result;

    // Dual in standard form: min h'lambda s.t. G'lambda = -c, lambda >= 0.
    // Rows are sign-flipped so the artificial start has b >= 0; the flips
    // are undone on the multipliers when recovering the primal point.
    StandardFormLP  dual;
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(nv);
    dual.A = G.transpose();
    dual.b = -c;
    for (long i = 0; i < nv; ++i) {
        if (dual.b(i) < 0.0) {
            flip(i)       = -1.0;
            dual.b(i)     = -dual.b(i);
            dual.A.row(i) = -dual.A.row(i);
        }
    }

    // Phase 1 with an artificial identity basis.
    StandardFormLP ph1;
    ph1.A = Eigen::MatrixXd(nv, m + nv);
    ph1.A << dual.A, Eigen::MatrixXd::Identity(nv, nv);
    ph1.b = dual.b;
    ph1.c = Eigen::VectorXd::Zero(m + nv);
    ph1.c.tail(nv).setOnes();

    std::vector<long> start(static_cast<size_t>(nv));
    for (long i = 0; i < nv; ++i) start[static_cast<size_t>(i)] = m + i;

    SimplexOutcome p1 = run_simplex(ph1, start, max_iters);
    if (p1.status != SimplexOutcome::Status::optimal) {
        result.status = "phase-1 did not terminate";
        return result;
    }
    double infeas = 0.0;
    for (long i = 0; i < nv; ++i) {
        if (p1.basis[static_cast<size_t>(i)] >= m) infeas += std::max(p1.xB(i), 0.0);
    }
    if (infeas > 1e-9 * std::max(1.0, dual.b.cwiseAbs().maxCoeff())) {
        result.status = "unbounded";  // dual infeasible: primal unbounded below
        return result;
    }

    // Pivot leftover (zero-valued) artificials out of the basis when possible.
    std::vector<long> redundant;
    {
        Eigen::MatrixXd B(nv, nv);
        for (long i = 0; i < nv; ++i) B.col(i) = ph1.A.col(p1.basis[static_cast<size_t>(i)]);
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        for (long i = 0; i < nv; ++i) {
            if (p1.basis[static_cast<size_t>(i)] < m) continue;
            long replacement = -1;
            for (long j = 0; j < m && replacement < 0; ++j) {
                bool basic = false;
                for (long t = 0; t < nv; ++t) {
                    if (p1.basis[static_cast<size_t>(t)] == j) basic = true;
                }
                if (basic) continue;
                if (std::abs(lu.solve(ph1.A.col(j))(i)) > 1e-8) replacement = j;
            }
            if (replacement >= 0) {
                p1.basis[static_cast<size_t>(i)] = replacement;
            } else {
                redundant.push_back(i);  // dependent equality; safe to drop
            }
        }
    }

    std::vector<long> rows;
    for (long i = 0; i < nv; ++i) {
        bool drop = false;
        for (long rr : redundant) {
            if (rr == i) drop = true;
        }
        if (!drop) rows.push_back(i);
    }
    StandardFormLP ph2;
    ph2.A = Eigen::MatrixXd(static_cast<long>(rows.size()), m);
    ph2.b = Eigen::VectorXd(static_cast<long>(rows.size()));
    std::vector<long> basis2;
    for (size_t i = 0; i < rows.size(); ++i) {
        ph2.A.row(static_cast<long>(i)) = dual.A.row(rows[i]);
        ph2.b(static_cast<long>(i))     = dual.b(rows[i]);
        basis2.push_back(p1.basis[static_cast<size_t>(rows[i])]);
    }
    ph2.c = h;

    SimplexOutcome p2 = run_simplex(ph2, basis2, max_iters);
    if (p2.status == SimplexOutcome::Status::unbounded) {
        result.status = "primal infeasible";
        return result;
    }
    if (p2.status == SimplexOutcome::Status::iteration_limit) {
        result.status = "phase-2 did not terminate";
        return result;
    }

    // The multipliers of the optimal dual basis solve the primal: reduced
    // costs vanish on tight rows (G_B x = h_B) and are nonnegative elsewhere
    // (G x <= h).
    result.optimal = true;
    if (redundant.empty()) {
        result.x = Eigen::VectorXd(nv);
        for (long i = 0; i < nv; ++i) result.x(i) = flip(i) * p2.y(i);
    } else {
        Eigen::MatrixXd Gt(static_cast<long>(basis2.size()), nv);
        Eigen::VectorXd ht(static_cast<long>(basis2.size()));
        for (size_t i = 0; i < basis2.size(); ++i) {
            Gt.row(static_cast<long>(i)) = G.row(p2.basis[i]);
            ht(static_cast<long>(i))     = h(p2.basis[i]);
        }
        result.x = Gt.colPivHouseholderQr().solve(ht);
    }
    result.objective  = c.dot(result.x);
    result.iterations = p1.iterations + p2.iterations;
    result.status     = "optimal";
    return result;
}

}  // namespace drlqr
