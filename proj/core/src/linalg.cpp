#include "wavefem/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace wavefem {

std::pair<std::vector<double>, SolveReport> cg_solve(const SparseMatrix& A,
                                                     const std::vector<double>& b, double tol,
                                                     int max_iter) {
    if (static_cast<int>(b.size()) != A.n) {
        throw std::invalid_argument("cg_solve: dimension mismatch");
    }
    if (!(tol > 0.0) || !(tol < 1.0)) {
        throw std::invalid_argument("cg_solve: tol must lie in (0, 1)");
    }

    SolveReport report;
    std::vector<double> x(A.n, 0.0);

    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        report.converged = true;
        return {x, report};
    }

    std::vector<double> r = b;  // r = b - A*0
    std::vector<double> p = b;
    std::vector<double> Ap(A.n);
    double rr = dot(r, r);

    for (int it = 0; it < max_iter; ++it) {
        matvec(A, p, Ap);
        const double alpha = rr / dot(p, Ap);
        for (int i = 0; i < A.n; ++i) x[i] += alpha * p[i];
        for (int i = 0; i < A.n; ++i) r[i] -= alpha * Ap[i];
        const double rr_next = dot(r, r);
        report.iterations = it + 1;
        const double rel = std::sqrt(rr_next) / b_norm;
        report.residual_history.push_back(rel);
        if (rel <= tol) {
            report.converged = true;
            report.residual = rel;
            return {x, report};
        }
        const double beta = rr_next / rr;
        for (int i = 0; i < A.n; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_next;
    }

    report.converged = false;
    report.residual = std::sqrt(rr) / b_norm;
    return {x, report};
}

EigenReport smallest_eigenvalue(const SparseMatrix& K, const SparseMatrix& M, double tol,
                                int max_iter) {
    if (K.n != M.n) {
        throw std::invalid_argument("smallest_eigenvalue: dimension mismatch");
    }
    if (K.n == 0) {
        throw std::invalid_argument("smallest_eigenvalue: empty system");
    }

    EigenReport report;
    std::vector<double> x(K.n, 1.0);

    // M-normalize the start so Rayleigh quotients are scale-free.
    {
        const double nrm = weighted_norm(M, x);
        for (double& v : x) v /= nrm;
    }

    double lambda_prev = 0.0;
    // Inner solves much tighter than the eigenvalue tolerance so CG error
    // does not pollute the Rayleigh quotient.
    const double inner_tol = std::min(tol * 1e-2, 1e-13);

    for (int it = 0; it < max_iter; ++it) {
        const std::vector<double> Mx = matvec(M, x);
        auto [y, solve] = cg_solve(K, Mx, inner_tol, 100000);
        if (!solve.converged) {
            report.lambda = lambda_prev;
            report.iterations = it;
            report.converged = false;
            return report;
        }
        const double nrm = weighted_norm(M, y);
        for (double& v : y) v /= nrm;
        const double lambda = dot(y, matvec(K, y)) / dot(y, matvec(M, y));
        report.history.push_back(lambda);
        report.iterations = it + 1;
        x = std::move(y);
        if (it > 0 && std::abs(lambda - lambda_prev) <= tol * std::abs(lambda)) {
            report.lambda = lambda;
            report.converged = true;
            return report;
        }
        lambda_prev = lambda;
    }

    report.lambda = lambda_prev;
    report.converged = false;
    return report;
}

}  // namespace wavefem
