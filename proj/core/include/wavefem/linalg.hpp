#pragma once

#include <vector>

#include "wavefem/sparse.hpp"

namespace wavefem {

/// Outcome of a conjugate-gradient solve. residual_history holds the relative
/// residual after every iteration (checkpoints for monotonicity checks).
struct SolveReport {
    int iterations = 0;
    double residual = 0.0;  // final relative residual ||Ax-b|| / ||b||
    bool converged = false;
    std::vector<double> residual_history;
};

/// Plain conjugate gradients without preconditioner, zero initial guess.
/// Deterministic: fixed starting point and accumulation order. Non-convergence
/// within max_iter is reported via the flag, never silently accepted.
std::pair<std::vector<double>, SolveReport> cg_solve(const SparseMatrix& A,
                                                     const std::vector<double>& b,
                                                     double tol = 1e-12, int max_iter = 20000);

/// Outcome of the smallest-eigenvalue iteration. history holds the Rayleigh
/// quotient after every outer iteration (monotone nonincreasing).
struct EigenReport {
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

/// Smallest generalized eigenvalue of K x = lambda M x by inverse power
/// iteration with M-normalization; each outer step is one CG solve with K.
/// Start vector: ones over interior nodes. Returns the Rayleigh quotient
/// x^T K x / x^T M x at convergence (relative eigenvalue change <= tol).
EigenReport smallest_eigenvalue(const SparseMatrix& K, const SparseMatrix& M, double tol = 1e-12,
                                int max_iter = 500);

}  // namespace wavefem
