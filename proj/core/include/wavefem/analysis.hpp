#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wavefem/assembly.hpp"
#include "wavefem/mesh.hpp"
#include "wavefem/sparse.hpp"

namespace wavefem {

/// Discrete energy at one step pair: E = kinetic + potential with
/// kinetic = (1/2)||(U_np1-U_n)/k||_M^2 and
/// potential = (1/2)||(U_np1+U_n)/2||_{K+beta*M}^2.
struct EnergyRecord {
    double t = 0.0;
    double E = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
};

EnergyRecord discrete_energy(const std::vector<double>& U_n, const std::vector<double>& U_np1,
                             double k, const SparseMatrix& M, const SparseMatrix& K, double beta,
                             double t = 0.0);

/// Errors of a discrete state against an exact solution at a fixed time.
/// H1 is the full norm (L2^2 + seminorm^2)^(1/2); Linf is the nodal maximum.
struct ErrorRecord {
    int N = 0;
    double h = 0.0;
    double k = 0.0;
    double L2 = 0.0;
    double H1 = 0.0;
    double Linf = 0.0;
};

using GradientFn = std::function<std::pair<double, double>(double, double)>;

/// L2/H1 errors by the 3-point midpoint rule per triangle, with the P1
/// function extended by zero on boundary nodes; Linf over all nodes.
/// exact_grad is required for the H1 seminorm part (H1 = L2 without it).
ErrorRecord error_norms(const Mesh& mesh, const std::vector<double>& U_interior,
                        const SpatialFn& exact, const GradientFn& exact_grad = nullptr);

/// Rate between adjacent records per the quoted log formula. Non-positive
/// errors make a pair's rate undefined, reported as NaN.
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& hs);

/// Least-squares fit of log(y) against t inside [t_lo, t_hi].
/// slope is the fitted d(log y)/dt; delta_est = -slope/2 reads the energy
/// convention E ~ exp(-2 delta t). For norm series (u ~ exp(-delta t)) use
/// -slope directly. fully_decayed flags a window whose values all sit below
/// 1e-300 (no fit possible).
struct DecayFit {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double slope = 0.0;
    double delta_est = 0.0;
    double residual = 0.0;  // RMS of log-residuals
    int points = 0;
    bool fully_decayed = false;
};

DecayFit fit_log_decay(const std::vector<double>& ts, const std::vector<double>& ys, double t_lo,
                       double t_hi);

/// Energy-series decay fit: OLS on (t_n, log E_n), delta_est = -slope/2.
DecayFit fit_decay_rate(const std::vector<EnergyRecord>& records, double t_lo, double t_hi);

/// Largest decay rate certified by the constant-damping theory:
/// (1/3) min(alpha, lambda1/(2 alpha)).
double theoretical_delta_max(double alpha, double lambda1);

/// Damping and compensation realizing a target rate delta:
/// alpha = delta(3+delta), beta = delta(2 + 3 delta + 2 delta^2).
std::pair<double, double> compensator_params(double delta);

/// Discrete steady state: solves (K + beta*M) u = F by CG.
std::vector<double> steady_state_solve(const SparseMatrix& K, const SparseMatrix& M, double beta,
                                       const std::vector<double>& F, double tol = 1e-12);

}  // namespace wavefem
