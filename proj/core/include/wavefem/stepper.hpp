#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wavefem/analysis.hpp"
#include "wavefem/assembly.hpp"
#include "wavefem/mesh.hpp"
#include "wavefem/sparse.hpp"

namespace wavefem {

enum class Startup {
    taylor1,  // U1 = I_h[u0 + k u1]
    taylor2,  // U1 = I_h[u0 + k u1 + (k^2/2) utt0]; falls back to taylor1 without utt0
};

Startup parse_startup(const std::string& name);

/// Full description of one time-dependent run. Defaults give the Laplacian
/// with constant damping on the unit square.
struct SimConfig {
    int nx = 16;
    int ny = 16;
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;

    CoefficientField a11 = CoefficientField::constant(1.0);
    CoefficientField a12 = CoefficientField::constant(0.0);
    CoefficientField a22 = CoefficientField::constant(1.0);
    CoefficientField a0 = CoefficientField::constant(0.0);

    CoefficientField damping = CoefficientField::constant(1.0);
    double beta = 0.0;

    SpaceTimeFn forcing;  // null = homogeneous
    bool semilinear = false;  // adds the explicit nodal term g(u) = u^3 - u

    SpatialFn u0;
    SpatialFn u1;
    SpatialFn utt0;  // analytic u_tt(., 0) for the taylor2 start; optional

    double k = 0.0;  // <= 0 means derive k = h^2 from the mesh
    double T = 1.0;
    Startup startup = Startup::taylor2;

    double cg_tol = 1e-12;
    int cg_max_iter = 20000;

    std::vector<double> snapshot_times;
};

/// Raised when a step cannot be completed (CG failure or non-finite state).
class StepError : public std::runtime_error {
  public:
    StepError(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
    int step() const { return step_; }

  private:
    int step_;
};

/// Matrices shared by every step of a run: M, D (weighted mass for spatial
/// damping, alpha*M for constant), KB = K + beta*M, and the system matrix
/// S = (1/k^2) M + (1/2k) D + (1/4) KB.
struct PrecomputedSystem {
    SparseMatrix M;
    SparseMatrix K;
    SparseMatrix D;
    SparseMatrix KB;
    SparseMatrix S;
    double k = 0.0;
    double beta = 0.0;
    double alpha_min = 0.0;  // sampled damping range
    double alpha_max = 0.0;
};

PrecomputedSystem precompute(const SimConfig& config, const Mesh& mesh);

/// Three-level state: U^{n-1} and U^n with n >= 1, t = n k.
struct StepperState {
    std::vector<double> U_prev;
    std::vector<double> U_curr;
    int n = 1;
    double t = 0.0;
};

/// (U0, U1) from the configured startup scheme.
std::pair<std::vector<double>, std::vector<double>> initialize(const SimConfig& config,
                                                               const Mesh& mesh);

/// Per-step byproducts: CG effort and the three work terms of the energy
/// identity, each already scaled by k.
struct StepReport {
    int cg_iterations = 0;
    double cg_residual = 0.0;
    double damping_work = 0.0;     // k ||delta_t U^n||_D^2
    double semilinear_work = 0.0;  // k (g(U^n), delta_t U^n)_M
    double forcing_work = 0.0;     // k (Fhat^n, delta_t U^n)
};

/// Advances one step of the scheme
///   M dtdt U^n + D delta_t U^n + KB Uhat^n + M g(U^n) = Fhat^n
/// by solving S U^{n+1} = rhs. The semilinear term is evaluated nodally.
/// state.U_curr is level n at time state.t; loads are assembled at
/// state.t - k, state.t, state.t + k.
StepperState step(const StepperState& state, const PrecomputedSystem& sys,
                  const SimConfig& config, const Mesh& mesh, StepReport* report = nullptr);

/// Everything a run produces: trajectory end states, per-step energy records,
/// per-state norms, and the dissipation ledger for the energy identity
///   E^m + sum_n [k ||delta_t U^n||_D^2 + k (g(U^n), delta_t U^n)_M
///                - k (Fhat^n, delta_t U^n)] = E^0.
struct RunResult {
    Mesh mesh;
    SparseMatrix M;
    SparseMatrix K;
    double beta = 0.0;

    double k = 0.0;        // step actually used
    double k_requested = 0.0;
    bool k_adjusted = false;
    int nsteps = 0;

    std::vector<double> U_final;       // U^{nsteps}
    std::vector<double> U_before_final;  // U^{nsteps-1}

    std::vector<EnergyRecord> energies;  // E^0 .. E^{nsteps-1}
    std::vector<double> norm_M;          // ||U^n||_M, n = 0 .. nsteps-1
    std::vector<double> norm_K;          // ||U^n||_K
    std::vector<double> linf_node;       // max_i |U^n_i|

    std::vector<double> damping_work;    // k ||delta_t U^n||_D^2, n = 1 .. nsteps-1
    std::vector<double> semilinear_work; // k (g(U^n), delta_t U^n)_M
    std::vector<double> forcing_work;    // k (Fhat^n, delta_t U^n)

    std::vector<std::pair<double, std::vector<double>>> snapshots;

    double alpha_min = 0.0;
    double alpha_max = 0.0;
    long total_cg_iterations = 0;
};

/// Executes initialize + steps up to T. T must be an integer number of steps;
/// when T/k is not integral, k is adjusted downward to T/ceil(T/k) and the
/// adjustment is flagged in the result.
RunResult run(const SimConfig& config);

}  // namespace wavefem
