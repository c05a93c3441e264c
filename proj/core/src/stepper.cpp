#include "wavefem/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "wavefem/linalg.hpp"

namespace wavefem {

Startup parse_startup(const std::string& name) {
    if (name == "taylor1") return Startup::taylor1;
    if (name == "taylor2") return Startup::taylor2;
    throw std::invalid_argument("unknown startup scheme '" + name +
                                "' (expected taylor1 or taylor2)");
}

PrecomputedSystem precompute(const SimConfig& config, const Mesh& mesh) {
    if (!(config.k > 0.0) || !std::isfinite(config.k))
        throw std::invalid_argument("precompute requires a resolved positive time step");
    if (config.beta < 0.0) throw std::invalid_argument("beta must be nonnegative");

    PrecomputedSystem sys;
    sys.k = config.k;
    sys.beta = config.beta;

    sys.M = assemble_weighted_mass(mesh, CoefficientField::constant(1.0));
    sys.K = assemble_stiffness(mesh, config.a11, config.a12, config.a22, config.a0);

    if (config.damping.is_constant()) {
        const double alpha = config.damping.constant_value();
        if (alpha < 0.0) throw std::invalid_argument("constant damping must be nonnegative");
        sys.D = matrix_scale(alpha, sys.M);
        sys.alpha_min = alpha;
        sys.alpha_max = alpha;
    } else {
        sys.D = assemble_weighted_mass(mesh, config.damping);
        CoefficientBounds b = coefficient_bounds(mesh, config.damping);
        sys.alpha_min = b.min;
        sys.alpha_max = b.max;
    }

    sys.KB = config.beta != 0.0 ? matrix_sum(1.0, sys.K, config.beta, sys.M) : sys.K;

    const double k = sys.k;
    SparseMatrix MD = matrix_sum(1.0 / (k * k), sys.M, 1.0 / (2.0 * k), sys.D);
    sys.S = matrix_sum(1.0, MD, 0.25, sys.KB);
    return sys;
}

std::pair<std::vector<double>, std::vector<double>> initialize(const SimConfig& config,
                                                               const Mesh& mesh) {
    if (!config.u0) throw std::invalid_argument("initial displacement u0 is required");
    if (!config.u1) throw std::invalid_argument("initial velocity u1 is required");
    if (!(config.k > 0.0)) throw std::invalid_argument("initialize requires a resolved time step");

    const double k = config.k;
    std::vector<double> U0 = nodal_interpolant(mesh, config.u0);
    std::vector<double> V = nodal_interpolant(mesh, config.u1);

    std::vector<double> U1(U0.size());
    for (std::size_t i = 0; i < U0.size(); ++i) U1[i] = U0[i] + k * V[i];

    if (config.startup == Startup::taylor2 && config.utt0) {
        std::vector<double> A = nodal_interpolant(mesh, config.utt0);
        for (std::size_t i = 0; i < U1.size(); ++i) U1[i] += 0.5 * k * k * A[i];
    }
    return {std::move(U0), std::move(U1)};
}

StepperState step(const StepperState& state, const PrecomputedSystem& sys,
                  const SimConfig& config, const Mesh& mesh, StepReport* report) {
    const std::size_t n_int = state.U_curr.size();
    if (state.U_prev.size() != n_int) throw std::invalid_argument("step: level sizes disagree");
    const double k = sys.k;
    const double t = state.t;

    std::vector<double> rhs(n_int, 0.0);
    std::vector<double> tmp(n_int, 0.0);

    matvec(sys.M, state.U_curr, tmp);
    for (std::size_t i = 0; i < n_int; ++i) rhs[i] += (2.0 / (k * k)) * tmp[i];
    matvec(sys.M, state.U_prev, tmp);
    for (std::size_t i = 0; i < n_int; ++i) rhs[i] -= (1.0 / (k * k)) * tmp[i];

    matvec(sys.D, state.U_prev, tmp);
    for (std::size_t i = 0; i < n_int; ++i) rhs[i] += tmp[i] / (2.0 * k);

    std::vector<double> mid(n_int);
    for (std::size_t i = 0; i < n_int; ++i) mid[i] = 2.0 * state.U_curr[i] + state.U_prev[i];
    matvec(sys.KB, mid, tmp);
    for (std::size_t i = 0; i < n_int; ++i) rhs[i] -= 0.25 * tmp[i];

    std::vector<double> Mg;
    if (config.semilinear) {
        std::vector<double> g(n_int);
        for (std::size_t i = 0; i < n_int; ++i) {
            const double u = state.U_curr[i];
            g[i] = u * u * u - u;
        }
        Mg = matvec(sys.M, g);
        for (std::size_t i = 0; i < n_int; ++i) rhs[i] -= Mg[i];
    }

    std::vector<double> Fhat;
    if (config.forcing) {
        Fhat = assemble_load(mesh, config.forcing, t + k);
        std::vector<double> Fn = assemble_load(mesh, config.forcing, t);
        std::vector<double> Fm = assemble_load(mesh, config.forcing, t - k);
        for (std::size_t i = 0; i < n_int; ++i)
            Fhat[i] = 0.25 * (Fhat[i] + 2.0 * Fn[i] + Fm[i]);
        for (std::size_t i = 0; i < n_int; ++i) rhs[i] += Fhat[i];
    }

    auto [U_next, solve] = cg_solve(sys.S, rhs, config.cg_tol, config.cg_max_iter);
    if (!solve.converged)
        throw StepError("conjugate gradients did not converge advancing step " +
                            std::to_string(state.n) + " (relative residual " +
                            std::to_string(solve.residual) + ")",
                        state.n);
    for (std::size_t i = 0; i < n_int; ++i)
        if (!std::isfinite(U_next[i]))
            throw StepError("non-finite solution component advancing step " +
                                std::to_string(state.n),
                            state.n);

    if (report != nullptr) {
        report->cg_iterations = solve.iterations;
        report->cg_residual = solve.residual;
        std::vector<double> delta(n_int);
        for (std::size_t i = 0; i < n_int; ++i)
            delta[i] = (U_next[i] - state.U_prev[i]) / (2.0 * k);
        matvec(sys.D, delta, tmp);
        report->damping_work = k * dot(delta, tmp);
        report->semilinear_work = config.semilinear ? k * dot(Mg, delta) : 0.0;
        report->forcing_work = config.forcing ? k * dot(Fhat, delta) : 0.0;
    }

    StepperState next;
    next.U_prev = state.U_curr;
    next.U_curr = std::move(U_next);
    next.n = state.n + 1;
    next.t = next.n * k;
    return next;
}

namespace {

// (step index, requested time) pairs, clamped to the available levels.
std::vector<std::pair<int, double>> snapshot_schedule(const std::vector<double>& times, double k,
                                                      int nsteps) {
    std::vector<std::pair<int, double>> want;
    want.reserve(times.size());
    for (double ts : times) {
        long m = std::lround(ts / k);
        if (m < 0) m = 0;
        if (m > nsteps) m = nsteps;
        want.emplace_back(static_cast<int>(m), ts);
    }
    return want;
}

}  // namespace

RunResult run(const SimConfig& config) {
    if (!(config.T > 0.0) || !std::isfinite(config.T))
        throw std::invalid_argument("final time T must be positive and finite");

    Mesh mesh = build_rect_mesh(config.nx, config.ny, config.x0, config.x1, config.y0, config.y1);

    SimConfig cfg = config;
    double k = cfg.k > 0.0 ? cfg.k : mesh.h * mesh.h;
    if (!std::isfinite(k) || !(k > 0.0))
        throw std::invalid_argument("time step must be positive and finite");
    const double k_requested = k;

    const double q = cfg.T / k;
    if (q > 2e8) throw std::invalid_argument("time step too small: more than 2e8 steps requested");
    const double r = std::round(q);
    int nsteps;
    bool adjusted = false;
    if (r >= 1.0 && std::fabs(q - r) <= 1e-9 * std::max(1.0, q)) {
        nsteps = static_cast<int>(r);
    } else {
        nsteps = static_cast<int>(std::ceil(q));
        if (nsteps < 1) nsteps = 1;
        k = cfg.T / nsteps;
        adjusted = true;
    }
    cfg.k = k;

    PrecomputedSystem sys = precompute(cfg, mesh);
    auto [U0, U1] = initialize(cfg, mesh);

    RunResult res;
    res.mesh = mesh;
    res.M = sys.M;
    res.K = sys.K;
    res.beta = cfg.beta;
    res.k = k;
    res.k_requested = k_requested;
    res.k_adjusted = adjusted;
    res.nsteps = nsteps;
    res.alpha_min = sys.alpha_min;
    res.alpha_max = sys.alpha_max;

    res.energies.reserve(nsteps);
    res.norm_M.reserve(nsteps);
    res.norm_K.reserve(nsteps);
    res.linf_node.reserve(nsteps);

    auto push_norms = [&res, &sys](const std::vector<double>& U) {
        res.norm_M.push_back(weighted_norm(sys.M, U));
        res.norm_K.push_back(weighted_norm(sys.K, U));
        double m = 0.0;
        for (double u : U) m = std::max(m, std::fabs(u));
        res.linf_node.push_back(m);
    };

    std::vector<std::pair<int, double>> want = snapshot_schedule(cfg.snapshot_times, k, nsteps);
    auto capture = [&res, &want](int level, double t, const std::vector<double>& U) {
        for (const auto& [m, t_req] : want)
            if (m == level) {
                res.snapshots.emplace_back(t, U);
                break;
            }
    };

    push_norms(U0);
    res.energies.push_back(discrete_energy(U0, U1, k, sys.M, sys.K, cfg.beta, 0.0));
    capture(0, 0.0, U0);
    capture(1, k, U1);

    StepperState st;
    st.U_prev = std::move(U0);
    st.U_curr = std::move(U1);
    st.n = 1;
    st.t = k;

    for (int n = 1; n < nsteps; ++n) {
        push_norms(st.U_curr);
        StepReport rep;
        st = step(st, sys, cfg, mesh, &rep);
        res.energies.push_back(
            discrete_energy(st.U_prev, st.U_curr, k, sys.M, sys.K, cfg.beta, n * k));
        res.damping_work.push_back(rep.damping_work);
        res.semilinear_work.push_back(rep.semilinear_work);
        res.forcing_work.push_back(rep.forcing_work);
        res.total_cg_iterations += rep.cg_iterations;
        capture(st.n, st.t, st.U_curr);
    }

    res.U_before_final = std::move(st.U_prev);
    res.U_final = std::move(st.U_curr);
    return res;
}

}  // namespace wavefem
