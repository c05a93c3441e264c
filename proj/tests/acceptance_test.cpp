// End-to-end acceptance checks for the solver library. Every test prints one
// verdict line "[CRITERION n] PASS|FAIL: ..." with the measured numbers, and
// asserts the same condition through gtest so ctest reports match the lines.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wavefem/analysis.hpp"
#include "wavefem/assembly.hpp"
#include "wavefem/linalg.hpp"
#include "wavefem/mesh.hpp"
#include "wavefem/presets.hpp"
#include "wavefem/runner.hpp"
#include "wavefem/sparse.hpp"
#include "wavefem/stepper.hpp"

namespace wavefem {
namespace {

constexpr double kPi = 3.14159265358979323846;

void verdict(int criterion, bool pass, const std::string& detail) {
    std::printf("[CRITERION %d] %s: %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

RunResult run_preset_sim(const std::string& name, int N, const PresetOverrides& ov = {}) {
    return run(get_preset(name).build(N, ov).sim);
}

ErrorRecord final_errors(const PresetInstance& inst, const RunResult& res) {
    const double t_final = res.nsteps * res.k;
    auto exact = [&inst, t_final](double x, double y) { return inst.exact(x, y, t_final); };
    auto grad = [&inst, t_final](double x, double y) { return inst.exact_grad(x, y, t_final); };
    ErrorRecord rec = error_norms(res.mesh, res.U_final, exact, grad);
    rec.k = res.k;
    return rec;
}

struct SweepErrors {
    std::vector<double> hs, L2, Linf, H1;
};

SweepErrors sweep_errors(const std::string& name, const std::vector<int>& Ns) {
    SweepErrors out;
    for (int N : Ns) {
        PresetInstance inst = get_preset(name).build(N, {});
        RunResult res = run(inst.sim);
        ErrorRecord rec = final_errors(inst, res);
        out.hs.push_back(rec.h);
        out.L2.push_back(rec.L2);
        out.Linf.push_back(rec.Linf);
        out.H1.push_back(rec.H1);
    }
    return out;
}

double norm_fit_rate(const RunResult& res, double t_lo, double t_hi) {
    std::vector<double> ts(res.norm_M.size());
    for (std::size_t n = 0; n < ts.size(); ++n) ts[n] = static_cast<double>(n) * res.k;
    return -fit_log_decay(ts, res.norm_M, t_lo, t_hi).slope;
}

TEST(Acceptance, Criterion1EnergyIdentity) {
    RunResult res = run_preset_sim("example1", 16);
    const double scale = std::max(res.energies[0].E, 1e-30);
    double worst = 0.0;
    double ledger = 0.0;
    for (int n = 1; n < res.nsteps; ++n) {
        ledger +=
            res.damping_work[n - 1] + res.semilinear_work[n - 1] - res.forcing_work[n - 1];
        worst = std::max(worst, std::abs(res.energies[n].E + ledger - res.energies[0].E) / scale);
    }
    const bool pass = worst <= 1e-9;
    verdict(1, pass,
            "energy identity worst relative residual " + fmt(worst) + " over " +
                std::to_string(res.nsteps - 1) + " steps (limit 1e-9)");
    EXPECT_LE(worst, 1e-9);
}

TEST(Acceptance, Criterion2ConservationLimit) {
    // alpha = 0 with the forcing removed: the undamped scheme conserves E.
    PresetInstance inst = get_preset("example1").build(16, {});
    inst.sim.damping = CoefficientField::constant(0.0);
    inst.sim.forcing = nullptr;
    RunResult res = run(inst.sim);
    const double E0 = res.energies[0].E;
    double drift = 0.0;
    for (const auto& rec : res.energies) {
        drift = std::max(drift, std::abs(rec.E - E0) / E0);
    }
    const bool pass = drift <= 1e-9;
    verdict(2, pass, "max relative energy drift " + fmt(drift) + " (limit 1e-9)");
    EXPECT_LE(drift, 1e-9);
}

TEST(Acceptance, Criterion3Example1Convergence) {
    SweepErrors sw = sweep_errors("example1", {5, 10, 20, 40});
    const auto rate_L2 = convergence_rates(sw.L2, sw.hs);
    const auto rate_Linf = convergence_rates(sw.Linf, sw.hs);
    const auto rate_H1 = convergence_rates(sw.H1, sw.hs);

    bool rates_ok = true;
    for (std::size_t i = 0; i < rate_L2.size(); ++i) {
        rates_ok = rates_ok && rate_L2[i] >= 1.7 && rate_L2[i] <= 2.4;
        rates_ok = rates_ok && rate_Linf[i] >= 1.7 && rate_Linf[i] <= 2.4;
        rates_ok = rates_ok && rate_H1[i] >= 0.9;
        EXPECT_GE(rate_L2[i], 1.7) << "pair " << i;
        EXPECT_LE(rate_L2[i], 2.4) << "pair " << i;
        EXPECT_GE(rate_Linf[i], 1.7) << "pair " << i;
        EXPECT_LE(rate_Linf[i], 2.4) << "pair " << i;
        EXPECT_GE(rate_H1[i], 0.9) << "pair " << i;
    }

    const double reference = 5.24967e-4;
    const double ratio = sw.L2[1] / reference;
    const bool absolute_ok = ratio <= 3.0 && ratio >= 1.0 / 3.0;

    std::ostringstream detail;
    detail << "L2 rates " << fmt(rate_L2[0]) << "/" << fmt(rate_L2[1]) << "/" << fmt(rate_L2[2])
           << ", Linf rates " << fmt(rate_Linf[0]) << "/" << fmt(rate_Linf[1]) << "/"
           << fmt(rate_Linf[2]) << ", H1 rates " << fmt(rate_H1[0]) << "/" << fmt(rate_H1[1])
           << "/" << fmt(rate_H1[2]) << "; L2(N=10) = " << fmt(sw.L2[1]) << " vs reference "
           << fmt(reference) << " (ratio " << fmt(ratio) << ", limit 3)";
    verdict(3, rates_ok && absolute_ok, detail.str());

    EXPECT_LE(ratio, 3.0) << "absolute L2 error at N = 10; measured " << sw.L2[1]
                          << ". The scheme's achievable error at this resolution is dominated "
                             "by the discrete decay-rate shift; see the test log.";
    EXPECT_GE(ratio, 1.0 / 3.0);
}

TEST(Acceptance, Criterion4Example1DecayRate) {
    RunResult res = run_preset_sim("example1", 16);
    const double rate = norm_fit_rate(res, 0.2, 1.0);
    const double dev = std::abs(rate - kPi) / kPi;
    const bool pass = dev <= 0.05;
    verdict(4, pass,
            "fitted norm decay rate " + fmt(rate) + " vs pi (deviation " + fmt(100.0 * dev) +
                "%, limit 5%)");
    EXPECT_LE(dev, 0.05);
}

TEST(Acceptance, Criterion5Example2) {
    const double alpha = 8.9;
    const double analytic = alpha / 2.0 - std::sqrt(alpha * alpha / 4.0 - 2.0 * kPi * kPi);

    RunResult res = run_preset_sim("example2", 16);
    const double rate = norm_fit_rate(res, 0.2, 1.0);
    const double dev = std::abs(rate - analytic) / analytic;

    SweepErrors sw = sweep_errors("example2", {6, 12, 24});
    const auto rates = convergence_rates(sw.L2, sw.hs);
    bool rates_ok = true;
    for (double r : rates) rates_ok = rates_ok && r >= 1.7 && r <= 2.4;

    PresetOverrides heavier;
    heavier.alpha = 10.0;
    RunResult res10 = run_preset_sim("example2", 16, heavier);
    const double rate10 = norm_fit_rate(res10, 0.2, 1.0);
    const bool ordered = rate > rate10;

    const bool pass = dev <= 0.05 && rates_ok && ordered;
    std::ostringstream detail;
    detail << "fitted rate " << fmt(rate) << " vs analytic " << fmt(analytic) << " (deviation "
           << fmt(100.0 * dev) << "%, limit 5%); L2 rates " << fmt(rates[0]) << "/"
           << fmt(rates[1]) << " in [1.7, 2.4]; alpha = 8.9 rate " << fmt(rate)
           << " > alpha = 10 rate " << fmt(rate10);
    verdict(5, pass, detail.str());

    EXPECT_LE(dev, 0.05);
    for (double r : rates) {
        EXPECT_GE(r, 1.7);
        EXPECT_LE(r, 2.4);
    }
    EXPECT_GT(rate, rate10);
}

TEST(Acceptance, Criterion6Eigenvalue) {
    Mesh mesh = build_rect_mesh(16, 16, 0.0, 1.0, 0.0, 1.0);
    auto c1 = CoefficientField::constant(1.0);
    auto c0 = CoefficientField::constant(0.0);
    SparseMatrix M = assemble_weighted_mass(mesh, c1);
    SparseMatrix K = assemble_stiffness(mesh, c1, c0, c1, c0);

    EigenReport rep = smallest_eigenvalue(K, M);
    const double exact = 2.0 * kPi * kPi;
    const bool in_band = rep.converged && rep.lambda > exact && rep.lambda < 1.02 * exact;

    SparseMatrix K32 = matrix_sum(1.0, K, 32.0, M);
    EigenReport shifted = smallest_eigenvalue(K32, M);
    const double shift_err = std::abs(shifted.lambda - rep.lambda - 32.0);
    const bool shift_ok = shifted.converged && shift_err <= 1e-10;

    verdict(6, in_band && shift_ok,
            "lambda1 = " + fmt(rep.lambda) + " in (" + fmt(exact) + ", " + fmt(1.02 * exact) +
                "); shift identity error " + fmt(shift_err) + " (limit 1e-10)");
    EXPECT_TRUE(rep.converged);
    EXPECT_GT(rep.lambda, exact);
    EXPECT_LT(rep.lambda, 1.02 * exact);
    EXPECT_LE(shift_err, 1e-10);
}

TEST(Acceptance, Criterion7Formulas) {
    const double dm = theoretical_delta_max(10.0, 33.0);
    auto [a2, b2] = compensator_params(2.0);
    auto [a5, b5] = compensator_params(5.0);
    const bool pass =
        dm == 0.55 && a2 == 10.0 && b2 == 32.0 && a5 == 40.0 && b5 == 335.0;
    verdict(7, pass,
            "delta_max(10, 33) = " + fmt(dm) + "; compensator(2) = (" + fmt(a2) + ", " + fmt(b2) +
                "); compensator(5) = (" + fmt(a5) + ", " + fmt(b5) + "), all exact");
    EXPECT_EQ(dm, 0.55);
    EXPECT_EQ(a2, 10.0);
    EXPECT_EQ(b2, 32.0);
    EXPECT_EQ(a5, 40.0);
    EXPECT_EQ(b5, 335.0);
}

TEST(Acceptance, Criterion8SteadyState) {
    SweepErrors sw = sweep_errors("example3", {6, 12, 24});
    const auto rates = convergence_rates(sw.L2, sw.hs);
    bool rates_ok = true;
    for (double r : rates) rates_ok = rates_ok && r >= 1.7 && r <= 2.6;

    // Constant-in-time forcing from rest: U^n approaches the discrete steady
    // state. The shifted energy E(U - u_inf) is exactly monotone; the norm
    // itself oscillates through modal zero crossings, so its approach is
    // checked through unit-window envelope maxima and the final value.
    const int N = 16;
    SimConfig cfg;
    cfg.nx = cfg.ny = N;
    cfg.damping = CoefficientField::constant(5.0);
    cfg.forcing = [](double x, double y, double) {
        return 2.0 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    cfg.u0 = [](double, double) { return 0.0; };
    cfg.u1 = [](double, double) { return 0.0; };
    Mesh mesh = build_rect_mesh(N, N, 0.0, 1.0, 0.0, 1.0);
    cfg.k = mesh.h * mesh.h;
    const double T = 10.0;
    const int nsteps = static_cast<int>(std::lround(T / cfg.k));

    PrecomputedSystem sys = precompute(cfg, mesh);
    auto F = assemble_load(mesh, cfg.forcing, 0.0);
    std::vector<double> u_inf = steady_state_solve(sys.K, sys.M, 0.0, F);

    auto w_norm = [&](const std::vector<double>& U) {
        std::vector<double> w(U.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = U[i] - u_inf[i];
        return weighted_norm(sys.M, w);
    };

    auto [U0, U1] = initialize(cfg, mesh);
    StepperState state;
    state.U_prev = U0;
    state.U_curr = U1;
    state.n = 1;
    state.t = cfg.k;

    const double initial = w_norm(U0);
    std::vector<double> window_max(static_cast<std::size_t>(T) + 1, 0.0);
    auto record = [&](int n, double value) {
        const double t = n * cfg.k;
        std::size_t w = static_cast<std::size_t>(t);
        if (w >= window_max.size()) w = window_max.size() - 1;
        window_max[w] = std::max(window_max[w], value);
    };
    record(0, initial);
    record(1, w_norm(U1));
    double final_norm = 0.0;
    for (int n = 1; n < nsteps; ++n) {
        state = step(state, sys, cfg, mesh);
        final_norm = w_norm(state.U_curr);
        record(state.n, final_norm);
    }

    bool envelope_ok = true;
    for (std::size_t w = 2; w + 1 < window_max.size(); ++w) {
        envelope_ok = envelope_ok && window_max[w] < window_max[w - 1];
    }
    const double ratio = final_norm / initial;
    const bool final_ok = ratio <= 1e-3;

    std::ostringstream detail;
    detail << "L2 rates " << fmt(rates[0]) << "/" << fmt(rates[1])
           << " in [1.7, 2.6]; steady-state distance envelope decreasing over unit windows; "
              "final ||U - u_inf||_M / initial = "
           << fmt(ratio) << " (limit 1e-3)";
    verdict(8, rates_ok && envelope_ok && final_ok, detail.str());

    for (double r : rates) {
        EXPECT_GE(r, 1.7);
        EXPECT_LE(r, 2.6);
    }
    EXPECT_TRUE(envelope_ok);
    EXPECT_LE(ratio, 1e-3);
}

TEST(Acceptance, Criterion9SpatialDamping) {
    SweepErrors sw = sweep_errors("example4", {6, 12, 24});
    const auto rates = convergence_rates(sw.L2, sw.hs);
    bool rates_ok = true;
    for (double r : rates) rates_ok = rates_ok && r >= 1.8 && r <= 2.8;

    // The dissipation property belongs to the damped operator itself, so the
    // monotonicity run drops the manufactured forcing.
    PresetInstance inst = get_preset("example4").build(12, {});
    inst.sim.forcing = nullptr;
    RunResult res = run(inst.sim);
    const double slack = 1e-12 * res.energies[0].E;
    bool monotone = true;
    for (std::size_t n = 1; n < res.energies.size(); ++n) {
        monotone = monotone && res.energies[n].E <= res.energies[n - 1].E + slack;
    }

    verdict(9, rates_ok && monotone,
            "L2 rates " + fmt(rates[0]) + "/" + fmt(rates[1]) +
                " in [1.8, 2.8]; homogeneous energy monotone: " + (monotone ? "yes" : "no"));
    for (double r : rates) {
        EXPECT_GE(r, 1.8);
        EXPECT_LE(r, 2.8);
    }
    EXPECT_TRUE(monotone);
}

TEST(Acceptance, Criterion10Compensator) {
    PresetOverrides comp;
    comp.alpha = 10.0;
    comp.beta = 32.0;
    RunResult res = run_preset_sim("example7", 16, comp);
    const double rate = norm_fit_rate(res, 0.2, 1.0);

    PresetOverrides plain;
    plain.alpha = 10.0;
    plain.beta = 0.0;
    RunResult res0 = run_preset_sim("example7", 16, plain);
    const double rate0 = norm_fit_rate(res0, 0.2, 1.0);

    const bool window_ok = rate >= 1.6 && rate <= 3.0;
    const bool ordered = rate0 < rate;
    std::ostringstream detail;
    detail << "(alpha, beta) = (10, 32) fitted rate " << fmt(rate)
           << " vs required window [1.6, 3.0]; (10, 0) rate " << fmt(rate0)
           << " < compensated rate: " << (ordered ? "yes" : "no");
    verdict(10, window_ok && ordered, detail.str());

    EXPECT_GE(rate, 1.6) << "every discrete mode of the (10, 32) pair decays at exactly "
                            "alpha/2 = 5, so the fitted rate sits near 5; see the test log.";
    EXPECT_LE(rate, 3.0) << "measured " << rate;
    EXPECT_LT(rate0, rate);
}

TEST(Acceptance, Criterion11Semilinear) {
    SweepErrors sw = sweep_errors("example5", {8, 16, 32});
    const auto rates = convergence_rates(sw.L2, sw.hs);
    bool rates_ok = true;
    for (double r : rates) rates_ok = rates_ok && r >= 1.3 && r <= 2.2;

    RunResult res = run_preset_sim("example6", 16);
    const double slack = 1e-12 * res.energies[0].E;
    bool monotone = true;
    double worst_rise = 0.0;
    int worst_step = -1;
    for (std::size_t n = 3; n < res.energies.size(); ++n) {
        const double rise = res.energies[n].E - res.energies[n - 1].E;
        if (rise > slack) {
            monotone = false;
            if (rise > worst_rise) {
                worst_rise = rise;
                worst_step = static_cast<int>(n);
            }
        }
    }

    std::ostringstream detail;
    detail << "manufactured L2 rates " << fmt(rates[0]) << "/" << fmt(rates[1])
           << " in [1.3, 2.2]; homogeneous energy monotone after step 2: "
           << (monotone ? "yes" : "no");
    if (!monotone) {
        detail << " (worst rise " << fmt(worst_rise) << " = " << fmt(worst_rise / res.energies[0].E)
               << " of E0 at step " << worst_step << ")";
    }
    verdict(11, rates_ok && monotone, detail.str());

    for (double r : rates) {
        EXPECT_GE(r, 1.3);
        EXPECT_LE(r, 2.2);
    }
    EXPECT_TRUE(monotone)
        << "the explicit nodal semilinear term injects energy at velocity turning points "
           "(worst rise "
        << worst_rise << " at step " << worst_step << "); see the test log.";
}

TEST(Acceptance, Criterion12PropertySuites) {
    // 1-DOF scheme vs the closed-form scalar ODE: observed order >= 1.9.
    Mesh mesh2 = build_rect_mesh(2, 2, 0.0, 1.0, 0.0, 1.0);
    auto c1 = CoefficientField::constant(1.0);
    auto c0 = CoefficientField::constant(0.0);
    SparseMatrix M2 = assemble_weighted_mass(mesh2, c1);
    SparseMatrix K2 = assemble_stiffness(mesh2, c1, c0, c1, c0);
    const double rho = K2.at(0, 0) / M2.at(0, 0);
    const double omega = std::sqrt(rho - 0.25);
    const double u_exact = std::exp(-0.5) * std::cos(omega);
    auto sinsin = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    std::vector<double> errs;
    for (double k : {0.01, 0.005}) {
        SimConfig cfg;
        cfg.nx = cfg.ny = 2;
        cfg.damping = CoefficientField::constant(1.0);
        cfg.u0 = sinsin;
        cfg.u1 = [&](double x, double y) { return -0.5 * sinsin(x, y); };
        cfg.utt0 = [&](double x, double y) { return (0.5 - rho) * sinsin(x, y); };
        cfg.k = k;
        RunResult r = run(cfg);
        errs.push_back(std::abs(r.U_final[0] - u_exact));
    }
    const double order = std::log2(errs[0] / errs[1]);
    const bool order_ok = order >= 1.9;

    // Assembly oracles to 1e-12.
    const bool mass_ok = std::abs(M2.at(0, 0) - 0.125) <= 1e-12;
    Mesh mesh5 = build_rect_mesh(5, 5, 0.0, 1.0, 0.0, 1.0);
    SparseMatrix Kf = assemble_stiffness_full(mesh5, c1, c0, c1, c0);
    std::vector<double> rowsum = matvec(Kf, std::vector<double>(Kf.n, 1.0));
    double worst_rowsum = 0.0;
    for (double v : rowsum) worst_rowsum = std::max(worst_rowsum, std::abs(v));
    SparseMatrix Ma = assemble_weighted_mass(mesh5, c1);
    SparseMatrix Mb = assemble_weighted_mass(mesh5, CoefficientField::constant(3.0));
    double worst_linearity = 0.0;
    for (int p = 0; p < Ma.nnz(); ++p) {
        worst_linearity = std::max(worst_linearity, std::abs(Mb.vals[p] - 3.0 * Ma.vals[p]));
    }
    const bool assembly_ok = mass_ok && worst_rowsum <= 1e-12 && worst_linearity <= 1e-12;

    // Decay-fit scale invariance to 1e-12.
    std::vector<double> ts, ys, ys9;
    for (int i = 0; i <= 30; ++i) {
        ts.push_back(0.05 * i);
        ys.push_back(2.0 * std::exp(-1.3 * ts.back()));
        ys9.push_back(1e9 * ys.back());
    }
    const double slope_gap = std::abs(fit_log_decay(ts, ys, 0.0, 1.5).slope -
                                      fit_log_decay(ts, ys9, 0.0, 1.5).slope);
    const bool fit_ok = slope_gap <= 1e-12;

    // Byte-identical CSV across repeated runs.
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "wavefem_acceptance_csv";
    fs::remove_all(dir);
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    RunnerOptions opt;
    opt.N_list = {5};
    opt.out_dir = (dir / "a").string();
    run_preset("example1", opt);
    opt.out_dir = (dir / "b").string();
    run_preset("example1", opt);
    const std::string csv_a = slurp(dir / "a" / "example1_decay_N5.csv");
    const std::string csv_b = slurp(dir / "b" / "example1_decay_N5.csv");
    const bool csv_ok = !csv_a.empty() && csv_a == csv_b;
    fs::remove_all(dir);

    std::ostringstream detail;
    detail << "scalar-ODE observed order " << fmt(order) << " (>= 1.9); assembly oracles max "
           << "deviation " << fmt(std::max(worst_rowsum, worst_linearity))
           << " (<= 1e-12); fit scale-invariance gap " << fmt(slope_gap)
           << "; repeated-run CSV byte-identical: " << (csv_ok ? "yes" : "no");
    verdict(12, order_ok && assembly_ok && fit_ok && csv_ok, detail.str());

    EXPECT_GE(order, 1.9);
    EXPECT_TRUE(mass_ok);
    EXPECT_LE(worst_rowsum, 1e-12);
    EXPECT_LE(worst_linearity, 1e-12);
    EXPECT_LE(slope_gap, 1e-12);
    EXPECT_TRUE(csv_ok);
}

}  // namespace
}  // namespace wavefem
