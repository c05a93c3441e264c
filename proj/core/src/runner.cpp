#include "wavefem/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "wavefem/analysis.hpp"
#include "wavefem/linalg.hpp"

namespace wavefem {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// The value a reader of the CSV reconstructs from the formatted field.
/// Rates are computed from these so emitted tables are self-consistent.
double roundtrip(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

struct SingleRun {
    int N = 0;
    PresetInstance inst;
    RunResult result;
    bool has_errors = false;
    ErrorRecord errors;
    bool energy_fit_ok = false;
    DecayFit energy_fit;
    bool norm_fit_ok = false;
    DecayFit norm_fit;
    EigenReport lambda1;
    bool has_shifted = false;
    EigenReport lambda1_shifted;
    double fit_lo = 0.0;
    double fit_hi = 0.0;
};

struct ExperimentInput {
    std::string name;
    std::vector<int> N_list;
    std::function<PresetInstance(int)> build;
    double fit_lo = -1.0;  // negative = 0.2 * T of the run
    double fit_hi = -1.0;  // negative = T of the run
    bool want_table = true;
    bool want_decay = true;
    bool want_summary = true;
    std::string out_dir = ".";
    std::vector<double> snapshot_times;
};

SingleRun execute_one(const ExperimentInput& in, int N) {
    SingleRun sr;
    sr.N = N;
    sr.inst = in.build(N);
    sr.inst.sim.snapshot_times = in.snapshot_times;
    sr.result = run(sr.inst.sim);

    const RunResult& res = sr.result;
    const double t_final = res.nsteps * res.k;

    if (sr.inst.has_exact) {
        const SpaceTimeFn& exact = sr.inst.exact;
        const SpaceTimeGradFn& grad = sr.inst.exact_grad;
        SpatialFn exact_T = [&exact, t_final](double x, double y) {
            return exact(x, y, t_final);
        };
        GradientFn grad_T;
        if (grad)
            grad_T = [&grad, t_final](double x, double y) { return grad(x, y, t_final); };
        sr.errors = error_norms(res.mesh, res.U_final, exact_T, grad_T);
        sr.errors.N = N;
        sr.errors.h = res.mesh.h;
        sr.errors.k = res.k;
        sr.has_errors = true;
    }

    sr.fit_lo = in.fit_lo >= 0.0 ? in.fit_lo : 0.2 * t_final;
    sr.fit_hi = in.fit_hi >= 0.0 ? in.fit_hi : t_final;
    try {
        sr.energy_fit = fit_decay_rate(res.energies, sr.fit_lo, sr.fit_hi);
        sr.energy_fit_ok = true;
    } catch (const std::invalid_argument&) {
        sr.energy_fit_ok = false;
    }
    std::vector<double> ts(res.norm_M.size());
    for (std::size_t n = 0; n < ts.size(); ++n) ts[n] = static_cast<double>(n) * res.k;
    try {
        sr.norm_fit = fit_log_decay(ts, res.norm_M, sr.fit_lo, sr.fit_hi);
        sr.norm_fit_ok = true;
    } catch (const std::invalid_argument&) {
        sr.norm_fit_ok = false;
    }

    sr.lambda1 = smallest_eigenvalue(res.K, res.M);
    if (res.beta > 0.0) {
        SparseMatrix KB = matrix_sum(1.0, res.K, res.beta, res.M);
        sr.lambda1_shifted = smallest_eigenvalue(KB, res.M);
        sr.has_shifted = true;
    }
    return sr;
}

void write_table(const std::string& path, const std::vector<SingleRun>& runs,
                 std::vector<std::string>& files) {
    std::vector<double> hs, l2, linf, h1;
    for (const SingleRun& sr : runs) {
        hs.push_back(roundtrip(sr.errors.h));
        l2.push_back(roundtrip(sr.errors.L2));
        linf.push_back(roundtrip(sr.errors.Linf));
        h1.push_back(roundtrip(sr.errors.H1));
    }
    const bool with_rates = runs.size() >= 2;
    const std::vector<double> r2 = with_rates ? convergence_rates(l2, hs) : std::vector<double>{};
    const std::vector<double> rinf =
        with_rates ? convergence_rates(linf, hs) : std::vector<double>{};
    const std::vector<double> r1 = with_rates ? convergence_rates(h1, hs) : std::vector<double>{};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "N,h,k,L2,rate_L2,Linf,rate_Linf,H1,rate_H1\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const SingleRun& sr = runs[i];
        out << sr.N << ',' << fmt(sr.errors.h) << ',' << fmt(sr.errors.k) << ','
            << fmt(sr.errors.L2) << ',' << (i == 0 ? "-" : fmt(r2[i - 1])) << ','
            << fmt(sr.errors.Linf) << ',' << (i == 0 ? "-" : fmt(rinf[i - 1])) << ','
            << fmt(sr.errors.H1) << ',' << (i == 0 ? "-" : fmt(r1[i - 1])) << '\n';
    }
    files.push_back(path);
}

void write_decay(const std::string& path, const RunResult& res, std::vector<std::string>& files) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,E,norm_M,norm_K,Linf_node\n";
    for (std::size_t n = 0; n < res.energies.size(); ++n) {
        const double t = static_cast<double>(n) * res.k;
        out << fmt(t) << ',' << fmt(res.energies[n].E) << ',' << fmt(res.norm_M[n]) << ','
            << fmt(res.norm_K[n]) << ',' << fmt(res.linf_node[n]) << '\n';
    }
    files.push_back(path);
}

void write_snapshots(const std::string& stem, const SingleRun& sr,
                     std::vector<std::string>& files) {
    const Mesh& mesh = sr.result.mesh;
    const std::vector<int> imap = interior_index_map(mesh);
    for (const auto& [t, U] : sr.result.snapshots) {
        char tbuf[32];
        std::snprintf(tbuf, sizeof(tbuf), "%g", t);
        const std::string path =
            stem + "_snapshot_N" + std::to_string(sr.N) + "_t" + tbuf + ".txt";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        for (int i = 0; i < mesh.n_nodes(); ++i) {
            const double u = imap[i] >= 0 ? U[imap[i]] : 0.0;
            out << fmt(mesh.node_x[i]) << ' ' << fmt(mesh.node_y[i]) << ' ' << fmt(u) << '\n';
        }
        files.push_back(path);
    }
}

void summarize_run(std::ostringstream& out, const SingleRun& sr) {
    const RunResult& res = sr.result;
    out << "-- N=" << sr.N << "\n";
    out << "h: " << fmt(res.mesh.h) << "  k: " << fmt(res.k);
    if (res.k_adjusted) out << " (adjusted from " << fmt(res.k_requested) << ")";
    out << "  steps: " << res.nsteps << "\n";
    if (res.alpha_min == res.alpha_max)
        out << "alpha: " << fmt(res.alpha_min);
    else
        out << "alpha: [" << fmt(res.alpha_min) << ", " << fmt(res.alpha_max) << "] (spatial)";
    out << "  beta: " << fmt(res.beta) << "\n";

    out << "lambda1: " << fmt(sr.lambda1.lambda);
    if (!sr.lambda1.converged) out << " (not converged)";
    if (sr.has_shifted) {
        out << "  lambda1_shifted: " << fmt(sr.lambda1_shifted.lambda);
        if (!sr.lambda1_shifted.converged) out << " (not converged)";
    }
    out << "\n";

    if (res.alpha_min == res.alpha_max && res.alpha_min > 0.0 && sr.lambda1.lambda > 0.0) {
        out << "delta_max: " << fmt(theoretical_delta_max(res.alpha_min, sr.lambda1.lambda));
        if (sr.has_shifted && sr.lambda1_shifted.lambda > 0.0)
            out << "  delta_max_shifted: "
                << fmt(theoretical_delta_max(res.alpha_min, sr.lambda1_shifted.lambda));
        out << "\n";
    }

    if (sr.energy_fit_ok) {
        if (sr.energy_fit.fully_decayed)
            out << "energy fit: fully decayed inside window\n";
        else
            out << "energy fit: slope " << fmt(sr.energy_fit.slope) << "  delta_est "
                << fmt(sr.energy_fit.delta_est) << "  rms " << fmt(sr.energy_fit.residual)
                << "  points " << sr.energy_fit.points << "\n";
    } else {
        out << "energy fit: unavailable (too few points in window)\n";
    }
    if (sr.norm_fit_ok) {
        if (sr.norm_fit.fully_decayed)
            out << "norm fit: fully decayed inside window\n";
        else
            out << "norm fit: rate " << fmt(-sr.norm_fit.slope) << "  rms "
                << fmt(sr.norm_fit.residual) << "  points " << sr.norm_fit.points << "\n";
    } else {
        out << "norm fit: unavailable (too few points in window)\n";
    }

    if (sr.has_errors)
        out << "final errors: L2 " << fmt(sr.errors.L2) << "  Linf " << fmt(sr.errors.Linf)
            << "  H1 " << fmt(sr.errors.H1) << "\n";
    out << "cg iterations: " << res.total_cg_iterations << "\n";
}

RunArtifacts execute(const ExperimentInput& in) {
    if (in.N_list.empty()) throw std::invalid_argument("empty mesh list");
    std::filesystem::create_directories(in.out_dir);
    const std::string stem = (std::filesystem::path(in.out_dir) / in.name).string();

    std::vector<SingleRun> runs;
    runs.reserve(in.N_list.size());
    for (int N : in.N_list) runs.push_back(execute_one(in, N));

    RunArtifacts art;
    bool all_exact = true;
    for (const SingleRun& sr : runs) all_exact = all_exact && sr.has_errors;

    if (in.want_table && all_exact) write_table(stem + "_table.csv", runs, art.files);
    if (in.want_decay)
        for (const SingleRun& sr : runs)
            write_decay(stem + "_decay_N" + std::to_string(sr.N) + ".csv", sr.result, art.files);
    for (const SingleRun& sr : runs) write_snapshots(stem, sr, art.files);

    std::ostringstream sum;
    sum << "experiment: " << in.name << "\n";
    sum << "meshes:";
    for (int N : in.N_list) sum << ' ' << N;
    sum << "\n";
    sum << "fit window: [" << fmt(runs.front().fit_lo) << ", " << fmt(runs.front().fit_hi)
        << "]\n";
    for (const SingleRun& sr : runs) summarize_run(sum, sr);
    art.summary_text = sum.str();

    if (in.want_summary) {
        const std::string path = stem + "_summary.txt";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << art.summary_text;
        art.files.push_back(path);
    }
    return art;
}

}  // namespace

RunArtifacts run_preset(const std::string& name, const RunnerOptions& opt) {
    const ExperimentPreset& preset = get_preset(name);

    PresetOverrides ov;
    ov.alpha = opt.alpha;
    ov.beta = opt.beta;
    ov.delta = opt.delta;

    ExperimentInput in;
    in.name = preset.name;
    in.N_list = !opt.N_list.empty()
                    ? opt.N_list
                    : (preset.sweep.empty() ? std::vector<int>{preset.default_N} : preset.sweep);
    in.build = [&preset, ov, &opt](int N) {
        PresetInstance inst = preset.build(N, ov);
        if (opt.k.has_value()) inst.sim.k = *opt.k;
        if (opt.T.has_value()) inst.sim.T = *opt.T;
        return inst;
    };
    if (opt.window.has_value()) {
        if (!(opt.window->first >= 0.0) || !(opt.window->first < opt.window->second))
            throw std::invalid_argument("fit window needs 0 <= lo < hi");
        in.fit_lo = opt.window->first;
        in.fit_hi = opt.window->second;
    }
    in.out_dir = opt.out_dir;
    in.snapshot_times = opt.snapshot_times;
    return execute(in);
}

RunArtifacts run_config(const std::string& path, const RunnerOptions& opt) {
    if (opt.alpha.has_value() || opt.beta.has_value() || opt.delta.has_value())
        throw std::invalid_argument(
            "alpha/beta/delta overrides apply to presets only; edit the config file instead");

    RunSpec spec = parse_config_file(path);
    if (spec.outputs_explicit && spec.want_table)
        throw std::invalid_argument(
            spec.name + ": table output requires an exact solution (available in presets only)");

    ExperimentInput in;
    in.name = spec.name;
    const bool explicit_N = !opt.N_list.empty();
    in.N_list = explicit_N ? opt.N_list : std::vector<int>{spec.sim.nx};
    in.build = [spec, explicit_N, &opt](int N) {
        PresetInstance inst;
        inst.sim = spec.sim;
        if (explicit_N) {
            inst.sim.nx = N;
            inst.sim.ny = N;
        }
        if (opt.k.has_value()) inst.sim.k = *opt.k;
        if (opt.T.has_value()) inst.sim.T = *opt.T;
        return inst;
    };
    if (opt.window.has_value()) {
        if (!(opt.window->first >= 0.0) || !(opt.window->first < opt.window->second))
            throw std::invalid_argument("fit window needs 0 <= lo < hi");
        in.fit_lo = opt.window->first;
        in.fit_hi = opt.window->second;
    } else {
        in.fit_lo = spec.fit_lo;
        in.fit_hi = spec.fit_hi;
    }
    in.want_table = false;
    in.want_decay = spec.want_decay;
    in.want_summary = spec.want_summary;
    in.out_dir = opt.out_dir;
    in.snapshot_times = opt.snapshot_times;
    return execute(in);
}

}  // namespace wavefem
