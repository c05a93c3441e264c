#include "wavefem/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wavefem/linalg.hpp"

namespace wavefem {

EnergyRecord discrete_energy(const std::vector<double>& U_n, const std::vector<double>& U_np1,
                             double k, const SparseMatrix& M, const SparseMatrix& K, double beta,
                             double t) {
    if (U_n.size() != U_np1.size()) {
        throw std::invalid_argument("discrete_energy: vector length mismatch");
    }
    if (!(k > 0.0)) {
        throw std::invalid_argument("discrete_energy: k must be positive");
    }
    const std::size_t n = U_n.size();
    std::vector<double> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = (U_np1[i] - U_n[i]) / k;
        w[i] = 0.5 * (U_np1[i] + U_n[i]);
    }
    EnergyRecord rec;
    rec.t = t;
    const double vMv = dot(v, matvec(M, v));
    double wKw = dot(w, matvec(K, w));
    if (beta != 0.0) {
        wKw += beta * dot(w, matvec(M, w));
    }
    rec.kinetic = 0.5 * vMv;
    rec.potential = 0.5 * wKw;
    rec.E = rec.kinetic + rec.potential;
    return rec;
}

ErrorRecord error_norms(const Mesh& mesh, const std::vector<double>& U_interior,
                        const SpatialFn& exact, const GradientFn& exact_grad) {
    const std::vector<int> imap = interior_index_map(mesh);

    // Lift interior coefficients to all nodes; boundary values are zero.
    std::vector<double> U(mesh.n_nodes(), 0.0);
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        if (imap[i] >= 0) U[i] = U_interior[imap[i]];
    }

    double l2_sq = 0.0;
    double semi_sq = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double x[3] = {mesh.node_x[tri[0]], mesh.node_x[tri[1]], mesh.node_x[tri[2]]};
        const double y[3] = {mesh.node_y[tri[0]], mesh.node_y[tri[1]], mesh.node_y[tri[2]]};
        const double area =
            0.5 * ((x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]));
        const double inv2a = 1.0 / (2.0 * area);
        // Constant gradient of the P1 function on this triangle.
        double gx = 0.0, gy = 0.0;
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            gx += U[tri[a]] * (y[b] - y[c]) * inv2a;
            gy += U[tri[a]] * (x[c] - x[b]) * inv2a;
        }
        static constexpr double kPhi[3][3] = {
            {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
        const double scale = area / 3.0;
        for (int q = 0; q < 3; ++q) {
            const int e2 = (q + 1) % 3;
            const double mx = 0.5 * (x[q] + x[e2]);
            const double my = 0.5 * (y[q] + y[e2]);
            const double uh = kPhi[q][0] * U[tri[0]] + kPhi[q][1] * U[tri[1]] +
                              kPhi[q][2] * U[tri[2]];
            const double diff = uh - exact(mx, my);
            l2_sq += scale * diff * diff;
            if (exact_grad) {
                const auto [ex_gx, ex_gy] = exact_grad(mx, my);
                const double dgx = gx - ex_gx;
                const double dgy = gy - ex_gy;
                semi_sq += scale * (dgx * dgx + dgy * dgy);
            }
        }
    }

    double linf = 0.0;
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        const double diff = std::abs(U[i] - exact(mesh.node_x[i], mesh.node_y[i]));
        if (diff > linf) linf = diff;
    }

    ErrorRecord rec;
    rec.N = mesh.nx;
    rec.h = mesh.h;
    rec.L2 = std::sqrt(l2_sq);
    rec.H1 = std::sqrt(l2_sq + semi_sq);
    rec.Linf = linf;
    return rec;
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& hs) {
    if (errors.size() != hs.size()) {
        throw std::invalid_argument("convergence_rates: length mismatch");
    }
    if (errors.size() < 2) {
        throw std::invalid_argument("convergence_rates: need at least two records");
    }
    std::vector<double> rates;
    rates.reserve(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (hs[i] == hs[i + 1]) {
            throw std::invalid_argument("convergence_rates: repeated h");
        }
        if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0)) {
            rates.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        rates.push_back((std::log(errors[i]) - std::log(errors[i + 1])) /
                        std::log(hs[i] / hs[i + 1]));
    }
    return rates;
}

DecayFit fit_log_decay(const std::vector<double>& ts, const std::vector<double>& ys, double t_lo,
                       double t_hi) {
    if (ts.size() != ys.size()) {
        throw std::invalid_argument("fit_log_decay: length mismatch");
    }
    if (!(t_hi > t_lo)) {
        throw std::invalid_argument("fit_log_decay: empty window");
    }

    DecayFit fit;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;

    std::vector<double> t_sel, logy_sel;
    int in_window = 0;
    const double pad = 1e-12 * std::max(1.0, std::abs(t_hi));
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < t_lo - pad || ts[i] > t_hi + pad) continue;
        ++in_window;
        if (ys[i] > 1e-300) {
            t_sel.push_back(ts[i]);
            logy_sel.push_back(std::log(ys[i]));
        }
    }
    fit.points = static_cast<int>(t_sel.size());

    if (in_window > 0 && t_sel.empty()) {
        fit.fully_decayed = true;
        return fit;
    }
    if (t_sel.size() < 3) {
        throw std::invalid_argument("fit_log_decay: fewer than 3 usable records in window");
    }

    double st = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < t_sel.size(); ++i) {
        st += t_sel[i];
        sy += logy_sel[i];
    }
    const double n = static_cast<double>(t_sel.size());
    const double t_mean = st / n;
    const double y_mean = sy / n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t_sel.size(); ++i) {
        const double dt = t_sel[i] - t_mean;
        stt += dt * dt;
        sty += dt * (logy_sel[i] - y_mean);
    }
    fit.slope = sty / stt;
    fit.delta_est = -0.5 * fit.slope;
    double rss = 0.0;
    for (std::size_t i = 0; i < t_sel.size(); ++i) {
        const double pred = y_mean + fit.slope * (t_sel[i] - t_mean);
        const double r = logy_sel[i] - pred;
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

DecayFit fit_decay_rate(const std::vector<EnergyRecord>& records, double t_lo, double t_hi) {
    std::vector<double> ts, es;
    ts.reserve(records.size());
    es.reserve(records.size());
    for (const auto& rec : records) {
        ts.push_back(rec.t);
        es.push_back(rec.E);
    }
    return fit_log_decay(ts, es, t_lo, t_hi);
}

double theoretical_delta_max(double alpha, double lambda1) {
    if (!(alpha > 0.0) || !(lambda1 > 0.0)) {
        throw std::invalid_argument("theoretical_delta_max: alpha and lambda1 must be positive");
    }
    // Composed as min(alpha/3, lambda1/(6 alpha)) so each branch is a single
    // rounded division; the naive min(...)/3.0 loses the last bit.
    return std::min(alpha / 3.0, lambda1 / (6.0 * alpha));
}

std::pair<double, double> compensator_params(double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("compensator_params: delta must be positive");
    }
    const double alpha = delta * (3.0 + delta);
    const double beta = delta * (2.0 + 3.0 * delta + 2.0 * delta * delta);
    return {alpha, beta};
}

std::vector<double> steady_state_solve(const SparseMatrix& K, const SparseMatrix& M, double beta,
                                       const std::vector<double>& F, double tol) {
    const SparseMatrix A = (beta == 0.0) ? K : matrix_sum(1.0, K, beta, M);
    auto [u, report] = cg_solve(A, F, tol, 100000);
    if (!report.converged) {
        throw std::runtime_error("steady_state_solve: CG did not converge");
    }
    return u;
}

}  // namespace wavefem
