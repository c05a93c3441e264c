#include "wavefem/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wavefem {

namespace {

// Hat-function values at the three edge midpoints (m01, m12, m20).
constexpr double kPhiAtMid[3][3] = {
    {0.5, 0.5, 0.0},
    {0.0, 0.5, 0.5},
    {0.5, 0.0, 0.5},
};

struct TriangleGeometry {
    double area;
    double mid_x[3], mid_y[3];
    double grad_x[3], grad_y[3];  // constant gradient of each hat function
};

TriangleGeometry triangle_geometry(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const double x[3] = {mesh.node_x[tri[0]], mesh.node_x[tri[1]], mesh.node_x[tri[2]]};
    const double y[3] = {mesh.node_y[tri[0]], mesh.node_y[tri[1]], mesh.node_y[tri[2]]};

    TriangleGeometry g;
    g.area = 0.5 * ((x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]));
    for (int e = 0; e < 3; ++e) {
        g.mid_x[e] = 0.5 * (x[e] + x[(e + 1) % 3]);
        g.mid_y[e] = 0.5 * (y[e] + y[(e + 1) % 3]);
    }
    const double inv2a = 1.0 / (2.0 * g.area);
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        g.grad_x[a] = (y[b] - y[c]) * inv2a;
        g.grad_y[a] = (x[c] - x[b]) * inv2a;
    }
    return g;
}

SparseMatrix restrict_to_interior(const Mesh& mesh, const SparseMatrix& full) {
    const std::vector<int> imap = interior_index_map(mesh);
    const int n_int = interior_count(mesh);
    std::vector<Triplet> triplets;
    triplets.reserve(full.nnz());
    for (int i = 0; i < full.n; ++i) {
        if (imap[i] < 0) continue;
        for (int p = full.row_offsets[i]; p < full.row_offsets[i + 1]; ++p) {
            const int j = full.cols[p];
            if (imap[j] < 0) continue;
            triplets.push_back({imap[i], imap[j], full.vals[p]});
        }
    }
    return from_triplets(n_int, triplets);
}

SparseMatrix mass_full(const Mesh& mesh, const CoefficientField& weight) {
    std::vector<Triplet> triplets;
    triplets.reserve(mesh.n_triangles() * 9);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = triangle_geometry(mesh, t);
        const auto& tri = mesh.triangles[t];
        const double scale = g.area / 3.0;
        for (int q = 0; q < 3; ++q) {
            const double w = weight(g.mid_x[q], g.mid_y[q]);
            if (!(w > 0.0)) {
                throw std::invalid_argument(
                    "assemble_weighted_mass: non-positive weight " + std::to_string(w) +
                    " at quadrature point (" + std::to_string(g.mid_x[q]) + ", " +
                    std::to_string(g.mid_y[q]) + ")");
            }
            for (int a = 0; a < 3; ++a) {
                const double wa = kPhiAtMid[q][a];
                if (wa == 0.0) continue;
                for (int b = 0; b < 3; ++b) {
                    const double wb = kPhiAtMid[q][b];
                    if (wb == 0.0) continue;
                    triplets.push_back({tri[a], tri[b], scale * w * wa * wb});
                }
            }
        }
    }
    return from_triplets(mesh.n_nodes(), triplets);
}

SparseMatrix stiffness_full(const Mesh& mesh, const CoefficientField& a11,
                            const CoefficientField& a12, const CoefficientField& a22,
                            const CoefficientField& a0) {
    std::vector<Triplet> triplets;
    triplets.reserve(mesh.n_triangles() * 9);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = triangle_geometry(mesh, t);
        const auto& tri = mesh.triangles[t];
        const double scale = g.area / 3.0;
        for (int q = 0; q < 3; ++q) {
            const double x = g.mid_x[q], y = g.mid_y[q];
            const double c11 = a11(x, y), c12 = a12(x, y), c22 = a22(x, y);
            // Positive definiteness of the symmetric 2x2 coefficient matrix.
            if (!(c11 > 0.0) || !(c11 * c22 - c12 * c12 > 0.0)) {
                throw std::invalid_argument(
                    "assemble_stiffness: coefficient matrix not positive definite at (" +
                    std::to_string(x) + ", " + std::to_string(y) + ")");
            }
            const double c0 = a0(x, y);
            if (c0 < 0.0) {
                throw std::invalid_argument("assemble_stiffness: negative a0 at (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
            }
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    // grad term: grad(phi_b)^T a grad(phi_a), a21 = a12.
                    const double grad_term = c11 * g.grad_x[b] * g.grad_x[a] +
                                             c12 * (g.grad_x[b] * g.grad_y[a] +
                                                    g.grad_y[b] * g.grad_x[a]) +
                                             c22 * g.grad_y[b] * g.grad_y[a];
                    const double mass_term = c0 * kPhiAtMid[q][a] * kPhiAtMid[q][b];
                    triplets.push_back({tri[a], tri[b], scale * (grad_term + mass_term)});
                }
            }
        }
    }
    return from_triplets(mesh.n_nodes(), triplets);
}

}  // namespace

SparseMatrix assemble_weighted_mass(const Mesh& mesh, const CoefficientField& weight) {
    return restrict_to_interior(mesh, mass_full(mesh, weight));
}

SparseMatrix assemble_weighted_mass_full(const Mesh& mesh, const CoefficientField& weight) {
    return mass_full(mesh, weight);
}

SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientField& a11,
                                const CoefficientField& a12, const CoefficientField& a22,
                                const CoefficientField& a0) {
    return restrict_to_interior(mesh, stiffness_full(mesh, a11, a12, a22, a0));
}

SparseMatrix assemble_stiffness_full(const Mesh& mesh, const CoefficientField& a11,
                                     const CoefficientField& a12, const CoefficientField& a22,
                                     const CoefficientField& a0) {
    return stiffness_full(mesh, a11, a12, a22, a0);
}

std::vector<double> assemble_load(const Mesh& mesh, const SpaceTimeFn& f, double t) {
    const std::vector<int> imap = interior_index_map(mesh);
    std::vector<double> load(interior_count(mesh), 0.0);
    for (int tr = 0; tr < mesh.n_triangles(); ++tr) {
        const TriangleGeometry g = triangle_geometry(mesh, tr);
        const auto& tri = mesh.triangles[tr];
        const double scale = g.area / 3.0;
        for (int q = 0; q < 3; ++q) {
            const double fv = f(g.mid_x[q], g.mid_y[q], t);
            for (int a = 0; a < 3; ++a) {
                const int ia = imap[tri[a]];
                if (ia < 0) continue;
                load[ia] += scale * fv * kPhiAtMid[q][a];
            }
        }
    }
    return load;
}

std::vector<double> nodal_interpolant(const Mesh& mesh, const SpatialFn& g) {
    std::vector<double> values(interior_count(mesh), 0.0);
    int next = 0;
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        if (mesh.boundary[i]) continue;
        values[next++] = g(mesh.node_x[i], mesh.node_y[i]);
    }
    return values;
}

CoefficientBounds coefficient_bounds(const Mesh& mesh, const CoefficientField& c) {
    CoefficientBounds bounds{0.0, 0.0};
    bool first = true;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleGeometry g = triangle_geometry(mesh, t);
        for (int q = 0; q < 3; ++q) {
            const double v = c(g.mid_x[q], g.mid_y[q]);
            if (first) {
                bounds.min = bounds.max = v;
                first = false;
            } else {
                if (v < bounds.min) bounds.min = v;
                if (v > bounds.max) bounds.max = v;
            }
        }
    }
    return bounds;
}

}  // namespace wavefem
