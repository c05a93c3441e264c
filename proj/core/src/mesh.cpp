#include "wavefem/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace wavefem {

Mesh build_rect_mesh(int nx, int ny, double x0, double x1, double y0, double y1) {
    if (nx < 1 || ny < 1) {
        throw std::invalid_argument("build_rect_mesh: subdivision counts must be >= 1");
    }
    if (!(x1 > x0) || !(y1 > y0)) {
        throw std::invalid_argument("build_rect_mesh: empty or degenerate interval");
    }

    Mesh mesh;
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.x0 = x0;
    mesh.x1 = x1;
    mesh.y0 = y0;
    mesh.y1 = y1;

    const int nnodes = (nx + 1) * (ny + 1);
    mesh.node_x.reserve(nnodes);
    mesh.node_y.reserve(nnodes);
    mesh.boundary.reserve(nnodes);

    const double dx = (x1 - x0) / nx;
    const double dy = (y1 - y0) / ny;

    for (int j = 0; j <= ny; ++j) {
        // Endpoints are set exactly so boundary coordinates never drift.
        const double y = (j == ny) ? y1 : y0 + j * dy;
        for (int i = 0; i <= nx; ++i) {
            const double x = (i == nx) ? x1 : x0 + i * dx;
            mesh.node_x.push_back(x);
            mesh.node_y.push_back(y);
            const bool on_edge = (i == 0 || i == nx || j == 0 || j == ny);
            mesh.boundary.push_back(on_edge ? 1 : 0);
        }
    }

    mesh.triangles.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int ll = j * (nx + 1) + i;
            const int lr = ll + 1;
            const int ul = ll + (nx + 1);
            const int ur = ul + 1;
            mesh.triangles.push_back({ll, lr, ur});
            mesh.triangles.push_back({ll, ur, ul});
        }
    }

    mesh.h = std::sqrt(dx * dx + dy * dy);
    return mesh;
}

double triangle_area(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const double ax = mesh.node_x[tri[0]], ay = mesh.node_y[tri[0]];
    const double bx = mesh.node_x[tri[1]], by = mesh.node_y[tri[1]];
    const double cx = mesh.node_x[tri[2]], cy = mesh.node_y[tri[2]];
    return 0.5 * ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay));
}

std::vector<int> interior_index_map(const Mesh& mesh) {
    std::vector<int> map(mesh.n_nodes(), -1);
    int next = 0;
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        if (!mesh.boundary[i]) {
            map[i] = next++;
        }
    }
    return map;
}

int interior_count(const Mesh& mesh) {
    int count = 0;
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        if (!mesh.boundary[i]) ++count;
    }
    return count;
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    out << "nodes " << mesh.n_nodes() << " triangles " << mesh.n_triangles() << "\n";
    char buf[128];
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g %.12g %d\n", mesh.node_x[i], mesh.node_y[i],
                      static_cast<int>(mesh.boundary[i]));
        out << buf;
    }
    for (const auto& tri : mesh.triangles) {
        out << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
    }
}

}  // namespace wavefem
