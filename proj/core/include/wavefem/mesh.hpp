#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wavefem {

/// Structured triangulation of an axis-aligned rectangle.
///
/// The rectangle is divided into nx*ny uniform cells and each cell is split
/// into two triangles by the diagonal from its lower-left to its upper-right
/// corner. Nodes are ordered row-major, y-major then x (node id = j*(nx+1)+i).
/// Triangles are counter-clockwise. The mesh parameter h is the maximum edge
/// length, which for this split is the cell diagonal.
struct Mesh {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    std::vector<double> node_x;
    std::vector<double> node_y;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::uint8_t> boundary;  // 1 iff the node lies on the rectangle edge
    double h = 0.0;

    int n_nodes() const { return static_cast<int>(node_x.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
};

/// Builds the uniform diagonal-split mesh. Rejects nx < 1, ny < 1 and
/// degenerate intervals. Construction is deterministic: identical inputs
/// produce bit-identical meshes.
Mesh build_rect_mesh(int nx, int ny, double x0, double x1, double y0, double y1);

/// Signed area of triangle t (positive for this mesh's orientation).
double triangle_area(const Mesh& mesh, int t);

/// Maps node ids to dense interior indices 0..n_int-1, order-preserving with
/// node ordering; boundary nodes map to -1.
std::vector<int> interior_index_map(const Mesh& mesh);

/// Number of interior (non-boundary) nodes.
int interior_count(const Mesh& mesh);

/// Plain-text dump: header "nodes <N> triangles <T>", then one "x y flag"
/// line per node, then one "i j k" line per triangle.
void write_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace wavefem
