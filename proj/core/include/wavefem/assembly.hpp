#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wavefem/mesh.hpp"
#include "wavefem/sparse.hpp"

namespace wavefem {

using SpatialFn = std::function<double(double, double)>;
using SpaceTimeFn = std::function<double(double, double, double)>;

/// Scalar coefficient of the operator or damping term: either a constant or
/// a function of position. The constant case is distinguishable so callers
/// can take exact shortcuts (e.g. D = alpha*M).
class CoefficientField {
  public:
    static CoefficientField constant(double value) {
        CoefficientField c;
        c.is_constant_ = true;
        c.value_ = value;
        return c;
    }

    static CoefficientField function(SpatialFn fn) {
        CoefficientField c;
        c.is_constant_ = false;
        c.fn_ = std::move(fn);
        return c;
    }

    double operator()(double x, double y) const { return is_constant_ ? value_ : fn_(x, y); }
    bool is_constant() const { return is_constant_; }
    double constant_value() const { return value_; }

  private:
    bool is_constant_ = true;
    double value_ = 0.0;
    SpatialFn fn_;
};

/// Min and max of a coefficient over all quadrature points of the mesh.
struct CoefficientBounds {
    double min;
    double max;
};

/// All integrals use the 3-point edge-midpoint rule (degree-2 exact), so the
/// P1 mass matrix and load vectors for polynomial data are integrated exactly.

/// Weighted mass matrix over interior nodes: (i,j) = sum_T int_T w phi_i phi_j,
/// Dirichlet rows/columns eliminated. Rejects non-positive weight at any
/// quadrature point, naming the offending location.
SparseMatrix assemble_weighted_mass(const Mesh& mesh, const CoefficientField& weight);

/// Same integral over all nodes, no elimination. Used by conservation checks
/// (total mass, row sums) that need the boundary coupling present.
SparseMatrix assemble_weighted_mass_full(const Mesh& mesh, const CoefficientField& weight);

/// Stiffness matrix of the form a(v,w) = sum_ij (a_ij d_j v, d_i w) + (a0 v, w)
/// over interior nodes. Gradients are constant per triangle; coefficients are
/// sampled at the edge midpoints. Rejects a coefficient matrix that is not
/// positive definite at a sample point, and negative a0.
SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientField& a11,
                                const CoefficientField& a12, const CoefficientField& a22,
                                const CoefficientField& a0);

/// Pre-elimination stiffness over all nodes (row-sum and symmetry checks).
SparseMatrix assemble_stiffness_full(const Mesh& mesh, const CoefficientField& a11,
                                     const CoefficientField& a12, const CoefficientField& a22,
                                     const CoefficientField& a0);

/// Load vector over interior nodes at time t: entry i = sum_T int_T f(x,t) phi_i.
std::vector<double> assemble_load(const Mesh& mesh, const SpaceTimeFn& f, double t);

/// Nodal interpolant of g restricted to interior nodes: entry i = g(node_i).
std::vector<double> nodal_interpolant(const Mesh& mesh, const SpatialFn& g);

/// Min/max of a coefficient over all quadrature points (the sampled range of
/// a spatially varying damping field).
CoefficientBounds coefficient_bounds(const Mesh& mesh, const CoefficientField& c);

}  // namespace wavefem
