#pragma once

#include <vector>

namespace wavefem {

/// One (row, col, value) contribution destined for a sparse matrix.
struct Triplet {
    int row;
    int col;
    double value;
};

/// Square sparse matrix in compressed-row (CSR) form. Column indices are
/// strictly increasing within each row. Matrices assembled by this project
/// are symmetric; symmetry is a property of the inputs, not enforced here.
struct SparseMatrix {
    int n = 0;
    std::vector<int> row_offsets;  // size n+1
    std::vector<int> cols;
    std::vector<double> vals;

    int nnz() const { return static_cast<int>(vals.size()); }

    /// Value at (i, j); zero when the entry is not stored.
    double at(int i, int j) const;
};

/// Builds CSR from triplets, summing duplicates. Duplicate entries are summed
/// in their input order (stable sort), so assembly loops produce bit-identical
/// matrices on every run.
SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

/// y = A x.
void matvec(const SparseMatrix& A, const std::vector<double>& x, std::vector<double>& y);

/// A x as a fresh vector.
std::vector<double> matvec(const SparseMatrix& A, const std::vector<double>& x);

/// ca*A + cb*B, combining sparsity patterns.
SparseMatrix matrix_sum(double ca, const SparseMatrix& A, double cb, const SparseMatrix& B);

/// Entrywise scale: c*A.
SparseMatrix matrix_scale(double c, const SparseMatrix& A);

/// x . y
double dot(const std::vector<double>& x, const std::vector<double>& y);

/// sqrt(x . A x); the M- or K-weighted norm used by energy bookkeeping.
double weighted_norm(const SparseMatrix& A, const std::vector<double>& x);

}  // namespace wavefem
