#include "wavefem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavefem {

double SparseMatrix::at(int i, int j) const {
    for (int p = row_offsets[i]; p < row_offsets[i + 1]; ++p) {
        if (cols[p] == j) return vals[p];
    }
    return 0.0;
}

SparseMatrix from_triplets(int n, std::vector<Triplet> triplets) {
    if (n < 0) throw std::invalid_argument("from_triplets: negative dimension");
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
            throw std::invalid_argument("from_triplets: triplet index out of range");
        }
    }

    // Stable sort keeps duplicates in insertion order, so their sum is
    // evaluated in a fixed order and results are bit-for-bit reproducible.
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });

    SparseMatrix A;
    A.n = n;
    A.row_offsets.assign(n + 1, 0);
    A.cols.reserve(triplets.size());
    A.vals.reserve(triplets.size());

    std::size_t p = 0;
    for (int row = 0; row < n; ++row) {
        while (p < triplets.size() && triplets[p].row == row) {
            const int col = triplets[p].col;
            double sum = 0.0;
            while (p < triplets.size() && triplets[p].row == row && triplets[p].col == col) {
                sum += triplets[p].value;
                ++p;
            }
            A.cols.push_back(col);
            A.vals.push_back(sum);
        }
        A.row_offsets[row + 1] = static_cast<int>(A.cols.size());
    }
    if (p != triplets.size()) {
        throw std::invalid_argument("from_triplets: row index out of range");
    }
    return A;
}

void matvec(const SparseMatrix& A, const std::vector<double>& x, std::vector<double>& y) {
    y.assign(A.n, 0.0);
    for (int i = 0; i < A.n; ++i) {
        double sum = 0.0;
        for (int p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p) {
            sum += A.vals[p] * x[A.cols[p]];
        }
        y[i] = sum;
    }
}

std::vector<double> matvec(const SparseMatrix& A, const std::vector<double>& x) {
    std::vector<double> y;
    matvec(A, x, y);
    return y;
}

SparseMatrix matrix_sum(double ca, const SparseMatrix& A, double cb, const SparseMatrix& B) {
    if (A.n != B.n) {
        throw std::invalid_argument("matrix_sum: dimension mismatch");
    }
    SparseMatrix C;
    C.n = A.n;
    C.row_offsets.assign(A.n + 1, 0);
    for (int i = 0; i < A.n; ++i) {
        int pa = A.row_offsets[i], ea = A.row_offsets[i + 1];
        int pb = B.row_offsets[i], eb = B.row_offsets[i + 1];
        while (pa < ea || pb < eb) {
            int col;
            double value;
            if (pa < ea && (pb >= eb || A.cols[pa] < B.cols[pb])) {
                col = A.cols[pa];
                value = ca * A.vals[pa];
                ++pa;
            } else if (pb < eb && (pa >= ea || B.cols[pb] < A.cols[pa])) {
                col = B.cols[pb];
                value = cb * B.vals[pb];
                ++pb;
            } else {
                col = A.cols[pa];
                value = ca * A.vals[pa] + cb * B.vals[pb];
                ++pa;
                ++pb;
            }
            C.cols.push_back(col);
            C.vals.push_back(value);
        }
        C.row_offsets[i + 1] = static_cast<int>(C.cols.size());
    }
    return C;
}

SparseMatrix matrix_scale(double c, const SparseMatrix& A) {
    SparseMatrix B = A;
    for (double& v : B.vals) v *= c;
    return B;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

double weighted_norm(const SparseMatrix& A, const std::vector<double>& x) {
    const std::vector<double> Ax = matvec(A, x);
    return std::sqrt(dot(x, Ax));
}

}  // namespace wavefem
