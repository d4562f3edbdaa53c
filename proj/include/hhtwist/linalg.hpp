#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hhtwist/scalar.hpp"

namespace hht {

/// Sparse vector: index -> nonzero scalar.
using SparseVec = std::map<int, Scalar>;
using Vec = std::vector<Scalar>;

class SparseMatrix {
public:
    SparseMatrix(FieldPtr field, int rows, int cols);

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    /// Adds v to entry (r, c); zero results are erased.
    void add(int r, int c, const Scalar& v);
    Scalar at(int r, int c) const;
    const SparseVec& row(int r) const { return rows_.at(r); }

    Vec apply(const Vec& x) const;

private:
    FieldPtr field_;
    int cols_;
    std::vector<SparseVec> rows_;
};

/// Reduced row echelon form of a matrix, with each reduced row's
/// expression in terms of the original rows. Columns are processed left to
/// right; the reduced form is unique, so results do not depend on row order.
class Solver {
public:
    explicit Solver(const SparseMatrix& m);

    int rank() const { return static_cast<int>(pivots_.size()); }
    int cols() const { return cols_; }

    /// A solution of M x = b with free variables zero, or nothing when the
    /// system is inconsistent.
    std::optional<Vec> solve(const Vec& b) const;
    /// Basis of {v : M v = 0}, one vector per non-pivot column in ascending
    /// order.
    std::vector<Vec> kernel() const;
    /// Whether b lies in the column space.
    bool consistent(const Vec& b) const;

private:
    struct Pivot {
        int col;
        SparseVec row;
        SparseVec combo;
    };
    FieldPtr field_;
    int rows_, cols_;
    std::vector<Pivot> pivots_;      // sorted by column
    std::vector<SparseVec> nulls_;   // row combinations reducing to zero
};

std::vector<Vec> kernel_basis(const SparseMatrix& m);
std::optional<Vec> solve(const SparseMatrix& m, const Vec& b);
int rank(const SparseMatrix& m);

}  // namespace hht
