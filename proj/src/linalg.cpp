#include "hhtwist/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hht {

SparseMatrix::SparseMatrix(FieldPtr field, int rows, int cols) : field_(std::move(field)), cols_(cols), rows_(rows) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

void SparseMatrix::add(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows() || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
    if (v.is_zero()) return;
    auto& row = rows_[r];
    auto it = row.find(c);
    if (it == row.end()) {
        row.emplace(c, v);
        return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) row.erase(it);
}

Scalar SparseMatrix::at(int r, int c) const {
    auto& row = rows_.at(r);
    auto it = row.find(c);
    return it == row.end() ? field_->zero() : it->second;
}

Vec SparseMatrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector length does not match matrix columns");
    Vec out(rows_.size(), field_->zero());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (auto& [c, v] : rows_[r])
            if (!x[c].is_zero()) out[r] = out[r] + v * x[c];
    return out;
}

namespace {

/// a -= s * b
void axpy(SparseVec& a, const Scalar& s, const SparseVec& b) {
    for (auto& [c, v] : b) {
        Scalar d = s * v;
        auto it = a.find(c);
        if (it == a.end()) {
            a.emplace(c, -d);
        } else {
            it->second = it->second - d;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

void scale(SparseVec& a, const Scalar& s) {
    for (auto& [c, v] : a) v = v * s;
}

Scalar dot(const SparseVec& a, const Vec& b, const FieldPtr& f) {
    Scalar acc = f->zero();
    for (auto& [i, v] : a)
        if (!b[i].is_zero()) acc = acc + v * b[i];
    return acc;
}

}  // namespace

Solver::Solver(const SparseMatrix& m) : field_(m.field()), rows_(m.rows()), cols_(m.cols()) {
    std::map<int, std::size_t> where;  // pivot column -> index in pivots_
    std::vector<Pivot> piv;
    for (int r = 0; r < rows_; ++r) {
        SparseVec row = m.row(r);
        SparseVec combo{{r, field_->one()}};
        // reduce against the (fully reduced) pivot rows
        for (auto it = row.begin(); it != row.end();) {
            auto pw = where.find(it->first);
            if (pw == where.end()) {
                ++it;
                continue;
            }
            int col = it->first;
            Scalar s = it->second;
            const Pivot& p = piv[pw->second];
            axpy(row, s, p.row);
            axpy(combo, s, p.combo);
            it = row.upper_bound(col);
        }
        if (row.empty()) {
            nulls_.push_back(std::move(combo));
            continue;
        }
        int lead = row.begin()->first;
        Scalar inv = row.begin()->second.inverse();
        scale(row, inv);
        scale(combo, inv);
        for (auto& p : piv) {
            auto it = p.row.find(lead);
            if (it == p.row.end()) continue;
            Scalar s = it->second;
            axpy(p.row, s, row);
            axpy(p.combo, s, combo);
        }
        where[lead] = piv.size();
        piv.push_back(Pivot{lead, std::move(row), std::move(combo)});
    }
    pivots_ = std::move(piv);
    std::sort(pivots_.begin(), pivots_.end(), [](const Pivot& a, const Pivot& b) { return a.col < b.col; });
}

bool Solver::consistent(const Vec& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("right-hand side length does not match matrix rows");
    for (auto& z : nulls_)
        if (!dot(z, b, field_).is_zero()) return false;
    return true;
}

std::optional<Vec> Solver::solve(const Vec& b) const {
    if (!consistent(b)) return std::nullopt;
    Vec x(cols_, field_->zero());
    for (auto& p : pivots_) x[p.col] = dot(p.combo, b, field_);
    return x;
}

std::vector<Vec> Solver::kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (auto& p : pivots_) is_pivot[p.col] = true;
    std::vector<Vec> out;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols_, field_->zero());
        v[f] = field_->one();
        for (auto& p : pivots_) {
            auto it = p.row.find(f);
            if (it != p.row.end()) v[p.col] = -it->second;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vec> kernel_basis(const SparseMatrix& m) { return Solver(m).kernel(); }
std::optional<Vec> solve(const SparseMatrix& m, const Vec& b) { return Solver(m).solve(b); }
int rank(const SparseMatrix& m) { return Solver(m).rank(); }

}  // namespace hht
