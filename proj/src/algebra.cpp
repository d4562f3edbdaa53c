#include "hhtwist/algebra.hpp"

#include <set>

namespace hht {

Degree operator+(const Degree& a, const Degree& b) {
    if (a.size() != b.size()) throw std::invalid_argument("degree rank mismatch");
    Degree out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Degree operator-(const Degree& a, const Degree& b) {
    if (a.size() != b.size()) throw std::invalid_argument("degree rank mismatch");
    Degree out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

Degree concat(const Degree& a, const Degree& b) {
    Degree out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string degree_str(const Degree& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
    return out + ")";
}

GradedAlgebra::GradedAlgebra(FieldPtr field, std::string name, int grading_rank, std::vector<BasisElement> basis, int unit,
                             const std::map<std::pair<int, int>, AlgElem>& products)
    : field_(std::move(field)), name_(std::move(name)), rank_(grading_rank), basis_(std::move(basis)), unit_(unit) {
    const int n = dim();
    if (n == 0) throw AlgebraError("algebra has an empty basis");
    if (unit_ < 0 || unit_ >= n) throw AlgebraError("unit not in basis");
    std::set<std::string> seen;
    for (auto& b : basis_) {
        if (!seen.insert(b.label).second) throw AlgebraError("duplicate basis label '" + b.label + "'");
        if (static_cast<int>(b.degree.size()) != rank_)
            throw AlgebraError("basis element '" + b.label + "' has a degree of the wrong rank");
    }
    if (basis_[unit_].degree != zero_degree()) throw AlgebraError("unit must have degree zero");

    table_.assign(static_cast<std::size_t>(n) * n, AlgElem());
    for (auto& [ij, val] : products) {
        auto [i, j] = ij;
        if (i < 0 || i >= n || j < 0 || j >= n) throw AlgebraError("product index out of range");
        for (auto& [k, c] : val) {
            if (k < 0 || k >= n) throw AlgebraError("product term index out of range");
            if (basis_[k].degree != basis_[i].degree + basis_[j].degree)
                throw AlgebraError("product " + label(i) + "*" + label(j) + " has a term " + label(k) + " of the wrong degree");
        }
        table_[static_cast<std::size_t>(i) * n + j] = val;
    }
    for (int i = 0; i < n; ++i) {
        AlgElem e = basis_element(i);
        if (!(product(unit_, i) == e) || !(product(i, unit_) == e))
            throw AlgebraError("unit law fails on '" + label(i) + "'");
    }
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    AlgElem lhs = multiply(product(a, b), basis_element(c));
                    AlgElem rhs = multiply(basis_element(a), product(b, c));
                    if (!(lhs == rhs))
                        throw AlgebraError("associativity fails on (" + label(a) + "," + label(b) + "," + label(c) + ")");
                }
    }
    augmented_ = true;
    for (int i = 0; i < n && augmented_; ++i)
        for (int j = 0; j < n; ++j)
            if (i != unit_ && j != unit_ && product(i, j).find(unit_)) {
                augmented_ = false;
                break;
            }
}

std::optional<int> GradedAlgebra::find(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
        if (basis_[i].label == label) return i;
    return std::nullopt;
}

AlgElem GradedAlgebra::multiply(const AlgElem& a, const AlgElem& b) const {
    AlgElem out;
    for (auto& [i, ci] : a)
        for (auto& [j, cj] : b) out.add(product(i, j), ci * cj);
    return out;
}

std::string GradedAlgebra::element_str(const AlgElem& a) const {
    if (a.empty()) return "0";
    std::string out;
    for (auto& [i, c] : a) {
        std::string cs = c.str();
        std::string term;
        bool unit_label = i == unit_;
        if (c.is_one())
            term = unit_label ? "1" : label(i);
        else if ((-c).is_one())
            term = unit_label ? "-1" : "-" + label(i);
        else {
            bool simple = cs.find_first_of("+-", 1) == std::string::npos && cs.find('/') == std::string::npos;
            std::string coeff = simple ? cs : "(" + cs + ")";
            term = unit_label ? coeff : coeff + "*" + label(i);
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

AlgebraPtr truncated_poly(const FieldPtr& field, const std::string& label, int m) {
    if (m < 2) throw AlgebraError("truncated polynomial algebra needs m >= 2");
    std::vector<BasisElement> basis;
    for (int k = 0; k < m; ++k) {
        std::string l = k == 0 ? "1" : (k == 1 ? label : label + "^" + std::to_string(k));
        basis.push_back({l, Degree{k}});
    }
    std::map<std::pair<int, int>, AlgElem> prod;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i + j < m) prod[{i, j}] = AlgElem(i + j, field->one());
    return std::make_shared<GradedAlgebra>(field, "k[" + label + "]/(" + label + "^" + std::to_string(m) + ")", 1,
                                           std::move(basis), 0, prod);
}

AlgebraPtr twisted_tensor_algebra(const AlgebraPtr& r, const AlgebraPtr& s, const Twist& t) {
    if (t.rows() != r->grading_rank() || t.cols() != s->grading_rank())
        throw AlgebraError("twist dimensions do not match the grading ranks");
    if (!r->field()->same(*s->field()) || !r->field()->same(*t.field()))
        throw AlgebraError("twisted tensor product needs a common field");
    auto f = std::make_shared<TensorFactors>();
    f->left = r;
    f->right = s;
    f->twist = t;
    std::vector<BasisElement> basis;
    std::vector<std::string> plain;
    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < s->dim(); ++j) {
            f->index[{i, j}] = static_cast<int>(basis.size());
            f->left_of.push_back(i);
            f->right_of.push_back(j);
            std::string l;
            if (i == r->unit())
                l = s->label(j);
            else if (j == s->unit())
                l = r->label(i);
            else
                l = r->label(i) + s->label(j);
            plain.push_back(l);
            basis.push_back({l, concat(r->degree(i), s->degree(j))});
        }
    std::set<std::string> uniq(plain.begin(), plain.end());
    if (uniq.size() != plain.size())
        for (std::size_t k = 0; k < basis.size(); ++k)
            basis[k].label = r->label(f->left_of[k]) + "_" + s->label(f->right_of[k]);

    std::map<std::pair<int, int>, AlgElem> prod;
    const int n = static_cast<int>(basis.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int r1 = f->left_of[a], s1 = f->right_of[a], r2 = f->left_of[b], s2 = f->right_of[b];
            const AlgElem& rr = r->product(r1, r2);
            const AlgElem& ss = s->product(s1, s2);
            if (rr.empty() || ss.empty()) continue;
            Scalar tw = t.eval(r->degree(r2), s->degree(s1));
            AlgElem out;
            for (auto& [i, ci] : rr)
                for (auto& [j, cj] : ss) out.add(f->pair(i, j), tw * ci * cj);
            prod[{a, b}] = out;
        }
    auto alg = std::make_shared<GradedAlgebra>(r->field(), r->name() + " (x)^t " + s->name(),
                                               r->grading_rank() + s->grading_rank(), std::move(basis),
                                               f->pair(r->unit(), s->unit()), prod);
    alg->factors_ = f;
    return alg;
}

AlgebraPtr quantum_complete_intersection(const FieldPtr& field, const Scalar& q) {
    if (q.is_zero()) throw AlgebraError("q must be nonzero");
    auto r = truncated_poly(field, "x", 2);
    auto s = truncated_poly(field, "y", 2);
    return twisted_tensor_algebra(r, s, Twist(field, 1, 1, {-q.inverse()}));
}

NormalizationSplit normalization_split(const GradedAlgebra& a) {
    NormalizationSplit out;
    out.unit = a.unit();
    out.section.assign(a.dim(), -1);
    for (int i = 0; i < a.dim(); ++i) {
        if (i == a.unit()) continue;
        out.complement.push_back(i);
        out.section[i] = i;
    }
    return out;
}

}  // namespace hht
