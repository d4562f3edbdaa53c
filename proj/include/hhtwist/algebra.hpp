#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhtwist/lincomb.hpp"
#include "hhtwist/scalar.hpp"

namespace hht {

using Degree = std::vector<int>;
/// Element of an algebra as a combination of basis indices.
using AlgElem = LinComb<int>;

Degree operator+(const Degree& a, const Degree& b);
Degree operator-(const Degree& a, const Degree& b);
Degree concat(const Degree& a, const Degree& b);
std::string degree_str(const Degree& d);

struct AlgebraError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BasisElement {
    std::string label;
    Degree degree;
};

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Provenance of an algebra built as R (x)^t S: basis index i corresponds
/// to the pair (left_of[i], right_of[i]).
struct TensorFactors {
    AlgebraPtr left, right;
    Twist twist;
    std::vector<int> left_of, right_of;
    std::map<std::pair<int, int>, int> index;
    int pair(int r, int s) const { return index.at({r, s}); }
};

/// Finite-dimensional Z^m-graded associative algebra given by a basis and
/// structure constants. Construction checks the unit law and degree
/// additivity, and associativity on all basis triples for dim <= 64.
class GradedAlgebra {
public:
    GradedAlgebra(FieldPtr field, std::string name, int grading_rank, std::vector<BasisElement> basis, int unit,
                  const std::map<std::pair<int, int>, AlgElem>& products);

    const FieldPtr& field() const { return field_; }
    const std::string& name() const { return name_; }
    int grading_rank() const { return rank_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int unit() const { return unit_; }
    const std::string& label(int i) const { return basis_.at(i).label; }
    const Degree& degree(int i) const { return basis_.at(i).degree; }
    std::optional<int> find(const std::string& label) const;

    /// Structure constants of basis_i * basis_j.
    const AlgElem& product(int i, int j) const { return table_[static_cast<std::size_t>(i) * basis_.size() + j]; }
    AlgElem multiply(const AlgElem& a, const AlgElem& b) const;
    AlgElem basis_element(int i) const { return AlgElem(i, field_->one()); }
    AlgElem unit_element() const { return basis_element(unit_); }
    Degree zero_degree() const { return Degree(rank_, 0); }

    /// True when products of non-unit basis elements never involve the
    /// unit, so the non-unit span is an ideal.
    bool augmented() const { return augmented_; }

    const TensorFactors* factors() const { return factors_.get(); }

    std::string element_str(const AlgElem& a) const;

private:
    friend AlgebraPtr twisted_tensor_algebra(const AlgebraPtr&, const AlgebraPtr&, const Twist&);

    FieldPtr field_;
    std::string name_;
    int rank_;
    std::vector<BasisElement> basis_;
    int unit_;
    std::vector<AlgElem> table_;
    bool augmented_ = false;
    std::shared_ptr<const TensorFactors> factors_;
};

/// k[x]/(x^m) with basis 1, x, x^2, ... and |x| = 1.
AlgebraPtr truncated_poly(const FieldPtr& field, const std::string& label, int m);

/// R (x)^t S with (r(x)s)(r'(x)s') = t^<|r'|,|s|> rr' (x) ss'.
AlgebraPtr twisted_tensor_algebra(const AlgebraPtr& r, const AlgebraPtr& s, const Twist& t);

/// k<x,y>/(x^2, y^2, xy + q yx) realized as k[x]/(x^2) (x)^t k[y]/(y^2) with
/// t = -q^-1.
AlgebraPtr quantum_complete_intersection(const FieldPtr& field, const Scalar& q);

struct NormalizationSplit {
    int unit;
    std::vector<int> complement;
    /// section(i): the complement monomial representing the class of basis
    /// element i modulo the unit span, or -1 for the unit.
    std::vector<int> section;
};

NormalizationSplit normalization_split(const GradedAlgebra& a);

}  // namespace hht
