#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhtwist/diagonal.hpp"
#include "hhtwist/expr.hpp"
#include "hhtwist/linalg.hpp"

namespace hht {

struct CochainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Homogeneous Lambda^e-linear map K_n -> Lambda of internal degree a, given
/// by its values on the generators of K_n. Degree -1 cochains are zero and
/// carry no values.
struct Cochain {
    ComplexPtr k;
    int n = 0;
    Degree a;
    std::vector<AlgElem> values;

    bool is_zero() const;
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain scaled(const Scalar& c) const;
    bool operator==(const Cochain& o) const { return n == o.n && a == o.a && values == o.values; }
};

Cochain zero_cochain(const ComplexPtr& k, int n, const Degree& a);
/// c * b on the generator w, zero elsewhere.
Cochain monomial_cochain(const ComplexPtr& k, GenRef w, int b, const Scalar& c);
/// Throws CochainError when some value has the wrong internal degree.
void validate(const Cochain& f);

/// sum c * lambda f(g) rho over the terms of a chain, counting only
/// generators of degree f.n.
AlgElem evaluate(const Cochain& f, const Chain<1>& c);
/// (d*f)(w) = f(d w) on generators of degree n+1.
Cochain coboundary(const Cochain& f);

/// f o iota as a cochain on the source of iota.
Cochain pullback(const Cochain& f, const ChainMap& iota, const ComplexPtr& source);

/// Parses a sum of terms `scalar * monomial * generator`, where generator
/// is a label of the complex or e(i,...) with indices in terms of r.
Cochain parse_cochain(const ComplexPtr& k, std::string_view text, std::optional<long> r = std::nullopt);
std::string cochain_str(const Cochain& f);

/// Cohomology in homological degree n and internal degree a.
struct HHCell {
    int n = 0;
    Degree a;
    /// Monomial coordinates of C^{n,a}: (generator index, basis index).
    std::vector<std::pair<int, int>> columns;
    int cocycle_dim = 0;
    int coboundary_dim = 0;
    std::vector<Cochain> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

/// Hochschild cohomology of the algebra of K computed on K, with the
/// products defined by a diagonal and a contracting homotopy phi.
class Hochschild {
public:
    Hochschild(ComplexPtr k, DiagonalPtr delta, HomotopyPtr phi);

    const ComplexPtr& complex() const { return k_; }
    const GradedAlgebra& algebra() const { return *k_->algebra(); }
    const DiagonalPtr& diagonal() const { return delta_; }
    const HomotopyPtr& homotopy() const { return phi_; }

    /// Internal degrees a for which C^{n,a} is nonzero, ascending.
    std::vector<Degree> internal_degrees(int n) const;
    const HHCell& cell(int n, const Degree& a) const;
    /// All nonzero cells of degree n, computed in parallel.
    std::vector<const HHCell*> cohomology(int n) const;
    int dimension(int n) const;

    bool is_cocycle(const Cochain& f) const;
    /// Coordinates of the class of f in cell(f.n, f.a).basis. Throws
    /// CochainError when f is not a cocycle.
    std::vector<Scalar> reduce(const Cochain& f) const;
    bool is_coboundary(const Cochain& f) const;
    bool same_class(const Cochain& f, const Cochain& g) const;
    /// sum c_k basis_k as a cochain.
    Cochain class_cochain(int n, const Degree& a, const std::vector<Scalar>& coords) const;

    Cochain cup(const Cochain& f, const Cochain& g) const;
    /// f o phi o (1 (x) g (x) 1) o Delta^(2) with the sign (-1)^(l j) on
    /// terms whose first factor has degree l.
    Cochain circle(const Cochain& f, const Cochain& g) const;
    /// f o g - (-1)^((i-1)(j-1)) g o f.
    Cochain bracket(const Cochain& f, const Cochain& g) const;

private:
    struct Solved;
    std::shared_ptr<const Solved> solved(int n, const Degree& a) const;
    std::shared_ptr<const Solved> compute(int n, const Degree& a) const;
    void check_same(const Cochain& f) const;

    ComplexPtr k_;
    DiagonalPtr delta_;
    Diagonal2Ptr delta2_;
    HomotopyPtr phi_;

    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Degree>, std::shared_ptr<const Solved>> solvers_;
};

// ---------------------------------------------------------------- Gerstenhaber laws

/// Each check runs over all pairs or triples of the given cocycles whose
/// results fit in the resolution of h.
CheckReport check_cup_commutative(const Hochschild& h, const std::vector<Cochain>& gens);
CheckReport check_bracket_antisymmetry(const Hochschild& h, const std::vector<Cochain>& gens);
CheckReport check_jacobi(const Hochschild& h, const std::vector<Cochain>& gens);
/// [f g, h] - [f, h] g - (-1)^(i(l-1)) f [g, h] is a coboundary.
CheckReport check_derivation(const Hochschild& h, const std::vector<Cochain>& gens);
/// g cup f - (-1)^(mm') f cup g = (-1)^m' d*(f o g) exactly, for cocycles f, g
/// of degrees m, m'.
CheckReport check_cup_commutator(const Hochschild& h, const std::vector<Cochain>& gens);

/// Basis cochains of HH^n for all n <= max_degree.
std::vector<Cochain> cohomology_basis(const Hochschild& h, int max_degree);

// ---------------------------------------------------------------- twisted tensor products

/// A subgroup d_1 Z (+) ... (+) d_m Z of Z^m; d_u = 0 means the zero summand.
struct Lattice {
    std::vector<long> index;
    bool contains(const Degree& a) const;
    std::string str() const;
};

/// A' and B' for a twist between Z^m and Z^n: d_u is the lcm of the orders
/// of the entries in row u (column u for B'), or 0 if one is infinite.
std::pair<Lattice, Lattice> subgroup_restriction(const Twist& t);

/// Basis cochains of HH^{n,a} for all a in the lattice.
std::vector<Cochain> restricted_basis(const Hochschild& h, const Lattice& l, int n);

/// coeff * (left (x) right) in HH(R) (x) HH(S).
struct TensorTerm {
    Scalar coeff;
    Cochain left, right;
};
using TensorCochain = std::vector<TensorTerm>;

TensorCochain tensor_cup(const Hochschild& hr, const Hochschild& hs, const TensorTerm& x, const TensorTerm& y);
TensorCochain tensor_bracket(const Hochschild& hr, const Hochschild& hs, const TensorTerm& x, const TensorTerm& y);

/// The cochain on Tot(P (x)^t Q) sending e(w,v) to alpha(w) (x) beta(v).
Cochain transport(const ComplexPtr& tot, const TensorCochain& c);

struct MainTheoremReport {
    Lattice a_prime, b_prime;
    int classes = 0;
    CheckReport brackets{"tensor bracket", 0, {}};
    CheckReport cups{"tensor cup", 0, {}};
    bool ok() const { return brackets.ok() && cups.ok(); }
};

/// Compares brackets and cups of transported restricted classes on
/// Tot(nbar(R) (x)^t nbar(S)) with the tensor Gerstenhaber structure, for
/// all pairs of basis classes whose bracket has degree <= max_degree.
MainTheoremReport verify_main_theorem(const AlgebraPtr& r, const AlgebraPtr& s, const Twist& t, int max_degree);

}  // namespace hht
