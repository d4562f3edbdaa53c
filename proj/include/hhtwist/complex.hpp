#pragma once

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hhtwist/algebra.hpp"
#include "hhtwist/lincomb.hpp"

namespace hht {

/// A free generator: homological degree and index within that degree.
struct GenRef {
    int deg = 0;
    int idx = 0;
    auto operator<=>(const GenRef&) const = default;
};

/// Basis element of K^{(x)_Lambda k}: left (x) g_1 (x) m_1 (x) ... (x) g_k (x) right,
/// with all coefficients basis indices of the algebra.
template <std::size_t K>
struct Tensor {
    int left = 0;
    std::array<GenRef, K> gens{};
    std::array<int, K - 1> mids{};
    int right = 0;
    auto operator<=>(const Tensor&) const = default;
};

template <std::size_t K>
using Chain = LinComb<Tensor<K>>;

/// A tensor with its outer coefficients stripped; maps of bimodules are
/// determined by their values on cores.
template <std::size_t K>
struct Core {
    std::array<GenRef, K> gens{};
    std::array<int, K - 1> mids{};
    auto operator<=>(const Core&) const = default;
};

template <std::size_t K>
Core<K> core_of(const Tensor<K>& t) {
    return Core<K>{t.gens, t.mids};
}

template <std::size_t K>
Tensor<K> with_outer(const Core<K>& c, int left, int right) {
    return Tensor<K>{left, c.gens, c.mids, right};
}

template <std::size_t K>
int total_degree(const Core<K>& c) {
    int n = 0;
    for (auto& g : c.gens) n += g.deg;
    return n;
}

struct Generator {
    std::string label;
    Degree degree;
    std::vector<int> tag;
};

class FreeBimoduleComplex;
using ComplexPtr = std::shared_ptr<const FreeBimoduleComplex>;

enum class ComplexKind { bar, normalized_bar, koszul_dual_numbers, total, tensor_power, custom };

/// Free Lambda-bimodule complex K_n = Lambda (x) kW_n (x) Lambda, truncated at a
/// maximal degree. Generators carry a tag that identifies them structurally:
/// a word of basis indices for bar complexes, {n} for Koszul complexes,
/// {p.deg, p.idx, q.deg, q.idx} for total complexes and the flattened core
/// for tensor powers.
class FreeBimoduleComplex {
public:
    FreeBimoduleComplex(AlgebraPtr algebra, ComplexKind kind, std::string name, int max_degree);

    const AlgebraPtr& algebra() const { return algebra_; }
    ComplexKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int max_degree() const { return max_degree_; }
    int rank(int n) const;
    const Generator& generator(GenRef g) const { return gens_.at(g.deg).at(g.idx); }
    const Chain<1>& differential(GenRef g) const { return diff_.at(g.deg).at(g.idx); }
    const AlgElem& augmentation(int idx) const { return aug_.at(idx); }
    std::optional<int> find(int n, const std::vector<int>& tag) const;
    GenRef at(int n, const std::vector<int>& tag) const;

    /// Factor complexes: (P, Q) for total complexes, (K) for tensor powers.
    const std::vector<ComplexPtr>& parts() const { return parts_; }
    /// Number of tensor factors for tensor powers.
    int copies() const { return copies_; }

    Degree degree_of(GenRef g) const { return generator(g).degree; }
    template <std::size_t K>
    Degree degree_of(const Tensor<K>& t) const;

    // Construction.
    int add_generator(int n, Generator g);
    void set_differential(GenRef g, Chain<1> d);
    void set_augmentation(int idx, AlgElem a);
    void set_parts(std::vector<ComplexPtr> parts, int copies = 0) {
        parts_ = std::move(parts);
        copies_ = copies;
    }

private:
    AlgebraPtr algebra_;
    ComplexKind kind_;
    std::string name_;
    int max_degree_;
    std::vector<std::vector<Generator>> gens_;
    std::vector<std::vector<Chain<1>>> diff_;
    std::vector<std::map<std::vector<int>, int>> lookup_;
    std::vector<AlgElem> aug_;
    std::vector<ComplexPtr> parts_;
    int copies_ = 0;
};

template <std::size_t K>
Degree FreeBimoduleComplex::degree_of(const Tensor<K>& t) const {
    const auto& a = *algebra_;
    Degree d = a.degree(t.left) + a.degree(t.right);
    for (auto& g : t.gens) d = d + degree_of(g);
    for (int m : t.mids) d = d + a.degree(m);
    return d;
}

// ---------------------------------------------------------------- chain algebra

/// lambda * c * rho for basis indices lambda, rho.
template <std::size_t K>
Chain<K> bimodule_mul(const GradedAlgebra& a, int lambda, const Chain<K>& c, int rho) {
    Chain<K> out;
    const bool trivial = lambda == a.unit() && rho == a.unit();
    for (auto& [t, coeff] : c) {
        if (trivial) {
            out.add(t, coeff);
            continue;
        }
        const AlgElem& l = a.product(lambda, t.left);
        if (l.empty()) continue;
        const AlgElem& r = a.product(t.right, rho);
        for (auto& [li, lc] : l)
            for (auto& [ri, rc] : r) {
                Tensor<K> u = t;
                u.left = li;
                u.right = ri;
                out.add(u, coeff * lc * rc);
            }
    }
    return out;
}

/// Function from generators of one complex to chains in another.
template <std::size_t M>
using GenFn = std::function<const Chain<M>&(GenRef)>;

/// Applies a map of homological degree `shift`, given on generators, to the
/// tensor factor at `pos`, with Koszul sign (-1)^(shift * degrees before pos).
template <std::size_t K, std::size_t M>
Chain<K + M - 1> apply_at(const GradedAlgebra& a, const Chain<K>& c, std::size_t pos, const GenFn<M>& f, int shift) {
    Chain<K + M - 1> out;
    for (auto& [t, coeff] : c) {
        int before = 0;
        for (std::size_t k = 0; k < pos; ++k) before += t.gens[k].deg;
        Scalar sc = ((shift * before) % 2 != 0) ? -coeff : coeff;
        int lc = pos == 0 ? t.left : t.mids[pos - 1];
        int rc = pos == K - 1 ? t.right : t.mids[pos];
        const Chain<M>& img = f(t.gens[pos]);
        for (auto& [u, uc] : img) {
            const AlgElem& lp = a.product(lc, u.left);
            if (lp.empty()) continue;
            const AlgElem& rp = a.product(u.right, rc);
            for (auto& [li, lcf] : lp)
                for (auto& [ri, rcf] : rp) {
                    Tensor<K + M - 1> n;
                    n.left = pos == 0 ? li : t.left;
                    n.right = pos == K - 1 ? ri : t.right;
                    std::size_t g = 0, m = 0;
                    for (std::size_t k = 0; k < pos; ++k) n.gens[g++] = t.gens[k];
                    for (std::size_t k = 0; k < M; ++k) n.gens[g++] = u.gens[k];
                    for (std::size_t k = pos + 1; k < K; ++k) n.gens[g++] = t.gens[k];
                    for (std::size_t k = 0; k + 1 < pos; ++k) n.mids[m++] = t.mids[k];
                    if (pos > 0) n.mids[m++] = li;
                    for (std::size_t k = 0; k + 1 < M; ++k) n.mids[m++] = u.mids[k];
                    if (pos + 1 < K) n.mids[m++] = ri;
                    for (std::size_t k = pos + 1; k + 1 < K; ++k) n.mids[m++] = t.mids[k];
                    out.add(n, sc * uc * lcf * rcf);
                }
        }
    }
    return out;
}

/// Differential of K^{(x)k}: sum over factors with the Koszul sign.
template <std::size_t K>
Chain<K> differential(const FreeBimoduleComplex& cx, const Chain<K>& c) {
    Chain<K> out;
    GenFn<1> d = [&](GenRef g) -> const Chain<1>& { return cx.differential(g); };
    for (std::size_t pos = 0; pos < K; ++pos) out += apply_at<K, 1>(*cx.algebra(), c, pos, d, -1);
    return out;
}

template <std::size_t K>
Chain<K> single(const GradedAlgebra& a, const Core<K>& c) {
    return Chain<K>(with_outer(c, a.unit(), a.unit()), a.field()->one());
}

inline Chain<1> single(const GradedAlgebra& a, GenRef g) { return single<1>(a, Core<1>{{g}, {}}); }

/// Bimodule map determined by values on cores, memoized.
template <std::size_t KS, std::size_t KT>
class CoreMap {
public:
    using Fn = std::function<Chain<KT>(const Core<KS>&)>;
    CoreMap(AlgebraPtr algebra, Fn fn, int shift = 0) : algebra_(std::move(algebra)), fn_(std::move(fn)), shift_(shift) {}

    int shift() const { return shift_; }
    const AlgebraPtr& algebra() const { return algebra_; }

    const Chain<KT>& operator()(const Core<KS>& c) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(c);
            if (it != cache_.end()) return it->second;
        }
        Chain<KT> v = fn_(c);
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(c, std::move(v)).first->second;
    }

    Chain<KT> apply(const Chain<KS>& c) const {
        Chain<KT> out;
        for (auto& [t, coeff] : c) out.add(bimodule_mul(*algebra_, t.left, (*this)(core_of(t)), t.right), coeff);
        return out;
    }

    GenFn<KT> on_generators() const
        requires(KS == 1)
    {
        return [this](GenRef g) -> const Chain<KT>& { return (*this)(Core<1>{{g}, {}}); };
    }

private:
    AlgebraPtr algebra_;
    Fn fn_;
    int shift_;
    mutable std::mutex mu_;
    mutable std::map<Core<KS>, Chain<KT>> cache_;
};

using ChainMap = CoreMap<1, 1>;
using DiagonalMap = CoreMap<1, 2>;
using Homotopy = CoreMap<2, 1>;
using ChainMapPtr = std::shared_ptr<const ChainMap>;
using DiagonalPtr = std::shared_ptr<const DiagonalMap>;
using HomotopyPtr = std::shared_ptr<const Homotopy>;

/// All cores of (K^{(x)k})_n: generator tuples of total degree n with every
/// middle basis monomial.
template <std::size_t K>
std::vector<Core<K>> cores_of_degree(const FreeBimoduleComplex& cx, int n);

// ---------------------------------------------------------------- builders

ComplexPtr bar_resolution(const AlgebraPtr& a, int max_degree);
ComplexPtr normalized_bar_resolution(const AlgebraPtr& a, int max_degree);
/// Koszul resolution of k[x]/(x^2): one generator e(n) per degree with
/// d(e_n) = x e_{n-1} + (-1)^n e_{n-1} x.
ComplexPtr koszul_dual_numbers(const AlgebraPtr& r, int max_degree);
ComplexPtr koszul_dual_numbers(const FieldPtr& field, const std::string& label, int max_degree);
/// Total complex of P (x)^t Q over lambda = R (x)^t S.
ComplexPtr twisted_tensor_resolution(const ComplexPtr& p, const ComplexPtr& q, const AlgebraPtr& lambda, int max_degree);
/// K (x)_Lambda K or K (x)_Lambda K (x)_Lambda K as a free complex.
ComplexPtr tensor_over_algebra(const ComplexPtr& k, int copies, int max_degree);

/// Generator of a tensor power complex for a core of the base complex.
template <std::size_t K>
GenRef power_generator(const FreeBimoduleComplex& power, const Core<K>& c);
template <std::size_t K>
Core<K> power_core(const FreeBimoduleComplex& power, GenRef g);

/// Generator of a total complex for a pair of factor generators.
GenRef total_generator(const FreeBimoduleComplex& tot, GenRef p, GenRef q);
std::pair<GenRef, GenRef> total_factors(const FreeBimoduleComplex& tot, GenRef g);

/// Converts (r (x) w (x) r') (x)^t (s (x) v (x) s'), the tensor of a P-chain and a
/// Q-chain, into a chain of the total complex over R (x)^t S.
Chain<1> twisted_pair(const FreeBimoduleComplex& tot, const Chain<1>& x, const Chain<1>& y);

// ---------------------------------------------------------------- verification

struct CheckFailure {
    int degree;
    std::string generator;
    std::string detail;
};

struct CheckReport {
    std::string name;
    int checked = 0;
    std::vector<CheckFailure> failures;
    bool ok() const { return failures.empty(); }
};

CheckReport check_d_squared(const FreeBimoduleComplex& k, int max_degree);
CheckReport check_augmentation(const FreeBimoduleComplex& k);
CheckReport check_internal_degrees(const FreeBimoduleComplex& k);
/// d_T f = f d_S on generators of degree <= max_degree, and augmentation
/// compatibility in degree 0.
CheckReport check_chain_map(const FreeBimoduleComplex& s, const FreeBimoduleComplex& t, const ChainMap& f, int max_degree);

/// Lifts the identity of Lambda to a chain map S -> T through degree
/// max_degree by solving the lifting equations degree by degree.
std::shared_ptr<ChainMap> lift_chain_map(const ComplexPtr& s, const ComplexPtr& t, int max_degree);

std::string chain_str(const FreeBimoduleComplex& k, const Chain<1>& c);

}  // namespace hht
