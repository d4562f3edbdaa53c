#include "hhtwist/diagonal.hpp"

#include <stdexcept>

namespace hht {

namespace {

Scalar sign(const FieldPtr& f, int e) { return (e % 2 != 0) ? -f->one() : f->one(); }

Chain<2> unit_pair(const GradedAlgebra& a, GenRef g1, GenRef g2, const Scalar& c) {
    return Chain<2>(Tensor<2>{a.unit(), {g1, g2}, {a.unit()}, a.unit()}, c);
}

std::vector<int> slice(const std::vector<int>& w, std::size_t from, std::size_t to) {
    return std::vector<int>(w.begin() + from, w.begin() + to);
}

void require_kind(const ComplexPtr& k, std::initializer_list<ComplexKind> kinds, const char* what) {
    for (auto kind : kinds)
        if (k->kind() == kind) return;
    throw std::invalid_argument(std::string(what) + ": unsupported complex " + k->name());
}

const TensorFactors& tot_factors(const ComplexPtr& tot, const char* what) {
    const TensorFactors* f = tot->algebra()->factors();
    if (!f || tot->kind() != ComplexKind::total) throw std::invalid_argument(std::string(what) + " needs a twisted total complex");
    return *f;
}

}  // namespace

DiagonalPtr diagonal_bar(const ComplexPtr& bar) {
    require_kind(bar, {ComplexKind::bar, ComplexKind::normalized_bar}, "diagonal_bar");
    return std::make_shared<DiagonalMap>(bar->algebra(), [bar](const Core<1>& c) {
        const GradedAlgebra& a = *bar->algebra();
        const auto& w = bar->generator(c.gens[0]).tag;
        Chain<2> out;
        for (std::size_t j = 0; j <= w.size(); ++j)
            out += unit_pair(a, bar->at(j, slice(w, 0, j)), bar->at(w.size() - j, slice(w, j, w.size())), a.field()->one());
        return out;
    });
}

DiagonalPtr diagonal_koszul(const ComplexPtr& k) {
    require_kind(k, {ComplexKind::koszul_dual_numbers}, "diagonal_koszul");
    return std::make_shared<DiagonalMap>(k->algebra(), [k](const Core<1>& c) {
        const GradedAlgebra& a = *k->algebra();
        Chain<2> out;
        const int n = c.gens[0].deg;
        for (int w = 0; w <= n; ++w) out += unit_pair(a, GenRef{w, 0}, GenRef{n - w, 0}, a.field()->one());
        return out;
    });
}

DiagonalPtr diagonal_qci(const ComplexPtr& tot) {
    const TensorFactors& f = tot_factors(tot, "diagonal_qci");
    require_kind(tot->parts()[0], {ComplexKind::koszul_dual_numbers}, "diagonal_qci");
    require_kind(tot->parts()[1], {ComplexKind::koszul_dual_numbers}, "diagonal_qci");
    const Scalar q = -f.twist.eval(Degree{1}, Degree{1}).inverse();
    return std::make_shared<DiagonalMap>(tot->algebra(), [tot, q](const Core<1>& c) {
        const GradedAlgebra& a = *tot->algebra();
        auto [gp, gq] = total_factors(*tot, c.gens[0]);
        const int i = gp.deg, l = gq.deg;
        auto gen = [&](int u, int v) { return total_generator(*tot, GenRef{u, 0}, GenRef{v, 0}); };
        Chain<2> out;
        for (int w = 0; w <= i + l; ++w)
            for (int j = std::max(0, w - i); j <= std::min(w, l); ++j)
                out += unit_pair(a, gen(w - j, j), gen(i + j - w, l - j), q.pow(j * (i + j - w)));
        return out;
    });
}

DiagonalPtr diagonal_twisted(const Sigma& s, const DiagonalPtr& dp, const DiagonalPtr& dq) {
    return std::make_shared<DiagonalMap>(s.k->algebra(), [s, dp, dq](const Core<1>& c) {
        auto [gp, gq] = total_factors(*s.k, c.gens[0]);
        auto to_power = [](const FreeBimoduleComplex& power, const Chain<2>& x) {
            Chain<1> out;
            for (auto& [t, coeff] : x) out.add(Tensor<1>{t.left, {power_generator<2>(power, core_of(t))}, {}, t.right}, coeff);
            return out;
        };
        Chain<1> x = to_power(*s.pp, (*dp)(Core<1>{{gp}, {}}));
        Chain<1> y = to_power(*s.qq, (*dq)(Core<1>{{gq}, {}}));
        return s.inverse->apply(twisted_pair(*s.tt, x, y));
    });
}

DiagonalPtr diagonal_twisted_nbar(const ComplexPtr& tot) {
    tot_factors(tot, "diagonal_twisted_nbar");
    require_kind(tot->parts()[0], {ComplexKind::normalized_bar}, "diagonal_twisted_nbar");
    require_kind(tot->parts()[1], {ComplexKind::normalized_bar}, "diagonal_twisted_nbar");
    return std::make_shared<DiagonalMap>(tot->algebra(), [tot](const Core<1>& c) {
        const GradedAlgebra& a = *tot->algebra();
        const TensorFactors& f = *a.factors();
        const FreeBimoduleComplex& P = *tot->parts()[0];
        const FreeBimoduleComplex& Q = *tot->parts()[1];
        auto [gp, gq] = total_factors(*tot, c.gens[0]);
        const auto& wr = P.generator(gp).tag;
        const auto& ws = Q.generator(gq).tag;
        const std::size_t nr = wr.size(), ns = ws.size();
        Chain<2> out;
        for (std::size_t j = 0; j <= nr; ++j) {
            Degree rtail = f.left->zero_degree();
            for (std::size_t k = j; k < nr; ++k) rtail = rtail + f.left->degree(wr[k]);
            Degree shead = f.right->zero_degree();
            for (std::size_t i = 0; i <= ns; ++i) {
                if (i > 0) shead = shead + f.right->degree(ws[i - 1]);
                Scalar coeff = f.twist.eval(rtail, shead).inverse() * sign(a.field(), static_cast<int>(i * (nr - j)));
                GenRef front = total_generator(*tot, P.at(j, slice(wr, 0, j)), Q.at(i, slice(ws, 0, i)));
                GenRef back = total_generator(*tot, P.at(nr - j, slice(wr, j, nr)), Q.at(ns - i, slice(ws, i, ns)));
                out += unit_pair(a, front, back, coeff);
            }
        }
        return out;
    });
}

Diagonal2Ptr diagonal2(const DiagonalPtr& d) {
    return std::make_shared<Diagonal2>(d->algebra(), [d](const Core<1>& c) {
        return apply_at<2, 2>(*d->algebra(), (*d)(c), 0, d->on_generators(), 0);
    });
}

// ---------------------------------------------------------------- comparison maps

ChainMapPtr iota_qci(const ComplexPtr& tot, const ComplexPtr& bar) {
    const TensorFactors& f = tot_factors(tot, "iota_qci");
    require_kind(bar, {ComplexKind::bar}, "iota_qci");
    if (bar->algebra() != tot->algebra()) throw std::invalid_argument("iota_qci: complexes over different algebras");
    const Scalar q = -f.twist.eval(Degree{1}, Degree{1}).inverse();
    // words in x and y with the power of q on each, indexed by (i, l)
    static const std::map<std::pair<int, int>, std::vector<std::pair<std::string, int>>> table{
        {{0, 0}, {{"", 0}}},
        {{1, 0}, {{"x", 0}}},
        {{0, 1}, {{"y", 0}}},
        {{2, 0}, {{"xx", 0}}},
        {{1, 1}, {{"xy", 0}, {"yx", 1}}},
        {{0, 2}, {{"yy", 0}}},
        {{3, 0}, {{"xxx", 0}}},
        {{2, 1}, {{"xxy", 0}, {"xyx", 1}, {"yxx", 2}}},
        {{1, 2}, {{"xyy", 0}, {"yxy", 1}, {"yyx", 2}}},
        {{0, 3}, {{"yyy", 0}}},
    };
    return std::make_shared<ChainMap>(tot->algebra(), [tot, bar, q](const Core<1>& c) {
        const GradedAlgebra& a = *tot->algebra();
        auto [gp, gq] = total_factors(*tot, c.gens[0]);
        auto it = table.find({gp.deg, gq.deg});
        if (it == table.end()) throw std::out_of_range("iota_qci is tabulated through degree 3");
        const int x = a.factors()->pair(1, 0), y = a.factors()->pair(0, 1);
        Chain<1> out;
        for (auto& [word, e] : it->second) {
            std::vector<int> w;
            for (char ch : word) w.push_back(ch == 'x' ? x : y);
            out.add(Tensor<1>{a.unit(), {bar->at(static_cast<int>(w.size()), w)}, {}, a.unit()}, q.pow(e));
        }
        return out;
    });
}

ChainMapPtr aw_twisted(const ComplexPtr& nbar, const ComplexPtr& tot) {
    tot_factors(tot, "aw_twisted");
    require_kind(nbar, {ComplexKind::normalized_bar}, "aw_twisted");
    require_kind(tot->parts()[0], {ComplexKind::normalized_bar}, "aw_twisted");
    require_kind(tot->parts()[1], {ComplexKind::normalized_bar}, "aw_twisted");
    if (nbar->algebra() != tot->algebra()) throw std::invalid_argument("aw_twisted: complexes over different algebras");
    return std::make_shared<ChainMap>(nbar->algebra(), [nbar, tot](const Core<1>& c) {
        const GradedAlgebra& a = *tot->algebra();
        const TensorFactors& f = *a.factors();
        const GradedAlgebra& R = *f.left;
        const GradedAlgebra& S = *f.right;
        const FreeBimoduleComplex& P = *tot->parts()[0];
        const FreeBimoduleComplex& Q = *tot->parts()[1];
        const auto& w = nbar->generator(c.gens[0]).tag;
        const std::size_t n = w.size();
        std::vector<int> r(n), s(n);
        for (std::size_t k = 0; k < n; ++k) {
            r[k] = f.left_of[w[k]];
            s[k] = f.right_of[w[k]];
        }
        Scalar tstar = a.field()->one();
        Degree sdeg = S.zero_degree();
        for (std::size_t k = 0; k < n; ++k) {
            tstar = tstar * f.twist.eval(R.degree(r[k]), sdeg);
            sdeg = sdeg + S.degree(s[k]);
        }
        Chain<1> out;
        for (std::size_t d = 0; d <= n; ++d) {
            bool interior_unit = false;
            for (std::size_t k = d; k < n; ++k) interior_unit |= r[k] == R.unit();
            for (std::size_t k = 0; k < d; ++k) interior_unit |= s[k] == S.unit();
            if (interior_unit) continue;
            AlgElem rprod = R.unit_element();
            for (std::size_t k = 0; k < d; ++k) rprod = R.multiply(rprod, R.basis_element(r[k]));
            AlgElem sprod = S.unit_element();
            for (std::size_t k = d; k < n; ++k) sprod = S.multiply(sprod, S.basis_element(s[k]));
            if (rprod.empty() || sprod.empty()) continue;
            GenRef gr = P.at(static_cast<int>(n - d), slice(r, d, n));
            GenRef gs = Q.at(static_cast<int>(d), slice(s, 0, d));
            Chain<1> x, y;
            for (auto& [b, cb] : rprod) x.add(Tensor<1>{b, {gr}, {}, R.unit()}, cb);
            for (auto& [b, cb] : sprod) y.add(Tensor<1>{S.unit(), {gs}, {}, b}, cb);
            out.add(twisted_pair(*tot, x, y), tstar * sign(a.field(), static_cast<int>(d * (n - d))));
        }
        return out;
    });
}

namespace {

/// All interleavings of r-letters and s-letters, with the number of (r, s)
/// pairs where the s comes first and the product of the inverse twists.
void shuffles(const TensorFactors& f, const std::vector<int>& wr, const std::vector<int>& ws, std::size_t ir, std::size_t is,
              std::vector<int>& word, int inversions, Scalar coeff, std::vector<std::pair<std::vector<int>, Scalar>>& out) {
    if (ir == wr.size() && is == ws.size()) {
        out.emplace_back(word, (inversions % 2) ? -coeff : coeff);
        return;
    }
    if (ir < wr.size()) {
        // r_ir moves past the s's already placed
        Degree sdeg = f.right->zero_degree();
        for (std::size_t k = 0; k < is; ++k) sdeg = sdeg + f.right->degree(ws[k]);
        word.push_back(f.pair(wr[ir], f.right->unit()));
        shuffles(f, wr, ws, ir + 1, is, word, inversions + static_cast<int>(is),
                 coeff * f.twist.eval(f.left->degree(wr[ir]), sdeg).inverse(), out);
        word.pop_back();
    }
    if (is < ws.size()) {
        word.push_back(f.pair(f.left->unit(), ws[is]));
        shuffles(f, wr, ws, ir, is + 1, word, inversions, coeff, out);
        word.pop_back();
    }
}

}  // namespace

ChainMapPtr ez_twisted(const ComplexPtr& tot, const ComplexPtr& nbar) {
    tot_factors(tot, "ez_twisted");
    require_kind(nbar, {ComplexKind::normalized_bar}, "ez_twisted");
    if (nbar->algebra() != tot->algebra()) throw std::invalid_argument("ez_twisted: complexes over different algebras");
    return std::make_shared<ChainMap>(tot->algebra(), [tot, nbar](const Core<1>& c) {
        const GradedAlgebra& a = *tot->algebra();
        const TensorFactors& f = *a.factors();
        auto [gp, gq] = total_factors(*tot, c.gens[0]);
        const auto& wr = tot->parts()[0]->generator(gp).tag;
        const auto& ws = tot->parts()[1]->generator(gq).tag;
        std::vector<std::pair<std::vector<int>, Scalar>> terms;
        std::vector<int> word;
        shuffles(f, wr, ws, 0, 0, word, 0, a.field()->one(), terms);
        Chain<1> out;
        for (auto& [w, coeff] : terms)
            out.add(Tensor<1>{a.unit(), {nbar->at(static_cast<int>(w.size()), w)}, {}, a.unit()}, coeff);
        return out;
    });
}

ChainMapPtr bar_inclusion(const ComplexPtr& nbar, const ComplexPtr& bar) {
    require_kind(nbar, {ComplexKind::normalized_bar}, "bar_inclusion");
    require_kind(bar, {ComplexKind::bar}, "bar_inclusion");
    return std::make_shared<ChainMap>(nbar->algebra(), [nbar, bar](const Core<1>& c) {
        const GradedAlgebra& a = *nbar->algebra();
        return single(a, bar->at(c.gens[0].deg, nbar->generator(c.gens[0]).tag));
    });
}

ChainMapPtr compose(const ChainMapPtr& g, const ChainMapPtr& f) {
    return std::make_shared<ChainMap>(f->algebra(), [g, f](const Core<1>& c) { return g->apply((*f)(c)); });
}

Chain<2> tensor_apply(const GradedAlgebra& a, const ChainMap& f, const ChainMap& g, const Chain<2>& c) {
    Chain<2> left = apply_at<2, 1>(a, c, 0, f.on_generators(), 0);
    return apply_at<2, 1>(a, left, 1, g.on_generators(), 0);
}

// ---------------------------------------------------------------- checks

CheckReport check_diagonal(const FreeBimoduleComplex& k, const DiagonalMap& d, int max_degree) {
    CheckReport rep{"diagonal on " + k.name(), 0, {}};
    const GradedAlgebra& a = *k.algebra();
    for (int g = 0; g < k.rank(0); ++g) {
        ++rep.checked;
        AlgElem counit;
        for (auto& [t, coeff] : d(Core<1>{{GenRef{0, g}}, {}})) {
            AlgElem v = a.multiply(a.basis_element(t.left), k.augmentation(t.gens[0].idx));
            v = a.multiply(a.multiply(v, a.basis_element(t.mids[0])), k.augmentation(t.gens[1].idx));
            counit.add(a.multiply(v, a.basis_element(t.right)), coeff);
        }
        if (!(counit == k.augmentation(g))) rep.failures.push_back({0, k.generator({0, g}).label, "counit mismatch"});
    }
    for (int n = 1; n <= max_degree; ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            Chain<2> lhs = differential<2>(k, d(Core<1>{{GenRef{n, g}}, {}}));
            Chain<2> rhs = d.apply(k.differential({n, g}));
            if (!(lhs == rhs)) rep.failures.push_back({n, k.generator({n, g}).label, "d Delta != Delta d"});
        }
    return rep;
}

CheckReport check_coassociative(const FreeBimoduleComplex& k, const DiagonalMap& d, int max_degree) {
    CheckReport rep{"coassociativity on " + k.name(), 0, {}};
    const GradedAlgebra& a = *k.algebra();
    for (int n = 0; n <= max_degree; ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            const Chain<2>& dg = d(Core<1>{{GenRef{n, g}}, {}});
            Chain<3> lhs = apply_at<2, 2>(a, dg, 0, d.on_generators(), 0);
            Chain<3> rhs = apply_at<2, 2>(a, dg, 1, d.on_generators(), 0);
            if (!(lhs == rhs)) rep.failures.push_back({n, k.generator({n, g}).label, "(Delta x 1) Delta != (1 x Delta) Delta"});
        }
    return rep;
}

CheckReport check_condition_c(const FreeBimoduleComplex& k, const FreeBimoduleComplex& b, const ChainMap& iota,
                              const DiagonalMap& dk, const DiagonalMap& db, int max_degree) {
    CheckReport rep{"Delta_B iota = (iota x iota) Delta_K from " + k.name() + " to " + b.name(), 0, {}};
    const GradedAlgebra& a = *k.algebra();
    for (int n = 0; n <= max_degree; ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            Core<1> c{{GenRef{n, g}}, {}};
            Chain<2> lhs = db.apply(iota(c));
            Chain<2> rhs = tensor_apply(a, iota, iota, dk(c));
            if (!(lhs == rhs)) rep.failures.push_back({n, k.generator({n, g}).label, "mismatch"});
        }
    return rep;
}

CheckReport check_identity(const FreeBimoduleComplex& k, const ChainMap& f, int max_degree) {
    CheckReport rep{"identity on " + k.name(), 0, {}};
    for (int n = 0; n <= max_degree; ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            Chain<1> diff = f(Core<1>{{GenRef{n, g}}, {}}) - single(*k.algebra(), GenRef{n, g});
            if (!diff.empty()) rep.failures.push_back({n, k.generator({n, g}).label, chain_str(k, diff)});
        }
    return rep;
}

CheckReport check_diagonals_agree(const FreeBimoduleComplex& k, const DiagonalMap& a, const DiagonalMap& b, int max_degree) {
    CheckReport rep{"agreement of diagonals on " + k.name(), 0, {}};
    for (int n = 0; n <= max_degree; ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            Core<1> c{{GenRef{n, g}}, {}};
            if (!(a(c) == b(c))) rep.failures.push_back({n, k.generator({n, g}).label, "diagonals differ"});
        }
    return rep;
}

}  // namespace hht
