#include "hhtwist/homotopy.hpp"

#include <stdexcept>

namespace hht {

namespace {

Scalar sign(const FieldPtr& f, int e) { return (e % 2 != 0) ? -f->one() : f->one(); }

}  // namespace

HomotopyPtr f_left(const ComplexPtr& k) {
    return std::make_shared<Homotopy>(
        k->algebra(),
        [k](const Core<2>& c) {
            Chain<1> out;
            if (c.gens[0].deg != 0) return out;
            const GradedAlgebra& a = *k->algebra();
            for (auto& [b, coeff] : a.multiply(k->augmentation(c.gens[0].idx), a.basis_element(c.mids[0])))
                out.add(Tensor<1>{b, {c.gens[1]}, {}, a.unit()}, coeff);
            return out;
        },
        0);
}

HomotopyPtr f_right(const ComplexPtr& k) {
    return std::make_shared<Homotopy>(
        k->algebra(),
        [k](const Core<2>& c) {
            Chain<1> out;
            if (c.gens[1].deg != 0) return out;
            const GradedAlgebra& a = *k->algebra();
            for (auto& [b, coeff] : a.multiply(a.basis_element(c.mids[0]), k->augmentation(c.gens[1].idx)))
                out.add(Tensor<1>{a.unit(), {c.gens[0]}, {}, b}, coeff);
            return out;
        },
        0);
}

HomotopyPtr f_total(const ComplexPtr& k) {
    auto l = f_left(k);
    auto r = f_right(k);
    return std::make_shared<Homotopy>(k->algebra(), [l, r](const Core<2>& c) { return (*l)(c) - (*r)(c); }, 0);
}

HomotopyPtr phi_bar(const ComplexPtr& bar) {
    if (bar->kind() != ComplexKind::bar && bar->kind() != ComplexKind::normalized_bar)
        throw std::invalid_argument("phi_bar needs a bar resolution");
    const bool normalized = bar->kind() == ComplexKind::normalized_bar;
    return std::make_shared<Homotopy>(
        bar->algebra(),
        [bar, normalized](const Core<2>& c) {
            Chain<1> out;
            const GradedAlgebra& a = *bar->algebra();
            if (normalized && c.mids[0] == a.unit()) return out;
            std::vector<int> w = bar->generator(c.gens[0]).tag;
            w.push_back(c.mids[0]);
            const auto& w2 = bar->generator(c.gens[1]).tag;
            w.insert(w.end(), w2.begin(), w2.end());
            GenRef g = bar->at(total_degree(c) + 1, w);
            out.add(Tensor<1>{a.unit(), {g}, {}, a.unit()}, sign(a.field(), c.gens[0].deg));
            return out;
        },
        1);
}

HomotopyPtr phi_koszul_dual_numbers(const ComplexPtr& k) {
    if (k->kind() != ComplexKind::koszul_dual_numbers) throw std::invalid_argument("phi_koszul_dual_numbers needs a Koszul resolution of k[x]/(x^2)");
    return std::make_shared<Homotopy>(
        k->algebra(),
        [k](const Core<2>& c) {
            Chain<1> out;
            const GradedAlgebra& a = *k->algebra();
            if (c.mids[0] == a.unit()) return out;
            int i = c.gens[0].deg, j = c.gens[1].deg;
            out.add(Tensor<1>{a.unit(), {GenRef{i + j + 1, 0}}, {}, a.unit()}, sign(a.field(), i));
            return out;
        },
        1);
}

HomotopyPtr phi_qci(const ComplexPtr& tot) {
    const TensorFactors* f = tot->algebra()->factors();
    if (!f || tot->kind() != ComplexKind::total || tot->parts()[0]->kind() != ComplexKind::koszul_dual_numbers ||
        tot->parts()[1]->kind() != ComplexKind::koszul_dual_numbers || f->left->dim() != 2 || f->right->dim() != 2)
        throw std::invalid_argument("phi_qci needs the Koszul resolution of a quantum complete intersection");
    const Scalar t = f->twist.eval(Degree{1}, Degree{1});
    const Scalar mq = t.inverse();  // -q
    return std::make_shared<Homotopy>(tot->algebra(), [tot, mq](const Core<2>& c) {
        const GradedAlgebra& a = *tot->algebra();
        const TensorFactors& f = *a.factors();
        const FieldPtr& field = a.field();
        auto [e1p, e1q] = total_factors(*tot, c.gens[0]);
        auto [e2p, e2q] = total_factors(*tot, c.gens[1]);
        const int i = e1p.deg, j = e1q.deg, p = e2p.deg, r = e2q.deg;
        const int l = f.left_of[c.mids[0]], m = f.right_of[c.mids[0]];
        const int one = a.unit();
        auto gen = [&](int u, int v) { return total_generator(*tot, GenRef{u, 0}, GenRef{v, 0}); };
        Chain<1> out;
        if (j == 0 && l == 1)
            out.add(Tensor<1>{f.pair(0, m), {gen(i + p + 1, r)}, {}, one}, mq.pow(m * i + m) * sign(field, i));
        if (p == 0 && m == 1)
            out.add(Tensor<1>{one, {gen(i, j + r + 1)}, {}, f.pair(l, 0)}, mq.pow(l * r + l) * sign(field, i + j));
        return out;
    }, 1);
}

// ---------------------------------------------------------------- sigma

Sigma sigma(const ComplexPtr& tot) {
    const TensorFactors* fac = tot->algebra()->factors();
    if (!fac || tot->kind() != ComplexKind::total) throw std::invalid_argument("sigma needs a twisted total complex");
    const int n = tot->max_degree();
    Sigma s;
    s.k = tot;
    s.pp = tensor_over_algebra(tot->parts()[0], 2, n);
    s.qq = tensor_over_algebra(tot->parts()[1], 2, n);
    s.tt = twisted_tensor_resolution(s.pp, s.qq, tot->algebra(), n);
    // coefficient of (w, r, w') (x) (v, s, v') relative to the K (x) K core
    auto coeff = [](const FreeBimoduleComplex& k, const Core<2>& c) {
        const TensorFactors& f = *k.algebra()->factors();
        const FreeBimoduleComplex& P = *k.parts()[0];
        const FreeBimoduleComplex& Q = *k.parts()[1];
        auto [w, v] = total_factors(k, c.gens[0]);
        const GenRef w2 = total_factors(k, c.gens[1]).first;
        const int r = f.left_of[c.mids[0]], sm = f.right_of[c.mids[0]];
        const Degree dw2 = P.degree_of(w2);
        Scalar x = f.twist.eval(dw2, f.right->degree(sm)) * f.twist.eval(f.left->degree(r) + dw2, Q.degree_of(v));
        if ((v.deg * w2.deg) % 2 != 0) x = -x;
        return x;
    };
    ComplexPtr pp = s.pp, qq = s.qq, tt = s.tt;
    s.forward = std::make_shared<Homotopy>(
        tot->algebra(),
        [tot, pp, qq, tt, coeff](const Core<2>& c) {
            const GradedAlgebra& a = *tot->algebra();
            const TensorFactors& f = *a.factors();
            auto [w, v] = total_factors(*tot, c.gens[0]);
            auto [w2, v2] = total_factors(*tot, c.gens[1]);
            GenRef gp = power_generator<2>(*pp, Core<2>{{w, w2}, {f.left_of[c.mids[0]]}});
            GenRef gq = power_generator<2>(*qq, Core<2>{{v, v2}, {f.right_of[c.mids[0]]}});
            return Chain<1>(Tensor<1>{a.unit(), {total_generator(*tt, gp, gq)}, {}, a.unit()}, coeff(*tot, c));
        },
        0);
    s.inverse = std::make_shared<DiagonalMap>(
        tot->algebra(),
        [tot, pp, qq, tt, coeff](const Core<1>& c) {
            const GradedAlgebra& a = *tot->algebra();
            const TensorFactors& f = *a.factors();
            auto [gp, gq] = total_factors(*tt, c.gens[0]);
            Core<2> cp = power_core<2>(*pp, gp);
            Core<2> cq = power_core<2>(*qq, gq);
            Core<2> k{{total_generator(*tot, cp.gens[0], cq.gens[0]), total_generator(*tot, cp.gens[1], cq.gens[1])},
                      {f.pair(cp.mids[0], cq.mids[0])}};
            return Chain<2>(with_outer(k, a.unit(), a.unit()), coeff(*tot, k).inverse());
        },
        0);
    return s;
}

Chain<1> apply_tensor_of_maps(const Sigma& s, const Homotopy& a, const Homotopy& b, const Chain<1>& c, bool koszul_sign) {
    const GradedAlgebra& alg = *s.k->algebra();
    Chain<1> out;
    for (auto& [t, coeff] : c) {
        auto [gp, gq] = total_factors(*s.tt, t.gens[0]);
        Chain<1> x = a(power_core<2>(*s.pp, gp));
        if (x.empty()) continue;
        Chain<1> y = b(power_core<2>(*s.qq, gq));
        if (y.empty()) continue;
        Chain<1> v = twisted_pair(*s.k, x, y);
        Scalar cf = (koszul_sign && gp.deg % 2 != 0) ? -coeff : coeff;
        out.add(bimodule_mul(alg, t.left, v, t.right), cf);
    }
    return out;
}

HomotopyPtr phi_twisted(const Sigma& s, const HomotopyPtr& phi_p, const HomotopyPtr& phi_q) {
    auto fl = f_left(s.k->parts()[1]);
    auto fr = f_right(s.k->parts()[0]);
    return std::make_shared<Homotopy>(
        s.k->algebra(),
        [s, phi_p, phi_q, fl, fr](const Core<2>& c) {
            const Chain<1>& sc = (*s.forward)(c);
            return apply_tensor_of_maps(s, *phi_p, *fl, sc, false) + apply_tensor_of_maps(s, *fr, *phi_q, sc, true);
        },
        1);
}

// ---------------------------------------------------------------- checks

std::string core_str(const FreeBimoduleComplex& k, const Core<2>& c) {
    return k.generator(c.gens[0]).label + " (x) " + k.algebra()->label(c.mids[0]) + " (x) " + k.generator(c.gens[1]).label;
}

CheckReport check_contracting_homotopy(const FreeBimoduleComplex& k, const Homotopy& phi, const Homotopy& f, int max_degree) {
    CheckReport rep{"d phi + phi d = F on " + k.name(), 0, {}};
    const GradedAlgebra& a = *k.algebra();
    for (int n = 0; n < max_degree; ++n)
        for (auto& c : cores_of_degree<2>(k, n)) {
            ++rep.checked;
            Chain<2> dc = differential<2>(k, single<2>(a, c));
            Chain<1> lhs = differential<1>(k, phi(c)) + phi.apply(dc);
            Chain<1> diff = lhs - f(c);
            if (!diff.empty()) rep.failures.push_back({n, core_str(k, c), chain_str(k, diff)});
        }
    return rep;
}

CheckReport check_sigma(const Sigma& s, int max_degree) {
    CheckReport rep{"sigma on " + s.k->name(), 0, {}};
    const GradedAlgebra& a = *s.k->algebra();
    for (int n = 0; n <= max_degree; ++n) {
        for (auto& c : cores_of_degree<2>(*s.k, n)) {
            ++rep.checked;
            const Chain<1>& sc = (*s.forward)(c);
            if (n > 0) {
                Chain<1> lhs = differential<1>(*s.tt, sc);
                Chain<1> rhs = s.forward->apply(differential<2>(*s.k, single<2>(a, c)));
                if (!(lhs == rhs)) rep.failures.push_back({n, core_str(*s.k, c), "d sigma != sigma d"});
            }
            if (!(s.inverse->apply(sc) == single<2>(a, c))) rep.failures.push_back({n, core_str(*s.k, c), "sigma^-1 sigma != 1"});
        }
        for (int g = 0; g < s.tt->rank(n); ++g) {
            ++rep.checked;
            Chain<1> back = s.forward->apply((*s.inverse)(Core<1>{{GenRef{n, g}}, {}}));
            if (!(back == single(a, GenRef{n, g}))) rep.failures.push_back({n, s.tt->generator({n, g}).label, "sigma sigma^-1 != 1"});
        }
    }
    return rep;
}

CheckReport check_factorization(const Sigma& s, int max_degree) {
    CheckReport rep{"F factorization through sigma on " + s.k->name(), 0, {}};
    auto flp = f_left(s.k->parts()[0]), flq = f_left(s.k->parts()[1]);
    auto frp = f_right(s.k->parts()[0]), frq = f_right(s.k->parts()[1]);
    auto f = f_total(s.k);
    for (int n = 0; n <= max_degree; ++n)
        for (auto& c : cores_of_degree<2>(*s.k, n)) {
            ++rep.checked;
            const Chain<1>& sc = (*s.forward)(c);
            Chain<1> lhs = apply_tensor_of_maps(s, *flp, *flq, sc, false) - apply_tensor_of_maps(s, *frp, *frq, sc, false);
            Chain<1> diff = lhs - (*f)(c);
            if (!diff.empty()) rep.failures.push_back({n, core_str(*s.k, c), chain_str(*s.k, diff)});
        }
    return rep;
}

CheckReport check_maps_agree(const FreeBimoduleComplex& k, const Homotopy& a, const Homotopy& b, int max_degree) {
    CheckReport rep{"agreement of maps on " + k.name(), 0, {}};
    for (int n = 0; n <= max_degree; ++n)
        for (auto& c : cores_of_degree<2>(k, n)) {
            ++rep.checked;
            Chain<1> diff = a(c) - b(c);
            if (!diff.empty()) rep.failures.push_back({n, core_str(k, c), chain_str(k, diff)});
        }
    return rep;
}

}  // namespace hht
