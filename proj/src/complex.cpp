#include "hhtwist/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "hhtwist/linalg.hpp"

namespace hht {

FreeBimoduleComplex::FreeBimoduleComplex(AlgebraPtr algebra, ComplexKind kind, std::string name, int max_degree)
    : algebra_(std::move(algebra)), kind_(kind), name_(std::move(name)), max_degree_(max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max degree must be non-negative");
    gens_.resize(max_degree + 1);
    diff_.resize(max_degree + 1);
    lookup_.resize(max_degree + 1);
}

int FreeBimoduleComplex::rank(int n) const {
    if (n < 0 || n > max_degree_) throw std::out_of_range(name_ + ": degree " + std::to_string(n) + " is outside 0.." + std::to_string(max_degree_));
    return static_cast<int>(gens_[n].size());
}

std::optional<int> FreeBimoduleComplex::find(int n, const std::vector<int>& tag) const {
    if (n < 0 || n > max_degree_) return std::nullopt;
    auto it = lookup_[n].find(tag);
    if (it == lookup_[n].end()) return std::nullopt;
    return it->second;
}

GenRef FreeBimoduleComplex::at(int n, const std::vector<int>& tag) const {
    auto i = find(n, tag);
    if (!i) throw std::out_of_range(name_ + ": no generator with the requested tag in degree " + std::to_string(n));
    return GenRef{n, *i};
}

int FreeBimoduleComplex::add_generator(int n, Generator g) {
    int idx = static_cast<int>(gens_.at(n).size());
    if (!lookup_[n].emplace(g.tag, idx).second) throw std::logic_error("duplicate generator tag in " + name_);
    gens_[n].push_back(std::move(g));
    diff_[n].emplace_back();
    if (n == 0) aug_.push_back(algebra_->unit_element());
    return idx;
}

void FreeBimoduleComplex::set_differential(GenRef g, Chain<1> d) { diff_.at(g.deg).at(g.idx) = std::move(d); }
void FreeBimoduleComplex::set_augmentation(int idx, AlgElem a) { aug_.at(idx) = std::move(a); }

// ---------------------------------------------------------------- cores

namespace {

template <std::size_t K>
void enumerate_cores(const FreeBimoduleComplex& cx, int remaining, std::size_t pos, Core<K>& cur, std::vector<Core<K>>& out) {
    const int dim = cx.algebra()->dim();
    if (pos == K - 1) {
        if (remaining > cx.max_degree()) return;
        for (int g = 0; g < cx.rank(remaining); ++g) {
            cur.gens[pos] = GenRef{remaining, g};
            out.push_back(cur);
        }
        return;
    }
    for (int i = 0; i <= remaining && i <= cx.max_degree(); ++i)
        for (int g = 0; g < cx.rank(i); ++g) {
            cur.gens[pos] = GenRef{i, g};
            for (int m = 0; m < dim; ++m) {
                cur.mids[pos] = m;
                enumerate_cores<K>(cx, remaining - i, pos + 1, cur, out);
            }
        }
}

}  // namespace

template <std::size_t K>
std::vector<Core<K>> cores_of_degree(const FreeBimoduleComplex& cx, int n) {
    std::vector<Core<K>> out;
    Core<K> cur;
    enumerate_cores<K>(cx, n, 0, cur, out);
    return out;
}

template std::vector<Core<1>> cores_of_degree<1>(const FreeBimoduleComplex&, int);
template std::vector<Core<2>> cores_of_degree<2>(const FreeBimoduleComplex&, int);
template std::vector<Core<3>> cores_of_degree<3>(const FreeBimoduleComplex&, int);

// ---------------------------------------------------------------- bar

namespace {

std::string word_label(const GradedAlgebra& a, const std::vector<int>& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + a.label(w[i]);
    return s + "]";
}

ComplexPtr build_bar(const AlgebraPtr& a, int max_degree, bool normalized) {
    auto cx = std::make_shared<FreeBimoduleComplex>(a, normalized ? ComplexKind::normalized_bar : ComplexKind::bar,
                                                    normalized ? "normalized bar" : "bar", max_degree);
    if (normalized && !a->augmented())
        throw std::invalid_argument("normalized bar resolution needs an augmented algebra");
    std::vector<int> letters;
    for (int i = 0; i < a->dim(); ++i)
        if (!normalized || i != a->unit()) letters.push_back(i);
    std::vector<std::vector<int>> words{{}};
    for (int n = 0; n <= max_degree; ++n) {
        for (auto& w : words) {
            Degree d = a->zero_degree();
            for (int l : w) d = d + a->degree(l);
            cx->add_generator(n, Generator{word_label(*a, w), d, w});
        }
        if (n > 0) {
            for (std::size_t gi = 0; gi < words.size(); ++gi) {
                const auto& w = words[gi];
                Chain<1> d;
                const Scalar one = a->field()->one();
                // j = 0: lambda_1 moves to the left coefficient
                std::vector<int> tail(w.begin() + 1, w.end());
                d.add(Tensor<1>{w[0], {cx->at(n - 1, tail)}, {}, a->unit()}, one);
                for (int j = 1; j < n; ++j) {
                    const AlgElem& prod = a->product(w[j - 1], w[j]);
                    Scalar sign = (j % 2) ? -one : one;
                    for (auto& [k, c] : prod) {
                        if (normalized && k == a->unit()) continue;
                        std::vector<int> v(w.begin(), w.begin() + (j - 1));
                        v.push_back(k);
                        v.insert(v.end(), w.begin() + j + 1, w.end());
                        d.add(Tensor<1>{a->unit(), {cx->at(n - 1, v)}, {}, a->unit()}, sign * c);
                    }
                }
                std::vector<int> head(w.begin(), w.end() - 1);
                d.add(Tensor<1>{a->unit(), {cx->at(n - 1, head)}, {}, w.back()}, (n % 2) ? -one : one);
                cx->set_differential(GenRef{n, static_cast<int>(gi)}, std::move(d));
            }
        }
        if (n == max_degree) break;
        std::vector<std::vector<int>> next;
        for (auto& w : words)
            for (int l : letters) {
                auto v = w;
                v.push_back(l);
                next.push_back(std::move(v));
            }
        words = std::move(next);
    }
    return cx;
}

}  // namespace

ComplexPtr bar_resolution(const AlgebraPtr& a, int max_degree) { return build_bar(a, max_degree, false); }
ComplexPtr normalized_bar_resolution(const AlgebraPtr& a, int max_degree) { return build_bar(a, max_degree, true); }

// ---------------------------------------------------------------- Koszul

ComplexPtr koszul_dual_numbers(const AlgebraPtr& r, int max_degree) {
    if (r->dim() != 2 || r->grading_rank() < 1) throw std::invalid_argument("Koszul resolution needs k[x]/(x^2)");
    int x = r->unit() == 0 ? 1 : 0;
    if (!r->product(x, x).empty()) throw std::invalid_argument("Koszul resolution needs x^2 = 0");
    auto cx = std::make_shared<FreeBimoduleComplex>(r, ComplexKind::koszul_dual_numbers, "Koszul " + r->label(x), max_degree);
    const Scalar one = r->field()->one();
    Degree d = r->zero_degree();
    for (int n = 0; n <= max_degree; ++n) {
        cx->add_generator(n, Generator{"e(" + std::to_string(n) + ")", d, {n}});
        if (n > 0) {
            Chain<1> dn;
            dn.add(Tensor<1>{x, {GenRef{n - 1, 0}}, {}, r->unit()}, one);
            dn.add(Tensor<1>{r->unit(), {GenRef{n - 1, 0}}, {}, x}, (n % 2) ? -one : one);
            cx->set_differential(GenRef{n, 0}, std::move(dn));
        }
        d = d + r->degree(x);
    }
    return cx;
}

ComplexPtr koszul_dual_numbers(const FieldPtr& field, const std::string& label, int max_degree) {
    return koszul_dual_numbers(truncated_poly(field, label, 2), max_degree);
}

// ---------------------------------------------------------------- total complex

namespace {

Degree negate(const Degree& d) {
    Degree out(d);
    for (auto& x : out) x = -x;
    return out;
}

const TensorFactors& factors_of(const FreeBimoduleComplex& tot) {
    const TensorFactors* f = tot.algebra()->factors();
    if (!f || tot.parts().size() != 2) throw std::invalid_argument(tot.name() + " is not a twisted total complex");
    return *f;
}

}  // namespace

GenRef total_generator(const FreeBimoduleComplex& tot, GenRef p, GenRef q) {
    return tot.at(p.deg + q.deg, {p.deg, p.idx, q.deg, q.idx});
}

std::pair<GenRef, GenRef> total_factors(const FreeBimoduleComplex& tot, GenRef g) {
    const auto& tag = tot.generator(g).tag;
    return {GenRef{tag[0], tag[1]}, GenRef{tag[2], tag[3]}};
}

Chain<1> twisted_pair(const FreeBimoduleComplex& tot, const Chain<1>& x, const Chain<1>& y) {
    const TensorFactors& f = factors_of(tot);
    const FreeBimoduleComplex& P = *tot.parts()[0];
    const FreeBimoduleComplex& Q = *tot.parts()[1];
    const GradedAlgebra& R = *f.left;
    const GradedAlgebra& S = *f.right;
    Chain<1> out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) {
            const Degree w = P.degree_of(a.gens[0]);
            const Degree v = Q.degree_of(b.gens[0]);
            const Degree& s = S.degree(b.left);
            const Degree& r2 = R.degree(a.right);
            Scalar tw = f.twist.eval(negate(w), s) * f.twist.eval(negate(r2), v + s);
            GenRef g = total_generator(tot, a.gens[0], b.gens[0]);
            out.add(Tensor<1>{f.pair(a.left, b.left), {g}, {}, f.pair(a.right, b.right)}, ca * cb * tw);
        }
    return out;
}

ComplexPtr twisted_tensor_resolution(const ComplexPtr& p, const ComplexPtr& q, const AlgebraPtr& lambda, int max_degree) {
    const TensorFactors* f = lambda->factors();
    if (!f) throw std::invalid_argument("twisted_tensor_resolution needs an algebra built as a twisted tensor product");
    if (f->left != p->algebra() || f->right != q->algebra())
        throw std::invalid_argument("factor complexes are not over the factors of the twisted tensor product");
    if (max_degree > p->max_degree() || max_degree > q->max_degree())
        throw std::invalid_argument("factor complexes are truncated below the requested degree");
    auto cx = std::make_shared<FreeBimoduleComplex>(lambda, ComplexKind::total, "Tot(" + p->name() + ", " + q->name() + ")", max_degree);
    cx->set_parts({p, q});
    for (int n = 0; n <= max_degree; ++n)
        for (int i = 0; i <= n; ++i)
            for (int gp = 0; gp < p->rank(i); ++gp)
                for (int gq = 0; gq < q->rank(n - i); ++gq) {
                    const auto& P = p->generator({i, gp});
                    const auto& Q = q->generator({n - i, gq});
                    std::string label = (p->rank(i) == 1 && q->rank(n - i) == 1)
                                            ? "e(" + std::to_string(i) + "," + std::to_string(n - i) + ")"
                                            : "(" + P.label + ")(x)(" + Q.label + ")";
                    cx->add_generator(n, Generator{label, concat(P.degree, Q.degree), {i, gp, n - i, gq}});
                }
    const Scalar one = lambda->field()->one();
    const GradedAlgebra& R = *f->left;
    const GradedAlgebra& S = *f->right;
    for (int n = 0; n <= max_degree; ++n)
        for (int g = 0; g < cx->rank(n); ++g) {
            auto [gp, gq] = total_factors(*cx, GenRef{n, g});
            if (n == 0) {
                AlgElem aug;
                for (auto& [r, cr] : p->augmentation(gp.idx))
                    for (auto& [s, cs] : q->augmentation(gq.idx)) aug.add(f->pair(r, s), cr * cs);
                cx->set_augmentation(g, aug);
                continue;
            }
            Chain<1> d;
            if (gp.deg > 0)
                d += twisted_pair(*cx, p->differential(gp), single(S, gq));
            if (gq.deg > 0) {
                Chain<1> part = twisted_pair(*cx, single(R, gp), q->differential(gq));
                d += (gp.deg % 2) ? part.scaled(-one) : part;
            }
            cx->set_differential(GenRef{n, g}, std::move(d));
        }
    return cx;
}

// ---------------------------------------------------------------- tensor powers

template <std::size_t K>
GenRef power_generator(const FreeBimoduleComplex& power, const Core<K>& c) {
    std::vector<int> tag;
    for (std::size_t k = 0; k < K; ++k) {
        if (k > 0) tag.push_back(c.mids[k - 1]);
        tag.push_back(c.gens[k].deg);
        tag.push_back(c.gens[k].idx);
    }
    return power.at(total_degree(c), tag);
}

template <std::size_t K>
Core<K> power_core(const FreeBimoduleComplex& power, GenRef g) {
    const auto& tag = power.generator(g).tag;
    Core<K> c;
    std::size_t t = 0;
    for (std::size_t k = 0; k < K; ++k) {
        if (k > 0) c.mids[k - 1] = tag[t++];
        c.gens[k].deg = tag[t++];
        c.gens[k].idx = tag[t++];
    }
    return c;
}

template GenRef power_generator<2>(const FreeBimoduleComplex&, const Core<2>&);
template GenRef power_generator<3>(const FreeBimoduleComplex&, const Core<3>&);
template Core<2> power_core<2>(const FreeBimoduleComplex&, GenRef);
template Core<3> power_core<3>(const FreeBimoduleComplex&, GenRef);

namespace {

template <std::size_t K>
ComplexPtr build_power(const ComplexPtr& k, int max_degree) {
    const GradedAlgebra& a = *k->algebra();
    auto cx = std::make_shared<FreeBimoduleComplex>(k->algebra(), ComplexKind::tensor_power,
                                                    k->name() + "^(x)" + std::to_string(K), max_degree);
    cx->set_parts({k}, static_cast<int>(K));
    for (int n = 0; n <= max_degree; ++n)
        for (auto& c : cores_of_degree<K>(*k, n)) {
            std::vector<int> tag;
            std::string label;
            Degree d = a.zero_degree();
            for (std::size_t i = 0; i < K; ++i) {
                if (i > 0) {
                    tag.push_back(c.mids[i - 1]);
                    label += "(x)" + a.label(c.mids[i - 1]) + "(x)";
                    d = d + a.degree(c.mids[i - 1]);
                }
                tag.push_back(c.gens[i].deg);
                tag.push_back(c.gens[i].idx);
                label += k->generator(c.gens[i]).label;
                d = d + k->degree_of(c.gens[i]);
            }
            int idx = cx->add_generator(n, Generator{label, d, tag});
            if (n == 0) {
                AlgElem aug = k->augmentation(c.gens[0].idx);
                for (std::size_t i = 1; i < K; ++i)
                    aug = a.multiply(a.multiply(aug, a.basis_element(c.mids[i - 1])), k->augmentation(c.gens[i].idx));
                cx->set_augmentation(idx, aug);
            }
        }
    for (int n = 1; n <= max_degree; ++n)
        for (int g = 0; g < cx->rank(n); ++g) {
            Core<K> c = power_core<K>(*cx, GenRef{n, g});
            Chain<K> dk = differential<K>(*k, single<K>(a, c));
            Chain<1> d;
            for (auto& [t, coeff] : dk) d.add(Tensor<1>{t.left, {power_generator<K>(*cx, core_of(t))}, {}, t.right}, coeff);
            cx->set_differential(GenRef{n, g}, std::move(d));
        }
    return cx;
}

}  // namespace

ComplexPtr tensor_over_algebra(const ComplexPtr& k, int copies, int max_degree) {
    if (max_degree > k->max_degree()) throw std::invalid_argument("base complex is truncated below the requested degree");
    if (copies == 2) return build_power<2>(k, max_degree);
    if (copies == 3) return build_power<3>(k, max_degree);
    throw std::invalid_argument("tensor_over_algebra supports 2 or 3 copies");
}

// ---------------------------------------------------------------- checks

namespace {

AlgElem augment(const FreeBimoduleComplex& k, const Chain<1>& c) {
    const GradedAlgebra& a = *k.algebra();
    AlgElem out;
    for (auto& [t, coeff] : c) {
        if (t.gens[0].deg != 0) continue;
        AlgElem v = a.multiply(a.multiply(a.basis_element(t.left), k.augmentation(t.gens[0].idx)), a.basis_element(t.right));
        out.add(v, coeff);
    }
    return out;
}

}  // namespace

std::string chain_str(const FreeBimoduleComplex& k, const Chain<1>& c) {
    if (c.empty()) return "0";
    const GradedAlgebra& a = *k.algebra();
    // generator first, then left-multiplied terms before right-multiplied ones
    std::vector<std::pair<std::tuple<GenRef, bool, int, int>, const Scalar*>> terms;
    for (auto& [t, coeff] : c) terms.push_back({{t.gens[0], t.left == a.unit(), t.left, t.right}, &coeff});
    std::sort(terms.begin(), terms.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::string out;
    for (auto& [key, cp] : terms) {
        auto [g, unit_left, left, right] = key;
        const Scalar& coeff = *cp;
        std::string body;
        if (!unit_left) body += a.label(left) + "*";
        body += k.generator(g).label;
        if (right != a.unit()) body += "*" + a.label(right);
        std::string cs = coeff.str();
        std::string term;
        if (coeff.is_one())
            term = body;
        else if ((-coeff).is_one())
            term = "-" + body;
        else {
            bool simple = cs.find_first_of("+-", 1) == std::string::npos && cs.find('/') == std::string::npos;
            term = (simple ? cs : "(" + cs + ")") + "*" + body;
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

CheckReport check_d_squared(const FreeBimoduleComplex& k, int max_degree) {
    CheckReport rep{"d^2 = 0 on " + k.name(), 0, {}};
    for (int n = 2; n <= std::min(max_degree, k.max_degree()); ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            Chain<1> dd = differential<1>(k, k.differential({n, g}));
            if (!dd.empty()) rep.failures.push_back({n, k.generator({n, g}).label, chain_str(k, dd)});
        }
    return rep;
}

CheckReport check_augmentation(const FreeBimoduleComplex& k) {
    CheckReport rep{"augmentation on " + k.name(), 0, {}};
    if (k.max_degree() < 1) return rep;
    for (int g = 0; g < k.rank(1); ++g) {
        ++rep.checked;
        AlgElem e = augment(k, k.differential({1, g}));
        if (!e.empty()) rep.failures.push_back({1, k.generator({1, g}).label, k.algebra()->element_str(e)});
    }
    return rep;
}

CheckReport check_internal_degrees(const FreeBimoduleComplex& k) {
    CheckReport rep{"internal degrees on " + k.name(), 0, {}};
    for (int n = 1; n <= k.max_degree(); ++n)
        for (int g = 0; g < k.rank(n); ++g) {
            ++rep.checked;
            Degree want = k.degree_of(GenRef{n, g});
            for (auto& [t, c] : k.differential({n, g}))
                if (k.degree_of(t) != want) {
                    rep.failures.push_back({n, k.generator({n, g}).label, "term of degree " + degree_str(k.degree_of(t))});
                    break;
                }
        }
    return rep;
}

CheckReport check_chain_map(const FreeBimoduleComplex& s, const FreeBimoduleComplex& t, const ChainMap& f, int max_degree) {
    CheckReport rep{"chain map " + s.name() + " -> " + t.name(), 0, {}};
    for (int g = 0; g < s.rank(0); ++g) {
        ++rep.checked;
        AlgElem lhs = augment(t, f(Core<1>{{GenRef{0, g}}, {}}));
        if (!(lhs == s.augmentation(g))) rep.failures.push_back({0, s.generator({0, g}).label, "augmentation mismatch"});
    }
    for (int n = 1; n <= max_degree; ++n)
        for (int g = 0; g < s.rank(n); ++g) {
            ++rep.checked;
            Chain<1> lhs = differential<1>(t, f(Core<1>{{GenRef{n, g}}, {}}));
            Chain<1> rhs = f.apply(s.differential({n, g}));
            if (!(lhs == rhs)) rep.failures.push_back({n, s.generator({n, g}).label, chain_str(t, lhs - rhs)});
        }
    return rep;
}

// ---------------------------------------------------------------- lifting

std::shared_ptr<ChainMap> lift_chain_map(const ComplexPtr& s, const ComplexPtr& t, int max_degree) {
    if (s->algebra() != t->algebra()) throw std::invalid_argument("lift_chain_map needs complexes over the same algebra");
    if (max_degree > s->max_degree() || max_degree > t->max_degree()) throw std::invalid_argument("lift degree exceeds truncation");
    const GradedAlgebra& a = *s->algebra();
    const FieldPtr& field = a.field();
    auto table = std::make_shared<std::vector<std::vector<Chain<1>>>>(max_degree + 1);

    for (int n = 0; n <= max_degree; ++n) {
        (*table)[n].resize(s->rank(n));
        for (int w = 0; w < s->rank(n); ++w) {
            const Degree want = s->degree_of(GenRef{n, w});
            std::vector<Tensor<1>> unknowns;
            for (int g = 0; g < t->rank(n); ++g) {
                Degree dg = t->degree_of(GenRef{n, g});
                for (int l = 0; l < a.dim(); ++l)
                    for (int r = 0; r < a.dim(); ++r)
                        if (dg + a.degree(l) + a.degree(r) == want) unknowns.push_back(Tensor<1>{l, {GenRef{n, g}}, {}, r});
            }
            // images of unknowns and the target, indexed by row keys
            std::vector<LinComb<int>> cols;
            std::map<Tensor<1>, int> rowkey;
            std::map<int, int> algkey;
            LinComb<int> rhs;
            auto key_of_tensor = [&](const Tensor<1>& x) {
                auto it = rowkey.emplace(x, static_cast<int>(rowkey.size()));
                return it.first->second;
            };
            if (n == 0) {
                for (auto& u : unknowns) {
                    LinComb<int> col;
                    for (auto& [b, c] : augment(*t, Chain<1>(u, field->one()))) col.add(b, c);
                    cols.push_back(col);
                }
                for (auto& [b, c] : s->augmentation(w)) rhs.add(b, c);
            } else {
                for (auto& u : unknowns) {
                    LinComb<int> col;
                    for (auto& [x, c] : bimodule_mul(a, u.left, t->differential(u.gens[0]), u.right)) col.add(key_of_tensor(x), c);
                    cols.push_back(col);
                }
                Chain<1> target;
                for (auto& [x, c] : s->differential({n, w})) {
                    const Chain<1>& img = (*table)[n - 1][x.gens[0].idx];
                    target.add(bimodule_mul(a, x.left, img, x.right), c);
                }
                for (auto& [x, c] : target) rhs.add(key_of_tensor(x), c);
            }
            int nrows = n == 0 ? a.dim() : static_cast<int>(rowkey.size());
            SparseMatrix m(field, nrows, static_cast<int>(unknowns.size()));
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (auto& [r, c] : cols[j]) m.add(r, static_cast<int>(j), c);
            Vec b(nrows, field->zero());
            for (auto& [r, c] : rhs) b[r] = c;
            auto x = solve(m, b);
            if (!x) throw std::runtime_error("lift_chain_map: inconsistent lifting equation at " + s->generator({n, w}).label);
            Chain<1> val;
            for (std::size_t j = 0; j < unknowns.size(); ++j) val.add(unknowns[j], (*x)[j]);
            (*table)[n][w] = std::move(val);
        }
    }
    return std::make_shared<ChainMap>(
        s->algebra(),
        [table](const Core<1>& c) -> Chain<1> {
            if (c.gens[0].deg >= static_cast<int>(table->size())) throw std::out_of_range("lifted chain map is truncated below this degree");
            return (*table)[c.gens[0].deg][c.gens[0].idx];
        },
        0);
}

}  // namespace hht
