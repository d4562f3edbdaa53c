#include "hhtwist/cohomology.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "hhtwist/expr.hpp"

namespace hht {

namespace {

Scalar sign(const FieldPtr& f, long e) { return (e % 2 != 0) ? -f->one() : f->one(); }

AlgElem sandwich(const GradedAlgebra& a, int left, const AlgElem& v, int right) {
    return a.multiply(a.multiply(a.basis_element(left), v), a.basis_element(right));
}

void require_same(const Cochain& f, const Cochain& g) {
    if (f.k != g.k) throw CochainError("cochains live on different complexes");
}

bool simple_coefficient(const std::string& s) {
    if (s.find('/') != std::string::npos) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return false;
    return true;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Splits at top-level occurrences of any of `seps`, keeping the separator
/// at the front of each following piece. A '-' right after '^' is part of
/// an exponent.
std::vector<std::string> split_top(std::string_view s, std::string_view seps, bool keep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    char prev = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        bool cut = depth == 0 && seps.find(ch) != std::string_view::npos && !(ch == '-' && prev == '^');
        if (cut) {
            out.push_back(cur);
            cur.clear();
            if (keep) cur += ch;
        } else {
            cur += ch;
        }
        if (!std::isspace(static_cast<unsigned char>(ch))) prev = ch;
    }
    out.push_back(cur);
    return out;
}

std::optional<GenRef> find_label(const FreeBimoduleComplex& k, const std::string& label) {
    for (int n = 0; n <= k.max_degree(); ++n)
        for (int i = 0; i < k.rank(n); ++i)
            if (k.generator({n, i}).label == label) return GenRef{n, i};
    return std::nullopt;
}

SparseMatrix from_columns(const FieldPtr& f, int rows, const std::vector<Vec>& cols) {
    SparseMatrix m(f, rows, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        for (int r = 0; r < rows; ++r)
            if (!cols[c][r].is_zero()) m.add(r, c, cols[c][r]);
    return m;
}

long lcm_index(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

}  // namespace

// ---------------------------------------------------------------- cochains

bool Cochain::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const AlgElem& v) { return v.empty(); });
}

Cochain Cochain::operator+(const Cochain& o) const {
    require_same(*this, o);
    if (o.n < 0) return *this;
    if (n < 0) return o;
    if (n != o.n || a != o.a) throw CochainError("adding cochains of different degrees");
    Cochain out = *this;
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] += o.values[i];
    return out;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(-k->algebra()->field()->one()); }

Cochain Cochain::scaled(const Scalar& c) const {
    Cochain out = *this;
    for (auto& v : out.values) v = v.scaled(c);
    return out;
}

Cochain zero_cochain(const ComplexPtr& k, int n, const Degree& a) {
    if (n > k->max_degree()) throw std::out_of_range("cochain degree " + std::to_string(n) + " beyond the resolution");
    Cochain f{k, n, a, {}};
    if (n >= 0) f.values.resize(static_cast<std::size_t>(k->rank(n)));
    return f;
}

Cochain monomial_cochain(const ComplexPtr& k, GenRef w, int b, const Scalar& c) {
    Cochain f = zero_cochain(k, w.deg, k->degree_of(w) - k->algebra()->degree(b));
    f.values.at(w.idx).add(b, c);
    return f;
}

void validate(const Cochain& f) {
    const GradedAlgebra& a = *f.k->algebra();
    if (f.n < 0) return;
    if (static_cast<int>(f.values.size()) != f.k->rank(f.n)) throw CochainError("cochain has the wrong number of values");
    for (int i = 0; i < f.k->rank(f.n); ++i)
        for (auto& [b, c] : f.values[i])
            if (a.degree(b) != f.k->degree_of({f.n, i}) - f.a)
                throw CochainError("inhomogeneous cochain: value " + a.label(b) + " on " + f.k->generator({f.n, i}).label +
                                   " does not have internal degree " + degree_str(f.a) + " removed");
}

AlgElem evaluate(const Cochain& f, const Chain<1>& c) {
    const GradedAlgebra& a = *f.k->algebra();
    AlgElem out;
    for (auto& [t, coeff] : c) {
        if (t.gens[0].deg != f.n) continue;
        const AlgElem& v = f.values[t.gens[0].idx];
        if (v.empty()) continue;
        out.add(sandwich(a, t.left, v, t.right), coeff);
    }
    return out;
}

Cochain coboundary(const Cochain& f) {
    if (f.n + 1 > f.k->max_degree())
        throw std::out_of_range("coboundary of a degree " + std::to_string(f.n) + " cochain needs the resolution through degree " +
                                std::to_string(f.n + 1));
    Cochain out = zero_cochain(f.k, f.n + 1, f.a);
    if (f.n < 0) return out;
    for (int i = 0; i < f.k->rank(f.n + 1); ++i) out.values[i] = evaluate(f, f.k->differential({f.n + 1, i}));
    return out;
}

Cochain pullback(const Cochain& f, const ChainMap& iota, const ComplexPtr& source) {
    Cochain out = zero_cochain(source, f.n, f.a);
    if (f.n < 0) return out;
    for (int i = 0; i < source->rank(f.n); ++i) out.values[i] = evaluate(f, iota(Core<1>{{GenRef{f.n, i}}, {}}));
    return out;
}

Cochain parse_cochain(const ComplexPtr& k, std::string_view text, std::optional<long> r) {
    const GradedAlgebra& alg = *k->algebra();
    const FieldPtr& field = alg.field();
    std::string src(text);
    for (std::size_t p; (p = src.find("e*(")) != std::string::npos;) src.erase(p + 1, 1);
    std::optional<Cochain> out;
    for (const std::string& raw : split_top(src, "+-", true)) {
        std::string term = trim(raw);
        if (term.empty() || term == "+") {
            if (term == "+") throw ParseError("dangling '+' in cochain");
            continue;
        }
        bool neg = false;
        if (term[0] == '+' || term[0] == '-') {
            neg = term[0] == '-';
            term = trim(term.substr(1));
        }
        std::vector<std::string> factors = split_top(term, "*", false);
        for (auto& f : factors) f = trim(f);
        if (factors.empty() || factors.back().empty()) throw ParseError("missing generator in cochain term '" + term + "'");

        std::string gen = factors.back();
        factors.pop_back();
        std::string label = gen;
        if (gen.size() > 3 && gen.compare(0, 2, "e(") == 0 && gen.back() == ')') {
            std::vector<std::string> idx = split_top(std::string_view(gen).substr(2, gen.size() - 3), ",", false);
            label = "e(";
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (i) label += ",";
                label += std::to_string(parse_index(trim(idx[i]), r));
            }
            label += ")";
        }
        auto w = find_label(*k, label);
        if (!w) throw ParseError("unknown generator '" + gen + "' (resolution built through degree " + std::to_string(k->max_degree()) + ")");

        int b = alg.unit();
        if (!factors.empty()) {
            if (auto m = alg.find(factors.back())) {
                b = *m;
                factors.pop_back();
            }
        }
        Scalar c = field->one();
        if (!factors.empty()) {
            std::string s;
            for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "*" : "") + factors[i];
            if (r) {
                const std::string rv = "(" + std::to_string(*r) + ")";
                s = std::regex_replace(s, std::regex("([0-9]+)r\\b"), "$1*" + rv);
                s = std::regex_replace(s, std::regex("\\br\\b"), rv);
            }
            c = parse_scalar(*field, s);
        }
        if (neg) c = -c;
        Cochain t = monomial_cochain(k, *w, b, c);
        if (!out) {
            out = t;
        } else {
            if (t.n != out->n) throw CochainError("cochain mixes homological degrees " + std::to_string(out->n) + " and " + std::to_string(t.n));
            if (t.a != out->a)
                throw CochainError("inhomogeneous cochain: internal degrees " + degree_str(out->a) + " and " + degree_str(t.a));
            *out = *out + t;
        }
    }
    if (!out) throw ParseError("empty cochain expression");
    return *out;
}

std::string cochain_str(const Cochain& f) {
    const GradedAlgebra& a = *f.k->algebra();
    std::string out;
    for (int i = 0; i < static_cast<int>(f.values.size()); ++i)
        for (auto& [b, c] : f.values[i]) {
            std::string body = f.k->generator({f.n, i}).label;
            if (b != a.unit()) body = a.label(b) + "*" + body;
            std::string term;
            if (c.is_one()) {
                term = body;
            } else if ((-c).is_one()) {
                term = "-" + body;
            } else {
                std::string cs = c.str();
                term = (simple_coefficient(cs) ? cs : "(" + cs + ")") + "*" + body;
            }
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- cohomology

struct Hochschild::Solved {
    HHCell cell;
    std::map<std::pair<int, int>, int> column_of;
    SparseMatrix d;  // C^{n,a} -> C^{n+1,a}
    std::optional<Solver> full;  // [basis | coboundaries]

    explicit Solved(const FieldPtr& f) : d(f, 0, 0) {}

    Vec to_vec(const Cochain& f) const {
        const FieldPtr& field = d.field();
        Vec v(cell.columns.size(), field->zero());
        for (int g = 0; g < static_cast<int>(f.values.size()); ++g)
            for (auto& [b, c] : f.values[g]) {
                auto it = column_of.find({g, b});
                if (it == column_of.end()) throw CochainError("inhomogeneous cochain");
                v[it->second] = c;
            }
        return v;
    }

    Cochain from_vec(const ComplexPtr& k, const Vec& v) const {
        Cochain f = zero_cochain(k, cell.n, cell.a);
        for (std::size_t c = 0; c < v.size(); ++c) f.values[cell.columns[c].first].add(cell.columns[c].second, v[c]);
        return f;
    }
};

Hochschild::Hochschild(ComplexPtr k, DiagonalPtr delta, HomotopyPtr phi)
    : k_(std::move(k)), delta_(std::move(delta)), delta2_(diagonal2(delta_)), phi_(std::move(phi)) {}

void Hochschild::check_same(const Cochain& f) const {
    if (f.k != k_) throw CochainError("cochain does not live on this resolution");
}

std::vector<Degree> Hochschild::internal_degrees(int n) const {
    if (n < 0 || n > k_->max_degree()) return {};
    std::set<Degree> out;
    const GradedAlgebra& a = algebra();
    for (int i = 0; i < k_->rank(n); ++i)
        for (int b = 0; b < a.dim(); ++b) out.insert(k_->degree_of({n, i}) - a.degree(b));
    return {out.begin(), out.end()};
}

std::shared_ptr<const Hochschild::Solved> Hochschild::compute(int n, const Degree& a) const {
    const GradedAlgebra& alg = algebra();
    const FieldPtr& field = alg.field();
    auto columns_of = [&](int m) {
        std::vector<std::pair<int, int>> cols;
        if (m < 0) return cols;
        for (int i = 0; i < k_->rank(m); ++i)
            for (int b = 0; b < alg.dim(); ++b)
                if (alg.degree(b) == k_->degree_of({m, i}) - a) cols.push_back({i, b});
        return cols;
    };
    // Matrix of d* from C^{m,a} to C^{m+1,a}.
    auto dual_differential = [&](int m, const std::vector<std::pair<int, int>>& src, const std::vector<std::pair<int, int>>& dst) {
        std::map<std::pair<int, int>, int> row_of;
        for (int r = 0; r < static_cast<int>(dst.size()); ++r) row_of[dst[r]] = r;
        std::map<std::pair<int, int>, int> col_of;
        for (int c = 0; c < static_cast<int>(src.size()); ++c) col_of[src[c]] = c;
        SparseMatrix mat(field, static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (int w = 0; w < k_->rank(m + 1); ++w)
            for (auto& [t, coeff] : k_->differential({m + 1, w})) {
                for (int b = 0; b < alg.dim(); ++b) {
                    auto it = col_of.find({t.gens[0].idx, b});
                    if (it == col_of.end()) continue;
                    for (auto& [b2, c2] : sandwich(alg, t.left, alg.basis_element(b), t.right))
                        mat.add(row_of.at({w, b2}), it->second, coeff * c2);
                }
            }
        return mat;
    };

    auto s = std::make_shared<Solved>(field);
    HHCell& cell = s->cell;
    cell.n = n;
    cell.a = a;
    cell.columns = columns_of(n);
    for (int c = 0; c < static_cast<int>(cell.columns.size()); ++c) s->column_of[cell.columns[c]] = c;
    const int dim = static_cast<int>(cell.columns.size());
    s->d = dual_differential(n, cell.columns, columns_of(n + 1));

    std::vector<Vec> image;
    if (n > 0) {
        auto prev = columns_of(n - 1);
        SparseMatrix dp = dual_differential(n - 1, prev, cell.columns);
        for (int c = 0; c < dp.cols(); ++c) {
            Vec v(dim, field->zero());
            for (int r = 0; r < dim; ++r) v[r] = dp.at(r, c);
            image.push_back(std::move(v));
        }
    }
    std::vector<Vec> kernel = kernel_basis(s->d);
    cell.cocycle_dim = static_cast<int>(kernel.size());
    cell.coboundary_dim = image.empty() ? 0 : rank(from_columns(field, dim, image));
    const int target = cell.cocycle_dim - cell.coboundary_dim;

    // Greedy choice of representatives: cocycle monomials first, then kernel vectors.
    std::vector<Vec> candidates;
    for (int c = 0; c < dim; ++c) {
        Vec e(dim, field->zero());
        e[c] = field->one();
        bool cocycle = true;
        for (auto& x : s->d.apply(e)) cocycle = cocycle && x.is_zero();
        if (cocycle) candidates.push_back(std::move(e));
    }
    candidates.insert(candidates.end(), kernel.begin(), kernel.end());
    std::vector<Vec> span = image;
    std::vector<Vec> reps;
    for (auto& v : candidates) {
        if (static_cast<int>(reps.size()) == target) break;
        if (!span.empty() && Solver(from_columns(field, dim, span)).consistent(v)) continue;
        span.push_back(v);
        reps.push_back(v);
    }
    if (static_cast<int>(reps.size()) != target) throw std::logic_error("cohomology basis selection failed");
    for (auto& v : reps) cell.basis.push_back(s->from_vec(k_, v));

    std::vector<Vec> full = reps;
    full.insert(full.end(), image.begin(), image.end());
    s->full.emplace(from_columns(field, dim, full));
    return s;
}

std::shared_ptr<const Hochschild::Solved> Hochschild::solved(int n, const Degree& a) const {
    if (n < 0) throw std::out_of_range("negative cohomological degree");
    if (n + 1 > k_->max_degree())
        throw std::out_of_range("cohomology in degree " + std::to_string(n) + " needs the resolution through degree " +
                                std::to_string(n + 1) + ", built through " + std::to_string(k_->max_degree()));
    auto key = std::make_pair(n, a);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = solvers_.find(key);
        if (it != solvers_.end()) return it->second;
    }
    auto s = compute(n, a);
    std::lock_guard<std::mutex> lock(mu_);
    return solvers_.emplace(key, std::move(s)).first->second;
}

const HHCell& Hochschild::cell(int n, const Degree& a) const { return solved(n, a)->cell; }

std::vector<const HHCell*> Hochschild::cohomology(int n) const {
    std::vector<Degree> degs = internal_degrees(n);
    std::vector<std::future<const HHCell*>> jobs;
    for (auto& a : degs) jobs.push_back(std::async(std::launch::async, [this, n, a] { return &cell(n, a); }));
    std::vector<const HHCell*> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

int Hochschild::dimension(int n) const {
    int d = 0;
    for (auto* c : cohomology(n)) d += c->dim();
    return d;
}

bool Hochschild::is_cocycle(const Cochain& f) const {
    check_same(f);
    if (f.n < 0) return true;
    return coboundary(f).is_zero();
}

std::vector<Scalar> Hochschild::reduce(const Cochain& f) const {
    check_same(f);
    if (f.n < 0) return {};
    auto s = solved(f.n, f.a);
    Vec v = s->to_vec(f);
    for (auto& x : s->d.apply(v))
        if (!x.is_zero()) throw CochainError("not a cocycle: " + cochain_str(f));
    auto sol = s->full->solve(v);
    if (!sol) throw std::logic_error("cocycle outside the span of basis and coboundaries");
    sol->resize(s->cell.basis.size());
    return *sol;
}

bool Hochschild::is_coboundary(const Cochain& f) const {
    auto c = reduce(f);
    return std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool Hochschild::same_class(const Cochain& f, const Cochain& g) const {
    if (f.n != g.n) return f.is_zero() && g.is_zero();
    if (f.a != g.a) return is_coboundary(f) && is_coboundary(g);
    return is_coboundary(f - g);
}

Cochain Hochschild::class_cochain(int n, const Degree& a, const std::vector<Scalar>& coords) const {
    const HHCell& c = cell(n, a);
    Cochain out = zero_cochain(k_, n, a);
    for (std::size_t i = 0; i < coords.size() && i < c.basis.size(); ++i) out = out + c.basis[i].scaled(coords[i]);
    return out;
}

Cochain Hochschild::cup(const Cochain& f, const Cochain& g) const {
    check_same(f);
    check_same(g);
    const int i = f.n, j = g.n;
    Degree a = f.a + g.a;
    if (i < 0 || j < 0) return zero_cochain(k_, -1, a);
    if (i + j > k_->max_degree())
        throw std::out_of_range("cup product of degrees " + std::to_string(i) + " and " + std::to_string(j) +
                                " needs the resolution through degree " + std::to_string(i + j));
    const GradedAlgebra& alg = algebra();
    Cochain out = zero_cochain(k_, i + j, a);
    for (int w = 0; w < k_->rank(i + j); ++w)
        for (auto& [t, c] : (*delta_)(Core<1>{{GenRef{i + j, w}}, {}})) {
            if (t.gens[0].deg != i) continue;
            const AlgElem& fv = f.values[t.gens[0].idx];
            const AlgElem& gv = g.values[t.gens[1].idx];
            if (fv.empty() || gv.empty()) continue;
            AlgElem v = alg.multiply(alg.multiply(fv, alg.basis_element(t.mids[0])), gv);
            out.values[w].add(sandwich(alg, t.left, v, t.right), c);
        }
    return out;
}

Cochain Hochschild::circle(const Cochain& f, const Cochain& g) const {
    check_same(f);
    check_same(g);
    const int i = f.n, j = g.n, n = i + j - 1;
    Degree a = f.a + g.a;
    if (i < 0 || j < 0 || n < 0) return zero_cochain(k_, -1, a);
    if (n > k_->max_degree())
        throw std::out_of_range("circle product of degrees " + std::to_string(i) + " and " + std::to_string(j) +
                                " needs the resolution through degree " + std::to_string(n));
    const GradedAlgebra& alg = algebra();
    const FieldPtr& field = alg.field();
    Cochain out = zero_cochain(k_, n, a);
    for (int w = 0; w < k_->rank(n); ++w) {
        Chain<2> mid;
        for (auto& [t, c] : (*delta2_)(Core<1>{{GenRef{n, w}}, {}})) {
            if (t.gens[1].deg != j) continue;
            const AlgElem& gv = g.values[t.gens[1].idx];
            if (gv.empty()) continue;
            Scalar sc = c * sign(field, static_cast<long>(t.gens[0].deg) * j);
            for (auto& [b, cb] : sandwich(alg, t.mids[0], gv, t.mids[1]))
                mid.add(Tensor<2>{t.left, {t.gens[0], t.gens[2]}, {b}, t.right}, sc * cb);
        }
        out.values[w] = evaluate(f, phi_->apply(mid));
    }
    return out;
}

Cochain Hochschild::bracket(const Cochain& f, const Cochain& g) const {
    Cochain fg = circle(f, g);
    if (fg.n < 0) return fg;
    Cochain gf = circle(g, f);
    long e = static_cast<long>(f.n - 1) * (g.n - 1);
    return fg - gf.scaled(sign(algebra().field(), e));
}

// ---------------------------------------------------------------- Gerstenhaber laws

namespace {

std::string pair_name(const Cochain& f, const Cochain& g) { return cochain_str(f) + " , " + cochain_str(g); }

bool coboundary_or_empty(const Hochschild& h, const Cochain& f) { return f.n < 0 || h.is_coboundary(f); }

}  // namespace

CheckReport check_cup_commutative(const Hochschild& h, const std::vector<Cochain>& gens) {
    CheckReport rep{"graded commutativity of cup", 0, {}};
    const FieldPtr& f = h.algebra().field();
    const int top = h.complex()->max_degree() - 1;
    for (std::size_t x = 0; x < gens.size(); ++x)
        for (std::size_t y = x; y < gens.size(); ++y) {
            const Cochain &a = gens[x], &b = gens[y];
            if (a.n + b.n > top) continue;
            ++rep.checked;
            if (!h.is_coboundary(h.cup(a, b) - h.cup(b, a).scaled(sign(f, static_cast<long>(a.n) * b.n))))
                rep.failures.push_back({a.n + b.n, pair_name(a, b), "f g - (-1)^(ij) g f is not a coboundary"});
        }
    return rep;
}

CheckReport check_bracket_antisymmetry(const Hochschild& h, const std::vector<Cochain>& gens) {
    CheckReport rep{"graded antisymmetry of bracket", 0, {}};
    const FieldPtr& f = h.algebra().field();
    const int top = h.complex()->max_degree();
    for (std::size_t x = 0; x < gens.size(); ++x)
        for (std::size_t y = x; y < gens.size(); ++y) {
            const Cochain &a = gens[x], &b = gens[y];
            if (a.n + b.n - 1 > top || a.n + b.n - 1 < 0) continue;
            ++rep.checked;
            if (h.bracket(a, b) != h.bracket(b, a).scaled(-sign(f, static_cast<long>(a.n - 1) * (b.n - 1))))
                rep.failures.push_back({a.n + b.n - 1, pair_name(a, b), "[f,g] + (-1)^((i-1)(j-1)) [g,f] != 0"});
        }
    return rep;
}

CheckReport check_jacobi(const Hochschild& h, const std::vector<Cochain>& gens) {
    CheckReport rep{"graded Jacobi identity", 0, {}};
    const FieldPtr& f = h.algebra().field();
    const int top = h.complex()->max_degree() - 1;
    for (std::size_t x = 0; x < gens.size(); ++x)
        for (std::size_t y = x; y < gens.size(); ++y)
            for (std::size_t z = y; z < gens.size(); ++z) {
                const Cochain &a = gens[x], &b = gens[y], &c = gens[z];
                const long i = a.n, j = b.n, l = c.n;
                if (i + j + l - 2 > top || i + j + l - 2 < 0) continue;
                ++rep.checked;
                Cochain jac = h.bracket(a, h.bracket(b, c)).scaled(sign(f, (i - 1) * (l - 1))) +
                              h.bracket(b, h.bracket(c, a)).scaled(sign(f, (j - 1) * (i - 1))) +
                              h.bracket(c, h.bracket(a, b)).scaled(sign(f, (l - 1) * (j - 1)));
                if (!coboundary_or_empty(h, jac))
                    rep.failures.push_back({static_cast<int>(i + j + l - 2), pair_name(a, b) + " , " + cochain_str(c), "Jacobi sum is not a coboundary"});
            }
    return rep;
}

CheckReport check_derivation(const Hochschild& h, const std::vector<Cochain>& gens) {
    CheckReport rep{"bracket is a graded derivation of cup", 0, {}};
    const FieldPtr& f = h.algebra().field();
    const int top = h.complex()->max_degree() - 1;
    for (auto& a : gens)
        for (auto& b : gens)
            for (auto& c : gens) {
                const long i = a.n, j = b.n, l = c.n;
                if (i + j + l - 1 > top || i + j + l - 1 < 0) continue;
                ++rep.checked;
                Cochain der = h.bracket(h.cup(a, b), c) - h.cup(h.bracket(a, c), b) - h.cup(a, h.bracket(b, c)).scaled(sign(f, i * (l - 1)));
                if (!coboundary_or_empty(h, der))
                    rep.failures.push_back({static_cast<int>(i + j + l - 1), pair_name(a, b) + " , " + cochain_str(c), "derivation defect is not a coboundary"});
            }
    return rep;
}

CheckReport check_cup_commutator(const Hochschild& h, const std::vector<Cochain>& gens) {
    CheckReport rep{"cup commutator is the coboundary of the circle product", 0, {}};
    const FieldPtr& f = h.algebra().field();
    const int top = h.complex()->max_degree();
    for (auto& a : gens)
        for (auto& b : gens) {
            const long m = a.n, mp = b.n;
            if (m + mp > top || m + mp - 1 < 0) continue;
            ++rep.checked;
            Cochain lhs = h.cup(b, a) - h.cup(a, b).scaled(sign(f, m * mp));
            if (lhs != coboundary(h.circle(a, b)).scaled(sign(f, mp)))
                rep.failures.push_back({static_cast<int>(m + mp), pair_name(a, b), "chain-level relation fails"});
        }
    return rep;
}

std::vector<Cochain> cohomology_basis(const Hochschild& h, int max_degree) {
    std::vector<Cochain> out;
    for (int n = 0; n <= max_degree; ++n)
        for (auto* c : h.cohomology(n)) out.insert(out.end(), c->basis.begin(), c->basis.end());
    return out;
}

// ---------------------------------------------------------------- twisted tensor products

bool Lattice::contains(const Degree& a) const {
    if (a.size() != index.size()) return false;
    for (std::size_t u = 0; u < a.size(); ++u) {
        if (index[u] == 0 ? a[u] != 0 : a[u] % index[u] != 0) return false;
    }
    return true;
}

std::string Lattice::str() const {
    std::string out;
    for (std::size_t u = 0; u < index.size(); ++u) {
        if (u) out += " + ";
        out += index[u] == 0 ? "0" : index[u] == 1 ? "Z" : std::to_string(index[u]) + "Z";
    }
    return out;
}

std::pair<Lattice, Lattice> subgroup_restriction(const Twist& t) {
    Lattice a{std::vector<long>(t.rows(), 1)}, b{std::vector<long>(t.cols(), 1)};
    for (int u = 0; u < t.rows(); ++u)
        for (int v = 0; v < t.cols(); ++v) {
            long o = scalar_order(t.entry(u, v)).value_or(0);
            a.index[u] = lcm_index(a.index[u], o);
            b.index[v] = lcm_index(b.index[v], o);
        }
    return {a, b};
}

std::vector<Cochain> restricted_basis(const Hochschild& h, const Lattice& l, int n) {
    std::vector<Cochain> out;
    for (auto* c : h.cohomology(n))
        if (l.contains(c->a)) out.insert(out.end(), c->basis.begin(), c->basis.end());
    return out;
}

TensorCochain tensor_cup(const Hochschild& hr, const Hochschild& hs, const TensorTerm& x, const TensorTerm& y) {
    const long m1 = x.right.n, m2 = y.left.n;
    Scalar c = x.coeff * y.coeff * sign(x.coeff.field(), m2 * m1);
    return {{c, hr.cup(x.left, y.left), hs.cup(x.right, y.right)}};
}

TensorCochain tensor_bracket(const Hochschild& hr, const Hochschild& hs, const TensorTerm& x, const TensorTerm& y) {
    const long m = x.left.n, n = x.right.n, m2 = y.left.n, n2 = y.right.n;
    const FieldPtr& f = x.coeff.field();
    Scalar c = x.coeff * y.coeff;
    TensorCochain out;
    Cochain ff = hr.bracket(x.left, y.left);
    if (ff.n >= 0) out.push_back({c * sign(f, (m + n - 1) * n2), ff, hs.cup(x.right, y.right)});
    Cochain gg = hs.bracket(x.right, y.right);
    if (gg.n >= 0) out.push_back({c * sign(f, m * (m2 + n2 - 1)), hr.cup(x.left, y.left), gg});
    return out;
}

Cochain transport(const ComplexPtr& tot, const TensorCochain& c) {
    if (tot->kind() != ComplexKind::total) throw std::invalid_argument("transport needs a total complex");
    const GradedAlgebra& lambda = *tot->algebra();
    const TensorFactors& fac = *lambda.factors();
    std::optional<Cochain> out;
    for (auto& term : c) {
        const int n = term.left.n + term.right.n;
        Cochain f = zero_cochain(tot, n, concat(term.left.a, term.right.a));
        for (int g = 0; g < tot->rank(n); ++g) {
            auto [p, q] = total_factors(*tot, {n, g});
            if (p.deg != term.left.n) continue;
            const AlgElem& av = term.left.values[p.idx];
            const AlgElem& bv = term.right.values[q.idx];
            for (auto& [r, rc] : av)
                for (auto& [s, sc] : bv) f.values[g].add(fac.pair(r, s), term.coeff * rc * sc);
        }
        out = out ? *out + f : f;
    }
    if (!out) throw std::invalid_argument("transport of an empty tensor");
    return *out;
}

MainTheoremReport verify_main_theorem(const AlgebraPtr& r, const AlgebraPtr& s, const Twist& t, int max_degree) {
    MainTheoremReport rep;
    std::tie(rep.a_prime, rep.b_prime) = subgroup_restriction(t);
    const int top = max_degree + 1;
    auto lambda = twisted_tensor_algebra(r, s, t);
    auto p = normalized_bar_resolution(r, top);
    auto q = normalized_bar_resolution(s, top);
    auto tot = twisted_tensor_resolution(p, q, lambda, top);
    Hochschild hr(p, diagonal_bar(p), phi_bar(p));
    Hochschild hs(q, diagonal_bar(q), phi_bar(q));
    Hochschild hk(tot, diagonal_twisted_nbar(tot), phi_twisted(sigma(tot), phi_bar(p), phi_bar(q)));
    const FieldPtr& field = lambda->field();

    std::vector<std::vector<Cochain>> rb(top), sb(top);
    for (int n = 0; n <= max_degree; ++n) {
        rb[n] = restricted_basis(hr, rep.a_prime, n);
        sb[n] = restricted_basis(hs, rep.b_prime, n);
    }
    std::vector<TensorTerm> classes;
    for (int d = 0; d <= max_degree; ++d)
        for (int m = 0; m <= d; ++m)
            for (auto& f : rb[m])
                for (auto& g : sb[d - m]) classes.push_back({field->one(), f, g});
    rep.classes = static_cast<int>(classes.size());

    auto label = [&](const TensorTerm& x) { return "(" + cochain_str(x.left) + ")(x)(" + cochain_str(x.right) + ")"; };
    struct Outcome {
        int brackets = 0, cups = 0;
        std::vector<CheckFailure> bad_brackets, bad_cups;
    };
    auto run = [&](std::size_t i) {
        Outcome o;
        const TensorTerm& x = classes[i];
        Cochain tx = transport(tot, {x});
        const int dx = x.left.n + x.right.n;
        for (const TensorTerm& y : classes) {
            const int dy = y.left.n + y.right.n;
            if (dx + dy - 1 > max_degree) continue;
            Cochain ty = transport(tot, {y});
            Cochain lhs = hk.bracket(tx, ty);
            if (lhs.n >= 0) {
                TensorCochain rhs = tensor_bracket(hr, hs, x, y);
                ++o.brackets;
                bool same = rhs.empty() ? hk.is_coboundary(lhs) : hk.same_class(lhs, transport(tot, rhs));
                if (!same) o.bad_brackets.push_back({dx + dy - 1, "[" + label(x) + ", " + label(y) + "]", cochain_str(lhs)});
            }
            if (dx + dy <= max_degree) {
                ++o.cups;
                Cochain lc = hk.cup(tx, ty);
                if (!hk.same_class(lc, transport(tot, tensor_cup(hr, hs, x, y))))
                    o.bad_cups.push_back({dx + dy, label(x) + " cup " + label(y), cochain_str(lc)});
            }
        }
        return o;
    };
    std::vector<std::future<Outcome>> jobs;
    for (std::size_t i = 0; i < classes.size(); ++i) jobs.push_back(std::async(std::launch::async, run, i));
    for (auto& j : jobs) {
        Outcome o = j.get();
        rep.brackets.checked += o.brackets;
        rep.cups.checked += o.cups;
        rep.brackets.failures.insert(rep.brackets.failures.end(), o.bad_brackets.begin(), o.bad_brackets.end());
        rep.cups.failures.insert(rep.cups.failures.end(), o.bad_cups.begin(), o.bad_cups.end());
    }
    return rep;
}

}  // namespace hht
