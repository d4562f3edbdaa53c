#include "hhtwist/qci.hpp"

#include <future>
#include <map>
#include <regex>
#include <stdexcept>

namespace hht {

namespace {

struct Entry {
    std::string f, g, expected;
};

struct CircleEntry {
    std::string f, g, at, expected;
};

struct TensorName {
    std::string name, left, right;
};

struct CaseData {
    std::vector<std::string> generators;
    std::vector<Entry> brackets;
    std::vector<CircleEntry> circles;
    std::vector<TensorName> tensors;
};

const CaseData& case_data(QciKind k) {
    static const std::map<QciKind, CaseData> data = {
        {QciKind::generic,
         {{"xy*e(0,0)", "x*e(1,0)", "y*e(0,1)"},
          {{"x*e(1,0)", "xy*e(0,0)", "xy*e(0,0)"}, {"y*e(0,1)", "xy*e(0,0)", "xy*e(0,0)"}},
          {{"x*e(1,0)", "x*e(1,0)", "e(1,0)", "x"},
           {"x*e(1,0)", "y*e(0,1)", "e(0,1)", "0"},
           {"y*e(0,1)", "x*e(1,0)", "e(1,0)", "0"},
           {"y*e(0,1)", "y*e(0,1)", "e(0,1)", "y"}},
          {}}},
        {QciKind::minus_one,
         {{"x*e(0,0)", "y*e(0,0)", "x*e(1,0)", "y*e(0,1)", "e(2,0)", "e(0,2)"},
          {{"x*e(1,0)", "x*e(0,0)", "x*e(0,0)"},
           {"y*e(0,1)", "y*e(0,0)", "y*e(0,0)"},
           {"x*e(1,0)", "e(2,0)", "-2*e(2,0)"},
           {"y*e(0,1)", "e(0,2)", "-2*e(0,2)"}},
          {{"x*e(1,0)", "x*e(0,0)", "e(0,0)", "x"},
           {"y*e(0,1)", "y*e(0,0)", "e(0,0)", "y"},
           {"x*e(1,0)", "x*e(1,0)", "e(1,0)", "x"},
           {"y*e(0,1)", "y*e(0,1)", "e(0,1)", "y"},
           {"e(2,0)", "x*e(1,0)", "e(2,0)", "2"},
           {"e(0,2)", "y*e(0,1)", "e(0,2)", "2"}},
          {{"x*e(0,0)", "x*e(0)", "e(0)"},
           {"y*e(0,0)", "e(0)", "y*e(0)"},
           {"x*e(1,0)", "x*e(1)", "e(0)"},
           {"y*e(0,1)", "e(0)", "y*e(1)"},
           {"e(2,0)", "e(2)", "e(0)"},
           {"e(0,2)", "e(0)", "e(2)"}}}},
        {QciKind::odd_root,
         {{"xy*e(0,0)", "x*e(1,0)", "y*e(0,1)", "e(2r,0)", "e(r,r)", "e(0,2r)"},
          {{"x*e(1,0)", "xy*e(0,0)", "xy*e(0,0)"},
           {"y*e(0,1)", "xy*e(0,0)", "xy*e(0,0)"},
           {"e(2r,0)", "x*e(1,0)", "2r*e(2r,0)"},
           {"e(r,r)", "x*e(1,0)", "r*e(r,r)"},
           {"e(r,r)", "y*e(0,1)", "r*e(r,r)"},
           {"e(0,2r)", "y*e(0,1)", "2r*e(0,2r)"}},
          {},
          {}}},
        {QciKind::even_root,
         {{"xy*e(0,0)", "x*e(1,0)", "y*e(0,1)", "e(r,0)", "e(0,r)"},
          {{"x*e(1,0)", "xy*e(0,0)", "xy*e(0,0)"},
           {"y*e(0,1)", "xy*e(0,0)", "xy*e(0,0)"},
           {"e(r,0)", "x*e(1,0)", "r*e(r,0)"},
           {"e(0,r)", "y*e(0,1)", "r*e(0,r)"}},
          {},
          {}}},
        {QciKind::char2_one,
         {{"x*e(0,0)", "y*e(0,0)", "e(1,0)", "e(0,1)"},
          {{"x*e(0,0)", "e(1,0)", "e(0,0)"}, {"y*e(0,0)", "e(0,1)", "e(0,0)"}},
          {},
          {{"x*e(0,0)", "x*e(0)", "e(0)"},
           {"y*e(0,0)", "e(0)", "y*e(0)"},
           {"e(1,0)", "e(1)", "e(0)"},
           {"e(0,1)", "e(0)", "e(1)"}}}},
        {QciKind::char0_one,
         {{"xy*e(0,0)", "x*e(1,0)", "y*e(1,0)", "x*e(0,1)", "y*e(0,1)", "e(2,0)", "e(1,1)", "e(0,2)"},
          {{"xy*e(0,0)", "x*e(1,0)", "-xy*e(0,0)"},
           {"xy*e(0,0)", "y*e(0,1)", "-xy*e(0,0)"},
           {"xy*e(0,0)", "e(2,0)", "-2*y*e(1,0)"},
           {"xy*e(0,0)", "e(1,1)", "-y*e(0,1) + x*e(1,0)"},
           {"xy*e(0,0)", "e(0,2)", "2*x*e(0,1)"},
           {"x*e(1,0)", "y*e(1,0)", "-y*e(1,0)"},
           {"x*e(1,0)", "x*e(0,1)", "x*e(0,1)"},
           {"y*e(1,0)", "x*e(0,1)", "y*e(0,1) - x*e(1,0)"},
           {"y*e(1,0)", "y*e(0,1)", "-y*e(1,0)"},
           {"x*e(0,1)", "y*e(0,1)", "x*e(0,1)"},
           {"x*e(1,0)", "e(2,0)", "-2*e(2,0)"},
           {"x*e(1,0)", "e(1,1)", "-e(1,1)"},
           {"y*e(1,0)", "e(1,1)", "-e(2,0)"},
           {"y*e(1,0)", "e(0,2)", "-2*e(1,1)"},
           {"x*e(0,1)", "e(2,0)", "-2*e(1,1)"},
           {"x*e(0,1)", "e(1,1)", "-e(0,2)"},
           {"y*e(0,1)", "e(1,1)", "-e(1,1)"},
           {"y*e(0,1)", "e(0,2)", "-2*e(0,2)"}},
          {},
          {}}},
    };
    return data.at(k);
}

std::optional<long> r_of(const QciCase& c) {
    if (c.kind == QciKind::odd_root || c.kind == QciKind::even_root) return c.r;
    return std::nullopt;
}

Scalar sign(const FieldPtr& f, long e) { return (e % 2 != 0) ? -f->one() : f->one(); }

std::string render_class(const Hochschild& h, const Cochain& f, std::vector<Scalar>& coords) {
    if (f.n < 0) return "0";
    coords = h.reduce(f);
    return display_name(cochain_str(h.class_cochain(f.n, f.a, coords)));
}

AlgElem parse_value(const QciBuild& b, const std::string& text) {
    if (text == "0") return {};
    Cochain v = parse_cochain(b.k, text + "*e(0,0)", r_of(b.c));
    return v.values.at(0);
}

}  // namespace

std::string kind_name(QciKind k) {
    switch (k) {
        case QciKind::generic: return "generic";
        case QciKind::minus_one: return "q=-1";
        case QciKind::odd_root: return "odd-root";
        case QciKind::even_root: return "even-root";
        case QciKind::char2_one: return "char2-q=1";
        case QciKind::char0_one: return "q=1";
    }
    return "?";
}

QciCase classify(const FieldPtr& field, const Scalar& q) {
    if (q.is_zero()) throw std::invalid_argument("q must be nonzero");
    QciCase c{QciKind::generic, field, q, 0};
    const bool char2 = field->characteristic() == 2;
    auto ord = scalar_order(q);
    if (!ord) return c;
    c.r = static_cast<int>(*ord);
    if (*ord == 1)
        c.kind = char2 ? QciKind::char2_one : QciKind::char0_one;
    else if (!char2 && *ord == 2)
        c.kind = QciKind::minus_one;
    else if (!char2 && *ord % 2 == 1)
        c.kind = QciKind::odd_root;
    else
        c.kind = QciKind::even_root;
    return c;
}

QciCase default_case(QciKind kind) {
    switch (kind) {
        case QciKind::generic: return case_from_spec("generic", 0);
        case QciKind::minus_one: return case_from_spec("-1", 0);
        case QciKind::odd_root: return case_from_spec("root:3", 0);
        case QciKind::even_root: return case_from_spec("root:4", 0);
        case QciKind::char2_one: return case_from_spec("1", 2);
        case QciKind::char0_one: return case_from_spec("1", 0);
    }
    throw std::invalid_argument("unknown case");
}

QciCase case_from_spec(const std::string& q, long p) {
    if (p < 0) throw std::invalid_argument("characteristic must be 0 or a prime");
    FieldPtr f;
    if (q == "generic") {
        if (p != 0) throw std::invalid_argument("generic q is only available in characteristic 0 (the field Q(q))");
        f = Field::rational_functions();
    } else if (q.rfind("root:", 0) == 0) {
        int r = 0;
        try {
            r = std::stoi(q.substr(5));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad root order in '" + q + "'");
        }
        if (r < 1) throw std::invalid_argument("root order must be positive");
        f = Field::cyclotomic(r, p);
    } else {
        f = Field::make({p == 0 ? FieldKind::rationals : FieldKind::prime, p, 0, q});
    }
    return classify(f, f->q());
}

int required_degree(const QciCase& c) {
    switch (c.kind) {
        case QciKind::odd_root: return 4 * c.r + 1;
        case QciKind::even_root: return 2 * c.r + 1;
        default: return 6;
    }
}

QciBuild build_resolution(const QciCase& c, int max_degree, PhiChoice phi) {
    QciBuild b;
    b.c = c;
    b.lambda = quantum_complete_intersection(c.field, c.q);
    auto kx = koszul_dual_numbers(b.lambda->factors()->left, max_degree);
    auto ky = koszul_dual_numbers(b.lambda->factors()->right, max_degree);
    b.k = twisted_tensor_resolution(kx, ky, b.lambda, max_degree);
    HomotopyPtr h = phi == PhiChoice::closed_form
                        ? phi_qci(b.k)
                        : phi_twisted(sigma(b.k), phi_koszul_dual_numbers(kx), phi_koszul_dual_numbers(ky));
    b.hh = std::make_shared<Hochschild>(b.k, diagonal_qci(b.k), h);
    return b;
}

QciBuild build_case(const QciCase& c, int max_degree, PhiChoice phi) {
    QciBuild b = build_resolution(c, max_degree, phi);
    for (auto& g : case_data(c.kind).generators) {
        Cochain f = parse_cochain(b.k, g, r_of(c));
        if (!b.hh->is_cocycle(f)) throw std::logic_error("generator " + g + " is not a cocycle");
        b.generators.push_back({display_name(cochain_str(f)), f});
    }
    return b;
}

std::string display_name(const std::string& text) {
    std::string s = std::regex_replace(text, std::regex("\\*e\\(0,0\\)"), "");
    s = std::regex_replace(s, std::regex("(^|[^a-z*])e\\(0,0\\)"), "$011");
    return std::regex_replace(s, std::regex("e\\("), "e*(");
}

BracketTable bracket_table(const QciBuild& b) {
    const CaseData& data = case_data(b.c.kind);
    const Hochschild& h = *b.hh;
    const FieldPtr& field = b.c.field;
    const auto r = r_of(b.c);
    BracketTable t;
    t.c = b.c;
    t.max_degree = b.k->max_degree();
    if (t.max_degree < required_degree(b.c))
        throw std::out_of_range("the " + kind_name(b.c.kind) + " table needs the resolution through degree " +
                                std::to_string(required_degree(b.c)));
    for (auto& g : b.generators) t.generators.push_back(g.name);

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < data.generators.size(); ++i) index[data.generators[i]] = i;
    std::map<std::pair<std::size_t, std::size_t>, std::string> listed;
    for (auto& e : data.brackets) listed[{index.at(e.f), index.at(e.g)}] = e.expected;

    struct Job {
        std::size_t a, b;
        std::optional<std::string> expected;
    };
    std::vector<Job> jobs;
    for (std::size_t x = 0; x < b.generators.size(); ++x)
        for (std::size_t y = x; y < b.generators.size(); ++y) {
            if (auto it = listed.find({x, y}); it != listed.end())
                jobs.push_back({x, y, it->second});
            else if (auto it2 = listed.find({y, x}); it2 != listed.end())
                jobs.push_back({y, x, it2->second});
            else
                jobs.push_back({x, y, std::nullopt});
        }

    auto run = [&](const Job& j) {
        const Cochain& f = b.generators[j.a].cochain;
        const Cochain& g = b.generators[j.b].cochain;
        BracketRow row;
        row.f = b.generators[j.a].name;
        row.g = b.generators[j.b].name;
        row.listed = j.expected.has_value();
        Cochain br = h.bracket(f, g);
        row.internal_degree = br.a;
        row.computed = render_class(h, br, row.coords);
        if (j.expected) {
            Cochain want = parse_cochain(b.k, *j.expected, r);
            row.expected = display_name(cochain_str(want));
            row.ok = br.n == want.n && h.same_class(br, want);
            row.chain_level = br == want;
            Cochain rev = h.bracket(g, f);
            if (rev != br.scaled(-sign(field, static_cast<long>(f.n - 1) * (g.n - 1)))) row.ok = false;
        } else {
            row.expected = "0";
            row.ok = br.n < 0 || h.is_coboundary(br);
            row.chain_level = br.is_zero();
        }
        return row;
    };
    std::vector<std::future<BracketRow>> futures;
    for (auto& j : jobs) futures.push_back(std::async(std::launch::async, run, j));
    for (auto& fu : futures) {
        t.brackets.push_back(fu.get());
        const BracketRow& row = t.brackets.back();
        if (!row.ok) t.diff.push_back("[" + row.f + ", " + row.g + "]: expected " + row.expected + ", computed " + row.computed);
    }

    auto gen = [&](const std::string& text) { return parse_cochain(b.k, text, r); };
    for (auto& c : data.circles) {
        Cochain fg = h.circle(gen(c.f), gen(c.g));
        Cochain at = gen(c.at);
        GenRef w{at.n, 0};
        for (int i = 0; i < b.k->rank(at.n); ++i)
            if (!at.values[i].empty()) w = GenRef{at.n, i};
        ValueRow row;
        row.name = "(" + display_name(cochain_str(gen(c.f))) + " o " + display_name(cochain_str(gen(c.g))) + ")(" +
                   b.k->generator(w).label + ")";
        AlgElem v = fg.n == w.deg ? fg.values[w.idx] : AlgElem();
        AlgElem want = parse_value(b, c.expected);
        row.expected = b.lambda->element_str(want);
        row.computed = b.lambda->element_str(v);
        row.ok = v == want;
        if (!row.ok) t.diff.push_back(row.name + ": expected " + row.expected + ", computed " + row.computed);
        t.circles.push_back(row);
    }

    auto derived = [&](const std::string& name, const Hochschild& hd, const Cochain& lhs, const Cochain& want) {
        ValueRow row;
        row.name = name;
        std::vector<Scalar> coords;
        row.computed = render_class(hd, lhs, coords);
        row.expected = display_name(cochain_str(want));
        row.ok = lhs.n == want.n && hd.same_class(lhs, want);
        if (!row.ok) t.diff.push_back(name + ": expected " + row.expected + ", computed " + row.computed);
        t.derived.push_back(row);
    };
    switch (b.c.kind) {
        case QciKind::odd_root: {
            Cochain e = gen("e(2r,0)");
            Cochain sq = h.cup(e, e);
            derived("[" + display_name(cochain_str(e)) + "^2, x*e*(1,0)]", h, h.bracket(sq, gen("x*e(1,0)")),
                    sq.scaled(field->from_int(4L * b.c.r)));
            break;
        }
        case QciKind::char2_one:
            derived("[x*e*(1,0), e*(1,0)]", h, h.bracket(gen("x*e(1,0)"), gen("e(1,0)")), gen("e(1,0)"));
            break;
        case QciKind::char0_one:
            derived("[e*(2,0), xy*e*(2,0)]", h, h.bracket(gen("e(2,0)"), gen("xy*e(2,0)")), gen("-2*y*e(1,2)"));
            break;
        default: break;
    }

    if (!data.tensors.empty()) {
        const ComplexPtr& p = b.k->parts()[0];
        const ComplexPtr& q = b.k->parts()[1];
        Hochschild hr(p, diagonal_koszul(p), phi_koszul_dual_numbers(p));
        Hochschild hs(q, diagonal_koszul(q), phi_koszul_dual_numbers(q));
        if (b.c.kind == QciKind::minus_one) {
            derived("[x*e*(1), x] in HH(R)", hr, hr.bracket(parse_cochain(p, "x*e(1)"), parse_cochain(p, "x*e(0)")),
                    parse_cochain(p, "x*e(0)"));
            derived("[e*(2), x*e*(1)] in HH(R)", hr, hr.bracket(parse_cochain(p, "e(2)"), parse_cochain(p, "x*e(1)")),
                    parse_cochain(p, "2*e(2)"));
        }
        std::map<std::string, TensorTerm> terms;
        for (auto& n : data.tensors)
            terms[n.name] = TensorTerm{field->one(), parse_cochain(p, n.left), parse_cochain(q, n.right)};
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const Job& j = jobs[i];
            const TensorTerm& x = terms.at(data.generators[j.a]);
            const TensorTerm& y = terms.at(data.generators[j.b]);
            TensorCochain tc = tensor_bracket(hr, hs, x, y);
            Cochain direct = h.bracket(b.generators[j.a].cochain, b.generators[j.b].cochain);
            ValueRow row;
            row.name = "[" + t.brackets[i].f + ", " + t.brackets[i].g + "]";
            row.expected = t.brackets[i].computed;
            std::vector<Scalar> coords;
            if (tc.empty()) {
                row.computed = "0";
                row.ok = direct.n < 0 || h.is_coboundary(direct);
            } else {
                Cochain via = transport(b.k, tc);
                row.computed = render_class(h, via, coords);
                row.ok = direct.n == via.n && h.same_class(direct, via);
            }
            if (!row.ok) t.diff.push_back("tensor route " + row.name + ": direct " + row.expected + ", via factors " + row.computed);
            t.tensor_route.push_back(row);
        }
    }
    return t;
}

}  // namespace hht
