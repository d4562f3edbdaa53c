#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hhtwist/cohomology.hpp"
#include "hhtwist/presentation.hpp"
#include "hhtwist/qci.hpp"

using namespace hht;

namespace {

/// Errors reported on stderr with exit code 2.
struct Failure : std::runtime_error {
    Failure(std::string kind, const std::string& msg) : std::runtime_error(msg), kind(std::move(kind)) {}
    std::string kind;
};

struct Options {
    std::string algebra;
    std::string q = "generic";
    long p = 0;
    std::optional<int> max_degree;
    std::string phi = "closed";
    bool text = false;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

AlgebraPtr resolve_algebra(const Options& o) {
    if (o.algebra.empty()) return quantum_complete_intersection(case_from_spec(o.q, o.p).field, case_from_spec(o.q, o.p).q);
    const std::string prefix = "builtin:";
    if (o.algebra.rfind(prefix, 0) == 0) return builtin_algebra(o.algebra.substr(prefix.size()));
    return load_algebra(o.algebra);
}

std::optional<long> root_of(const QciCase& c) {
    if (c.kind == QciKind::odd_root || c.kind == QciKind::even_root) return c.r;
    return std::nullopt;
}

Json case_json(const QciCase& c) {
    Json j;
    j["kind"] = kind_name(c.kind);
    j["field"] = c.field->describe();
    j["q"] = c.q.str();
    if (c.r > 0) j["r"] = c.r;
    return j;
}

PhiChoice phi_of(const Options& o) {
    if (o.phi == "closed") return PhiChoice::closed_form;
    if (o.phi == "twisted") return PhiChoice::twisted;
    throw Failure("usage", "--phi must be closed or twisted");
}

/// Cohomology context: the Koszul resolution for Lambda_q, the normalized
/// bar resolution otherwise.
struct Context {
    std::shared_ptr<Hochschild> hh;
    std::optional<long> r;
    Json info;
};

Context make_context(const Options& o, int n) {
    std::optional<QciCase> c;
    AlgebraPtr a;
    if (o.algebra.empty()) {
        c = case_from_spec(o.q, o.p);
    } else {
        a = resolve_algebra(o);
        if (auto q = recognize_qci(*a)) c = classify(a->field(), *q);
    }
    Context ctx;
    if (c) {
        QciBuild b = build_resolution(*c, n, phi_of(o));
        ctx.hh = b.hh;
        ctx.r = root_of(*c);
        ctx.info["algebra"] = "Lambda_q";
        ctx.info["case"] = case_json(*c);
        ctx.info["resolution"] = "koszul";
    } else {
        auto nbar = normalized_bar_resolution(a, n);
        ctx.hh = std::make_shared<Hochschild>(nbar, diagonal_bar(nbar), phi_bar(nbar));
        ctx.info["algebra"] = a->name();
        ctx.info["field"] = a->field()->describe();
        ctx.info["resolution"] = "nbar";
    }
    ctx.info["max_degree"] = n;
    return ctx;
}

Json coords_json(const std::vector<Scalar>& coords) {
    Json j = Json::array();
    for (auto& c : coords) j.push_back(c.str());
    return j;
}

/// {"input", "chain_level", "class", "internal_degree"} for a cocycle result.
Json result_json(const Context& ctx, const Json& input, const Cochain& f) {
    Json j;
    j["format"] = 1;
    j["context"] = ctx.info;
    j["input"] = input;
    j["chain_level"] = cochain_str(f);
    if (f.n < 0) {
        j["degree"] = nullptr;
        j["class"] = Json::array();
        j["internal_degree"] = nullptr;
        return j;
    }
    j["degree"] = f.n;
    std::vector<Scalar> coords = ctx.hh->reduce(f);
    j["class"] = coords_json(coords);
    Json basis = Json::array();
    for (auto& b : ctx.hh->cell(f.n, f.a).basis) basis.push_back(cochain_str(b));
    j["class_basis"] = basis;
    j["class_display"] = display_name(cochain_str(ctx.hh->class_cochain(f.n, f.a, coords)));
    j["internal_degree"] = f.a;
    return j;
}

Cochain parse_input(const Context& ctx, const std::string& text, const std::string& which) {
    Cochain f = parse_cochain(ctx.hh->complex(), text, ctx.r);
    if (!ctx.hh->is_cocycle(f)) throw Failure("cochain", which + " is not a cocycle: " + text);
    return f;
}

Json report_json(const CheckReport& r, int max_degree) {
    Json j;
    j["check"] = r.name;
    j["max_degree"] = max_degree;
    j["checked"] = r.checked;
    j["ok"] = r.ok();
    Json degrees = Json::array();
    for (int d = 0; d <= max_degree; ++d) {
        bool ok = true;
        for (auto& f : r.failures) ok = ok && f.degree != d;
        degrees.push_back({{"degree", d}, {"residual_is_zero", ok}});
    }
    j["degrees"] = degrees;
    Json fails = Json::array();
    for (auto& f : r.failures)
        fails.push_back({{"degree", f.degree}, {"generator", f.generator}, {"residual_is_zero", false}, {"detail", f.detail}});
    j["failures"] = fails;
    return j;
}

// ---------------------------------------------------------------- subcommands

int cmd_algebra_check(const Options& o) {
    AlgebraPtr a = resolve_algebra(o);
    Json j;
    j["format"] = 1;
    j["name"] = a->name();
    j["field"] = a->field()->describe();
    j["dim"] = a->dim();
    j["grading_rank"] = a->grading_rank();
    j["augmented"] = a->augmented();
    j["associative"] = true;
    if (auto q = recognize_qci(*a))
        j["quantum_complete_intersection"] = {{"q", q->str()}, {"case", kind_name(classify(a->field(), *q).kind)}};
    j["presentation"] = algebra_to_json(*a);
    emit(j);
    return 0;
}

int cmd_resolve(const Options& o, const std::string& type, bool verify) {
    const int n = o.max_degree.value_or(8);
    AlgebraPtr a = resolve_algebra(o);
    ComplexPtr k;
    if (type == "bar") {
        k = bar_resolution(a, n);
    } else if (type == "nbar") {
        k = normalized_bar_resolution(a, n);
    } else if (type == "koszul") {
        k = koszul_dual_numbers(a, n);
    } else if (type == "twisted") {
        AlgebraPtr t = a;
        if (!t->factors()) {
            auto q = recognize_qci(*a);
            if (!q) throw Failure("algebra", "the twisted resolution needs a twisted tensor product algebra");
            t = quantum_complete_intersection(a->field(), *q);
        }
        const TensorFactors& f = *t->factors();
        auto dual = [](const AlgebraPtr& r) { return r->dim() == 2 && r->grading_rank() == 1; };
        if (dual(f.left) && dual(f.right))
            k = twisted_tensor_resolution(koszul_dual_numbers(f.left, n), koszul_dual_numbers(f.right, n), t, n);
        else
            k = twisted_tensor_resolution(normalized_bar_resolution(f.left, n), normalized_bar_resolution(f.right, n), t, n);
    } else {
        throw Failure("usage", "--type must be bar, nbar, koszul or twisted");
    }
    Json j;
    j["format"] = 1;
    j["algebra"] = a->name();
    j["type"] = type;
    j["complex"] = k->name();
    j["max_degree"] = n;
    Json ranks = Json::array();
    for (int d = 0; d <= n; ++d) ranks.push_back(k->rank(d));
    j["generator_counts"] = ranks;
    bool ok = true;
    if (verify) {
        Json checks = Json::array();
        for (auto& r : {check_d_squared(*k, n), check_augmentation(*k), check_internal_degrees(*k)}) {
            checks.push_back(report_json(r, n));
            ok = ok && r.ok();
        }
        j["verification"] = checks;
        j["ok"] = ok;
    }
    emit(j);
    return ok ? 0 : 1;
}

int cmd_hh(const Options& o) {
    const int n = o.max_degree.value_or(8);
    Context ctx = make_context(o, n);
    Json j;
    j["format"] = 1;
    j["context"] = ctx.info;
    Json degrees = Json::array();
    for (int d = 0; d < n; ++d) {
        Json cells = Json::array();
        int total = 0;
        for (const HHCell* c : ctx.hh->cohomology(d)) {
            if (c->dim() == 0) continue;
            Json basis = Json::array();
            for (auto& b : c->basis) basis.push_back(cochain_str(b));
            cells.push_back({{"internal_degree", c->a}, {"dim", c->dim()}, {"basis", basis}});
            total += c->dim();
        }
        degrees.push_back({{"degree", d}, {"dim", total}, {"cells", cells}});
    }
    j["cohomology"] = degrees;
    emit(j);
    return 0;
}

int cmd_product(const Options& o, const std::string& f, const std::string& g, bool bracket) {
    const int n = o.max_degree.value_or(8);
    Context ctx = make_context(o, n);
    Cochain a = parse_input(ctx, f, "f"), b = parse_input(ctx, g, "g");
    Cochain out = bracket ? ctx.hh->bracket(a, b) : ctx.hh->cup(a, b);
    emit(result_json(ctx, {{"f", f}, {"g", g}}, out));
    return 0;
}

void text_table(std::ostream& os, const BracketTable& t) {
    os << "Lambda_q, case " << kind_name(t.c.kind) << ", q = " << t.c.q.str() << " in " << t.c.field->describe();
    if (t.c.r > 0) os << ", r = " << t.c.r;
    os << ", resolution degree " << t.max_degree << "\n";
    os << "generators:";
    for (auto& g : t.generators) os << " " << g;
    os << "\n\nbrackets\n";
    for (auto& r : t.brackets) {
        if (!r.listed && r.computed == "0") continue;
        os << "  [" << r.f << ", " << r.g << "] = " << r.computed;
        if (r.listed) os << "   expected " << r.expected << (r.chain_level ? ", chain level" : ", as classes");
        os << (r.ok ? "   ok" : "   DIFF") << "\n";
    }
    int zeros = 0;
    for (auto& r : t.brackets) zeros += !r.listed && r.computed == "0";
    os << "  " << zeros << " further generator pairs bracket to 0\n";
    auto rows = [&](const char* title, const std::vector<ValueRow>& v) {
        if (v.empty()) return;
        os << "\n" << title << "\n";
        for (auto& r : v)
            os << "  " << r.name << " = " << r.computed << "   expected " << r.expected << (r.ok ? "   ok" : "   DIFF") << "\n";
    };
    rows("circle products", t.circles);
    rows("derived", t.derived);
    rows("through the tensor structure", t.tensor_route);
    os << "\n" << (t.ok() ? "all entries reproduce" : std::to_string(t.diff.size()) + " differences") << "\n";
    for (auto& d : t.diff) os << "  " << d << "\n";
}

Json table_json(const BracketTable& t) {
    Json j;
    j["max_degree"] = t.max_degree;
    j["generators"] = t.generators;
    Json rows = Json::array();
    for (auto& r : t.brackets)
        rows.push_back({{"f", r.f},
                        {"g", r.g},
                        {"listed", r.listed},
                        {"expected", r.expected},
                        {"computed", r.computed},
                        {"class", coords_json(r.coords)},
                        {"internal_degree", r.internal_degree},
                        {"chain_level", r.chain_level},
                        {"ok", r.ok}});
    j["brackets"] = rows;
    auto values = [](const std::vector<ValueRow>& v) {
        Json a = Json::array();
        for (auto& r : v) a.push_back({{"name", r.name}, {"expected", r.expected}, {"computed", r.computed}, {"ok", r.ok}});
        return a;
    };
    j["circles"] = values(t.circles);
    j["derived"] = values(t.derived);
    j["tensor_route"] = values(t.tensor_route);
    j["diff"] = t.diff;
    j["ok"] = t.ok();
    return j;
}

Json theorem_json(const MainTheoremReport& r) {
    auto check = [](const CheckReport& c) {
        Json f = Json::array();
        for (auto& x : c.failures) f.push_back({{"degree", x.degree}, {"pair", x.generator}, {"detail", x.detail}});
        return Json{{"checked", c.checked}, {"ok", c.ok()}, {"failures", f}};
    };
    return {{"a_prime", r.a_prime.str()},
            {"b_prime", r.b_prime.str()},
            {"classes", r.classes},
            {"brackets", check(r.brackets)},
            {"cups", check(r.cups)},
            {"ok", r.ok()}};
}

int cmd_qci(const Options& o, bool table, bool theorem) {
    QciCase c = case_from_spec(o.q, o.p);
    const int n = o.max_degree.value_or(required_degree(c));
    bool ok = true;
    Json j;
    j["format"] = 1;
    j["case"] = case_json(c);
    std::ostringstream text;
    if (table || !theorem) {
        QciBuild b = table ? build_case(c, n, phi_of(o)) : build_resolution(c, n, phi_of(o));
        if (table) {
            BracketTable t = bracket_table(b);
            ok = ok && t.ok();
            j["table"] = table_json(t);
            text_table(text, t);
        } else {
            text << "Lambda_q, case " << kind_name(c.kind) << ", q = " << c.q.str() << " in " << c.field->describe() << "\n";
        }
    }
    if (theorem) {
        const int tn = o.max_degree.value_or(6);
        auto lambda = quantum_complete_intersection(c.field, c.q);
        const TensorFactors& f = *lambda->factors();
        MainTheoremReport r = verify_main_theorem(f.left, f.right, f.twist, tn);
        ok = ok && r.ok();
        j["theorem"] = theorem_json(r);
        j["theorem"]["max_degree"] = tn;
        text << "\ntensor Gerstenhaber structure through degree " << tn << ": A' = " << r.a_prime.str()
             << ", B' = " << r.b_prime.str() << ", " << r.classes << " classes, " << r.brackets.checked << " brackets and "
             << r.cups.checked << " cups checked, " << (r.ok() ? "all agree" : "DIFF") << "\n";
    }
    if (o.text)
        std::cout << text.str();
    else
        emit(j);
    return ok ? 0 : 1;
}

int cmd_verify(const Options& o, const std::string& suite) {
    const int n = o.max_degree.value_or(6);
    AlgebraPtr a = resolve_algebra(o);
    std::optional<Scalar> q = recognize_qci(*a);
    Json checks = Json::array();
    bool ok = true;
    auto add = [&](const std::string& complex, const CheckReport& r, int d) {
        Json j = report_json(r, d);
        j["complex"] = complex;
        checks.push_back(j);
        ok = ok && r.ok() && r.checked > 0;
    };
    const int nb = std::min(n, 4);
    if (suite == "homotopy") {
        auto bar = bar_resolution(a, nb);
        add("bar", check_contracting_homotopy(*bar, *phi_bar(bar), *f_total(bar), nb), nb);
        auto nbar = normalized_bar_resolution(a, n);
        add("nbar", check_contracting_homotopy(*nbar, *phi_bar(nbar), *f_total(nbar), n), n);
        if (a->dim() == 2 && a->grading_rank() == 1) {
            auto k = koszul_dual_numbers(a, n);
            add("koszul", check_contracting_homotopy(*k, *phi_koszul_dual_numbers(k), *f_total(k), n), n);
        }
        if (q) {
            QciCase c = classify(a->field(), *q);
            QciBuild b = build_resolution(c, n);
            add("koszul qci, closed form", check_contracting_homotopy(*b.k, *phi_qci(b.k), *f_total(b.k), n), n);
            auto tw = phi_twisted(sigma(b.k), phi_koszul_dual_numbers(b.k->parts()[0]),
                                  phi_koszul_dual_numbers(b.k->parts()[1]));
            add("koszul qci, twisted", check_contracting_homotopy(*b.k, *tw, *f_total(b.k), n), n);
        }
    } else if (suite == "conditions") {
        auto nbar = normalized_bar_resolution(a, n);
        add("nbar diagonal", check_diagonal(*nbar, *diagonal_bar(nbar), n), n);
        add("nbar coassociativity", check_coassociative(*nbar, *diagonal_bar(nbar), nb), nb);
        if (q) {
            QciCase c = classify(a->field(), *q);
            QciBuild b = build_resolution(c, n);
            add("koszul qci diagonal", check_diagonal(*b.k, *diagonal_qci(b.k), n), n);
            add("koszul qci coassociativity", check_coassociative(*b.k, *diagonal_qci(b.k), n), n);
            const int n3 = std::min(n, 3);
            auto k3 = build_resolution(c, n3).k;
            auto bar = bar_resolution(k3->algebra(), n3);
            add("koszul qci condition (c)",
                check_condition_c(*k3, *bar, *iota_qci(k3, bar), *diagonal_qci(k3), *diagonal_bar(bar), n3), n3);
        }
    } else if (suite == "awez") {
        AlgebraPtr t = a;
        if (!t->factors() && q) t = quantum_complete_intersection(a->field(), *q);
        if (!t->factors()) throw Failure("algebra", "the awez suite needs a twisted tensor product algebra");
        const TensorFactors& f = *t->factors();
        auto tot = twisted_tensor_resolution(normalized_bar_resolution(f.left, nb), normalized_bar_resolution(f.right, nb), t, nb);
        auto nbar = normalized_bar_resolution(t, nb);
        auto aw = aw_twisted(nbar, tot);
        auto ez = ez_twisted(tot, nbar);
        add("AW", check_chain_map(*nbar, *tot, *aw, nb), nb);
        add("EZ", check_chain_map(*tot, *nbar, *ez, nb), nb);
        add("AW o EZ", check_identity(*tot, *compose(aw, ez), nb), nb);
        auto bar = bar_resolution(t, nb);
        add("twisted nbar condition (c)",
            check_condition_c(*tot, *bar, *compose(bar_inclusion(nbar, bar), ez), *diagonal_twisted_nbar(tot),
                              *diagonal_bar(bar), nb),
            nb);
    } else {
        throw Failure("usage", "--suite must be homotopy, conditions or awez");
    }
    Json j;
    j["format"] = 1;
    j["suite"] = suite;
    j["algebra"] = a->name();
    j["checks"] = checks;
    j["ok"] = ok;
    emit(j);
    return ok ? 0 : 1;
}

void error_out(const std::string& kind, const std::string& msg) {
    Json j;
    j["format"] = 1;
    j["error"] = {{"kind", kind}, {"message", msg}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hochschild cohomology, cup products and Gerstenhaber brackets"};
    app.require_subcommand(1);
    Options o;

    auto context_flags = [&](CLI::App* s) {
        s->add_option("--algebra", o.algebra, "presentation file or builtin:name");
        s->add_option("--q", o.q, "generic, root:r or a scalar literal (Lambda_q)");
        s->add_option("--char", o.p, "characteristic, 0 or a prime");
        s->add_option("--max-degree", o.max_degree, "resolution degree")->check(CLI::Range(1, 64));
    };

    auto* algebra = app.add_subcommand("algebra", "algebra presentations");
    algebra->require_subcommand(1);
    auto* check = algebra->add_subcommand("check", "parse and verify an algebra");
    check->add_option("--algebra", o.algebra, "presentation file or builtin:name")->required();

    std::string type = "nbar";
    bool verify_flag = false;
    auto* resolve = app.add_subcommand("resolve", "build a free bimodule resolution");
    context_flags(resolve);
    resolve->add_option("--type", type, "bar, nbar, koszul or twisted");
    resolve->add_flag("--verify", verify_flag, "check d^2 = 0, augmentation and degrees");

    auto* hh = app.add_subcommand("hh", "Hochschild cohomology by degree");
    context_flags(hh);

    std::string f, g;
    auto* cup = app.add_subcommand("cup", "cup product of two cocycles");
    auto* bracket = app.add_subcommand("bracket", "Gerstenhaber bracket of two cocycles");
    for (auto* s : {cup, bracket}) {
        context_flags(s);
        s->add_option("--f", f, "first cocycle")->required();
        s->add_option("--g", g, "second cocycle")->required();
        s->add_option("--phi", o.phi, "contracting homotopy for Lambda_q: closed or twisted");
    }

    bool table = false, theorem = false, json_flag = false;
    auto* qci = app.add_subcommand("qci", "quantum complete intersection cases");
    qci->add_option("--q", o.q, "generic, root:r or a scalar literal");
    qci->add_option("--char", o.p, "characteristic, 0 or a prime");
    qci->add_option("--max-degree", o.max_degree, "resolution degree")->check(CLI::Range(1, 64));
    qci->add_option("--phi", o.phi, "contracting homotopy: closed or twisted");
    qci->add_flag("--table", table, "bracket table against the expected values");
    qci->add_flag("--verify-theorem", theorem, "tensor Gerstenhaber structure on restricted classes");
    auto* jf = qci->add_flag("--json", json_flag, "JSON output (default)");
    auto* tf = qci->add_flag("--text", o.text, "human-readable output");
    jf->excludes(tf);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "property suites");
    context_flags(verify);
    verify->add_option("--suite", suite, "homotopy, conditions or awez")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_out("usage", e.what());
        return 2;
    }

    try {
        if (*check) return cmd_algebra_check(o);
        if (*resolve) return cmd_resolve(o, type, verify_flag);
        if (*hh) return cmd_hh(o);
        if (*cup) return cmd_product(o, f, g, false);
        if (*bracket) return cmd_product(o, f, g, true);
        if (*qci) return cmd_qci(o, table, theorem);
        if (*verify) return cmd_verify(o, suite);
    } catch (const Failure& e) {
        error_out(e.kind, e.what());
    } catch (const AlgebraError& e) {
        error_out("algebra", e.what());
    } catch (const ParseError& e) {
        error_out("parse", e.what());
    } catch (const CochainError& e) {
        error_out("cochain", e.what());
    } catch (const std::out_of_range& e) {
        error_out("degree", e.what());
    } catch (const std::invalid_argument& e) {
        error_out("argument", e.what());
    } catch (const std::exception& e) {
        error_out("internal", e.what());
    }
    return 2;
}
