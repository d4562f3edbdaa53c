// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: test_acceptance <path to the hhtwist executable>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hhtwist/cohomology.hpp"
#include "hhtwist/qci.hpp"

using namespace hht;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void check(const CheckReport& r, const std::string& where) {
        if (r.checked == 0) require(false, where + " " + r.name + ": nothing checked");
        for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i) {
            const CheckFailure& f = r.failures[i];
            require(false, where + " " + r.name + ": degree " + std::to_string(f.degree) + " " + f.generator + ": " + f.detail);
        }
        if (r.failures.size() > 3) require(false, where + " " + r.name + ": " + std::to_string(r.failures.size()) + " failures");
    }
    void table(const BracketTable& t) {
        for (auto& d : t.diff) require(false, d);
    }
};

int listed_nonzero(const BracketTable& t) {
    int n = 0;
    for (auto& r : t.brackets) n += r.listed && r.expected != "0";
    return n;
}

BracketTable run_table(QciKind k, int n) { return bracket_table(build_case(default_case(k), n)); }

BracketTable run_table(const QciCase& c, int n) { return bracket_table(build_case(c, n)); }

ComplexPtr qci_koszul(const QciCase& c, int n) { return build_resolution(c, n).k; }

std::string run_cli(const std::string& exe, const std::string& args, int& status) {
    std::string cmd = "'" + exe + "' " + args + " 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    status = pclose(pipe.release());
    return out;
}

// ---------------------------------------------------------------- criteria

Outcome generic_table() {
    Outcome o;
    BracketTable t = run_table(QciKind::generic, 6);
    o.table(t);
    o.require(t.circles.size() == 4, "four circle products");
    o.require(listed_nonzero(t) == 2, "two non-zero brackets");
    return o;
}

Outcome minus_one_table() {
    Outcome o;
    BracketTable t = run_table(QciKind::minus_one, required_degree(default_case(QciKind::minus_one)));
    o.table(t);
    o.require(listed_nonzero(t) == 4, "four non-zero brackets");
    o.require(t.tensor_route.size() >= 4, "non-zero brackets recomputed through the tensor structure");
    o.require(t.derived.size() >= 2, "factor brackets checked");
    return o;
}

Outcome odd_root_table() {
    Outcome o;
    BracketTable t = run_table(QciKind::odd_root, 13);
    o.table(t);
    o.require(listed_nonzero(t) == 6, "six non-zero brackets");
    o.require(!t.derived.empty(), "squared-generator bracket checked");
    return o;
}

Outcome even_root_table(const QciCase& c) {
    Outcome o;
    BracketTable t = run_table(c, 2 * c.r + 1);
    o.table(t);
    o.require(listed_nonzero(t) == 4, "four non-zero brackets");
    return o;
}

Outcome char2_table() {
    Outcome o;
    BracketTable t = run_table(QciKind::char2_one, required_degree(default_case(QciKind::char2_one)));
    o.table(t);
    o.require(listed_nonzero(t) >= 2, "listed brackets");
    o.require(!t.derived.empty(), "derived bracket checked");
    return o;
}

Outcome char0_one_table() {
    Outcome o;
    BracketTable t = run_table(QciKind::char0_one, 6);
    o.table(t);
    o.require(listed_nonzero(t) == 18, "eighteen non-zero brackets");
    return o;
}

Outcome property_suites() {
    Outcome o;
    auto fq = Field::rational_functions();
    auto fr = Field::rationals();
    auto lambda = quantum_complete_intersection(fq, fq->q());
    QciCase generic = default_case(QciKind::generic);

    // d^2 = 0
    auto dual = truncated_poly(fr, "x", 2);
    auto cube = truncated_poly(fr, "x", 3);
    auto triv = twisted_tensor_algebra(cube, truncated_poly(fr, "y", 2), Twist::trivial(fr, 1, 1));
    std::vector<std::pair<std::string, ComplexPtr>> complexes = {
        {"bar k[x]/x^2", bar_resolution(dual, 8)},
        {"bar k[x]/x^3", bar_resolution(cube, 8)},
        {"bar Lambda_q", bar_resolution(lambda, 6)},
        {"nbar Lambda_q", normalized_bar_resolution(lambda, 8)},
        {"koszul k[x]/x^2", koszul_dual_numbers(dual, 8)},
        {"koszul Lambda_q", qci_koszul(generic, 8)},
        {"tot nbar Lambda_q", twisted_tensor_resolution(normalized_bar_resolution(lambda->factors()->left, 8),
                                                        normalized_bar_resolution(lambda->factors()->right, 8), lambda, 8)},
        {"tot nbar trivial twist", twisted_tensor_resolution(normalized_bar_resolution(cube, 6),
                                                             normalized_bar_resolution(triv->factors()->right, 6), triv, 6)},
    };
    for (auto& [name, k] : complexes) o.check(check_d_squared(*k, k->max_degree()), name);

    // contracting homotopies
    auto bar_dual = bar_resolution(dual, 6);
    o.check(check_contracting_homotopy(*bar_dual, *phi_bar(bar_dual), *f_total(bar_dual), 6), "bar k[x]/x^2");
    auto bar_l = bar_resolution(lambda, 4);
    o.check(check_contracting_homotopy(*bar_l, *phi_bar(bar_l), *f_total(bar_l), 4), "bar Lambda_q");
    auto nbar_l = normalized_bar_resolution(lambda, 6);
    o.check(check_contracting_homotopy(*nbar_l, *phi_bar(nbar_l), *f_total(nbar_l), 6), "nbar Lambda_q");
    auto kd = koszul_dual_numbers(dual, 6);
    o.check(check_contracting_homotopy(*kd, *phi_koszul_dual_numbers(kd), *f_total(kd), 6), "koszul k[x]/x^2");
    for (QciKind kind : {QciKind::generic, QciKind::minus_one, QciKind::odd_root, QciKind::char2_one}) {
        auto k = qci_koszul(default_case(kind), 6);
        o.check(check_contracting_homotopy(*k, *phi_qci(k), *f_total(k), 6), "koszul qci " + kind_name(kind));
        Sigma s = sigma(k);
        auto tw = phi_twisted(s, phi_koszul_dual_numbers(k->parts()[0]), phi_koszul_dual_numbers(k->parts()[1]));
        o.check(check_contracting_homotopy(*k, *tw, *f_total(k), 6), "twisted koszul qci " + kind_name(kind));
        o.check(check_factorization(s, 5), "koszul qci " + kind_name(kind));
        o.check(check_sigma(s, 5), "koszul qci " + kind_name(kind));
    }

    // Alexander-Whitney and Eilenberg-Zilber
    for (auto& alg : {lambda, triv}) {
        const TensorFactors& f = *alg->factors();
        auto tot = twisted_tensor_resolution(normalized_bar_resolution(f.left, 4), normalized_bar_resolution(f.right, 4), alg, 4);
        auto nbar = normalized_bar_resolution(alg, 4);
        auto aw = aw_twisted(nbar, tot);
        auto ez = ez_twisted(tot, nbar);
        o.check(check_chain_map(*nbar, *tot, *aw, 4), alg->name() + " AW");
        o.check(check_chain_map(*tot, *nbar, *ez, 4), alg->name() + " EZ");
        o.check(check_identity(*tot, *compose(aw, ez), 4), alg->name() + " AW o EZ");
        Sigma s = sigma(tot);
        o.check(check_sigma(s, 4), alg->name() + " tot nbar");
        o.check(check_factorization(s, 4), alg->name() + " tot nbar");

        auto bar = bar_resolution(alg, 4);
        auto dk = diagonal_twisted_nbar(tot);
        o.check(check_diagonal(*tot, *dk, 4), alg->name() + " tot nbar");
        o.check(check_coassociative(*tot, *dk, 4), alg->name() + " tot nbar");
        o.check(check_condition_c(*tot, *bar, *compose(bar_inclusion(nbar, bar), ez), *dk, *diagonal_bar(bar), 4),
                alg->name() + " tot nbar");
    }

    // diagonals
    auto k6 = qci_koszul(generic, 6);
    o.check(check_diagonal(*k6, *diagonal_qci(k6), 6), "koszul Lambda_q");
    o.check(check_coassociative(*k6, *diagonal_qci(k6), 6), "koszul Lambda_q");
    auto kd6 = koszul_dual_numbers(dual, 6);
    o.check(check_coassociative(*kd6, *diagonal_koszul(kd6), 6), "koszul k[x]/x^2");
    auto nb5 = normalized_bar_resolution(lambda, 5);
    o.check(check_coassociative(*nb5, *diagonal_bar(nb5), 5), "nbar Lambda_q");
    auto k3 = qci_koszul(generic, 3);
    auto bar3 = bar_resolution(k3->algebra(), 3);
    o.check(check_condition_c(*k3, *bar3, *iota_qci(k3, bar3), *diagonal_qci(k3), *diagonal_bar(bar3), 3), "koszul Lambda_q");

    // Gerstenhaber laws on the generator sets
    for (QciKind kind : {QciKind::generic, QciKind::minus_one, QciKind::odd_root, QciKind::even_root, QciKind::char2_one,
                         QciKind::char0_one}) {
        QciCase c = default_case(kind);
        QciBuild b = build_case(c, required_degree(c));
        std::vector<Cochain> gens;
        for (auto& g : b.generators) gens.push_back(g.cochain);
        const std::string where = "generators " + kind_name(kind);
        o.check(check_cup_commutative(*b.hh, gens), where);
        o.check(check_bracket_antisymmetry(*b.hh, gens), where);
        o.check(check_jacobi(*b.hh, gens), where);
        o.check(check_derivation(*b.hh, gens), where);
        o.check(check_cup_commutator(*b.hh, gens), where);
    }

    // commutator relation on sampled cocycles of other resolutions
    auto nbar_cube = normalized_bar_resolution(cube, 5);
    Hochschild hc(nbar_cube, diagonal_bar(nbar_cube), phi_bar(nbar_cube));
    o.check(check_cup_commutator(hc, cohomology_basis(hc, 2)), "nbar k[x]/x^3");
    auto nbar_q = normalized_bar_resolution(lambda, 4);
    Hochschild hq(nbar_q, diagonal_bar(nbar_q), phi_bar(nbar_q));
    o.check(check_cup_commutator(hq, cohomology_basis(hq, 2)), "nbar Lambda_q");
    return o;
}

Outcome main_theorem() {
    Outcome o;
    auto fr = Field::rationals();
    auto untwisted = quantum_complete_intersection(fr, fr->from_int(-1));
    auto f3 = Field::cyclotomic(3);
    auto twisted = quantum_complete_intersection(f3, f3->q());
    for (auto& alg : {untwisted, twisted}) {
        const TensorFactors& f = *alg->factors();
        MainTheoremReport r = verify_main_theorem(f.left, f.right, f.twist, 8);
        const std::string where = alg->field()->describe();
        o.check(r.brackets, where);
        o.check(r.cups, where);
        o.require(r.classes > 0, where + ": no restricted classes");
        if (alg == twisted) o.require(r.a_prime.index == std::vector<long>{6} && r.b_prime.index == std::vector<long>{6},
                                      "restriction lattices " + r.a_prime.str() + ", " + r.b_prime.str());
        o.notes.push_back(where + ": A' = " + r.a_prime.str() + ", " + std::to_string(r.classes) + " classes, " +
                          std::to_string(r.brackets.checked) + " brackets, " + std::to_string(r.cups.checked) + " cups");
    }
    return o;
}

Outcome phi_independence(const std::string& exe) {
    Outcome o;
    const std::vector<std::pair<std::string, QciCase>> cases = {
        {"--q generic --char 0", default_case(QciKind::generic)},
        {"--q -1 --char 0", default_case(QciKind::minus_one)},
        {"--q root:3 --char 0", default_case(QciKind::odd_root)},
        {"--q root:4 --char 0", default_case(QciKind::even_root)},
        {"--q root:3 --char 2", case_from_spec("root:3", 2)},
        {"--q 1 --char 2", default_case(QciKind::char2_one)},
        {"--q 1 --char 0", default_case(QciKind::char0_one)},
    };
    for (auto& [args, c] : cases) {
        const int n = required_degree(c);
        BracketTable a = bracket_table(build_case(c, n, PhiChoice::closed_form));
        BracketTable b = bracket_table(build_case(c, n, PhiChoice::twisted));
        o.require(a.brackets.size() == b.brackets.size(), args + ": table sizes differ");
        for (std::size_t i = 0; i < a.brackets.size() && i < b.brackets.size(); ++i)
            o.require(a.brackets[i].coords == b.brackets[i].coords && a.brackets[i].computed == b.brackets[i].computed,
                      args + ": [" + a.brackets[i].f + ", " + a.brackets[i].g + "] changes with the homotopy");
        o.require(a.diff == b.diff, args + ": differences change with the homotopy");
        for (const char* fmt : {"--json", "--text"}) {
            int s1 = 0, s2 = 0;
            std::string x = run_cli(exe, "qci " + args + " --table " + fmt, s1);
            std::string y = run_cli(exe, "qci " + args + " --table " + fmt + " --phi twisted", s2);
            o.require(!x.empty() && x == y && s1 == s2, args + " " + fmt + ": CLI output differs");
        }
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_acceptance <hhtwist executable>\n";
        return 2;
    }
    const std::string exe = argv[1];
    struct Criterion {
        int id;
        std::string name;
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "generic q over Q(q), N = 6", 10, generic_table},
        {2, "q = -1 over Q, direct and through the tensor structure", 10, minus_one_table},
        {3, "odd root of unity r = 3, N = 13", 120, odd_root_table},
        {4, "even root r = 4 over Q(i), N = 9", 60, [] { return even_root_table(default_case(QciKind::even_root)); }},
        {4, "root of order 3 over F_4, N = 7", 60, [] { return even_root_table(case_from_spec("root:3", 2)); }},
        {5, "q = 1 over F_2", 10, char2_table},
        {6, "q = 1 over Q, N = 6", 30, char0_one_table},
        {7, "property suites", 120, property_suites},
        {8, "tensor Gerstenhaber structure through degree 8", 300, main_theorem},
        {9, "independence of the contracting homotopy", 1e9, [&] { return phi_independence(exe); }},
    };
    bool all = true;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= c.limit) o.require(false, "time limit exceeded");
        all = all && o.ok;
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  (" << secs
             << " s";
        if (c.limit < 1e8) line << ", limit " << c.limit << " s";
        line << ")";
        std::cout << line.str() << "\n";
        for (auto& n : o.notes) std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    return all ? 0 : 1;
}
