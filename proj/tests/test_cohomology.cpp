#include <gtest/gtest.h>

#include "hhtwist/cohomology.hpp"

using namespace hht;

namespace {

struct Qci {
    AlgebraPtr lambda;
    ComplexPtr k;
    std::shared_ptr<Hochschild> hh;
};

Qci make_qci(const FieldPtr& f, const Scalar& q, int n) {
    auto lambda = quantum_complete_intersection(f, q);
    auto k = twisted_tensor_resolution(koszul_dual_numbers(lambda->factors()->left, n),
                                       koszul_dual_numbers(lambda->factors()->right, n), lambda, n);
    return {lambda, k, std::make_shared<Hochschild>(k, diagonal_qci(k), phi_qci(k))};
}

AlgElem value_at(const Cochain& f, int i, int j) { return f.values.at(f.k->at(i + j, {i, 0, j, 0}).idx); }

AlgElem elem(const GradedAlgebra& a, const std::string& label) { return a.basis_element(*a.find(label)); }

}  // namespace

TEST(Cohomology, GenericQciDimensions) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 5);
    EXPECT_EQ(c.hh->dimension(0), 2);
    EXPECT_EQ(c.hh->dimension(1), 2);
    EXPECT_EQ(c.hh->dimension(2), 1);
    EXPECT_EQ(c.hh->dimension(3), 0);
    Cochain unit = parse_cochain(c.k, "e(0,0)");
    EXPECT_TRUE(c.hh->is_cocycle(unit));
    EXPECT_FALSE(c.hh->is_coboundary(unit));
    EXPECT_THROW(c.hh->cell(5, {0, 0}), std::out_of_range);
}

TEST(Cohomology, DualNumbers) {
    auto f = Field::rationals();
    auto k = koszul_dual_numbers(f, "x", 7);
    Hochschild h(k, diagonal_koszul(k), phi_koszul_dual_numbers(k));
    EXPECT_EQ(h.dimension(0), 2);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(h.dimension(n), 1) << n;
    // char 2: every cochain is a cocycle
    auto f2 = Field::prime(2);
    auto k2 = koszul_dual_numbers(f2, "x", 5);
    Hochschild h2(k2, diagonal_koszul(k2), phi_koszul_dual_numbers(k2));
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(h2.dimension(n), 2) << n;
}

TEST(Cohomology, Coboundary) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 4);
    const GradedAlgebra& a = *c.lambda;
    EXPECT_TRUE(coboundary(parse_cochain(c.k, "x*e(1,0)")).is_zero());
    Cochain d = coboundary(parse_cochain(c.k, "e(1,0)"));
    EXPECT_EQ(value_at(d, 1, 1), elem(a, "y").scaled(f->q() + f->one()));
    EXPECT_TRUE(coboundary(zero_cochain(c.k, 2, {1, 1})).is_zero());
    EXPECT_THROW(coboundary(parse_cochain(c.k, "e(2,2)")), std::out_of_range);
}

TEST(Cohomology, ParseAndPrint) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 6);
    Cochain g = parse_cochain(c.k, "x*e(1,0) - (1/q)*y*e(0,1)");
    EXPECT_EQ(cochain_str(g), "(-1/q)*y*e(0,1)+x*e(1,0)");
    EXPECT_EQ(parse_cochain(c.k, cochain_str(g)), g);
    EXPECT_EQ(parse_cochain(c.k, "1*e(2r,0)", 3), parse_cochain(c.k, "e*(6,0)"));
    EXPECT_EQ(cochain_str(parse_cochain(c.k, "q^2*xy*e(1,1)")), "q^2*xy*e(1,1)");
    EXPECT_THROW(parse_cochain(c.k, "x*e(1,0) + e(1,0)"), CochainError);
    EXPECT_THROW(parse_cochain(c.k, "x*e(1,0) + y*e(2,0)"), CochainError);
    EXPECT_THROW(parse_cochain(c.k, "x*e(9,0)"), ParseError);
}

TEST(Cohomology, CircleProducts) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 4);
    const GradedAlgebra& a = *c.lambda;
    Cochain u0 = parse_cochain(c.k, "x*e(1,0)");
    Cochain u1 = parse_cochain(c.k, "y*e(0,1)");
    EXPECT_EQ(value_at(c.hh->circle(u0, u0), 1, 0), elem(a, "x"));
    EXPECT_TRUE(value_at(c.hh->circle(u0, u1), 0, 1).empty());
    EXPECT_EQ(value_at(c.hh->circle(u1, u1), 0, 1), elem(a, "y"));
    // degree one cochains bracket to zero with themselves
    EXPECT_TRUE(c.hh->bracket(u0, u0).is_zero());
    // [x e*(1,0), xy] = xy
    Cochain xy = parse_cochain(c.k, "xy*e(0,0)");
    EXPECT_TRUE(c.hh->same_class(c.hh->bracket(u0, xy), xy));
    EXPECT_TRUE(c.hh->same_class(c.hh->bracket(u1, xy), xy));
}

TEST(Cohomology, CupProducts) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 4);
    const GradedAlgebra& a = *c.lambda;
    Cochain u0 = parse_cochain(c.k, "x*e(1,0)");
    Cochain u1 = parse_cochain(c.k, "y*e(0,1)");
    EXPECT_EQ(value_at(c.hh->cup(u0, u1), 1, 1), elem(a, "xy"));
    Cochain one = parse_cochain(c.k, "e(0,0)");
    EXPECT_EQ(c.hh->cup(one, u0), u0);
    EXPECT_EQ(c.hh->cup(u0, one), u0);

    auto fr = Field::rationals();
    Qci c1 = make_qci(fr, fr->one(), 5);
    Cochain rel = c1.hh->cup(parse_cochain(c1.k, "e(2,0)"), parse_cochain(c1.k, "e(0,2)")) -
                  c1.hh->cup(parse_cochain(c1.k, "e(1,1)"), parse_cochain(c1.k, "e(1,1)"));
    EXPECT_TRUE(c1.hh->is_coboundary(rel));
}

TEST(Cohomology, QEqualsOneBracket) {
    auto f = Field::rationals();
    Qci c = make_qci(f, f->one(), 4);
    Cochain b = c.hh->bracket(parse_cochain(c.k, "xy*e(0,0)"), parse_cochain(c.k, "e(1,1)"));
    EXPECT_TRUE(c.hh->same_class(b, parse_cochain(c.k, "-y*e(0,1) + x*e(1,0)")));
}

TEST(Cohomology, ReduceToClass) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 4);
    const HHCell& cell = c.hh->cell(1, {0, 0});
    ASSERT_EQ(cell.dim(), 2);
    for (int i = 0; i < 2; ++i) {
        auto coords = c.hh->reduce(cell.basis[i]);
        for (int j = 0; j < 2; ++j) EXPECT_EQ(coords[j], i == j ? f->one() : f->zero());
    }
    Cochain b = coboundary(parse_cochain(c.k, "x*e(0,0)"));
    EXPECT_TRUE(c.hh->is_coboundary(b));
    EXPECT_THROW(c.hh->reduce(parse_cochain(c.k, "e(1,0)")), CochainError);
}

TEST(Cohomology, SubgroupRestriction) {
    auto f3 = Field::cyclotomic(3);
    auto l3 = quantum_complete_intersection(f3, f3->q());
    auto [a3, b3] = subgroup_restriction(l3->factors()->twist);
    EXPECT_EQ(a3.index, std::vector<long>{6});
    EXPECT_EQ(b3.index, std::vector<long>{6});
    auto fq = Field::rational_functions();
    auto [ag, bg] = subgroup_restriction(quantum_complete_intersection(fq, fq->q())->factors()->twist);
    EXPECT_EQ(ag.index, std::vector<long>{0});
    EXPECT_TRUE(ag.contains({0}));
    EXPECT_FALSE(ag.contains({2}));
    auto fr = Field::rationals();
    auto [at, bt] = subgroup_restriction(Twist::trivial(fr, 1, 1));
    EXPECT_EQ(at.index, std::vector<long>{1});
}

TEST(Cohomology, MainTheoremTrivialTwist) {
    auto f = Field::rationals();
    auto r = truncated_poly(f, "x", 2);
    auto s = truncated_poly(f, "y", 2);
    auto rep = verify_main_theorem(r, s, Twist::trivial(f, 1, 1), 4);
    EXPECT_GT(rep.brackets.checked, 0);
    EXPECT_TRUE(rep.brackets.ok()) << rep.brackets.failures.size() << " " << rep.brackets.failures.front().generator << " -> "
                                   << rep.brackets.failures.front().detail;
    EXPECT_TRUE(rep.cups.ok()) << rep.cups.failures.size() << " " << rep.cups.failures.front().generator;
}

TEST(Cohomology, MainTheoremCubeRoot) {
    auto f = Field::cyclotomic(3);
    auto r = truncated_poly(f, "x", 2);
    auto s = truncated_poly(f, "y", 2);
    auto lambda = quantum_complete_intersection(f, f->q());
    auto rep = verify_main_theorem(r, s, lambda->factors()->twist, 7);
    EXPECT_EQ(rep.a_prime.index, std::vector<long>{6});
    EXPECT_GT(rep.brackets.checked, 0);
    EXPECT_TRUE(rep.brackets.ok()) << rep.brackets.failures.size() << " " << rep.brackets.failures.front().generator;
    EXPECT_TRUE(rep.cups.ok()) << rep.cups.failures.size() << " " << rep.cups.failures.front().generator;
}

namespace {

void expect_ok(const CheckReport& r, int at_least) {
    EXPECT_GE(r.checked, at_least) << r.name;
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures.size() << " failures, first " << r.failures.front().generator;
}

}  // namespace

TEST(Cohomology, GerstenhaberIdentities) {
    auto f = Field::cyclotomic(3);
    Qci c = make_qci(f, f->q(), 8);
    const Hochschild& h = *c.hh;
    auto gens = cohomology_basis(h, 3);
    gens.push_back(parse_cochain(c.k, "e(6,0)"));
    gens.push_back(parse_cochain(c.k, "e(0,6)"));
    expect_ok(check_cup_commutative(h, gens), 20);
    expect_ok(check_bracket_antisymmetry(h, gens), 20);
    expect_ok(check_jacobi(h, gens), 50);
    expect_ok(check_derivation(h, gens), 100);
}

TEST(Cohomology, CupCommutatorIsACoboundary) {
    auto fr = Field::rationals();
    auto p = normalized_bar_resolution(truncated_poly(fr, "x", 3), 5);
    Hochschild hp(p, diagonal_bar(p), phi_bar(p));
    expect_ok(check_cup_commutator(hp, cohomology_basis(hp, 4)), 20);
    auto fq = Field::rational_functions();
    auto b = normalized_bar_resolution(quantum_complete_intersection(fq, fq->q()), 4);
    Hochschild hb(b, diagonal_bar(b), phi_bar(b));
    expect_ok(check_cup_commutator(hb, cohomology_basis(hb, 3)), 10);
}

TEST(Cohomology, BracketsDoNotDependOnTheResolution) {
    auto f = Field::rational_functions();
    const int N = 4;
    Qci c = make_qci(f, f->q(), N);
    auto lambda = c.lambda;
    auto bx = normalized_bar_resolution(lambda->factors()->left, N);
    auto by = normalized_bar_resolution(lambda->factors()->right, N);
    auto tot = twisted_tensor_resolution(bx, by, lambda, N);
    Hochschild hb(tot, diagonal_twisted_nbar(tot), phi_twisted(sigma(tot), phi_bar(bx), phi_bar(by)));
    auto iota = lift_chain_map(tot, c.k, N);
    Hochschild ht(c.k, diagonal_qci(c.k), phi_twisted(sigma(c.k), phi_koszul_dual_numbers(c.k->parts()[0]),
                                                       phi_koszul_dual_numbers(c.k->parts()[1])));
    auto gens = cohomology_basis(*c.hh, 2);
    int pairs = 0;
    for (auto& a : gens)
        for (auto& b : gens) {
            if (a.n + b.n - 1 < 0 || a.n + b.n > N - 1) continue;
            ++pairs;
            Cochain k = c.hh->bracket(a, b);
            EXPECT_TRUE(ht.same_class(k, ht.bracket(a, b)));
            Cochain pb = hb.bracket(pullback(a, *iota, tot), pullback(b, *iota, tot));
            EXPECT_TRUE(hb.same_class(pullback(k, *iota, tot), pb)) << cochain_str(a) << " , " << cochain_str(b);
            EXPECT_TRUE(hb.same_class(pullback(c.hh->cup(a, b), *iota, tot), hb.cup(pullback(a, *iota, tot), pullback(b, *iota, tot))));
        }
    EXPECT_GT(pairs, 10);
}
