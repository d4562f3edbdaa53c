#include <gtest/gtest.h>

#include "hhtwist/homotopy.hpp"

using namespace hht;

namespace {

void expect_ok(const CheckReport& r) {
    ASSERT_GT(r.checked, 0) << r.name;
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures.size() << " failures, first at degree " << r.failures.front().degree
                        << " on " << r.failures.front().generator << ": " << r.failures.front().detail;
}

struct Qci {
    AlgebraPtr lambda;
    ComplexPtr tot;
};

Qci make_qci(const FieldPtr& f, const Scalar& q, int n) {
    auto lambda = quantum_complete_intersection(f, q);
    auto kx = koszul_dual_numbers(lambda->factors()->left, n);
    auto ky = koszul_dual_numbers(lambda->factors()->right, n);
    return {lambda, twisted_tensor_resolution(kx, ky, lambda, n)};
}

Core<2> tot_core(const FreeBimoduleComplex& k, int i, int j, const std::string& mid, int p, int r) {
    return Core<2>{{k.at(i + j, {i, 0, j, 0}), k.at(p + r, {p, 0, r, 0})}, {*k.algebra()->find(mid)}};
}

/// F commutes with the differentials on cores of degree <= n.
void expect_chain_map(const FreeBimoduleComplex& k, const Homotopy& f, int n) {
    const GradedAlgebra& a = *k.algebra();
    for (int d = 1; d <= n; ++d)
        for (auto& c : cores_of_degree<2>(k, d)) {
            Chain<1> lhs = differential<1>(k, f(c));
            Chain<1> rhs = f.apply(differential<2>(k, single<2>(a, c)));
            ASSERT_EQ(lhs, rhs) << core_str(k, c);
        }
}

}  // namespace

TEST(Homotopy, CollapseMapsOnDualNumbers) {
    auto f = Field::rationals();
    auto k = koszul_dual_numbers(f, "x", 7);
    auto F = f_total(k);
    int x = *k->algebra()->find("x"), one = k->algebra()->unit();
    Core<2> unit_mid{{GenRef{0, 0}, GenRef{0, 0}}, {one}};
    EXPECT_TRUE((*F)(unit_mid).empty());
    Core<2> x_mid{{GenRef{0, 0}, GenRef{0, 0}}, {x}};
    EXPECT_EQ(chain_str(*k, (*F)(x_mid)), "x*e(0)-e(0)*x");
    Core<2> mixed{{GenRef{2, 0}, GenRef{1, 0}}, {x}};
    EXPECT_TRUE((*f_left(k))(mixed).empty());
    EXPECT_TRUE((*f_right(k))(mixed).empty());
    Core<2> left0{{GenRef{0, 0}, GenRef{3, 0}}, {x}};
    EXPECT_EQ(chain_str(*k, (*f_left(k))(left0)), "x*e(3)");
    expect_chain_map(*k, *f_left(k), 6);
    expect_chain_map(*k, *f_right(k), 6);
    expect_chain_map(*k, *F, 6);
}

TEST(Homotopy, KoszulDualNumbers) {
    auto f = Field::rationals();
    auto k = koszul_dual_numbers(f, "x", 7);
    auto phi = phi_koszul_dual_numbers(k);
    int x = *k->algebra()->find("x"), one = k->algebra()->unit();
    EXPECT_EQ(chain_str(*k, (*phi)(Core<2>{{GenRef{0, 0}, GenRef{0, 0}}, {x}})), "e(1)");
    EXPECT_TRUE((*phi)(Core<2>{{GenRef{0, 0}, GenRef{0, 0}}, {one}}).empty());
    EXPECT_EQ(chain_str(*k, (*phi)(Core<2>{{GenRef{1, 0}, GenRef{2, 0}}, {x}})), "-e(4)");
    expect_ok(check_contracting_homotopy(*k, *phi, *f_total(k), 7));
}

TEST(Homotopy, BarFamilies) {
    auto f = Field::rationals();
    auto r = truncated_poly(f, "x", 2);
    auto nbar = normalized_bar_resolution(r, 6);
    auto phi = phi_bar(nbar);
    int x = *r->find("x");
    Core<2> c{{nbar->at(0, {}), nbar->at(1, {x})}, {x}};
    EXPECT_EQ(chain_str(*nbar, (*phi)(c)), "[x|x]");
    expect_ok(check_contracting_homotopy(*nbar, *phi, *f_total(nbar), 6));

    auto bar = bar_resolution(r, 5);
    expect_ok(check_contracting_homotopy(*bar, *phi_bar(bar), *f_total(bar), 5));
    Core<2> c1{{bar->at(1, {x}), bar->at(0, {})}, {r->unit()}};
    EXPECT_EQ(chain_str(*bar, (*phi_bar(bar))(c1)), "-[x|1]");

    auto fq = Field::rational_functions();
    auto lambda = quantum_complete_intersection(fq, fq->q());
    auto lbar = normalized_bar_resolution(lambda, 4);
    expect_ok(check_contracting_homotopy(*lbar, *phi_bar(lbar), *f_total(lbar), 4));
    auto fbar = bar_resolution(lambda, 3);
    expect_ok(check_contracting_homotopy(*fbar, *phi_bar(fbar), *f_total(fbar), 3));
}

TEST(Homotopy, QciClosedForm) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 7);
    auto phi = phi_qci(c.tot);
    EXPECT_EQ(chain_str(*c.tot, (*phi)(tot_core(*c.tot, 0, 0, "y", 0, 0))), "e(0,1)");
    EXPECT_EQ(chain_str(*c.tot, (*phi)(tot_core(*c.tot, 2, 0, "x", 0, 3))), "e(3,3)");
    EXPECT_EQ(chain_str(*c.tot, (*phi)(tot_core(*c.tot, 0, 0, "x", 1, 0))), "e(2,0)");
    EXPECT_TRUE((*phi)(tot_core(*c.tot, 1, 2, "xy", 1, 1)).empty());
    expect_ok(check_contracting_homotopy(*c.tot, *phi, *f_total(c.tot), 7));
}

TEST(Homotopy, SigmaAndFactorization) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 5);
    Sigma s = sigma(c.tot);
    Core<2> core = tot_core(*c.tot, 0, 1, "1", 1, 0);
    const Chain<1>& img = (*s.forward)(core);
    ASSERT_EQ(img.size(), 1u);
    EXPECT_EQ(img.begin()->second, f->q().inverse());
    Core<2> core0 = tot_core(*c.tot, 1, 0, "y", 0, 1);
    EXPECT_EQ((*s.forward)(core0).begin()->second, f->one());
    expect_ok(check_sigma(s, 5));
    expect_ok(check_factorization(s, 5));
}

TEST(Homotopy, TwistedCompositeMatchesClosedForm) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 7);
    Sigma s = sigma(c.tot);
    auto phi = phi_twisted(s, phi_koszul_dual_numbers(c.tot->parts()[0]), phi_koszul_dual_numbers(c.tot->parts()[1]));
    EXPECT_EQ(chain_str(*c.tot, (*phi)(tot_core(*c.tot, 0, 0, "x", 1, 0))), "e(2,0)");
    EXPECT_TRUE((*phi)(tot_core(*c.tot, 1, 2, "xy", 1, 1)).empty());
    expect_ok(check_maps_agree(*c.tot, *phi, *phi_qci(c.tot), 6));
    expect_ok(check_contracting_homotopy(*c.tot, *phi, *f_total(c.tot), 7));
}

TEST(Homotopy, TwistedCompositeOverOtherFields) {
    for (auto [f, q] : {std::pair{Field::rationals(), -1}, std::pair{Field::cyclotomic(3), 0}, std::pair{Field::prime(2), 1}}) {
        Scalar qs = q == 0 ? f->q() : f->from_int(q);
        Qci c = make_qci(f, qs, 6);
        Sigma s = sigma(c.tot);
        auto phi = phi_twisted(s, phi_koszul_dual_numbers(c.tot->parts()[0]), phi_koszul_dual_numbers(c.tot->parts()[1]));
        expect_ok(check_maps_agree(*c.tot, *phi, *phi_qci(c.tot), 5));
        expect_ok(check_contracting_homotopy(*c.tot, *phi, *f_total(c.tot), 6));
    }
}

TEST(Homotopy, TwistedCompositeOfNormalizedBars) {
    auto f = Field::rational_functions();
    auto lambda = quantum_complete_intersection(f, f->q());
    auto bx = normalized_bar_resolution(lambda->factors()->left, 4);
    auto by = normalized_bar_resolution(lambda->factors()->right, 4);
    auto tot = twisted_tensor_resolution(bx, by, lambda, 4);
    Sigma s = sigma(tot);
    expect_ok(check_sigma(s, 4));
    expect_ok(check_factorization(s, 4));
    auto phi = phi_twisted(s, phi_bar(bx), phi_bar(by));
    expect_ok(check_contracting_homotopy(*tot, *phi, *f_total(tot), 4));

    auto fr = Field::rationals();
    auto r = truncated_poly(fr, "x", 3);
    auto sy = truncated_poly(fr, "y", 2);
    auto triv = twisted_tensor_algebra(r, sy, Twist::trivial(fr, 1, 1));
    auto tr = twisted_tensor_resolution(normalized_bar_resolution(r, 3), normalized_bar_resolution(sy, 3), triv, 3);
    Sigma st = sigma(tr);
    expect_ok(check_sigma(st, 3));
    auto phit = phi_twisted(st, phi_bar(tr->parts()[0]), phi_bar(tr->parts()[1]));
    expect_ok(check_contracting_homotopy(*tr, *phit, *f_total(tr), 3));
}
