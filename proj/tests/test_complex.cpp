#include <gtest/gtest.h>

#include "hhtwist/complex.hpp"

using namespace hht;

namespace {

struct Qci {
    FieldPtr field;
    Scalar q;
    AlgebraPtr lambda;
    ComplexPtr kx, ky, tot;
};

Qci make_qci(FieldPtr f, Scalar q, int n) {
    Qci c{f, q, quantum_complete_intersection(f, q), nullptr, nullptr, nullptr};
    c.kx = koszul_dual_numbers(c.lambda->factors()->left, n);
    c.ky = koszul_dual_numbers(c.lambda->factors()->right, n);
    c.tot = twisted_tensor_resolution(c.kx, c.ky, c.lambda, n);
    return c;
}

void expect_ok(const CheckReport& r) {
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures.size() << " failures, first at degree " << r.failures.front().degree
                        << " on " << r.failures.front().generator << ": " << r.failures.front().detail;
    EXPECT_GT(r.checked, 0) << r.name;
}

}  // namespace

TEST(Complex, KoszulDualNumbers) {
    auto f = Field::rationals();
    auto k = koszul_dual_numbers(f, "x", 8);
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(k->rank(n), 1);
    EXPECT_EQ(k->generator({3, 0}).label, "e(3)");
    EXPECT_EQ(k->degree_of(GenRef{3, 0}), Degree{3});
    EXPECT_EQ(chain_str(*k, k->differential({3, 0})), "x*e(2)-e(2)*x");
    EXPECT_EQ(chain_str(*k, k->differential({2, 0})), "x*e(1)+e(1)*x");
    expect_ok(check_d_squared(*k, 8));
    expect_ok(check_augmentation(*k));
    expect_ok(check_internal_degrees(*k));
}

TEST(Complex, QciKoszulDifferentialMatchesClosedForm) {
    auto f = Field::rational_functions();
    const int N = 8;
    Qci c = make_qci(f, f->q(), N);
    const GradedAlgebra& a = *c.lambda;
    int x = *a.find("x"), y = *a.find("y"), one = a.unit();
    const Scalar q = c.q;
    for (int n = 1; n <= N; ++n) {
        ASSERT_EQ(c.tot->rank(n), n + 1);
        for (int i = 0; i <= n; ++i) {
            int j = n - i;
            GenRef g = c.tot->at(n, {i, 0, j, 0});
            EXPECT_EQ(c.tot->generator(g).label, "e(" + std::to_string(i) + "," + std::to_string(j) + ")");
            Scalar sgn = (n % 2) ? -f->one() : f->one();
            Chain<1> want;
            if (i > 0) {
                GenRef h = c.tot->at(n - 1, {i - 1, 0, j, 0});
                want.add(Tensor<1>{x, {h}, {}, one}, f->one());
                want.add(Tensor<1>{one, {h}, {}, x}, sgn * q.pow(j));
            }
            if (j > 0) {
                GenRef h = c.tot->at(n - 1, {i, 0, j - 1, 0});
                want.add(Tensor<1>{y, {h}, {}, one}, q.pow(i));
                want.add(Tensor<1>{one, {h}, {}, y}, sgn);
            }
            EXPECT_EQ(c.tot->differential(g), want) << "e(" << i << "," << j << ")";
        }
    }
    EXPECT_EQ(chain_str(*c.tot, c.tot->differential(c.tot->at(2, {1, 0, 1, 0}))),
              "x*e(0,1)+q*e(0,1)*x+q*y*e(1,0)+e(1,0)*y");
}

TEST(Complex, DSquaredOnEveryBuilder) {
    for (auto f : {Field::rational_functions(), Field::rationals(), Field::cyclotomic(3), Field::cyclotomic(3, 2)}) {
        Scalar q = f->has_q() ? f->q() : f->from_int(-1);
        Qci c = make_qci(f, q, 8);
        expect_ok(check_d_squared(*c.tot, 8));
        expect_ok(check_augmentation(*c.tot));
        expect_ok(check_internal_degrees(*c.tot));
    }
    auto f = Field::rational_functions();
    auto lambda = quantum_complete_intersection(f, f->q());
    auto bar = bar_resolution(lambda, 4);
    expect_ok(check_d_squared(*bar, 4));
    expect_ok(check_augmentation(*bar));
    expect_ok(check_internal_degrees(*bar));
    auto nbar = normalized_bar_resolution(lambda, 5);
    EXPECT_EQ(nbar->rank(3), 27);
    EXPECT_EQ(nbar->generator(nbar->at(2, {*lambda->find("x"), *lambda->find("y")})).label, "[x|y]");
    expect_ok(check_d_squared(*nbar, 5));
    expect_ok(check_augmentation(*nbar));
    expect_ok(check_internal_degrees(*nbar));
}

TEST(Complex, TotalOfNormalizedBars) {
    auto f = Field::rational_functions();
    auto lambda = quantum_complete_intersection(f, f->q());
    auto bx = normalized_bar_resolution(lambda->factors()->left, 4);
    auto by = normalized_bar_resolution(lambda->factors()->right, 4);
    auto tot = twisted_tensor_resolution(bx, by, lambda, 4);
    expect_ok(check_d_squared(*tot, 4));
    expect_ok(check_augmentation(*tot));
    expect_ok(check_internal_degrees(*tot));
    EXPECT_EQ(tot->generator(tot->at(2, {1, 0, 1, 0})).label, "e(1,1)");
}

TEST(Complex, TrivialTwistTotalComplex) {
    auto f = Field::rationals();
    auto r = truncated_poly(f, "x", 3);
    auto s = truncated_poly(f, "y", 2);
    auto lambda = twisted_tensor_algebra(r, s, Twist::trivial(f, 1, 1));
    auto tot = twisted_tensor_resolution(bar_resolution(r, 3), normalized_bar_resolution(s, 3), lambda, 3);
    expect_ok(check_d_squared(*tot, 3));
    expect_ok(check_augmentation(*tot));
    expect_ok(check_internal_degrees(*tot));
}

TEST(Complex, TensorPowers) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 5);
    auto kk = tensor_over_algebra(c.tot, 2, 4);
    EXPECT_EQ(kk->rank(0), 4);
    EXPECT_EQ(kk->rank(1), 16);
    EXPECT_EQ(cores_of_degree<2>(*c.tot, 1).size(), 16u);
    expect_ok(check_d_squared(*kk, 4));
    expect_ok(check_augmentation(*kk));
    expect_ok(check_internal_degrees(*kk));
    auto kkk = tensor_over_algebra(c.tot, 3, 3);
    EXPECT_EQ(kkk->rank(0), 16);
    expect_ok(check_d_squared(*kkk, 3));
    expect_ok(check_internal_degrees(*kkk));
    Core<2> core{{GenRef{1, 0}, GenRef{0, 0}}, {*c.lambda->find("y")}};
    GenRef g = power_generator<2>(*kk, core);
    EXPECT_EQ(power_core<2>(*kk, g), core);
}

TEST(Complex, LiftedComparisonMapsAreChainMaps) {
    auto f = Field::rational_functions();
    Qci c = make_qci(f, f->q(), 4);
    auto nbar = normalized_bar_resolution(c.lambda, 4);
    auto to_bar = lift_chain_map(c.tot, nbar, 4);
    expect_ok(check_chain_map(*c.tot, *nbar, *to_bar, 4));
    auto from_bar = lift_chain_map(nbar, c.tot, 4);
    expect_ok(check_chain_map(*nbar, *c.tot, *from_bar, 4));
    auto self = lift_chain_map(c.tot, c.tot, 4);
    expect_ok(check_chain_map(*c.tot, *c.tot, *self, 4));
}

TEST(Complex, TwistedPairRejectsForeignComplexes) {
    auto f = Field::rationals();
    auto lambda = quantum_complete_intersection(f, f->from_int(2));
    auto other = truncated_poly(f, "x", 2);
    auto kx = koszul_dual_numbers(other, 3);
    auto ky = koszul_dual_numbers(lambda->factors()->right, 3);
    EXPECT_THROW(twisted_tensor_resolution(kx, ky, lambda, 3), std::invalid_argument);
    EXPECT_THROW(koszul_dual_numbers(truncated_poly(f, "z", 3), 3), std::invalid_argument);
}
