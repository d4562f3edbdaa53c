#include <gtest/gtest.h>

#include <random>

#include "hhtwist/algebra.hpp"

using namespace hht;

namespace {

AlgElem elem(const GradedAlgebra& a, const std::string& label, const Scalar& c) { return AlgElem(*a.find(label), c); }

}  // namespace

TEST(Algebra, TruncatedPolynomial) {
    auto f = Field::rationals();
    auto a = truncated_poly(f, "x", 4);
    EXPECT_EQ(a->dim(), 4);
    EXPECT_EQ(a->label(2), "x^2");
    EXPECT_EQ(a->degree(3), Degree{3});
    EXPECT_TRUE(a->product(2, 2).empty());
    EXPECT_EQ(a->product(1, 2), AlgElem(3, f->one()));
    EXPECT_TRUE(a->augmented());
}

TEST(Algebra, QuantumCompleteIntersectionRelations) {
    auto f = Field::rational_functions();
    Scalar q = f->q();
    auto a = quantum_complete_intersection(f, q);
    ASSERT_EQ(a->dim(), 4);
    for (auto l : {"1", "x", "y", "xy"}) EXPECT_TRUE(a->find(l)) << l;
    int x = *a->find("x"), y = *a->find("y"), xy = *a->find("xy");
    EXPECT_TRUE(a->product(x, x).empty());
    EXPECT_TRUE(a->product(y, y).empty());
    EXPECT_EQ(a->product(x, y), AlgElem(xy, f->one()));
    EXPECT_EQ(a->product(y, x), AlgElem(xy, -q.inverse()));
    // xy + q yx = 0
    AlgElem rel = a->product(x, y);
    rel.add(a->product(y, x), q);
    EXPECT_TRUE(rel.empty());
    EXPECT_EQ(a->degree(xy), (Degree{1, 1}));
    EXPECT_TRUE(a->augmented());
    EXPECT_EQ(a->element_str(a->product(y, x)), "(-1/q)*xy");
}

TEST(Algebra, RejectsNonAssociativeTable) {
    auto f = Field::rationals();
    std::vector<BasisElement> basis{{"1", {0}}, {"a", {1}}, {"b", {2}}};
    std::map<std::pair<int, int>, AlgElem> prod;
    for (int i = 0; i < 3; ++i) {
        prod[{0, i}] = AlgElem(i, f->one());
        prod[{i, 0}] = AlgElem(i, f->one());
    }
    prod[{1, 1}] = AlgElem(2, f->one());
    prod[{1, 2}] = AlgElem();
    prod[{2, 1}] = AlgElem();
    EXPECT_NO_THROW(GradedAlgebra(f, "ok", 1, basis, 0, prod));
    std::vector<BasisElement> basis2{{"1", {0}}, {"a", {1}}, {"b", {2}}, {"c", {3}}};
    std::map<std::pair<int, int>, AlgElem> prod2;
    for (int i = 0; i < 4; ++i) {
        prod2[{0, i}] = AlgElem(i, f->one());
        prod2[{i, 0}] = AlgElem(i, f->one());
    }
    prod2[{1, 1}] = AlgElem(2, f->one());
    prod2[{2, 1}] = AlgElem(3, f->one());
    try {
        GradedAlgebra bad(f, "bad", 1, basis2, 0, prod2);
        FAIL() << "expected associativity failure";
    } catch (const AlgebraError& e) {
        EXPECT_NE(std::string(e.what()).find("associativity fails on (a,a,a)"), std::string::npos) << e.what();
    }
}

TEST(Algebra, RejectsDegreeAndUnitViolations) {
    auto f = Field::rationals();
    std::vector<BasisElement> basis{{"1", {0}}, {"a", {1}}};
    std::map<std::pair<int, int>, AlgElem> prod{{{0, 0}, AlgElem(0, f->one())}, {{0, 1}, AlgElem(1, f->one())},
                                                {{1, 0}, AlgElem(1, f->one())}, {{1, 1}, AlgElem(1, f->one())}};
    EXPECT_THROW(GradedAlgebra(f, "deg", 1, basis, 0, prod), AlgebraError);
    prod[{1, 1}] = AlgElem();
    prod[{1, 0}] = AlgElem();
    EXPECT_THROW(GradedAlgebra(f, "unit", 1, basis, 0, prod), AlgebraError);
    std::vector<BasisElement> dup{{"1", {0}}, {"1", {1}}};
    EXPECT_THROW(GradedAlgebra(f, "dup", 1, dup, 0, {}), AlgebraError);
}

TEST(Algebra, TrivialTwistIsOrdinaryTensorProduct) {
    auto f = Field::rationals();
    auto r = truncated_poly(f, "x", 3);
    auto s = truncated_poly(f, "y", 2);
    auto a = twisted_tensor_algebra(r, s, Twist::trivial(f, 1, 1));
    const TensorFactors* fac = a->factors();
    ASSERT_NE(fac, nullptr);
    for (int i = 0; i < a->dim(); ++i)
        for (int j = 0; j < a->dim(); ++j) {
            AlgElem want;
            for (auto& [rk, rc] : r->product(fac->left_of[i], fac->left_of[j]))
                for (auto& [sk, sc] : s->product(fac->right_of[i], fac->right_of[j])) want.add(fac->pair(rk, sk), rc * sc);
            EXPECT_EQ(a->product(i, j), want);
        }
    EXPECT_EQ(a->label(fac->pair(2, 1)), "x^2y");
}

TEST(Algebra, TwistedProductLawOnRandomTwists) {
    std::mt19937 rng(7);
    for (auto f : {Field::rationals(), Field::prime(7), Field::cyclotomic(3)}) {
        auto r = truncated_poly(f, "x", 3);
        auto s = truncated_poly(f, "y", 3);
        for (int trial = 0; trial < 3; ++trial) {
            Scalar t = f->from_int(1 + static_cast<int>(rng() % 5));
            if (f->has_q()) t = t * f->q();
            auto a = twisted_tensor_algebra(r, s, Twist(f, 1, 1, {t}));
            const TensorFactors& fac = *a->factors();
            for (int i = 0; i < a->dim(); ++i)
                for (int j = 0; j < a->dim(); ++j) {
                    int r2 = fac.left_of[j], s1 = fac.right_of[i];
                    Scalar tw = t.pow(r->degree(r2)[0] * s->degree(s1)[0]);
                    AlgElem want;
                    for (auto& [rk, rc] : r->product(fac.left_of[i], r2))
                        for (auto& [sk, sc] : s->product(s1, fac.right_of[j])) want.add(fac.pair(rk, sk), tw * rc * sc);
                    EXPECT_EQ(a->product(i, j), want);
                }
        }
    }
}

TEST(Algebra, LabelCollisionFallsBack) {
    auto f = Field::rationals();
    auto r = truncated_poly(f, "x", 2);
    auto s = truncated_poly(f, "x", 2);
    auto a = twisted_tensor_algebra(r, s, Twist::trivial(f, 1, 1));
    EXPECT_TRUE(a->find("x_1"));
    EXPECT_TRUE(a->find("1_x"));
    EXPECT_TRUE(a->find("x_x"));
}

TEST(Algebra, NormalizationSplit) {
    auto f = Field::rationals();
    auto a = quantum_complete_intersection(f, f->from_int(-1));
    auto split = normalization_split(*a);
    EXPECT_EQ(split.complement.size(), 3u);
    EXPECT_EQ(split.section[a->unit()], -1);
    EXPECT_EQ(a->element_str(elem(*a, "xy", f->from_int(2))), "2*xy");
}
