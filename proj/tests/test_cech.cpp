#include <gtest/gtest.h>

#include "frobtoric/cech.hpp"
#include "oracles.hpp"

using namespace frobtoric;

TEST(Cech, LineBundles) {
    EXPECT_EQ(line_bundle_cohomology_fp(MultiProjSpace({2}), {-4}).dims, (IntVec{0, 0, 3}));
    EXPECT_EQ(line_bundle_cohomology_fp(MultiProjSpace({2, 2}), {-3, 0}).dims, (IntVec{0, 0, 1, 0, 0}));
    EXPECT_EQ(line_bundle_cohomology_fp(MultiProjSpace({2, 2}), {-2, 5}).dims, (IntVec{0, 0, 0, 0, 0}));
    EXPECT_EQ(line_bundle_cohomology_fp(MultiProjSpace({1, 3}), {4, -1}).dims, (IntVec{0, 0, 0, 0, 0}));
    for (int n = 1; n <= 3; ++n)
        for (std::int64_t d = -7; d <= 7; ++d)
            EXPECT_EQ(line_bundle_cohomology_fp(MultiProjSpace({n}), {d}).dims, oracle::pn_cohomology(n, d));
}

TEST(Cech, SingleDegreeByConstruction) {
    const MultiProjSpace space({2, 1});
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t b = -5; b <= 5; ++b)
            EXPECT_LE(line_bundle_cohomology_fp(space, {a, b}).nonzero_degrees(), 1u);
}

TEST(Cech, AgreesWithToricEngine) {
    for (const auto& v : cech_validate_standard()) {
        EXPECT_EQ(v.mismatches, 0) << v.space;
        EXPECT_GT(v.checked, 0) << v.space;
    }
}

TEST(Cech, IncidenceExamples) {
    for (std::int64_t p : {2, 3, 5}) {
        EXPECT_EQ(incidence_cohomology(0, 0, p).dims, (IntVec{1, 0, 0, 0}));
        EXPECT_EQ(incidence_cohomology(-2, -2, p).dims, (IntVec{0, 0, 0, 1}));
    }
    EXPECT_EQ(incidence_cohomology(-3, 0, 3).dims, (IntVec{0, 0, 1, 0}));
    // sections of O_X(1,0) and O_X(1,1): 3 and 9 - 1
    EXPECT_EQ(incidence_cohomology(1, 0, 2).dims, (IntVec{3, 0, 0, 0}));
    EXPECT_EQ(incidence_cohomology(1, 1, 2).dims, (IntVec{8, 0, 0, 0}));
}

TEST(Cech, IncidenceDualityAndEuler) {
    for (std::int64_t p : {2, 3}) {
        EXPECT_TRUE(incidence_serre_sweep(p, -6, 3));
        for (std::int64_t a = -6; a <= 3; ++a)
            for (std::int64_t b = -6; b <= 3; ++b) EXPECT_TRUE(incidence_euler_check(a, b, p)) << a << "," << b;
    }
}

TEST(Cech, Concentration) {
    for (std::int64_t p : {2, 3})
        for (int m : {1, 2}) {
            EXPECT_TRUE(concentration_check(-1, 0, p, m));
            EXPECT_TRUE(concentration_check(0, -1, p, m));
        }
    EXPECT_TRUE(concentration_check(0, 0, 5, 1));
    EXPECT_EQ(incidence_cohomology(-2, 0, 2).dims, (IntVec{0, 0, 0, 0}));
    EXPECT_EQ(incidence_cohomology(-3, 0, 3).nonzero_degrees(), 1u);
}

TEST(Cech, ComplexValidation) {
    const MultiProjSpace space({2, 2});
    Polynomial bad = incidence_form(2);
    // a degree (1,0) monomial cannot map O(-1,-1) to O(0,0)
    bad.terms.clear();
    bad.terms[IntVec{1, 0, 0, 0, 0, 0}] = 1;
    const LaurentComplex c{space, {{-1, -1}, {0, 0}}, {bad}};
    EXPECT_THROW(c.hypercohomology(2), Error);
    const LaurentComplex three{space, {{-2, -2}, {-1, -1}, {0, 0}}, {incidence_form(2), incidence_form(2)}};
    EXPECT_THROW(three.hypercohomology(2), Error);
}
