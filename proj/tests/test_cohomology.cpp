#include <gtest/gtest.h>

#include <random>

#include "frobtoric/catalog.hpp"
#include "frobtoric/cohomology.hpp"
#include "oracles.hpp"

using namespace frobtoric;

TEST(Cohomology, ProjectiveSpaces) {
    for (int n = 1; n <= 3; ++n) {
        const Fan pn = projective_space(n);
        const CohomologyEngine engine(pn);
        for (std::int64_t d = -8; d <= 8; ++d)
            EXPECT_EQ(engine.cohomology(DivisorClass{{d}}).dims, oracle::pn_cohomology(n, d)) << "P" << n << " d=" << d;
    }
}

TEST(Cohomology, Examples) {
    const Fan p2 = projective_space(2);
    EXPECT_EQ(cohomology(p2, TorusDivisor{{-3, 0, 0}}).dims, (IntVec{0, 0, 1}));
    EXPECT_EQ(cohomology(p2, TorusDivisor{{2, 0, 0}}).dims, (IntVec{6, 0, 0}));
    const Fan p1 = projective_space(1);
    const ProductFan pp = product_fan(p1, p1);
    // O(-1, 0) on P1 x P1 is acyclic; O(-2, 1) has h^1 = 1 * 2
    EXPECT_EQ(cohomology(pp.fan, pp.pullback_first(TorusDivisor{{-1, 0}})).dims, (IntVec{0, 0, 0}));
    EXPECT_EQ(cohomology(pp.fan, pp.pullback_first(TorusDivisor{{-2, 0}})).dims, (IntVec{0, 1, 0}));
    EXPECT_EQ(cohomology(pp.fan, pp.pullback_first(TorusDivisor{{-2, 0}}) + pp.pullback_second(TorusDivisor{{1, 0}})).dims,
              (IntVec{0, 2, 0}));
}

TEST(Cohomology, KunnethOnProducts) {
    const Fan p1 = projective_space(1), p2 = projective_space(2);
    const ProductFan prod = product_fan(p2, p1);
    const CohomologyEngine engine(prod.fan);
    for (std::int64_t a = -5; a <= 4; ++a)
        for (std::int64_t b = -4; b <= 3; ++b) {
            const TorusDivisor d = prod.pullback_first(TorusDivisor{{a, 0, 0}}) + prod.pullback_second(TorusDivisor{{b, 0}});
            EXPECT_EQ(engine.cohomology(d).dims, oracle::convolve(oracle::pn_cohomology(2, a), oracle::pn_cohomology(1, b)));
        }
}

TEST(Cohomology, SerreDualityAndLatticePoints) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coeff(-6, 6);
    for (const auto& e : builtin_catalog()) {
        const CohomologyEngine engine(e.fan);
        const std::size_t dim = static_cast<std::size_t>(e.fan.dim());
        const int trials = dim == 3 ? 60 : 200;
        for (int t = 0; t < trials; ++t) {
            TorusDivisor d = e.fan.zero_divisor();
            for (auto& a : d.coeffs) a = coeff(rng);
            const IntVec h = engine.cohomology(d).dims;
            const IntVec dual = engine.cohomology(e.fan.canonical() - d).dims;
            for (std::size_t i = 0; i <= dim; ++i) EXPECT_EQ(h[i], dual[dim - i]) << e.name;
            EXPECT_EQ(h[0], h0_points(e.fan, d)) << e.name;
        }
    }
}

TEST(Cohomology, NefVanishing) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> coeff(0, 4);
    for (const auto& e : builtin_catalog()) {
        const CohomologyEngine engine(e.fan);
        int nef_seen = 0;
        for (int t = 0; t < 80; ++t) {
            TorusDivisor d = e.fan.zero_divisor();
            for (auto& a : d.coeffs) a = coeff(rng);
            if (!is_nef(e.fan, d)) continue;
            ++nef_seen;
            const IntVec h = engine.cohomology(d).dims;
            for (std::size_t i = 1; i < h.size(); ++i) EXPECT_EQ(h[i], 0) << e.name;
        }
        EXPECT_GT(nef_seen, 0) << e.name;
    }
}

TEST(Cohomology, ProjectiveBundleLeray) {
    // P(O + O(2)) over P^2 with pi_* O(a) = S^a E^* and R^1 pi_* O(a) = S^{-a-2} E (x) det E
    const Fan p2 = projective_space(2);
    const ProjectiveBundleFan pb = projectivization_fan(p2, {p2.zero_divisor(), 2 * p2.ray_divisor(0)});
    const CohomologyEngine engine(pb.fan);
    const DivisorClass xi = pb.relative_hyperplane();
    const DivisorClass h = class_of(pb.fan, pb.pullback(p2.ray_divisor(0)));
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t l = -6; l <= 6; ++l) {
            IntVec expected(4, 0);
            if (a >= 0)
                for (std::int64_t j = 0; j <= a; ++j) {
                    const auto hb = oracle::pn_cohomology(2, l - 2 * j);
                    for (std::size_t i = 0; i < 3; ++i) expected[i] += hb[i];
                }
            for (std::int64_t j = 0; j <= -a - 2; ++j) {
                const auto hb = oracle::pn_cohomology(2, l + 2 + 2 * j);
                for (std::size_t i = 0; i < 3; ++i) expected[i + 1] += hb[i];
            }
            EXPECT_EQ(engine.cohomology(a * xi + l * h).dims, expected) << a << " " << l;
        }
}

TEST(Cohomology, RelativeHyperplaneConvention) {
    // h^0(O_pi(1) + pi^*L) = sum_i h^0(L - E_i)
    const Fan p2 = projective_space(2);
    const std::vector<TorusDivisor> degrees{p2.zero_divisor(), p2.ray_divisor(0)};
    const ProjectiveBundleFan pb = projectivization_fan(p2, degrees);
    const CohomologyEngine engine(pb.fan);
    for (std::int64_t l = -1; l <= 4; ++l) {
        std::int64_t expected = 0;
        for (const auto& e : degrees) expected += oracle::pn_cohomology(2, l - e.coeffs[0])[0];
        const DivisorClass c = pb.relative_hyperplane() + class_of(pb.fan, pb.pullback(l * p2.ray_divisor(0)));
        EXPECT_EQ(engine.cohomology(c).dims[0], expected);
    }
}

TEST(Cohomology, Limits) {
    std::vector<IntVec> rays;
    std::vector<std::vector<int>> cones;
    // P^5 is outside the supported range
    for (int i = 0; i < 5; ++i) {
        IntVec v(5, 0);
        v[static_cast<std::size_t>(i)] = 1;
        rays.push_back(v);
    }
    rays.push_back(IntVec(5, -1));
    for (int skip = 0; skip <= 5; ++skip) {
        std::vector<int> c;
        for (int i = 0; i <= 5; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    const Fan p5 = build_fan(rays, cones);
    try {
        CohomologyEngine engine(p5);
        FAIL() << "expected DimensionUnsupported";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionUnsupported);
    }
    const Fan p3 = projective_space(3);
    try {
        cohomology(p3, TorusDivisor{{100000, 0, 0, 0}});
        FAIL() << "expected Overflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Overflow);
    }
}
