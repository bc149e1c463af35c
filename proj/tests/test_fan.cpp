#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "frobtoric/catalog.hpp"
#include "frobtoric/fan.hpp"

using namespace frobtoric;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvariantViolation;
}

/// Brute-force fan isomorphism: a ray bijection induced by a unimodular map that carries cones to cones.
bool isomorphic(const Fan& a, const Fan& b) {
    if (a.dim() != 2 || b.dim() != 2 || a.num_rays() != b.num_rays()) return false;
    std::vector<int> perm(a.num_rays());
    std::iota(perm.begin(), perm.end(), 0);
    const auto& c0 = a.max_cones().front();
    do {
        // A maps rays c0 of a to their images in b: A = W V^{-1}
        const IntVec& v1 = a.rays()[c0[0]];
        const IntVec& v2 = a.rays()[c0[1]];
        const IntVec& w1 = b.rays()[perm[c0[0]]];
        const IntVec& w2 = b.rays()[perm[c0[1]]];
        const std::int64_t det = v1[0] * v2[1] - v1[1] * v2[0];
        // V^{-1} = adj / det with det = +-1
        const std::int64_t inv[2][2] = {{v2[1] * det, -v2[0] * det}, {-v1[1] * det, v1[0] * det}};
        std::int64_t m[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m[i][j] = w1[i] * inv[0][j] + w2[i] * inv[1][j];
        bool ok = true;
        for (std::size_t r = 0; r < a.num_rays() && ok; ++r) {
            const IntVec& v = a.rays()[r];
            const IntVec img{m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
            ok = img == b.rays()[perm[r]];
        }
        if (!ok) continue;
        std::vector<std::vector<int>> mapped;
        for (const auto& c : a.max_cones()) {
            std::vector<int> mc;
            for (int r : c) mc.push_back(perm[r]);
            std::sort(mc.begin(), mc.end());
            mapped.push_back(mc);
        }
        std::sort(mapped.begin(), mapped.end());
        auto target = b.max_cones();
        std::sort(target.begin(), target.end());
        if (mapped == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST(Fan, ProjectiveLineAndPlane) {
    const Fan p1 = build_fan({{1}, {-1}}, {{0}, {1}});
    EXPECT_EQ(p1.pic_rank(), 1u);
    const Fan p2 = build_fan({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
    EXPECT_EQ(p2.pic_rank(), 1u);
    EXPECT_EQ(class_of(p2, TorusDivisor{{1, 0, 0}}), DivisorClass{{1}});
    EXPECT_EQ(class_of(p2, TorusDivisor{{1, 0, -1}}), DivisorClass{{0}});
}

TEST(Fan, HirzebruchFromRays) {
    const Fan f1 = build_fan({{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, "F1");
    EXPECT_EQ(f1.pic_rank(), 2u);
    EXPECT_TRUE(is_fano(f1));
    const DivisorClass k = canonical_class(f1);
    EXPECT_EQ(k + (-k), zero_class(f1));
}

TEST(Fan, ValidationErrors) {
    EXPECT_EQ(code_of([] { build_fan({{2}, {-1}}, {{0}, {1}}); }), ErrorCode::NonPrimitiveRay);
    EXPECT_EQ(code_of([] { build_fan({{1, 0}, {2, 2}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}); }), ErrorCode::NonPrimitiveRay);
    EXPECT_EQ(code_of([] { build_fan({{1, 0}, {1, 3}, {-1, -1}, {0, 1}}, {{0, 1}, {1, 3}, {3, 2}, {2, 0}}); }),
              ErrorCode::NotSmooth);
    EXPECT_EQ(code_of([] { build_fan({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}}); }), ErrorCode::BadWall);
    EXPECT_EQ(code_of([] { build_fan({{1}}, {{0}}); }), ErrorCode::BadWall);
    EXPECT_EQ(code_of([] { build_fan({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}, {0, 5}}); }),
              ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { build_fan({}, {}); }), ErrorCode::InvalidInput);
    EXPECT_NO_THROW(build_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}}, {{0, 4}, {4, 1}, {1, 2}, {2, 3}, {3, 0}}));
}

TEST(Fan, NotCompleteDetected) {
    // boundary of a simplex off the origin: every wall in two cones, -e_1 uncovered
    EXPECT_EQ(code_of([] {
                  build_fan({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
              }),
              ErrorCode::NotComplete);
}

TEST(Fan, PicRankAndSurjectivity) {
    for (const auto& e : builtin_catalog()) {
        EXPECT_EQ(e.fan.pic_rank(), e.fan.num_rays() - static_cast<std::size_t>(e.fan.dim())) << e.name;
        // ray divisors generate Z^{pic}: the complement rays map to unit vectors
        for (std::size_t k = 0; k < e.fan.pic_rank(); ++k) {
            DivisorClass unit{IntVec(e.fan.pic_rank(), 0)};
            unit.coords[k] = 1;
            EXPECT_EQ(class_of(e.fan, e.fan.ray_divisor(static_cast<std::size_t>(e.fan.complement_rays()[k]))), unit);
        }
    }
}

TEST(Fan, PrincipalDivisorsAreZero) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coord(-20, 20);
    for (const auto& e : builtin_catalog()) {
        const std::size_t d = static_cast<std::size_t>(e.fan.dim());
        for (int trial = 0; trial < 100; ++trial) {
            IntVec m(d);
            for (auto& x : m) x = coord(rng);
            TorusDivisor base = e.fan.zero_divisor();
            for (auto& a : base.coeffs) a = coord(rng);
            EXPECT_EQ(class_of(e.fan, base + e.fan.principal(m)), class_of(e.fan, base)) << e.name;
        }
    }
}

TEST(Fan, RepresentativeRoundTrip) {
    for (const auto& e : builtin_catalog())
        for (const auto& g : pic_generators(e.fan)) {
            const DivisorClass c = 3 * g - canonical_class(e.fan);
            EXPECT_EQ(class_of(e.fan, representative(e.fan, c)), c);
        }
}

TEST(Fan, AmpleAndNef) {
    const Fan p2 = projective_space(2);
    EXPECT_TRUE(is_ample(p2, TorusDivisor{{1, 0, 0}}));
    EXPECT_TRUE(is_nef(p2, p2.zero_divisor()));
    EXPECT_FALSE(is_ample(p2, p2.zero_divisor()));
    EXPECT_FALSE(is_nef(p2, TorusDivisor{{-1, 0, 0}}));
    const Fan f1 = find_entry("F1").fan;
    EXPECT_TRUE(is_ample(f1, -1 * f1.canonical()));
}

TEST(Fan, Constructors) {
    const Fan p1 = projective_space(1);
    const ProductFan pp = product_fan(p1, p1);
    EXPECT_EQ(pp.fan.num_rays(), 4u);
    EXPECT_EQ(pp.fan.max_cones().size(), 4u);

    const Fan p2 = projective_space(2);
    const BlowupFan bl = blowup_fan(p2, {0, 1});
    EXPECT_EQ(bl.fan.pic_rank(), p2.pic_rank() + 1);

    const ProjectiveBundleFan f1 = projectivization_fan(p1, {p1.zero_divisor(), p1.ray_divisor(0)});
    EXPECT_EQ(f1.fan.pic_rank(), p1.pic_rank() + 1);
    EXPECT_TRUE(isomorphic(f1.fan, bl.fan));
    EXPECT_FALSE(isomorphic(f1.fan, pp.fan));

    const ProjectiveBundleFan mixed =
        projectivization_fan(pp.fan, {pp.fan.zero_divisor(), pp.pullback_first(p1.ray_divisor(0)) -
                                                                 pp.pullback_second(p1.ray_divisor(0))});
    EXPECT_EQ(mixed.fan.dim(), 3);
    EXPECT_EQ(mixed.fan.pic_rank(), 3u);
}

TEST(Fan, CatalogIsFano) {
    int fano3 = 0;
    for (const auto& e : builtin_catalog()) {
        EXPECT_TRUE(is_fano(e.fan)) << e.name;
        fano3 += e.fano_threefold;
        std::vector<DivisorClass> sorted = e.collection;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end()) << e.name;
        // a full exceptional collection has as many members as the rank of K_0
        EXPECT_EQ(e.collection.size(), e.fan.max_cones().size()) << e.name;
    }
    EXPECT_EQ(fano3, 12);
}

TEST(Fan, X1ChoiceOfL) {
    // the default l is the pullback of the line class; l = 0 gives X1 x P1
    const DelPezzo x1 = toric_del_pezzo(1);
    EXPECT_TRUE(is_fano(x1_bundle_entry().fan));
    EXPECT_TRUE(is_fano(x1_bundle_entry(zero_class(x1.fan)).fan));
}
