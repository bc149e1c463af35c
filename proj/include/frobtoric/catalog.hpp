#pragma once

// Builtin varieties: projective spaces, Hirzebruch F1, the toric del Pezzo
// surfaces X1..X3, and the twelve toric Fano 3-folds with a splitting of
// F_*O into exceptional line bundles worth testing.

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "frobtoric/cohomology.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/ext.hpp"
#include "frobtoric/fan.hpp"
#include "frobtoric/frobenius.hpp"

namespace frobtoric {

/// Base fan and split degrees of a projective-bundle entry.
struct BundleData {
    Fan base;
    std::vector<TorusDivisor> degrees;
};

struct CatalogEntry {
    std::string name;
    Fan fan;
    std::vector<DivisorClass> collection;
    std::optional<BundleData> bundle;
    bool fano_threefold = false;
    /// For the two 3-folds where higher self-Ext of F_*O is known not to vanish.
    std::optional<int> expected_nonvanishing_degree;
    /// Coxeter number of the homogeneous model (P^n only).
    std::optional<int> coxeter_number;
};

namespace detail {

inline std::vector<DivisorClass> dedup(std::vector<DivisorClass> v) {
    std::vector<DivisorClass> out;
    for (auto& c : v)
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    return out;
}

}  // namespace detail

/// {O, O(-1), ..., O(-n)}.
inline std::vector<DivisorClass> beilinson_collection(const Fan& pn) {
    std::vector<DivisorClass> out;
    const DivisorClass h = class_of(pn, pn.ray_divisor(0));
    for (int j = 0; j <= pn.dim(); ++j) out.push_back(-j * h);
    return out;
}

/// Pairwise sums of the factor collections.
inline std::vector<DivisorClass> product_collection(const ProductFan& prod, const Fan& f1, const Fan& f2,
                                                    const std::vector<DivisorClass>& c1,
                                                    const std::vector<DivisorClass>& c2) {
    std::vector<DivisorClass> out;
    for (const auto& a : c1)
        for (const auto& b : c2)
            out.push_back(class_of(prod.fan, prod.pullback_first(representative(f1, a)) +
                                                 prod.pullback_second(representative(f2, b))));
    return out;
}

/// pi^*C tensored with O(-j), j = 0..r, where O(1) = O_pi(1) (x) pi^*det E is the
/// hyperplane bundle with pi_* O(1) = E.
inline std::vector<DivisorClass> bundle_collection(const ProjectiveBundleFan& pb, const Fan& base,
                                                   const std::vector<DivisorClass>& c) {
    std::vector<DivisorClass> out;
    TorusDivisor det = pb.degrees.front();
    for (std::size_t i = 1; i < pb.degrees.size(); ++i) det = det + pb.degrees[i];
    const DivisorClass xi = pb.relative_hyperplane() + class_of(pb.fan, pb.pullback(det));
    for (std::size_t j = 0; j < pb.rank; ++j)
        for (const auto& b : c) out.push_back(pb.pullback(base, b) - static_cast<std::int64_t>(j) * xi);
    return out;
}

/// pi^*C together with pi^*(h) + E for the new exceptional divisor E.
inline std::vector<DivisorClass> blowup_collection(const BlowupFan& bl, const Fan& base,
                                                   const std::vector<DivisorClass>& c, const TorusDivisor& h) {
    std::vector<DivisorClass> out;
    for (const auto& b : c) out.push_back(class_of(bl.fan, bl.pullback(representative(base, b))));
    out.push_back(class_of(bl.fan, bl.pullback(h)) + bl.exceptional_class());
    return out;
}

/// Toric del Pezzo X_k (k = 0..3): P^2 blown up at k torus-fixed points.
/// The pullback of the line class is carried along as `line`.
struct DelPezzo {
    Fan fan;
    TorusDivisor line;
    std::vector<DivisorClass> collection;
};

inline DelPezzo toric_del_pezzo(int k) {
    if (k < 0 || k > 3) throw Error(ErrorCode::InvalidInput, "toric del Pezzo surfaces X_k need 0 <= k <= 3");
    const Fan p2 = projective_space(2);
    DelPezzo x{p2, p2.ray_divisor(0), beilinson_collection(p2)};
    // fixed points of P^2 as cones on the original rays 0, 1, 2
    const std::vector<std::vector<int>> centers{{0, 1}, {1, 2}, {0, 2}};
    for (int i = 0; i < k; ++i) {
        const BlowupFan bl = blowup_fan(x.fan, centers[static_cast<std::size_t>(i)], "X" + std::to_string(i + 1));
        x.collection = blowup_collection(bl, x.fan, x.collection, -1 * x.line);
        x.line = bl.pullback(x.line);
        x.fan = bl.fan;
    }
    return x;
}

namespace detail {

inline CatalogEntry projective_space_entry(int n) {
    CatalogEntry e{"P" + std::to_string(n), projective_space(n), {}, std::nullopt, n == 3, std::nullopt, n + 1};
    e.collection = beilinson_collection(e.fan);
    return e;
}

inline CatalogEntry bundle_entry(const std::string& name, const Fan& base, const std::vector<DivisorClass>& base_coll,
                                 const std::vector<TorusDivisor>& degrees, bool fano3) {
    const ProjectiveBundleFan pb = projectivization_fan(base, degrees, name);
    CatalogEntry e{name, pb.fan, bundle_collection(pb, base, base_coll), BundleData{base, degrees}, fano3,
                   std::nullopt, std::nullopt};
    return e;
}

inline CatalogEntry product_entry(const std::string& name, const Fan& f1, const std::vector<DivisorClass>& c1,
                                  const Fan& f2, const std::vector<DivisorClass>& c2, bool fano3) {
    const ProductFan prod = product_fan(f1, f2, name);
    return CatalogEntry{name, prod.fan, product_collection(prod, f1, f2, c1, c2), std::nullopt, fano3, std::nullopt,
                        std::nullopt};
}

}  // namespace detail

/// P(O + O(l)) over X1. The default l is the pullback of the line class.
inline CatalogEntry x1_bundle_entry(const std::optional<DivisorClass>& l = std::nullopt) {
    const DelPezzo x1 = toric_del_pezzo(1);
    const TorusDivisor twist = l ? representative(x1.fan, *l) : x1.line;
    return detail::bundle_entry("P(O+O(l))/X1", x1.fan, x1.collection, {x1.fan.zero_divisor(), twist}, true);
}

/// Every builtin entry, surfaces first, then the twelve Fano 3-folds.
inline std::vector<CatalogEntry> builtin_catalog() {
    using detail::bundle_entry;
    using detail::product_entry;
    const Fan p1 = projective_space(1);
    const Fan p2 = projective_space(2);
    const auto c1 = beilinson_collection(p1);
    const auto c2 = beilinson_collection(p2);
    const ProductFan p1p1 = product_fan(p1, p1, "P1xP1");
    const auto c11 = product_collection(p1p1, p1, p1, c1, c1);
    const auto x1 = toric_del_pezzo(1), x2 = toric_del_pezzo(2), x3 = toric_del_pezzo(3);

    auto bidegree = [&](std::int64_t a, std::int64_t b) {
        return p1p1.pullback_first(a * p1.ray_divisor(0)) + p1p1.pullback_second(b * p1.ray_divisor(0));
    };

    std::vector<CatalogEntry> out;
    out.push_back(detail::projective_space_entry(1));
    out.push_back(detail::projective_space_entry(2));
    out.push_back(bundle_entry("F1", p1, c1, {p1.zero_divisor(), p1.ray_divisor(0)}, false));
    out.push_back(CatalogEntry{"P1xP1", p1p1.fan, c11, std::nullopt, false, std::nullopt, std::nullopt});
    out.push_back(CatalogEntry{"X1", x1.fan, x1.collection, std::nullopt, false, std::nullopt, std::nullopt});
    out.push_back(CatalogEntry{"X2", x2.fan, x2.collection, std::nullopt, false, std::nullopt, std::nullopt});
    out.push_back(CatalogEntry{"X3", x3.fan, x3.collection, std::nullopt, false, std::nullopt, std::nullopt});

    out.push_back(detail::projective_space_entry(3));
    auto two = bundle_entry("P(O+O(2))/P2", p2, c2, {p2.zero_divisor(), 2 * p2.ray_divisor(0)}, true);
    two.expected_nonvanishing_degree = 3;
    out.push_back(two);
    out.push_back(bundle_entry("P(O+O(1))/P2", p2, c2, {p2.zero_divisor(), p2.ray_divisor(0)}, true));
    out.push_back(bundle_entry("P(O+O+O(1))/P1", p1, c1,
                               {p1.zero_divisor(), p1.zero_divisor(), -1 * p1.ray_divisor(0)}, true));
    out.push_back(bundle_entry("P(O+O(1,1))/P1xP1", p1p1.fan, c11, {p1p1.fan.zero_divisor(), bidegree(1, 1)}, true));
    auto mixed = bundle_entry("P(O+O(1,-1))/P1xP1", p1p1.fan, c11, {p1p1.fan.zero_divisor(), bidegree(1, -1)}, true);
    mixed.expected_nonvanishing_degree = 1;
    out.push_back(mixed);
    out.push_back(x1_bundle_entry());
    out.push_back(product_entry("P2xP1", p2, c2, p1, c1, true));
    {
        const ProductFan pp = product_fan(p1p1.fan, p1, "P1xP1xP1");
        out.push_back(CatalogEntry{"P1xP1xP1", pp.fan, product_collection(pp, p1p1.fan, p1, c11, c1), std::nullopt,
                                   true, std::nullopt, std::nullopt});
    }
    out.push_back(product_entry("X1xP1", x1.fan, x1.collection, p1, c1, true));
    out.push_back(product_entry("X2xP1", x2.fan, x2.collection, p1, c1, true));
    out.push_back(product_entry("X3xP1", x3.fan, x3.collection, p1, c1, true));
    for (auto& e : out) e.collection = detail::dedup(std::move(e.collection));
    return out;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : builtin_catalog()) names.push_back(e.name);
    return names;
}

inline CatalogEntry find_entry(const std::string& name) {
    for (auto& e : builtin_catalog())
        if (e.name == name) return e;
    throw Error(ErrorCode::InvalidInput, "unknown variety: " + name);
}

/// Builtin collection for a fan, matched against catalog entries by equality of rays and cones.
inline std::optional<std::vector<DivisorClass>> builtin_collection(const Fan& fan) {
    for (const auto& e : builtin_catalog())
        if (e.fan.rays() == fan.rays() && e.fan.max_cones() == fan.max_cones()) return e.collection;
    return std::nullopt;
}

struct CatalogRow {
    std::string name;
    std::optional<TiltingVerdict> verdict;
    std::string error;  // empty when the verdict is present

    bool failing() const { return verdict && !verdict->strong_exceptional; }
};

struct CatalogSummary {
    std::vector<CatalogRow> rows;
    int vanishing = 0;
    int failing = 0;
    int errors = 0;
};

/// Tilting verdicts across the twelve Fano 3-folds, one task per entry.
inline CatalogSummary catalog_run(std::int64_t p, int n) {
    const FrobeniusOrder order(p, n);
    if (order.q() > 9) throw Error(ErrorCode::InvalidInput, "catalog run needs p^n <= 9 for 3-folds");
    std::vector<CatalogEntry> entries;
    for (auto& e : builtin_catalog())
        if (e.fano_threefold) entries.push_back(std::move(e));

    std::vector<std::future<CatalogRow>> tasks;
    for (const auto& e : entries)
        tasks.push_back(std::async(std::launch::async, [&e, &order] {
            CatalogRow row{e.name, std::nullopt, {}};
            try {
                const CohomologyEngine engine(e.fan);
                row.verdict = tilting_verdict(engine, order, e.collection);
            } catch (const Error& err) {
                if (is_internal(err.code())) throw;
                row.error = err.what();
            }
            return row;
        }));

    CatalogSummary summary;
    for (auto& t : tasks) {
        CatalogRow row = t.get();
        if (!row.verdict)
            ++summary.errors;
        else if (row.failing())
            ++summary.failing;
        else
            ++summary.vanishing;
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

}  // namespace frobtoric
