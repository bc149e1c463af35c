#pragma once

// Ext groups between Frobenius pushforwards of line bundles, and the tilting
// verdicts built on them.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "frobtoric/cohomology.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/fan.hpp"
#include "frobtoric/frobenius.hpp"

namespace frobtoric {

struct ExtReport {
    IntVec dims;
    // (class of L_u, class of M_v) -> h^*(M_v - L_u)
    std::map<std::pair<DivisorClass, DivisorClass>, CohomologyVector> per_pair;
    bool vanishing_above_zero = true;
};

struct TiltingVerdict {
    bool strong_exceptional = false;
    bool contains_collection = false;
    std::vector<DivisorClass> collection_used;
    std::vector<DivisorClass> summand_classes;
    // quiver[i][j] = dim Hom(O(c_i), O(c_j)) for distinct summand classes
    std::vector<IntVec> quiver;
    ExtReport ext;
};

namespace detail {

inline bool higher_vanish(const IntVec& dims) {
    for (std::size_t i = 1; i < dims.size(); ++i)
        if (dims[i] != 0) return false;
    return true;
}

}  // namespace detail

/// Second route: Ext^i(F_*L, F_*M) = sum_v mult_v h^i(q M_v + (1-q) K - L).
inline IntVec ext_by_adjunction(const CohomologyEngine& engine, const FrobeniusOrder& order, const TorusDivisor& l,
                                const TorusDivisor& m) {
    const Fan& fan = engine.fan();
    const Decomposition dm = frobenius_decompose(engine, m, order, Certify::Never);
    const DivisorClass k = canonical_class(fan);
    const DivisorClass lc = class_of(fan, l);
    IntVec dims(static_cast<std::size_t>(fan.dim()) + 1, 0);
    for (const auto& [c, mult] : dm.entries) {
        const CohomologyVector h = engine.cohomology(order.q() * c + (1 - order.q()) * k - lc);
        for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = checked::add(dims[i], checked::mul(mult, h.dims[i]));
    }
    return dims;
}

/// First route, pairwise over summand classes.
inline ExtReport ext_pairwise(const CohomologyEngine& engine, const Decomposition& dl, const Decomposition& dm) {
    ExtReport report;
    report.dims.assign(static_cast<std::size_t>(engine.fan().dim()) + 1, 0);
    for (const auto& [cu, mu] : dl.entries)
        for (const auto& [cv, mv] : dm.entries) {
            const CohomologyVector h = engine.cohomology(cv - cu);
            const std::int64_t w = checked::mul(mu, mv);
            for (std::size_t i = 0; i < report.dims.size(); ++i)
                report.dims[i] = checked::add(report.dims[i], checked::mul(w, h.dims[i]));
            report.per_pair.emplace(std::make_pair(cu, cv), h);
        }
    report.vanishing_above_zero = detail::higher_vanish(report.dims);
    return report;
}

/// Both routes for Ext^*(F_*L, F_*M) agree dimensionwise.
inline bool adjunction_crosscheck(const CohomologyEngine& engine, const FrobeniusOrder& order, const TorusDivisor& l,
                                  const TorusDivisor& m) {
    const Decomposition dl = frobenius_decompose(engine, l, order, Certify::Never);
    const Decomposition dm = frobenius_decompose(engine, m, order, Certify::Never);
    return ext_pairwise(engine, dl, dm).dims == ext_by_adjunction(engine, order, l, m);
}

inline bool adjunction_crosscheck(const CohomologyEngine& engine, const FrobeniusOrder& order) {
    const TorusDivisor zero = engine.fan().zero_divisor();
    return adjunction_crosscheck(engine, order, zero, zero);
}

/// Ext^*(F_*L, F_*M) from certified decompositions, gated on the adjunction route.
inline ExtReport ext_table(const CohomologyEngine& engine, const FrobeniusOrder& order, const TorusDivisor& l,
                           const TorusDivisor& m) {
    const Decomposition dl = frobenius_decompose(engine, l, order, Certify::Always);
    const Decomposition dm = frobenius_decompose(engine, m, order, Certify::Always);
    ExtReport report = ext_pairwise(engine, dl, dm);
    if (report.dims != ext_by_adjunction(engine, order, l, m))
        throw Error(ErrorCode::OracleMismatch, "Ext dimensions disagree with the adjunction route");
    return report;
}

inline ExtReport ext_table(const CohomologyEngine& engine, const FrobeniusOrder& order) {
    const TorusDivisor zero = engine.fan().zero_divisor();
    return ext_table(engine, order, zero, zero);
}

/// Hom dimensions between distinct summand classes.
inline std::vector<IntVec> hom_quiver(const CohomologyEngine& engine, const std::vector<DivisorClass>& classes) {
    std::vector<IntVec> quiver(classes.size(), IntVec(classes.size(), 0));
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = 0; j < classes.size(); ++j)
            if (i != j) quiver[i][j] = engine.cohomology(classes[j] - classes[i]).dims[0];
    return quiver;
}

/// Strong exceptionality of F^n_* O and containment of a full exceptional collection.
inline TiltingVerdict tilting_verdict(const CohomologyEngine& engine, const FrobeniusOrder& order,
                                      const std::vector<DivisorClass>& collection) {
    if (collection.empty()) throw Error(ErrorCode::UnknownCollection, "no exceptional collection supplied");
    TiltingVerdict v;
    v.ext = ext_table(engine, order);
    v.strong_exceptional = v.ext.vanishing_above_zero;
    const Decomposition dec = frobenius_decompose(engine, engine.fan().zero_divisor(), order, Certify::Never);
    for (const auto& [c, mult] : dec.entries) v.summand_classes.push_back(c);
    v.collection_used = collection;
    v.contains_collection = true;
    for (const auto& c : collection)
        if (dec.multiplicity(c) < 1) v.contains_collection = false;
    v.quiver = hom_quiver(engine, v.summand_classes);
    return v;
}

/// Every summand twisted by -K is ample (sufficient for vanishing when X is Fano).
inline bool fano_sufficient_check(const CohomologyEngine& engine, const FrobeniusOrder& order) {
    const Fan& fan = engine.fan();
    const Decomposition dec = frobenius_decompose(engine, fan.zero_divisor(), order, Certify::Never);
    const DivisorClass k = canonical_class(fan);
    for (const auto& [c, mult] : dec.entries)
        if (!is_ample(fan, c - k)) return false;
    return true;
}

/// Ext dims on X x Y by Kunneth convolution of the factor reports.
inline ExtReport kunneth_ext(const ExtReport& a, const ExtReport& b) {
    ExtReport r;
    r.dims.assign(a.dims.size() + b.dims.size() - 1, 0);
    for (std::size_t i = 0; i < a.dims.size(); ++i)
        for (std::size_t j = 0; j < b.dims.size(); ++j)
            r.dims[i + j] = checked::add(r.dims[i + j], checked::mul(a.dims[i], b.dims[j]));
    r.vanishing_above_zero = detail::higher_vanish(r.dims);
    return r;
}

}  // namespace frobtoric
