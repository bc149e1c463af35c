#pragma once

// Splitting of F^n_* O(D) into line bundles on a smooth toric variety.
//
// For each residue u of M / qM the summand is O(D_u) with
// (D_u)_rho = floor((a_rho + <u, v_rho>) / q). Results are certified by the
// projection formula sum_u h^i(D_u + E) = h^i(D + qE) for test divisors E.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "frobtoric/cohomology.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/fan.hpp"

namespace frobtoric {

/// p prime, n >= 0, q = p^n.
class FrobeniusOrder {
public:
    FrobeniusOrder(std::int64_t p, int n) : p_(p), n_(n) {
        if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
        if (n < 0) throw Error(ErrorCode::InvalidInput, "n must be non-negative");
        q_ = checked::pow(p, n);
    }

    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    std::int64_t q() const { return q_; }

private:
    std::int64_t p_;
    int n_;
    std::int64_t q_;
};

/// Residue u in [0, q)^d and the divisor D_u it produced.
struct Witness {
    IntVec residue;
    TorusDivisor divisor;
};

struct Decomposition {
    std::int64_t q = 1;
    ClassMultiset entries;
    std::map<DivisorClass, Witness> witnesses;
    bool certified = false;

    std::int64_t rank() const { return total_multiplicity(entries); }

    std::int64_t multiplicity(const DivisorClass& c) const {
        auto it = entries.find(c);
        return it == entries.end() ? 0 : it->second;
    }
};

/// Summand divisor for one residue u.
inline TorusDivisor summand_divisor(const Fan& fan, const TorusDivisor& d, const IntVec& u, std::int64_t q) {
    TorusDivisor du = fan.zero_divisor();
    for (std::size_t r = 0; r < fan.num_rays(); ++r)
        du.coeffs[r] = floor_div(checked::add(d.coeffs[r], dot(u, fan.rays()[r])), q);
    return du;
}

/// Decomposition over an arbitrary complete residue system {basis * w + shift : w in [0,q)^d}
/// where basis is unimodular. Used directly only to cross-check representative independence.
inline Decomposition decompose_with_residues(const Fan& fan, const TorusDivisor& d, std::int64_t q,
                                             const IntMatrix& basis, const IntVec& shift) {
    if (q < 1) throw Error(ErrorCode::InvalidInput, "q must be positive");
    if (d.coeffs.size() != fan.num_rays()) throw Error(ErrorCode::InvalidInput, "divisor length differs from ray count");
    const std::size_t dim = static_cast<std::size_t>(fan.dim());
    Decomposition dec;
    dec.q = q;
    CharacterBox box{IntVec(dim, 0), IntVec(dim, q - 1)};
    box.for_each([&](const IntVec& w) {
        IntVec u = basis.apply(w);
        for (std::size_t i = 0; i < dim; ++i) u[i] = checked::add(u[i], shift[i]);
        TorusDivisor du = summand_divisor(fan, d, u, q);
        DivisorClass c = class_of(fan, du);
        add_to(dec.entries, c, 1);
        dec.witnesses.try_emplace(c, Witness{u, du});
    });
    return dec;
}


inline std::vector<TorusDivisor> default_test_divisors(const Fan& fan) {
    std::vector<TorusDivisor> tests{fan.zero_divisor()};
    for (const auto& g : pic_generators(fan)) {
        tests.push_back(representative(fan, g));
        tests.push_back(representative(fan, -g));
    }
    tests.push_back(fan.canonical());
    tests.push_back(-1 * fan.canonical());
    return tests;
}

/// For every test divisor E and degree i: sum_u mult_u h^i(D_u + E) == h^i(D + qE).
inline bool verify_projection_formula(const CohomologyEngine& engine, const TorusDivisor& d, const Decomposition& dec,
                                      const std::vector<TorusDivisor>& test_divisors) {
    const Fan& fan = engine.fan();
    const DivisorClass base = class_of(fan, d);
    for (const auto& e : test_divisors) {
        const DivisorClass ec = class_of(fan, e);
        const CohomologyVector target = engine.cohomology(base + dec.q * ec);
        IntVec sum(target.dims.size(), 0);
        for (const auto& [c, mult] : dec.entries) {
            const CohomologyVector h = engine.cohomology(c + ec);
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = checked::add(sum[i], checked::mul(mult, h.dims[i]));
        }
        if (sum != target.dims) return false;
    }
    return true;
}

inline bool verify_projection_formula(const CohomologyEngine& engine, const TorusDivisor& d, const Decomposition& dec) {
    return verify_projection_formula(engine, d, dec, default_test_divisors(engine.fan()));
}

enum class Certify { Auto, Always, Never };

/// Residue splitting of F^n_* O(D) on residues [0, q)^d.
///
/// Certification runs when asked for, and always in debug builds; a failed
/// certification throws OracleMismatch.
inline Decomposition frobenius_decompose(const CohomologyEngine& engine, const TorusDivisor& d,
                                         const FrobeniusOrder& order, Certify certify = Certify::Auto) {
    const Fan& fan = engine.fan();
    const std::size_t dim = static_cast<std::size_t>(fan.dim());
    Decomposition dec = decompose_with_residues(fan, d, order.q(), IntMatrix::identity(dim), IntVec(dim, 0));
    if (dec.rank() != checked::pow(order.q(), static_cast<int>(dim)))
        throw Error(ErrorCode::OracleMismatch, "total multiplicity differs from q^d");
#ifndef NDEBUG
    if (certify == Certify::Auto) certify = Certify::Always;
#endif
    if (certify == Certify::Always) {
        if (!verify_projection_formula(engine, d, dec))
            throw Error(ErrorCode::OracleMismatch, "projection formula certification failed");
        dec.certified = true;
    }
    return dec;
}

inline DivisorClass det_class(const Fan& fan, const Decomposition& dec) {
    DivisorClass det = zero_class(fan);
    for (const auto& [c, mult] : dec.entries) det = det + mult * c;
    return det;
}

/// Pushforward of every class in a multiset (with multiplicities), merged.
inline ClassMultiset pushforward_multiset(const CohomologyEngine& engine, const ClassMultiset& classes,
                                          const FrobeniusOrder& order) {
    ClassMultiset out;
    for (const auto& [c, mult] : classes) {
        const Decomposition dec =
            frobenius_decompose(engine, representative(engine.fan(), c), order, Certify::Never);
        for (const auto& [s, k] : dec.entries) add_to(out, s, checked::mul(mult, k));
    }
    return out;
}

/// n successive pushforwards with q = p agree with one pushforward with q = p^n.
inline bool iterate_check(const CohomologyEngine& engine, const TorusDivisor& d, std::int64_t p, int n) {
    const Fan& fan = engine.fan();
    ClassMultiset stepwise{{class_of(fan, d), 1}};
    const FrobeniusOrder single(p, 1);
    for (int i = 0; i < n; ++i) stepwise = pushforward_multiset(engine, stepwise, single);
    const Decomposition direct = frobenius_decompose(engine, d, FrobeniusOrder(p, n), Certify::Never);
    return stepwise == direct.entries;
}

}  // namespace frobtoric
