#pragma once

// Line bundle cohomology on products of projective spaces from the Laurent
// monomial model of Cech cohomology, and two-term complexes of such bundles
// over F_p. Main use: the incidence divisor {sum x_i y_i = 0} in P^2 x P^2.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "frobtoric/cohomology.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/fan.hpp"
#include "frobtoric/linalg.hpp"

namespace frobtoric {

/// P^{n_1} x ... x P^{n_k}.
struct MultiProjSpace {
    std::vector<int> factor_dims;

    explicit MultiProjSpace(std::vector<int> dims) : factor_dims(std::move(dims)) {
        if (factor_dims.empty()) throw Error(ErrorCode::InvalidInput, "need at least one factor");
        for (int n : factor_dims)
            if (n < 1) throw Error(ErrorCode::InvalidInput, "factor dimensions must be >= 1");
    }

    int dim() const { return std::accumulate(factor_dims.begin(), factor_dims.end(), 0); }
    std::size_t num_vars() const { return static_cast<std::size_t>(dim()) + factor_dims.size(); }

    /// First variable index of each factor.
    std::size_t offset(std::size_t j) const {
        std::size_t o = 0;
        for (std::size_t i = 0; i < j; ++i) o += static_cast<std::size_t>(factor_dims[i]) + 1;
        return o;
    }
};

/// Monomial basis of H^degree(O(d)); empty when the bundle is acyclic.
struct LaurentBasis {
    int degree = 0;
    std::vector<IntVec> monomials;
};

namespace detail {

/// Exponent vectors on `vars` variables with entries >= 0 and the given sum.
inline std::vector<IntVec> compositions(std::size_t vars, std::int64_t total) {
    std::vector<IntVec> out;
    if (total < 0) return out;
    IntVec e(vars, 0);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
        if (i + 1 == vars) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (std::int64_t k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, total);
    return out;
}

}  // namespace detail

/// Tensor product of per-factor bases: nonnegative monomials of degree d_j
/// (cohomological degree 0) or monomials with all exponents <= -1 (degree n_j).
inline LaurentBasis laurent_basis(const MultiProjSpace& space, const IntVec& d) {
    if (d.size() != space.factor_dims.size()) throw Error(ErrorCode::InvalidInput, "multidegree length differs from factor count");
    LaurentBasis basis;
    std::vector<IntVec> acc{IntVec{}};
    for (std::size_t j = 0; j < d.size(); ++j) {
        const int n = space.factor_dims[j];
        const std::size_t vars = static_cast<std::size_t>(n) + 1;
        std::vector<IntVec> factor;
        if (d[j] >= 0) {
            factor = detail::compositions(vars, d[j]);
        } else if (d[j] <= -(n + 1)) {
            // e = -1 - f with f >= 0
            factor = detail::compositions(vars, -d[j] - static_cast<std::int64_t>(vars));
            for (auto& e : factor)
                for (auto& x : e) x = -1 - x;
            basis.degree += n;
        } else {
            return LaurentBasis{0, {}};
        }
        std::vector<IntVec> next;
        next.reserve(acc.size() * factor.size());
        for (const auto& a : acc)
            for (const auto& f : factor) {
                IntVec m = a;
                m.insert(m.end(), f.begin(), f.end());
                next.push_back(std::move(m));
            }
        acc = std::move(next);
    }
    basis.monomials = std::move(acc);
    return basis;
}

/// h^i(O(d)) on a product of projective spaces, by counting basis monomials.
inline CohomologyVector line_bundle_cohomology_fp(const MultiProjSpace& space, const IntVec& d) {
    CohomologyVector h{IntVec(static_cast<std::size_t>(space.dim()) + 1, 0)};
    const LaurentBasis b = laurent_basis(space, d);
    h.dims[static_cast<std::size_t>(b.degree)] = static_cast<std::int64_t>(b.monomials.size());
    return h;
}

/// Multihomogeneous polynomial: coefficient per exponent vector.
struct Polynomial {
    std::map<IntVec, std::int64_t> terms;
};

/// sum_j x_j y_j on P^n x P^n.
inline Polynomial incidence_form(int n) {
    Polynomial w;
    const std::size_t vars = static_cast<std::size_t>(n) + 1;
    for (std::size_t j = 0; j < vars; ++j) {
        IntVec e(2 * vars, 0);
        e[j] = 1;
        e[vars + j] = 1;
        w.terms[e] = 1;
    }
    return w;
}

/// Matrix of multiplication by f from H^i(O(source)) to H^i(O(target)) over F_p,
/// discarding products outside the target basis. Rows are source monomials.
inline IntMatrix multiplication_matrix(const MultiProjSpace& space, const LaurentBasis& source,
                                       const LaurentBasis& target, const Polynomial& f, std::int64_t p) {
    std::map<IntVec, std::size_t> index;
    for (std::size_t c = 0; c < target.monomials.size(); ++c) index.emplace(target.monomials[c], c);
    IntMatrix m(source.monomials.size(), target.monomials.size());
    for (std::size_t r = 0; r < source.monomials.size(); ++r)
        for (const auto& [e, coeff] : f.terms) {
            IntVec prod = source.monomials[r];
            for (std::size_t k = 0; k < space.num_vars(); ++k) prod[k] += e[k];
            if (auto it = index.find(prod); it != index.end()) {
                std::int64_t& entry = m(r, it->second);
                entry = ((entry + coeff) % p + p) % p;
            }
        }
    return m;
}

/// A complex O(d_0) -> O(d_1) -> ... of line bundles with polynomial maps.
/// The last term sits in complex degree 0.
struct LaurentComplex {
    MultiProjSpace space;
    std::vector<IntVec> terms;
    std::vector<Polynomial> maps;

    void validate(std::int64_t p) const {
        if (terms.size() != maps.size() + 1) throw Error(ErrorCode::InvalidInput, "complex needs one map between consecutive terms");
        for (std::size_t k = 0; k < maps.size(); ++k) {
            for (const auto& [e, c] : maps[k].terms) {
                if (e.size() != space.num_vars()) throw Error(ErrorCode::InvalidInput, "map exponent length differs");
                for (std::size_t j = 0; j < space.factor_dims.size(); ++j) {
                    std::int64_t deg = 0;
                    for (std::size_t v = 0; v <= static_cast<std::size_t>(space.factor_dims[j]); ++v)
                        deg += e[space.offset(j) + v];
                    if (deg != terms[k + 1][j] - terms[k][j])
                        throw Error(ErrorCode::InvalidInput, "map degree does not match the terms");
                }
            }
        }
        // consecutive composites vanish as polynomials mod p
        for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
            std::map<IntVec, std::int64_t> prod;
            for (const auto& [e1, c1] : maps[k].terms)
                for (const auto& [e2, c2] : maps[k + 1].terms) {
                    IntVec e = e1;
                    for (std::size_t v = 0; v < e.size(); ++v) e[v] += e2[v];
                    prod[e] = ((prod[e] + c1 * c2) % p + p) % p;
                }
            for (const auto& [e, c] : prod)
                if (c != 0) throw Error(ErrorCode::InvalidInput, "consecutive maps do not compose to zero");
        }
    }

    /// Hypercohomology of a two-term complex [C^{-1} -> C^0]:
    /// H^i = coker(H^i C^{-1} -> H^i C^0) + ker(H^{i+1} C^{-1} -> H^{i+1} C^0).
    CohomologyVector hypercohomology(std::int64_t p) const {
        if (terms.size() != 2)
            throw Error(ErrorCode::InvalidInput, "hypercohomology is implemented for two-term complexes only");
        validate(p);
        const std::size_t top = static_cast<std::size_t>(space.dim());
        const LaurentBasis src = laurent_basis(space, terms[0]);
        const LaurentBasis tgt = laurent_basis(space, terms[1]);
        IntVec hs(top + 1, 0), ht(top + 1, 0), rank(top + 2, 0);
        hs[static_cast<std::size_t>(src.degree)] = static_cast<std::int64_t>(src.monomials.size());
        ht[static_cast<std::size_t>(tgt.degree)] = static_cast<std::int64_t>(tgt.monomials.size());
        if (src.degree == tgt.degree && !src.monomials.empty() && !tgt.monomials.empty())
            rank[static_cast<std::size_t>(src.degree)] = static_cast<std::int64_t>(
                rank_mod_p(multiplication_matrix(space, src, tgt, maps[0], p), p));
        CohomologyVector h{IntVec(top + 1, 0)};
        for (std::size_t i = 0; i <= top; ++i) {
            const std::int64_t coker = ht[i] - rank[i];
            const std::int64_t ker = i + 1 <= top ? hs[i + 1] - rank[i + 1] : 0;
            h.dims[i] = coker + ker;
        }
        return h;
    }
};

/// h^i(X, O_X(a, b)) for X = {sum x_j y_j = 0} in P^2 x P^2, i = 0..3.
inline CohomologyVector incidence_cohomology(std::int64_t a, std::int64_t b, std::int64_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    const LaurentComplex c{MultiProjSpace({2, 2}), {{a - 1, b - 1}, {a, b}}, {incidence_form(2)}};
    CohomologyVector h = c.hypercohomology(p);
    h.dims.pop_back();  // X has dimension 3; the degree-4 slot is always zero
    return h;
}

/// H^*(X, F^{m*}O(a, b)) = H^*(X, O(p^m a, p^m b)) is nonzero in at most one degree.
inline bool concentration_check(std::int64_t a, std::int64_t b, std::int64_t p, int m) {
    const std::int64_t q = checked::pow(p, m);
    return incidence_cohomology(checked::mul(q, a), checked::mul(q, b), p).nonzero_degrees() <= 1;
}

/// Serre duality h^i(O_X(a,b)) = h^{3-i}(O_X(-2-a,-2-b)) over a square of multidegrees.
inline bool incidence_serre_sweep(std::int64_t p, std::int64_t lo, std::int64_t hi) {
    for (std::int64_t a = lo; a <= hi; ++a)
        for (std::int64_t b = lo; b <= hi; ++b) {
            const IntVec h = incidence_cohomology(a, b, p).dims;
            const IntVec g = incidence_cohomology(-2 - a, -2 - b, p).dims;
            for (std::size_t i = 0; i < 4; ++i)
                if (h[i] != g[3 - i]) return false;
        }
    return true;
}

/// chi(O_X(a,b)) = chi(O(a,b)) - chi(O(a-1,b-1)) on P^2 x P^2.
inline bool incidence_euler_check(std::int64_t a, std::int64_t b, std::int64_t p) {
    auto chi = [](const IntVec& dims) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) s += (i % 2 ? -1 : 1) * dims[i];
        return s;
    };
    const MultiProjSpace space({2, 2});
    return chi(incidence_cohomology(a, b, p).dims) ==
           chi(line_bundle_cohomology_fp(space, {a, b}).dims) - chi(line_bundle_cohomology_fp(space, {a - 1, b - 1}).dims);
}

/// Toric model of a product of projective spaces, with multidegree -> class.
struct ToricProductModel {
    Fan fan;
    std::vector<TorusDivisor> hyperplanes;  // pullback of the hyperplane of each factor

    DivisorClass class_of_degree(const IntVec& d) const {
        TorusDivisor t = fan.zero_divisor();
        for (std::size_t j = 0; j < d.size(); ++j) t = t + d[j] * hyperplanes[j];
        return class_of(fan, t);
    }
};

inline ToricProductModel toric_model(const MultiProjSpace& space) {
    Fan acc = projective_space(space.factor_dims.front());
    std::vector<TorusDivisor> hyper{acc.ray_divisor(0)};
    for (std::size_t j = 1; j < space.factor_dims.size(); ++j) {
        const Fan next = projective_space(space.factor_dims[j]);
        const ProductFan prod = product_fan(acc, next);
        for (auto& h : hyper) h = prod.pullback_first(h);
        hyper.push_back(prod.pullback_second(next.ray_divisor(0)));
        acc = prod.fan;
    }
    return ToricProductModel{acc, hyper};
}

struct CechValidation {
    std::string space;
    std::int64_t checked = 0;
    std::int64_t mismatches = 0;
    std::optional<IntVec> first_mismatch;
};

/// Compare basis counting with the toric engine for all multidegrees in [lo, hi]^k.
inline CechValidation cech_validate(const MultiProjSpace& space, std::int64_t lo, std::int64_t hi) {
    const ToricProductModel model = toric_model(space);
    const CohomologyEngine engine(model.fan);
    CechValidation v{model.fan.name(), 0, 0, std::nullopt};
    const std::size_t k = space.factor_dims.size();
    CharacterBox{IntVec(k, lo), IntVec(k, hi)}.for_each([&](const IntVec& d) {
        ++v.checked;
        if (line_bundle_cohomology_fp(space, d) != engine.cohomology(model.class_of_degree(d))) {
            ++v.mismatches;
            if (!v.first_mismatch) v.first_mismatch = d;
        }
    });
    return v;
}

/// The standard sweep: P^2, P^1 x P^1 and P^2 x P^2 over [-6, 6]^k.
inline std::vector<CechValidation> cech_validate_standard() {
    std::vector<CechValidation> out;
    for (const auto& dims : std::vector<std::vector<int>>{{2}, {1, 1}, {2, 2}})
        out.push_back(cech_validate(MultiProjSpace(dims), -6, 6));
    return out;
}

}  // namespace frobtoric
