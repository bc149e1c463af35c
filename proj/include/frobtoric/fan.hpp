#pragma once

// Smooth complete fans, torus-invariant divisors and Picard coordinates.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frobtoric/errors.hpp"
#include "frobtoric/linalg.hpp"

namespace frobtoric {

/// Integer coefficient a_rho per ray, aligned with Fan::rays().
struct TorusDivisor {
    IntVec coeffs;

    friend bool operator==(const TorusDivisor&, const TorusDivisor&) = default;
};

inline TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b) {
    TorusDivisor r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = checked::add(r.coeffs[i], b.coeffs[i]);
    return r;
}

inline TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b) {
    TorusDivisor r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = checked::sub(r.coeffs[i], b.coeffs[i]);
    return r;
}

inline TorusDivisor operator*(std::int64_t k, const TorusDivisor& a) {
    TorusDivisor r = a;
    for (auto& c : r.coeffs) c = checked::mul(k, c);
    return r;
}

/// Line bundle class in the fixed Picard basis of a fan.
struct DivisorClass {
    IntVec coords;

    auto operator<=>(const DivisorClass&) const = default;
    bool operator==(const DivisorClass&) const = default;
};

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = checked::add(r.coords[i], b.coords[i]);
    return r;
}

inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = checked::sub(r.coords[i], b.coords[i]);
    return r;
}

inline DivisorClass operator-(const DivisorClass& a) {
    DivisorClass r = a;
    for (auto& c : r.coords) c = -c;
    return r;
}

inline DivisorClass operator*(std::int64_t k, const DivisorClass& a) {
    DivisorClass r = a;
    for (auto& c : r.coords) c = checked::mul(k, c);
    return r;
}

/// Multiset of classes with multiplicities; ordered for deterministic output.
using ClassMultiset = std::map<DivisorClass, std::int64_t>;

inline void add_to(ClassMultiset& m, const DivisorClass& c, std::int64_t mult) {
    if (mult == 0) return;
    auto& slot = m[c];
    slot = checked::add(slot, mult);
    if (slot == 0) m.erase(c);
}

inline std::int64_t total_multiplicity(const ClassMultiset& m) {
    std::int64_t t = 0;
    for (const auto& [c, k] : m) t = checked::add(t, k);
    return t;
}

class Fan;
Fan build_fan(std::vector<IntVec> rays, std::vector<std::vector<int>> max_cones, std::string name);

/// A validated smooth complete fan. Immutable; construct with build_fan().
///
/// The Picard basis is fixed by a reference maximal cone (the lexicographically
/// largest sorted index set): a divisor is normalised by the principal divisor
/// that kills its coefficients on the reference rays, and the remaining
/// coefficients, in ray order, are its class coordinates.
class Fan {
public:
    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<std::vector<int>>& max_cones() const { return cones_; }
    std::size_t pic_rank() const { return complement_.size(); }

    /// Ray indices not in the reference cone; class coordinates live on these.
    const std::vector<int>& complement_rays() const { return complement_; }
    const std::vector<int>& reference_cone() const { return cones_[reference_]; }

    /// Character m with <m, v_rho> = a_rho on every ray of the reference cone.
    IntVec reference_character(const TorusDivisor& d) const {
        IntVec rhs;
        for (int r : cones_[reference_]) rhs.push_back(d.coeffs[static_cast<std::size_t>(r)]);
        return reference_inverse_.apply(rhs);
    }

    TorusDivisor zero_divisor() const { return TorusDivisor{IntVec(rays_.size(), 0)}; }

    TorusDivisor ray_divisor(std::size_t i) const {
        TorusDivisor d = zero_divisor();
        d.coeffs.at(i) = 1;
        return d;
    }

    /// K = -sum of all ray divisors.
    TorusDivisor canonical() const { return TorusDivisor{IntVec(rays_.size(), -1)}; }

    /// div(chi^m) = sum_rho <m, v_rho> D_rho.
    TorusDivisor principal(const IntVec& m) const {
        TorusDivisor d = zero_divisor();
        for (std::size_t i = 0; i < rays_.size(); ++i) d.coeffs[i] = dot(m, rays_[i]);
        return d;
    }

    /// Bitmask of each maximal cone's rays.
    const std::vector<std::uint64_t>& cone_masks() const { return cone_masks_; }

    friend bool operator==(const Fan& a, const Fan& b) { return a.rays_ == b.rays_ && a.cones_ == b.cones_; }

private:
    friend Fan build_fan(std::vector<IntVec>, std::vector<std::vector<int>>, std::string);

    std::string name_;
    int dim_ = 0;
    std::vector<IntVec> rays_;
    std::vector<std::vector<int>> cones_;
    std::vector<std::uint64_t> cone_masks_;
    std::size_t reference_ = 0;
    IntMatrix reference_inverse_;
    std::vector<int> complement_;
};

namespace detail {

inline IntMatrix cone_matrix(const std::vector<IntVec>& rays, const std::vector<int>& cone) {
    std::vector<IntVec> rows;
    for (int r : cone) rows.push_back(rays[static_cast<std::size_t>(r)]);
    return IntMatrix::from_rows(rows);
}

// B has the cone's rays as rows, so v = B^T x and x = (B^{-1})^T v.
inline bool in_cone(const IntMatrix& inverse, const IntVec& v) {
    const std::size_t d = inverse.rows();
    for (std::size_t j = 0; j < d; ++j) {
        __int128 s = 0;
        for (std::size_t i = 0; i < d; ++i) s += static_cast<__int128>(inverse(i, j)) * v[i];
        if (s < 0) return false;
    }
    return true;
}

}  // namespace detail

/// Validate rays and maximal cones and fix the Picard basis.
inline Fan build_fan(std::vector<IntVec> rays, std::vector<std::vector<int>> max_cones, std::string name = {}) {
    if (rays.empty()) throw Error(ErrorCode::InvalidInput, "fan has no rays");
    const std::size_t d = rays.front().size();
    if (d == 0) throw Error(ErrorCode::InvalidInput, "rays must have positive dimension");
    if (rays.size() > 60) throw Error(ErrorCode::InvalidInput, "too many rays");
    for (const auto& r : rays) {
        if (r.size() != d) throw Error(ErrorCode::InvalidInput, "rays have inconsistent dimension");
        if (std::abs(gcd_of(r)) != 1) throw Error(ErrorCode::NonPrimitiveRay, "ray is not primitive");
    }
    {
        std::set<IntVec> seen(rays.begin(), rays.end());
        if (seen.size() != rays.size()) throw Error(ErrorCode::InvalidInput, "duplicate rays");
    }
    if (max_cones.empty()) throw Error(ErrorCode::InvalidInput, "fan has no maximal cones");

    Fan fan;
    fan.name_ = std::move(name);
    fan.dim_ = static_cast<int>(d);

    std::vector<IntMatrix> inverses;
    for (auto& cone : max_cones) {
        if (cone.size() != d) throw Error(ErrorCode::InvalidInput, "maximal cone must have dim rays");
        for (int r : cone)
            if (r < 0 || static_cast<std::size_t>(r) >= rays.size())
                throw Error(ErrorCode::InvalidInput, "cone references a missing ray");
        std::sort(cone.begin(), cone.end());
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            throw Error(ErrorCode::InvalidInput, "cone repeats a ray");
        const IntMatrix b = detail::cone_matrix(rays, cone);
        if (std::abs(determinant(b)) != 1) throw Error(ErrorCode::NotSmooth, "cone determinant is not +-1");
        inverses.push_back(unimodular_inverse(b));
    }
    {
        std::set<std::vector<int>> seen(max_cones.begin(), max_cones.end());
        if (seen.size() != max_cones.size()) throw Error(ErrorCode::InvalidInput, "duplicate maximal cones");
    }

    // Wall condition: every facet of a maximal cone lies in exactly two of them.
    std::map<std::vector<int>, int> walls;
    for (const auto& cone : max_cones) {
        for (std::size_t skip = 0; skip < d; ++skip) {
            std::vector<int> facet;
            for (std::size_t i = 0; i < d; ++i)
                if (i != skip) facet.push_back(cone[i]);
            ++walls[facet];
        }
    }
    for (const auto& [facet, count] : walls)
        if (count != 2) throw Error(ErrorCode::BadWall, "a wall is shared by " + std::to_string(count) + " cones");

    // Completeness certificate: +-e_i and fixed pseudorandom probes must each
    // lie in some maximal cone.
    std::vector<IntVec> probes;
    for (std::size_t i = 0; i < d; ++i) {
        IntVec e(d, 0);
        e[i] = 1;
        probes.push_back(e);
        e[i] = -1;
        probes.push_back(e);
    }
    std::mt19937_64 rng(0x5eed2024ULL);
    std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
    for (int k = 0; k < 200; ++k) {
        IntVec v(d);
        for (auto& x : v) x = coord(rng);
        probes.push_back(v);
    }
    for (const auto& v : probes) {
        bool found = false;
        for (const auto& inv : inverses)
            if (detail::in_cone(inv, v)) {
                found = true;
                break;
            }
        if (!found) throw Error(ErrorCode::NotComplete, "a probe direction lies in no maximal cone");
    }

    fan.rays_ = std::move(rays);
    fan.cones_ = std::move(max_cones);
    for (const auto& cone : fan.cones_) {
        std::uint64_t mask = 0;
        for (int r : cone) mask |= (std::uint64_t{1} << r);
        fan.cone_masks_.push_back(mask);
    }
    fan.reference_ = static_cast<std::size_t>(
        std::max_element(fan.cones_.begin(), fan.cones_.end()) - fan.cones_.begin());
    fan.reference_inverse_ = inverses[fan.reference_];
    const auto& ref = fan.cones_[fan.reference_];
    for (int i = 0; i < static_cast<int>(fan.rays_.size()); ++i)
        if (!std::binary_search(ref.begin(), ref.end(), i)) fan.complement_.push_back(i);
    return fan;
}

/// Class of a torus-invariant divisor in the fan's Picard coordinates.
inline DivisorClass class_of(const Fan& fan, const TorusDivisor& d) {
    if (d.coeffs.size() != fan.num_rays()) throw Error(ErrorCode::InvalidInput, "divisor length differs from ray count");
    const IntVec m = fan.reference_character(d);
    DivisorClass c;
    for (int r : fan.complement_rays()) {
        const auto i = static_cast<std::size_t>(r);
        c.coords.push_back(checked::sub(d.coeffs[i], dot(m, fan.rays()[i])));
    }
    return c;
}

/// Canonical representative: class coordinates on the complement rays, zero on the reference cone.
inline TorusDivisor representative(const Fan& fan, const DivisorClass& c) {
    if (c.coords.size() != fan.pic_rank()) throw Error(ErrorCode::InvalidInput, "class has wrong Picard rank");
    TorusDivisor d = fan.zero_divisor();
    for (std::size_t k = 0; k < c.coords.size(); ++k)
        d.coeffs[static_cast<std::size_t>(fan.complement_rays()[k])] = c.coords[k];
    return d;
}

inline DivisorClass zero_class(const Fan& fan) { return DivisorClass{IntVec(fan.pic_rank(), 0)}; }
inline DivisorClass canonical_class(const Fan& fan) { return class_of(fan, fan.canonical()); }

/// Picard basis generators H_j (unit coordinate vectors).
inline std::vector<DivisorClass> pic_generators(const Fan& fan) {
    std::vector<DivisorClass> gens;
    for (std::size_t k = 0; k < fan.pic_rank(); ++k) {
        DivisorClass c = zero_class(fan);
        c.coords[k] = 1;
        gens.push_back(c);
    }
    return gens;
}

namespace detail {

// Convexity of the support function across every wall. For walls between
// cones sigma and sigma', m_sigma is the linear piece on sigma and rho' the ray
// of sigma' outside sigma; convexity at the wall reads
// <m_sigma, v_rho'> >= -a_rho' (strict for ampleness).
inline bool wall_convex(const Fan& fan, const TorusDivisor& d, bool strict) {
    const auto& cones = fan.max_cones();
    const std::size_t dim = static_cast<std::size_t>(fan.dim());
    for (std::size_t s = 0; s < cones.size(); ++s) {
        IntVec rhs;
        for (int r : cones[s]) rhs.push_back(-d.coeffs[static_cast<std::size_t>(r)]);
        const IntVec m = unimodular_inverse(cone_matrix(fan.rays(), cones[s])).apply(rhs);
        for (std::size_t t = 0; t < cones.size(); ++t) {
            if (t == s) continue;
            std::vector<int> shared;
            std::set_intersection(cones[s].begin(), cones[s].end(), cones[t].begin(), cones[t].end(),
                                  std::back_inserter(shared));
            if (shared.size() + 1 != dim) continue;
            for (int r : cones[t]) {
                if (std::binary_search(cones[s].begin(), cones[s].end(), r)) continue;
                const auto i = static_cast<std::size_t>(r);
                const std::int64_t lhs = dot(m, fan.rays()[i]);
                if (strict ? !(lhs > -d.coeffs[i]) : !(lhs >= -d.coeffs[i])) return false;
            }
        }
    }
    return true;
}

}  // namespace detail

inline bool is_ample(const Fan& fan, const TorusDivisor& d) { return detail::wall_convex(fan, d, true); }
inline bool is_nef(const Fan& fan, const TorusDivisor& d) { return detail::wall_convex(fan, d, false); }
inline bool is_ample(const Fan& fan, const DivisorClass& c) { return is_ample(fan, representative(fan, c)); }
inline bool is_nef(const Fan& fan, const DivisorClass& c) { return is_nef(fan, representative(fan, c)); }
inline bool is_fano(const Fan& fan) { return is_ample(fan, -1 * fan.canonical()); }

// ---------------------------------------------------------------------------
// Constructors.

/// P^n: rays e_1..e_n, -(e_1+..+e_n); cones omit one ray each.
inline Fan projective_space(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "projective space dimension must be >= 1");
    std::vector<IntVec> rays;
    for (int i = 0; i < n; ++i) {
        IntVec e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        rays.push_back(e);
    }
    rays.push_back(IntVec(static_cast<std::size_t>(n), -1));
    std::vector<std::vector<int>> cones;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> c;
        for (int i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    return build_fan(rays, cones, "P" + std::to_string(n));
}

/// Product X x Y with the rays of X first. Pullbacks are exposed.
struct ProductFan {
    Fan fan;
    std::size_t first_rays = 0;

    TorusDivisor pullback_first(const TorusDivisor& d) const {
        TorusDivisor r = fan.zero_divisor();
        std::copy(d.coeffs.begin(), d.coeffs.end(), r.coeffs.begin());
        return r;
    }
    TorusDivisor pullback_second(const TorusDivisor& d) const {
        TorusDivisor r = fan.zero_divisor();
        std::copy(d.coeffs.begin(), d.coeffs.end(), r.coeffs.begin() + static_cast<std::ptrdiff_t>(first_rays));
        return r;
    }
};

inline ProductFan product_fan(const Fan& f1, const Fan& f2, std::string name = {}) {
    const std::size_t d1 = static_cast<std::size_t>(f1.dim()), d2 = static_cast<std::size_t>(f2.dim());
    std::vector<IntVec> rays;
    for (const auto& r : f1.rays()) {
        IntVec v(d1 + d2, 0);
        std::copy(r.begin(), r.end(), v.begin());
        rays.push_back(v);
    }
    for (const auto& r : f2.rays()) {
        IntVec v(d1 + d2, 0);
        std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(d1));
        rays.push_back(v);
    }
    const int offset = static_cast<int>(f1.num_rays());
    std::vector<std::vector<int>> cones;
    for (const auto& c1 : f1.max_cones())
        for (const auto& c2 : f2.max_cones()) {
            std::vector<int> c = c1;
            for (int r : c2) c.push_back(r + offset);
            cones.push_back(c);
        }
    if (name.empty()) name = f1.name() + "x" + f2.name();
    return ProductFan{build_fan(rays, cones, name), f1.num_rays()};
}

/// Star subdivision at a cone; the new ray sum(v_rho) is appended last.
struct BlowupFan {
    Fan fan;
    std::vector<int> center;

    /// Index of the exceptional ray.
    std::size_t exceptional_ray() const { return fan.num_rays() - 1; }

    TorusDivisor pullback(const TorusDivisor& d) const {
        TorusDivisor r = fan.zero_divisor();
        std::copy(d.coeffs.begin(), d.coeffs.end(), r.coeffs.begin());
        std::int64_t s = 0;
        for (int i : center) s = checked::add(s, d.coeffs[static_cast<std::size_t>(i)]);
        r.coeffs.back() = s;
        return r;
    }

    DivisorClass exceptional_class() const { return class_of(fan, fan.ray_divisor(exceptional_ray())); }
};

inline BlowupFan blowup_fan(const Fan& fan, std::vector<int> cone, std::string name = {}) {
    std::sort(cone.begin(), cone.end());
    if (cone.size() < 2) throw Error(ErrorCode::InvalidInput, "blow-up center must be a cone of dimension >= 2");
    const std::size_t d = static_cast<std::size_t>(fan.dim());
    IntVec v(d, 0);
    for (int r : cone) {
        if (r < 0 || static_cast<std::size_t>(r) >= fan.num_rays())
            throw Error(ErrorCode::InvalidInput, "blow-up center references a missing ray");
        for (std::size_t j = 0; j < d; ++j) v[j] = checked::add(v[j], fan.rays()[static_cast<std::size_t>(r)][j]);
    }
    std::vector<IntVec> rays = fan.rays();
    rays.push_back(v);
    const int new_ray = static_cast<int>(rays.size()) - 1;
    std::vector<std::vector<int>> cones;
    bool used = false;
    for (const auto& c : fan.max_cones()) {
        if (!std::includes(c.begin(), c.end(), cone.begin(), cone.end())) {
            cones.push_back(c);
            continue;
        }
        used = true;
        for (int drop : cone) {
            std::vector<int> nc;
            for (int r : c)
                if (r != drop) nc.push_back(r);
            nc.push_back(new_ray);
            cones.push_back(nc);
        }
    }
    if (!used) throw Error(ErrorCode::InvalidInput, "blow-up center is not a cone of the fan");
    if (name.empty()) name = "Bl(" + fan.name() + ")";
    return BlowupFan{build_fan(rays, cones, name), cone};
}

/// P(O(E_0) + ... + O(E_r)) over a base, with the convention pi_* O(1) = E^*.
///
/// Rays: lifted base rays (u_rho, -sum_i (E_i - E_0)_rho e_i), then fiber rays
/// e_1..e_r, then -(e_1+..+e_r). Writing X_0 for the last fiber divisor and X_i
/// for e_i, X_i - pi^*E_i ~ X_0 - pi^*E_0 =: O(1).
struct ProjectiveBundleFan {
    Fan fan;
    std::size_t base_rays = 0;
    std::size_t rank = 0;  // r + 1
    std::vector<TorusDivisor> degrees;

    TorusDivisor pullback(const TorusDivisor& d) const {
        TorusDivisor r = fan.zero_divisor();
        std::copy(d.coeffs.begin(), d.coeffs.end(), r.coeffs.begin());
        return r;
    }

    DivisorClass pullback(const Fan& base, const DivisorClass& c) const {
        return class_of(fan, pullback(representative(base, c)));
    }

    /// Relative O(1).
    DivisorClass relative_hyperplane() const {
        const TorusDivisor x0 = fan.ray_divisor(fan.num_rays() - 1);
        return class_of(fan, x0 - pullback(degrees.front()));
    }
};

inline ProjectiveBundleFan projectivization_fan(const Fan& base, const std::vector<TorusDivisor>& degrees,
                                                std::string name = {}) {
    if (degrees.size() < 2) throw Error(ErrorCode::InvalidInput, "projectivization needs at least two summands");
    for (const auto& e : degrees)
        if (e.coeffs.size() != base.num_rays()) throw Error(ErrorCode::InvalidInput, "degree length differs from base rays");
    const std::size_t k = static_cast<std::size_t>(base.dim());
    const std::size_t r = degrees.size() - 1;
    std::vector<IntVec> rays;
    for (std::size_t rho = 0; rho < base.num_rays(); ++rho) {
        IntVec v(k + r, 0);
        std::copy(base.rays()[rho].begin(), base.rays()[rho].end(), v.begin());
        for (std::size_t i = 1; i <= r; ++i)
            v[k + i - 1] = -checked::sub(degrees[i].coeffs[rho], degrees[0].coeffs[rho]);
        rays.push_back(v);
    }
    for (std::size_t i = 0; i < r; ++i) {
        IntVec v(k + r, 0);
        v[k + i] = 1;
        rays.push_back(v);
    }
    {
        IntVec v(k + r, 0);
        for (std::size_t i = 0; i < r; ++i) v[k + i] = -1;
        rays.push_back(v);
    }
    const int fiber0 = static_cast<int>(base.num_rays());
    std::vector<std::vector<int>> cones;
    for (const auto& c : base.max_cones())
        for (std::size_t skip = 0; skip <= r; ++skip) {
            std::vector<int> nc = c;
            for (std::size_t i = 0; i <= r; ++i)
                if (i != skip) nc.push_back(fiber0 + static_cast<int>(i));
            cones.push_back(nc);
        }
    if (name.empty()) name = "P(" + std::to_string(r + 1) + ")/" + base.name();
    return ProjectiveBundleFan{build_fan(rays, cones, name), base.num_rays(), r + 1, degrees};
}

}  // namespace frobtoric
