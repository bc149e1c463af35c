#pragma once

// Line bundle cohomology on smooth complete toric varieties.
//
// h^i(X, O(D)) = sum over characters m of dim H~^{i-1}(Delta_{S(D,m)}), where
// S(D,m) = {rho : <m, v_rho> < -a_rho} and Delta_S is the subcomplex of the
// fan's simplicial complex spanned by S. Reduced cohomology is taken over Q.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frobtoric/errors.hpp"
#include "frobtoric/fan.hpp"
#include "frobtoric/linalg.hpp"

namespace frobtoric {

/// (h^0, ..., h^d).
struct CohomologyVector {
    IntVec dims;

    friend bool operator==(const CohomologyVector&, const CohomologyVector&) = default;

    std::int64_t operator[](std::size_t i) const { return dims.at(i); }

    std::size_t nonzero_degrees() const {
        return static_cast<std::size_t>(std::count_if(dims.begin(), dims.end(), [](auto x) { return x != 0; }));
    }
};

inline std::ostream& operator<<(std::ostream& os, const CohomologyVector& h) {
    os << '(';
    for (std::size_t i = 0; i < h.dims.size(); ++i) os << (i ? "," : "") << h.dims[i];
    return os << ')';
}

/// Integer box [lo, hi] (inclusive) in the character lattice.
struct CharacterBox {
    IntVec lo;
    IntVec hi;

    std::int64_t volume() const {
        std::int64_t v = 1;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (hi[i] < lo[i]) return 0;
            v = checked::mul(v, checked::add(checked::sub(hi[i], lo[i]), 1));
        }
        return v;
    }

    template <class F>
    void for_each(F&& f) const {
        if (volume() == 0) return;
        IntVec m = lo;
        while (true) {
            f(static_cast<const IntVec&>(m));
            std::size_t k = 0;
            while (k < m.size()) {
                if (m[k] < hi[k]) {
                    ++m[k];
                    break;
                }
                m[k] = lo[k];
                ++k;
            }
            if (k == m.size()) return;
        }
    }
};

inline constexpr std::int64_t kMaxBoxVolume = 400'000'000;

/// Bounding box of all vertices of the arrangement <m, v_rho> = -a_rho,
/// widened by one in every direction. Every character with a non-acyclic
/// support complex, and every lattice point of P_D, lies inside it.
inline CharacterBox candidate_box(const Fan& fan, const TorusDivisor& d) {
    const std::size_t dim = static_cast<std::size_t>(fan.dim());
    const std::size_t n = fan.num_rays();
    CharacterBox box{IntVec(dim, 0), IntVec(dim, 0)};
    bool any = false;

    std::vector<std::size_t> pick(dim);
    for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
    while (true) {
        IntMatrix b(dim, dim);
        IntVec rhs(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) b(i, j) = fan.rays()[pick[i]][j];
            rhs[i] = -d.coeffs[pick[i]];
        }
        const std::int64_t det = determinant(b);
        if (det != 0) {
            for (std::size_t j = 0; j < dim; ++j) {
                IntMatrix bj = b;
                for (std::size_t i = 0; i < dim; ++i) bj(i, j) = rhs[i];
                const std::int64_t num = determinant(bj);
                const std::int64_t lo = floor_div(num, det), hi = ceil_div(num, det);
                if (!any) {
                    box.lo[j] = lo;
                    box.hi[j] = hi;
                } else {
                    box.lo[j] = std::min(box.lo[j], lo);
                    box.hi[j] = std::max(box.hi[j], hi);
                }
            }
            any = true;
        }
        // next combination
        std::size_t k = dim;
        while (k > 0 && pick[k - 1] == n - dim + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t i = k; i < dim; ++i) pick[i] = pick[i - 1] + 1;
    }
    for (std::size_t j = 0; j < dim; ++j) {
        box.lo[j] = checked::sub(box.lo[j], 1);
        box.hi[j] = checked::add(box.hi[j], 1);
    }
    if (box.volume() > kMaxBoxVolume) throw Error(ErrorCode::Overflow, "character box too large");
    return box;
}

/// Cohomology engine for one fan. Results are memoised per class and per
/// support set; the caches are safe for concurrent use.
class CohomologyEngine {
public:
    static constexpr int kMaxDim = 4;

    explicit CohomologyEngine(Fan fan) : fan_(std::move(fan)) {
        if (fan_.dim() > kMaxDim)
            throw Error(ErrorCode::DimensionUnsupported, "cohomology is supported for dim <= 4");
        std::vector<std::uint64_t> faces;
        for (std::uint64_t cone : fan_.cone_masks()) {
            // all subsets of the cone, including the empty face
            for (std::uint64_t sub = cone;; sub = (sub - 1) & cone) {
                faces.push_back(sub);
                if (sub == 0) break;
            }
        }
        std::sort(faces.begin(), faces.end());
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        faces_by_size_.assign(static_cast<std::size_t>(fan_.dim()) + 1, {});
        for (auto f : faces) faces_by_size_[static_cast<std::size_t>(__builtin_popcountll(f))].push_back(f);
    }

    CohomologyEngine(const CohomologyEngine&) = delete;
    CohomologyEngine& operator=(const CohomologyEngine&) = delete;

    const Fan& fan() const { return fan_; }

    /// h^i(X, O(D)) by the per-character reduced cohomology sum.
    CohomologyVector cohomology(const TorusDivisor& d) const {
        const std::size_t dim = static_cast<std::size_t>(fan_.dim());
        CohomologyVector result{IntVec(dim + 1, 0)};
        const CharacterBox box = candidate_box(fan_, d);
        const auto& rays = fan_.rays();
        box.for_each([&](const IntVec& m) {
            std::uint64_t mask = 0;
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (dot(m, rays[r]) < -d.coeffs[r]) mask |= (std::uint64_t{1} << r);
            const IntVec& red = reduced_cohomology(mask);
            // H~^{j}, j = -1..dim-1, contributes to h^{j+1}
            for (std::size_t j = 0; j <= dim; ++j) result.dims[j] += red[j];
        });
        return result;
    }

    CohomologyVector cohomology(const DivisorClass& c) const {
        {
            std::lock_guard lock(mutex_);
            if (auto it = class_cache_.find(c); it != class_cache_.end()) return it->second;
        }
        CohomologyVector h = cohomology(representative(fan_, c));
        std::lock_guard lock(mutex_);
        class_cache_.emplace(c, h);
        return h;
    }

    /// Reduced cohomology dims H~^{-1..dim-1} of the subcomplex on a ray subset.
    const IntVec& reduced_cohomology(std::uint64_t subset) const {
        {
            std::lock_guard lock(mutex_);
            if (auto it = subset_cache_.find(subset); it != subset_cache_.end()) return it->second;
        }
        IntVec dims = compute_reduced(subset);
        std::lock_guard lock(mutex_);
        return subset_cache_.emplace(subset, std::move(dims)).first->second;
    }

private:
    IntVec compute_reduced(std::uint64_t subset) const {
        const std::size_t dim = static_cast<std::size_t>(fan_.dim());
        // faces[k] = faces with k vertices inside the subset; k = 0 is the empty face
        std::vector<std::vector<std::uint64_t>> faces(dim + 1);
        for (std::size_t k = 0; k <= dim; ++k)
            for (auto f : faces_by_size_[k])
                if ((f & ~subset) == 0) faces[k].push_back(f);

        // rank of the coboundary from faces[k] to faces[k+1]
        std::vector<std::int64_t> ranks(dim + 1, 0);
        for (std::size_t k = 0; k < dim; ++k) {
            if (faces[k].empty() || faces[k + 1].empty()) continue;
            std::unordered_map<std::uint64_t, std::size_t> col;
            for (std::size_t i = 0; i < faces[k].size(); ++i) col[faces[k][i]] = i;
            IntMatrix mat(faces[k + 1].size(), faces[k].size());
            for (std::size_t row = 0; row < faces[k + 1].size(); ++row) {
                const std::uint64_t tau = faces[k + 1][row];
                int position = 0;
                for (std::uint64_t bits = tau; bits; bits &= bits - 1, ++position) {
                    const std::uint64_t v = bits & (~bits + 1);
                    mat(row, col.at(tau & ~v)) = (position % 2 == 0) ? 1 : -1;
                }
            }
            ranks[k] = static_cast<std::int64_t>(rank_rational(mat));
        }
        IntVec red(dim + 1, 0);
        for (std::size_t k = 0; k <= dim; ++k) {
            const std::int64_t outgoing = ranks[k];
            const std::int64_t incoming = k > 0 ? ranks[k - 1] : 0;
            red[k] = static_cast<std::int64_t>(faces[k].size()) - outgoing - incoming;
        }
        return red;
    }

    Fan fan_;
    std::vector<std::vector<std::uint64_t>> faces_by_size_;
    mutable std::mutex mutex_;
    mutable std::map<DivisorClass, CohomologyVector> class_cache_;
    mutable std::unordered_map<std::uint64_t, IntVec> subset_cache_;
};

inline CohomologyVector cohomology(const Fan& fan, const TorusDivisor& d) {
    return CohomologyEngine(fan).cohomology(d);
}

/// #(P_D cap M), P_D = {m : <m, v_rho> >= -a_rho for all rho}.
inline std::int64_t h0_points(const Fan& fan, const TorusDivisor& d) {
    std::int64_t count = 0;
    const auto& rays = fan.rays();
    candidate_box(fan, d).for_each([&](const IntVec& m) {
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (dot(m, rays[r]) < -d.coeffs[r]) return;
        ++count;
    });
    return count;
}

}  // namespace frobtoric
