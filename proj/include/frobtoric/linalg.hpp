#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frobtoric/errors.hpp"

namespace frobtoric {

using IntVec = std::vector<std::int64_t>;

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
    __int128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
    return checked::narrow(s);
}

inline std::int64_t gcd_of(const IntVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    return g;
}

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix from_rows(const std::vector<IntVec>& rows) {
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        return m;
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(std::size_t i) const { return IntVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

    IntVec apply(const IntVec& x) const {
        IntVec y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            __int128 s = 0;
            for (std::size_t j = 0; j < cols_; ++j) s += static_cast<__int128>((*this)(i, j)) * x[j];
            y[i] = checked::narrow(s);
        }
        return y;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    IntVec data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline std::int64_t determinant(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidInput, "determinant of a non-square matrix");
    if (n == 0) return 1;
    std::vector<__int128> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r * n + k] == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = a[k * n + k];
    }
    return checked::narrow(sign * a[(n - 1) * n + (n - 1)]);
}

struct HermiteResult {
    IntMatrix form;       // H, upper echelon with positive pivots
    IntMatrix transform;  // unimodular U with U * A = H
};

/// Row-style Hermite normal form with the unimodular transform tracked.
inline HermiteResult hermite_normal_form(const IntMatrix& a) {
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(a.rows());
    const std::size_t rows = h.rows();
    const std::size_t cols = h.cols();

    auto combine = [&](IntMatrix& m, std::size_t r1, std::size_t r2, std::int64_t a11, std::int64_t a12,
                       std::int64_t a21, std::int64_t a22) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::int64_t x = m(r1, j), y = m(r2, j);
            m(r1, j) = checked::add(checked::mul(a11, x), checked::mul(a12, y));
            m(r2, j) = checked::add(checked::mul(a21, x), checked::mul(a22, y));
        }
    };

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // Euclid on column entries below the pivot row.
        for (std::size_t r = pivot_row + 1; r < rows; ++r) {
            while (h(r, col) != 0) {
                std::int64_t q = h(pivot_row, col) / h(r, col);
                combine(h, pivot_row, r, 1, -q, 0, 1);
                combine(u, pivot_row, r, 1, -q, 0, 1);
                h.swap_rows(pivot_row, r);
                u.swap_rows(pivot_row, r);
            }
        }
        if (h(pivot_row, col) == 0) continue;
        if (h(pivot_row, col) < 0) {
            for (std::size_t j = 0; j < cols; ++j) h(pivot_row, j) = -h(pivot_row, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(pivot_row, j) = -u(pivot_row, j);
        }
        const std::int64_t piv = h(pivot_row, col);
        for (std::size_t r = 0; r < pivot_row; ++r) {
            std::int64_t q = floor_div(h(r, col), piv);
            if (q == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) h(r, j) = checked::sub(h(r, j), checked::mul(q, h(pivot_row, j)));
            for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = checked::sub(u(r, j), checked::mul(q, u(pivot_row, j)));
        }
        ++pivot_row;
    }
    return {std::move(h), std::move(u)};
}

/// Inverse of a unimodular integer matrix, read off its Hermite transform.
inline IntMatrix unimodular_inverse(const IntMatrix& b) {
    auto [h, u] = hermite_normal_form(b);
    if (!(h == IntMatrix::identity(b.rows())))
        throw Error(ErrorCode::InvalidInput, "matrix is not unimodular");
    return u;
}

/// Rank over Q, fraction-free elimination on arbitrary-precision integers.
inline std::size_t rank_rational(const IntMatrix& m) {
    using boost::multiprecision::cpp_int;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<cpp_int> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j);
    std::size_t rank = 0;
    cpp_int prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
        const cpp_int p = a[rank * cols + col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const cpp_int f = a[i * cols + col];
            for (std::size_t j = col; j < cols; ++j)
                a[i * cols + j] = (a[i * cols + j] * p - f * a[rank * cols + j]) / prev;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

/// Rank over F_p by Gaussian elimination; entries are reduced mod p first.
inline std::size_t rank_mod_p(IntMatrix m, std::int64_t p) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = ((m(i, j) % p) + p) % p;

    auto inverse = [p](std::int64_t a) {
        std::int64_t r = 1, e = p - 2;
        while (e > 0) {
            if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * a % p);
            a = static_cast<std::int64_t>(static_cast<__int128>(a) * a % p);
            e >>= 1;
        }
        return r;
    };

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        m.swap_rows(piv, rank);
        const std::int64_t inv = inverse(m(rank, col));
        for (std::size_t j = col; j < cols; ++j)
            m(rank, j) = static_cast<std::int64_t>(static_cast<__int128>(m(rank, j)) * inv % p);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const std::int64_t f = m(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j) {
                std::int64_t v = (m(i, j) - static_cast<std::int64_t>(static_cast<__int128>(f) * m(rank, j) % p)) % p;
                m(i, j) = v < 0 ? v + p : v;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace frobtoric
