#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace frobtoric {

enum class ErrorCode {
    InvalidInput,
    NonPrimitiveRay,
    NotSmooth,
    NotComplete,
    BadWall,
    DimensionUnsupported,
    Overflow,
    UnknownCollection,
    // The codes below signal a broken internal invariant, never bad user input.
    OracleMismatch,
    MultisetDifferenceNegative,
    InvariantViolation,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::BadWall: return "BadWall";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnknownCollection: return "UnknownCollection";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::MultisetDifferenceNegative: return "MultisetDifferenceNegative";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

inline bool is_internal(ErrorCode code) {
    return code == ErrorCode::OracleMismatch || code == ErrorCode::MultisetDifferenceNegative ||
           code == ErrorCode::InvariantViolation;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Overflow-checked int64 arithmetic. Every count in the library is an exact
// integer; silently wrapping would corrupt an identity check.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "int64 addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "int64 subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "int64 multiplication");
    return r;
}

inline std::int64_t pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = mul(r, base);
    return r;
}

inline std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorCode::Overflow, "int128 narrowing");
    return static_cast<std::int64_t>(v);
}

}  // namespace checked

// Floor and ceiling division for a positive or negative denominator.
inline std::int64_t floor_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) == (den < 0))) ++q;
    return q;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is always divisible by i at this point
        r = checked::narrow(static_cast<__int128>(r) * (n - k + i) / i);
    }
    return r;
}

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace frobtoric
