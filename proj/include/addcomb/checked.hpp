#pragma once

#include <cstdint>
#include <string>

#include "addcomb/errors.hpp"

namespace addcomb {

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw arithmetic_overflow("integer overflow: " + std::to_string(a) + " + " + std::to_string(b));
    }
    return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw arithmetic_overflow("integer overflow: " + std::to_string(a) + " - " + std::to_string(b));
    }
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw arithmetic_overflow("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
    }
    return r;
}

inline int64_t checked_neg(int64_t a) { return checked_sub(0, a); }

/// a^k with overflow checking; k is small in practice (polynomial degrees).
inline int64_t checked_pow(int64_t a, uint32_t k) {
    int64_t r = 1;
    for (uint32_t i = 0; i < k; ++i) {
        r = checked_mul(r, a);
    }
    return r;
}

inline uint64_t checked_mul_u64(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw arithmetic_overflow("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
    }
    return r;
}

}  // namespace addcomb
