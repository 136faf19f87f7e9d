#pragma once

/**
 * MSTD classification and the base-m lifting family.
 *
 * A finite set is sum-dominant when |A+A| > |A-A|, the aberrant case.
 * Lifting A to its t-digit base-m family A_t raises both cardinalities
 * to the t-th power, so one sum-dominant set yields an infinite family.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "addcomb/checked.hpp"
#include "addcomb/errors.hpp"
#include "addcomb/intset.hpp"

namespace addcomb {

enum class SdClass { sum_dominant, balanced, difference_dominant };

inline const char* to_string(SdClass c) {
    switch (c) {
        case SdClass::sum_dominant:
            return "sum-dominant";
        case SdClass::balanced:
            return "balanced";
        case SdClass::difference_dominant:
            return "difference-dominant";
    }
    return "?";
}

/// Classifies by exact cardinalities. |A| <= 1 is balanced.
inline SdClass classify(const IntSet& a) {
    const size_t s = sumset(a, a).size();
    const size_t d = diffset(a, a).size();
    if (s > d) {
        return SdClass::sum_dominant;
    }
    return s == d ? SdClass::balanced : SdClass::difference_dominant;
}

struct LiftParams {
    int64_t base = 0;     // m
    uint32_t digits = 0;  // t
};

/// A_t = { sum a_i m^i : a_i in A, 0 <= i < t }: all t-digit base-m values
/// with digits drawn from A. Supported for A within the nonnegative range;
/// requires m > 2*max(A) so that |A_t (+/-) A_t| = |A (+/-) A|^t.
inline IntSet lift(const IntSet& a, const LiftParams& p, uint64_t budget_elements = 100'000'000) {
    if (p.digits < 1) {
        throw std::invalid_argument("lift: digit count must be >= 1");
    }
    if (a.empty()) {
        return IntSet{};
    }
    if (a.min() < 0) {
        throw std::invalid_argument("lift: set must be nonnegative");
    }
    if (p.base <= checked_mul(2, a.max())) {
        throw std::invalid_argument("lift: base " + std::to_string(p.base) + " must exceed 2*max(A) = " +
                                    std::to_string(2 * a.max()));
    }
    // m^(t-1) * max(A) must stay in range; checked arithmetic catches the rest.
    uint64_t expected = 1;
    for (uint32_t i = 0; i < p.digits; ++i) {
        expected = checked_mul_u64(expected, a.size());
    }
    if (expected > budget_elements) {
        throw budget_exceeded("lift: |A|^t = " + std::to_string(expected) + " elements exceeds budget " +
                              std::to_string(budget_elements));
    }

    std::vector<int64_t> vals{0};
    int64_t place = 1;
    for (uint32_t i = 0; i < p.digits; ++i) {
        std::vector<int64_t> next;
        next.reserve(vals.size() * a.size());
        for (int64_t digit : a) {
            const int64_t contribution = checked_mul(digit, place);
            for (int64_t v : vals) {
                next.push_back(checked_add(v, contribution));
            }
        }
        vals = std::move(next);
        if (i + 1 < p.digits) {
            place = checked_mul(place, p.base);
        }
    }
    IntSet result{std::move(vals)};
    if (result.size() != expected) {
        throw internal_error("lift: digit strings collided; |A_t| != |A|^t");
    }
    return result;
}

/// One term of the ratio sequence: exact integer numerator/denominator.
struct RatioEntry {
    uint64_t sum_card = 0;   // |A_t + A_t|
    uint64_t diff_card = 0;  // |A_t - A_t|

    bool operator==(const RatioEntry&) const = default;
};

/// A parametrized family of sets indexed by t >= 1. The plug-in point for
/// generators beyond the base-m digit family.
using SetFamily = std::function<IntSet(uint32_t)>;

inline SetFamily base_m_family(IntSet a, int64_t m, uint64_t budget_elements = 100'000'000) {
    return [a = std::move(a), m, budget_elements](uint32_t t) {
        return lift(a, LiftParams{m, t}, budget_elements);
    };
}

/// Exact (|F(t)+F(t)|, |F(t)-F(t)|) pairs for t = 1..t_max of any family.
inline std::vector<RatioEntry> family_ratio_sequence(const SetFamily& family, uint32_t t_max) {
    std::vector<RatioEntry> out;
    out.reserve(t_max);
    for (uint32_t t = 1; t <= t_max; ++t) {
        const IntSet ft = family(t);
        out.push_back(RatioEntry{sumset(ft, ft).size(), diffset(ft, ft).size()});
    }
    return out;
}

/// (|A_t+A_t|, |A_t-A_t|) for t = 1..t_max, computed on the lifted sets and
/// cross-checked against the power identities |A+-A|^t.
inline std::vector<RatioEntry> ratio_sequence(const IntSet& a, uint32_t t_max, int64_t m,
                                              uint64_t budget_elements = 100'000'000) {
    const std::vector<RatioEntry> out =
        family_ratio_sequence(base_m_family(a, m, budget_elements), t_max);
    const uint64_t s1 = sumset(a, a).size();
    const uint64_t d1 = diffset(a, a).size();
    uint64_t s_pow = 1;
    uint64_t d_pow = 1;
    for (uint32_t t = 1; t <= t_max; ++t) {
        s_pow = checked_mul_u64(s_pow, s1);
        d_pow = checked_mul_u64(d_pow, d1);
        if (out[t - 1].sum_card != s_pow || out[t - 1].diff_card != d_pow) {
            throw internal_error("ratio_sequence: lifted cardinalities disagree with power identity at t=" +
                                 std::to_string(t));
        }
    }
    return out;
}

}  // namespace addcomb
