#pragma once

/**
 * Exact arithmetic on finite sets of 64-bit integers.
 *
 * IntSet is the universal operand of the toolkit: a strictly increasing
 * sequence of int64 elements. Sumsets and difference sets have two routes
 * that must agree everywhere:
 *
 *   - pairwise: direct O(|A|*|B|) enumeration, sort + unique. The oracle.
 *   - bitmap:   shift-or convolution on an offset bitset over
 *               [min(A)+min(B), max(A)+max(B)], used automatically when
 *               that span is small enough. The fast path for census loops.
 *
 * All arithmetic is overflow-checked; no operation ever wraps.
 */

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/checked.hpp"
#include "addcomb/errors.hpp"

namespace addcomb {

/// Span (in bits) below which sumset/diffset switch to the bitmap kernel.
inline constexpr uint64_t kBitmapSpanLimit = uint64_t{1} << 20;

class IntSet {
   public:
    IntSet() = default;

    /// Builds a set from arbitrary values; sorts and removes duplicates.
    explicit IntSet(std::vector<int64_t> values) : elems_(std::move(values)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    /// Adopts a strictly increasing sequence, rejecting anything else.
    static IntSet from_sorted(std::vector<int64_t> values) {
        for (size_t i = 1; i < values.size(); ++i) {
            if (values[i - 1] >= values[i]) {
                throw std::invalid_argument("IntSet::from_sorted: sequence not strictly increasing at index " +
                                            std::to_string(i));
            }
        }
        IntSet s;
        s.elems_ = std::move(values);
        return s;
    }

    [[nodiscard]] bool empty() const noexcept { return elems_.empty(); }
    [[nodiscard]] size_t size() const noexcept { return elems_.size(); }

    [[nodiscard]] int64_t min() const {
        require_nonempty("min");
        return elems_.front();
    }
    [[nodiscard]] int64_t max() const {
        require_nonempty("max");
        return elems_.back();
    }
    [[nodiscard]] int64_t diameter() const { return checked_sub(max(), min()); }

    [[nodiscard]] bool contains(int64_t x) const {
        return std::binary_search(elems_.begin(), elems_.end(), x);
    }

    [[nodiscard]] const std::vector<int64_t>& elements() const noexcept { return elems_; }

    [[nodiscard]] auto begin() const noexcept { return elems_.begin(); }
    [[nodiscard]] auto end() const noexcept { return elems_.end(); }

    bool operator==(const IntSet&) const = default;
    auto operator<=>(const IntSet&) const = default;  // lexicographic on elements

   private:
    void require_nonempty(const char* what) const {
        if (elems_.empty()) {
            throw std::invalid_argument(std::string("IntSet::") + what + ": empty set");
        }
    }

    std::vector<int64_t> elems_;
};

// ---------------------------------------------------------------------------
// Affine maps
// ---------------------------------------------------------------------------

/// {x + a : a in A}. Overflow names the offending element.
inline IntSet translate(const IntSet& a, int64_t x) {
    std::vector<int64_t> out;
    out.reserve(a.size());
    for (int64_t e : a) {
        int64_t r;
        if (__builtin_add_overflow(x, e, &r)) {
            throw arithmetic_overflow("translate: " + std::to_string(x) + " + " + std::to_string(e) +
                                      " overflows int64");
        }
        out.push_back(r);
    }
    return IntSet::from_sorted(std::move(out));
}

/// {y * a : a in A}, y != 0. Negative y reverses the element order.
inline IntSet dilate(const IntSet& a, int64_t y) {
    if (y == 0) {
        throw std::invalid_argument("dilate: dilation factor must be nonzero");
    }
    std::vector<int64_t> out;
    out.reserve(a.size());
    for (int64_t e : a) {
        int64_t r;
        if (__builtin_mul_overflow(y, e, &r)) {
            throw arithmetic_overflow("dilate: " + std::to_string(y) + " * " + std::to_string(e) +
                                      " overflows int64");
        }
        out.push_back(r);
    }
    if (y < 0) {
        std::reverse(out.begin(), out.end());
    }
    return IntSet::from_sorted(std::move(out));
}

inline IntSet negate(const IntSet& a) { return dilate(a, -1); }

// ---------------------------------------------------------------------------
// Sumsets and difference sets
// ---------------------------------------------------------------------------

/// Pair-enumeration route: every a+b, sorted, deduplicated.
inline IntSet sumset_pairwise(const IntSet& a, const IntSet& b) {
    std::vector<int64_t> out;
    out.reserve(a.size() * b.size());
    for (int64_t x : a) {
        for (int64_t y : b) {
            out.push_back(checked_add(x, y));
        }
    }
    return IntSet(std::move(out));
}

inline IntSet diffset_pairwise(const IntSet& a, const IntSet& b) {
    std::vector<int64_t> out;
    out.reserve(a.size() * b.size());
    for (int64_t x : a) {
        for (int64_t y : b) {
            out.push_back(checked_sub(x, y));
        }
    }
    return IntSet(std::move(out));
}

namespace detail {

/// Unsigned distance between in-range int64 values; avoids signed overflow.
inline uint64_t udist(int64_t hi, int64_t lo) {
    return static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
}

/// Offset bitset of a relative to a.min(); bit i = (min+i) present.
inline std::vector<uint64_t> offset_bits(const IntSet& a) {
    const int64_t base = a.min();
    const uint64_t span = udist(a.max(), base) + 1;
    std::vector<uint64_t> bits((span + 63) / 64, 0);
    for (int64_t e : a) {
        const uint64_t off = udist(e, base);
        bits[off >> 6] |= uint64_t{1} << (off & 63);
    }
    return bits;
}

/// acc |= src << shift, where acc is wide enough by construction.
inline void or_shifted(std::vector<uint64_t>& acc, const std::vector<uint64_t>& src, uint64_t shift) {
    const size_t word = shift >> 6;
    const unsigned bit = static_cast<unsigned>(shift & 63);
    if (bit == 0) {
        for (size_t i = 0; i < src.size(); ++i) {
            acc[i + word] |= src[i];
        }
        return;
    }
    uint64_t carry = 0;
    for (size_t i = 0; i < src.size(); ++i) {
        acc[i + word] |= (src[i] << bit) | carry;
        carry = src[i] >> (64 - bit);
    }
    if (carry != 0) {
        acc[src.size() + word] |= carry;
    }
}

}  // namespace detail

/// Shift-or convolution route. Requires nonempty operands; the caller is
/// responsible for keeping the output span within memory reason.
inline IntSet sumset_bitmap(const IntSet& a, const IntSet& b) {
    const int64_t base = checked_add(a.min(), b.min());
    const int64_t top = checked_add(a.max(), b.max());
    const uint64_t span = detail::udist(top, base) + 1;
    std::vector<uint64_t> acc(span / 64 + 2, 0);

    // Shift the bitmap of the larger set by each element of the smaller.
    const IntSet& big = a.size() >= b.size() ? a : b;
    const IntSet& small = a.size() >= b.size() ? b : a;
    const std::vector<uint64_t> bits = detail::offset_bits(big);
    for (int64_t e : small) {
        detail::or_shifted(acc, bits, detail::udist(e, small.min()));
    }

    std::vector<int64_t> out;
    for (size_t w = 0; w < acc.size(); ++w) {
        uint64_t word = acc[w];
        while (word != 0) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            out.push_back(base + static_cast<int64_t>((w << 6) + bit));
            word &= word - 1;
        }
    }
    return IntSet::from_sorted(std::move(out));
}

inline IntSet diffset_bitmap(const IntSet& a, const IntSet& b) { return sumset_bitmap(a, negate(b)); }

/// {a + b : a in A, b in B}; empty if either operand is empty.
/// Picks the bitmap kernel when the result span is at most `span_limit` bits.
inline IntSet sumset(const IntSet& a, const IntSet& b, uint64_t span_limit = kBitmapSpanLimit) {
    if (a.empty() || b.empty()) {
        return IntSet{};
    }
    const int64_t base = checked_add(a.min(), b.min());
    const int64_t top = checked_add(a.max(), b.max());
    if (detail::udist(top, base) < span_limit) {
        return sumset_bitmap(a, b);
    }
    return sumset_pairwise(a, b);
}

/// {a - b : a in A, b in B}; diffset(A, A) is symmetric about 0.
inline IntSet diffset(const IntSet& a, const IntSet& b, uint64_t span_limit = kBitmapSpanLimit) {
    if (a.empty() || b.empty()) {
        return IntSet{};
    }
    return sumset(a, negate(b), span_limit);
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

/// The unique z with A = z - A, if any. For a symmetric set z = min + max.
inline std::optional<int64_t> symmetry_center(const IntSet& a) {
    if (a.empty()) {
        throw std::invalid_argument("symmetry_center: empty set");
    }
    const int64_t z = checked_add(a.min(), a.max());
    const auto& e = a.elements();
    const size_t n = e.size();
    for (size_t i = 0; i < (n + 1) / 2; ++i) {
        if (e[i] != z - e[n - 1 - i]) {
            return std::nullopt;
        }
    }
    return z;
}

/// The affine-canonical representative (A - min A) / gcd{a - min A}:
/// min 0, element gcd 1. Sum/difference cardinalities are unchanged.
inline IntSet affine_canonical(const IntSet& a) {
    if (a.size() < 2) {
        throw std::invalid_argument("affine_canonical: need at least 2 elements");
    }
    const int64_t m = a.min();
    int64_t g = 0;
    for (int64_t e : a) {
        g = std::gcd(g, checked_sub(e, m));
    }
    std::vector<int64_t> out;
    out.reserve(a.size());
    for (int64_t e : a) {
        out.push_back((e - m) / g);
    }
    return IntSet::from_sorted(std::move(out));
}

struct SetStats {
    uint64_t cardinality = 0;
    uint64_t sum_card = 0;
    uint64_t diff_card = 0;
    int64_t min = 0;
    int64_t max = 0;
    int64_t diameter = 0;

    bool operator==(const SetStats&) const = default;
};

inline SetStats set_stats(const IntSet& a) {
    SetStats s;
    s.cardinality = a.size();
    s.sum_card = sumset(a, a).size();
    s.diff_card = diffset(a, a).size();
    if (!a.empty()) {
        s.min = a.min();
        s.max = a.max();
        s.diameter = a.diameter();
    }
    return s;
}

// ---------------------------------------------------------------------------
// Canonical-set enumeration
// ---------------------------------------------------------------------------

/// Visits every affine-canonical set (min 0, element gcd 1, |S| >= 2) with
/// diameter <= max_diam and cardinality <= max_card, ordered by diameter,
/// then cardinality, then lexicographic element sequence. The visitor gets
/// a reused buffer; return false to stop early.
inline void for_each_affine_canonical(int64_t max_diam, uint32_t max_card,
                                      const std::function<bool(const std::vector<int64_t>&)>& visit) {
    if (max_card < 2) {
        return;
    }
    std::vector<int64_t> set;
    for (int64_t d = 1; d <= max_diam; ++d) {
        const uint32_t top_card = static_cast<uint32_t>(std::min<int64_t>(max_card, d + 1));
        for (uint32_t c = 2; c <= top_card; ++c) {
            // interior: c-2 strictly increasing values drawn from [1, d-1]
            std::vector<int64_t> interior(c - 2);
            std::iota(interior.begin(), interior.end(), int64_t{1});
            while (true) {
                set.clear();
                set.push_back(0);
                set.insert(set.end(), interior.begin(), interior.end());
                set.push_back(d);
                int64_t g = 0;
                for (int64_t e : set) {
                    g = std::gcd(g, e);
                }
                if (g == 1 && !visit(set)) {
                    return;
                }
                // advance interior to the next combination from [1, d-1]
                bool advanced = false;
                for (size_t i = interior.size(); i-- > 0;) {
                    if (interior[i] < d - 1 - static_cast<int64_t>(interior.size() - 1 - i)) {
                        ++interior[i];
                        for (size_t j = i + 1; j < interior.size(); ++j) {
                            interior[j] = interior[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) {
                    break;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Set literal text format: {0,2,3,4,7}
// ---------------------------------------------------------------------------

/// Parses a brace-delimited comma-separated literal. Whitespace-insensitive;
/// duplicates are rejected.
inline IntSet parse_set_literal(std::string_view text) {
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
    };
    skip_ws();
    if (i >= text.size() || text[i] != '{') {
        throw parse_error("set literal: expected '{'");
    }
    ++i;
    std::vector<int64_t> vals;
    skip_ws();
    if (i < text.size() && text[i] == '}') {
        ++i;
    } else {
        while (true) {
            skip_ws();
            const size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
                ++i;
            }
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) {
                throw parse_error("set literal: expected integer at offset " + std::to_string(start));
            }
            int64_t v = 0;
            try {
                v = std::stoll(std::string(text.substr(start, i - start)));
            } catch (const std::out_of_range&) {
                throw parse_error("set literal: integer out of 64-bit range");
            }
            vals.push_back(v);
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == '}') {
                ++i;
                break;
            }
            throw parse_error("set literal: expected ',' or '}'");
        }
    }
    skip_ws();
    if (i != text.size()) {
        throw parse_error("set literal: trailing characters");
    }
    std::vector<int64_t> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw parse_error("set literal: duplicate element");
    }
    return IntSet(std::move(sorted));
}

inline std::string to_set_literal(const IntSet& a) {
    std::string out = "{";
    bool first = true;
    for (int64_t e : a) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(e);
        first = false;
    }
    out += '}';
    return out;
}

}  // namespace addcomb
