#pragma once

/**
 * Binary and n-ary linear forms over finite integer sets.
 *
 * A binary form f(x,y) = ux + vy acts on a set by f(A) = {f(a,a')}. The
 * four-step reduction (divide by gcd, swap to |u| >= |v|, flip signs)
 * produces the unique normalized representative with u >= |v| >= 1 and
 * gcd(u,v) = 1; every step preserves |f(A)| for every finite A.
 *
 * Images are computed by direct pair enumeration into a hash set: form
 * coefficients stretch diameters, which makes bitmap accumulators
 * memory-hostile here.
 */

#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <vector>

#include "addcomb/checked.hpp"
#include "addcomb/intset.hpp"

namespace addcomb {

struct BinaryForm {
    int64_t u = 0;
    int64_t v = 0;

    bool operator==(const BinaryForm&) const = default;
};

struct NormalizedBinaryForm {
    int64_t u = 0;  // u >= |v| >= 1
    int64_t v = 0;  // gcd(u, v) = 1

    bool operator==(const NormalizedBinaryForm&) const = default;
};

inline void require_nonzero(const BinaryForm& f) {
    if (f.u == 0 || f.v == 0) {
        throw std::invalid_argument("binary form: coefficients must be nonzero");
    }
}

inline NormalizedBinaryForm normalize(BinaryForm f) {
    require_nonzero(f);
    const int64_t d = std::gcd(f.u, f.v);
    int64_t u = f.u / d;
    int64_t v = f.v / d;
    auto abs64 = [](int64_t x) { return x < 0 ? -x : x; };
    if (abs64(u) < abs64(v)) {
        std::swap(u, v);
    }
    if (u < 0) {
        u = -u;
        v = -v;
    }
    return NormalizedBinaryForm{u, v};
}

/// f(A) = {u*a + v*a' : a, a' in A}.
inline IntSet eval_form(const BinaryForm& f, const IntSet& a) {
    require_nonzero(f);
    std::unordered_set<int64_t> image;
    image.reserve(a.size() * a.size());
    for (int64_t x : a) {
        const int64_t ux = checked_mul(f.u, x);
        for (int64_t y : a) {
            image.insert(checked_add(ux, checked_mul(f.v, y)));
        }
    }
    std::vector<int64_t> out(image.begin(), image.end());
    return IntSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Orosz's explicit witnesses for f = ux+vy versus g = ux-vy
// ---------------------------------------------------------------------------

struct OroszWitnesses {
    IntSet a;  // |f(A)| > |g(A)|
    IntSet b;  // |f(B)| < |g(B)|
};

/// For u > v >= 1 coprime: u >= 3 uses A = {0, u^2-v^2, u^2, u^2+uv} and
/// B = {0, u^2-uv, u^2-v^2, u^2}; u = 2 uses the special-case pair
/// A = {0,3,4,6}, B = {0,4,6,7}. Both inequalities are verified before
/// returning.
inline OroszWitnesses orosz_witnesses(int64_t u, int64_t v) {
    if (!(u > v && v >= 1)) {
        throw std::invalid_argument("orosz_witnesses: need u > v >= 1");
    }
    if (std::gcd(u, v) != 1) {
        throw std::invalid_argument("orosz_witnesses: need gcd(u, v) = 1");
    }
    OroszWitnesses w;
    if (u == 2) {
        w.a = IntSet({0, 3, 4, 6});
        w.b = IntSet({0, 4, 6, 7});
    } else {
        const int64_t uu = checked_mul(u, u);
        const int64_t vv = checked_mul(v, v);
        const int64_t uv = checked_mul(u, v);
        w.a = IntSet({0, checked_sub(uu, vv), uu, checked_add(uu, uv)});
        w.b = IntSet({0, checked_sub(uu, uv), checked_sub(uu, vv), uu});
    }
    const BinaryForm f{u, v};
    const BinaryForm g{u, -v};
    if (!(eval_form(f, w.a).size() > eval_form(g, w.a).size()) ||
        !(eval_form(f, w.b).size() < eval_form(g, w.b).size())) {
        throw internal_error("orosz_witnesses: constructed sets failed verification");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Search for the (A, B, C) triple of distinct normalized forms
// ---------------------------------------------------------------------------

struct TripleBounds {
    int64_t max_diam = 0;
    uint32_t max_card = 0;
    uint64_t budget_sets = UINT64_MAX;
};

struct TripleResult {
    std::optional<IntSet> a;  // |f(A)| > |g(A)|
    std::optional<IntSet> b;  // |f(B)| < |g(B)|
    std::optional<IntSet> c;  // |f(C)| = |g(C)|, |C| >= 2
    uint64_t examined = 0;
    bool exhaustive = false;
};

namespace detail {

inline bool is_symmetric_elems(const std::vector<int64_t>& e) {
    const int64_t z = e.front() + e.back();
    const size_t n = e.size();
    for (size_t i = 0; i < (n + 1) / 2; ++i) {
        if (e[i] != z - e[n - 1 - i]) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Scans affine-canonical sets in (diameter, cardinality, lex) order and
/// returns the first witness for each slot. When f and g normalize to the
/// sum and difference forms, symmetric sets are tried first for the C slot
/// (a symmetric set always balances sums and differences).
inline TripleResult find_triple(const BinaryForm& f, const BinaryForm& g, const TripleBounds& bounds) {
    const NormalizedBinaryForm nf = normalize(f);
    const NormalizedBinaryForm ng = normalize(g);
    if (nf == ng) {
        throw std::invalid_argument("find_triple: forms are equivalent under normalization");
    }

    TripleResult res;
    const bool sum_diff_pair = (nf == NormalizedBinaryForm{1, 1} && ng == NormalizedBinaryForm{1, -1}) ||
                               (nf == NormalizedBinaryForm{1, -1} && ng == NormalizedBinaryForm{1, 1});
    if (sum_diff_pair) {
        for_each_affine_canonical(bounds.max_diam, bounds.max_card, [&](const std::vector<int64_t>& elems) {
            if (res.examined >= bounds.budget_sets) {
                return false;
            }
            if (!detail::is_symmetric_elems(elems)) {
                return true;
            }
            ++res.examined;
            IntSet candidate = IntSet::from_sorted(std::vector<int64_t>(elems));
            if (eval_form(f, candidate).size() == eval_form(g, candidate).size()) {
                res.c = std::move(candidate);
                return false;
            }
            return true;
        });
    }

    bool budget_hit = false;
    for_each_affine_canonical(bounds.max_diam, bounds.max_card, [&](const std::vector<int64_t>& elems) {
        if (res.examined >= bounds.budget_sets) {
            budget_hit = true;
            return false;
        }
        ++res.examined;
        IntSet candidate = IntSet::from_sorted(std::vector<int64_t>(elems));
        const size_t nf_card = eval_form(f, candidate).size();
        const size_t ng_card = eval_form(g, candidate).size();
        if (nf_card > ng_card && !res.a) {
            res.a = candidate;
        } else if (nf_card < ng_card && !res.b) {
            res.b = candidate;
        } else if (nf_card == ng_card && !res.c) {
            res.c = candidate;
        }
        return !(res.a && res.b && res.c);
    });
    res.exhaustive = !budget_hit;

    // Re-verify every slot through eval_form before handing it out.
    auto check = [&](const std::optional<IntSet>& s, int dir) {
        if (!s) {
            return;
        }
        const auto fc = eval_form(f, *s).size();
        const auto gc = eval_form(g, *s).size();
        const bool ok = dir < 0 ? fc < gc : (dir > 0 ? fc > gc : fc == gc && s->size() >= 2);
        if (!ok) {
            throw internal_error("find_triple: witness failed re-verification");
        }
    };
    check(res.a, 1);
    check(res.b, -1);
    check(res.c, 0);
    return res;
}

// ---------------------------------------------------------------------------
// n-ary forms
// ---------------------------------------------------------------------------

struct NaryForm {
    std::vector<int64_t> coeffs;  // n >= 2, all nonzero
};

/// {u_1 a_1 + ... + u_n a_n : a_i in A}, by direct |A|^n enumeration.
inline IntSet eval_nary(const NaryForm& f, const IntSet& a, uint64_t budget_tuples = 100'000'000) {
    if (f.coeffs.size() < 2) {
        throw std::invalid_argument("n-ary form: need at least 2 coefficients");
    }
    for (int64_t c : f.coeffs) {
        if (c == 0) {
            throw std::invalid_argument("n-ary form: coefficients must be nonzero");
        }
    }
    if (a.empty()) {
        return IntSet{};
    }
    uint64_t tuples = 1;
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        tuples = checked_mul_u64(tuples, a.size());
        if (tuples > budget_tuples) {
            throw budget_exceeded("eval_nary: |A|^n = " + std::to_string(a.size()) + "^" +
                                  std::to_string(f.coeffs.size()) + " tuples exceeds budget " +
                                  std::to_string(budget_tuples));
        }
    }

    const size_t n = f.coeffs.size();
    const auto& elems = a.elements();
    std::vector<size_t> idx(n, 0);
    std::unordered_set<int64_t> image;
    while (true) {
        int64_t val = 0;
        for (size_t i = 0; i < n; ++i) {
            val = checked_add(val, checked_mul(f.coeffs[i], elems[idx[i]]));
        }
        image.insert(val);
        size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < elems.size()) {
                break;
            }
            idx[pos] = 0;
            if (pos == 0) {
                std::vector<int64_t> out(image.begin(), image.end());
                return IntSet(std::move(out));
            }
        }
    }
}

}  // namespace addcomb
