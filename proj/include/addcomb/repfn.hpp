#pragma once

/**
 * Representation functions of finite sets.
 *
 * r_{A,h}(n) counts nondecreasing h-tuples from A summing to n. The profile
 * over an interval is computed by convolution, which naturally counts
 * *ordered* tuples; the ordered counts are corrected with Burnside's orbit
 * formula over the cycle types of S_h:
 *
 *   multisets(n) = (1/h!) * sum over cycle types  #perms(type) * fix(type, n)
 *
 * where fix(type, n) convolves one dilated copy l*A per cycle of length l.
 * For h = 2 this is the familiar (ordered + diagonal)/2.
 */

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcomb/checked.hpp"
#include "addcomb/intset.hpp"

namespace addcomb {

/// Number of nondecreasing h-tuples from A summing to n, by direct
/// enumeration with monotone pruning.
inline uint64_t rep_count(const IntSet& a, uint32_t h, int64_t n) {
    if (h < 1) {
        throw std::invalid_argument("rep_count: order must be >= 1");
    }
    if (a.empty()) {
        return 0;
    }
    const auto& e = a.elements();
    uint64_t count = 0;
    // choose(start, left, partial): next element index >= start
    auto rec = [&](auto&& self, size_t start, uint32_t left, int64_t partial) -> void {
        if (left == 0) {
            count += partial == n ? 1 : 0;
            return;
        }
        for (size_t i = start; i < e.size(); ++i) {
            const int64_t next = checked_add(partial, e[i]);
            // smallest reachable total keeps repeating e[i]; largest repeats e.back()
            const int64_t lo = checked_add(next, checked_mul(static_cast<int64_t>(left - 1), e[i]));
            if (lo > n) {
                break;  // elements only grow from here
            }
            const int64_t hi = checked_add(next, checked_mul(static_cast<int64_t>(left - 1), e.back()));
            if (hi < n) {
                continue;
            }
            self(self, i, left - 1, next);
        }
    };
    rec(rec, 0, h, 0);
    return count;
}

struct RepProfile {
    uint32_t h = 0;
    int64_t from = 0;
    int64_t to = 0;
    std::vector<uint64_t> counts;  // counts[i] = r_{A,h}(from + i)

    bool operator==(const RepProfile&) const = default;
};

namespace detail {

inline void partitions_of(uint32_t h, std::vector<std::vector<uint32_t>>& out) {
    std::vector<uint32_t> cur;
    auto rec = [&](auto&& self, uint32_t remaining, uint32_t max_part) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, h, h);
}

inline uint64_t factorial_u64(uint32_t n) {
    uint64_t f = 1;
    for (uint32_t i = 2; i <= n; ++i) {
        f = checked_mul_u64(f, i);
    }
    return f;
}

/// Permutations of S_h with the given cycle type: h! / prod(l^m_l * m_l!).
inline uint64_t cycle_type_size(uint32_t h, const std::vector<uint32_t>& parts) {
    uint64_t denom = 1;
    std::map<uint32_t, uint32_t> mult;
    for (uint32_t p : parts) {
        ++mult[p];
    }
    for (const auto& [len, m] : mult) {
        for (uint32_t i = 0; i < m; ++i) {
            denom = checked_mul_u64(denom, len);
        }
        denom = checked_mul_u64(denom, factorial_u64(m));
    }
    return factorial_u64(h) / denom;
}

}  // namespace detail

/// Exact r_{A,h}(n) for every n in [from, to]. Convolution fast path with
/// Burnside correction; small instances are spot-checked against direct
/// enumeration before returning.
inline RepProfile rep_profile(const IntSet& a, uint32_t h, int64_t from, int64_t to,
                              uint64_t memory_budget_entries = uint64_t{1} << 26) {
    if (h < 1) {
        throw std::invalid_argument("rep_profile: order must be >= 1");
    }
    if (from > to) {
        throw std::invalid_argument("rep_profile: empty interval");
    }
    RepProfile prof;
    prof.h = h;
    prof.from = from;
    prof.to = to;
    prof.counts.assign(static_cast<size_t>(to - from + 1), 0);
    if (static_cast<uint64_t>(to - from + 1) > memory_budget_entries) {
        throw budget_exceeded("rep_profile: interval length exceeds memory budget");
    }
    if (a.empty()) {
        return prof;
    }

    const int64_t base = checked_mul(static_cast<int64_t>(h), a.min());
    const int64_t top = checked_mul(static_cast<int64_t>(h), a.max());
    const uint64_t span = static_cast<uint64_t>(top) - static_cast<uint64_t>(base) + 1;
    if (span > memory_budget_entries) {
        throw budget_exceeded("rep_profile: support span " + std::to_string(span) +
                              " exceeds memory budget " + std::to_string(memory_budget_entries));
    }

    std::vector<std::vector<uint32_t>> types;
    detail::partitions_of(h, types);
    std::vector<uint64_t> total(span, 0);
    for (const std::vector<uint32_t>& parts : types) {
        // fix(type, n): convolve one dilated copy of A per cycle. Offset 0 of
        // every partial product is sum(len * min) over the cycles consumed so
        // far, which totals h*min = `base` once all cycles are in.
        std::vector<uint64_t> fix{1};
        for (uint32_t len : parts) {
            std::vector<uint64_t> next(
                fix.size() + static_cast<size_t>(len) * static_cast<size_t>(a.max() - a.min()), 0);
            for (int64_t e : a) {
                const size_t off = static_cast<size_t>(len) * static_cast<size_t>(e - a.min());
                for (size_t i = 0; i < fix.size(); ++i) {
                    if (fix[i] != 0) {
                        next[i + off] += fix[i];
                    }
                }
            }
            fix = std::move(next);
        }
        const uint64_t weight = detail::cycle_type_size(h, parts);
        for (size_t i = 0; i < fix.size(); ++i) {
            if (fix[i] != 0) {
                total[i] += weight * fix[i];
            }
        }
    }
    const uint64_t hf = detail::factorial_u64(h);
    for (int64_t n = std::max(from, base); n <= std::min(to, top); ++n) {
        const uint64_t v = total[static_cast<size_t>(n - base)];
        if (v % hf != 0) {
            throw internal_error("rep_profile: orbit correction produced a non-integer count");
        }
        prof.counts[static_cast<size_t>(n - from)] = v / hf;
    }

    // spot-check a few entries against the independent enumeration route
    uint64_t direct_cost = 1;
    for (uint32_t i = 0; i < h && direct_cost <= 200'000; ++i) {
        direct_cost *= a.size();
    }
    if (direct_cost <= 200'000) {
        for (const int64_t n : {from, (from + to) / 2, to}) {
            if (prof.counts[static_cast<size_t>(n - from)] != rep_count(a, h, n)) {
                throw internal_error("rep_profile: convolution disagrees with enumeration at n=" +
                                     std::to_string(n));
            }
        }
    }
    return prof;
}

/// A(x) = #{a in A : |a| <= x}.
inline uint64_t counting_fn(const IntSet& a, int64_t x) {
    if (x < 0) {
        throw std::invalid_argument("counting_fn: x must be nonnegative");
    }
    const auto& e = a.elements();
    const auto lo = std::lower_bound(e.begin(), e.end(), checked_neg(x));
    const auto hi = std::upper_bound(e.begin(), e.end(), x);
    return static_cast<uint64_t>(hi - lo);
}

// ---------------------------------------------------------------------------
// Prescribed representation functions on a window
// ---------------------------------------------------------------------------

/// Target values on an integer window; nullopt is the infinity marker
/// (asymptotic, so on a finite window it means "no constraint").
struct RepTarget {
    int64_t from = 0;
    int64_t to = 0;
    std::vector<std::optional<uint64_t>> values;  // size to - from + 1

    static RepTarget make(int64_t from, int64_t to, std::vector<std::optional<uint64_t>> values) {
        if (from > to) {
            throw std::invalid_argument("RepTarget: empty window");
        }
        if (values.size() != static_cast<size_t>(to - from + 1)) {
            throw std::invalid_argument("RepTarget: values must cover the window exactly");
        }
        return RepTarget{from, to, std::move(values)};
    }
};

struct TargetCheck {
    int64_t n = 0;
    std::optional<uint64_t> expected;  // nullopt = infinity marker, skipped
    uint64_t actual = 0;
    bool pass = false;
    bool skipped = false;
};

struct VerifyReport {
    std::vector<TargetCheck> checks;
    bool pass = false;
    uint32_t skipped = 0;
};

/// Compares r_{A,h} with the target on every window point. Infinity-marked
/// points are skipped (reported with their observed value) and warned about.
inline VerifyReport verify_target(const IntSet& a, uint32_t h, const RepTarget& t) {
    VerifyReport rep;
    rep.pass = true;
    for (int64_t n = t.from; n <= t.to; ++n) {
        TargetCheck c;
        c.n = n;
        c.expected = t.values[static_cast<size_t>(n - t.from)];
        c.actual = rep_count(a, h, n);
        if (!c.expected) {
            c.skipped = true;
            c.pass = true;
            ++rep.skipped;
        } else {
            c.pass = c.actual == *c.expected;
            rep.pass = rep.pass && c.pass;
        }
        rep.checks.push_back(c);
    }
    return rep;
}

struct RealizeOptions {
    int64_t bound = 0;                  // candidate elements in [-bound, bound]
    uint64_t node_budget = 50'000'000;  // backtracking nodes
};

struct RealizeResult {
    std::optional<IntSet> set;
    bool exhaustive = false;  // bounds fully explored (empty result is a certificate)
    uint64_t nodes = 0;
};

struct RealizeAllResult {
    std::vector<IntSet> sets;  // in (cardinality, candidate-order) discovery order
    bool exhaustive = false;
    bool truncated = false;  // result cap reached; collected sets remain valid
    uint64_t nodes = 0;
};

/// Enumerates every A within [-bound, bound] realizing the target on its
/// window. Candidates are tried in increasing absolute value with ties
/// toward negatives (0, -1, 1, -2, 2, ...); cardinalities are searched in
/// increasing order. A branch is pruned as soon as any window count is
/// exceeded: counts only grow as elements are added. An exhaustive
/// single-hit run certifies the realizer is unique within the bounds.
inline RealizeAllResult realize_all_on_window(const RepTarget& t, uint32_t h,
                                              const RealizeOptions& opts, uint64_t max_results = 1000) {
    if (h != 2) {
        throw std::invalid_argument("realize_on_window: unsupported order (only h = 2)");
    }
    if (opts.bound < 0 || opts.bound > 1'000'000) {
        throw std::invalid_argument("realize_on_window: bound must be in [0, 10^6]");
    }
    if (max_results < 1) {
        throw std::invalid_argument("realize_on_window: result cap must be >= 1");
    }
    for (const auto& v : t.values) {
        if (!v) {
            throw std::invalid_argument(
                "realize_on_window: window contains the infinity marker; realization needs "
                "finite targets");
        }
    }

    std::vector<int64_t> cands{0};
    for (int64_t v = 1; v <= opts.bound; ++v) {
        cands.push_back(-v);
        cands.push_back(v);
    }
    const size_t wlen = static_cast<size_t>(t.to - t.from + 1);
    std::vector<uint64_t> counts(wlen, 0);
    std::vector<int64_t> chosen;
    RealizeAllResult res;
    bool stop = false;

    auto target_at = [&](size_t i) { return *t.values[i]; };
    // add/remove element x; add returns false when a window count overshoots
    auto apply = [&](int64_t x, int64_t delta) -> bool {
        bool ok = true;
        for (int64_t s : chosen) {
            const int64_t v = x + s;
            if (v >= t.from && v <= t.to) {
                const size_t i = static_cast<size_t>(v - t.from);
                counts[i] = static_cast<uint64_t>(static_cast<int64_t>(counts[i]) + delta);
                ok = ok && counts[i] <= target_at(i);
            }
        }
        const int64_t v = x + x;
        if (v >= t.from && v <= t.to) {
            const size_t i = static_cast<size_t>(v - t.from);
            counts[i] = static_cast<uint64_t>(static_cast<int64_t>(counts[i]) + delta);
            ok = ok && counts[i] <= target_at(i);
        }
        return ok;
    };

    auto dfs = [&](auto&& self, size_t i, size_t remaining) -> void {
        if (stop) {
            return;
        }
        ++res.nodes;
        if (res.nodes > opts.node_budget) {
            stop = true;
            return;
        }
        if (remaining == 0) {
            for (size_t w = 0; w < wlen; ++w) {
                if (counts[w] != target_at(w)) {
                    return;
                }
            }
            IntSet found(std::vector<int64_t>(chosen));
            if (!verify_target(found, 2, t).pass) {
                throw internal_error("realize_on_window: candidate failed verification");
            }
            res.sets.push_back(std::move(found));
            if (res.sets.size() >= max_results) {
                res.truncated = true;
                stop = true;
            }
            return;
        }
        if (cands.size() - i < remaining) {
            return;
        }
        // include cands[i]
        const bool ok = apply(cands[i], +1);
        chosen.push_back(cands[i]);
        if (ok) {
            self(self, i + 1, remaining - 1);
        }
        chosen.pop_back();
        apply(cands[i], -1);
        // exclude cands[i]
        if (!stop) {
            self(self, i + 1, remaining);
        }
    };

    for (size_t card = 0; card <= cands.size() && !stop; ++card) {
        dfs(dfs, 0, card);
    }
    res.exhaustive = !stop;
    return res;
}

/// First realizer in the staged order, or none. A none with `exhaustive`
/// set certifies that no realizer exists within the bounds.
inline RealizeResult realize_on_window(const RepTarget& t, uint32_t h, const RealizeOptions& opts) {
    const RealizeAllResult all = realize_all_on_window(t, h, opts, 1);
    RealizeResult res;
    res.nodes = all.nodes;
    if (!all.sets.empty()) {
        res.set = all.sets.front();
    }
    // stopping at the first hit still certifies the bounds for the found case
    res.exhaustive = all.exhaustive || all.truncated;
    return res;
}

// ---------------------------------------------------------------------------
// Density diagnostic
// ---------------------------------------------------------------------------

struct DensityFit {
    double alpha = 0.0;
    double residual = 0.0;  // sum of squared log-residuals
    uint32_t points = 0;
};

/// Least-squares slope of log A(x) against log x over the samples. A
/// finite-sample diagnostic only; says nothing about asymptotics.
inline DensityFit density_fit(const IntSet& a, std::span<const int64_t> samples) {
    std::vector<std::pair<double, double>> pts;
    int64_t prev = 0;
    for (int64_t x : samples) {
        if (x <= 0 || x <= prev) {
            throw std::invalid_argument("density_fit: sample points must be positive and increasing");
        }
        prev = x;
        const uint64_t cnt = counting_fn(a, x);
        if (cnt >= 1) {
            pts.emplace_back(std::log(static_cast<double>(x)), std::log(static_cast<double>(cnt)));
        }
    }
    if (pts.size() < 3) {
        throw std::invalid_argument("density_fit: refused, need at least 3 informative samples (x with "
                                    "A(x) >= 1); got " + std::to_string(pts.size()));
    }
    const double n = static_cast<double>(pts.size());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    DensityFit fit;
    fit.points = static_cast<uint32_t>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("density_fit: sample points are not distinct in log scale");
    }
    fit.alpha = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.alpha * sx) / n;
    for (const auto& [x, y] : pts) {
        const double r = y - fit.alpha * x - intercept;
        fit.residual += r * r;
    }
    return fit;
}

}  // namespace addcomb
