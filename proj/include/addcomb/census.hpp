#pragma once

/**
 * Exhaustive census of subsets of [0, n-1] by sum/difference class.
 *
 * Subsets are encoded as n-bit masks. For n <= 32 both the sumset and the
 * shifted difference set of a subset fit in one 64-bit word:
 *
 *   sums  |= mask << b          for each element b   (bit a+b set)
 *   diffs |= mask << (n-1-b)    for each element b   (bit a-b+(n-1) set)
 *
 * so classifying a mask is a handful of shift-or operations plus two
 * popcounts. This kernel is the census inner loop; the pair-enumeration
 * route through IntSet is the independent cross-check.
 *
 * Work is divided statelessly: shard s of S owns the masks congruent to
 * s mod S. Each shard accumulates private tallies which are merged by
 * addition at the end, so results are identical for every shard count.
 */

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "addcomb/intset.hpp"
#include "addcomb/mstd.hpp"

namespace addcomb {

/// Fast one-word classifier for a subset mask of [0, n-1]. Requires n <= 32.
inline SdClass classify_mask(uint32_t n, uint64_t mask) {
    uint64_t sums = 0;
    uint64_t diffs = 0;
    for (uint64_t m = mask; m != 0; m &= m - 1) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(m));
        sums |= mask << b;
        diffs |= mask << (n - 1 - b);
    }
    const int s = std::popcount(sums);
    const int d = std::popcount(diffs);
    if (s > d) {
        return SdClass::sum_dominant;
    }
    return s == d ? SdClass::balanced : SdClass::difference_dominant;
}

inline IntSet mask_to_set(uint64_t mask) {
    std::vector<int64_t> elems;
    for (uint64_t m = mask; m != 0; m &= m - 1) {
        elems.push_back(std::countr_zero(m));
    }
    return IntSet::from_sorted(std::move(elems));
}

/// Independent route: classify through pair enumeration on the element list.
inline SdClass classify_mask_pairwise(uint64_t mask) {
    const IntSet a = mask_to_set(mask);
    const size_t s = sumset_pairwise(a, a).size();
    const size_t d = diffset_pairwise(a, a).size();
    if (s > d) {
        return SdClass::sum_dominant;
    }
    return s == d ? SdClass::balanced : SdClass::difference_dominant;
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

struct CensusOptions {
    uint32_t n = 0;
    std::optional<uint32_t> k_filter;  // tally only subsets of this cardinality
    uint32_t shards = 1;
    std::optional<uint32_t> shard_index;  // run a single shard (partial result)
    uint64_t witness_cap = 10'000;
    uint32_t max_n = 28;
    uint64_t checkpoint_interval = uint64_t{1} << 30;  // masks per shard between saves
    std::optional<uint64_t> limit_masks;               // per shard, this invocation
    uint32_t threads = 0;                              // 0 = hardware default
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct PerKRow {
    uint64_t total = 0;
    uint64_t sum_dominant = 0;
    uint64_t balanced = 0;
    uint64_t difference_dominant = 0;

    bool operator==(const PerKRow&) const = default;
};

struct CensusResult {
    uint32_t n = 0;
    std::optional<uint32_t> k_filter;
    std::vector<PerKRow> per_k;           // index k = 0..n
    uint64_t f_n = 0;                     // total sum-dominant count
    std::vector<uint64_t> witness_masks;  // ascending, capped
    bool witnesses_truncated = false;
    uint64_t witness_cap = 0;
    uint64_t masks_processed = 0;
    uint32_t shards = 1;
    bool partial = false;  // true when only one shard of many was run
    double elapsed_ms = 0.0;
};

struct CensusShardState {
    uint64_t next_mask = 0;
    bool done = false;
    std::vector<uint64_t> sum_dominant;  // per k
    std::vector<uint64_t> balanced;
    std::vector<uint64_t> difference_dominant;
    std::vector<uint64_t> witness_masks;
    uint64_t truncated_witnesses = 0;  // sum-dominant hits beyond the cap
};

struct CensusCheckpoint {
    uint32_t n = 0;
    std::optional<uint32_t> k_filter;
    uint32_t shards = 1;
    uint64_t witness_cap = 0;
    std::vector<CensusShardState> states;
};

struct CensusOutcome {
    bool complete = false;
    CensusResult result;           // valid only when complete
    uint64_t masks_processed = 0;  // masks handled in this invocation
};

using CensusCheckpointSaver = std::function<void(const CensusCheckpoint&)>;

namespace detail {

inline void census_scan_chunk(uint32_t n, const std::optional<uint32_t>& k_filter, uint64_t witness_cap,
                              uint32_t stride, uint64_t chunk, CensusShardState& st, uint64_t& processed,
                              const std::optional<std::chrono::steady_clock::time_point>& deadline) {
    const uint64_t end = uint64_t{1} << n;
    uint64_t handled = 0;
    uint64_t mask = st.next_mask;
    while (mask < end && handled < chunk) {
        const uint32_t k = static_cast<uint32_t>(std::popcount(mask));
        if (!k_filter || *k_filter == k) {
            SdClass cls;
            if (k < 2) {
                cls = SdClass::balanced;
            } else {
                cls = classify_mask(n, mask);
            }
            switch (cls) {
                case SdClass::sum_dominant:
                    ++st.sum_dominant[k];
                    if (st.witness_masks.size() < witness_cap) {
                        st.witness_masks.push_back(mask);
                    } else {
                        ++st.truncated_witnesses;
                    }
                    break;
                case SdClass::balanced:
                    ++st.balanced[k];
                    break;
                case SdClass::difference_dominant:
                    ++st.difference_dominant[k];
                    break;
            }
        }
        ++handled;
        mask += stride;
        if (deadline && (handled & 0xFFFF) == 0 && std::chrono::steady_clock::now() >= *deadline) {
            break;
        }
    }
    st.next_mask = mask;
    st.done = mask >= end;
    processed += handled;
}

}  // namespace detail

/// Runs (or resumes) a census. `resume` must come from an identical request;
/// anything inconsistent is refused rather than silently miscounted.
inline CensusOutcome run_census(const CensusOptions& opts,
                                const std::optional<CensusCheckpoint>& resume = std::nullopt,
                                const CensusCheckpointSaver& save = nullptr) {
    if (opts.n < 1) {
        throw std::invalid_argument("census: n must be >= 1");
    }
    if (opts.n > opts.max_n) {
        throw std::invalid_argument("census: n = " + std::to_string(opts.n) +
                                    " exceeds the configured maximum " + std::to_string(opts.max_n) +
                                    "; the scan visits 2^n subsets, so raise the maximum explicitly if " +
                                    "you accept the cost, and prefer sharded runs with checkpoints");
    }
    if (opts.n > 32) {
        throw std::invalid_argument("census: the one-word kernel supports n <= 32");
    }
    if (opts.shards < 1) {
        throw std::invalid_argument("census: shard count must be >= 1");
    }
    if (opts.shard_index && *opts.shard_index >= opts.shards) {
        throw std::invalid_argument("census: shard index out of range");
    }
    if (opts.k_filter && *opts.k_filter > opts.n) {
        throw std::invalid_argument("census: k filter exceeds n");
    }

    const auto t0 = std::chrono::steady_clock::now();

    CensusCheckpoint state;
    if (resume) {
        if (resume->n != opts.n || resume->shards != opts.shards || resume->k_filter != opts.k_filter ||
            resume->witness_cap != opts.witness_cap || resume->states.size() != opts.shards) {
            throw checkpoint_invalid("census checkpoint does not match the requested run");
        }
        state = *resume;
        for (const CensusShardState& st : state.states) {
            if (st.sum_dominant.size() != opts.n + 1 || st.balanced.size() != opts.n + 1 ||
                st.difference_dominant.size() != opts.n + 1) {
                throw checkpoint_invalid("census checkpoint has malformed tallies");
            }
        }
    } else {
        state.n = opts.n;
        state.k_filter = opts.k_filter;
        state.shards = opts.shards;
        state.witness_cap = opts.witness_cap;
        state.states.resize(opts.shards);
        for (uint32_t s = 0; s < opts.shards; ++s) {
            CensusShardState& st = state.states[s];
            st.next_mask = s;
            st.done = st.next_mask >= (uint64_t{1} << opts.n);
            st.sum_dominant.assign(opts.n + 1, 0);
            st.balanced.assign(opts.n + 1, 0);
            st.difference_dominant.assign(opts.n + 1, 0);
        }
    }

    std::vector<uint32_t> shard_ids;
    if (opts.shard_index) {
        shard_ids.push_back(*opts.shard_index);
    } else {
        for (uint32_t s = 0; s < opts.shards; ++s) {
            shard_ids.push_back(s);
        }
    }

    const uint64_t limit = opts.limit_masks.value_or(UINT64_MAX);
    std::vector<uint64_t> processed(opts.shards, 0);

    auto pending = [&] {
        for (uint32_t s : shard_ids) {
            if (!state.states[s].done && processed[s] < limit) {
                return true;
            }
        }
        return false;
    };

    uint32_t threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
    threads = std::max<uint32_t>(1, std::min<uint32_t>(threads, static_cast<uint32_t>(shard_ids.size())));

    bool deadline_hit = false;
    while (pending() && !deadline_hit) {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= shard_ids.size()) {
                    return;
                }
                const uint32_t s = shard_ids[i];
                CensusShardState& st = state.states[s];
                if (st.done || processed[s] >= limit) {
                    continue;
                }
                const uint64_t chunk = std::min(opts.checkpoint_interval, limit - processed[s]);
                detail::census_scan_chunk(opts.n, opts.k_filter, opts.witness_cap, opts.shards, chunk,
                                          st, processed[s], opts.deadline);
            }
        };
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (uint32_t t = 0; t < threads; ++t) {
                pool.emplace_back(worker);
            }
            for (std::thread& t : pool) {
                t.join();
            }
        }
        if (save) {
            save(state);
        }
        if (opts.deadline && std::chrono::steady_clock::now() >= *opts.deadline) {
            deadline_hit = true;
        }
    }

    CensusOutcome out;
    for (uint32_t s : shard_ids) {
        out.masks_processed += processed[s];
    }
    out.complete = true;
    for (uint32_t s : shard_ids) {
        out.complete = out.complete && state.states[s].done;
    }
    if (!out.complete) {
        return out;
    }

    CensusResult& r = out.result;
    r.n = opts.n;
    r.k_filter = opts.k_filter;
    r.shards = opts.shards;
    r.partial = opts.shard_index.has_value() && opts.shards > 1;
    r.witness_cap = opts.witness_cap;
    r.per_k.assign(opts.n + 1, PerKRow{});
    uint64_t truncated = 0;
    for (uint32_t s : shard_ids) {
        const CensusShardState& st = state.states[s];
        for (uint32_t k = 0; k <= opts.n; ++k) {
            r.per_k[k].sum_dominant += st.sum_dominant[k];
            r.per_k[k].balanced += st.balanced[k];
            r.per_k[k].difference_dominant += st.difference_dominant[k];
        }
        truncated += st.truncated_witnesses;
    }
    for (uint32_t k = 0; k <= opts.n; ++k) {
        PerKRow& row = r.per_k[k];
        row.total = row.sum_dominant + row.balanced + row.difference_dominant;
        r.f_n += row.sum_dominant;
    }
    r.masks_processed = 0;
    for (uint32_t s : shard_ids) {
        uint64_t count = 0;
        const uint64_t end = uint64_t{1} << opts.n;
        if (s < end) {
            count = (end - 1 - s) / opts.shards + 1;
        }
        r.masks_processed += count;
    }

    // Merge witnesses in ascending mask order; cap deterministically.
    {
        std::vector<uint64_t> all;
        for (uint32_t s : shard_ids) {
            all.insert(all.end(), state.states[s].witness_masks.begin(), state.states[s].witness_masks.end());
        }
        std::sort(all.begin(), all.end());
        if (all.size() > opts.witness_cap) {
            truncated += all.size() - opts.witness_cap;
            all.resize(opts.witness_cap);
        }
        r.witness_masks = std::move(all);
        r.witnesses_truncated = truncated > 0;
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------------------
// Bounded search for minimal sum-dominant sets
// ---------------------------------------------------------------------------

struct MstdSearchOptions {
    uint32_t max_card = 0;
    int64_t max_diam = 0;
    uint64_t budget_sets = UINT64_MAX;  // candidate sets examined
};

struct MstdSearchResult {
    std::vector<IntSet> hits;  // sorted by (cardinality, diameter, lex)
    bool exhaustive = false;
    uint64_t examined = 0;
};

/// Emits every affine-canonical sum-dominant set within the bounds. An empty
/// result from an exhaustive run certifies that none exist there.
inline MstdSearchResult search_min_mstd(const MstdSearchOptions& opts) {
    MstdSearchResult res;
    res.exhaustive = true;
    for_each_affine_canonical(opts.max_diam, opts.max_card, [&](const std::vector<int64_t>& elems) {
        if (res.examined >= opts.budget_sets) {
            res.exhaustive = false;
            return false;
        }
        ++res.examined;
        IntSet candidate = IntSet::from_sorted(std::vector<int64_t>(elems));
        if (classify(candidate) == SdClass::sum_dominant) {
            res.hits.push_back(std::move(candidate));
        }
        return true;
    });
    std::sort(res.hits.begin(), res.hits.end(), [](const IntSet& x, const IntSet& y) {
        if (x.size() != y.size()) {
            return x.size() < y.size();
        }
        if (x.diameter() != y.diameter()) {
            return x.diameter() < y.diameter();
        }
        return x < y;
    });
    return res;
}

}  // namespace addcomb
