#pragma once

/**
 * JSON serialization, the result envelope, and checkpoint persistence.
 *
 * Payloads are deterministic: nlohmann's default object storage keeps keys
 * sorted, and nothing time-dependent is ever placed inside a payload.
 * Timing lives in the envelope's separate `timing` field, which is excluded
 * from byte-equality guarantees.
 */

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "addcomb/census.hpp"
#include "addcomb/intset.hpp"
#include "addcomb/repfn.hpp"

namespace addcomb {

inline constexpr const char* kToolName = "addcomb";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kFormatVersion = "1";
inline constexpr const char* kCheckpointFormat = "addcomb-census-ckpt-1";
inline constexpr uint64_t kPayloadSetCap = 10'000;

/// Raw encoding of an IntSet: array of integers, strictly increasing.
inline nlohmann::json json_elements(const IntSet& a) {
    nlohmann::json arr = nlohmann::json::array();
    for (int64_t e : a) {
        arr.push_back(e);
    }
    return arr;
}

inline IntSet intset_from_json(const nlohmann::json& j) {
    if (!j.is_array()) {
        throw parse_error("set JSON: expected an array of integers");
    }
    std::vector<int64_t> vals;
    vals.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) {
            throw parse_error("set JSON: expected integer elements");
        }
        vals.push_back(v.get<int64_t>());
    }
    try {
        return IntSet::from_sorted(std::move(vals));
    } catch (const std::invalid_argument&) {
        throw parse_error("set JSON: elements must be strictly increasing");
    }
}

/// Payload encoding: exact cardinality plus elements capped at 10,000.
inline nlohmann::json json_set_payload(const IntSet& a, uint64_t cap = kPayloadSetCap) {
    nlohmann::json obj;
    obj["cardinality"] = a.size();
    nlohmann::json arr = nlohmann::json::array();
    uint64_t emitted = 0;
    for (int64_t e : a) {
        if (emitted >= cap) {
            break;
        }
        arr.push_back(e);
        ++emitted;
    }
    obj["elements"] = std::move(arr);
    obj["truncated"] = a.size() > cap;
    return obj;
}

// ---------------------------------------------------------------------------
// Envelope
// ---------------------------------------------------------------------------

inline nlohmann::json make_envelope(const std::string& command, nlohmann::json config,
                                    nlohmann::json payload, double elapsed_ms) {
    nlohmann::json env;
    env["command"] = command;
    env["config"] = std::move(config);
    env["format_version"] = kFormatVersion;
    env["payload"] = std::move(payload);
    env["timing"] = nlohmann::json{{"elapsed_ms", elapsed_ms}};
    env["tool"] = kToolName;
    env["version"] = kToolVersion;
    return env;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw std::runtime_error("short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Census serialization
// ---------------------------------------------------------------------------

inline nlohmann::json census_result_payload(const CensusResult& r) {
    nlohmann::json p;
    p["n"] = r.n;
    if (r.k_filter) {
        p["k_filter"] = *r.k_filter;
    } else {
        p["k_filter"] = nullptr;
    }
    p["f_n"] = r.f_n;
    nlohmann::json rows = nlohmann::json::array();
    for (uint32_t k = 0; k < r.per_k.size(); ++k) {
        if (r.k_filter && *r.k_filter != k) {
            continue;
        }
        const PerKRow& row = r.per_k[k];
        rows.push_back(nlohmann::json{{"k", k},
                                      {"total", row.total},
                                      {"sum_dominant", row.sum_dominant},
                                      {"balanced", row.balanced},
                                      {"diff_dominant", row.difference_dominant}});
    }
    p["per_k"] = std::move(rows);
    nlohmann::json wit = nlohmann::json::array();
    for (uint64_t mask : r.witness_masks) {
        wit.push_back(json_elements(mask_to_set(mask)));
    }
    p["witnesses"] = std::move(wit);
    p["witnesses_truncated"] = r.witnesses_truncated;
    p["witness_cap"] = r.witness_cap;
    p["masks_processed"] = r.masks_processed;
    // shard count and elapsed time are run provenance, not results; they live
    // in the envelope (config echo, timing). Payload bytes are sharding-invariant.
    p["partial"] = r.partial;
    p["complete"] = true;
    p["scope"] = "finite-n evaluation";
    return p;
}

inline std::string census_per_k_csv(const CensusResult& r) {
    std::string csv = "k,total,sum_dominant,balanced,diff_dominant\n";
    for (uint32_t k = 0; k < r.per_k.size(); ++k) {
        if (r.k_filter && *r.k_filter != k) {
            continue;
        }
        const PerKRow& row = r.per_k[k];
        csv += std::to_string(k) + "," + std::to_string(row.total) + "," + std::to_string(row.sum_dominant) +
               "," + std::to_string(row.balanced) + "," + std::to_string(row.difference_dominant) + "\n";
    }
    return csv;
}

// ---------------------------------------------------------------------------
// Census checkpoints
// ---------------------------------------------------------------------------

inline nlohmann::json checkpoint_to_json(const CensusCheckpoint& c) {
    nlohmann::json j;
    j["format"] = kCheckpointFormat;
    j["n"] = c.n;
    if (c.k_filter) {
        j["k_filter"] = *c.k_filter;
    } else {
        j["k_filter"] = nullptr;
    }
    j["shards"] = c.shards;
    j["witness_cap"] = c.witness_cap;
    nlohmann::json states = nlohmann::json::array();
    for (const CensusShardState& st : c.states) {
        states.push_back(nlohmann::json{{"next_mask", st.next_mask},
                                        {"done", st.done},
                                        {"sum_dominant", st.sum_dominant},
                                        {"balanced", st.balanced},
                                        {"diff_dominant", st.difference_dominant},
                                        {"witness_masks", st.witness_masks},
                                        {"truncated_witnesses", st.truncated_witnesses}});
    }
    j["states"] = std::move(states);
    return j;
}

inline CensusCheckpoint checkpoint_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != kCheckpointFormat) {
            throw checkpoint_invalid("checkpoint format version mismatch: expected " +
                                     std::string(kCheckpointFormat));
        }
        CensusCheckpoint c;
        c.n = j.at("n").get<uint32_t>();
        if (!j.at("k_filter").is_null()) {
            c.k_filter = j.at("k_filter").get<uint32_t>();
        }
        c.shards = j.at("shards").get<uint32_t>();
        c.witness_cap = j.at("witness_cap").get<uint64_t>();
        for (const auto& s : j.at("states")) {
            CensusShardState st;
            st.next_mask = s.at("next_mask").get<uint64_t>();
            st.done = s.at("done").get<bool>();
            st.sum_dominant = s.at("sum_dominant").get<std::vector<uint64_t>>();
            st.balanced = s.at("balanced").get<std::vector<uint64_t>>();
            st.difference_dominant = s.at("diff_dominant").get<std::vector<uint64_t>>();
            st.witness_masks = s.at("witness_masks").get<std::vector<uint64_t>>();
            st.truncated_witnesses = s.at("truncated_witnesses").get<uint64_t>();
            c.states.push_back(std::move(st));
        }
        return c;
    } catch (const checkpoint_invalid&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw checkpoint_invalid(std::string("checkpoint is malformed: ") + e.what());
    }
}

inline void save_census_checkpoint(const std::filesystem::path& path, const CensusCheckpoint& c) {
    atomic_write_file(path, checkpoint_to_json(c).dump(2) + "\n");
}

/// Loads a checkpoint if the file exists; refuses anything unreadable.
inline std::optional<CensusCheckpoint> load_census_checkpoint(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        return std::nullopt;
    }
    const std::string content = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw checkpoint_invalid(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    return checkpoint_from_json(j);
}

// ---------------------------------------------------------------------------
// Representation-function target files
// ---------------------------------------------------------------------------

/// Target file format: JSON object mapping integers (as strings) to
/// nonnegative counts or "inf". Keys must cover a contiguous window.
inline RepTarget rep_target_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.empty()) {
        throw parse_error("target: expected a non-empty JSON object of n -> value");
    }
    std::map<int64_t, std::optional<uint64_t>> entries;
    for (const auto& [key, value] : j.items()) {
        int64_t n = 0;
        try {
            size_t used = 0;
            n = std::stoll(key, &used);
            if (used != key.size()) {
                throw std::invalid_argument(key);
            }
        } catch (const std::exception&) {
            throw parse_error("target: key '" + key + "' is not an integer");
        }
        if (value.is_string() && value.get<std::string>() == "inf") {
            entries[n] = std::nullopt;
        } else if (value.is_number_unsigned() ||
                   (value.is_number_integer() && value.get<int64_t>() >= 0)) {
            entries[n] = value.get<uint64_t>();
        } else {
            throw parse_error("target: value for n=" + std::to_string(n) +
                              " must be a nonnegative integer or \"inf\"");
        }
    }
    const int64_t from = entries.begin()->first;
    const int64_t to = entries.rbegin()->first;
    if (static_cast<uint64_t>(to - from) + 1 != entries.size()) {
        throw parse_error("target: keys must cover a contiguous window [" + std::to_string(from) + ", " +
                          std::to_string(to) + "] with no gaps");
    }
    std::vector<std::optional<uint64_t>> values;
    values.reserve(entries.size());
    for (const auto& [n, v] : entries) {
        values.push_back(v);
    }
    return RepTarget::make(from, to, std::move(values));
}

inline RepTarget load_rep_target(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("target file is not valid JSON: ") + e.what());
    }
    return rep_target_from_json(j);
}

}  // namespace addcomb
