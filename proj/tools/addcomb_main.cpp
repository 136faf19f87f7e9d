// addcomb: one binary, subcommands per task area.
//
// Exit codes: 0 success, 1 domain error (overflow, bad set contents,
// checkpoint mismatch, budget), 2 usage error (unknown flags, malformed
// literals, inconsistent shard spec).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addcomb/census.hpp"
#include "addcomb/forms.hpp"
#include "addcomb/intset.hpp"
#include "addcomb/mstd.hpp"
#include "addcomb/poly.hpp"
#include "addcomb/repfn.hpp"
#include "addcomb/serialize.hpp"

namespace {

using addcomb::IntSet;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOpts {
    std::string format = "json";
    std::string out_path;
    uint64_t budget_tuples = 100'000'000;
    uint64_t budget_subsets = uint64_t{1} << 20;
    double time_cap_secs = 0.0;  // 0 = none
};

std::vector<int64_t> parse_int_list(const std::string& text, const char* what) {
    std::vector<int64_t> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string piece = text.substr(pos, comma - pos);
        try {
            size_t used = 0;
            out.push_back(std::stoll(piece, &used));
            if (used != piece.size()) {
                throw std::invalid_argument(piece);
            }
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": '" + piece + "' is not an integer");
        }
        pos = comma + 1;
        if (comma == text.size()) {
            break;
        }
    }
    return out;
}

addcomb::BinaryForm parse_form_pair(const std::string& text, const char* what) {
    const std::vector<int64_t> c = parse_int_list(text, what);
    if (c.size() != 2) {
        throw UsageError(std::string(what) + ": expected exactly two coefficients u,v");
    }
    return addcomb::BinaryForm{c[0], c[1]};
}

std::filesystem::path resolve_out_path(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("ADDCOMB_OUT_DIR"); dir != nullptr && *dir != '\0') {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void emit(const GlobalOpts& g, const std::string& command, json config, json payload, double elapsed_ms,
          const std::string& text_summary, const std::string& csv) {
    std::string body;
    if (g.format == "json") {
        body = addcomb::make_envelope(command, std::move(config), std::move(payload), elapsed_ms).dump(2);
        body += "\n";
    } else if (g.format == "csv") {
        if (csv.empty()) {
            throw UsageError("--format csv is only available for census per-k tables");
        }
        body = csv;
    } else {
        body = text_summary;
    }
    if (g.out_path.empty()) {
        std::cout << body;
        return;
    }
    const std::filesystem::path p = resolve_out_path(g.out_path);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write output file " + p.string());
    }
    out << body;
}

json set_or_null(const std::optional<IntSet>& s) {
    return s ? addcomb::json_set_payload(*s) : json(nullptr);
}

// ---------------------------------------------------------------------------
// Command handlers. Each returns {config, payload, text, csv}.
// ---------------------------------------------------------------------------

struct CommandOutput {
    json config;
    json payload;
    std::string text;
    std::string csv;
};

CommandOutput run_verify(const std::string& set_text) {
    const IntSet a = addcomb::parse_set_literal(set_text);
    const addcomb::SetStats st = addcomb::set_stats(a);
    const addcomb::SdClass cls = addcomb::classify(a);
    CommandOutput out;
    out.config = json{{"set", set_text}};
    out.payload["set"] = addcomb::json_set_payload(a);
    out.payload["cardinality"] = st.cardinality;
    out.payload["sum_card"] = st.sum_card;
    out.payload["diff_card"] = st.diff_card;
    out.payload["class"] = addcomb::to_string(cls);
    out.payload["sumset"] = addcomb::json_set_payload(addcomb::sumset(a, a));
    out.payload["diffset"] = addcomb::json_set_payload(addcomb::diffset(a, a));
    if (!a.empty()) {
        out.payload["min"] = st.min;
        out.payload["max"] = st.max;
        out.payload["diameter"] = st.diameter;
        const auto z = addcomb::symmetry_center(a);
        out.payload["symmetry_center"] = z ? json(*z) : json(nullptr);
    }
    out.text = addcomb::to_set_literal(a) + ": |A+A| = " + std::to_string(st.sum_card) +
               ", |A-A| = " + std::to_string(st.diff_card) + ", " + addcomb::to_string(cls) + "\n";
    return out;
}

CommandOutput run_census(const GlobalOpts& g, addcomb::CensusOptions opts, const std::string& checkpoint,
                         const std::string& witnesses_path) {
    if (opts.shard_index && *opts.shard_index >= opts.shards) {
        throw UsageError("census: --shard-index " + std::to_string(*opts.shard_index) +
                         " out of range for --shards " + std::to_string(opts.shards));
    }
    if (g.time_cap_secs > 0) {
        opts.deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(static_cast<int64_t>(g.time_cap_secs * 1000));
    }
    std::optional<addcomb::CensusCheckpoint> resume;
    addcomb::CensusCheckpointSaver saver;
    if (!checkpoint.empty()) {
        resume = addcomb::load_census_checkpoint(checkpoint);
        saver = [checkpoint](const addcomb::CensusCheckpoint& c) {
            addcomb::save_census_checkpoint(checkpoint, c);
        };
    }
    const addcomb::CensusOutcome outcome = addcomb::run_census(opts, resume, saver);

    CommandOutput out;
    out.config = json{{"n", opts.n},
                      {"k", opts.k_filter ? json(*opts.k_filter) : json(nullptr)},
                      {"shards", opts.shards},
                      {"shard_index", opts.shard_index ? json(*opts.shard_index) : json(nullptr)},
                      {"witness_cap", opts.witness_cap},
                      {"checkpoint", checkpoint}};
    if (!outcome.complete) {
        out.payload["complete"] = false;
        out.payload["masks_processed"] = outcome.masks_processed;
        out.payload["checkpoint"] = checkpoint;
        out.text = "census n=" + std::to_string(opts.n) + ": interrupted after " +
                   std::to_string(outcome.masks_processed) + " masks (resume from checkpoint)\n";
        return out;
    }
    const addcomb::CensusResult& r = outcome.result;
    out.payload = addcomb::census_result_payload(r);
    out.csv = addcomb::census_per_k_csv(r);
    out.text = "census n=" + std::to_string(r.n) + ": f(n) = " + std::to_string(r.f_n) + " of " +
               std::to_string(r.masks_processed) + " subsets (" + std::to_string(r.witness_masks.size()) +
               " witnesses listed)\n";
    if (!witnesses_path.empty()) {
        json arr = json::array();
        for (uint64_t mask : r.witness_masks) {
            arr.push_back(addcomb::json_elements(addcomb::mask_to_set(mask)));
        }
        addcomb::atomic_write_file(resolve_out_path(witnesses_path), arr.dump(2) + "\n");
    }
    return out;
}

CommandOutput run_search(uint32_t max_card, int64_t max_diam, uint64_t budget_sets) {
    const addcomb::MstdSearchResult r =
        addcomb::search_min_mstd(addcomb::MstdSearchOptions{max_card, max_diam, budget_sets});
    CommandOutput out;
    out.config = json{{"max_card", max_card}, {"max_diam", max_diam}, {"budget_sets", budget_sets}};
    json hits = json::array();
    for (const IntSet& h : r.hits) {
        hits.push_back(addcomb::json_set_payload(h));
    }
    out.payload["hits"] = std::move(hits);
    out.payload["hit_count"] = r.hits.size();
    out.payload["examined"] = r.examined;
    out.payload["exhaustive"] = r.exhaustive;
    out.text = "search: " + std::to_string(r.hits.size()) + " sum-dominant canonical sets within bounds (" +
               (r.exhaustive ? "exhaustive" : "budget exhausted") + ")\n";
    return out;
}

CommandOutput run_lift(const GlobalOpts& g, const std::string& set_text, int64_t m, uint32_t t,
                       uint32_t ratios_t_max) {
    const IntSet a = addcomb::parse_set_literal(set_text);
    const IntSet lifted = addcomb::lift(a, addcomb::LiftParams{m, t}, g.budget_tuples);
    CommandOutput out;
    out.config = json{{"set", set_text}, {"m", m}, {"t", t}};
    out.payload["source"] = addcomb::json_set_payload(a);
    out.payload["m"] = m;
    out.payload["t"] = t;
    out.payload["lifted"] = addcomb::json_set_payload(lifted);
    const uint64_t sc = addcomb::sumset(lifted, lifted).size();
    const uint64_t dc = addcomb::diffset(lifted, lifted).size();
    out.payload["sum_card"] = sc;
    out.payload["diff_card"] = dc;
    if (ratios_t_max > 0) {
        json seq = json::array();
        const auto entries = addcomb::ratio_sequence(a, ratios_t_max, m, g.budget_tuples);
        for (uint32_t i = 0; i < entries.size(); ++i) {
            seq.push_back(json{{"t", i + 1},
                               {"sum_card", entries[i].sum_card},
                               {"diff_card", entries[i].diff_card}});
        }
        out.payload["ratios"] = std::move(seq);
        out.payload["scope"] = "finite prefix; no asymptotic claim";
    }
    out.text = "lift: |A_t| = " + std::to_string(lifted.size()) + ", |A_t+A_t| = " + std::to_string(sc) +
               ", |A_t-A_t| = " + std::to_string(dc) + "\n";
    return out;
}

CommandOutput run_forms_normalize(const addcomb::BinaryForm& f) {
    const addcomb::NormalizedBinaryForm n = addcomb::normalize(f);
    CommandOutput out;
    out.config = json{{"u", f.u}, {"v", f.v}};
    out.payload["input"] = json{{"u", f.u}, {"v", f.v}};
    out.payload["normalized"] = json{{"u", n.u}, {"v", n.v}};
    out.text = "normalize: " + std::to_string(f.u) + "x" + (f.v < 0 ? "" : "+") + std::to_string(f.v) +
               "y  ->  " + std::to_string(n.u) + "x" + (n.v < 0 ? "" : "+") + std::to_string(n.v) + "y\n";
    return out;
}

CommandOutput run_forms_eval(const addcomb::BinaryForm& f, const std::string& set_text,
                             bool cardinality_only) {
    const IntSet a = addcomb::parse_set_literal(set_text);
    const IntSet image = addcomb::eval_form(f, a);
    CommandOutput out;
    out.config = json{{"u", f.u}, {"v", f.v}, {"set", set_text}, {"cardinality_only", cardinality_only}};
    out.payload["u"] = f.u;
    out.payload["v"] = f.v;
    out.payload["set"] = addcomb::json_set_payload(a);
    out.payload["image_card"] = image.size();
    if (!cardinality_only) {
        out.payload["image"] = addcomb::json_set_payload(image);
    }
    out.text = "|f(A)| = " + std::to_string(image.size()) + "\n";
    return out;
}

CommandOutput run_forms_orosz(int64_t u, int64_t v) {
    const addcomb::OroszWitnesses w = addcomb::orosz_witnesses(u, v);
    const addcomb::BinaryForm f{u, v};
    const addcomb::BinaryForm gneg{u, -v};
    CommandOutput out;
    out.config = json{{"u", u}, {"v", v}};
    out.payload["u"] = u;
    out.payload["v"] = v;
    out.payload["a"] = addcomb::json_set_payload(w.a);
    out.payload["b"] = addcomb::json_set_payload(w.b);
    out.payload["f_a_card"] = addcomb::eval_form(f, w.a).size();
    out.payload["g_a_card"] = addcomb::eval_form(gneg, w.a).size();
    out.payload["f_b_card"] = addcomb::eval_form(f, w.b).size();
    out.payload["g_b_card"] = addcomb::eval_form(gneg, w.b).size();
    out.text = "orosz(" + std::to_string(u) + "," + std::to_string(v) + "): A = " +
               addcomb::to_set_literal(w.a) + ", B = " + addcomb::to_set_literal(w.b) + "\n";
    return out;
}

CommandOutput run_forms_triple(const addcomb::BinaryForm& f, const addcomb::BinaryForm& g,
                               int64_t max_diam, uint32_t max_card, uint64_t budget_sets) {
    const addcomb::TripleResult r =
        addcomb::find_triple(f, g, addcomb::TripleBounds{max_diam, max_card, budget_sets});
    CommandOutput out;
    out.config = json{{"f", json{{"u", f.u}, {"v", f.v}}},
                      {"g", json{{"u", g.u}, {"v", g.v}}},
                      {"max_diam", max_diam},
                      {"max_card", max_card},
                      {"budget_sets", budget_sets}};
    out.payload["f"] = json{{"u", f.u}, {"v", f.v}};
    out.payload["g"] = json{{"u", g.u}, {"v", g.v}};
    out.payload["a"] = set_or_null(r.a);
    out.payload["b"] = set_or_null(r.b);
    out.payload["c"] = set_or_null(r.c);
    out.payload["examined"] = r.examined;
    out.payload["exhaustive"] = r.exhaustive;
    auto fmt = [](const std::optional<IntSet>& s) {
        return s ? addcomb::to_set_literal(*s) : std::string("absent");
    };
    out.text = "triple: A = " + fmt(r.a) + ", B = " + fmt(r.b) + ", C = " + fmt(r.c) + "\n";
    return out;
}

CommandOutput run_forms_nary(const GlobalOpts& g, const std::string& coeffs_text,
                             const std::string& set_text) {
    const addcomb::NaryForm f{parse_int_list(coeffs_text, "--coeffs")};
    const IntSet a = addcomb::parse_set_literal(set_text);
    const IntSet image = addcomb::eval_nary(f, a, g.budget_tuples);
    CommandOutput out;
    out.config = json{{"coeffs", f.coeffs}, {"set", set_text}};
    out.payload["coeffs"] = f.coeffs;
    out.payload["set"] = addcomb::json_set_payload(a);
    out.payload["image"] = addcomb::json_set_payload(image);
    out.payload["image_card"] = image.size();
    out.text = "|f(A)| = " + std::to_string(image.size()) + "\n";
    return out;
}

CommandOutput run_poly_eval(const GlobalOpts& g, const std::string& f_text, const std::string& set_text) {
    const addcomb::Poly f = addcomb::parse_poly(f_text);
    const IntSet a = addcomb::parse_set_literal(set_text);
    const IntSet image = addcomb::eval_poly_set(f, a, g.budget_tuples);
    CommandOutput out;
    out.config = json{{"f", f_text}, {"set", set_text}};
    out.payload["f"] = addcomb::to_string(f);
    out.payload["basis"] = f.basis == addcomb::PolyBasis::binomial ? "binomial" : "monomial";
    out.payload["variables"] = f.vars;
    out.payload["set"] = addcomb::json_set_payload(a);
    out.payload["image"] = addcomb::json_set_payload(image);
    out.payload["image_card"] = image.size();
    out.text = "|f(A)| = " + std::to_string(image.size()) + " (" +
               std::string(out.payload["basis"].get<std::string>()) + " basis)\n";
    return out;
}

CommandOutput run_poly_mod(const GlobalOpts& g, const std::string& f_text, const std::string& g_text,
                           int64_t m, const std::string& set_text, bool probe, bool triple,
                           uint32_t max_card, uint64_t samples, uint64_t seed) {
    const addcomb::Poly f = addcomb::parse_poly(f_text);
    CommandOutput out;
    if (triple) {
        if (g_text.empty()) {
            throw UsageError("poly mod --triple requires --g");
        }
        const addcomb::Poly gp = addcomb::parse_poly(g_text);
        const addcomb::ModTripleResult r =
            addcomb::find_triple_mod(f, gp, m, g.budget_subsets, g.budget_tuples);
        out.config = json{{"f", f_text}, {"g", g_text}, {"m", m}, {"triple", true}};
        auto slot = [](const std::optional<addcomb::ModSet>& s) {
            return s ? json(s->residues) : json(nullptr);
        };
        out.payload["f"] = addcomb::to_string(f);
        out.payload["g"] = addcomb::to_string(gp);
        out.payload["m"] = m;
        out.payload["a"] = slot(r.a);
        out.payload["b"] = slot(r.b);
        out.payload["c"] = slot(r.c);
        out.payload["exhaustive"] = r.exhaustive;
        out.payload["subsets_examined"] = r.subsets_examined;
        auto fmt = [](const std::optional<addcomb::ModSet>& s) {
            if (!s) {
                return std::string("absent");
            }
            std::string t = "{";
            for (size_t i = 0; i < s->residues.size(); ++i) {
                t += (i ? "," : "") + std::to_string(s->residues[i]);
            }
            return t + "}";
        };
        out.text = "mod triple m=" + std::to_string(m) + ": A = " + fmt(r.a) + ", B = " + fmt(r.b) +
                   ", C = " + fmt(r.c) + (r.exhaustive ? "" : " (budget exhausted)") + "\n";
        return out;
    }
    if (probe) {
        if (g_text.empty()) {
            throw UsageError("poly mod --probe requires --g");
        }
        const addcomb::Poly gp = addcomb::parse_poly(g_text);
        addcomb::MfgBudget budget;
        budget.max_card = max_card;
        budget.max_subsets = g.budget_subsets;
        budget.random_samples = samples;
        budget.seed = seed;
        budget.budget_tuples = g.budget_tuples;
        const addcomb::MfgReport r = addcomb::probe_Mfg(f, gp, m, budget);
        out.config = json{{"f", f_text}, {"g", g_text}, {"m", m}, {"probe", true},
                          {"max_card", max_card}, {"samples", samples}, {"seed", seed}};
        out.payload["f"] = addcomb::to_string(f);
        out.payload["g"] = addcomb::to_string(gp);
        out.payload["m"] = m;
        out.payload["status"] = addcomb::to_string(r.status);
        out.payload["witness"] = r.witness ? json(r.witness->residues) : json(nullptr);
        out.payload["witness_f_card"] = r.witness_f_card;
        out.payload["witness_g_card"] = r.witness_g_card;
        out.payload["subsets_examined"] = r.subsets_examined;
        out.text = std::string("probe m=") + std::to_string(m) + ": " + addcomb::to_string(r.status) +
                   (r.witness ? " with witness of " + std::to_string(r.witness->residues.size()) +
                                    " residues"
                              : "") +
                   "\n";
        return out;
    }
    if (set_text.empty()) {
        throw UsageError("poly mod: need --set (image mode) or --probe --g (membership mode)");
    }
    const IntSet raw = addcomb::parse_set_literal(set_text);
    const addcomb::ModSet a = addcomb::reduce_mod(raw, m);
    const addcomb::ModSet image = addcomb::eval_poly_mod(f, a, g.budget_tuples);
    out.config = json{{"f", f_text}, {"m", m}, {"set", set_text}};
    out.payload["f"] = addcomb::to_string(f);
    out.payload["m"] = m;
    out.payload["residues"] = a.residues;
    out.payload["image_residues"] = image.residues;
    out.payload["image_card"] = image.residues.size();
    out.text = "|f(A)| = " + std::to_string(image.residues.size()) + " residues mod " + std::to_string(m) +
               "\n";
    return out;
}

CommandOutput run_repfn_profile(const std::string& set_text, uint32_t h, int64_t from, int64_t to) {
    const IntSet a = addcomb::parse_set_literal(set_text);
    const addcomb::RepProfile p = addcomb::rep_profile(a, h, from, to);
    CommandOutput out;
    out.config = json{{"set", set_text}, {"h", h}, {"from", from}, {"to", to}};
    out.payload["set"] = addcomb::json_set_payload(a);
    out.payload["h"] = h;
    out.payload["from"] = from;
    out.payload["to"] = to;
    out.payload["counts"] = p.counts;
    out.text = "profile on [" + std::to_string(from) + "," + std::to_string(to) + "]:";
    for (uint64_t c : p.counts) {
        out.text += " " + std::to_string(c);
    }
    out.text += "\n";
    return out;
}

json check_to_json(const addcomb::TargetCheck& c) {
    json j;
    j["n"] = c.n;
    j["expected"] = c.expected ? json(*c.expected) : json("inf");
    j["actual"] = c.actual;
    j["pass"] = c.pass;
    j["skipped"] = c.skipped;
    return j;
}

CommandOutput run_repfn_verify(const std::string& set_text, uint32_t h, const std::string& target_path) {
    const IntSet a = addcomb::parse_set_literal(set_text);
    const addcomb::RepTarget t = addcomb::load_rep_target(target_path);
    const addcomb::VerifyReport r = addcomb::verify_target(a, h, t);
    CommandOutput out;
    out.config = json{{"set", set_text}, {"h", h}, {"target", target_path}};
    out.payload["pass"] = r.pass;
    out.payload["skipped"] = r.skipped;
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(check_to_json(c));
    }
    out.payload["checks"] = std::move(checks);
    if (r.skipped > 0) {
        std::cerr << "warning: " << r.skipped
                  << " window position(s) carry the infinity marker and were skipped\n";
    }
    out.text = std::string("verify: ") + (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.skipped) +
               " skipped)\n";
    return out;
}

CommandOutput run_repfn_realize(const std::string& target_path, uint32_t h, int64_t bound,
                                uint64_t node_budget, bool all, uint64_t max_results) {
    const addcomb::RepTarget t = addcomb::load_rep_target(target_path);
    CommandOutput out;
    out.config = json{{"target", target_path}, {"h", h},          {"bound", bound},
                      {"node_budget", node_budget}, {"all", all}, {"max_results", max_results}};
    if (all) {
        const addcomb::RealizeAllResult r =
            addcomb::realize_all_on_window(t, h, addcomb::RealizeOptions{bound, node_budget}, max_results);
        json sets = json::array();
        for (const IntSet& s : r.sets) {
            sets.push_back(addcomb::json_set_payload(s));
        }
        out.payload["sets"] = std::move(sets);
        out.payload["count"] = r.sets.size();
        out.payload["exhaustive"] = r.exhaustive;
        out.payload["truncated"] = r.truncated;
        out.payload["nodes"] = r.nodes;
        out.text = "realize --all: " + std::to_string(r.sets.size()) + " realizer(s) (" +
                   (r.exhaustive ? "exhaustive" : "stopped early") + ")\n";
        return out;
    }
    const addcomb::RealizeResult r =
        addcomb::realize_on_window(t, h, addcomb::RealizeOptions{bound, node_budget});
    out.payload["found"] = r.set.has_value();
    out.payload["set"] = set_or_null(r.set);
    out.payload["exhaustive"] = r.exhaustive;
    out.payload["nodes"] = r.nodes;
    out.text = r.set ? "realize: " + addcomb::to_set_literal(*r.set) + "\n"
                     : std::string("realize: none-within-bounds (") +
                           (r.exhaustive ? "exhaustive" : "budget exhausted") + ")\n";
    return out;
}

CommandOutput run_repfn_density(const std::string& set_text, const std::string& samples_text) {
    const IntSet a = addcomb::parse_set_literal(set_text);
    const std::vector<int64_t> samples = parse_int_list(samples_text, "--samples");
    const addcomb::DensityFit fit = addcomb::density_fit(a, samples);
    CommandOutput out;
    out.config = json{{"set", set_text}, {"samples", samples}};
    out.payload["alpha"] = fit.alpha;
    out.payload["residual"] = fit.residual;
    out.payload["points"] = fit.points;
    out.payload["kind"] = "finite-sample diagnostic";
    out.text = "density fit: alpha = " + std::to_string(fit.alpha) + " (finite-sample diagnostic, " +
               std::to_string(fit.points) + " points)\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"addcomb: exact sums, differences, linear forms, polynomial images, and "
                 "representation functions of finite integer sets"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_flag("--help", "Print this help message and exit");

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", g.out_path, "Write output to this file (ADDCOMB_OUT_DIR resolves relatives)");
    app.add_option("--budget-tuples", g.budget_tuples, "Cap on evaluation tuples")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-subsets", g.budget_subsets, "Cap on scanned subsets")
        ->check(CLI::PositiveNumber);
    app.add_option("--time-cap-secs", g.time_cap_secs, "Soft wall-clock cap for long scans")
        ->check(CLI::PositiveNumber);

    // verify
    std::string verify_set;
    auto* cmd_verify = app.add_subcommand("verify", "Sum/difference cardinalities and class of a set");
    cmd_verify->fallthrough();
    cmd_verify->add_option("--set", verify_set, "Set literal, e.g. '{0,2,3,4,7}'")->required();

    // census
    addcomb::CensusOptions census_opts;
    std::string census_checkpoint;
    std::string census_witnesses;
    uint32_t census_k = 0;
    uint32_t census_shard_index = 0;
    uint64_t census_limit = 0;
    auto* cmd_census = app.add_subcommand("census", "Exhaustive census of subsets of [0, n-1]");
    cmd_census->fallthrough();
    cmd_census->add_option("--n", census_opts.n, "Range length")->required()->check(CLI::Range(1, 32));
    auto* opt_k = cmd_census->add_option("--k", census_k, "Restrict to subsets of this cardinality");
    cmd_census->add_option("--shards", census_opts.shards, "Shard count")->check(CLI::Range(1, 4096));
    auto* opt_shard_index =
        cmd_census->add_option("--shard-index", census_shard_index, "Run only this shard");
    cmd_census->add_option("--checkpoint", census_checkpoint, "Checkpoint file (resume if present)");
    cmd_census->add_option("--witnesses", census_witnesses, "Write witness sets to this file");
    cmd_census->add_option("--witness-cap", census_opts.witness_cap, "Cap on listed witnesses");
    auto* opt_limit = cmd_census->add_option("--limit-masks", census_limit,
                                             "Stop after this many masks per shard (checkpointing)");
    cmd_census->add_option("--max-n", census_opts.max_n, "Raise the configured census maximum");
    cmd_census->add_option("--threads", census_opts.threads, "Worker threads (0 = auto)");

    // search
    uint32_t search_max_card = 0;
    int64_t search_max_diam = 0;
    uint64_t search_budget = UINT64_MAX;
    auto* cmd_search = app.add_subcommand("search", "Search canonical sum-dominant sets within bounds");
    cmd_search->fallthrough();
    cmd_search->add_option("--max-card", search_max_card, "Max cardinality")->required();
    cmd_search->add_option("--max-diam", search_max_diam, "Max diameter")->required();
    cmd_search->add_option("--budget-sets", search_budget, "Max candidate sets examined");

    // lift
    std::string lift_set;
    int64_t lift_m = 0;
    uint32_t lift_t = 0;
    uint32_t lift_ratios = 0;
    auto* cmd_lift = app.add_subcommand("lift", "Base-m digit lift A_t and its cardinalities");
    cmd_lift->fallthrough();
    cmd_lift->add_option("--set", lift_set, "Set literal")->required();
    cmd_lift->add_option("--m", lift_m, "Base (must exceed 2*max A)")->required();
    cmd_lift->add_option("--t", lift_t, "Digit count")->required()->check(CLI::Range(1, 64));
    cmd_lift->add_option("--ratios", lift_ratios, "Also emit the ratio sequence for t = 1..RATIOS");

    // forms
    auto* cmd_forms = app.add_subcommand("forms", "Binary and n-ary linear forms");
    cmd_forms->fallthrough();
    cmd_forms->require_subcommand(1);
    int64_t forms_u = 0;
    int64_t forms_v = 0;
    std::string forms_set;
    bool forms_card_only = false;
    auto* cmd_fnorm = cmd_forms->add_subcommand("normalize", "Normalize ux+vy");
    cmd_fnorm->fallthrough();
    cmd_fnorm->add_option("--u", forms_u)->required();
    cmd_fnorm->add_option("--v", forms_v)->required();
    auto* cmd_feval = cmd_forms->add_subcommand("eval", "Image f(A) of a binary form");
    cmd_feval->fallthrough();
    cmd_feval->add_option("--u", forms_u)->required();
    cmd_feval->add_option("--v", forms_v)->required();
    cmd_feval->add_option("--set", forms_set)->required();
    cmd_feval->add_flag("--cardinality-only", forms_card_only, "Suppress the image set in the payload");
    auto* cmd_forosz = cmd_forms->add_subcommand("orosz", "Orosz witness pair for ux+vy vs ux-vy");
    cmd_forosz->fallthrough();
    cmd_forosz->add_option("--u", forms_u)->required();
    cmd_forosz->add_option("--v", forms_v)->required();
    std::string triple_f;
    std::string triple_g;
    int64_t triple_max_diam = 0;
    uint32_t triple_max_card = 0;
    uint64_t triple_budget = UINT64_MAX;
    auto* cmd_ftriple = cmd_forms->add_subcommand("triple", "Search the (A,B,C) triple for two forms");
    cmd_ftriple->fallthrough();
    cmd_ftriple->add_option("--f", triple_f, "First form as u,v")->required();
    cmd_ftriple->add_option("--g", triple_g, "Second form as u,v")->required();
    cmd_ftriple->add_option("--max-diam", triple_max_diam)->required();
    cmd_ftriple->add_option("--max-card", triple_max_card)->required();
    cmd_ftriple->add_option("--budget-sets", triple_budget);
    std::string nary_coeffs;
    auto* cmd_fnary = cmd_forms->add_subcommand("nary", "Image of an n-ary linear form");
    cmd_fnary->fallthrough();
    cmd_fnary->add_option("--coeffs", nary_coeffs, "Comma-separated coefficients")->required();
    cmd_fnary->add_option("--set", forms_set)->required();

    // poly
    auto* cmd_poly = app.add_subcommand("poly", "Integer-valued polynomial images");
    cmd_poly->fallthrough();
    cmd_poly->require_subcommand(1);
    std::string poly_f;
    std::string poly_g;
    std::string poly_set;
    int64_t poly_m = 0;
    bool poly_probe = false;
    bool poly_triple = false;
    uint32_t poly_max_card = 64;
    uint64_t poly_samples = 10'000;
    uint64_t poly_seed = 12345;
    auto* cmd_peval = cmd_poly->add_subcommand("eval", "Image f(A) over the integers");
    cmd_peval->fallthrough();
    cmd_peval->add_option("--f", poly_f, "Polynomial, e.g. 'C(x,2)' or 'x^2*y - y'")->required();
    cmd_peval->add_option("--set", poly_set)->required();
    auto* cmd_pmod = cmd_poly->add_subcommand("mod", "Image over Z/mZ, or probe membership in M(f,g)");
    cmd_pmod->fallthrough();
    cmd_pmod->add_option("--f", poly_f)->required();
    cmd_pmod->add_option("--g", poly_g, "Second polynomial (with --probe)");
    cmd_pmod->add_option("--m", poly_m, "Modulus")->required()->check(CLI::Range(2, 1 << 30));
    cmd_pmod->add_option("--set", poly_set, "Residues as a set literal (image mode)");
    cmd_pmod->add_flag("--probe", poly_probe, "Probe membership of m in M(f,g)");
    cmd_pmod->add_flag("--triple", poly_triple, "Search A, B, C slots over Z/mZ (needs --g)");
    cmd_pmod->add_option("--max-card", poly_max_card, "Random candidate size cap");
    cmd_pmod->add_option("--samples", poly_samples, "Random candidates when not exhaustive");
    cmd_pmod->add_option("--seed", poly_seed, "Random stage seed");

    // repfn
    auto* cmd_repfn = app.add_subcommand("repfn", "Representation functions r_{A,h}");
    cmd_repfn->fallthrough();
    cmd_repfn->require_subcommand(1);
    std::string repfn_set;
    std::string repfn_target;
    std::string repfn_samples;
    uint32_t repfn_h = 2;
    int64_t repfn_from = 0;
    int64_t repfn_to = 0;
    int64_t repfn_bound = 0;
    uint64_t repfn_nodes = 50'000'000;
    auto* cmd_rprof = cmd_repfn->add_subcommand("profile", "r_{A,h} over an interval");
    cmd_rprof->fallthrough();
    cmd_rprof->add_option("--set", repfn_set)->required();
    cmd_rprof->add_option("--h", repfn_h)->check(CLI::Range(1, 16));
    cmd_rprof->add_option("--from", repfn_from)->required();
    cmd_rprof->add_option("--to", repfn_to)->required();
    auto* cmd_rverify = cmd_repfn->add_subcommand("verify", "Check r_{A,h} against a target file");
    cmd_rverify->fallthrough();
    cmd_rverify->add_option("--set", repfn_set)->required();
    cmd_rverify->add_option("--h", repfn_h)->check(CLI::Range(1, 16));
    cmd_rverify->add_option("--target", repfn_target)->required();
    bool repfn_all = false;
    uint64_t repfn_max_results = 1000;
    auto* cmd_rrealize = cmd_repfn->add_subcommand("realize", "Find a set realizing a target window");
    cmd_rrealize->fallthrough();
    cmd_rrealize->add_option("--target", repfn_target)->required();
    cmd_rrealize->add_option("--h", repfn_h)->check(CLI::Range(1, 16));
    cmd_rrealize->add_option("--bound", repfn_bound, "Search elements within [-bound, bound]")->required();
    cmd_rrealize->add_option("--node-budget", repfn_nodes);
    cmd_rrealize->add_flag("--all", repfn_all, "Enumerate every realizer within the bounds");
    cmd_rrealize->add_option("--max-results", repfn_max_results, "Cap on enumerated realizers")
        ->check(CLI::PositiveNumber);
    auto* cmd_rdensity = cmd_repfn->add_subcommand("density", "Log-log slope of the counting function");
    cmd_rdensity->fallthrough();
    cmd_rdensity->add_option("--set", repfn_set)->required();
    cmd_rdensity->add_option("--samples", repfn_samples, "Comma-separated sample points")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        CommandOutput out;
        std::string command;
        if (*cmd_verify) {
            command = "verify";
            out = run_verify(verify_set);
        } else if (*cmd_census) {
            command = "census";
            if (*opt_k) {
                census_opts.k_filter = census_k;
            }
            if (*opt_shard_index) {
                census_opts.shard_index = census_shard_index;
            }
            if (*opt_limit) {
                census_opts.limit_masks = census_limit;
            }
            out = run_census(g, census_opts, census_checkpoint, census_witnesses);
        } else if (*cmd_search) {
            command = "search";
            out = run_search(search_max_card, search_max_diam, search_budget);
        } else if (*cmd_lift) {
            command = "lift";
            out = run_lift(g, lift_set, lift_m, lift_t, lift_ratios);
        } else if (*cmd_forms) {
            if (*cmd_fnorm) {
                command = "forms normalize";
                out = run_forms_normalize(addcomb::BinaryForm{forms_u, forms_v});
            } else if (*cmd_feval) {
                command = "forms eval";
                out = run_forms_eval(addcomb::BinaryForm{forms_u, forms_v}, forms_set, forms_card_only);
            } else if (*cmd_forosz) {
                command = "forms orosz";
                out = run_forms_orosz(forms_u, forms_v);
            } else if (*cmd_ftriple) {
                command = "forms triple";
                out = run_forms_triple(parse_form_pair(triple_f, "--f"), parse_form_pair(triple_g, "--g"),
                                       triple_max_diam, triple_max_card, triple_budget);
            } else {
                command = "forms nary";
                out = run_forms_nary(g, nary_coeffs, forms_set);
            }
        } else if (*cmd_poly) {
            if (*cmd_peval) {
                command = "poly eval";
                out = run_poly_eval(g, poly_f, poly_set);
            } else {
                command = "poly mod";
                out = run_poly_mod(g, poly_f, poly_g, poly_m, poly_set, poly_probe, poly_triple,
                                   poly_max_card, poly_samples, poly_seed);
            }
        } else if (*cmd_repfn) {
            if (*cmd_rprof) {
                command = "repfn profile";
                out = run_repfn_profile(repfn_set, repfn_h, repfn_from, repfn_to);
            } else if (*cmd_rverify) {
                command = "repfn verify";
                out = run_repfn_verify(repfn_set, repfn_h, repfn_target);
            } else if (*cmd_rrealize) {
                command = "repfn realize";
                out = run_repfn_realize(repfn_target, repfn_h, repfn_bound, repfn_nodes, repfn_all,
                                        repfn_max_results);
            } else {
                command = "repfn density";
                out = run_repfn_density(repfn_set, repfn_samples);
            }
        }
        const double elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        emit(g, command, std::move(out.config), std::move(out.payload), elapsed_ms, out.text, out.csv);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const addcomb::parse_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
