#pragma once

/**
 * Integer-valued polynomials over finite integer sets and over Z/mZ.
 *
 * Two regimes, kept deliberately separate:
 *
 *   - over Z: polynomials in the binomial basis, terms c * prod C(x_i, k_i),
 *     evaluable exactly at any integer point (the product basis over several
 *     variables is the standard extension of the one-variable basis);
 *   - over Z/mZ: only integer-coefficient monomial-basis polynomials.
 *     Binomial-basis polynomials are not reducible mod m in general; the
 *     conversion below makes the failure explicit instead of guessing.
 *
 * Text syntax: `3*C(x,2)*C(y,1)` (binomial) or `2*x^2*y - y` (monomial).
 * Mixing the two in one expression is rejected.
 */

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "addcomb/checked.hpp"
#include "addcomb/forms.hpp"
#include "addcomb/intset.hpp"

namespace addcomb {

/// C(x, k) = x(x-1)...(x-k+1) / k!, exact for any integer x (negative too).
/// Every partial product of the multiplicative form is itself a binomial
/// coefficient, so the division at each step is exact.
inline int64_t binom_eval(int64_t x, uint32_t k) {
    int64_t r = 1;
    for (uint32_t i = 1; i <= k; ++i) {
        r = checked_mul(r, checked_sub(x, static_cast<int64_t>(i) - 1));
        r /= static_cast<int64_t>(i);
    }
    return r;
}

enum class PolyBasis { binomial, monomial };

/// Sparse polynomial: exponent tuple (one entry per variable, in the order
/// of `vars`) -> nonzero integer coefficient.
struct Poly {
    PolyBasis basis = PolyBasis::monomial;
    std::vector<std::string> vars;  // sorted, unique
    std::map<std::vector<uint32_t>, int64_t> terms;

    bool operator==(const Poly&) const = default;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

struct PolyParser {
    std::string_view text;
    size_t pos = 0;

    // per-term scratch: variable name -> exponent (monomial) or binomial index
    struct RawTerm {
        int64_t coeff = 1;
        std::map<std::string, uint32_t> binom;
        std::map<std::string, uint32_t> power;
    };

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw parse_error("polynomial: " + what + " at offset " + std::to_string(pos));
    }

    int64_t parse_int() {
        skip_ws();
        const size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == start) {
            fail("expected integer");
        }
        try {
            return std::stoll(std::string(text.substr(start, pos - start)));
        } catch (const std::out_of_range&) {
            fail("integer out of 64-bit range");
        }
    }

    std::string parse_ident() {
        skip_ws();
        const size_t start = pos;
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                ++pos;
            }
        }
        if (pos == start) {
            fail("expected identifier");
        }
        return std::string(text.substr(start, pos - start));
    }

    void parse_factor(RawTerm& term) {
        skip_ws();
        if (pos >= text.size()) {
            fail("expected factor");
        }
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            term.coeff = checked_mul(term.coeff, parse_int());
            return;
        }
        const std::string name = parse_ident();
        if (name == "C" && eat('(')) {
            const std::string var = parse_ident();
            if (!eat(',')) {
                fail("expected ',' in C(var, k)");
            }
            const int64_t k = parse_int();
            if (!eat(')')) {
                fail("expected ')' in C(var, k)");
            }
            if (term.binom.count(var) != 0) {
                fail("variable '" + var + "' appears in two binomial factors of one term");
            }
            term.binom[var] = static_cast<uint32_t>(k);
            return;
        }
        uint32_t exp = 1;
        if (eat('^')) {
            const int64_t e = parse_int();
            if (e < 0) {
                fail("negative exponent");
            }
            exp = static_cast<uint32_t>(e);
        }
        term.power[name] += exp;
    }

    RawTerm parse_term(int64_t sign) {
        RawTerm term;
        term.coeff = sign;
        parse_factor(term);
        while (eat('*')) {
            parse_factor(term);
        }
        return term;
    }

    Poly parse() {
        std::vector<RawTerm> raw;
        skip_ws();
        int64_t sign = 1;
        if (eat('-')) {
            sign = -1;
        } else {
            eat('+');
        }
        raw.push_back(parse_term(sign));
        while (true) {
            skip_ws();
            if (pos >= text.size()) {
                break;
            }
            if (eat('+')) {
                raw.push_back(parse_term(1));
            } else if (eat('-')) {
                raw.push_back(parse_term(-1));
            } else {
                fail("expected '+' or '-'");
            }
        }

        bool any_binom = false;
        bool any_power = false;
        std::vector<std::string> vars;
        for (const RawTerm& t : raw) {
            any_binom = any_binom || !t.binom.empty();
            any_power = any_power || !t.power.empty();
            for (const auto& [v, k] : t.binom) {
                vars.push_back(v);
            }
            for (const auto& [v, k] : t.power) {
                vars.push_back(v);
            }
        }
        if (any_binom && any_power) {
            throw parse_error("polynomial: expression mixes binomial factors C(x,k) with plain powers; "
                              "use one regime per expression");
        }
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

        Poly p;
        p.basis = any_binom ? PolyBasis::binomial : PolyBasis::monomial;
        p.vars = vars;
        for (const RawTerm& t : raw) {
            std::vector<uint32_t> exps(vars.size(), 0);
            const auto& source = any_binom ? t.binom : t.power;
            for (const auto& [v, k] : source) {
                const size_t i = std::lower_bound(vars.begin(), vars.end(), v) - vars.begin();
                exps[i] = k;
            }
            const auto it = p.terms.find(exps);
            if (it == p.terms.end()) {
                p.terms.emplace(std::move(exps), t.coeff);
            } else {
                it->second = checked_add(it->second, t.coeff);
            }
        }
        std::erase_if(p.terms, [](const auto& kv) { return kv.second == 0; });
        return p;
    }
};

}  // namespace detail

inline Poly parse_poly(std::string_view text) {
    detail::PolyParser parser{text};
    return parser.parse();
}

inline std::string to_string(const Poly& p) {
    if (p.terms.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [exps, coeff] : p.terms) {
        const int64_t c = coeff;
        if (first) {
            if (c < 0) {
                out += "-";
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        const uint64_t mag = c < 0 ? static_cast<uint64_t>(-(c + 1)) + 1 : static_cast<uint64_t>(c);
        std::string factors;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) {
                continue;
            }
            if (!factors.empty()) {
                factors += '*';
            }
            if (p.basis == PolyBasis::binomial) {
                factors += "C(" + p.vars[i] + "," + std::to_string(exps[i]) + ")";
            } else {
                factors += p.vars[i];
                if (exps[i] > 1) {
                    factors += "^" + std::to_string(exps[i]);
                }
            }
        }
        if (factors.empty()) {
            out += std::to_string(mag);
        } else if (mag == 1) {
            out += factors;
        } else {
            out += std::to_string(mag) + "*" + factors;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation over Z
// ---------------------------------------------------------------------------

inline int64_t eval_poly_point(const Poly& p, std::span<const int64_t> xs) {
    if (xs.size() != p.vars.size()) {
        throw std::invalid_argument("eval_poly_point: expected " + std::to_string(p.vars.size()) +
                                    " coordinates");
    }
    int64_t total = 0;
    for (const auto& [exps, coeff] : p.terms) {
        int64_t term = coeff;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) {
                continue;
            }
            term = checked_mul(term, p.basis == PolyBasis::binomial ? binom_eval(xs[i], exps[i])
                                                                    : checked_pow(xs[i], exps[i]));
        }
        total = checked_add(total, term);
    }
    return total;
}

/// f(A) = { f(a_1,...,a_n) : a_i in A }, exact over all |A|^n tuples.
inline IntSet eval_poly_set(const Poly& p, const IntSet& a, uint64_t budget_tuples = 100'000'000) {
    const size_t n = p.vars.size();
    if (n == 0) {
        // constant polynomial
        return IntSet({p.terms.empty() ? 0 : p.terms.begin()->second});
    }
    if (a.empty()) {
        return IntSet{};
    }
    uint64_t tuples = 1;
    for (size_t i = 0; i < n; ++i) {
        tuples = checked_mul_u64(tuples, a.size());
        if (tuples > budget_tuples) {
            throw budget_exceeded("eval_poly_set: |A|^n = " + std::to_string(a.size()) + "^" +
                                  std::to_string(n) + " tuples exceeds budget " +
                                  std::to_string(budget_tuples));
        }
    }
    const auto& elems = a.elements();
    std::vector<int64_t> point(n, elems.front());
    std::vector<size_t> idx(n, 0);
    std::unordered_set<int64_t> image;
    while (true) {
        image.insert(eval_poly_point(p, point));
        size_t pos = n;
        bool done = false;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < elems.size()) {
                point[pos] = elems[idx[pos]];
                break;
            }
            idx[pos] = 0;
            point[pos] = elems.front();
            if (pos == 0) {
                done = true;
            }
        }
        if (done) {
            break;
        }
    }
    std::vector<int64_t> out(image.begin(), image.end());
    return IntSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Binomial -> monomial conversion (exact rational intermediates)
// ---------------------------------------------------------------------------

namespace detail {

struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    static Rat make(int64_t n, int64_t d) {
        if (d < 0) {
            n = checked_neg(n);
            d = checked_neg(d);
        }
        const int64_t g = std::gcd(n, d);
        return g == 0 ? Rat{0, 1} : Rat{n / g, d / g};
    }
    Rat operator+(const Rat& o) const {
        return make(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)), checked_mul(den, o.den));
    }
    Rat operator*(const Rat& o) const {
        return make(checked_mul(num, o.num), checked_mul(den, o.den));
    }
};

/// Monomial coefficients of C(x, k) as rationals: expand the falling
/// factorial x(x-1)...(x-k+1) and divide by k!.
inline std::vector<Rat> binom_monomial_coeffs(uint32_t k) {
    std::vector<int64_t> falling{1};  // coefficients of x^0..x^deg
    for (uint32_t i = 0; i < k; ++i) {
        std::vector<int64_t> next(falling.size() + 1, 0);
        for (size_t j = 0; j < falling.size(); ++j) {
            next[j + 1] = checked_add(next[j + 1], falling[j]);
            next[j] = checked_sub(next[j], checked_mul(falling[j], static_cast<int64_t>(i)));
        }
        falling = std::move(next);
    }
    int64_t fact = 1;
    for (uint32_t i = 2; i <= k; ++i) {
        fact = checked_mul(fact, static_cast<int64_t>(i));
    }
    std::vector<Rat> out(falling.size());
    for (size_t j = 0; j < falling.size(); ++j) {
        out[j] = Rat::make(falling[j], fact);
    }
    return out;
}

}  // namespace detail

/// Rewrites a binomial-basis polynomial in the monomial basis. Fails unless
/// every monomial coefficient comes out exactly integral (most integer-valued
/// polynomials, e.g. C(x,2), do not).
inline Poly to_monomial(const Poly& p) {
    if (p.basis == PolyBasis::monomial) {
        return p;
    }
    std::map<std::vector<uint32_t>, detail::Rat> acc;
    for (const auto& [exps, coeff] : p.terms) {
        std::vector<std::vector<detail::Rat>> per_var;
        per_var.reserve(exps.size());
        for (uint32_t k : exps) {
            per_var.push_back(detail::binom_monomial_coeffs(k));
        }
        // tensor product over variables
        std::vector<uint32_t> degs(exps.size(), 0);
        while (true) {
            detail::Rat c = detail::Rat::make(coeff, 1);
            for (size_t i = 0; i < degs.size(); ++i) {
                c = c * per_var[i][degs[i]];
            }
            if (c.num != 0) {
                auto [it, inserted] = acc.emplace(degs, c);
                if (!inserted) {
                    it->second = it->second + c;
                }
            }
            size_t pos = degs.size();
            bool done = degs.empty();
            while (pos > 0) {
                --pos;
                if (++degs[pos] < per_var[pos].size()) {
                    break;
                }
                degs[pos] = 0;
                if (pos == 0) {
                    done = true;
                }
            }
            if (done) {
                break;
            }
        }
    }
    Poly out;
    out.basis = PolyBasis::monomial;
    out.vars = p.vars;
    for (const auto& [degs, rat] : acc) {
        if (rat.num == 0) {
            continue;
        }
        if (rat.den != 1) {
            throw std::invalid_argument("polynomial is not integer-coefficient in the monomial basis "
                                        "(coefficient " + std::to_string(rat.num) + "/" +
                                        std::to_string(rat.den) + "); it cannot be reduced mod m");
        }
        out.terms.emplace(degs, rat.num);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modular images
// ---------------------------------------------------------------------------

struct ModSet {
    int64_t modulus = 0;
    std::vector<int64_t> residues;  // sorted, distinct, in [0, modulus-1]

    static ModSet make(int64_t m, std::vector<int64_t> residues) {
        if (m < 2) {
            throw std::invalid_argument("ModSet: modulus must be >= 2");
        }
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        for (int64_t r : residues) {
            if (r < 0 || r >= m) {
                throw std::invalid_argument("ModSet: residue " + std::to_string(r) + " outside [0, " +
                                            std::to_string(m - 1) + "]");
            }
        }
        return ModSet{m, std::move(residues)};
    }

    bool operator==(const ModSet&) const = default;
};

/// The image of an integer set in Z/mZ (distinct residues).
inline ModSet reduce_mod(const IntSet& a, int64_t m) {
    if (m < 2) {
        throw std::invalid_argument("reduce_mod: modulus must be >= 2");
    }
    std::vector<int64_t> residues;
    residues.reserve(a.size());
    for (int64_t e : a) {
        residues.push_back(((e % m) + m) % m);
    }
    return ModSet::make(m, std::move(residues));
}

/// Image of a set of congruence classes under an integer-coefficient
/// monomial-basis polynomial, all arithmetic mod m. Binomial-basis input is
/// accepted only when it converts to integer monomial coefficients.
inline ModSet eval_poly_mod(const Poly& p, const ModSet& a, uint64_t budget_tuples = 100'000'000) {
    const Poly q = to_monomial(p);  // throws when not integer-coefficient
    if (a.modulus > (int64_t{1} << 31)) {
        // keeps (m-1)^2 inside uint64 so plain mod-mul stays exact
        throw std::invalid_argument("eval_poly_mod: modulus above 2^31 is not supported");
    }
    const uint64_t m = static_cast<uint64_t>(a.modulus);
    const size_t n = q.vars.size();
    if (n == 0) {
        const int64_t c = q.terms.empty() ? 0 : q.terms.begin()->second;
        return ModSet::make(a.modulus, {static_cast<int64_t>(((c % a.modulus) + a.modulus) % a.modulus)});
    }
    if (a.residues.empty()) {
        return ModSet::make(a.modulus, {});
    }
    uint64_t tuples = 1;
    for (size_t i = 0; i < n; ++i) {
        tuples = checked_mul_u64(tuples, a.residues.size());
        if (tuples > budget_tuples) {
            throw budget_exceeded("eval_poly_mod: |A|^n tuples exceed budget " +
                                  std::to_string(budget_tuples));
        }
    }

    auto mod_reduce = [m](int64_t v) -> uint64_t {
        const int64_t r = v % static_cast<int64_t>(m);
        return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(m) : r);
    };
    // precompute reduced coefficients
    std::vector<std::pair<std::vector<uint32_t>, uint64_t>> terms;
    terms.reserve(q.terms.size());
    for (const auto& [exps, coeff] : q.terms) {
        terms.emplace_back(exps, mod_reduce(coeff));
    }

    std::vector<size_t> idx(n, 0);
    const bool dense = m <= (uint64_t{1} << 26);
    std::vector<bool> seen(dense ? m : 0, false);
    std::unordered_set<uint64_t> sparse_seen;
    while (true) {
        uint64_t total = 0;
        for (const auto& [exps, coeff] : terms) {
            uint64_t term = coeff;
            for (size_t i = 0; i < n; ++i) {
                uint64_t base = static_cast<uint64_t>(a.residues[idx[i]]);
                for (uint32_t e = 0; e < exps[i]; ++e) {
                    term = term * base % m;
                }
            }
            total = (total + term) % m;
        }
        if (dense) {
            seen[total] = true;
        } else {
            sparse_seen.insert(total);
        }
        size_t pos = n;
        bool done = false;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < a.residues.size()) {
                break;
            }
            idx[pos] = 0;
            if (pos == 0) {
                done = true;
            }
        }
        if (done) {
            break;
        }
    }
    std::vector<int64_t> out;
    if (dense) {
        for (uint64_t r = 0; r < m; ++r) {
            if (seen[r]) {
                out.push_back(static_cast<int64_t>(r));
            }
        }
    } else {
        out.assign(sparse_seen.begin(), sparse_seen.end());
    }
    return ModSet::make(a.modulus, std::move(out));
}

// ---------------------------------------------------------------------------
// Membership probe for M(f, g)
// ---------------------------------------------------------------------------

enum class MfgStatus { member, non_member_exhaustive, unknown_budget };

inline const char* to_string(MfgStatus s) {
    switch (s) {
        case MfgStatus::member:
            return "member";
        case MfgStatus::non_member_exhaustive:
            return "non-member-exhaustive";
        case MfgStatus::unknown_budget:
            return "unknown-budget";
    }
    return "?";
}

struct MfgBudget {
    uint32_t max_card = 64;             // cap on random candidate size
    uint64_t max_subsets = 1 << 20;     // exhaustive scan allowed iff 2^m fits
    uint64_t random_samples = 10'000;   // candidates drawn when not exhaustive
    uint64_t seed = 12345;              // rng seed, fixed for reproducible runs
    uint64_t budget_tuples = 100'000'000;
};

struct MfgReport {
    Poly f;
    Poly g;
    int64_t m = 0;
    MfgStatus status = MfgStatus::unknown_budget;
    std::optional<ModSet> witness;
    uint64_t witness_f_card = 0;
    uint64_t witness_g_card = 0;
    uint64_t subsets_examined = 0;
};

namespace detail {

/// (u, v) when p is exactly u*x1 + v*x2 in the monomial basis.
inline std::optional<std::pair<int64_t, int64_t>> linear_binary_coeffs(const Poly& p) {
    if (p.basis != PolyBasis::monomial || p.vars.size() != 2 || p.terms.size() != 2) {
        return std::nullopt;
    }
    const auto ux = p.terms.find(std::vector<uint32_t>{1, 0});
    const auto vy = p.terms.find(std::vector<uint32_t>{0, 1});
    if (ux == p.terms.end() || vy == p.terms.end()) {
        return std::nullopt;
    }
    return std::make_pair(ux->second, vy->second);
}

}  // namespace detail

/// All three slot witnesses for a pair of polynomials over Z/mZ, from one
/// ascending scan of subset masks: the smallest-mask subset with more
/// f-values than g-values, with fewer, and with equally many (|C| >= 2).
struct ModTripleResult {
    std::optional<ModSet> a;
    std::optional<ModSet> b;
    std::optional<ModSet> c;
    bool exhaustive = false;
    uint64_t subsets_examined = 0;
};

inline ModTripleResult find_triple_mod(const Poly& f, const Poly& g, int64_t m,
                                       uint64_t max_subsets = uint64_t{1} << 20,
                                       uint64_t budget_tuples = 100'000'000) {
    if (m < 2 || m > 62) {
        throw std::invalid_argument("find_triple_mod: supported moduli are 2..62");
    }
    ModTripleResult res;
    const uint64_t end = uint64_t{1} << m;
    for (uint64_t mask = 0; mask < end; ++mask) {
        if (res.subsets_examined >= max_subsets) {
            return res;  // budget hit, not exhaustive
        }
        ++res.subsets_examined;
        std::vector<int64_t> residues;
        for (uint64_t bits = mask; bits != 0; bits &= bits - 1) {
            residues.push_back(std::countr_zero(bits));
        }
        const size_t card = residues.size();
        const ModSet cand = ModSet::make(m, std::move(residues));
        const size_t fc = eval_poly_mod(f, cand, budget_tuples).residues.size();
        const size_t gc = eval_poly_mod(g, cand, budget_tuples).residues.size();
        if (fc > gc && !res.a) {
            res.a = cand;
        } else if (fc < gc && !res.b) {
            res.b = cand;
        } else if (fc == gc && card >= 2 && !res.c) {
            res.c = cand;
        }
        if (res.a && res.b && res.c) {
            res.exhaustive = true;  // all slots settled before the scan ended
            return res;
        }
    }
    res.exhaustive = true;
    return res;
}

/// Decides whether some A in Z/mZ has |f(A)| > |g(A)|. Candidate order:
/// mod-m reductions of known integer witnesses, then the full 2^m scan when
/// it fits the budget, then uniform random subsets. Every candidate is
/// verified by evaluation before a member verdict.
inline MfgReport probe_Mfg(const Poly& f, const Poly& g, int64_t m, const MfgBudget& budget = {}) {
    if (m < 2) {
        throw std::invalid_argument("probe_Mfg: modulus must be >= 2");
    }
    MfgReport report;
    report.f = f;
    report.g = g;
    report.m = m;

    auto try_candidate = [&](const ModSet& cand) -> bool {
        ++report.subsets_examined;
        const ModSet fi = eval_poly_mod(f, cand, budget.budget_tuples);
        const ModSet gi = eval_poly_mod(g, cand, budget.budget_tuples);
        if (fi.residues.size() > gi.residues.size()) {
            report.status = MfgStatus::member;
            report.witness = cand;
            report.witness_f_card = fi.residues.size();
            report.witness_g_card = gi.residues.size();
            return true;
        }
        return false;
    };

    // Stage 1: transfer known integer witnesses. Their images survive the
    // reduction whenever m exceeds the image diameters, so for large m this
    // settles membership instantly. Verification gates every candidate.
    {
        std::vector<IntSet> known;
        known.push_back(IntSet({0, 2, 3, 4, 7, 11, 12, 14}));  // sum-dominant
        known.push_back(IntSet({0, 1, 3}));                    // difference-dominant
        const auto fl = detail::linear_binary_coeffs(f);
        const auto gl = detail::linear_binary_coeffs(g);
        if (fl && gl) {
            const auto [u, v] = *fl;
            if (u > v && v >= 1 && std::gcd(u, v) == 1 && *gl == std::make_pair(u, -v)) {
                known.push_back(orosz_witnesses(u, v).a);
            }
            if (u > -v && -v >= 1 && std::gcd(u, v) == 1 && *gl == std::make_pair(u, -v)) {
                known.push_back(orosz_witnesses(u, -v).b);
            }
        }
        for (const IntSet& w : known) {
            if (try_candidate(reduce_mod(w, m))) {
                return report;
            }
        }
    }

    // Stage 2: exhaustive scan of all subsets when 2^m fits the budget.
    if (m < 63 && (uint64_t{1} << m) <= budget.max_subsets) {
        for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
            std::vector<int64_t> residues;
            for (uint64_t bits = mask; bits != 0; bits &= bits - 1) {
                residues.push_back(std::countr_zero(bits));
            }
            if (try_candidate(ModSet::make(m, std::move(residues)))) {
                return report;
            }
        }
        report.status = MfgStatus::non_member_exhaustive;
        return report;
    }

    // Stage 3: uniform random subsets of bounded size.
    std::mt19937_64 rng(budget.seed);
    const uint32_t max_card = std::min<uint64_t>(budget.max_card, static_cast<uint64_t>(m));
    std::uniform_int_distribution<uint32_t> size_dist(1, std::max<uint32_t>(1, max_card));
    std::uniform_int_distribution<int64_t> res_dist(0, m - 1);
    for (uint64_t i = 0; i < budget.random_samples; ++i) {
        const uint32_t card = size_dist(rng);
        std::vector<int64_t> residues;
        residues.reserve(card);
        for (uint32_t j = 0; j < card; ++j) {
            residues.push_back(res_dist(rng));
        }
        if (try_candidate(ModSet::make(m, std::move(residues)))) {
            return report;
        }
    }
    report.status = MfgStatus::unknown_budget;
    return report;
}

}  // namespace addcomb
