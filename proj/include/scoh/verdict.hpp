#pragma once

// Three-valued verdicts with certificates. A certificate is the ordered list
// of rule applications that produced the answer; each application records the
// sub-verdicts it consumed and the facts (parameters, witnesses) it relied on,
// so replay() can re-derive the answer without the classifier.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scoh/error.hpp"

namespace scoh {

enum class Answer { Yes, No, Unknown };

inline std::string_view to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "Yes";
        case Answer::No: return "No";
        case Answer::Unknown: return "Unknown";
    }
    return "?";
}

struct Verdict;

struct RuleApplication {
    std::string rule;
    Answer conclusion = Answer::Unknown;
    std::vector<Verdict> premises;
    std::vector<std::pair<std::string, std::string>> facts;

    std::optional<std::string> fact(std::string_view key) const {
        for (const auto& [k, v] : facts) {
            if (k == key) return v;
        }
        return std::nullopt;
    }

    bool operator==(const RuleApplication&) const;
};

struct Verdict {
    Answer answer = Answer::Unknown;
    std::vector<RuleApplication> certificate;
    std::string reason;  // set for Unknown

    bool definite() const noexcept { return answer != Answer::Unknown; }

    /// Value of a fact recorded by the last application of `rule`.
    std::optional<std::string> fact(std::string_view rule, std::string_view key) const {
        for (auto it = certificate.rbegin(); it != certificate.rend(); ++it) {
            if (it->rule == rule) return it->fact(key);
        }
        return std::nullopt;
    }

    bool operator==(const Verdict&) const = default;
};

inline bool RuleApplication::operator==(const RuleApplication& o) const {
    return rule == o.rule && conclusion == o.conclusion && premises == o.premises && facts == o.facts;
}

inline Verdict unknown(std::string reason) {
    Verdict v;
    v.reason = std::move(reason);
    return v;
}

/// A verdict whose certificate is `app`, concluding app.conclusion.
inline Verdict conclude(RuleApplication app) {
    Verdict v;
    v.answer = app.conclusion;
    v.certificate.push_back(std::move(app));
    return v;
}

inline Answer conjunction(std::initializer_list<Answer> xs) {
    bool unknown_seen = false;
    for (Answer a : xs) {
        if (a == Answer::No) return Answer::No;
        if (a == Answer::Unknown) unknown_seen = true;
    }
    return unknown_seen ? Answer::Unknown : Answer::Yes;
}

namespace rules {

inline constexpr std::string_view kTorsionOrderBound = "reduced-torsion-order-bound";
inline constexpr std::string_view kFiniteTorsionSum = "finite-sum-of-torsion";
inline constexpr std::string_view kDivisibleRankBound = "divisible-rank-bound";
inline constexpr std::string_view kTorsionFreeDivisible = "torsionfree-divisible-finite-rank";
inline constexpr std::string_view kReducedDivisibleSplit = "reduced-divisible-split";
inline constexpr std::string_view kQuotientShape = "torsion-free-quotient";
inline constexpr std::string_view kProductOfFinite = "product-of-finite-components";
inline constexpr std::string_view kERingFieldQuotient = "e-ring-field-quotient";
inline constexpr std::string_view kSplitHomTrivial = "split-hom-trivial";
inline constexpr std::string_view kSummandClosure = "summand-closure";
inline constexpr std::string_view kTorsionAndQuotient = "torsion-and-quotient";
inline constexpr std::string_view kReducedAdjustedCotorsion = "reduced-adjusted-cotorsion";
inline constexpr std::string_view kUniformIffTorsion = "uniform-iff-torsion";
inline constexpr std::string_view kUniformImpliesScoh = "uniform-implies-scoh";
inline constexpr std::string_view kBoundedExponents = "uniformly-bounded-exponents";
inline constexpr std::string_view kUnboundedWitnesses = "unbounded-exponent-witnesses";
inline constexpr std::string_view kCotorsionCompact = "cotorsion-algebraically-compact";
inline constexpr std::string_view kProductCompact = "product-is-algebraically-compact";
inline constexpr std::string_view kHomZero = "hom-zero-group";
inline constexpr std::string_view kHomDivisibleToReduced = "hom-divisible-to-reduced";
inline constexpr std::string_view kHomDisjointTorsion = "hom-torsion-disjoint-support";
inline constexpr std::string_view kHomWitness = "hom-nonzero-witness";

}  // namespace rules

namespace detail {

inline std::optional<unsigned long long> parse_count(const std::optional<std::string>& s) {
    if (!s || s->empty()) return std::nullopt;
    if (!std::all_of(s->begin(), s->end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
    return std::stoull(*s);
}

inline bool finite_count(const std::optional<std::string>& s) { return parse_count(s).has_value(); }

using ReplayFn = std::function<std::optional<Answer>(const RuleApplication&, const std::vector<Answer>&)>;

inline Answer same_as_only(const std::vector<Answer>& ps) { return ps.size() == 1 ? ps[0] : Answer::Unknown; }

inline const std::map<std::string, ReplayFn, std::less<>>& replay_table() {
    using namespace rules;
    static const std::map<std::string, ReplayFn, std::less<>> table = {
        {std::string(kTorsionOrderBound),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             auto tail = a.fact("tail");
             if (!tail) return std::nullopt;
             if (*tail == "linear") return Answer::No;
             if (!finite_count(a.fact("e"))) return std::nullopt;
             return Answer::Yes;
         }},
        {std::string(kFiniteTorsionSum),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.empty()) return std::nullopt;
             Answer acc = Answer::Yes;
             for (Answer p : ps) acc = conjunction({acc, p});
             return acc;
         }},
        {std::string(kDivisibleRankBound),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             auto r0 = a.fact("r0");
             auto rp = a.fact("rp");
             if (!r0 || !rp) return std::nullopt;
             return finite_count(r0) && finite_count(rp) ? Answer::Yes : Answer::No;
         }},
        {std::string(kTorsionFreeDivisible),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             auto div = a.fact("divisible");
             auto rank = a.fact("rank");
             if (!div || !rank) return std::nullopt;
             return *div == "true" && finite_count(rank) ? Answer::Yes : Answer::No;
         }},
        {std::string(kReducedDivisibleSplit),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 2) return std::nullopt;
             return conjunction({ps[0], ps[1]});
         }},
        {std::string(kQuotientShape),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             return same_as_only(ps);
         }},
        {std::string(kProductOfFinite),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             return same_as_only(ps);
         }},
        {std::string(kERingFieldQuotient),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             if (a.fact("quotient") != "Q") return std::nullopt;
             return Answer::Yes;
         }},
        {std::string(kSplitHomTrivial),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 3 || ps[0] != Answer::Yes) return std::nullopt;
             return conjunction({ps[1], ps[2]});
         }},
        {std::string(kSummandClosure),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 1 || ps[0] != Answer::No) return std::nullopt;
             return Answer::No;
         }},
        {std::string(kTorsionAndQuotient),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 2 || ps[0] != Answer::Yes || ps[1] != Answer::Yes) return std::nullopt;
             return Answer::Yes;
         }},
        {std::string(kReducedAdjustedCotorsion),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             return same_as_only(ps);
         }},
        {std::string(kUniformIffTorsion),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 2 || ps[0] != Answer::Yes) return std::nullopt;
             return ps[1];
         }},
        {std::string(kUniformImpliesScoh),
         [](const RuleApplication&, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 1 || ps[0] != Answer::No) return std::nullopt;
             return Answer::No;
         }},
        {std::string(kBoundedExponents),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             if (!finite_count(a.fact("bound"))) return std::nullopt;
             return Answer::Yes;
         }},
        {std::string(kUnboundedWitnesses),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             // Witness indices must grow strictly with n.
             unsigned long long last = 0;
             std::size_t seen = 0;
             for (const auto& [k, v] : a.facts) {
                 if (k.rfind("witness.", 0) != 0) continue;
                 auto idx = parse_count(v);
                 if (!idx || (seen > 0 && *idx <= last)) return std::nullopt;
                 last = *idx;
                 ++seen;
             }
             if (seen < 2) return std::nullopt;
             return Answer::No;
         }},
        {std::string(kCotorsionCompact),
         [](const RuleApplication& a, const std::vector<Answer>& ps) -> std::optional<Answer> {
             if (ps.size() != 1 || ps[0] != Answer::Yes || !a.fact("flag")) return std::nullopt;
             return Answer::Yes;
         }},
        {std::string(kProductCompact),
         [](const RuleApplication&, const std::vector<Answer>&) -> std::optional<Answer> { return Answer::Yes; }},
        {std::string(kHomZero),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             if (!a.fact("zero")) return std::nullopt;
             return Answer::Yes;
         }},
        {std::string(kHomDivisibleToReduced),
         [](const RuleApplication&, const std::vector<Answer>&) -> std::optional<Answer> { return Answer::Yes; }},
        {std::string(kHomDisjointTorsion),
         [](const RuleApplication&, const std::vector<Answer>&) -> std::optional<Answer> { return Answer::Yes; }},
        {std::string(kHomWitness),
         [](const RuleApplication& a, const std::vector<Answer>&) -> std::optional<Answer> {
             // Z(p^s) -> Z(p^t), generator to p^k: well defined iff k >= t - s,
             // nonzero iff k < t.
             auto s = parse_count(a.fact("source_exponent"));
             auto t = parse_count(a.fact("target_exponent"));
             auto k = parse_count(a.fact("multiplier_exponent"));
             if (!s || !t || !k) return std::nullopt;
             if (*k + *s < *t || *k >= *t) return std::nullopt;
             return Answer::No;
         }},
    };
    return table;
}

}  // namespace detail

/// Re-derives a verdict's answer rule by rule. Throws Error if a recorded
/// conclusion does not follow from its premises and facts, or if a definite
/// verdict has no certificate.
inline Answer replay(const Verdict& v) {
    if (v.answer == Answer::Unknown) {
        if (v.reason.empty()) throw Error("unknown verdict without a reason");
        return Answer::Unknown;
    }
    if (v.certificate.empty()) throw Error("definite verdict without a certificate");
    const auto& table = detail::replay_table();
    Answer last = Answer::Unknown;
    for (const auto& app : v.certificate) {
        auto it = table.find(app.rule);
        if (it == table.end()) throw Error("unknown rule '" + app.rule + "'");
        std::vector<Answer> premises;
        premises.reserve(app.premises.size());
        for (const auto& p : app.premises) premises.push_back(replay(p));
        auto derived = it->second(app, premises);
        if (!derived || *derived != app.conclusion) {
            throw Error("rule '" + app.rule + "' does not support conclusion " + std::string(to_string(app.conclusion)));
        }
        last = *derived;
    }
    if (last != v.answer) throw Error("certificate concludes " + std::string(to_string(last)));
    return last;
}

/// Rule names in firing order, premises first (depth-first).
inline void flatten_rules(const Verdict& v, std::vector<std::string>& out) {
    for (const auto& app : v.certificate) {
        for (const auto& p : app.premises) flatten_rules(p, out);
        out.push_back(app.rule);
    }
}

}  // namespace scoh
