#pragma once

// Brute-force checks of the quantitative claims on small groups: the
// exponent bound, the rank and exponent witnesses, the im + ker equivalence,
// and the closed-form sp-group index against finite truncations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "scoh/enumerate.hpp"
#include "scoh/error.hpp"
#include "scoh/finabel.hpp"
#include "scoh/integer.hpp"
#include "scoh/spgroup.hpp"

namespace scoh {

enum class WitnessKind { RankShift, MultByP };

/// RankShift: generator j -> generator j+1, last -> 0; needs equal orders.
/// MultByP: x -> p x.
inline Homomorphism construct_witness(const FinAbGroup& g, WitnessKind kind) {
    auto p = g.prime();
    if (!p) throw PreconditionError(g.to_string() + " is not a p-group");
    if (kind == WitnessKind::MultByP) return Homomorphism::scalar(g, *p);
    if (!g.is_homocyclic()) throw PreconditionError("rank shift needs a homocyclic group, got " + g.to_string());
    const std::size_t r = g.factor_count();
    IntMatrix m(r, std::vector<Integer>(r, 0));
    for (std::size_t j = 0; j + 1 < r; ++j) m[j + 1][j] = 1;
    return Homomorphism(g, g, std::move(m));
}

struct BoundCheckResult {
    FinAbGroup group;
    std::size_t exhaustive_max = 0;
    std::uint64_t theoretical_bound = 0;
    Homomorphism witness;
    std::uint64_t witness_position = 0;
    std::uint64_t endomorphisms = 0;
    std::map<std::string, std::size_t> lower_witnesses;  // "rank", "exponent"

    bool holds() const { return exhaustive_max <= theoretical_bound; }
};

/// Exhaustive maximum stabilization index of a p-group of order p^e against e.
inline BoundCheckResult verify_exponent_bound(const FinAbGroup& g, std::uint64_t cap = kDefaultEndomorphismCap,
                                              unsigned workers = 1) {
    if (!g.is_p_group()) throw PreconditionError(g.to_string() + " is not a p-group");
    auto best = max_stab_index(g, cap, workers);
    BoundCheckResult r;
    r.group = g;
    r.exhaustive_max = best.index;
    r.theoretical_bound = g.log_cardinality();
    r.witness = std::move(best.witness);
    r.witness_position = best.witness_position;
    r.endomorphisms = best.endomorphisms;
    if (g.is_homocyclic()) r.lower_witnesses["rank"] = stab_index(construct_witness(g, WitnessKind::RankShift));
    r.lower_witnesses["exponent"] = stab_index(construct_witness(g, WitnessKind::MultByP));
    return r;
}

struct SweepFailure {
    FinAbGroup group;
    std::string error;
};

struct SweepSummary {
    std::vector<BoundCheckResult> results;
    std::vector<SweepFailure> failures;
    std::size_t violations = 0;
    Rational max_ratio = 0;  // max of exhaustive_max / e

    bool ok() const { return violations == 0 && failures.empty(); }
};

/// Runs verify_exponent_bound on each group; a group that errors is recorded
/// and the sweep continues.
inline SweepSummary sweep(std::span<const FinAbGroup> groups, std::uint64_t cap = kDefaultEndomorphismCap,
                          unsigned workers = 1) {
    SweepSummary s;
    for (const auto& g : groups) {
        try {
            auto r = verify_exponent_bound(g, cap, workers);
            if (!r.holds()) ++s.violations;
            if (r.theoretical_bound > 0) {
                s.max_ratio = std::max(s.max_ratio, Rational(r.exhaustive_max) / r.theoretical_bound);
            }
            s.results.push_back(std::move(r));
        } catch (const Error& e) {
            s.failures.push_back({g, e.what()});
        }
    }
    return s;
}

inline std::string format_report(const SweepSummary& s) {
    std::ostringstream out;
    for (const auto& r : s.results) {
        out << "group=" << r.group.to_string() << " endos=" << r.endomorphisms << " max=" << r.exhaustive_max
            << " bound=" << r.theoretical_bound << " witness=" << r.witness.to_string() << "@" << r.witness_position;
        for (const auto& [k, v] : r.lower_witnesses) out << " " << k << "_witness=" << v;
        out << " holds=" << (r.holds() ? "yes" : "NO") << "\n";
    }
    for (const auto& f : s.failures) out << "failed=" << f.group.to_string() << " error=" << f.error << "\n";
    out << "groups=" << s.results.size() << " failures=" << s.failures.size() << " violations=" << s.violations
        << " max_ratio=" << s.max_ratio.str() << "\n";
    return out.str();
}

namespace detail {

inline void partitions(std::uint64_t n, std::uint64_t max_part, std::vector<std::uint64_t>& cur,
                       std::vector<std::vector<std::uint64_t>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (std::uint64_t part = std::min(n, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(n - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Partitions of n into non-increasing parts, largest first part first.
inline std::vector<std::vector<std::uint64_t>> integer_partitions(std::uint64_t n) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    detail::partitions(n, n, cur, out);
    return out;
}

/// Every nontrivial abelian p-group of order <= max_card, up to isomorphism,
/// by increasing order; factors by non-increasing exponent.
inline std::vector<FinAbGroup> p_groups_up_to(std::uint64_t p, std::uint64_t max_card) {
    if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
    std::vector<FinAbGroup> out;
    Integer card = p;
    for (std::uint64_t e = 1; card <= max_card; ++e, card *= p) {
        for (const auto& parts : integer_partitions(e)) {
            std::vector<PrimePower> f;
            for (auto part : parts) f.push_back({p, part});
            out.push_back(make_group(std::move(f)));
        }
    }
    return out;
}

/// Every nontrivial abelian group of order <= max_card, by increasing order.
inline std::vector<FinAbGroup> abelian_groups_up_to(std::uint64_t max_card) {
    std::vector<FinAbGroup> out;
    for (std::uint64_t n = 2; n <= max_card; ++n) {
        std::vector<std::vector<FinAbGroup>> per_prime;
        std::uint64_t rest = n;
        for (auto p : prime_divisors(n)) {
            std::uint64_t e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            std::vector<FinAbGroup> options;
            for (const auto& parts : integer_partitions(e)) {
                std::vector<PrimePower> f;
                for (auto part : parts) f.push_back({p, part});
                options.push_back(make_group(std::move(f)));
            }
            per_prime.push_back(std::move(options));
        }
        std::function<void(std::size_t, FinAbGroup)> rec = [&](std::size_t i, FinAbGroup acc) {
            if (i == per_prime.size()) {
                out.push_back(std::move(acc));
                return;
            }
            for (const auto& opt : per_prime[i]) rec(i + 1, acc.direct_sum(opt));
        };
        rec(0, FinAbGroup());
    }
    return out;
}

struct EquivalenceResult {
    std::uint64_t endomorphisms = 0;
    std::uint64_t counterexamples = 0;
    std::uint64_t first_position = 0;  // of the first counterexample
    std::size_t first_n = 0;
};

/// For every endomorphism f and 1 <= n <= stab(f) + 2: im f^n + ker f^n = G
/// iff n >= stab(f).
inline EquivalenceResult check_equivalence(const FinAbGroup& g, std::uint64_t cap = kDefaultEndomorphismCap,
                                           unsigned workers = 1) {
    if (!DenseGroup::fits(g)) throw PreconditionError(g.to_string() + " is too large for an exhaustive check");
    auto states =
        scan_endomorphisms<EquivalenceResult>(g, cap, workers, [](EquivalenceResult& s, std::uint64_t pos, auto& endo) {
            ++s.endomorphisms;
            endo.stab_index();
            if (std::size_t n = endo.first_sum_mismatch(2); n != 0) {
                if (s.counterexamples++ == 0) {
                    s.first_position = pos;
                    s.first_n = n;
                }
            }
        });
    EquivalenceResult total;
    for (const auto& s : states) {
        if (s.counterexamples > 0 && total.counterexamples == 0) {
            total.first_position = s.first_position;
            total.first_n = s.first_n;
        }
        total.endomorphisms += s.endomorphisms;
        total.counterexamples += s.counterexamples;
    }
    return total;
}

struct TruncationCheck {
    std::size_t exact = 0;
    std::uint64_t symbolic = 0;

    bool agree() const { return exact == symbolic; }
};

/// Exact index of multiplication by alpha on the first n components, against
/// the largest closed-form step among them.
inline TruncationCheck truncation_indices(const SpGroupSpec& spec, const SpElement& alpha, std::size_t n) {
    auto trunc = truncate(spec, n);
    auto report = stab_index_mul(alpha, spec);
    TruncationCheck c;
    c.exact = stab_index(trunc.multiplication(alpha));
    for (std::size_t i = 1; i <= n; ++i) c.symbolic = std::max(c.symbolic, step_at(report, i));
    return c;
}

inline bool cross_check_truncation(const SpGroupSpec& spec, const SpElement& alpha, std::size_t n) {
    return truncation_indices(spec, alpha, n).agree();
}

}  // namespace scoh
