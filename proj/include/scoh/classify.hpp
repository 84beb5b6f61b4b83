#pragma once

// Symbolic descriptors for possibly infinite abelian groups and the decision
// rules for strong co-Hopficity. Every answer is a Verdict whose certificate
// can be replayed; where no rule applies the answer is Unknown, never a guess.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scoh/error.hpp"
#include "scoh/finabel.hpp"
#include "scoh/integer.hpp"
#include "scoh/primes.hpp"
#include "scoh/spgroup.hpp"
#include "scoh/tail.hpp"
#include "scoh/verdict.hpp"

namespace scoh {

/// A natural number or infinity (nullopt).
using Rank = std::optional<std::uint64_t>;

inline constexpr Rank kInfinite = std::nullopt;

inline std::string to_string(const Rank& r, std::string_view infinite_word = "inf") {
    return r ? std::to_string(*r) : std::string(infinite_word);
}

inline Rank rank_sum(const Rank& a, const Rank& b) {
    if (!a || !b) return kInfinite;
    return *a + *b;
}

/// Set of primes: everything at odd and/or even positions, plus a finite set.
struct PrimeSupport {
    bool odd = false;
    bool even = false;
    std::set<std::uint64_t> finite;

    static PrimeSupport of(PrimeSelection sel) {
        PrimeSupport s;
        s.odd = sel != PrimeSelection::EvenPositions;
        s.even = sel != PrimeSelection::OddPositions;
        return s;
    }

    bool contains(std::uint64_t p) const {
        if (finite.count(p)) return true;
        auto pos = prime_position(p);
        if (!pos) return false;
        return *pos % 2 == 1 ? odd : even;
    }

    bool empty() const { return !odd && !even && finite.empty(); }

    bool intersects(const PrimeSupport& o) const {
        if ((odd && o.odd) || (even && o.even)) return true;
        for (auto p : finite) {
            if (o.contains(p)) return true;
        }
        for (auto p : o.finite) {
            if (contains(p)) return true;
        }
        return false;
    }

    PrimeSupport united(const PrimeSupport& o) const {
        PrimeSupport s = *this;
        s.odd = s.odd || o.odd;
        s.even = s.even || o.even;
        s.finite.insert(o.finite.begin(), o.finite.end());
        return s;
    }
};

/// Reduced torsion group (+)_p T_p: explicit finite p-groups for some primes,
/// and a tail rule for every other prime of the selection. The tail's n-th
/// component sits at the n-th selected prime.
class TorsionDescriptor {
public:
    TorsionDescriptor() = default;

    TorsionDescriptor(std::map<std::uint64_t, FinAbGroup> explicit_parts, TailRule tail,
                      PrimeSelection primes = PrimeSelection::All)
        : explicit_(std::move(explicit_parts)), tail_(tail), primes_(primes) {
        for (const auto& [p, g] : explicit_) {
            if (!is_prime(p)) throw ValidationError("component key " + std::to_string(p) + " is not prime");
            if (g.prime() != p) {
                throw ValidationError("component at " + std::to_string(p) + " must be a nonzero " + std::to_string(p) +
                                      "-group, got " + g.to_string());
            }
            if (!selection_index(primes, p)) {
                throw ValidationError("prime " + std::to_string(p) + " is not in the " + std::string(to_string(primes)) +
                                      " selection");
            }
        }
    }

    const std::map<std::uint64_t, FinAbGroup>& explicit_parts() const noexcept { return explicit_; }
    const TailRule& tail() const noexcept { return tail_; }
    PrimeSelection primes() const noexcept { return primes_; }

    /// T_p, the zero group when p is outside the support.
    FinAbGroup component(std::uint64_t p) const {
        if (auto it = explicit_.find(p); it != explicit_.end()) return it->second;
        auto n = selection_index(primes_, p);
        if (!n) return FinAbGroup();
        switch (tail_.kind()) {
            case TailRule::Kind::Zero: return FinAbGroup();
            case TailRule::Kind::ConstExp:
                return make_group(std::vector<PrimePower>(tail_.multiplicity(), PrimePower{p, tail_.exponent()}));
            case TailRule::Kind::LinearExp: return make_group({{p, *n}});
        }
        return FinAbGroup();
    }

    bool is_finite() const noexcept { return tail_.kind() == TailRule::Kind::Zero; }
    bool is_zero() const noexcept { return is_finite() && explicit_.empty(); }

    /// Least e with card(T_p) <= p^e for all p; nullopt when unbounded.
    std::optional<std::uint64_t> exponent_bound() const {
        if (!tail_.bounded()) return std::nullopt;
        std::uint64_t e = tail_.log_cardinality_at(0);
        for (const auto& [p, g] : explicit_) e = std::max(e, g.log_cardinality());
        return e;
    }

    PrimeSupport support() const {
        PrimeSupport s;
        if (!is_finite()) s = PrimeSupport::of(primes_);
        for (const auto& [p, g] : explicit_) s.finite.insert(p);
        return s;
    }

    /// The denoted finite group, components in increasing prime order.
    FinAbGroup as_finite_group() const {
        if (!is_finite()) throw PreconditionError("torsion descriptor with a nonzero tail is infinite");
        FinAbGroup g;
        for (const auto& [p, part] : explicit_) g = g.direct_sum(part);
        return g;
    }

    bool operator==(const TorsionDescriptor&) const = default;

private:
    std::map<std::uint64_t, FinAbGroup> explicit_;
    TailRule tail_ = TailRule::zero();
    PrimeSelection primes_ = PrimeSelection::All;
};

/// Q^(r0) (+) (+)_p Z(p^inf)^(rp); rp nullopt means unbounded.
struct DivisibleDescriptor {
    Rank r0 = 0;
    Rank rp = 0;

    bool is_zero() const { return r0 == Rank(0) && rp == Rank(0); }
    bool operator==(const DivisibleDescriptor&) const = default;
};

struct FlagSet {
    bool reduced = false;
    bool adjusted_cotorsion = false;
    bool alg_compact = false;
    bool cotorsion = false;

    bool any() const { return reduced || adjusted_cotorsion || alg_compact || cotorsion; }
    bool cotorsion_class() const { return adjusted_cotorsion || alg_compact || cotorsion; }
    bool operator==(const FlagSet&) const = default;
};

class GroupDescriptor;

struct TorsionShape {
    TorsionDescriptor t;
    bool operator==(const TorsionShape&) const = default;
};
struct TorsionFreeShape {
    bool divisible = false;
    Rank rank = 0;
    bool operator==(const TorsionFreeShape&) const = default;
};
struct DivisibleShape {
    DivisibleDescriptor d;
    bool operator==(const DivisibleShape&) const = default;
};
/// prod_p T_p.
struct ProductShape {
    TorsionDescriptor t;
    bool operator==(const ProductShape&) const = default;
};
struct ERingShape {
    SpGroupSpec spec;
    bool operator==(const ERingShape&) const = default;
};
struct SumShape {
    std::shared_ptr<const GroupDescriptor> left;
    std::shared_ptr<const GroupDescriptor> right;
    bool operator==(const SumShape& o) const;
};

using Shape = std::variant<TorsionShape, TorsionFreeShape, DivisibleShape, ProductShape, ERingShape, SumShape>;

class GroupDescriptor {
public:
    GroupDescriptor(Shape shape, FlagSet flags = {}) : shape_(std::move(shape)), flags_(flags) { validate(); }

    static GroupDescriptor torsion(TorsionDescriptor t, FlagSet f = {}) { return {TorsionShape{std::move(t)}, f}; }
    static GroupDescriptor torsion_free(bool divisible, Rank rank, FlagSet f = {}) {
        return {TorsionFreeShape{divisible, rank}, f};
    }
    static GroupDescriptor divisible(DivisibleDescriptor d, FlagSet f = {}) { return {DivisibleShape{d}, f}; }
    static GroupDescriptor product(TorsionDescriptor t, FlagSet f = {}) { return {ProductShape{std::move(t)}, f}; }
    static GroupDescriptor ering(SpGroupSpec spec, FlagSet f = {}) { return {ERingShape{spec}, f}; }
    static GroupDescriptor sum(GroupDescriptor left, GroupDescriptor right, FlagSet f = {}) {
        return {SumShape{std::make_shared<const GroupDescriptor>(std::move(left)),
                         std::make_shared<const GroupDescriptor>(std::move(right))},
                f};
    }

    const Shape& shape() const noexcept { return shape_; }
    const FlagSet& flags() const noexcept { return flags_; }

    template <class S>
    const S* as() const {
        return std::get_if<S>(&shape_);
    }

    bool is_zero() const {
        if (auto s = as<TorsionShape>()) return s->t.is_zero();
        if (auto s = as<TorsionFreeShape>()) return s->rank == Rank(0);
        if (auto s = as<DivisibleShape>()) return s->d.is_zero();
        if (auto s = as<ProductShape>()) return s->t.is_zero();
        if (as<ERingShape>()) return false;
        const auto& s = std::get<SumShape>(shape_);
        return s.left->is_zero() && s.right->is_zero();
    }

    /// Known to be divisible from its shape.
    bool is_divisible() const {
        if (is_zero()) return true;
        if (as<DivisibleShape>()) return true;
        if (auto s = as<TorsionFreeShape>()) return s->divisible;
        if (auto s = as<SumShape>()) return s->left->is_divisible() && s->right->is_divisible();
        return false;
    }

    /// Known to be reduced, from shape or flags.
    bool is_reduced() const {
        if (flags_.reduced || flags_.adjusted_cotorsion) return true;
        if (is_zero()) return true;
        if (as<TorsionShape>() || as<ProductShape>() || as<ERingShape>()) return true;
        if (auto s = as<SumShape>()) return s->left->is_reduced() && s->right->is_reduced();
        return false;
    }

    /// Known to be a torsion group.
    bool is_torsion() const {
        if (is_zero()) return true;
        if (as<TorsionShape>()) return true;
        if (auto s = as<DivisibleShape>()) return s->d.r0 == Rank(0);
        if (auto s = as<ProductShape>()) return s->t.is_finite();
        if (auto s = as<SumShape>()) return s->left->is_torsion() && s->right->is_torsion();
        return false;
    }

    /// Primes p with T_p != 0.
    PrimeSupport torsion_support() const {
        if (auto s = as<TorsionShape>()) return s->t.support();
        if (as<TorsionFreeShape>()) return {};
        if (auto s = as<DivisibleShape>()) {
            return s->d.rp == Rank(0) ? PrimeSupport{} : PrimeSupport::of(PrimeSelection::All);
        }
        if (auto s = as<ProductShape>()) return s->t.support();
        if (auto s = as<ERingShape>()) return PrimeSupport::of(s->spec.primes());
        const auto& s = std::get<SumShape>(shape_);
        return s.left->torsion_support().united(s.right->torsion_support());
    }

    bool operator==(const GroupDescriptor& o) const { return shape_ == o.shape_ && flags_ == o.flags_; }

private:
    void validate() const {
        if (auto s = as<SumShape>(); s && (!s->left || !s->right)) throw ValidationError("sum needs two summands");
        const bool claims_reduced = flags_.reduced || flags_.adjusted_cotorsion;
        if (claims_reduced && !is_zero()) {
            if (as<DivisibleShape>() || (as<TorsionFreeShape>() && as<TorsionFreeShape>()->divisible)) {
                throw ValidationError("a nonzero divisible group cannot be reduced");
            }
            if (auto s = as<SumShape>()) {
                for (const auto* child : {s->left.get(), s->right.get()}) {
                    if (!child->is_zero() && child->is_divisible()) {
                        throw ValidationError("reduced sum has a nonzero divisible summand");
                    }
                }
            }
        }
        if (flags_.cotorsion_class()) {
            if (as<ERingShape>()) {
                throw ValidationError("an E-ring sp-group with rational quotient is not cotorsion");
            }
            if (auto s = as<TorsionShape>(); s && !s->t.is_finite()) {
                throw ValidationError("a reduced torsion group with infinitely many components is not cotorsion");
            }
        }
    }

    Shape shape_;
    FlagSet flags_;
};

inline bool SumShape::operator==(const SumShape& o) const { return *left == *o.left && *right == *o.right; }

// ---------------------------------------------------------------------------
// Shape-direct rules

namespace detail {

inline std::string tail_tag(const TailRule& t) {
    switch (t.kind()) {
        case TailRule::Kind::Zero: return "zero";
        case TailRule::Kind::ConstExp: return "const";
        case TailRule::Kind::LinearExp: return "linear";
    }
    return "?";
}

}  // namespace detail

/// Reduced torsion: Yes iff card(T_p) <= p^e for a single e and every p.
inline Verdict torsion_is_scoh(const TorsionDescriptor& t) {
    RuleApplication app{std::string(rules::kTorsionOrderBound), Answer::Yes, {}, {}};
    app.facts.emplace_back("tail", detail::tail_tag(t.tail()));
    app.facts.emplace_back("primes", std::string(to_string(t.primes())));
    if (auto e = t.exponent_bound()) {
        app.facts.emplace_back("e", std::to_string(*e));
    } else {
        app.conclusion = Answer::No;
        app.facts.emplace_back("witness", "card(T_{p_n}) = p_n^n for every n");
    }
    return conclude(std::move(app));
}

/// Divisible: Yes iff r0 and all r_p are bounded by one n0.
inline Verdict divisible_is_scoh(const DivisibleDescriptor& d) {
    RuleApplication app{std::string(rules::kDivisibleRankBound), Answer::No, {}, {}};
    app.facts.emplace_back("r0", to_string(d.r0));
    app.facts.emplace_back("rp", to_string(d.rp, "unbounded"));
    if (d.r0 && d.rp) {
        app.conclusion = Answer::Yes;
        app.facts.emplace_back("n0", std::to_string(std::max(*d.r0, *d.rp)));
    }
    return conclude(std::move(app));
}

/// Torsion-free: Yes iff divisible of finite rank.
inline Verdict torsionfree_is_scoh(bool divisible, const Rank& rank) {
    RuleApplication app{std::string(rules::kTorsionFreeDivisible), Answer::No, {}, {}};
    app.facts.emplace_back("divisible", divisible ? "true" : "false");
    app.facts.emplace_back("rank", to_string(rank));
    if (divisible && rank) app.conclusion = Answer::Yes;
    return conclude(std::move(app));
}

// ---------------------------------------------------------------------------
// Hom vanishing

namespace detail {

// Smallest prime, among a short scan and the explicit keys, where both torsion
// descriptors have a nonzero component.
inline std::optional<std::uint64_t> common_component_prime(const TorsionDescriptor& b, const TorsionDescriptor& a) {
    std::set<std::uint64_t> candidates;
    for (const auto& [p, g] : b.explicit_parts()) candidates.insert(p);
    for (const auto& [p, g] : a.explicit_parts()) candidates.insert(p);
    for (std::size_t n = 1; n <= 16; ++n) candidates.insert(nth_prime(n));
    for (auto p : candidates) {
        if (!b.component(p).is_zero() && !a.component(p).is_zero()) return p;
    }
    return std::nullopt;
}

}  // namespace detail

/// Whether Hom(b, a) = 0. No only with an explicit nonzero map.
inline Verdict hom_trivial(const GroupDescriptor& b, const GroupDescriptor& a) {
    if (b.is_zero() || a.is_zero()) {
        return conclude({std::string(rules::kHomZero), Answer::Yes, {}, {{"zero", b.is_zero() ? "source" : "target"}}});
    }
    if (b.is_divisible() && a.is_reduced()) {
        return conclude({std::string(rules::kHomDivisibleToReduced), Answer::Yes, {}, {}});
    }
    if (b.is_torsion() && !b.torsion_support().intersects(a.torsion_support())) {
        // The image of a torsion group lies in the torsion of a, prime by prime.
        return conclude({std::string(rules::kHomDisjointTorsion), Answer::Yes, {}, {}});
    }
    auto tb = b.as<TorsionShape>();
    auto ta = a.as<TorsionShape>();
    if (tb && ta) {
        if (auto p = detail::common_component_prime(tb->t, ta->t)) {
            // Project onto the first cyclic factor of B_p, then send its
            // generator to p^k times the generator of A_p's first factor.
            auto s = tb->t.component(*p).factors().front().e;
            auto t = ta->t.component(*p).factors().front().e;
            auto k = t > s ? t - s : 0;
            RuleApplication app{std::string(rules::kHomWitness), Answer::No, {}, {}};
            app.facts = {{"prime", std::to_string(*p)},
                         {"source_exponent", std::to_string(s)},
                         {"target_exponent", std::to_string(t)},
                         {"multiplier_exponent", std::to_string(k)}};
            return conclude(std::move(app));
        }
    }
    return unknown("no hom-vanishing rule applies");
}

// ---------------------------------------------------------------------------
// Torsion part and torsion-free quotient

/// T(G) as reduced torsion pieces plus the p-rank of its divisible part.
struct TorsionSummary {
    std::vector<TorsionDescriptor> reduced;
    Rank divisible_rp = 0;
};

inline TorsionSummary torsion_summary(const GroupDescriptor& g) {
    TorsionSummary out;
    if (auto s = g.as<TorsionShape>()) out.reduced.push_back(s->t);
    if (auto s = g.as<DivisibleShape>()) out.divisible_rp = s->d.rp;
    if (auto s = g.as<ProductShape>()) out.reduced.push_back(s->t);
    if (auto s = g.as<ERingShape>()) out.reduced.push_back(TorsionDescriptor({}, s->spec.exps(), s->spec.primes()));
    if (auto s = g.as<SumShape>()) {
        auto l = torsion_summary(*s->left);
        auto r = torsion_summary(*s->right);
        out.reduced = std::move(l.reduced);
        out.reduced.insert(out.reduced.end(), r.reduced.begin(), r.reduced.end());
        out.divisible_rp = rank_sum(l.divisible_rp, r.divisible_rp);
    }
    std::erase_if(out.reduced, [](const TorsionDescriptor& t) { return t.is_zero(); });
    return out;
}

inline Verdict torsion_verdict(const GroupDescriptor& g) {
    auto summary = torsion_summary(g);
    Verdict reduced;
    if (summary.reduced.size() <= 1) {
        reduced = torsion_is_scoh(summary.reduced.empty() ? TorsionDescriptor() : summary.reduced.front());
    } else {
        RuleApplication app{std::string(rules::kFiniteTorsionSum), Answer::Yes, {}, {}};
        for (const auto& t : summary.reduced) {
            app.premises.push_back(torsion_is_scoh(t));
            app.conclusion = conjunction({app.conclusion, app.premises.back().answer});
        }
        app.facts.emplace_back("parts", std::to_string(summary.reduced.size()));
        reduced = conclude(std::move(app));
    }
    if (summary.divisible_rp == Rank(0)) return reduced;
    auto div = divisible_is_scoh({0, summary.divisible_rp});
    Answer a = conjunction({reduced.answer, div.answer});
    return conclude({std::string(rules::kReducedDivisibleSplit), a, {std::move(reduced), std::move(div)}, {}});
}

struct QuotientShape {
    bool divisible = true;
    Rank rank = 0;
};

/// G/T, which is always torsion-free.
inline QuotientShape quotient_shape(const GroupDescriptor& g) {
    if (g.as<TorsionShape>()) return {true, 0};
    if (auto s = g.as<TorsionFreeShape>()) return {s->divisible, s->rank};
    if (auto s = g.as<DivisibleShape>()) return {true, s->d.r0};
    if (auto s = g.as<ProductShape>()) {
        // prod T_p / (+) T_p is divisible, of infinite rank once infinitely
        // many T_p are nonzero.
        return {true, s->t.is_finite() ? Rank(0) : kInfinite};
    }
    if (g.as<ERingShape>()) return {true, 1};
    const auto& s = std::get<SumShape>(g.shape());
    auto l = quotient_shape(*s.left);
    auto r = quotient_shape(*s.right);
    return {l.divisible && r.divisible, rank_sum(l.rank, r.rank)};
}

inline Verdict quotient_verdict(const GroupDescriptor& g) {
    auto q = quotient_shape(g);
    auto inner = torsionfree_is_scoh(q.divisible, q.rank);
    Answer a = inner.answer;
    return conclude({std::string(rules::kQuotientShape),
                     a,
                     {std::move(inner)},
                     {{"divisible", q.divisible ? "true" : "false"}, {"rank", to_string(q.rank)}}});
}

// ---------------------------------------------------------------------------
// The group itself

inline Verdict group_is_scoh(const GroupDescriptor& g) {
    if (auto s = g.as<TorsionShape>()) return torsion_is_scoh(s->t);
    if (auto s = g.as<TorsionFreeShape>()) return torsionfree_is_scoh(s->divisible, s->rank);
    if (auto s = g.as<DivisibleShape>()) return divisible_is_scoh(s->d);
    if (auto s = g.as<ProductShape>()) {
        auto t = torsion_is_scoh(s->t);
        Answer a = t.answer;
        return conclude({std::string(rules::kProductOfFinite), a, {std::move(t)}, {{"form", "prod T_p"}}});
    }
    if (g.as<ERingShape>()) {
        return conclude({std::string(rules::kERingFieldQuotient), Answer::Yes, {}, {{"quotient", "Q"}}});
    }

    const auto& sum = std::get<SumShape>(g.shape());
    auto left = group_is_scoh(*sum.left);
    auto right = group_is_scoh(*sum.right);

    if (left.definite() && right.definite()) {
        for (auto hom : {hom_trivial(*sum.right, *sum.left), hom_trivial(*sum.left, *sum.right)}) {
            if (hom.answer != Answer::Yes) continue;
            Answer a = conjunction({left.answer, right.answer});
            return conclude({std::string(rules::kSplitHomTrivial), a, {std::move(hom), left, right}, {}});
        }
    }
    for (const auto* child : {&left, &right}) {
        if (child->answer == Answer::No) {
            return conclude({std::string(rules::kSummandClosure), Answer::No, {*child}, {}});
        }
    }
    auto t = torsion_verdict(g);
    auto q = quotient_verdict(g);
    if (t.answer == Answer::Yes && q.answer == Answer::Yes) {
        return conclude({std::string(rules::kTorsionAndQuotient), Answer::Yes, {std::move(t), std::move(q)}, {}});
    }
    if (g.flags().adjusted_cotorsion && g.is_reduced()) {
        Answer a = t.answer;
        return conclude({std::string(rules::kReducedAdjustedCotorsion), a, {std::move(t)}, {}});
    }
    return unknown("genuinely mixed, no rule applies");
}

inline Verdict is_uniformly_scoh_desc(const GroupDescriptor& g) {
    auto group = group_is_scoh(g);
    if (group.answer == Answer::No) {
        return conclude({std::string(rules::kUniformImpliesScoh), Answer::No, {std::move(group)}, {}});
    }
    if (group.answer == Answer::Unknown) return unknown("strong co-Hopficity undecided");
    auto t = torsion_verdict(g);
    Answer a = t.answer;
    return conclude({std::string(rules::kUniformIffTorsion), a, {std::move(group), std::move(t)}, {}});
}

namespace detail {

inline std::optional<std::uint64_t> bound_of(const GroupDescriptor& g) {
    if (auto s = g.as<TorsionShape>()) return s->t.exponent_bound();
    if (auto s = g.as<TorsionFreeShape>()) {
        if (!s->divisible) return std::nullopt;
        return s->rank;
    }
    if (auto s = g.as<DivisibleShape>()) {
        // Q^(r0) plus a torsion part of p-rank at most n0, composed by m + n.
        if (!s->d.r0 || !s->d.rp) return std::nullopt;
        return 2 * std::max(*s->d.r0, *s->d.rp);
    }
    if (auto s = g.as<ProductShape>()) return s->t.exponent_bound();
    if (auto s = g.as<ERingShape>()) {
        if (!s->spec.exps().bounded()) return std::nullopt;
        return s->spec.exps().exponent();
    }
    const auto& sum = std::get<SumShape>(g.shape());
    if (hom_trivial(*sum.right, *sum.left).answer != Answer::Yes &&
        hom_trivial(*sum.left, *sum.right).answer != Answer::Yes) {
        return std::nullopt;
    }
    auto l = bound_of(*sum.left);
    auto r = bound_of(*sum.right);
    if (!l || !r) return std::nullopt;
    return *l + *r;
}

}  // namespace detail

/// An Sco-H bound m (phi^m(G) = phi^(m+1)(G) for all phi), not necessarily
/// the least. nullopt when no composition rule covers the shape.
inline std::optional<std::uint64_t> scoh_bound(const GroupDescriptor& g) {
    if (is_uniformly_scoh_desc(g).answer != Answer::Yes) {
        throw PreconditionError("scoh_bound needs a uniformly strongly co-Hopfian descriptor");
    }
    return detail::bound_of(g);
}

/// p^((m+1)^2): the largest card(T_p) compatible with Sco-H bound m.
inline Integer necessity_card_bound(std::uint64_t m, std::uint64_t p) { return ipow(p, (m + 1) * (m + 1)); }

/// Given cotorsion and Sco-H, the group is algebraically compact.
inline Verdict cotorsion_infer(const GroupDescriptor& g) {
    const auto& f = g.flags();
    if (!f.cotorsion && !f.adjusted_cotorsion) throw PreconditionError("missing premise: cotorsion flag");
    auto group = group_is_scoh(g);
    if (group.answer != Answer::Yes) {
        throw PreconditionError("missing premise: strongly co-Hopfian (verdict " + std::string(to_string(group.answer)) +
                                ")");
    }
    Verdict v;
    v.answer = Answer::Yes;
    if (g.as<ProductShape>()) {
        v.certificate.push_back({std::string(rules::kProductCompact), Answer::Yes, {}, {{"form", "prod T_p"}}});
    }
    v.certificate.push_back({std::string(rules::kCotorsionCompact),
                             Answer::Yes,
                             {std::move(group)},
                             {{"flag", f.cotorsion ? "cotorsion" : "adjusted-cotorsion"}}});
    return v;
}

}  // namespace scoh
