#pragma once

// E-ring sp-groups: T = (+) Z(p_i^e_i) <= G <= prod Z(p_i^e_i) with G/T = Q.
// An element is a rational a/b together with finitely many explicit
// components; every other component is a * b^-1 mod p_i^e_i. Endomorphisms are
// multiplications, and their stabilization index has a closed form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scoh/error.hpp"
#include "scoh/finabel.hpp"
#include "scoh/integer.hpp"
#include "scoh/primes.hpp"
#include "scoh/tail.hpp"
#include "scoh/verdict.hpp"

namespace scoh {

/// Primes p_1 < p_2 < ... from a selection, with exponents e_i = c or e_i = i.
class SpGroupSpec {
public:
    SpGroupSpec() : SpGroupSpec(PrimeSelection::All, TailRule::constant(1)) {}

    SpGroupSpec(PrimeSelection primes, TailRule exps) : primes_(primes), exps_(exps) {
        if (exps.kind() == TailRule::Kind::Zero) throw ValidationError("sp-group exponents must be >= 1");
        if (exps.kind() == TailRule::Kind::ConstExp && exps.multiplicity() != 1) {
            throw ValidationError("sp-group components are cyclic; multiplicity must be 1");
        }
    }

    PrimeSelection primes() const noexcept { return primes_; }
    const TailRule& exps() const noexcept { return exps_; }

    std::uint64_t prime(std::size_t i) const { return selected_prime(primes_, i); }

    std::uint64_t exponent(std::size_t i) const {
        if (i == 0) throw PreconditionError("sequence indices start at 1");
        return exps_.kind() == TailRule::Kind::LinearExp ? i : exps_.exponent();
    }

    Integer modulus(std::size_t i) const { return ipow(prime(i), exponent(i)); }

    std::optional<std::size_t> index_of(std::uint64_t p) const { return selection_index(primes_, p); }

    bool operator==(const SpGroupSpec&) const = default;

private:
    PrimeSelection primes_;
    TailRule exps_;
};

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

struct SpElement {
    Rational q;
    std::map<std::size_t, Integer> corrections;

    bool is_zero() const { return q == 0 && corrections.empty(); }

    bool operator==(const SpElement&) const = default;
};

namespace detail {

inline std::vector<std::uint64_t> prime_divisors_checked(const Integer& n, const char* what) {
    Integer m = n < 0 ? Integer(-n) : n;
    if (m == 0) return {};
    auto small = to_u64(m);
    if (!small) throw ValidationError(std::string(what) + " " + m.str() + " is too large to factor");
    return prime_divisors(*small);
}

// Indices of selected primes dividing n.
inline std::vector<std::size_t> selected_divisor_indices(const SpGroupSpec& spec, const Integer& n, const char* what) {
    std::vector<std::size_t> out;
    for (auto p : prime_divisors_checked(n, what)) {
        if (auto i = spec.index_of(p)) out.push_back(*i);
    }
    return out;
}

inline std::optional<Integer> default_component(const SpGroupSpec& spec, const Rational& q, std::size_t i) {
    Integer m = spec.modulus(i);
    auto inv = mod_inverse(denominator_of(q), m);
    if (!inv) return std::nullopt;
    return floor_mod(numerator_of(q) * *inv, m);
}

}  // namespace detail

/// Validates and canonicalizes: residues are reduced, every index whose prime
/// divides the denominator must be given, and entries equal to the default are
/// dropped.
inline SpElement make_sp_element(const SpGroupSpec& spec, Rational q, std::map<std::size_t, Integer> corrections = {}) {
    SpElement x{std::move(q), {}};
    for (auto i : detail::selected_divisor_indices(spec, denominator_of(x.q), "denominator")) {
        if (!corrections.count(i)) {
            throw ValidationError("component " + std::to_string(i) + " is undefined: p_" + std::to_string(i) + " = " +
                                  std::to_string(spec.prime(i)) + " divides the denominator " +
                                  denominator_of(x.q).str() + "; give it explicitly");
        }
    }
    for (auto& [i, r] : corrections) {
        if (i == 0) throw ValidationError("component indices start at 1");
        Integer v = floor_mod(r, spec.modulus(i));
        auto def = detail::default_component(spec, x.q, i);
        if (def && *def == v) continue;
        x.corrections.emplace(i, std::move(v));
    }
    return x;
}

/// The ring identity z = (1, 1, 1, ...).
inline SpElement sp_identity() { return SpElement{Rational(1), {}}; }
inline SpElement sp_zero() { return SpElement{Rational(0), {}}; }
inline SpElement sp_scalar(const Integer& k) { return SpElement{Rational(k), {}}; }

/// The torsion element with the given components and zero elsewhere.
inline SpElement sp_torsion(const SpGroupSpec& spec, std::map<std::size_t, Integer> components) {
    return make_sp_element(spec, Rational(0), std::move(components));
}

inline Integer component(const SpElement& x, const SpGroupSpec& spec, std::size_t i) {
    if (i == 0) throw PreconditionError("component indices start at 1");
    if (auto it = x.corrections.find(i); it != x.corrections.end()) return it->second;
    auto def = detail::default_component(spec, x.q, i);
    if (!def) throw ValidationError("element has no component at index " + std::to_string(i));
    return *def;
}

namespace detail {

template <class Op>
SpElement componentwise(const SpElement& x, const SpElement& y, const SpGroupSpec& spec, Rational q, Op op) {
    // Primes of the new denominator divide the old ones, so the union of
    // supports already covers every mandatory index.
    std::map<std::size_t, Integer> comps;
    for (const auto* e : {&x, &y}) {
        for (const auto& [i, r] : e->corrections) {
            if (!comps.count(i)) comps.emplace(i, op(component(x, spec, i), component(y, spec, i)));
        }
    }
    return make_sp_element(spec, std::move(q), std::move(comps));
}

}  // namespace detail

inline SpElement elem_add(const SpElement& x, const SpElement& y, const SpGroupSpec& spec) {
    return detail::componentwise(x, y, spec, x.q + y.q, [](const Integer& a, const Integer& b) { return a + b; });
}

inline SpElement elem_neg(const SpElement& x, const SpGroupSpec& spec) {
    std::map<std::size_t, Integer> comps;
    for (const auto& [i, r] : x.corrections) comps.emplace(i, -r);
    return make_sp_element(spec, -x.q, std::move(comps));
}

inline SpElement elem_mul(const SpElement& x, const SpElement& y, const SpGroupSpec& spec) {
    return detail::componentwise(x, y, spec, x.q * y.q, [](const Integer& a, const Integer& b) { return a * b; });
}

/// p-adic valuation of a component; nullopt stands for infinity (component 0).
using Valuation = std::optional<std::uint64_t>;

inline Valuation valuation(const SpElement& x, const SpGroupSpec& spec, std::size_t i) {
    Integer c = component(x, spec, i);
    if (c == 0) return std::nullopt;
    return valuation_of(c, spec.prime(i));
}

/// Least n with a^n Z(p^e) = a^(n+1) Z(p^e) where v_p(a) = v.
inline std::uint64_t component_step(Valuation v, std::uint64_t e) {
    if (!v) return 1;
    if (*v == 0) return 0;
    return (e + *v - 1) / *v;
}

struct ComponentStep {
    Valuation valuation;
    std::uint64_t step = 0;

    bool operator==(const ComponentStep&) const = default;
};

struct StabReport {
    enum class Case { TorsionImage, EventualAutomorphism };

    std::uint64_t index = 0;
    Case case_tag = Case::EventualAutomorphism;
    std::map<std::size_t, ComponentStep> per_prime;
};

inline std::string_view to_string(StabReport::Case c) {
    return c == StabReport::Case::TorsionImage ? "torsion-image" : "eventual-automorphism";
}

/// Stabilization index of multiplication by alpha, from the finitely many
/// indices where alpha's component is not a unit.
inline StabReport stab_index_mul(const SpElement& alpha, const SpGroupSpec& spec) {
    StabReport r;
    std::vector<std::size_t> exceptional;
    for (const auto& [i, c] : alpha.corrections) exceptional.push_back(i);
    const Integer a = numerator_of(alpha.q);
    if (a == 0) {
        // Past the support every component is 0, each contributing step 1.
        r.case_tag = StabReport::Case::TorsionImage;
        r.index = 1;
    } else {
        r.case_tag = StabReport::Case::EventualAutomorphism;
        for (auto i : detail::selected_divisor_indices(spec, a, "numerator")) exceptional.push_back(i);
    }
    for (auto i : exceptional) {
        if (r.per_prime.count(i)) continue;
        ComponentStep s;
        s.valuation = valuation(alpha, spec, i);
        s.step = component_step(s.valuation, spec.exponent(i));
        r.index = std::max(r.index, s.step);
        r.per_prime.emplace(i, s);
    }
    return r;
}

/// Step of component i whether or not it is exceptional.
inline std::uint64_t step_at(const StabReport& r, std::size_t i) {
    if (auto it = r.per_prime.find(i); it != r.per_prime.end()) return it->second.step;
    return r.case_tag == StabReport::Case::TorsionImage ? 1 : 0;
}

inline Verdict is_uniformly_scoh_sp(const SpGroupSpec& spec, std::size_t witnesses = 5) {
    RuleApplication app;
    if (spec.exps().bounded()) {
        app.rule = rules::kBoundedExponents;
        app.conclusion = Answer::Yes;
        app.facts = {{"bound", std::to_string(spec.exps().exponent())}};
        return conclude(std::move(app));
    }
    app.rule = rules::kUnboundedWitnesses;
    app.conclusion = Answer::No;
    for (std::size_t n = 1; n <= witnesses; ++n) {
        auto r = stab_index_mul(sp_scalar(spec.prime(n)), spec);
        app.facts.emplace_back("witness." + std::to_string(n), std::to_string(r.index));
    }
    return conclude(std::move(app));
}

/// First N components: the group (+)_{i<=N} Z(p_i^e_i) and the projection.
class SpTruncation {
public:
    SpTruncation(SpGroupSpec spec, std::size_t n) : spec_(spec), n_(n) {
        if (n == 0) throw PreconditionError("truncation needs N >= 1");
        std::vector<PrimePower> f;
        for (std::size_t i = 1; i <= n; ++i) f.push_back({spec.prime(i), spec.exponent(i)});
        group_ = make_group(std::move(f));
    }

    const FinAbGroup& group() const noexcept { return group_; }
    std::size_t size() const noexcept { return n_; }

    GroupElement embed(const SpElement& x) const {
        std::vector<Integer> c;
        for (std::size_t i = 1; i <= n_; ++i) c.push_back(component(x, spec_, i));
        return make_element(group_, std::move(c));
    }

    Homomorphism multiplication(const SpElement& alpha) const {
        IntMatrix m(n_, std::vector<Integer>(n_, 0));
        for (std::size_t i = 0; i < n_; ++i) m[i][i] = component(alpha, spec_, i + 1);
        return Homomorphism(group_, group_, std::move(m));
    }

private:
    SpGroupSpec spec_;
    std::size_t n_;
    FinAbGroup group_;
};

inline SpTruncation truncate(const SpGroupSpec& spec, std::size_t n) { return SpTruncation(spec, n); }

/// First index whose component is nonzero, i.e. where x fails to be divisible
/// by p_i^e_i. nullopt only for the zero element.
inline std::optional<std::size_t> ulm_witness(const SpElement& x, const SpGroupSpec& spec) {
    if (x.is_zero()) return std::nullopt;
    for (std::size_t i = 1;; ++i) {
        if (component(x, spec, i) != 0) return i;
    }
}

/// Whether x lies in every nG. In the model only 0 does.
inline bool ulm_is_zero(const SpElement& x, const SpGroupSpec& spec) { return !ulm_witness(x, spec).has_value(); }

inline std::string to_string(const SpElement& x) {
    std::string s = "q=" + x.q.str();
    for (const auto& [i, r] : x.corrections) s += " @" + std::to_string(i) + "=" + r.str();
    return s;
}

}  // namespace scoh
