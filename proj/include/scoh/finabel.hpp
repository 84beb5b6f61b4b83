#pragma once

// Finite abelian groups in primary cyclic decomposition, their homomorphisms
// as congruence-constrained integer matrices, and subgroups in a canonical
// lattice form. Everything here is exact; see enumerate.hpp for the dense
// engine used by exhaustive searches.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scoh/error.hpp"
#include "scoh/integer.hpp"

namespace scoh {

struct PrimePower {
    std::uint64_t p = 0;
    std::uint64_t e = 0;

    auto operator<=>(const PrimePower&) const = default;
};

/// Direct sum of cyclic groups Z(p^e), in the order given. No factors is the
/// zero group.
class FinAbGroup {
public:
    FinAbGroup() = default;

    explicit FinAbGroup(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
        orders_.reserve(factors_.size());
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            const auto& [p, e] = factors_[j];
            if (!is_prime(p)) {
                throw ValidationError("factor " + std::to_string(j) + ": " + std::to_string(p) +
                                      " is not prime");
            }
            if (e < 1) {
                throw ValidationError("factor " + std::to_string(j) + ": exponent of Z(" +
                                      std::to_string(p) + "^" + std::to_string(e) + ") must be >= 1");
            }
            orders_.push_back(ipow(p, e));
        }
    }

    std::span<const PrimePower> factors() const noexcept { return factors_; }
    std::size_t factor_count() const noexcept { return factors_.size(); }
    std::span<const Integer> orders() const noexcept { return orders_; }
    const Integer& order(std::size_t j) const { return orders_.at(j); }
    bool is_zero() const noexcept { return factors_.empty(); }

    Integer cardinality() const {
        Integer c = 1;
        for (const auto& o : orders_) c *= o;
        return c;
    }

    /// The sole prime of a nonzero p-group.
    std::optional<std::uint64_t> prime() const {
        if (factors_.empty()) return std::nullopt;
        for (const auto& f : factors_) {
            if (f.p != factors_.front().p) return std::nullopt;
        }
        return factors_.front().p;
    }

    bool is_p_group() const { return prime().has_value(); }

    bool is_homocyclic() const {
        if (!is_p_group()) return false;
        for (const auto& f : factors_) {
            if (f.e != factors_.front().e) return false;
        }
        return true;
    }

    /// Sum of exponents; card = p^e for a p-group.
    std::uint64_t log_cardinality() const noexcept {
        std::uint64_t e = 0;
        for (const auto& f : factors_) e += f.e;
        return e;
    }

    std::uint64_t max_exponent() const noexcept {
        std::uint64_t b = 0;
        for (const auto& f : factors_) b = std::max(b, f.e);
        return b;
    }

    /// Same group with factors sorted by (p, e).
    FinAbGroup normalized() const {
        auto sorted = factors_;
        std::sort(sorted.begin(), sorted.end());
        return FinAbGroup(std::move(sorted));
    }

    FinAbGroup direct_sum(const FinAbGroup& other) const {
        auto all = factors_;
        all.insert(all.end(), other.factors_.begin(), other.factors_.end());
        return FinAbGroup(std::move(all));
    }

    std::string to_string() const {
        if (factors_.empty()) return "0";
        std::string s;
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            if (j != 0) s += "+";
            s += "Z(" + orders_[j].str() + ")";
        }
        return s;
    }

    bool operator==(const FinAbGroup& other) const { return factors_ == other.factors_; }

private:
    std::vector<PrimePower> factors_;
    std::vector<Integer> orders_;
};

inline FinAbGroup make_group(std::vector<PrimePower> factors) { return FinAbGroup(std::move(factors)); }

/// Element of a FinAbGroup; coords[j] is reduced into [0, order_j).
struct GroupElement {
    std::vector<Integer> coords;

    bool is_zero() const {
        for (const auto& c : coords) {
            if (c != 0) return false;
        }
        return true;
    }

    bool operator==(const GroupElement&) const = default;
};

inline GroupElement make_element(const FinAbGroup& g, std::vector<Integer> coords) {
    if (coords.size() != g.factor_count()) {
        throw ValidationError("element has " + std::to_string(coords.size()) + " coordinates, group has " +
                              std::to_string(g.factor_count()) + " factors");
    }
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j] = floor_mod(coords[j], g.order(j));
    return GroupElement{std::move(coords)};
}

using IntMatrix = std::vector<std::vector<Integer>>;

/// Homomorphism src -> tgt. Entry (i, j) is the i-th target coordinate of the
/// image of the j-th source generator.
class Homomorphism {
public:
    Homomorphism() = default;  // the endomorphism of the zero group

    Homomorphism(FinAbGroup source, FinAbGroup target, const IntMatrix& m)
        : source_(std::move(source)), target_(std::move(target)) {
        const std::size_t rows = target_.factor_count();
        const std::size_t cols = source_.factor_count();
        if (m.size() != rows) {
            throw ValidationError("matrix has " + std::to_string(m.size()) + " rows, target has " +
                                  std::to_string(rows) + " factors");
        }
        entries_.reserve(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (m[i].size() != cols) {
                throw ValidationError("matrix row " + std::to_string(i) + " has " + std::to_string(m[i].size()) +
                                      " entries, source has " + std::to_string(cols) + " factors");
            }
            for (std::size_t j = 0; j < cols; ++j) {
                const Integer& oi = target_.order(i);
                Integer divisor = oi / boost::multiprecision::gcd(oi, source_.order(j));
                Integer c = floor_mod(m[i][j], oi);
                if (c % divisor != 0) {
                    throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                          m[i][j].str() + " must be divisible by " + divisor.str());
                }
                entries_.push_back(std::move(c));
            }
        }
    }

    static Homomorphism identity(const FinAbGroup& g) { return scalar(g, 1); }

    static Homomorphism zero(const FinAbGroup& source, const FinAbGroup& target) {
        return Homomorphism(source, target,
                            IntMatrix(target.factor_count(), std::vector<Integer>(source.factor_count(), 0)));
    }

    /// Multiplication by k (only meaningful as an endomorphism).
    static Homomorphism scalar(const FinAbGroup& g, const Integer& k) {
        IntMatrix m(g.factor_count(), std::vector<Integer>(g.factor_count(), 0));
        for (std::size_t j = 0; j < g.factor_count(); ++j) m[j][j] = k;
        return Homomorphism(g, g, m);
    }

    const FinAbGroup& source() const noexcept { return source_; }
    const FinAbGroup& target() const noexcept { return target_; }
    bool is_endomorphism() const { return source_ == target_; }

    const Integer& entry(std::size_t i, std::size_t j) const {
        return entries_.at(i * source_.factor_count() + j);
    }

    IntMatrix matrix() const {
        IntMatrix m(target_.factor_count(), std::vector<Integer>(source_.factor_count()));
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = entry(i, j);
        }
        return m;
    }

    /// Image of the j-th source generator.
    GroupElement column(std::size_t j) const {
        GroupElement x;
        x.coords.reserve(target_.factor_count());
        for (std::size_t i = 0; i < target_.factor_count(); ++i) x.coords.push_back(entry(i, j));
        return x;
    }

    GroupElement apply(const GroupElement& x) const {
        if (x.coords.size() != source_.factor_count()) {
            throw ValidationError("element does not belong to the source group");
        }
        GroupElement y;
        y.coords.assign(target_.factor_count(), 0);
        for (std::size_t i = 0; i < target_.factor_count(); ++i) {
            Integer acc = 0;
            for (std::size_t j = 0; j < source_.factor_count(); ++j) acc += entry(i, j) * x.coords[j];
            y.coords[i] = floor_mod(acc, target_.order(i));
        }
        return y;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < target_.factor_count(); ++i) {
            if (i != 0) s += ",";
            s += "[";
            for (std::size_t j = 0; j < source_.factor_count(); ++j) {
                if (j != 0) s += ",";
                s += entry(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

    bool operator==(const Homomorphism&) const = default;

private:
    FinAbGroup source_;
    FinAbGroup target_;
    std::vector<Integer> entries_;
};

inline Homomorphism validate_hom(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target) {
    return Homomorphism(source, target, m);
}

/// f after g.
inline Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
    if (!(g.target() == f.source())) {
        throw ValidationError("cannot compose: " + g.target().to_string() + " is not " + f.source().to_string());
    }
    const std::size_t rows = f.target().factor_count();
    const std::size_t inner = f.source().factor_count();
    const std::size_t cols = g.source().factor_count();
    IntMatrix m(rows, std::vector<Integer>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            Integer acc = 0;
            for (std::size_t t = 0; t < inner; ++t) acc += f.entry(i, t) * g.entry(t, j);
            m[i][j] = acc;
        }
    }
    return Homomorphism(g.source(), f.target(), m);
}

inline Homomorphism power(const Homomorphism& f, std::size_t n) {
    if (!f.is_endomorphism()) throw ValidationError("power of a non-endomorphism");
    Homomorphism result = Homomorphism::identity(f.source());
    for (std::size_t k = 0; k < n; ++k) result = compose(f, result);
    return result;
}

namespace detail {

// Lower-triangular Hermite basis (row-major k x k) of the lattice spanned by
// `work` together with the relation vectors orders[r] * e_r. Diagonal entries
// are positive and divide orders[r]; entries left of the diagonal lie in
// [0, diagonal).
inline std::vector<Integer> hermite_basis(std::span<const Integer> orders, std::vector<std::vector<Integer>> work) {
    const std::size_t k = orders.size();
    for (auto& w : work) {
        for (std::size_t r = 0; r < k; ++r) w[r] = floor_mod(w[r], orders[r]);
    }
    std::vector<std::vector<Integer>> basis(k);
    for (std::size_t i = 0; i < k; ++i) {
        // Column i starts as the relation vector; it absorbs row i of every
        // remaining generator through unimodular 2x2 column operations. Rows
        // below i may be reduced modulo their order because those relation
        // vectors have not been consumed yet.
        std::vector<Integer> pivot(k, 0);
        pivot[i] = orders[i];
        for (auto& w : work) {
            if (w[i] == 0) continue;
            auto [g, x, y] = extended_gcd(pivot[i], w[i]);
            Integer a = w[i] / g;
            Integer b = pivot[i] / g;
            for (std::size_t r = i; r < k; ++r) {
                Integer pr = x * pivot[r] + y * w[r];
                Integer wr = b * w[r] - a * pivot[r];
                if (r > i) {
                    pr = floor_mod(pr, orders[r]);
                    wr = floor_mod(wr, orders[r]);
                }
                pivot[r] = std::move(pr);
                w[r] = std::move(wr);
            }
        }
        basis[i] = std::move(pivot);
        std::erase_if(work, [](const std::vector<Integer>& w) {
            return std::all_of(w.begin(), w.end(), [](const Integer& v) { return v == 0; });
        });
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Integer q = floor_div(basis[j][i], basis[i][i]);
            if (q == 0) continue;
            for (std::size_t r = i; r < k; ++r) basis[j][r] -= q * basis[i][r];
        }
    }
    std::vector<Integer> h(k * k, 0);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) h[r * k + c] = basis[c][r];
    }
    return h;
}

}  // namespace detail

/// Subgroup of a finite abelian group, stored as the Hermite basis of its
/// preimage lattice in Z^k. Two subgroups are equal iff their bases are.
class Subgroup {
public:
    static Subgroup generated_by(const FinAbGroup& ambient, std::span<const GroupElement> generators) {
        std::vector<std::vector<Integer>> cols;
        cols.reserve(generators.size());
        for (const auto& g : generators) {
            if (g.coords.size() != ambient.factor_count()) {
                throw ValidationError("generator does not belong to " + ambient.to_string());
            }
            cols.push_back(g.coords);
        }
        return Subgroup(ambient, detail::hermite_basis(ambient.orders(), std::move(cols)));
    }

    static Subgroup whole(const FinAbGroup& ambient) {
        std::vector<GroupElement> gens;
        for (std::size_t j = 0; j < ambient.factor_count(); ++j) {
            GroupElement e{std::vector<Integer>(ambient.factor_count(), 0)};
            e.coords[j] = 1;
            gens.push_back(std::move(e));
        }
        return generated_by(ambient, gens);
    }

    static Subgroup zero(const FinAbGroup& ambient) { return generated_by(ambient, {}); }

    const FinAbGroup& ambient() const noexcept { return ambient_; }
    const std::vector<Integer>& canonical_form() const noexcept { return basis_; }

    Integer cardinality() const {
        Integer c = 1;
        const std::size_t k = ambient_.factor_count();
        for (std::size_t i = 0; i < k; ++i) c *= ambient_.order(i) / basis_[i * k + i];
        return c;
    }

    /// Nonzero columns of the canonical basis, reduced into the ambient group.
    std::vector<GroupElement> generators() const {
        const std::size_t k = ambient_.factor_count();
        std::vector<GroupElement> gens;
        for (std::size_t c = 0; c < k; ++c) {
            GroupElement x;
            x.coords.reserve(k);
            for (std::size_t r = 0; r < k; ++r) x.coords.push_back(floor_mod(basis_[r * k + c], ambient_.order(r)));
            if (!x.is_zero()) gens.push_back(std::move(x));
        }
        return gens;
    }

    bool contains(const GroupElement& x) const {
        const std::size_t k = ambient_.factor_count();
        if (x.coords.size() != k) throw ValidationError("element does not belong to " + ambient_.to_string());
        std::vector<Integer> v = x.coords;
        for (std::size_t i = 0; i < k; ++i) {
            const Integer& d = basis_[i * k + i];
            if (v[i] % d != 0) return false;
            Integer q = v[i] / d;
            if (q == 0) continue;
            for (std::size_t r = i; r < k; ++r) v[r] -= q * basis_[r * k + i];
        }
        return true;
    }

    bool operator==(const Subgroup&) const = default;

private:
    Subgroup(FinAbGroup ambient, std::vector<Integer> basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {}

    FinAbGroup ambient_;
    std::vector<Integer> basis_;
};

inline bool subgroup_equal(const Subgroup& a, const Subgroup& b) {
    if (!(a.ambient() == b.ambient())) {
        throw ValidationError("subgroups of different groups: " + a.ambient().to_string() + " vs " +
                              b.ambient().to_string());
    }
    return a == b;
}

/// Subgroup generated by a and b.
inline Subgroup join(const Subgroup& a, const Subgroup& b) {
    if (!(a.ambient() == b.ambient())) throw ValidationError("join of subgroups of different groups");
    auto gens = a.generators();
    auto more = b.generators();
    gens.insert(gens.end(), more.begin(), more.end());
    return Subgroup::generated_by(a.ambient(), gens);
}

inline bool is_contained(const Subgroup& a, const Subgroup& b) { return join(a, b) == b; }

/// f(s) as a subgroup of f.target().
inline Subgroup image_of(const Homomorphism& f, const Subgroup& s) {
    if (!(s.ambient() == f.source())) throw ValidationError("subgroup is not in the source of the map");
    std::vector<GroupElement> gens;
    for (const auto& g : s.generators()) gens.push_back(f.apply(g));
    return Subgroup::generated_by(f.target(), gens);
}

inline Subgroup image(const Homomorphism& f) {
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < f.source().factor_count(); ++j) gens.push_back(f.column(j));
    return Subgroup::generated_by(f.target(), gens);
}

/// {x : f(x) = 0}, from a column echelon form of [M | diag(target orders)]
/// stacked over [I | 0]: the columns whose upper part vanishes carry the
/// kernel lattice in their lower part.
inline Subgroup kernel(const Homomorphism& f) {
    const std::size_t ks = f.source().factor_count();
    const std::size_t kt = f.target().factor_count();
    std::vector<std::vector<Integer>> cols;
    for (std::size_t j = 0; j < ks; ++j) {
        std::vector<Integer> c(kt + ks, 0);
        for (std::size_t i = 0; i < kt; ++i) c[i] = f.entry(i, j);
        c[kt + j] = 1;
        cols.push_back(std::move(c));
    }
    for (std::size_t r = 0; r < kt; ++r) {
        std::vector<Integer> c(kt + ks, 0);
        c[r] = f.target().order(r);
        cols.push_back(std::move(c));
    }
    std::vector<bool> is_pivot(cols.size(), false);
    for (std::size_t i = 0; i < kt; ++i) {
        std::size_t pivot = cols.size();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (is_pivot[c] || cols[c][i] == 0) continue;
            if (pivot == cols.size()) {
                pivot = c;
                continue;
            }
            auto& p = cols[pivot];
            auto& w = cols[c];
            auto [g, x, y] = extended_gcd(p[i], w[i]);
            Integer a = w[i] / g;
            Integer b = p[i] / g;
            for (std::size_t r = 0; r < kt + ks; ++r) {
                Integer pr = x * p[r] + y * w[r];
                Integer wr = b * w[r] - a * p[r];
                p[r] = std::move(pr);
                w[r] = std::move(wr);
            }
        }
        if (pivot != cols.size()) is_pivot[pivot] = true;
    }
    std::vector<GroupElement> gens;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Integer> x(cols[c].begin() + static_cast<std::ptrdiff_t>(kt), cols[c].end());
        gens.push_back(make_element(f.source(), std::move(x)));
    }
    return Subgroup::generated_by(f.source(), gens);
}

/// image(f^0) = G, image(f^1), ..., up to and including the first repeat.
inline std::vector<Subgroup> image_chain(const Homomorphism& f) {
    if (!f.is_endomorphism()) throw ValidationError("image chain of a non-endomorphism");
    std::vector<Subgroup> chain{Subgroup::whole(f.source())};
    while (true) {
        Subgroup next = image_of(f, chain.back());
        bool stable = next == chain.back();
        chain.push_back(std::move(next));
        if (stable) return chain;
    }
}

/// Least n >= 0 with image(f^n) = image(f^{n+1}), where f^0 is the identity.
inline std::size_t stab_index(const Homomorphism& f) { return image_chain(f).size() - 2; }

/// Whether image(f^n) + kernel(f^n) is the whole source group.
inline bool sum_decomposition_check(const Homomorphism& f, std::size_t n) {
    Homomorphism fn = power(f, n);
    return join(image(fn), kernel(fn)) == Subgroup::whole(f.source());
}

}  // namespace scoh
