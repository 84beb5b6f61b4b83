#pragma once

// Exhaustive endomorphism enumeration. Endomorphisms of a FinAbGroup are
// numbered by a row-major odometer over the admissible residues of each
// matrix entry (the last entry varies fastest), so position order is the
// lexicographic order of the flattened matrices.
//
// Small groups (cardinality <= DenseGroup::kMaxCardinality) are scanned with a
// dense engine: elements are mixed-radix codes, a map is its table of element
// images, and subgroups are bitmasks. Larger groups fall back to the exact
// lattice route in finabel.hpp.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

#include "scoh/error.hpp"
#include "scoh/finabel.hpp"

namespace scoh {

inline constexpr std::uint64_t kDefaultEndomorphismCap = std::uint64_t{1} << 26;

/// Admissible residues for one matrix entry: the multiples of `step` below the
/// target order, `count` of them.
struct EntryRange {
    Integer step;
    Integer count;
};

class EndomorphismSpace {
public:
    explicit EndomorphismSpace(FinAbGroup group) : group_(std::move(group)), count_(1) {
        const std::size_t k = group_.factor_count();
        ranges_.reserve(k * k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                Integer g = boost::multiprecision::gcd(group_.order(i), group_.order(j));
                ranges_.push_back({group_.order(i) / g, g});
                count_ *= g;
            }
        }
    }

    const FinAbGroup& group() const noexcept { return group_; }
    const Integer& count() const noexcept { return count_; }
    std::span<const EntryRange> ranges() const noexcept { return ranges_; }

    /// Odometer digits of a position, one per matrix entry.
    std::vector<Integer> digits_at(Integer position) const {
        if (position < 0 || position >= count_) throw PreconditionError("endomorphism position out of range");
        std::vector<Integer> digits(ranges_.size());
        for (std::size_t p = ranges_.size(); p-- > 0;) {
            digits[p] = position % ranges_[p].count;
            position /= ranges_[p].count;
        }
        return digits;
    }

    Homomorphism at(const Integer& position) const {
        const std::size_t k = group_.factor_count();
        auto digits = digits_at(position);
        IntMatrix m(k, std::vector<Integer>(k));
        for (std::size_t p = 0; p < digits.size(); ++p) m[p / k][p % k] = digits[p] * ranges_[p].step;
        return Homomorphism(group_, group_, m);
    }

private:
    FinAbGroup group_;
    std::vector<EntryRange> ranges_;
    Integer count_;
};

inline Integer endomorphism_count(const FinAbGroup& g) { return EndomorphismSpace(g).count(); }

inline std::uint64_t checked_count(const EndomorphismSpace& space, std::uint64_t cap) {
    if (space.count() > cap) throw CapExceeded(space.count(), cap);
    return space.count().convert_to<std::uint64_t>();
}

/// Every endomorphism of a group exactly once, in position order.
class EndomorphismRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Homomorphism;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const EndomorphismSpace* space, std::uint64_t position) : space_(space), position_(position) {}

        Homomorphism operator*() const { return space_->at(position_); }
        iterator& operator++() {
            ++position_;
            return *this;
        }
        iterator operator++(int) {
            auto old = *this;
            ++position_;
            return old;
        }
        bool operator==(const iterator& other) const { return position_ == other.position_; }

    private:
        const EndomorphismSpace* space_ = nullptr;
        std::uint64_t position_ = 0;
    };

    EndomorphismRange(FinAbGroup group, std::uint64_t cap) : space_(std::move(group)) {
        count_ = checked_count(space_, cap);
    }

    std::uint64_t size() const noexcept { return count_; }
    iterator begin() const { return {&space_, 0}; }
    iterator end() const { return {&space_, count_}; }

private:
    EndomorphismSpace space_;
    std::uint64_t count_ = 0;
};

/// Refuses with CapExceeded when the group has more than `cap` endomorphisms.
inline EndomorphismRange enumerate_endos(const FinAbGroup& g, std::uint64_t cap) { return EndomorphismRange(g, cap); }

namespace detail {

template <std::size_t W>
struct BitMask {
    std::array<std::uint64_t, W> words{};

    void set(std::uint32_t i) noexcept { words[i >> 6U] |= std::uint64_t{1} << (i & 63U); }
    bool test(std::uint32_t i) const noexcept { return (words[i >> 6U] >> (i & 63U)) & 1U; }

    std::uint32_t count() const noexcept {
        std::uint32_t c = 0;
        for (auto w : words) c += static_cast<std::uint32_t>(std::popcount(w));
        return c;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < W; ++k) {
            std::uint64_t w = words[k];
            while (w != 0) {
                f(static_cast<std::uint32_t>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    friend BitMask operator&(const BitMask& a, const BitMask& b) noexcept {
        BitMask r;
        for (std::size_t k = 0; k < W; ++k) r.words[k] = a.words[k] & b.words[k];
        return r;
    }

    bool operator==(const BitMask&) const = default;
};

}  // namespace detail

/// Element codes for a small group: x = sum_j digit_j * place_j with
/// digit_j in [0, order_j).
class DenseGroup {
public:
    static constexpr std::uint32_t kMaxCardinality = 4096;
    static constexpr std::uint32_t kMaxAddTable = 256;

    static bool fits(const FinAbGroup& g) { return g.cardinality() <= kMaxCardinality; }

    explicit DenseGroup(const FinAbGroup& g) {
        if (!fits(g)) throw PreconditionError(g.to_string() + " is too large for the dense engine");
        card_ = 1;
        for (const auto& o : g.orders()) {
            place_.push_back(card_);
            radix_.push_back(o.convert_to<std::uint32_t>());
            card_ *= radix_.back();
        }
        const std::size_t k = radix_.size();
        increment_digit_.assign(card_, 0);
        digits_.assign(static_cast<std::size_t>(card_) * k, 0);
        std::vector<std::uint16_t> d(k, 0);
        for (std::uint32_t x = 0; x < card_; ++x) {
            std::copy(d.begin(), d.end(), digits_.begin() + static_cast<std::ptrdiff_t>(x * k));
            for (std::size_t j = 0; j < k; ++j) {
                if (++d[j] < radix_[j]) {
                    if (x + 1 < card_) increment_digit_[x + 1] = static_cast<std::uint8_t>(j);
                    break;
                }
                d[j] = 0;
            }
        }
        if (card_ <= kMaxAddTable) {
            add_table_.resize(static_cast<std::size_t>(card_) * card_);
            for (std::uint32_t x = 0; x < card_; ++x) {
                for (std::uint32_t y = 0; y < card_; ++y) add_table_[x * card_ + y] = add_digits(x, y);
            }
        }
    }

    std::uint32_t cardinality() const noexcept { return card_; }
    std::size_t factor_count() const noexcept { return radix_.size(); }
    std::uint32_t place(std::size_t j) const noexcept { return place_[j]; }
    std::uint32_t radix(std::size_t j) const noexcept { return radix_[j]; }

    /// The digit that was incremented to reach x from its predecessor (x >= 1),
    /// so x - place(increment_digit(x)) has already been visited.
    std::size_t increment_digit(std::uint32_t x) const noexcept { return increment_digit_[x]; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const noexcept {
        if (!add_table_.empty()) return add_table_[x * card_ + y];
        return add_digits(x, y);
    }

    std::uint32_t encode(const GroupElement& e) const {
        std::uint32_t x = 0;
        for (std::size_t j = 0; j < radix_.size(); ++j) x += e.coords[j].convert_to<std::uint32_t>() * place_[j];
        return x;
    }

    GroupElement decode(std::uint32_t x) const {
        GroupElement e;
        for (std::size_t j = 0; j < radix_.size(); ++j) e.coords.emplace_back(digits_[x * radix_.size() + j]);
        return e;
    }

private:
    std::uint32_t add_digits(std::uint32_t x, std::uint32_t y) const noexcept {
        const std::size_t k = radix_.size();
        std::uint32_t z = 0;
        for (std::size_t j = 0; j < k; ++j) {
            std::uint32_t s = digits_[x * k + j] + digits_[y * k + j];
            if (s >= radix_[j]) s -= radix_[j];
            z += s * place_[j];
        }
        return z;
    }

    std::uint32_t card_ = 1;
    std::vector<std::uint32_t> radix_;
    std::vector<std::uint32_t> place_;
    std::vector<std::uint8_t> increment_digit_;
    std::vector<std::uint16_t> digits_;
    std::vector<std::uint16_t> add_table_;
};

/// One endomorphism as a table of element images. Scratch buffers are reused
/// by `load`, so a single instance serves a whole enumeration.
template <std::size_t W>
class DenseEndomorphism {
public:
    using Mask = detail::BitMask<W>;

    explicit DenseEndomorphism(const DenseGroup& g) : group_(&g), table_(g.cardinality()), power_(g.cardinality()) {
        for (std::uint32_t x = 0; x < g.cardinality(); ++x) full_.set(x);
    }

    /// column_codes[j] is the code of the image of the j-th generator.
    void load(std::span<const std::uint32_t> column_codes) {
        const DenseGroup& g = *group_;
        table_[0] = 0;
        for (std::uint32_t x = 1; x < g.cardinality(); ++x) {
            const std::size_t j = g.increment_digit(x);
            table_[x] = static_cast<std::uint16_t>(g.add(table_[x - g.place(j)], column_codes[j]));
        }
    }

    std::uint32_t apply(std::uint32_t x) const noexcept { return table_[x]; }

    /// Computes the image chain and returns the stabilization index.
    std::size_t stab_index() {
        chain_.clear();
        chain_.push_back(full_);
        while (true) {
            Mask next;
            chain_.back().for_each([&](std::uint32_t x) { next.set(table_[x]); });
            if (next == chain_.back()) return chain_.size() - 1;
            chain_.push_back(next);
        }
    }

    /// image(f^n) for n = 0..stab_index(); valid after stab_index().
    std::span<const Mask> chain() const noexcept { return chain_; }

    /// Checks, for n = 1..stab+extra, that image(f^n) + kernel(f^n) = G exactly
    /// when n >= stab. The sum is sized with |A + B| = |A| |B| / |A & B|.
    /// Returns the first failing n, or 0. Requires stab_index() first.
    std::size_t first_sum_mismatch(std::size_t extra) {
        const std::size_t stab = chain_.size() - 1;
        const std::uint32_t card = group_->cardinality();
        std::copy(table_.begin(), table_.end(), power_.begin());
        for (std::size_t n = 1; n <= stab + extra; ++n) {
            const Mask& im = chain_[std::min(n, stab)];
            Mask ker;
            for (std::uint32_t x = 0; x < card; ++x) {
                if (power_[x] == 0) ker.set(x);
            }
            const std::uint64_t lhs = std::uint64_t{im.count()} * ker.count();
            const std::uint64_t rhs = std::uint64_t{card} * (im & ker).count();
            if ((lhs == rhs) != (n >= stab)) return n;
            for (std::uint32_t x = 0; x < card; ++x) power_[x] = table_[power_[x]];
        }
        return 0;
    }

private:
    const DenseGroup* group_;
    std::vector<std::uint16_t> table_;
    std::vector<std::uint16_t> power_;
    std::vector<Mask> chain_;
    Mask full_;
};

namespace detail {

// Walks positions [begin, end) of the odometer, keeping the generator image
// codes in sync, and calls visit(position, endo) for each.
template <std::size_t W, class Visit>
void scan_range(const EndomorphismSpace& space, const DenseGroup& dense, std::uint64_t begin, std::uint64_t end,
                Visit&& visit) {
    if (begin >= end) return;
    const std::size_t k = dense.factor_count();
    const auto ranges = space.ranges();
    std::vector<std::uint32_t> count(ranges.size());
    std::vector<std::uint32_t> delta(ranges.size());
    for (std::size_t p = 0; p < ranges.size(); ++p) {
        count[p] = ranges[p].count.template convert_to<std::uint32_t>();
        delta[p] = ranges[p].step.template convert_to<std::uint32_t>() * dense.place(p / k);
    }
    std::vector<std::uint32_t> digit(ranges.size());
    {
        auto d = space.digits_at(begin);
        for (std::size_t p = 0; p < d.size(); ++p) digit[p] = d[p].template convert_to<std::uint32_t>();
    }
    std::vector<std::uint32_t> column(k, 0);
    for (std::size_t p = 0; p < ranges.size(); ++p) column[p % k] += digit[p] * delta[p];

    DenseEndomorphism<W> endo(dense);
    for (std::uint64_t pos = begin;;) {
        endo.load(column);
        visit(pos, endo);
        if (++pos == end) break;
        for (std::size_t p = ranges.size(); p-- > 0;) {
            if (++digit[p] < count[p]) {
                column[p % k] += delta[p];
                break;
            }
            column[p % k] -= (count[p] - 1) * delta[p];
            digit[p] = 0;
        }
    }
}

}  // namespace detail

/// Splits the enumeration into `workers` contiguous position ranges and runs
/// them concurrently. visit(state, position, endo) folds into one State per
/// worker; states are returned in range order so callers can reduce
/// deterministically. Requires DenseGroup::fits(g).
template <class State, class Visit>
std::vector<State> scan_endomorphisms(const FinAbGroup& g, std::uint64_t cap, unsigned workers, Visit visit) {
    EndomorphismSpace space(g);
    const std::uint64_t total = checked_count(space, cap);
    DenseGroup dense(g);
    workers = std::max(1U, workers);
    std::vector<State> states(workers);
    auto run = [&](unsigned w) {
        const std::uint64_t begin = total / workers * w + std::min<std::uint64_t>(w, total % workers);
        const std::uint64_t end = begin + total / workers + (w < total % workers ? 1 : 0);
        auto body = [&](std::uint64_t pos, auto& endo) { visit(states[w], pos, endo); };
        if (dense.cardinality() <= 64) {
            detail::scan_range<1>(space, dense, begin, end, body);
        } else {
            detail::scan_range<DenseGroup::kMaxCardinality / 64>(space, dense, begin, end, body);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    }
    return states;
}

struct StabMaximum {
    std::size_t index = 0;
    Homomorphism witness;          // first maximizing map in position order
    std::uint64_t witness_position = 0;
    std::uint64_t endomorphisms = 0;
};

/// Maximum stabilization index over all endomorphisms of g.
inline StabMaximum max_stab_index(const FinAbGroup& g, std::uint64_t cap = kDefaultEndomorphismCap,
                                  unsigned workers = 1) {
    struct Best {
        std::size_t index = 0;
        std::uint64_t position = 0;
        bool any = false;
    };
    auto better = [](const Best& a, const Best& b) {
        if (!b.any) return a;
        if (!a.any || b.index > a.index || (b.index == a.index && b.position < a.position)) return b;
        return a;
    };

    EndomorphismSpace space(g);
    const std::uint64_t total = checked_count(space, cap);
    Best best;
    if (DenseGroup::fits(g)) {
        auto states = scan_endomorphisms<Best>(g, cap, workers, [](Best& s, std::uint64_t pos, auto& endo) {
            std::size_t idx = endo.stab_index();
            if (!s.any || idx > s.index) s = {idx, pos, true};
        });
        for (const auto& s : states) best = better(best, s);
    } else {
        for (std::uint64_t pos = 0; pos < total; ++pos) {
            std::size_t idx = stab_index(space.at(pos));
            if (!best.any || idx > best.index) best = {idx, pos, true};
        }
    }
    return {best.index, space.at(best.position), best.position, total};
}

/// Stabilization index through the dense engine; cross-checks the lattice route.
inline std::size_t dense_stab_index(const Homomorphism& f) {
    if (!f.is_endomorphism()) throw ValidationError("stabilization index of a non-endomorphism");
    DenseGroup dense(f.source());
    std::vector<std::uint32_t> cols;
    for (std::size_t j = 0; j < f.source().factor_count(); ++j) cols.push_back(dense.encode(f.column(j)));
    if (dense.cardinality() <= 64) {
        DenseEndomorphism<1> endo(dense);
        endo.load(cols);
        return endo.stab_index();
    }
    DenseEndomorphism<DenseGroup::kMaxCardinality / 64> endo(dense);
    endo.load(cols);
    return endo.stab_index();
}

}  // namespace scoh
