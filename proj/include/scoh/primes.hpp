#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoh/error.hpp"
#include "scoh/integer.hpp"

namespace scoh {

namespace detail {

// Process-wide table of primes, grown on demand by re-sieving.
class PrimeTable {
public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    std::uint64_t nth(std::size_t n) {
        std::lock_guard lock(mutex_);
        while (primes_.size() < n) grow();
        return primes_[n - 1];
    }

    // 1-based position of p among the primes, or nullopt if p is not prime.
    std::optional<std::size_t> index_of(std::uint64_t p) {
        if (!is_prime(p)) return std::nullopt;
        if (p > kSieveCeiling) {
            throw ValidationError("prime " + std::to_string(p) + " is beyond the indexable range");
        }
        std::lock_guard lock(mutex_);
        while (limit_ < p) grow();
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        return static_cast<std::size_t>(it - primes_.begin()) + 1;
    }

private:
    static constexpr std::uint64_t kSieveCeiling = 1ULL << 30;

    void grow() {
        std::uint64_t next = limit_ < 1024 ? 1024 : limit_ * 2;
        std::vector<bool> composite(next + 1, false);
        primes_.clear();
        for (std::uint64_t i = 2; i <= next; ++i) {
            if (composite[i]) continue;
            primes_.push_back(i);
            for (std::uint64_t j = i * i; j <= next; j += i) composite[j] = true;
        }
        limit_ = next;
    }

    std::mutex mutex_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t limit_ = 0;
};

}  // namespace detail

/// The n-th prime, 1-based: nth_prime(1) == 2.
inline std::uint64_t nth_prime(std::size_t n) {
    if (n == 0) throw PreconditionError("prime positions start at 1");
    return detail::PrimeTable::instance().nth(n);
}

inline std::optional<std::size_t> prime_position(std::uint64_t p) {
    return detail::PrimeTable::instance().index_of(p);
}

/// An infinite, increasing sequence of primes p_1 < p_2 < ...
enum class PrimeSelection {
    All,            // 2, 3, 5, 7, ...
    OddPositions,   // primes at positions 1, 3, 5, ...: 2, 5, 11, ...
    EvenPositions,  // primes at positions 2, 4, 6, ...: 3, 7, 13, ...
};

inline std::uint64_t selected_prime(PrimeSelection sel, std::size_t i) {
    if (i == 0) throw PreconditionError("sequence indices start at 1");
    switch (sel) {
        case PrimeSelection::All: return nth_prime(i);
        case PrimeSelection::OddPositions: return nth_prime(2 * i - 1);
        case PrimeSelection::EvenPositions: return nth_prime(2 * i);
    }
    return 0;
}

/// Index i with selected_prime(sel, i) == p, if p belongs to the selection.
inline std::optional<std::size_t> selection_index(PrimeSelection sel, std::uint64_t p) {
    auto pos = prime_position(p);
    if (!pos) return std::nullopt;
    switch (sel) {
        case PrimeSelection::All: return *pos;
        case PrimeSelection::OddPositions:
            if (*pos % 2 == 1) return (*pos + 1) / 2;
            return std::nullopt;
        case PrimeSelection::EvenPositions:
            if (*pos % 2 == 0) return *pos / 2;
            return std::nullopt;
    }
    return std::nullopt;
}

inline bool selections_intersect(PrimeSelection a, PrimeSelection b) {
    if (a == PrimeSelection::All || b == PrimeSelection::All) return true;
    return a == b;
}

inline std::string_view to_string(PrimeSelection sel) {
    switch (sel) {
        case PrimeSelection::All: return "all";
        case PrimeSelection::OddPositions: return "odd-positions";
        case PrimeSelection::EvenPositions: return "even-positions";
    }
    return "?";
}

}  // namespace scoh
