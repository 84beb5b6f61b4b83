#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "scoh/error.hpp"

namespace scoh {

/// How the p-components behave for all primes p_n past an explicit list.
///   Zero:        T_{p_n} = 0
///   ConstExp:    T_{p_n} = Z(p_n^c)^r
///   LinearExp:   T_{p_n} = Z(p_n^n)
class TailRule {
public:
    enum class Kind { Zero, ConstExp, LinearExp };

    TailRule() = default;

    static TailRule zero() { return TailRule(Kind::Zero, 0, 0); }
    static TailRule linear() { return TailRule(Kind::LinearExp, 0, 0); }
    static TailRule constant(std::uint64_t c, std::uint64_t r = 1) {
        if (c < 1 || r < 1) {
            throw ValidationError("const tail needs exponent and multiplicity >= 1, got " +
                                  std::to_string(c) + "x" + std::to_string(r));
        }
        return TailRule(Kind::ConstExp, c, r);
    }

    Kind kind() const noexcept { return kind_; }
    std::uint64_t exponent() const noexcept { return c_; }
    std::uint64_t multiplicity() const noexcept { return r_; }

    bool bounded() const noexcept { return kind_ != Kind::LinearExp; }

    /// log_p card(T_{p_n}) for the n-th prime of the sequence.
    std::uint64_t log_cardinality_at(std::size_t n) const noexcept {
        switch (kind_) {
            case Kind::Zero: return 0;
            case Kind::ConstExp: return c_ * r_;
            case Kind::LinearExp: return n;
        }
        return 0;
    }

    bool operator==(const TailRule&) const = default;

private:
    TailRule(Kind kind, std::uint64_t c, std::uint64_t r) : kind_(kind), c_(c), r_(r) {}

    Kind kind_ = Kind::Zero;
    std::uint64_t c_ = 0;
    std::uint64_t r_ = 0;
};

}  // namespace scoh
