#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "scoh/integer.hpp"

namespace scoh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that violates a type invariant (non-prime factor, ill-defined hom, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A call made outside the operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Enumeration refused because the endomorphism count exceeds the cap.
class CapExceeded : public Error {
public:
    CapExceeded(Integer count, std::uint64_t cap)
        : Error("endomorphism count " + count.str() + " exceeds cap " + std::to_string(cap)),
          count_(std::move(count)), cap_(cap) {}

    const Integer& count() const noexcept { return count_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    Integer count_;
    std::uint64_t cap_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace scoh
