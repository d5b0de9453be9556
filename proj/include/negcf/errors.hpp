#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negcf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// A finite stream ran out before the requested number of coefficients.
class StreamExhausted : public Error {
public:
    using Error::Error;
};

/// A generator-backed computation needed more coefficient accesses (or a
/// deeper horizon) than its budget allows.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace negcf
