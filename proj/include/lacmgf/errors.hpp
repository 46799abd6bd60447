#ifndef LACMGF_ERRORS_HPP
#define LACMGF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lacmgf {

// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid arguments or malformed input.  CLI maps these to exit code 2.
class DomainError : public Error {
public:
    using Error::Error;
};

// A resource bound (grid size, enumeration size) would be exceeded.  The
// message names the violated bound.  CLI maps these to exit code 3.
class Infeasible : public Error {
public:
    using Error::Error;
};

// Sequence validation failures.
class SequenceError : public DomainError {
public:
    enum class Kind { non_positive_term, not_increasing, not_lacunary };

    SequenceError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Malformed sequence file; carries the 1-based line number.
class ParseError : public DomainError {
public:
    ParseError(std::size_t line, const std::string& what) : DomainError(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Block decomposition with long length <= short length.
class InvalidBlockShape : public DomainError {
public:
    using DomainError::DomainError;
};

// Unusable lambda grid for series fitting (too few points, one-sided, ...).
class GridError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace lacmgf

#endif
