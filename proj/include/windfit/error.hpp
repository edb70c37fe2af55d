#pragma once

#include <stdexcept>
#include <string>

namespace windfit {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// txcompose: transformer cdf saturated at 1.
class EvaluationError : public Error {
public:
    using Error::Error;
};

class InfeasibleStart : public Error {
public:
    using Error::Error;
};

class DegenerateSample : public Error {
public:
    using Error::Error;
};

class AllStartsInfeasible : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class ZeroPredicted : public Error {
public:
    using Error::Error;
};

class DivergentMoment : public Error {
public:
    using Error::Error;
};

class ZeroReference : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

// Malformed CSV input. line() is 1-based and counts the header.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NegativeSpeed : public ParseError {
public:
    using ParseError::ParseError;
};

class MissingTimestamp : public Error {
public:
    using Error::Error;
};

}  // namespace windfit
