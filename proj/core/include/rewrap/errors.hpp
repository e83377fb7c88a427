#pragma once

#include <stdexcept>
#include <string>

namespace rewrap {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gram matrix (or penalized Gram) is numerically singular and no
// pseudo-inverse fallback was requested.
class SingularGram : public Error {
public:
    explicit SingularGram(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class BudgetOutOfRange : public Error {
public:
    explicit BudgetOutOfRange(const std::string& msg) : Error(msg) {}
};

// Subset enumeration requested above the brute-force guard.
class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& msg) : Error(msg) {}
};

class ParameterOutOfRange : public Error {
public:
    explicit ParameterOutOfRange(const std::string& msg) : Error(msg) {}
};

// No grid point satisfies the breakdown constraints.
class EmptyFeasible : public Error {
public:
    explicit EmptyFeasible(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class UnknownFitter : public Error {
public:
    explicit UnknownFitter(const std::string& msg) : Error(msg) {}
};

}  // namespace rewrap
