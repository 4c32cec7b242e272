#pragma once

#include <stdexcept>
#include <string>

namespace gb {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested computation would exceed an enumeration or memory budget.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

// Malformed or dimensionally inconsistent input (ragged grid, non-square
// matrix, mismatched tensor dims, ...).
class ShapeError : public Error {
public:
    using Error::Error;
};

// A parameter outside the supported domain (composite Paley modulus,
// non-positive tolerance, ...).
class UnsupportedParameterError : public Error {
public:
    using Error::Error;
};

// No constructible Hadamard order exists in the searched window.
class CoverageGapError : public Error {
public:
    CoverageGapError(long long n, const std::string& what)
        : Error(what), n_(n) {}
    long long n() const noexcept { return n_; }

private:
    long long n_;
};

// An iterative numeric method failed to converge; carries the last iterate.
class NumericFailureError : public Error {
public:
    NumericFailureError(const std::string& what, double last_iterate)
        : Error(what), last_iterate_(last_iterate) {}
    double last_iterate() const noexcept { return last_iterate_; }

private:
    double last_iterate_;
};

// A claimed bound failed verification; carries the offending index.
class CounterexampleError : public Error {
public:
    CounterexampleError(long long n, const std::string& what)
        : Error(what), n_(n) {}
    long long n() const noexcept { return n_; }

private:
    long long n_;
};

// A recomputed table entry disagrees with the stored reference value.
class TableRegressionError : public Error {
public:
    using Error::Error;
};

}  // namespace gb
