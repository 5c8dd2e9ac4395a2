#pragma once

#include <stdexcept>
#include <string>

namespace fairseq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed inputs: frequency vectors off the simplex, wrong dimensions, C' too small.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// No index passes the eligibility test x_i + alpha_i - 1 >= -C'.
// Only possible when C' < 1 - 1/d.
class EmptyEligibleSet : public Error {
public:
    using Error::Error;
};

// An orbit left [-C', C]^d although the boundedness preconditions held.
class BoundViolation : public Error {
public:
    using Error::Error;
};

// A point outside the hypercubic domain E_alpha was handed to the billiard map.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

// Partition refinement stopped before the accumulated area reached 1 - tol.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double achieved_area, int iterations)
        : Error(what), achieved_area_(achieved_area), iterations_(iterations) {}

    double achieved_area() const noexcept { return achieved_area_; }
    int iterations() const noexcept { return iterations_; }

private:
    double achieved_area_;
    int iterations_;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

}  // namespace fairseq
