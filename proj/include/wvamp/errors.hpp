#pragma once

#include <stdexcept>

namespace wvamp {

// Bad numeric input: non-finite values, out-of-range parameters, empty inputs.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A momentum grid does not cover the support a meter needs.
class DomainCoverageError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Postselection is (numerically) orthogonal to the preselection, so the weak value diverges.
class NearOrthogonalPostselection : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An operation was handed a meter in the wrong representation (e.g. a mixed density
// where a wavefunction is required).
class RepresentationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Conditional moments requested of a postselected state with zero success probability.
class UndefinedConditionalState : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NoZerosDefined : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wvamp
