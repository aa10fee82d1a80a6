#pragma once

#include <stdexcept>
#include <string>

namespace kou {

/// Parameter or argument outside its admissible domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation of G or G' at one of its poles (eta1 or -eta2).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Two roots closer than the degeneracy threshold; the closed-form
/// coefficient would lose all significant digits.
class DegenerateRootsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root split into right/left half-plane pairs is not 2/2.
class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iteration failed to converge or produced a non-finite value.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kou
