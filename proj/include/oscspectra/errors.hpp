#pragma once

#include <stdexcept>
#include <string>

namespace oscspectra {

// A requested computation exceeds a hard size cap (tensor rules, enumerations).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (non-orthogonal g, short truncation, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Radial inner product shows no decay at the quadrature tail.
class IntegrabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oscspectra
