#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an iteration exhausts its budget; the caller may still want the last iterate,
// so concrete solvers attach it to a derived type.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BlowUpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw DomainError(what);
}

} // namespace riesz
