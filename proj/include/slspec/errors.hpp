#pragma once

#include <stdexcept>
#include <string>

namespace slspec {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Coefficient evaluation failed (non-finite) at a collocation node.
class SingularNodeError : public Error {
public:
    SingularNodeError(const std::string& what, double node)
        : Error(what), node(node) {}
    double node;
};

/// Boundary row with f(e) = g(e) = 0: the condition constrains nothing.
class DegenerateBcError : public Error {
public:
    using Error::Error;
};

/// CollocateEndpoint requested at an endpoint where p does not vanish.
class NotDegenerateError : public Error {
public:
    using Error::Error;
};

/// Dense eigensolver did not converge.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, int size)
        : Error(what), size(size) {}
    int size;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Operation does not apply (e.g. hardness classification at an infinite endpoint).
class NotApplicableError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace slspec
