#pragma once

#include <stdexcept>
#include <string>

namespace topo {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A label required by an identity or a sum is zero.
class DivisionByZero : public Error
{
public:
    using Error::Error;
};

class InvalidInput : public Error
{
public:
    using Error::Error;
};

/// Raised when a traversal would exceed the configured node budget.
class ResourceLimit : public Error
{
public:
    using Error::Error;
};

class DomainError : public Error
{
public:
    using Error::Error;
};

class PoleError : public Error
{
public:
    using Error::Error;
};

class QuadratureFailure : public Error
{
public:
    using Error::Error;
};

class NonConvergence : public Error
{
public:
    using Error::Error;
};

class UnknownSeries : public Error
{
public:
    using Error::Error;
};

class NotIndefinite : public Error
{
public:
    using Error::Error;
};

class PeriodNotFound : public Error
{
public:
    using Error::Error;
};

} // namespace topo
