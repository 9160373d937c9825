#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bjbi {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

/// Bad or unreadable input data (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// The mathematics breaks down at the requested data (CLI exit code 3).
class DegeneracyError : public Error {
public:
    using Error::Error;
};

#define BJBI_DEFINE_ERROR(Name, Base)                                   \
    class Name : public Base {                                          \
    public:                                                             \
        using Base::Base;                                               \
        const char* kind() const noexcept override { return #Name; }    \
    }

BJBI_DEFINE_ERROR(ParseError, InputError);
BJBI_DEFINE_ERROR(FileNotFound, InputError);
BJBI_DEFINE_ERROR(IoError, InputError);
BJBI_DEFINE_ERROR(LightlikeVector, DegeneracyError);
BJBI_DEFINE_ERROR(NotConstantSpeed, DegeneracyError);
BJBI_DEFINE_ERROR(InflectionPoint, DegeneracyError);
BJBI_DEFINE_ERROR(DegenerateEverywhere, DegeneracyError);
BJBI_DEFINE_ERROR(EmptyRestriction, DegeneracyError);
BJBI_DEFINE_ERROR(DegeneratePoint, DegeneracyError);
BJBI_DEFINE_ERROR(DegenerateGenerator, DegeneracyError);
BJBI_DEFINE_ERROR(InsufficientCoverage, DegeneracyError);

#undef BJBI_DEFINE_ERROR

/// Strip data failing one or more of its invariants. Carries the names of
/// the failed checks.
class InvalidStrip : public InputError {
public:
    InvalidStrip(std::string what, std::vector<std::string> failed)
        : InputError(std::move(what)), failed_(std::move(failed)) {}
    const char* kind() const noexcept override { return "InvalidStrip"; }
    const std::vector<std::string>& failed_checks() const noexcept { return failed_; }

private:
    std::vector<std::string> failed_;
};

/// Projection of a sample onto a plane is not one-to-one.
class NotInjective : public DegeneracyError {
public:
    NotInjective(std::string what, std::size_t first, std::size_t second)
        : DegeneracyError(std::move(what)), first_(first), second_(second) {}
    const char* kind() const noexcept override { return "NotInjective"; }
    /// Node indices of a colliding (or folding) pair.
    std::pair<std::size_t, std::size_t> witness() const noexcept { return {first_, second_}; }

private:
    std::size_t first_;
    std::size_t second_;
};

}  // namespace bjbi
