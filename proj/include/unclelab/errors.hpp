#pragma once

#include <stdexcept>
#include <string>

namespace unclelab {

// Exit-code families: 2 input/parse, 3 mathematical precondition, 4 non-convergence.
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, int code) : std::runtime_error(msg), code_(code) {}
    int exit_code() const { return code_; }

private:
    int code_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg, 2) {}
};

class SizeCapError : public Error {
public:
    explicit SizeCapError(const std::string& msg) : Error(msg, 2) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg, 3) {}
};

class InjectivityError : public Error {
public:
    explicit InjectivityError(const std::string& msg) : Error(msg, 3) {}
};

class NotStandardFormError : public Error {
public:
    explicit NotStandardFormError(const std::string& msg) : Error(msg, 3) {}
};

// The perturbed span does not converge to a well-defined limit projector.
class UncleUndefinedError : public Error {
public:
    explicit UncleUndefinedError(const std::string& msg) : Error(msg, 3) {}
};

class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& msg) : Error(msg, 3) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg, 4) {}
};

}  // namespace unclelab
