#pragma once

#include <stdexcept>
#include <string>

namespace regforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or type invariant.
class InvalidInput : public Error {
   public:
    using Error::Error;
};

/// Input is well formed but outside what this version supports (MIMO, improper TF, ...).
class Unsupported : public Error {
   public:
    using Error::Error;
};

/// Quantity is mathematically undefined for the given input (e.g. dc gain of an integrator).
class Undefined : public Error {
   public:
    using Error::Error;
};

/// Iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
   public:
    ConvergenceError(const std::string& what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int    iterations() const noexcept { return iterations_; }

   private:
    double residual_;
    int    iterations_;
};

}  // namespace regforge
