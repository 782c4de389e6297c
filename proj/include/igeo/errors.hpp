#pragma once

#include <stdexcept>
#include <string>

namespace igeo {

/// Base for failures of the numerical kernels (integration, quadrature, ...).
struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// A state reached the sigma floor; the metric blows up as 1/sigma^2 there.
struct SingularityError : NumericsError {
    explicit SingularityError(const std::string& what) : NumericsError(what) {}
};

/// The adaptive step size fell below the representable resolution of tau.
struct StepUnderflowError : NumericsError {
    explicit StepUnderflowError(const std::string& what) : NumericsError(what) {}
};

struct MaxStepsError : NumericsError {
    explicit MaxStepsError(const std::string& what) : NumericsError(what) {}
};

struct NonFiniteError : NumericsError {
    explicit NonFiniteError(const std::string& what) : NumericsError(what) {}
};

}  // namespace igeo
