#pragma once

#include <stdexcept>
#include <string>

namespace bisym {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or truncated image file. The message names the offending field.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside its documented range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Image too small for the requested operator.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// All regressor values are equal, so the slope is undetermined.
class DegenerateRegressorError : public Error {
public:
    using Error::Error;
};

/// Fewer samples than unknowns.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// |det| fell below the singularity tolerance.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Not enough edge rows to estimate a symmetry axis.
class InsufficientBoundaryError : public Error {
public:
    using Error::Error;
};

/// Invalid phantom description.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure inside one pipeline stage.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& cause)
        : Error(stage + ": " + cause), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace bisym
