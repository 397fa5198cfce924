#pragma once

#include <stdexcept>

namespace blurbench {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An image is too small for a kernel, or image dimensions disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A document (raster, JSON, CSV, config) could not be parsed.
class FormatError : public Error {
public:
    using Error::Error;
};

/// An in-memory value violates its contract (bad schedule, duplicate key, missing data).
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace blurbench
