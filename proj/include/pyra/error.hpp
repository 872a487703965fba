#pragma once

#include <stdexcept>
#include <string>

namespace pyra {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated data-model invariant (CLI exit code 1).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Filesystem or codec failure (CLI exit code 2).
class IoError : public Error {
public:
    enum class Kind { missing_file, unsupported_format, corrupt_stream, write_failed };

    IoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace pyra
