#pragma once

#include <stdexcept>
#include <string>

namespace queenscan {

/// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- placement ----

class NoSolutionError : public Error {
public:
    using Error::Error;
};

class OutOfBoundsError : public Error {
public:
    using Error::Error;
};

class GridTooSmallError : public Error {
public:
    using Error::Error;
};

// ---- imaging ----

/// Malformed PGM input that is not one of the more specific cases below.
class PgmFormatError : public Error {
public:
    using Error::Error;
};

class BadMagicError : public PgmFormatError {
public:
    using PgmFormatError::PgmFormatError;
};

class MaxvalUnsupportedError : public PgmFormatError {
public:
    using PgmFormatError::PgmFormatError;
};

/// Input ends before the header or the promised sample count is complete.
class TruncatedError : public PgmFormatError {
public:
    using PgmFormatError::PgmFormatError;
};

class FrameTooSmallError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// ---- detection ----

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class EmptySourceError : public Error {
public:
    using Error::Error;
};

class SinkUnavailableError : public Error {
public:
    using Error::Error;
};

/// A frame file could not be loaded; the message names the file.
class FrameLoadError : public Error {
public:
    using Error::Error;
};

// ---- costing ----

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// ---- configuration ----

class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class UnknownKeyError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class MissingRequiredError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RangeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace queenscan
