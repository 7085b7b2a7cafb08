#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hvh {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input bytes (Y4M, PGM, hash files, key files).
/// Carries the byte offset at which parsing failed where known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    explicit ParseError(const std::string& what) : Error(what), offset_(0) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Key generation or ciphertext handling failures.
class CryptoError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter combinations (e.g. resolution not divisible by the
/// block grid), rejected before any work starts.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failures.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hvh
