#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repairlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text input that does not follow a grammar. Positions are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          reason_(what),
          line_(line),
          column_(column) {}

    /// The message without its position suffix.
    const std::string& reason() const noexcept { return reason_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string reason_;
    std::size_t line_;
    std::size_t column_;
};

/// Structured input (JSON documents) that violates its schema.
class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Evaluation failures: unbound variables, sort mismatches.
class EvalError : public Error {
public:
    using Error::Error;
};

/// A set of endomorphisms whose members do not commute.
class IllDefinedTransformation : public Error {
public:
    using Error::Error;
};

class PoolTooLarge : public Error {
public:
    PoolTooLarge(std::size_t size, std::size_t limit)
        : Error("endomorphism pool of size " + std::to_string(size) + " exceeds limit " +
                std::to_string(limit)),
          size_(size),
          limit_(limit) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t size_;
    std::size_t limit_;
};

}  // namespace repairlab
