#pragma once

#include <stdexcept>
#include <string>

namespace hexeval {

/// Bad input: malformed files, contract violations, inconsistent shapes.
/// Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parser failure carrying file and line; message renders as "file:line: what".
class ParseError : public ValidationError {
public:
    ParseError(std::string file, int line, const std::string& what)
        : ValidationError(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_;
};

/// Failure while fitting a model (divergence, non-finite loss).
/// Maps to CLI exit code 2.
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hexeval
