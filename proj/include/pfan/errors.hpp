#pragma once

#include <stdexcept>
#include <string>

namespace pfan {

// Exit-code categories used by the CLI: 1 usage, 2 data/format, 3 environment.
enum class ErrorKind { usage = 1, data = 2, environment = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Malformed files, bad magic, truncated or corrupt streams, version mismatch.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

// Well-formed input whose content violates an invariant (non-finite values,
// duplicate channel ids, inconsistent counts).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

// Missing external codec binary, failed subprocess, unusable port.
class EnvironmentError : public Error {
public:
    explicit EnvironmentError(const std::string& msg) : Error(ErrorKind::environment, msg) {}
};

}  // namespace pfan
