#pragma once

#include <stdexcept>
#include <string>

namespace wsar {

// Coarse failure classes. The CLI maps each one onto a process exit code.
enum class ErrorKind {
    invalid_input,  // precondition or configuration violation
    mismatch,       // two datasets disagree on sweep/trajectory/shape
    numerical,      // geometry or numerical failure (collocation, empty image, ...)
};

class Error : public std::domain_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::domain_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& what) {
    throw Error(ErrorKind::invalid_input, what);
}

[[noreturn]] inline void fail_mismatch(const std::string& what) {
    throw Error(ErrorKind::mismatch, what);
}

[[noreturn]] inline void fail_numerical(const std::string& what) {
    throw Error(ErrorKind::numerical, what);
}

}  // namespace wsar
