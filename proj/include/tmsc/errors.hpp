#ifndef TMSC_ERRORS_HPP
#define TMSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tmsc {

// Bad input data or parameters (CLI exit code 1).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / parse failures (CLI exit code 2).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tmsc

#endif  // TMSC_ERRORS_HPP
