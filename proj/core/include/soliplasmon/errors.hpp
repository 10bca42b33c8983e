#ifndef SOLIPLASMON_ERRORS_HPP
#define SOLIPLASMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soliplasmon {

// Failure classes map one-to-one onto CLI exit codes (see commands.hpp).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace soliplasmon

#endif
