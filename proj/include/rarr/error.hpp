#ifndef RARR_ERROR_HPP
#define RARR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rarr {

// Failure of a numerical procedure (non-convergence, degenerate spectrum,
// diverging integral). The CLI maps these to exit status 4.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration document or command line. Exit status 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter set rejected by validation. Exit status 3.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rarr

#endif
