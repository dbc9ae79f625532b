#ifndef ALIGNSTAT_ERRORS_HPP_
#define ALIGNSTAT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace alignstat {

// Bad flag values, malformed configuration files, unsupported parameter
// combinations. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A (question, subgroup) pair that admits no valid test (e.g. one side has
// no responses). Batch runs catch this and record the pair instead of dying.
class UntestableError : public DataError {
 public:
  explicit UntestableError(const std::string& what) : DataError(what) {}
};

// Remote chat endpoint failed after retries. CLI exit code 3.
class EndpointError : public std::runtime_error {
 public:
  explicit EndpointError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace alignstat

#endif  // ALIGNSTAT_ERRORS_HPP_
