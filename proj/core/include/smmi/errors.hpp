#ifndef SMMI_ERRORS_HPP
#define SMMI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smmi {

// Malformed or inconsistent files and datasets.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures that survive damping/retries (singular systems, overflow).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smmi

#endif
