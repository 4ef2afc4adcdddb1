#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Invalid configuration or malformed input (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or numerical value outside its mathematical domain
// (CLI exit code 3).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unreadable or unwritable file (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(what + ": " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A walker window too small for the requested evolution. Indicates a
// sizing bug in the caller, since windows are pre-allocated to the light cone.
class SizingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qwalk
