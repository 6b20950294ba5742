#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expression language
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset = 0;
};

struct UnknownIdentifier : Error {
  explicit UnknownIdentifier(const std::string& name)
      : Error("unknown identifier '" + name + "'"), name(name) {}
  std::string name;
};

struct ArityError : Error {
  using Error::Error;
};

// Field evaluation
struct DomainError : Error {
  using Error::Error;
};

struct SingularTetrad : DomainError {
  using DomainError::DomainError;
};

// Algebra preconditions
struct NotABivector : Error {
  using Error::Error;
};

struct NotAVector : Error {
  using Error::Error;
};

struct NotARotor : Error {
  using Error::Error;
};

// Geometry preconditions
struct TorsionPresent : Error {
  using Error::Error;
};

struct NonAbelianGenerator : Error {
  using Error::Error;
};

struct UnsupportedScenario : Error {
  using Error::Error;
};

// Configuration
struct IoError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& field_path)
      : Error("config schema violation at '" + field_path + "'"), field_path(field_path) {}
  SchemaError(const std::string& field_path, const std::string& detail)
      : Error("config schema violation at '" + field_path + "': " + detail),
        field_path(field_path) {}
  std::string field_path;
};

}  // namespace starc
