#pragma once

#include <stdexcept>
#include <string>

namespace riskstruct {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed canonical state or phase text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An action effect that leaves the legal phase graph of a hazard.
class IllegalPhaseTransition : public Error {
 public:
  using Error::Error;
};

/// A state name that is not part of the model.
class UnknownState : public Error {
 public:
  explicit UnknownState(const std::string& name)
      : Error("unknown state '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A feature effect that refers to a feature outside the declared universe,
/// or a feature-based equivalence requested without feature declarations.
class MissingFeatureDeclaration : public Error {
 public:
  using Error::Error;
};

/// A quotient class that would span mishap and non-mishap states.
class IncompatibleMerge : public Error {
 public:
  using Error::Error;
};

/// Two models whose hazard sets cannot be compared.
class IncompatibleModels : public Error {
 public:
  using Error::Error;
};

/// A file that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Catalog validation failure. `pointer` is a JSON pointer into the catalog
/// document; `line` is filled in when the source text is known.
class CatalogInvalid : public Error {
 public:
  CatalogInvalid(std::string pointer, std::string message, int line = 0)
      : Error(format(pointer, message, line)),
        pointer_(std::move(pointer)),
        detail_(std::move(message)),
        line_(line) {}

  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& detail() const noexcept { return detail_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& pointer, const std::string& message,
                            int line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!pointer.empty()) out += pointer + ": ";
    return out + message;
  }

  std::string pointer_;
  std::string detail_;
  int line_;
};

}  // namespace riskstruct
