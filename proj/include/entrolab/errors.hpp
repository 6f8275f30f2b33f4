#pragma once

#include <stdexcept>
#include <string>

namespace entrolab {

/// Argument outside an operation's mathematical domain (empty subset, n = 0,
/// mismatched ground sets, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input file. `where` names the field or line that failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A bound or construction was asked to run outside its hypotheses.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entrolab
