#pragma once

#include <stdexcept>
#include <string>

namespace powops {

/// Internal consistency violation: an integer division that the theory
/// guarantees to be exact left a remainder. Always a bug, never bad input.
class ExactnessError : public std::logic_error {
  public:
    explicit ExactnessError(const std::string& what) : std::logic_error(what) {}
};

/// A module map whose matrix does not send every source relation into the
/// span of the target relations. Carries the index of the first violating
/// relation as a certificate.
class IllDefinedMapError : public std::invalid_argument {
  public:
    IllDefinedMapError(std::size_t relation_index, const std::string& what)
        : std::invalid_argument(what), relation_index_(relation_index) {}

    std::size_t relation_index() const noexcept { return relation_index_; }

  private:
    std::size_t relation_index_;
};

/// Malformed user input (module expressions, matrix literals, bounds).
class ParseError : public std::invalid_argument {
  public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace powops
