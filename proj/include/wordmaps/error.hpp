#ifndef WORDMAPS_ERROR_HPP_
#define WORDMAPS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordmaps {

  // Malformed input text (words, cycle notation, ranges, group specifiers).
  class ParseError : public std::invalid_argument {
   public:
    ParseError(std::string const& msg, std::size_t position)
        : std::invalid_argument(msg + " (at position "
                                + std::to_string(position) + ")"),
          _position(position) {}

    explicit ParseError(std::string const& msg)
        : std::invalid_argument(msg), _position(std::string::npos) {}

    std::size_t position() const noexcept {
      return _position;
    }

   private:
    std::size_t _position;
  };

  // Arguments that are syntactically fine but violate a stated precondition,
  // e.g. mismatched arity or a rank that is too large.
  class ArgumentError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
  };

  // A named mathematical hypothesis does not hold for the given input.
  class HypothesisError : public std::runtime_error {
   public:
    HypothesisError(std::string hypothesis, std::string const& detail)
        : std::runtime_error("hypothesis violated [" + hypothesis
                             + "]: " + detail),
          _hypothesis(std::move(hypothesis)) {}

    std::string const& hypothesis() const noexcept {
      return _hypothesis;
    }

   private:
    std::string _hypothesis;
  };

  // An enumeration or search would exceed its configured work budget.
  class BudgetExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  // An internal consistency check failed; always a bug.
  class InvariantError : public std::logic_error {
    using std::logic_error::logic_error;
  };

}  // namespace wordmaps

#endif  // WORDMAPS_ERROR_HPP_
