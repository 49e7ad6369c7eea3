#ifndef VORTEXDIV_ERRORS_HPP
#define VORTEXDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vortexdiv {

// Input outside the mathematical domain of an operation (e.g. |x| >= 1 in a
// non-terminating hypergeometric series, Re(p) <= -|l0| at |xi| = 1).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// An iterative solver exhausted its budget. On the documented preconditions
// this signals an internal bug, not bad user input.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature hit its refinement cap before reaching tolerance.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

// A truncated series kept less of the norm than required.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_norm(achieved) {}
  double achieved_norm;
};

// Zero or near-zero input where a direction/normalization is required.
class DegenerateInput : public std::invalid_argument {
 public:
  explicit DegenerateInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed spectrum file or other structured input.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invariant violation that cannot occur on valid inputs.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace vortexdiv

#endif
