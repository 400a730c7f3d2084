// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_ERRORS_HPP
#define DEBYE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace debye
{

// Bad quadrature or run configuration (grid too small for a rule, unknown order, ...).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Material parameters that violate the sign conditions the solver relies on.
class ParameterError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Input that violates an operator precondition, e.g. nonzero mean passed to R0.
class PreconditionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ConditioningError : public std::runtime_error
{
public:
  ConditioningError(const std::string &what, double cond)
    : std::runtime_error(what), condition(cond)
  {
  }
  double condition;
};

class NearEvaluationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace debye

#endif  // DEBYE_ERRORS_HPP
