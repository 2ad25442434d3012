/*
 * shared scalar types, saturating cost arithmetic, and error types
 */
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace daccbs {

using VertexId = std::int32_t;
using AgentId = std::int32_t;
using Cost = std::int64_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr AgentId kNoAgent = -1;

// +inf sentinel; arithmetic involving it saturates
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max();

constexpr bool is_finite(Cost c) { return c != kInfinity; }

constexpr Cost sat_add(Cost a, Cost b)
{
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

// a - b where an infinite minuend stays infinite
constexpr Cost sat_sub(Cost a, Cost b)
{
  if (a == kInfinity) return kInfinity;
  if (b == kInfinity) return -kInfinity;
  return a - b;
}

// malformed map / scenario text; carries the 1-based line number
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line)
  {
  }
  int line() const { return line_; }

 private:
  int line_;
};

// structurally valid input that violates a problem precondition
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// caller broke an operation's contract (wrong state, malformed argument)
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// internal invariant broken: a bug, never a user error
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace daccbs
