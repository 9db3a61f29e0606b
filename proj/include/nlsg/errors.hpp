#pragma once

#include <stdexcept>
#include <string>

namespace nlsg {

// Base of every error raised by the library. The CLI maps UsageError to exit
// code 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class NonRegular : public InvalidGraph {
 public:
  explicit NonRegular(std::size_t vertex)
      : InvalidGraph("vertex " + std::to_string(vertex) + " has the wrong degree"), vertex_(vertex) {}
  std::size_t vertex() const { return vertex_; }

 private:
  std::size_t vertex_;
};

class IncompatibleSizes : public Error {
 public:
  using Error::Error;
};

class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

class DegreeTooSmall : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class NoCodeFound : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotCayley : public Error {
 public:
  using Error::Error;
};

class PlanInfeasible : public Error {
 public:
  using Error::Error;
};

class EmptyTruncation : public Error {
 public:
  using Error::Error;
};

class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t x, std::size_t y, std::size_t z)
      : Error("d(" + std::to_string(x) + "," + std::to_string(z) + ") exceeds d(" + std::to_string(x) + "," +
              std::to_string(y) + ") + d(" + std::to_string(y) + "," + std::to_string(z) + ")"),
        triple_{x, y, z} {}
  const std::size_t (&triple() const)[3] { return triple_; }

 private:
  std::size_t triple_[3];
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlsg
