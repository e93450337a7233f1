#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schubert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Sum of codimensions differs from the dimension of the ambient space.
class CodimensionMismatch : public Error {
 public:
  CodimensionMismatch(int actual, int required)
      : Error("codimension sum " + std::to_string(actual) + " does not equal dimension " +
              std::to_string(required) + " (deficit " + std::to_string(required - actual) + ")"),
        actual_(actual),
        required_(required) {}

  int actual() const { return actual_; }
  int required() const { return required_; }
  int deficit() const { return required_ - actual_; }

 private:
  int actual_;
  int required_;
};

class InfeasiblePair : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class NotBilinear : public Error {
 public:
  using Error::Error;
};

class NotRealSystem : public Error {
 public:
  using Error::Error;
};

class InapplicableReduction : public Error {
 public:
  using Error::Error;
};

class FlagsNotOpposite : public Error {
 public:
  using Error::Error;
};

class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

class BezoutCeilingExceeded : public Error {
 public:
  BezoutCeilingExceeded(std::string paths, std::uint64_t ceiling)
      : Error("total-degree homotopy needs " + paths + " paths, above the ceiling of " +
              std::to_string(ceiling) +
              "; solve this instance with an external regeneration solver and certify the "
              "result with `schubert certify`, or pass --force"),
        paths_(std::move(paths)),
        ceiling_(ceiling) {}

  const std::string& paths() const { return paths_; }
  std::uint64_t ceiling() const { return ceiling_; }

 private:
  std::string paths_;
  std::uint64_t ceiling_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace schubert
