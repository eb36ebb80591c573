#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wellround {

// Domain errors carry a short machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class NotPositiveDefinite : public Error {
 public:
  // index is 1-based: the first pivot that came out nonpositive.
  explicit NotPositiveDefinite(std::size_t index)
      : Error("NotPositiveDefinite",
              "form is not positive definite (pivot " + std::to_string(index) + ")"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class NotSpanning : public Error {
 public:
  NotSpanning() : Error("NotSpanning", "configuration does not span Q^n") {}
};

class Infeasible : public Error {
 public:
  Infeasible() : Error("Infeasible", "configuration bounds no cell") {}
};

class AlreadyFull : public Error {
 public:
  AlreadyFull() : Error("AlreadyFull", "sublattice already spans Q^n") {}
};

class DimensionUnsupported : public Error {
 public:
  explicit DimensionUnsupported(const std::string& what) : Error("DimensionUnsupported", what) {}
};

class IncompatibleComplexes : public Error {
 public:
  explicit IncompatibleComplexes(const std::string& what)
      : Error("IncompatibleComplexes", what) {}
};

class NotApplicable : public Error {
 public:
  explicit NotApplicable(const std::string& what) : Error("NotApplicable", what) {}
};

}  // namespace wellround
