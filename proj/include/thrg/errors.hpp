#ifndef THRG_ERRORS_HPP
#define THRG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace thrg {

/// Bad caller-supplied argument (beta <= 0, m out of range, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text. `location` is a 1-based line or record index.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t location, const std::string& what, const std::string& unit = "line")
      : std::runtime_error(unit + " " + std::to_string(location) + ": " + what), location_(location) {}

  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

/// A decomposition or grammar that violates Chomsky Normal Form.
class NotCnfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CanonicalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonterminationError : public std::runtime_error {
 public:
  explicit NonterminationError(std::size_t applications)
      : std::runtime_error("derivation exceeded " + std::to_string(applications) + " rule applications"),
        applications_(applications) {}

  std::size_t applications() const noexcept { return applications_; }

 private:
  std::size_t applications_;
};

class DerivationStuckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnreachableSizeError : public std::runtime_error {
 public:
  UnreachableSizeError(std::size_t size, std::vector<std::size_t> nearest)
      : std::runtime_error(describe(size, nearest)), size_(size), nearest_(std::move(nearest)) {}

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::size_t>& nearest() const noexcept { return nearest_; }

 private:
  static std::string describe(std::size_t size, const std::vector<std::size_t>& nearest) {
    std::string s = "no derivation produces exactly " + std::to_string(size) + " vertices";
    if (!nearest.empty()) {
      s += "; nearest reachable sizes:";
      for (auto n : nearest) s += " " + std::to_string(n);
    }
    return s;
  }

  std::size_t size_;
  std::vector<std::size_t> nearest_;
};

class MaxAttemptsError : public std::runtime_error {
 public:
  explicit MaxAttemptsError(std::size_t attempts)
      : std::runtime_error("rejection sampling gave up after " + std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t iterations, double residual)
      : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace thrg

#endif  // THRG_ERRORS_HPP
