#pragma once

#include <stdexcept>
#include <string>

namespace sphinterp {

/// Input violates an operation's precondition (bad degree, duplicate node,
/// asymmetric latitudes, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A polynomial was not divisible by (t - root) to within tolerance.
class DivisibilityError : public std::runtime_error {
 public:
  DivisibilityError(double root, double residual)
      : std::runtime_error("polynomial not divisible by (t - " +
                           std::to_string(root) + "), residual " +
                           std::to_string(residual)),
        root_(root),
        residual_(residual) {}

  double root() const noexcept { return root_; }
  double residual() const noexcept { return residual_; }

 private:
  double root_;
  double residual_;
};

/// The collocation matrix is singular to working precision.
class PoisednessError : public std::runtime_error {
 public:
  PoisednessError(const std::string& what, double pivot_min)
      : std::runtime_error(what), pivot_min_(pivot_min) {}

  double pivot_min() const noexcept { return pivot_min_; }

  /// An exactly zero pivot means the node set itself is degenerate; a tiny
  /// nonzero pivot means conditioning collapsed.
  bool structurally_singular() const noexcept { return pivot_min_ == 0.0; }

 private:
  double pivot_min_;
};

/// A step that must succeed in exact arithmetic failed numerically.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphinterp
