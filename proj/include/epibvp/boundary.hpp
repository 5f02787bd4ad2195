#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace epibvp {

/// Right-boundary condition on w at r = 1. All three share w'(0) = 0.
enum class BoundaryKind {
  Dirichlet,  ///< w(1) = 0
  NavierOne,  ///< w'(1) = 0
  NavierTwo,  ///< w(1) = w'(1)
};

/// Residual of the right-boundary condition given w(1) and w'(1).
template <class T>
constexpr T boundary_functional(BoundaryKind bc, T w1, T w1_prime) {
  switch (bc) {
    case BoundaryKind::Dirichlet:
      return w1;
    case BoundaryKind::NavierOne:
      return w1_prime;
    case BoundaryKind::NavierTwo:
      return w1 - w1_prime;
  }
  return w1;
}

/// Iteration depth used for each family unless configured otherwise.
constexpr int default_iterations(BoundaryKind bc) { return bc == BoundaryKind::Dirichlet ? 6 : 7; }

/// "dirichlet", "navier1", "navier2".
std::string_view to_string(BoundaryKind bc);
std::optional<BoundaryKind> parse_boundary_kind(std::string_view name);

}  // namespace epibvp
