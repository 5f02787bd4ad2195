#include "epibvp/boundary.hpp"

namespace epibvp {

std::string_view to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::Dirichlet:
      return "dirichlet";
    case BoundaryKind::NavierOne:
      return "navier1";
    case BoundaryKind::NavierTwo:
      return "navier2";
  }
  return "unknown";
}

std::optional<BoundaryKind> parse_boundary_kind(std::string_view name) {
  if (name == "dirichlet") return BoundaryKind::Dirichlet;
  if (name == "navier1") return BoundaryKind::NavierOne;
  if (name == "navier2") return BoundaryKind::NavierTwo;
  return std::nullopt;
}

}  // namespace epibvp
