#pragma once

// Edge-flip rate profiles lambda(r): off, growing with r, constant, or
// vanishing as r^(-alpha).

#include <cmath>
#include <stdexcept>

namespace radyn {

enum class DynamicsKind { Static, Fast, Regular, Slow };

struct DynamicsSpec {
  DynamicsKind kind = DynamicsKind::Static;
  // Fast: lambda(r) = r^value with value > 0. Regular: lambda(r) = value > 0.
  // Slow: lambda(r) = r^(-value) with value > 0. Static: ignored.
  double value = 0.0;

  void validate() const {
    if (kind == DynamicsKind::Static) return;
    if (!(value > 0.0))
      throw std::invalid_argument("dynamics parameter must be positive");
  }

  double lambda(double r) const {
    switch (kind) {
      case DynamicsKind::Static: return 0.0;
      case DynamicsKind::Fast: return std::pow(r, value);
      case DynamicsKind::Regular: return value;
      case DynamicsKind::Slow: return std::pow(r, -value);
    }
    return 0.0;
  }
};

const char* dynamics_kind_name(DynamicsKind kind);

}  // namespace radyn
