#ifndef TUNNELING_UNITS_HPP
#define TUNNELING_UNITS_HPP

#include "tunneling/errors.hpp"

namespace tunneling {

/// Particle mass and reduced Planck constant. Natural units (mu = hbar = 1) by default.
struct UnitsConfig {
  double mass = 1.0;
  double hbar = 1.0;

  void validate() const {
    if (!(mass > 0.0) || !(hbar > 0.0))
      throw InvalidParameter("mass and hbar must be strictly positive");
  }
};

}  // namespace tunneling

#endif  // TUNNELING_UNITS_HPP
