#pragma once

// Ordering condition for repulsion across an intervening medium:
// eps1(i xi) < eps0(i xi) < eps2(i xi).

#include <vector>

#include "casimir/materials.hpp"

namespace casimir::app {

struct RepulsionVerdict {
  bool holds = false;
  std::vector<double> violations;  ///< frequencies (eV) where the strict ordering fails
};

RepulsionVerdict repulsion_check(const materials::PermittivityModel& eps0,
                                 const materials::PermittivityModel& eps1,
                                 const materials::PermittivityModel& eps2,
                                 const std::vector<double>& xi, double temperature = 300.0);

}  // namespace casimir::app
