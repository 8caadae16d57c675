#include "casimir/app/repulsion.hpp"

#include <stdexcept>

namespace casimir::app {

RepulsionVerdict repulsion_check(const materials::PermittivityModel& eps0,
                                 const materials::PermittivityModel& eps1,
                                 const materials::PermittivityModel& eps2,
                                 const std::vector<double>& xi, double temperature) {
  if (xi.empty()) throw std::invalid_argument("repulsion check needs at least one frequency");
  RepulsionVerdict verdict;
  for (double x : xi) {
    if (!(x > 0.0)) throw std::invalid_argument("repulsion check frequencies must be positive");
    const double e0 = materials::eval_eps(eps0, x, temperature);
    const double e1 = materials::eval_eps(eps1, x, temperature);
    const double e2 = materials::eval_eps(eps2, x, temperature);
    if (!(e1 < e0 && e0 < e2)) verdict.violations.push_back(x);
  }
  verdict.holds = verdict.violations.empty();
  return verdict;
}

}  // namespace casimir::app
