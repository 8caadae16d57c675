#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/numerics/parallel.hpp"
#include "casimir/numerics/summation.hpp"
#include "casimir/units.hpp"

namespace casimir::lifshitz {

double MatsubaraGrid::xi(int l) const { return l * units::matsubara_spacing(temperature); }

SumResult matsubara_sum(const MatsubaraGrid& grid, const std::function<TermValue(int)>& term,
                        std::optional<double> a_nm) {
  if (!(grid.temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const int batch = grid.threads <= 1 ? 1 : 4 * grid.threads;
  numerics::CompensatedSum sum;
  numerics::CompensatedSum error;
  SumResult out;
  std::vector<TermValue> values;
  int quiet = 0;
  double previous = 0.0;
  for (int start = 0;; start += batch) {
    if (start >= grid.max_terms) {
      throw NumericalError("Matsubara sum did not reach tail tolerance within " +
                               std::to_string(grid.max_terms) + " terms",
                           grid.max_terms, a_nm);
    }
    const int stop = std::min(start + batch, grid.max_terms);
    values.assign(static_cast<std::size_t>(stop - start), TermValue{});
    numerics::parallel_for(static_cast<std::size_t>(start), static_cast<std::size_t>(stop),
                           grid.threads, [&](std::size_t l) {
                             values[l - static_cast<std::size_t>(start)] =
                                 term(static_cast<int>(l));
                           });
    for (int l = start; l < stop; ++l) {
      const auto& v = values[static_cast<std::size_t>(l - start)];
      const double weight = l == 0 ? 0.5 : 1.0;
      const double t = weight * v.value;
      sum += t;
      error += weight * v.error;
      out.static_probe = out.static_probe || v.static_probe;
      quiet = std::abs(t) <= grid.tail_tol * std::abs(sum.value()) ? quiet + 1 : 0;
      if (quiet >= 3) {
        out.terms_used = l + 1;
        if (l >= 2 && previous != 0.0) {
          const double ratio = t / previous;
          if (ratio > 0.0 && ratio < 1.0) out.tail_estimate = t * ratio / (1.0 - ratio);
        }
        sum += out.tail_estimate;
        out.value = sum.value();
        out.quadrature_error = error.value();
        return out;
      }
      previous = t;
    }
  }
}

}  // namespace casimir::lifshitz
