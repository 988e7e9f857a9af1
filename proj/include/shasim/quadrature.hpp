#ifndef SHASIM_QUADRATURE_HPP_
#define SHASIM_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "shasim/interval.hpp"

namespace shasim {

// Adaptive Simpson integration to an absolute tolerance. Dependency-free and
// fully reproducible. Throws QuadratureFailure when the recursion depth is
// exhausted before reaching the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth = 48);

// Same, but the domain is first split at the given breakpoints (clamped to
// [a,b]); use where the integrand is only piecewise smooth. The tolerance is
// divided evenly over the pieces.
double integrate_with_breakpoints(const std::function<double(double)>& f, double a, double b,
                                  std::vector<double> breakpoints, double abs_tol,
                                  int max_depth = 48);

// Integrate over every part of a time-interval set; infinite upper ends must
// already have been truncated by the caller.
double integrate_over(const std::function<double(double)>& f, const TimeIntervalSet& set,
                      double abs_tol, const std::vector<double>& breakpoints = {});

}  // namespace shasim

#endif  // SHASIM_QUADRATURE_HPP_
