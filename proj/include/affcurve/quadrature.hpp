#pragma once

#include <cstddef>
#include <functional>

namespace affcurve {

struct QuadratureResult {
    double value;
    double error_estimate;
    std::size_t intervals;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature over [a, b]: the
/// interval with the largest error estimate is bisected until the summed
/// estimate is below max(abs_tol, 100 ulp of the result). Throws
/// Error(QuadratureFailure) if more than max_intervals subintervals would be
/// needed or the integrand is not finite.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::size_t max_intervals = 1'000'000);

}  // namespace affcurve
