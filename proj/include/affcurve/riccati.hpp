#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "affcurve/affine_model.hpp"

namespace affcurve {

/// Solution of A' = F(B), B' = R(B) - 1, A(0) = B(0) = 0 on a maturity grid.
/// xs starts at 0 and is strictly increasing.
struct ABCurve {
    std::vector<double> xs;
    std::vector<double> As;
    std::vector<double> Bs;

    std::size_t size() const { return xs.size(); }
};

enum class CurveKind { Yield, Forward };

std::string_view to_string(CurveKind k);

struct Curve {
    std::vector<double> xs;
    std::vector<double> values;
    CurveKind kind;
};

inline constexpr double kDefaultRiccatiTol = 1e-10;
inline constexpr double kDefaultGridStart = 1e-4;
inline constexpr std::size_t kDefaultGridPoints = 400;

/// Integrates the Riccati system from 0 to x_max with an embedded
/// Dormand-Prince 5(4) pair. The result holds every accepted step.
/// Local error per unit step is kept below tol (scaled by 1 + |y|).
ABCurve solve_ab(const AffineModel& m, double x_max, double tol = kDefaultRiccatiTol);

/// Same integrator, but steps are clipped so the solution lands exactly on
/// each maturity in `grid` (strictly increasing, positive). The returned
/// curve is x = 0 followed by the grid points.
ABCurve solve_ab_on_grid(const AffineModel& m, std::span<const double> grid,
                         double tol = kDefaultRiccatiTol);

/// Closed-form B(x) for the Vasicek and CIR models; used as an oracle.
double closed_form_b(const AffineModel& m, double x);

/// n points geometrically spaced over [x_min, x_max].
std::vector<double> geometric_grid(double x_min, double x_max, std::size_t n = kDefaultGridPoints);

/// Y(x) = -(A(x) + r B(x)) / x on the grid points with x > 0.
Curve yield_curve(const AffineModel& m, double r, const ABCurve& ab);

/// f(x) = -F(B(x)) - r (R(B(x)) - 1), i.e. -A'(x) - r B'(x) with the
/// derivatives taken from the ODE rather than by differencing.
Curve forward_curve(const AffineModel& m, double r, const ABCurve& ab);

/// CSV with header "x,value" and 17 significant digits.
void write_csv(std::ostream& os, const Curve& curve);

}  // namespace affcurve
