#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "affcurve/riccati.hpp"
#include "affcurve/thresholds.hpp"

namespace affcurve {

enum class Shape { Normal, Humped, Inverse, Indeterminate };

std::string_view to_string(Shape s);

struct ShapeClass {
    Shape label;
    /// Set only by the numerical oracle, for humped curves.
    std::optional<double> hump_location;
};

/// Yield curve shape for short rate r: normal if r <= b_y_norm, inverse if
/// r >= b_inv, humped in between. Throws Error(OutOfStateSpace) for r not in D.
ShapeClass classify_yield(const Thresholds& th, double r);

/// Forward curve shape: as classify_yield with b_fw_norm in place of b_y_norm.
ShapeClass classify_forward(const Thresholds& th, double r);

/// Quantities behind the shape results, sampled on an ABCurve grid:
///   k(x) = F'(B(x)) + r R'(B(x))            (forward slope = -B'(x) k(x))
///   M(x) = A - x F(B) + r (B - x (R(B) - 1))  (yield slope = M(x) / x^2)
/// and the limit of M at infinity, c (r - b_y_norm).
struct Diagnostics {
    std::vector<double> xs;
    std::vector<double> k_values;
    std::vector<double> M_values;
    double M_limit;
};

Diagnostics diagnostics(const AffineModel& m, const Thresholds& th, double r, const ABCurve& ab);

}  // namespace affcurve
