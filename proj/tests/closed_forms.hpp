#pragma once

// Closed-form thresholds for the built-in models, used as independent
// references for the numerical routines.

#include <cmath>

#include "affcurve/affine_model.hpp"

namespace closed {

struct Bundle {
    double b_fw_norm;
    double b_y_norm;
    double b_asymp;
    double b_inv;
};

inline Bundle vasicek(const affcurve::VasicekParams& p) {
    const double s2l2 = p.sigma * p.sigma / (p.lambda * p.lambda);
    return {p.theta - s2l2, p.theta - 0.75 * s2l2, p.theta - 0.5 * s2l2, p.theta};
}

inline Bundle cir(const affcurve::CirParams& p) {
    const double g = std::sqrt(2.0 * p.sigma * p.sigma + p.a * p.a);
    const double c = -2.0 / (p.a + g);
    return {p.a * p.theta / g, 2.0 * p.a * p.theta / (g - p.a) * std::log(2.0 * g / (p.a + g)),
            -p.a * p.theta * c, p.theta};
}

inline Bundle gamma_ou(const affcurve::GammaOuParams& p) {
    const double q = 1.0 + p.theta / p.lambda;
    return {p.k * p.theta / (q * q), p.k * p.lambda / q * std::log(q), p.k * p.theta / q,
            p.k * p.theta};
}

}  // namespace closed
