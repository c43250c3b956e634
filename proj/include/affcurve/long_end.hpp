#pragma once

#include "affcurve/affine_model.hpp"

namespace affcurve {

/// Long end of the term structure: the negative root c of R(c) = 1, the
/// quasi-mean-reversion lambda = -1/c and the long-term rate -F(c).
struct LongEnd {
    double c;
    double lambda_qmr;
    double b_asymp;
};

inline constexpr double kDefaultRootTol = 1e-13;

/// Locates c. A linear R(u) = beta u with beta < 0 gives c = 1/beta exactly;
/// otherwise the root is bracketed by leftward doubling from -1e-6 and
/// polished with Brent's method until |R(c) - 1| <= tol or the bracket is
/// narrower than 1e-14 (relative).
///
/// Throws Error(NoRoot) when R stays below 1 on the whole effective domain,
/// i.e. the quasi-mean-reversion is zero.
LongEnd find_c(const AffineModel& m, double tol = kDefaultRootTol);

}  // namespace affcurve
