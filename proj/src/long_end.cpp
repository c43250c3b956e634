#include "affcurve/long_end.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <utility>

#include "affcurve/error.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

constexpr double kBracketStart = -1e-6;
constexpr int kMaxDoublings = 200;
constexpr double kAbscissaTol = 1e-14;

// Brent's method on g(u) = R(u) - 1 over [lo, hi] with g(lo) >= 0 > g(hi).
double brent(const AffineModel& m, double lo, double hi, double tol) {
    auto g = [&m](double u) { return m.R(u) - 1.0; };
    // Pull the left end inside the effective domain first.
    while (!std::isfinite(g(lo))) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (!std::isfinite(gm) || gm >= 0.0) lo = mid; else hi = mid;
    }
    double a = lo, b = hi, c = hi;
    double fa = g(a), fb = g(b), fc = fb;
    double d = b - a, e = d;
    for (int iter = 0; iter < 300; ++iter) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                            0.5 * kAbscissaTol * std::max(1.0, std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) <= tol || std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = g(b);
    }
    return b;
}

}  // namespace

LongEnd find_c(const AffineModel& m, double tol) {
    m.require_valid();
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "root tolerance must be positive");

    double c;
    if (m.R_is_linear()) {
        const double beta = m.dR(0.0);
        if (!(beta < 0.0)) {
            throw Error(ErrorCode::NoRoot, "linear R with slope " + detail::shortest(beta) +
                                               " >= 0 has no negative root of R = 1");
        }
        c = 1.0 / beta;
    } else {
        const double edge = m.R_domain_lower();
        double hi = 0.0;
        double lo = kBracketStart;
        bool bracketed = false;
        for (int i = 0; i < kMaxDoublings; ++i) {
            if (lo < edge) {
                lo = edge;
                bracketed = m.R(lo) >= 1.0;
                break;
            }
            const double r = m.R(lo);
            if (r >= 1.0) {
                bracketed = true;
                break;
            }
            hi = lo;
            lo *= 2.0;
        }
        if (!bracketed) {
            throw Error(ErrorCode::NoRoot, "R(u) < 1 down to u = " + detail::shortest(lo) +
                                               "; quasi-mean-reversion is zero");
        }
        c = (m.R(lo) - 1.0 == 0.0) ? lo : brent(m, lo, hi, tol);
    }
    const double b_asymp = -m.F(c);
    if (!std::isfinite(b_asymp)) {
        throw Error(ErrorCode::NonFinite, "F(c) is not finite at c = " + detail::shortest(c));
    }
    return {c, -1.0 / c, b_asymp};
}

}  // namespace affcurve
