#include "affcurve/thresholds.hpp"

#include <algorithm>
#include <cmath>

#include "affcurve/error.hpp"
#include "affcurve/quadrature.hpp"
#include "format.hpp"

namespace affcurve {

ExtendedRate::ExtendedRate(double value) : infinite_(false), value_(value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument,
                    "ExtendedRate needs a finite value; use ExtendedRate::infinity()");
    }
}

double ExtendedRate::value() const {
    if (infinite_) throw Error(ErrorCode::InvalidArgument, "rate is +infinity");
    return value_;
}

std::partial_ordering operator<=>(const ExtendedRate& lhs, double rhs) {
    if (lhs.infinite_) {
        return std::isnan(rhs) ? std::partial_ordering::unordered
                               : std::partial_ordering::greater;
    }
    return lhs.value_ <=> rhs;
}

bool operator==(const ExtendedRate& lhs, double rhs) {
    return !lhs.infinite_ && lhs.value_ == rhs;
}

std::string ExtendedRate::to_string() const {
    return infinite_ ? std::string("inf") : detail::shortest(value_);
}

double b_fw_norm(const AffineModel& m, const LongEnd& le) {
    const double dr = m.dR(le.c);
    const double df = m.dF(le.c);
    if (!std::isfinite(dr) || !std::isfinite(df) || dr == 0.0) {
        throw Error(ErrorCode::DerivativeUnavailable,
                    "F'(c) or R'(c) unusable at c = " + detail::shortest(le.c));
    }
    return -df / dr;
}

double b_y_norm(const AffineModel& m, const LongEnd& le, double tol) {
    const double c = le.c;
    const double Fc = m.F(c);
    const double limit = m.dF(c) / m.dR(c);
    if (!std::isfinite(limit)) {
        throw Error(ErrorCode::DerivativeUnavailable,
                    "limit F'(c)/R'(c) not finite at c = " + detail::shortest(c));
    }
    const double eps = std::max(1e-10, 1e-8 * std::abs(c));
    auto integrand = [&m, Fc](double u) { return (m.F(u) - Fc) / (m.R(u) - 1.0); };
    // Absolute tolerance on the threshold translates to tol*|c| on the integral.
    const QuadratureResult q = integrate(integrand, c + eps, 0.0, tol * std::abs(c));
    return (limit * eps + q.value) / c;
}

ExtendedRate b_inv(const AffineModel& m) {
    const double dr0 = m.dR(0.0);
    if (dr0 < 0.0) return ExtendedRate(-m.dF(0.0) / dr0);
    return ExtendedRate::infinity();
}

Thresholds compute_thresholds(const AffineModel& m) {
    m.require_valid();
    const LongEnd le = find_c(m);
    Thresholds th{le, b_fw_norm(m, le), b_y_norm(m, le), b_inv(m), m.state_space()};

    const bool ordered = th.b_fw_norm < th.b_y_norm && th.b_y_norm < le.b_asymp &&
                         th.b_inv > le.b_asymp;
    if (!ordered) {
        throw Error(ErrorCode::OrderingViolation,
                    m.describe() + ": b_fw_norm=" + detail::shortest(th.b_fw_norm) +
                        " b_y_norm=" + detail::shortest(th.b_y_norm) +
                        " b_asymp=" + detail::shortest(le.b_asymp) +
                        " b_inv=" + th.b_inv.to_string());
    }
    // D must meet (b_y_norm, b_inv); only the nonnegative half-line can miss it.
    if (m.state_space() == StateSpace::NonNegativeReals && !(th.b_inv > 0.0)) {
        throw Error(ErrorCode::OrderingViolation,
                    m.describe() + ": state space does not meet (b_y_norm, b_inv)");
    }
    return th;
}

}  // namespace affcurve
