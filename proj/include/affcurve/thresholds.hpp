#pragma once

#include <compare>
#include <string>

#include "affcurve/affine_model.hpp"
#include "affcurve/long_end.hpp"

namespace affcurve {

/// A rate that may be +infinity. The infinite case is a tag, never a
/// floating-point inf; comparisons with plain rates are explicit.
class ExtendedRate {
public:
    static ExtendedRate infinity() { return ExtendedRate(); }
    explicit ExtendedRate(double value);

    bool is_infinite() const { return infinite_; }
    /// Finite value; throws Error(InvalidArgument) when infinite.
    double value() const;

    friend std::partial_ordering operator<=>(const ExtendedRate& lhs, double rhs);
    friend bool operator==(const ExtendedRate& lhs, double rhs);
    friend bool operator==(const ExtendedRate&, const ExtendedRate&) = default;

    /// Decimal text, or "inf".
    std::string to_string() const;

private:
    ExtendedRate() = default;

    bool infinite_ = true;
    double value_ = 0.0;
};

/// Shape thresholds of one model, ordered b_fw_norm < b_y_norm < b_asymp < b_inv.
struct Thresholds {
    LongEnd long_end;
    double b_fw_norm;
    double b_y_norm;
    ExtendedRate b_inv;
    StateSpace state_space;
};

inline constexpr double kDefaultQuadratureTol = 1e-12;

/// -F'(c) / R'(c): forward curves are normal at or below this short rate.
double b_fw_norm(const AffineModel& m, const LongEnd& le);

/// (1/c) * integral over [c, 0] of (F(u) - F(c)) / (R(u) - 1) du: yield
/// curves are normal at or below this short rate.
///
/// The integrand is 0/0 at u = c. On [c, c + eps] with
/// eps = max(1e-10, 1e-8 |c|) it is replaced by its limit F'(c)/R'(c); the
/// rest is integrated adaptively to absolute error tol.
double b_y_norm(const AffineModel& m, const LongEnd& le, double tol = kDefaultQuadratureTol);

/// -F'(0)/R'(0) when R'(0) < 0, otherwise +infinity.
ExtendedRate b_inv(const AffineModel& m);

/// All thresholds of a validated model. Throws Error(OrderingViolation) if
/// the strict ordering fails or the state space misses (b_y_norm, b_inv).
Thresholds compute_thresholds(const AffineModel& m);

}  // namespace affcurve
