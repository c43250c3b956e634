#include "affcurve/classifier.hpp"

#include <cmath>

#include "affcurve/error.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

void require_in_state_space(const Thresholds& th, double r) {
    const bool ok = std::isfinite(r) &&
                    (th.state_space == StateSpace::AllReals || r >= 0.0);
    if (!ok) {
        throw Error(ErrorCode::OutOfStateSpace, "short rate " + detail::shortest(r) +
                                                    " is not in the " +
                                                    std::string(to_string(th.state_space)) +
                                                    " state space");
    }
}

ShapeClass classify(const Thresholds& th, double normal_threshold, double r) {
    require_in_state_space(th, r);
    if (r <= normal_threshold) return {Shape::Normal, std::nullopt};
    if (th.b_inv <= r) return {Shape::Inverse, std::nullopt};
    return {Shape::Humped, std::nullopt};
}

}  // namespace

std::string_view to_string(Shape s) {
    switch (s) {
        case Shape::Normal: return "normal";
        case Shape::Humped: return "humped";
        case Shape::Inverse: return "inverse";
        case Shape::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

ShapeClass classify_yield(const Thresholds& th, double r) {
    return classify(th, th.b_y_norm, r);
}

ShapeClass classify_forward(const Thresholds& th, double r) {
    return classify(th, th.b_fw_norm, r);
}

Diagnostics diagnostics(const AffineModel& m, const Thresholds& th, double r, const ABCurve& ab) {
    Diagnostics d;
    d.xs = ab.xs;
    d.k_values.reserve(ab.size());
    d.M_values.reserve(ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
        const double x = ab.xs[i];
        const double b = ab.Bs[i];
        d.k_values.push_back(m.dF(b) + r * m.dR(b));
        const double L1 = ab.As[i] - x * m.F(b);
        const double L2 = b - x * (m.R(b) - 1.0);
        d.M_values.push_back(L1 + r * L2);
    }
    d.M_limit = th.long_end.c * (r - th.b_y_norm);
    return d;
}

}  // namespace affcurve
