#include "affcurve/affine_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "affcurve/error.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " must be a positive finite number, got " +
                        detail::shortest(v));
    }
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
    }
}

// Left end of the interval on which the structural checks sample F and R.
// This is the root of R(u) = 1 located coarsely by doubling plus bisection,
// or [-1, 0] clipped to the effective domains when no root exists.
double sampling_lower(const AffineModel& m) {
    const double edge = std::max(m.F_domain_lower(), m.R_domain_lower());
    double hi = 0.0;
    double lo = -1e-6;
    bool bracketed = false;
    for (int i = 0; i < 200; ++i) {
        if (lo < edge) break;
        double r = m.R(lo);
        if (!std::isfinite(r) || r >= 1.0) {
            bracketed = std::isfinite(r);
            break;
        }
        hi = lo;
        lo *= 2.0;
    }
    if (!bracketed) {
        double fallback = -1.0;
        if (std::isfinite(edge)) fallback = std::max(fallback, edge * (1.0 - 1e-9));
        return fallback;
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (m.R(mid) >= 1.0) lo = mid; else hi = mid;
    }
    return lo;
}

bool convex_on(const std::vector<double>& us, const std::vector<double>& vs) {
    double scale = 1.0;
    for (double v : vs) scale = std::max(scale, std::abs(v));
    const double slack = 1e-12 * scale;
    const std::size_t n = us.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                double chord = ((us[k] - us[j]) * vs[i] + (us[j] - us[i]) * vs[k]) /
                               (us[k] - us[i]);
                if (vs[j] > chord + slack) return false;
            }
        }
    }
    return true;
}

// Largest relative mismatch between an analytic derivative and a centered
// difference of the value function.
double derivative_mismatch(const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double lo) {
    double worst = 0.0;
    constexpr int n = 50;
    for (int i = 0; i < n; ++i) {
        double u = lo + (i + 0.5) / n * (0.0 - lo);
        double h = 1e-6 * std::max(1.0, std::abs(u));
        double fd = (f(u + h) - f(u - h)) / (2.0 * h);
        double d = df(u);
        if (!std::isfinite(fd) || !std::isfinite(d)) return kInf;
        double denom = std::max({std::abs(d), std::abs(fd), 1e-4});
        worst = std::max(worst, std::abs(d - fd) / denom);
    }
    return worst;
}

}  // namespace

std::string_view to_string(StateSpace s) {
    return s == StateSpace::AllReals ? "all_reals" : "nonnegative";
}

std::string_view to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Vasicek: return "vasicek";
        case ModelKind::Cir: return "cir";
        case ModelKind::GammaOu: return "gamma_ou";
        case ModelKind::Quadratic: return "quadratic";
        case ModelKind::Custom: return "custom";
    }
    return "custom";
}

double CirParams::gamma() const { return std::sqrt(2.0 * sigma * sigma + a * a); }

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::failures() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.passed) continue;
        if (!out.empty()) out += "; ";
        out += c.name;
        if (!c.detail.empty()) out += " (" + c.detail + ")";
    }
    return out;
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

AffineModel::AffineModel(std::string name, Evaluator F, Evaluator R, StateSpace state_space,
                         ModelKind kind, ModelParams params)
    : name_(std::move(name)),
      F_(std::move(F)),
      R_(std::move(R)),
      state_space_(state_space),
      kind_(kind),
      params_(std::move(params)) {
    if (!F_.value || !F_.derivative || !R_.value || !R_.derivative) {
        throw Error(ErrorCode::InvalidArgument, "model '" + name_ + "' has an empty evaluator");
    }
    report_ = validate(*this);
}

double AffineModel::F(double u) const { return u < F_.domain_lower ? kInf : F_.value(u); }
double AffineModel::dF(double u) const { return u < F_.domain_lower ? kInf : F_.derivative(u); }
double AffineModel::R(double u) const { return u < R_.domain_lower ? kInf : R_.value(u); }
double AffineModel::dR(double u) const { return u < R_.domain_lower ? kInf : R_.derivative(u); }

void AffineModel::require_valid() const {
    if (!report_.ok()) {
        throw Error(ErrorCode::ValidationFailed,
                    "model '" + name_ + "' failed validation: " + report_.failures());
    }
}

bool AffineModel::contains(double r) const {
    if (!std::isfinite(r)) return false;
    return state_space_ == StateSpace::AllReals || r >= 0.0;
}

std::string AffineModel::describe() const {
    using detail::shortest;
    std::ostringstream os;
    os << to_string(kind_);
    std::visit(
        [&os](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, VasicekParams>) {
                os << "(lambda=" << shortest(p.lambda) << ",theta=" << shortest(p.theta)
                   << ",sigma=" << shortest(p.sigma) << ")";
            } else if constexpr (std::is_same_v<T, CirParams>) {
                os << "(a=" << shortest(p.a) << ",theta=" << shortest(p.theta)
                   << ",sigma=" << shortest(p.sigma) << ")";
            } else if constexpr (std::is_same_v<T, GammaOuParams>) {
                os << "(lambda=" << shortest(p.lambda) << ",k=" << shortest(p.k)
                   << ",theta=" << shortest(p.theta) << ")";
            } else if constexpr (std::is_same_v<T, QuadraticParams>) {
                os << "(f1=" << shortest(p.f1) << ",f2=" << shortest(p.f2)
                   << ",r1=" << shortest(p.r1) << ",r2=" << shortest(p.r2)
                   << ",state_space=" << to_string(p.state_space) << ")";
            }
        },
        params_);
    if (kind_ == ModelKind::Custom) os << ":" << name_;
    return os.str();
}

AffineModel make_vasicek(const VasicekParams& p) {
    require_positive(p.lambda, "vasicek lambda");
    require_positive(p.sigma, "vasicek sigma");
    require_finite(p.theta, "vasicek theta");
    const double lt = p.lambda * p.theta;
    const double half_s2 = 0.5 * p.sigma * p.sigma;
    const double lambda = p.lambda;
    Evaluator F{[=](double u) { return lt * u + half_s2 * u * u; },
                [=](double u) { return lt + 2.0 * half_s2 * u; }, false};
    Evaluator R{[=](double u) { return -lambda * u; }, [=](double) { return -lambda; }, true};
    return AffineModel("vasicek", std::move(F), std::move(R), StateSpace::AllReals,
                       ModelKind::Vasicek, p);
}

AffineModel make_cir(const CirParams& p) {
    require_positive(p.a, "cir a");
    require_positive(p.theta, "cir theta");
    require_positive(p.sigma, "cir sigma");
    const double at = p.a * p.theta;
    const double half_s2 = 0.5 * p.sigma * p.sigma;
    const double a = p.a;
    Evaluator F{[=](double u) { return at * u; }, [=](double) { return at; }, true};
    Evaluator R{[=](double u) { return half_s2 * u * u - a * u; },
                [=](double u) { return 2.0 * half_s2 * u - a; }, false};
    return AffineModel("cir", std::move(F), std::move(R), StateSpace::NonNegativeReals,
                       ModelKind::Cir, p);
}

AffineModel make_gamma_ou(const GammaOuParams& p) {
    require_positive(p.lambda, "gamma_ou lambda");
    require_positive(p.k, "gamma_ou k");
    require_positive(p.theta, "gamma_ou theta");
    const double scale = p.lambda * p.theta * p.k;
    const double theta = p.theta;
    const double lambda = p.lambda;
    Evaluator F{[=](double u) { return scale * u / (1.0 - theta * u); },
                [=](double u) {
                    double d = 1.0 - theta * u;
                    return scale / (d * d);
                },
                false};
    Evaluator R{[=](double u) { return -lambda * u; }, [=](double) { return -lambda; }, true};
    return AffineModel("gamma_ou", std::move(F), std::move(R), StateSpace::NonNegativeReals,
                       ModelKind::GammaOu, p);
}

AffineModel make_quadratic(const QuadraticParams& p) {
    require_finite(p.f1, "quadratic f1");
    require_finite(p.f2, "quadratic f2");
    require_finite(p.r1, "quadratic r1");
    require_finite(p.r2, "quadratic r2");
    const auto [f1, f2, r1, r2, ss] = p;
    Evaluator F{[=](double u) { return f1 * u + f2 * u * u; },
                [=](double u) { return f1 + 2.0 * f2 * u; }, f2 == 0.0};
    Evaluator R{[=](double u) { return r1 * u + r2 * u * u; },
                [=](double u) { return r1 + 2.0 * r2 * u; }, r2 == 0.0};
    return AffineModel("quadratic", std::move(F), std::move(R), ss, ModelKind::Quadratic, p);
}

AffineModel make_custom(std::string name, Evaluator F, Evaluator R, StateSpace state_space) {
    return AffineModel(std::move(name), std::move(F), std::move(R), state_space);
}

ValidationReport validate(const AffineModel& m) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool passed, std::string detail = {}) {
        rep.checks.push_back({std::move(name), passed, std::move(detail)});
    };

    const double F0 = m.F(0.0);
    const double R0 = m.R(0.0);
    add("F(0)=0", F0 == 0.0, "F(0)=" + detail::shortest(F0));
    add("R(0)=0", R0 == 0.0, "R(0)=" + detail::shortest(R0));

    const double lo = sampling_lower(m);
    constexpr int n = 41;
    std::vector<double> us(n), fs(n), rs(n);
    bool finite = true;
    for (int i = 0; i < n; ++i) {
        us[i] = lo + (0.0 - lo) * i / (n - 1);
        fs[i] = m.F(us[i]);
        rs[i] = m.R(us[i]);
        finite = finite && std::isfinite(fs[i]) && std::isfinite(rs[i]);
    }
    add("finite on sample interval", finite, "interval [" + detail::shortest(lo) + ", 0]");
    add("F convex", finite && convex_on(us, fs));
    add("R convex", finite && convex_on(us, rs));

    auto fvalue = [&m](double u) { return m.F(u); };
    auto fderiv = [&m](double u) { return m.dF(u); };
    auto rvalue = [&m](double u) { return m.R(u); };
    auto rderiv = [&m](double u) { return m.dR(u); };
    const double dF_err = derivative_mismatch(fvalue, fderiv, lo);
    const double dR_err = derivative_mismatch(rvalue, rderiv, lo);
    add("dF consistent", dF_err <= 1e-5, "max rel err " + detail::shortest(dF_err));
    add("dR consistent", dR_err <= 1e-5, "max rel err " + detail::shortest(dR_err));

    add("not both linear", !(m.F_is_linear() && m.R_is_linear()));
    add("F not identically zero",
        std::any_of(fs.begin(), fs.end(), [](double v) { return v != 0.0; }));

    if (m.state_space() == StateSpace::AllReals) {
        const double beta = m.dR(0.0);
        add("state space consistent", m.R_is_linear() && beta < 0.0,
            "all_reals requires R(u) = u/c with c < 0");
        // F must be finite on (1/beta, 0] (or (-inf, 0] when beta >= 0).
        bool cond = true;
        if (beta < 0.0) {
            for (int i = 1; i <= 50; ++i) {
                double u = (1.0 / beta) * (1.0 - i / 50.0);
                cond = cond && std::isfinite(m.F(u));
            }
            cond = cond && std::isfinite(m.F((1.0 / beta) * (1.0 - 1e-9)));
        } else {
            for (int j = -10; j <= 30; ++j) cond = cond && std::isfinite(m.F(-std::ldexp(1.0, j)));
        }
        add("F finite for real-valued rates", cond);
    } else {
        const double dF0 = m.dF(0.0);
        add("F'(0) > 0 on nonnegative state space", dF0 > 0.0,
            "F'(0)=" + detail::shortest(dF0));
    }
    return rep;
}

}  // namespace affcurve
