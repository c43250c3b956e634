#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace affcurve {

enum class StateSpace { NonNegativeReals, AllReals };

std::string_view to_string(StateSpace s);

/// Mean-reverting Gaussian short rate: dr = -lambda (r - theta) dt + sigma dW.
struct VasicekParams {
    double lambda;
    double theta;
    double sigma;
};

/// Square-root diffusion: dr = -a (r - theta) dt + sigma sqrt(r) dW.
struct CirParams {
    double a;
    double theta;
    double sigma;

    double gamma() const;
};

/// OU process driven by a compound Poisson process with intensity lambda*k
/// and exponential jumps of mean theta.
struct GammaOuParams {
    double lambda;
    double k;
    double theta;
};

/// F(u) = f1 u + f2 u^2, R(u) = r1 u + r2 u^2: the general affine diffusion
/// dr = (f1 + r1 r) dt + sqrt(2 f2 + 2 r2 r) dW.
struct QuadraticParams {
    double f1;
    double f2;
    double r1;
    double r2;
    StateSpace state_space;
};

enum class ModelKind { Vasicek, Cir, GammaOu, Quadratic, Custom };

std::string_view to_string(ModelKind k);

using ModelParams =
    std::variant<std::monostate, VasicekParams, CirParams, GammaOuParams, QuadraticParams>;

/// One of the two functions of the Riccati system, given as value and
/// derivative. Below `domain_lower` the function is +inf.
struct Evaluator {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    bool linear = false;
    double domain_lower = -std::numeric_limits<double>::infinity();
};

struct ValidationCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const;
    /// Names of failing checks joined with "; ".
    std::string failures() const;
    const ValidationCheck* find(std::string_view name) const;
};

/// Affine one-factor short-rate model described by F and R. Immutable; the
/// validation report is computed once at construction.
class AffineModel {
public:
    AffineModel(std::string name, Evaluator F, Evaluator R, StateSpace state_space,
                ModelKind kind = ModelKind::Custom, ModelParams params = {});

    const std::string& name() const { return name_; }
    ModelKind kind() const { return kind_; }
    const ModelParams& params() const { return params_; }
    StateSpace state_space() const { return state_space_; }

    double F(double u) const;
    double dF(double u) const;
    double R(double u) const;
    double dR(double u) const;

    bool F_is_linear() const { return F_.linear; }
    bool R_is_linear() const { return R_.linear; }
    double F_domain_lower() const { return F_.domain_lower; }
    double R_domain_lower() const { return R_.domain_lower; }

    const ValidationReport& validation() const { return report_; }
    /// Throws Error(ValidationFailed) unless every structural check passed.
    void require_valid() const;

    /// Whether r lies in the state space D.
    bool contains(double r) const;

    /// Compact parameter description, e.g. "vasicek(lambda=1,theta=0.05,sigma=0.1)".
    std::string describe() const;

private:
    std::string name_;
    Evaluator F_;
    Evaluator R_;
    StateSpace state_space_;
    ModelKind kind_;
    ModelParams params_;
    ValidationReport report_;
};

AffineModel make_vasicek(const VasicekParams& p);
AffineModel make_cir(const CirParams& p);
AffineModel make_gamma_ou(const GammaOuParams& p);
AffineModel make_quadratic(const QuadraticParams& p);
AffineModel make_custom(std::string name, Evaluator F, Evaluator R, StateSpace state_space);

/// Structural checks on F and R: F(0) = R(0) = 0, sampled convexity,
/// derivative consistency against centered differences, at least one
/// non-linear function, F not identically zero, state-space consistency,
/// and finiteness of F on the interval required for real-valued rates.
ValidationReport validate(const AffineModel& m);

}  // namespace affcurve
