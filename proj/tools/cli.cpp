#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "affcurve/classifier.hpp"
#include "affcurve/error.hpp"
#include "affcurve/io.hpp"
#include "affcurve/montecarlo.hpp"
#include "affcurve/oracle.hpp"
#include "affcurve/random.hpp"
#include "affcurve/riccati.hpp"
#include "affcurve/thresholds.hpp"

namespace affcurve::cli {

namespace {

using nlohmann::ordered_json;

struct ModelFlags {
    std::string kind;
    std::string spec;
    std::optional<double> lambda, theta, sigma, a, k;
};

struct Config {
    ModelFlags model;
    std::string output;
    std::optional<std::string> format;
    std::uint64_t seed = 0;

    // curve / classify
    std::optional<double> r;
    double x_max = 30.0;
    double x_min = kDefaultGridStart;
    std::size_t points = kDefaultGridPoints;
    std::string curve_kind = "yield";
    double tol = kDefaultRiccatiTol;

    // verify
    std::size_t n_models = 50;
    std::size_t n_r = 20;
    double exclusion = 1e-4;
    std::string verify_kind;

    // mc-check
    std::optional<double> r0;
    std::optional<double> x;
    std::size_t n_paths = 100000;
    std::optional<std::size_t> n_steps;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
    cmd->add_option("--model", f.kind, "Built-in model: vasicek, cir or gamma_ou")
        ->check(CLI::IsMember({"vasicek", "cir", "gamma_ou"}));
    cmd->add_option("--spec", f.spec, "Model specification file (JSON)");
    cmd->add_option("--lambda", f.lambda, "Mean-reversion speed (vasicek, gamma_ou)");
    cmd->add_option("--theta", f.theta, "Long-run mean (vasicek, cir) or jump scale (gamma_ou)");
    cmd->add_option("--sigma", f.sigma, "Volatility (vasicek, cir)");
    cmd->add_option("--a", f.a, "Mean-reversion speed (cir)");
    cmd->add_option("--k", f.k, "Shape parameter (gamma_ou)");
}

void add_output_flags(CLI::App* cmd, Config& cfg) {
    cmd->add_option("-o,--output", cfg.output, "Output file (default: standard output)");
    cmd->add_option("--format", cfg.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

AffineModel build_model(const ModelFlags& f) {
    const bool have_kind = !f.kind.empty();
    const bool have_spec = !f.spec.empty();
    if (have_kind == have_spec) {
        throw Error(ErrorCode::InvalidArgument, "give exactly one of --model or --spec");
    }
    if (have_spec) {
        if (f.lambda || f.theta || f.sigma || f.a || f.k) {
            throw Error(ErrorCode::InvalidArgument,
                        "parameter flags cannot be combined with --spec");
        }
        return load_model_spec(f.spec);
    }
    auto need = [&f](const std::optional<double>& v, const char* name) {
        if (!v) {
            throw Error(ErrorCode::InvalidArgument,
                        "model " + f.kind + " requires --" + std::string(name));
        }
        return *v;
    };
    auto forbid = [&f](const std::optional<double>& v, const char* name) {
        if (v) {
            throw Error(ErrorCode::InvalidArgument,
                        "--" + std::string(name) + " does not apply to model " + f.kind);
        }
    };
    if (f.kind == "vasicek") {
        forbid(f.a, "a");
        forbid(f.k, "k");
        return make_vasicek({need(f.lambda, "lambda"), need(f.theta, "theta"), need(f.sigma, "sigma")});
    }
    if (f.kind == "cir") {
        forbid(f.lambda, "lambda");
        forbid(f.k, "k");
        return make_cir({need(f.a, "a"), need(f.theta, "theta"), need(f.sigma, "sigma")});
    }
    forbid(f.a, "a");
    forbid(f.sigma, "sigma");
    return make_gamma_ou({need(f.lambda, "lambda"), need(f.k, "k"), need(f.theta, "theta")});
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::ValidationFailed:
        case ErrorCode::UnsupportedModel:
        case ErrorCode::OrderingViolation:
            return kUsage;
        case ErrorCode::NoRoot: return kNoRoot;
        case ErrorCode::OutOfStateSpace: return kStateSpace;
        case ErrorCode::Disagreement: return kVerifyFailed;
        default: return kInternal;
    }
}

// Writes to the configured file or to `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot open output " + path);
        os_ = file_.get();
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

double require_rate(const std::optional<double>& v, const char* name) {
    if (!v) throw Error(ErrorCode::InvalidArgument, std::string("--") + name + " is required");
    return *v;
}

void require_state(const AffineModel& m, double r) {
    if (!m.contains(r)) {
        throw Error(ErrorCode::OutOfStateSpace,
                    "rate " + ordered_json(r).dump() + " is outside the " +
                        std::string(to_string(m.state_space())) + " state space");
    }
}

int cmd_thresholds(const Config& cfg, std::ostream& out) {
    const AffineModel m = build_model(cfg.model);
    const Thresholds th = compute_thresholds(m);
    Sink sink(cfg.output, out);
    const ordered_json j = thresholds_to_json(th);
    if (cfg.format.value_or("json") == "csv") {
        *sink << "name,value\n";
        for (const auto& [key, value] : j.items()) {
            *sink << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    } else {
        *sink << j.dump() << '\n';
    }
    return kOk;
}

int cmd_curve(const Config& cfg, std::ostream& out) {
    if (!(cfg.x_max > 0.0) || !std::isfinite(cfg.x_max)) {
        throw Error(ErrorCode::InvalidArgument, "--x-max must be positive");
    }
    if (!(cfg.x_min > 0.0) || !(cfg.x_min < cfg.x_max)) {
        throw Error(ErrorCode::InvalidArgument, "--x-min must lie in (0, x_max)");
    }
    if (cfg.points < 2) throw Error(ErrorCode::InvalidArgument, "--points must be >= 2");
    const AffineModel m = build_model(cfg.model);
    const double r = require_rate(cfg.r, "r");
    require_state(m, r);
    const std::vector<double> grid = geometric_grid(cfg.x_min, cfg.x_max, cfg.points);
    const ABCurve ab = solve_ab_on_grid(m, grid, cfg.tol);
    Curve curve = cfg.curve_kind == "forward" ? forward_curve(m, r, ab) : yield_curve(m, r, ab);
    if (curve.kind == CurveKind::Forward) {
        // Drop the x = 0 point so both kinds share the requested grid.
        curve.xs.erase(curve.xs.begin());
        curve.values.erase(curve.values.begin());
    }
    Sink sink(cfg.output, out);
    if (cfg.format.value_or("csv") == "json") {
        ordered_json j;
        j["kind"] = std::string(to_string(curve.kind));
        j["r"] = r;
        j["x"] = curve.xs;
        j["value"] = curve.values;
        *sink << j.dump() << '\n';
    } else {
        write_csv(*sink, curve);
    }
    return kOk;
}

int cmd_classify(const Config& cfg, std::ostream& out) {
    const AffineModel m = build_model(cfg.model);
    const double r = require_rate(cfg.r, "r");
    require_state(m, r);
    const Thresholds th = compute_thresholds(m);
    Sink sink(cfg.output, out);
    *sink << classification_to_json(th, r, classify_yield(th, r), classify_forward(th, r)).dump()
          << '\n';
    return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.n_models == 0) throw Error(ErrorCode::InvalidArgument, "--n-models must be >= 1");
    if (cfg.n_r == 0) throw Error(ErrorCode::InvalidArgument, "--n-r must be >= 1");
    if (!(cfg.exclusion >= 0.0)) throw Error(ErrorCode::InvalidArgument, "--exclusion must be >= 0");
    std::optional<ModelKind> kind;
    if (cfg.verify_kind == "vasicek") kind = ModelKind::Vasicek;
    if (cfg.verify_kind == "cir") kind = ModelKind::Cir;
    if (cfg.verify_kind == "gamma_ou") kind = ModelKind::GammaOu;

    Sink sink(cfg.output, out);
    std::size_t rows = 0, agree = 0, disagree = 0, skipped = 0, failed_models = 0;
    VerifyOptions opts;
    opts.n_r = cfg.n_r;
    opts.exclusion = cfg.exclusion;
    for (std::size_t i = 0; i < cfg.n_models; ++i) {
        const std::uint64_t model_seed = StreamRng(cfg.seed, i).next_u64();
        opts.jitter_seed = model_seed;
        const AffineModel m = random_model(model_seed, kind);
        try {
            const VerificationReport rep = verify_model(m, opts);
            write_json_lines(*sink, rep);
            rows += rep.rows.size();
            disagree += rep.disagreements();
            agree += rep.rows.size() - rep.disagreements();
            skipped += rep.skipped.size();
        } catch (const Error& e) {
            ++failed_models;
            ordered_json j;
            j["model"] = m.describe();
            j["error"] = e.what();
            *sink << j.dump() << '\n';
        }
    }
    ordered_json summary;
    summary["models"] = cfg.n_models;
    summary["rows"] = rows;
    summary["agree"] = agree;
    summary["disagree"] = disagree;
    summary["skipped"] = skipped;
    summary["failed_models"] = failed_models;
    summary["passed"] = disagree == 0 && failed_models == 0;
    ordered_json line;
    line["summary"] = summary;
    *sink << line.dump() << '\n';
    if (disagree != 0 || failed_models != 0) {
        err << "verify: " << disagree << " disagreeing rows, " << failed_models
            << " failed models\n";
        return kVerifyFailed;
    }
    return kOk;
}

int cmd_mc_check(const Config& cfg, std::ostream& out, std::ostream& err) {
    const AffineModel m = build_model(cfg.model);
    const double r0 = require_rate(cfg.r0, "r0");
    const double x = require_rate(cfg.x, "x");
    const std::size_t steps = cfg.n_steps.value_or(x > 0.0 ? min_steps(x) : 1);
    const McCheck check = mc_check(m, r0, x, cfg.n_paths, steps, cfg.seed);
    Sink sink(cfg.output, out);
    *sink << mc_check_to_json(check).dump() << '\n';
    if (!check.passed()) {
        err << "mc-check: |z| = " << std::abs(check.z_score) << " > 3 after "
            << check.attempts << " attempts\n";
        return kMcFailed;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Yield and forward curve shapes in affine one-factor short-rate models",
                 "affcurve"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* thresholds = app.add_subcommand("thresholds", "Print the shape thresholds");
    add_model_flags(thresholds, cfg.model);
    add_output_flags(thresholds, cfg);

    CLI::App* curve = app.add_subcommand("curve", "Yield or forward curve on a maturity grid");
    add_model_flags(curve, cfg.model);
    add_output_flags(curve, cfg);
    curve->add_option("--r", cfg.r, "Short rate");
    curve->add_option("--x-max", cfg.x_max, "Largest maturity in years");
    curve->add_option("--x-min", cfg.x_min, "Smallest maturity in years");
    curve->add_option("--points", cfg.points, "Number of grid points");
    curve->add_option("--kind", cfg.curve_kind, "yield or forward")
        ->check(CLI::IsMember({"yield", "forward"}));
    curve->add_option("--tol", cfg.tol, "Riccati integration tolerance");

    CLI::App* classify = app.add_subcommand("classify", "Theorem-based curve shapes for a short rate");
    add_model_flags(classify, cfg.model);
    add_output_flags(classify, cfg);
    classify->add_option("--r", cfg.r, "Short rate");

    CLI::App* verify = app.add_subcommand("verify", "Theorem vs numerical oracle sweep on random models");
    add_output_flags(verify, cfg);
    verify->add_option("--n-models", cfg.n_models, "Number of random models");
    verify->add_option("--n-r", cfg.n_r, "Short rates per model");
    verify->add_option("--seed", cfg.seed, "Random seed");
    verify->add_option("--exclusion", cfg.exclusion, "Relative exclusion band around thresholds");
    verify->add_option("--kind", cfg.verify_kind, "Restrict to one model kind")
        ->check(CLI::IsMember({"vasicek", "cir", "gamma_ou"}));

    CLI::App* mc = app.add_subcommand("mc-check", "Monte Carlo bond price vs the affine formula");
    add_model_flags(mc, cfg.model);
    add_output_flags(mc, cfg);
    mc->add_option("--r0", cfg.r0, "Initial short rate");
    mc->add_option("--x", cfg.x, "Maturity in years");
    mc->add_option("--n-paths", cfg.n_paths, "Number of paths");
    mc->add_option("--n-steps", cfg.n_steps, "Time steps (default 50 per year)");
    mc->add_option("--seed", cfg.seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        const bool json_only = active == classify || active == verify || active == mc;
        if (json_only && cfg.format.value_or("json") != "json") {
            throw Error(ErrorCode::InvalidArgument, active->get_name() + " writes json only");
        }
        if (active == thresholds) return cmd_thresholds(cfg, out);
        if (active == curve) return cmd_curve(cfg, out);
        if (active == classify) return cmd_classify(cfg, out);
        if (active == verify) return cmd_verify(cfg, out, err);
        return cmd_mc_check(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        const int code = exit_code_for(e.code());
        if (code == kUsage) err << active->help();
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace affcurve::cli
