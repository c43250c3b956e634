#include "affcurve/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "affcurve/error.hpp"
#include "affcurve/random.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

constexpr int kMaxModelAttempts = 100;

struct Interval {
    double lo;
    double hi;
};

}  // namespace

SignSequence sign_sequence(std::span<const double> xs, std::span<const double> vs, double tol) {
    if (xs.size() != vs.size()) {
        throw Error(ErrorCode::InvalidArgument, "grid and values differ in length");
    }
    if (xs.size() < 16) {
        throw Error(ErrorCode::InvalidArgument, "sign sequence needs at least 16 samples");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "grid must be strictly increasing");
        }
    }
    double scale = 0.0;
    for (double v : vs) scale = std::max(scale, std::abs(v));
    const double dead = tol * scale;

    SignSequence out;
    bool in_dead = false;
    double dead_start = 0.0;
    std::size_t last_live = 0;
    bool have_live = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = vs[i];
        if (!(std::abs(v) >= dead) || v == 0.0) {
            if (!in_dead) {
                in_dead = true;
                dead_start = xs[i];
            }
            continue;
        }
        if (in_dead) {
            out.dead_zones.emplace_back(dead_start, xs[i - 1]);
            in_dead = false;
        }
        const Sign s = v > 0.0 ? Sign::Positive : Sign::Negative;
        if (out.signs.empty() || out.signs.back() != s) {
            if (have_live) {
                const double xa = xs[last_live], va = vs[last_live];
                out.crossings.push_back(xa + va * (xs[i] - xa) / (va - v));
            }
            out.signs.push_back(s);
        }
        last_live = i;
        have_live = true;
    }
    if (in_dead) out.dead_zones.emplace_back(dead_start, xs.back());
    if (out.signs.empty()) {
        throw Error(ErrorCode::AllDead, "every sample lies inside the dead zone");
    }
    return out;
}

std::vector<double> finite_difference_slopes(std::span<const double> xs,
                                             std::span<const double> vs) {
    const std::size_t n = xs.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d.front() = (vs[1] - vs[0]) / (xs[1] - xs[0]);
    d.back() = (vs[n - 1] - vs[n - 2]) / (xs[n - 1] - xs[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (vs[i + 1] - vs[i - 1]) / (xs[i + 1] - xs[i - 1]);
    }
    return d;
}

ShapeClass classify_numeric(const Curve& curve, double tol) {
    if (curve.xs.size() < 400) {
        throw Error(ErrorCode::InvalidArgument, "numerical classification needs >= 400 points");
    }
    const std::vector<double> slopes = finite_difference_slopes(curve.xs, curve.values);
    SignSequence seq;
    try {
        seq = sign_sequence(curve.xs, slopes, tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AllDead) return {Shape::Indeterminate, std::nullopt};
        throw;
    }
    if (seq.signs.size() == 1) {
        return {seq.signs[0] == Sign::Positive ? Shape::Normal : Shape::Inverse, std::nullopt};
    }
    if (seq.signs.size() == 2 && seq.signs[0] == Sign::Positive) {
        return {Shape::Humped, seq.crossings[0]};
    }
    return {Shape::Indeterminate, std::nullopt};
}

AffineModel random_model(std::uint64_t seed, std::optional<ModelKind> kind) {
    if (kind && *kind != ModelKind::Vasicek && *kind != ModelKind::Cir &&
        *kind != ModelKind::GammaOu) {
        throw Error(ErrorCode::UnsupportedModel, "random models are vasicek, cir or gamma_ou");
    }
    constexpr std::array<ModelKind, 3> kinds = {ModelKind::Vasicek, ModelKind::Cir,
                                                ModelKind::GammaOu};
    for (int attempt = 0; attempt < kMaxModelAttempts; ++attempt) {
        StreamRng rng(seed, static_cast<std::uint64_t>(attempt));
        const std::size_t pick = std::min<std::size_t>(2, static_cast<std::size_t>(rng.uniform() * 3.0));
        const ModelKind k = kind.value_or(kinds[pick]);
        try {
            if (k == ModelKind::Vasicek) {
                const double lambda = rng.log_uniform(0.05, 5.0);
                const double theta = rng.log_uniform(0.005, 0.15);
                const double sigma = rng.log_uniform(0.01, 0.5);
                AffineModel m = make_vasicek({lambda, theta, sigma});
                if (m.validation().ok()) return m;
            } else if (k == ModelKind::Cir) {
                const double a = rng.log_uniform(0.05, 5.0);
                const double theta = rng.log_uniform(0.005, 0.15);
                const double sigma = rng.log_uniform(0.01, 0.5);
                AffineModel m = make_cir({a, theta, sigma});
                if (m.validation().ok()) return m;
            } else {
                const double lambda = rng.log_uniform(0.05, 5.0);
                const double k_shape = rng.log_uniform(0.1, 5.0);
                const double theta = rng.log_uniform(0.05, 2.0);
                AffineModel m = make_gamma_ou({lambda, k_shape, theta});
                if (m.validation().ok()) return m;
            }
        } catch (const Error&) {
            // rejected draw; next stream
        }
    }
    throw Error(ErrorCode::GenerationExhausted,
                "no admissible model after " + std::to_string(kMaxModelAttempts) +
                    " draws for seed " + std::to_string(seed));
}

std::size_t VerificationReport::disagreements() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const VerificationRow& r) { return !r.agree; }));
}

VerificationReport verify_model(const AffineModel& m, const VerifyOptions& opts) {
    if (!(opts.exclusion >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "exclusion must be non-negative");
    }
    const Thresholds th = compute_thresholds(m);
    const double fw = th.b_fw_norm;
    const double y = th.b_y_norm;
    const double asymp = th.long_end.b_asymp;
    double span = std::max(0.01, 2.0 * (asymp - fw));
    if (!th.b_inv.is_infinite()) span = std::max(span, th.b_inv.value() - fw);

    std::vector<Interval> regions;
    auto add_region = [&](double lo, double hi) {
        if (m.state_space() == StateSpace::NonNegativeReals) lo = std::max(lo, 0.0);
        if (hi > lo) regions.push_back({lo, hi});
    };
    add_region(fw - span, fw);
    add_region(fw, y);
    if (th.b_inv.is_infinite()) {
        add_region(y, y + span);
    } else {
        add_region(y, th.b_inv.value());
        add_region(th.b_inv.value(), th.b_inv.value() + span);
    }

    std::vector<double> thresholds = {fw, y};
    if (!th.b_inv.is_infinite()) thresholds.push_back(th.b_inv.value());
    auto near_threshold = [&](double r) {
        return std::any_of(thresholds.begin(), thresholds.end(), [&](double t) {
            return std::abs(r - t) < opts.exclusion * std::max(1.0, std::abs(t));
        });
    };

    std::vector<double> rates;
    std::optional<StreamRng> jitter;
    if (opts.jitter_seed) jitter.emplace(*opts.jitter_seed, 0x6a09e667f3bcc909ull);
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const std::size_t n = opts.n_r / regions.size() + (i < opts.n_r % regions.size() ? 1 : 0);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = jitter ? jitter->uniform_open() : 0.5;
            rates.push_back(regions[i].lo +
                            (static_cast<double>(j) + u) / static_cast<double>(n) *
                                (regions[i].hi - regions[i].lo));
        }
    }

    VerificationReport report;
    report.model = m.describe();
    const double x_max = std::max(30.0, 30.0 / th.long_end.lambda_qmr);
    const std::vector<double> grid = geometric_grid(opts.grid_start, x_max, opts.grid_points);
    const ABCurve ab = solve_ab_on_grid(m, grid, opts.tol);

    for (double r : rates) {
        if (near_threshold(r) || !m.contains(r)) {
            report.skipped.push_back(r);
            continue;
        }
        const ShapeClass ty = classify_yield(th, r);
        const ShapeClass tf = classify_forward(th, r);
        const ShapeClass oy = classify_numeric(yield_curve(m, r, ab), opts.dead_zone_tol);
        const ShapeClass of = classify_numeric(forward_curve(m, r, ab), opts.dead_zone_tol);
        report.rows.push_back({r, ty.label, oy.label, tf.label, of.label, oy.hump_location,
                               of.hump_location, ty.label == oy.label && tf.label == of.label});
    }
    return report;
}

void require_agreement(const VerificationReport& report) {
    for (const auto& row : report.rows) {
        if (row.agree) continue;
        throw Error(ErrorCode::Disagreement,
                    report.model + " r=" + detail::shortest(row.r) +
                        " theorem_yield=" + std::string(to_string(row.theorem_yield)) +
                        " oracle_yield=" + std::string(to_string(row.oracle_yield)) +
                        " theorem_forward=" + std::string(to_string(row.theorem_forward)) +
                        " oracle_forward=" + std::string(to_string(row.oracle_forward)));
    }
}

void write_json_lines(std::ostream& os, const VerificationReport& report) {
    using nlohmann::ordered_json;
    for (const auto& row : report.rows) {
        ordered_json j;
        j["model"] = report.model;
        j["r"] = row.r;
        j["theorem_yield"] = to_string(row.theorem_yield);
        j["oracle_yield"] = to_string(row.oracle_yield);
        j["theorem_forward"] = to_string(row.theorem_forward);
        j["oracle_forward"] = to_string(row.oracle_forward);
        j["agree"] = row.agree;
        os << j.dump() << '\n';
    }
    for (double r : report.skipped) {
        ordered_json j;
        j["model"] = report.model;
        j["r"] = r;
        j["skipped"] = true;
        os << j.dump() << '\n';
    }
}

}  // namespace affcurve
