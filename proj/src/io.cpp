#include "affcurve/io.hpp"

#include <fstream>
#include <set>

#include "affcurve/error.hpp"

namespace affcurve {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& what) {
    if (!obj.is_object()) throw Error(ErrorCode::InvalidArgument, what + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw Error(ErrorCode::InvalidArgument, "unknown key '" + key + "' in " + what);
        }
    }
    for (const auto& key : allowed) {
        if (!obj.contains(key)) {
            throw Error(ErrorCode::InvalidArgument, "missing key '" + key + "' in " + what);
        }
    }
}

double number(const json& params, const char* key) {
    const json& v = params.at(key);
    if (!v.is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string("parameter '") + key + "' must be a number");
    }
    return v.get<double>();
}

}  // namespace

AffineModel model_from_json(const json& spec) {
    require_keys(spec, {"kind", "params"}, "model spec");
    if (!spec["kind"].is_string()) {
        throw Error(ErrorCode::InvalidArgument, "model kind must be a string");
    }
    const std::string kind = spec["kind"].get<std::string>();
    const json& p = spec["params"];
    if (kind == "vasicek") {
        require_keys(p, {"lambda", "theta", "sigma"}, "vasicek params");
        return make_vasicek({number(p, "lambda"), number(p, "theta"), number(p, "sigma")});
    }
    if (kind == "cir") {
        require_keys(p, {"a", "theta", "sigma"}, "cir params");
        return make_cir({number(p, "a"), number(p, "theta"), number(p, "sigma")});
    }
    if (kind == "gamma_ou") {
        require_keys(p, {"lambda", "k", "theta"}, "gamma_ou params");
        return make_gamma_ou({number(p, "lambda"), number(p, "k"), number(p, "theta")});
    }
    if (kind == "quadratic") {
        require_keys(p, {"f1", "f2", "r1", "r2", "state_space"}, "quadratic params");
        const json& ss = p["state_space"];
        StateSpace space;
        if (ss == "nonnegative") {
            space = StateSpace::NonNegativeReals;
        } else if (ss == "all_reals") {
            space = StateSpace::AllReals;
        } else {
            throw Error(ErrorCode::InvalidArgument,
                        "state_space must be \"nonnegative\" or \"all_reals\"");
        }
        return make_quadratic(
            {number(p, "f1"), number(p, "f2"), number(p, "r1"), number(p, "r2"), space});
    }
    throw Error(ErrorCode::InvalidArgument, "unknown model kind '" + kind + "'");
}

AffineModel load_model_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open model spec " + path.string());
    json spec;
    try {
        spec = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument,
                    "malformed model spec " + path.string() + ": " + e.what());
    }
    return model_from_json(spec);
}

ordered_json model_to_json(const AffineModel& m) {
    ordered_json out;
    out["kind"] = std::string(to_string(m.kind()));
    ordered_json p = ordered_json::object();
    std::visit(
        [&p](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, VasicekParams>) {
                p["lambda"] = v.lambda;
                p["theta"] = v.theta;
                p["sigma"] = v.sigma;
            } else if constexpr (std::is_same_v<T, CirParams>) {
                p["a"] = v.a;
                p["theta"] = v.theta;
                p["sigma"] = v.sigma;
            } else if constexpr (std::is_same_v<T, GammaOuParams>) {
                p["lambda"] = v.lambda;
                p["k"] = v.k;
                p["theta"] = v.theta;
            } else if constexpr (std::is_same_v<T, QuadraticParams>) {
                p["f1"] = v.f1;
                p["f2"] = v.f2;
                p["r1"] = v.r1;
                p["r2"] = v.r2;
                p["state_space"] = std::string(to_string(v.state_space));
            }
        },
        m.params());
    out["params"] = p;
    return out;
}

ordered_json thresholds_to_json(const Thresholds& th) {
    ordered_json j;
    j["c"] = th.long_end.c;
    j["lambda"] = th.long_end.lambda_qmr;
    j["b_asymp"] = th.long_end.b_asymp;
    j["b_fw_norm"] = th.b_fw_norm;
    j["b_y_norm"] = th.b_y_norm;
    if (th.b_inv.is_infinite()) {
        j["b_inv"] = "inf";
    } else {
        j["b_inv"] = th.b_inv.value();
    }
    return j;
}

ordered_json classification_to_json(const Thresholds& th, double r, const ShapeClass& yield,
                                    const ShapeClass& forward) {
    ordered_json j;
    j["r"] = r;
    j["yield_shape"] = std::string(to_string(yield.label));
    j["forward_shape"] = std::string(to_string(forward.label));
    j["thresholds"] = thresholds_to_json(th);
    return j;
}

ordered_json mc_check_to_json(const McCheck& check) {
    ordered_json j;
    j["price"] = check.estimate.price;
    j["std_error"] = check.estimate.std_error;
    j["affine_price"] = check.affine_price;
    j["z_score"] = check.z_score;
    return j;
}

}  // namespace affcurve
