#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "affcurve/classifier.hpp"
#include "affcurve/error.hpp"
#include "affcurve/io.hpp"
#include "affcurve/montecarlo.hpp"
#include "affcurve/oracle.hpp"
#include "affcurve/riccati.hpp"
#include "affcurve/thresholds.hpp"

namespace py = pybind11;
using namespace affcurve;

namespace {

py::dict thresholds_dict(const Thresholds& th) {
    py::dict d;
    d["c"] = th.long_end.c;
    d["lambda"] = th.long_end.lambda_qmr;
    d["b_asymp"] = th.long_end.b_asymp;
    d["b_fw_norm"] = th.b_fw_norm;
    d["b_y_norm"] = th.b_y_norm;
    d["b_inv"] = th.b_inv.is_infinite() ? py::float_(INFINITY) : py::float_(th.b_inv.value());
    return d;
}

py::object shape_to_py(const ShapeClass& s) {
    py::dict d;
    d["label"] = std::string(to_string(s.label));
    d["hump_location"] = s.hump_location ? py::object(py::float_(*s.hump_location)) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shapes of yield and forward curves in affine one-factor short-rate models";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    py::enum_<StateSpace>(m, "StateSpace")
        .value("NonNegativeReals", StateSpace::NonNegativeReals)
        .value("AllReals", StateSpace::AllReals);

    py::class_<AffineModel>(m, "AffineModel")
        .def_property_readonly("name", &AffineModel::name)
        .def_property_readonly("kind", [](const AffineModel& a) { return std::string(to_string(a.kind())); })
        .def_property_readonly("state_space", &AffineModel::state_space)
        .def("F", &AffineModel::F)
        .def("dF", &AffineModel::dF)
        .def("R", &AffineModel::R)
        .def("dR", &AffineModel::dR)
        .def("contains", &AffineModel::contains)
        .def("validation_failures", [](const AffineModel& a) { return a.validation().failures(); })
        .def("is_valid", [](const AffineModel& a) { return a.validation().ok(); })
        .def("__repr__", &AffineModel::describe);

    m.def("vasicek", [](double lambda, double theta, double sigma) {
        return make_vasicek({lambda, theta, sigma});
    }, py::arg("lambda_"), py::arg("theta"), py::arg("sigma"));
    m.def("cir", [](double a, double theta, double sigma) { return make_cir({a, theta, sigma}); },
          py::arg("a"), py::arg("theta"), py::arg("sigma"));
    m.def("gamma_ou", [](double lambda, double k, double theta) {
        return make_gamma_ou({lambda, k, theta});
    }, py::arg("lambda_"), py::arg("k"), py::arg("theta"));
    m.def("quadratic", [](double f1, double f2, double r1, double r2, StateSpace ss) {
        return make_quadratic({f1, f2, r1, r2, ss});
    }, py::arg("f1"), py::arg("f2"), py::arg("r1"), py::arg("r2"), py::arg("state_space"));
    m.def("model_from_json", [](const std::string& text) {
        return model_from_json(nlohmann::json::parse(text));
    }, py::arg("text"));
    m.def("random_model", [](std::uint64_t seed) { return random_model(seed); }, py::arg("seed"));

    m.def("thresholds", [](const AffineModel& a) { return thresholds_dict(compute_thresholds(a)); },
          py::arg("model"));
    m.def("classify", [](const AffineModel& a, double r) {
        const Thresholds th = compute_thresholds(a);
        return py::make_tuple(std::string(to_string(classify_yield(th, r).label)),
                              std::string(to_string(classify_forward(th, r).label)));
    }, py::arg("model"), py::arg("r"), "(yield shape, forward shape) for short rate r");

    m.def("solve_ab", [](const AffineModel& a, const std::vector<double>& grid, double tol) {
        const ABCurve ab = solve_ab_on_grid(a, grid, tol);
        return py::make_tuple(ab.xs, ab.As, ab.Bs);
    }, py::arg("model"), py::arg("grid"), py::arg("tol") = kDefaultRiccatiTol,
          "(x, A, B) at x = 0 and every grid maturity");
    m.def("geometric_grid", &geometric_grid, py::arg("x_min"), py::arg("x_max"),
          py::arg("n") = kDefaultGridPoints);
    m.def("curve", [](const AffineModel& a, double r, const std::vector<double>& grid,
                      const std::string& kind) {
        const ABCurve ab = solve_ab_on_grid(a, grid);
        if (kind != "yield" && kind != "forward") throw Error(ErrorCode::InvalidArgument, "kind must be yield or forward");
        const Curve c = kind == "yield" ? yield_curve(a, r, ab) : forward_curve(a, r, ab);
        return py::make_tuple(c.xs, c.values);
    }, py::arg("model"), py::arg("r"), py::arg("grid"), py::arg("kind") = "yield");
    m.def("classify_numeric", [](const std::vector<double>& xs, const std::vector<double>& vs) {
        return shape_to_py(classify_numeric(Curve{xs, vs, CurveKind::Yield}));
    }, py::arg("xs"), py::arg("values"));

    m.def("verify", [](const AffineModel& a, std::size_t n_r) {
        VerifyOptions opts;
        opts.n_r = n_r;
        const VerificationReport rep = verify_model(a, opts);
        py::list rows;
        for (const auto& row : rep.rows) {
            py::dict d;
            d["r"] = row.r;
            d["theorem_yield"] = std::string(to_string(row.theorem_yield));
            d["oracle_yield"] = std::string(to_string(row.oracle_yield));
            d["theorem_forward"] = std::string(to_string(row.theorem_forward));
            d["oracle_forward"] = std::string(to_string(row.oracle_forward));
            d["agree"] = row.agree;
            rows.append(d);
        }
        return rows;
    }, py::arg("model"), py::arg("n_r") = 20);

    m.def("mc_check", [](const AffineModel& a, double r0, double x, std::size_t n_paths,
                         std::uint64_t seed) {
        const McCheck c = mc_check(a, r0, x, n_paths, min_steps(x), seed);
        py::dict d;
        d["price"] = c.estimate.price;
        d["std_error"] = c.estimate.std_error;
        d["affine_price"] = c.affine_price;
        d["z_score"] = c.z_score;
        return d;
    }, py::arg("model"), py::arg("r0"), py::arg("x"), py::arg("n_paths") = 100000,
          py::arg("seed") = 0);
}
