import math

import pytest

import affcurve


def test_vasicek_thresholds():
    th = affcurve.thresholds(affcurve.vasicek(1.0, 0.05, 0.1))
    assert abs(th["b_y_norm"] - 0.0425) <= 1e-10
    assert abs(th["b_fw_norm"] - 0.04) <= 1e-10
    assert th["b_inv"] == pytest.approx(0.05)


def test_signature_case():
    assert affcurve.classify(affcurve.vasicek(1.0, 0.05, 0.1), 0.0415) == ("normal", "humped")


def test_gamma_from_json():
    m = affcurve.model_from_json('{"kind": "gamma_ou", "params": {"lambda": 1, "k": 1, "theta": 0.5}}')
    th = affcurve.thresholds(m)
    assert th["b_fw_norm"] < th["b_y_norm"] < th["b_asymp"] < th["b_inv"]


def test_infinite_b_inv():
    m = affcurve.quadratic(0.05, 0.01, 0.1, 1.0, affcurve.StateSpace.NonNegativeReals)
    assert math.isinf(affcurve.thresholds(m)["b_inv"])


def test_curve_and_oracle():
    m = affcurve.cir(1.0, 0.05, 0.2)
    grid = affcurve.geometric_grid(1e-7, 30.0, 2000)
    xs, values = affcurve.curve(m, 0.03, grid, "forward")
    assert len(xs) == 2001
    assert affcurve.classify_numeric(xs, values)["label"] == "normal"
    xs, A, B = affcurve.solve_ab(m, [1.0, 5.0])
    assert xs == [0.0, 1.0, 5.0]
    assert B[2] < B[1] < 0.0


def test_verify_and_mc():
    rows = affcurve.verify(affcurve.random_model(5), 12)
    assert rows and all(row["agree"] for row in rows)
    res = affcurve.mc_check(affcurve.vasicek(1.0, 0.05, 0.1), 0.0425, 5.0, 100000, 1)
    assert abs(res["z_score"]) <= 3.0


def test_errors_surface():
    with pytest.raises(affcurve.Error):
        affcurve.vasicek(-1.0, 0.05, 0.1)
    with pytest.raises(affcurve.Error):
        affcurve.classify(affcurve.cir(1.0, 0.05, 0.2), -0.1)
