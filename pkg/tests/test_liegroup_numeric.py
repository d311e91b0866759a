import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from rrb.liegroup_numeric import (
    FAMILIES,
    S_VALUES,
    OperatorFamily,
    bracket,
    derivative_report,
    differentiate_at_zero,
    family_report,
    inv2,
    lie_rb_check,
    log_sl2,
    prelie_diff_check,
    prelie_report,
    rb_residual,
    residual_report,
    sl2,
    upsilon,
    upsilon_closed_form_check,
    upsilon_report,
)

coord = st.floats(-2, 2, allow_nan=False)
s_val = st.sampled_from(S_VALUES)


def test_zero_residual_at_origin():
    for kind in FAMILIES:
        F = OperatorFamily(kind, 0.7)
        z = F.zero()
        assert rb_residual(F, z, z) == 0.0
        assert np.array_equal(F(z), np.eye(2))


def test_unknown_family():
    with pytest.raises(ValueError):
        OperatorFamily("Cs", 1.0)


def test_displayed_values():
    a, b, c = 0.3, -1.1, 0.8
    assert np.allclose(OperatorFamily("Bs", 0.5)(sl2(a, b, c)), np.diag([math.exp(0.5 * a), math.exp(-0.5 * a)]), atol=0)
    assert np.array_equal(OperatorFamily("Bps", 0.5)(sl2(a, b, c)), np.array([[1.0, 0.5 * c], [0.0, 1.0]]))
    assert np.array_equal(OperatorFamily("Rs", -1.0)(np.array([2.0, 3.0])), np.array([[1.0, -3.0], [0.0, 1.0]]))


@pytest.mark.parametrize("kind", FAMILIES)
@pytest.mark.parametrize("s", S_VALUES)
def test_residual_over_seeded_samples(kind, s):
    rep = residual_report(OperatorFamily(kind, s), 1000)
    assert rep.holds
    assert rep.details["max_residual"] < 1e-9
    assert rep.details["max_det_error"] < 1e-12


def test_broken_family_has_large_residual():
    class Broken(OperatorFamily):
        def __call__(self, x):
            return np.array([[1.0, self.s * x[0, 1]], [0.0, 1.0]])

    rep = residual_report(Broken("Bps", 1.0), 50)
    assert not rep.holds and rep.counterexample is not None


# --- logarithm ------------------------------------------------------------------


@settings(max_examples=200)
@given(coord, coord, coord)
def test_log_sl2_matches_scipy(a, b, c):
    X = sl2(a, b, c) * 0.5
    g = scipy.linalg.expm(X)
    assert np.allclose(log_sl2(g), np.real(scipy.linalg.logm(g)), atol=1e-8)


def test_log_sl2_branches():
    # elliptic, hyperbolic, near-parabolic and far-from-identity cases
    for X in [sl2(0, 1, -1), sl2(0.7, 0.1, 0.2), sl2(0, 1e-3, 0), sl2(0, 1e-4, -1e-4), sl2(1.2, 0, 0)]:
        g = scipy.linalg.expm(X)
        assert np.allclose(log_sl2(g), X, atol=1e-10)
        assert abs(np.trace(log_sl2(g))) < 1e-12


# --- derivatives -------------------------------------------------------------------


def fd_with_scipy(F, x, h=1e-3):
    # independent oracle: scipy's logm and plain Richardson
    def central(k):
        return np.real(scipy.linalg.logm(F(k * x)) - scipy.linalg.logm(F(-k * x))) / (2 * k)

    return (4 * central(h / 2) - central(h)) / 3


@pytest.mark.parametrize("s", S_VALUES)
def test_bs_derivative(s):
    F = OperatorFamily("Bs", s)
    x = sl2(1.0, 0.4, -0.3)
    d = differentiate_at_zero(F, x)
    assert np.allclose(d, np.diag([s, -s]), atol=1e-6)
    assert np.allclose(fd_with_scipy(F, x), d, atol=1e-6)


@pytest.mark.parametrize("s", S_VALUES)
def test_bps_derivative(s):
    F = OperatorFamily("Bps", s)
    x = sl2(0.2, -0.5, 1.0)
    d = differentiate_at_zero(F, x)
    assert np.allclose(d, np.array([[0.0, s], [0.0, 0.0]]), atol=1e-6)
    assert np.allclose(fd_with_scipy(F, x), d, atol=1e-6)


def test_derivative_at_zero_input():
    for kind in FAMILIES:
        F = OperatorFamily(kind, 1.0)
        assert np.allclose(differentiate_at_zero(F, F.zero()), 0)


@pytest.mark.parametrize("kind", FAMILIES)
def test_derivative_reports(kind):
    rep = derivative_report(OperatorFamily(kind, -0.5))
    assert rep.holds and rep.details["max_residual"] < 1e-6


# --- weight-0 Lie identity ----------------------------------------------------------


def test_lie_rb_zero_and_identity():
    assert lie_rb_check(lambda x: 0 * x).holds
    rep = lie_rb_check(lambda x: x, samples=50)
    assert not rep.holds
    x, y = rep.counterexample["x"], rep.counterexample["y"]
    # [x, y] against 2[x, y]
    assert np.linalg.norm(bracket(x, y)) > 1e-6


@pytest.mark.parametrize("kind", ["Bs", "Bps"])
@pytest.mark.parametrize("s", S_VALUES)
def test_lie_rb_for_derivatives(kind, s):
    assert lie_rb_check(OperatorFamily(kind, s).derivative).holds


def test_nonlinear_map_fails_linearity():
    rep = lie_rb_check(lambda x: x @ x, samples=20)
    assert not rep.holds and rep.details["linearity_error"] > 1e-6


# --- pre-Lie differentiation ------------------------------------------------------------


def test_prelie_bs_nilpotent():
    s = 0.5
    F = OperatorFamily("Bs", s)
    x, y = np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [0.0, 0.0]])
    # [diag(s, -s), E12] = 2 s E12
    assert np.allclose(bracket(F.derivative(x), y), 2 * s * y)
    rep = prelie_diff_check(F, x, y)
    assert rep.holds and rep.details["error"] < 1e-5


def test_prelie_zero():
    F = OperatorFamily("Bps", 1.0)
    rep = prelie_diff_check(F, F.zero(), sl2(1, 2, 3))
    assert rep.holds and rep.details["error"] < 1e-12


@pytest.mark.parametrize("kind", FAMILIES)
def test_prelie_reports(kind):
    assert prelie_report(OperatorFamily(kind, 1.0)).holds


# --- Upsilon closed forms ---------------------------------------------------------------


def displayed_upsilon(kind, s, u, v):
    if kind == "Rs":
        (x, y), (z, w) = u, v
        return np.array([z + s * y * w, w]), np.array([x - s * y * w, y])
    a, b, c = u[0, 0], u[0, 1], u[1, 0]
    x, y, z = v[0, 0], v[0, 1], v[1, 0]
    if kind == "Bs":
        return (
            np.array([[x, y * math.exp(2 * s * a)], [z * math.exp(-2 * s * a), -x]]),
            np.array([[a, b * math.exp(-2 * s * x)], [c * math.exp(2 * s * x), -a]]),
        )
    return (
        np.array([[x + s * c * z, y - 2 * s * c * x - s * s * c * c * z], [z, -x - s * c * z]]),
        np.array([[a - s * c * z, b + 2 * s * a * z - s * s * z * z * c], [c, -a + s * c * z]]),
    )


@settings(max_examples=100)
@given(st.sampled_from(FAMILIES), s_val, st.lists(coord, min_size=6, max_size=6))
def test_generic_upsilon_matches_displayed(kind, s, c):
    F = OperatorFamily(kind, s)
    if F.on_vectors:
        u, v = np.array(c[:2]), np.array(c[2:4])
    else:
        u, v = sl2(*c[:3]), sl2(*c[3:])
    g1, g2 = upsilon(F, u, v)
    d1, d2 = displayed_upsilon(kind, s, u, v)
    assert np.linalg.norm(g1 - d1) < 1e-10 and np.linalg.norm(g2 - d2) < 1e-10
    assert upsilon_closed_form_check(F, u, v).holds


@pytest.mark.parametrize("kind", FAMILIES)
def test_s_zero_is_flip(kind):
    F = OperatorFamily(kind, 0.0)
    rng = np.random.default_rng(0)
    u, v = F.sample(rng), F.sample(rng)
    a, b = upsilon(F, u, v)
    assert np.array_equal(a, v) and np.array_equal(b, u)


@pytest.mark.parametrize("kind", FAMILIES)
@pytest.mark.parametrize("s", S_VALUES)
def test_upsilon_reports(kind, s):
    rep = upsilon_report(OperatorFamily(kind, s), 1000)
    assert rep.holds
    assert rep.details["max_closed_form_error"] < 1e-10
    assert rep.details["max_involution_error"] < 1e-9


def test_family_report_is_deterministic():
    a = {k: r.to_json() for k, r in family_report("Bps", 0.5, 100).items()}
    b = {k: r.to_json() for k, r in family_report("Bps", 0.5, 100).items()}
    assert a == b
    assert all(r["holds"] for r in a.values())


def test_inv2():
    g = np.array([[2.0, 1.0], [3.0, 2.0]])
    assert np.allclose(inv2(g) @ g, np.eye(2))
