"""Floating-point checks of weight-0 operators on SL(2, R).

Three families are covered: ``Bs`` and ``Bps`` map sl(2, R) to SL(2, R) and
act by conjugation; ``Rs`` maps the vector representation R^2 to SL(2, R).
Elements of sl(2, R) are 2x2 numpy arrays, vectors of R^2 are length-2
arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .report import Report

DEFAULT_SEED = 42
SAMPLE_BOX = 2.0
FAMILIES = ("Bs", "Bps", "Rs")
S_VALUES = (-1.0, -0.5, 0.5, 1.0)

TOL_ALGEBRAIC = 1e-9
TOL_FIRST = 1e-6
TOL_SECOND = 1e-5
TOL_CLOSED = 1e-10
TOL_EXACT = 1e-12

_I = np.eye(2)


def sl2(a: float, b: float, c: float) -> np.ndarray:
    return np.array([[a, b], [c, -a]], dtype=float)


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def inv2(g: np.ndarray) -> np.ndarray:
    """Inverse of a 2x2 matrix by the adjugate."""
    (a, b), (c, d) = g
    det = a * d - b * c
    return np.array([[d, -b], [-c, a]]) / det


# the log of exp(X) for X in sl2 is f(delta) (g - t/2 I), delta = (t/2)^2 - 1,
# f = asinh(sqrt(delta))/sqrt(delta) (hyperbolic) or arccos(t/2)/sin (elliptic)
def _log_factor(half_t: float) -> float:
    delta = half_t * half_t - 1.0
    if abs(delta) < 1e-4:
        return 1.0 - delta / 6 + 3 * delta**2 / 40 - 5 * delta**3 / 112
    if delta > 0:
        r = math.sqrt(delta)
        return math.asinh(r) / r
    theta = math.acos(half_t)
    return theta / math.sin(theta)


def log_sl2(g: np.ndarray) -> np.ndarray:
    """Principal logarithm of g in SL(2, R), traceless by construction.

    Uses the closed form near the identity and scipy's ``logm`` once the
    trace is far from 2.
    """
    t = float(g[0, 0] + g[1, 1])
    if abs(t - 2.0) > 1.5:
        return np.real(scipy.linalg.logm(g))
    return _log_factor(t / 2) * (g - (t / 2) * _I)


@dataclass(frozen=True)
class OperatorFamily:
    kind: str
    s: float

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {FAMILIES}")

    @property
    def on_vectors(self) -> bool:
        return self.kind == "Rs"

    def __call__(self, x: np.ndarray) -> np.ndarray:
        s = self.s
        if self.kind == "Bs":
            e = math.exp(s * x[0, 0])
            return np.array([[e, 0.0], [0.0, 1.0 / e]])
        if self.kind == "Bps":
            return np.array([[1.0, s * x[1, 0]], [0.0, 1.0]])
        return np.array([[1.0, s * x[1]], [0.0, 1.0]])

    def act(self, g: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Ad_g x on sl2, matrix-vector product on R^2."""
        if self.on_vectors:
            return g @ x
        return g @ x @ inv2(g)

    def derivative(self, x: np.ndarray) -> np.ndarray:
        """The differential at 0 in closed form."""
        s = self.s
        if self.kind == "Bs":
            return np.array([[s * x[0, 0], 0.0], [0.0, -s * x[0, 0]]])
        if self.kind == "Bps":
            return np.array([[0.0, s * x[1, 0]], [0.0, 0.0]])
        return np.array([[0.0, s * x[1]], [0.0, 0.0]])

    def upsilon_closed(self, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = self.s
        if self.kind == "Rs":
            x, y = u
            z, w = v
            return np.array([z + s * y * w, w]), np.array([x - s * y * w, y])
        a, b, c = u[0, 0], u[0, 1], u[1, 0]
        x, y, z = v[0, 0], v[0, 1], v[1, 0]
        if self.kind == "Bs":
            first = sl2(x, y * math.exp(2 * s * a), z * math.exp(-2 * s * a))
            second = sl2(a, b * math.exp(-2 * s * x), c * math.exp(2 * s * x))
            return first, second
        first = sl2(x + s * c * z, y - 2 * s * c * x - s * s * c * c * z, z)
        second = sl2(a - s * c * z, b + 2 * s * a * z - s * s * z * z * c, c)
        return first, second

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        if self.on_vectors:
            return rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=2)
        return sl2(*rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=3))

    def zero(self) -> np.ndarray:
        return np.zeros(2) if self.on_vectors else np.zeros((2, 2))

    def to_json(self) -> dict:
        return {"family": self.kind, "s": self.s}


def rb_residual(F: OperatorFamily, x: np.ndarray, y: np.ndarray) -> float:
    """Frobenius norm of F(x) F(y) - F(x + F(x) . y)."""
    fx = F(x)
    return float(np.linalg.norm(fx @ F(y) - F(x + F.act(fx, y))))


def upsilon(F: OperatorFamily, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(u |> v, F(u |> v)^-1 . u)`` computed from the operator alone."""
    w = F.act(F(u), v)
    return w, F.act(inv2(F(w)), u)


def _samples(F: OperatorFamily, count: int, seed: int) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    return [F.sample(rng) for _ in range(count)]


def _max_report(name: str, values, tol: float, seed, extra: dict | None = None) -> Report:
    worst, arg = -1.0, None
    n = 0
    for val, witness in values:
        n += 1
        if not val <= worst:
            worst, arg = val, witness
    holds = worst < tol
    details = {"max_residual": worst, "tolerance": tol, "argmax": arg}
    details.update(extra or {})
    return Report(name, holds, None if holds else arg, n, seed, details)


def residual_report(F: OperatorFamily, samples: int = 1000, seed: int = DEFAULT_SEED) -> Report:
    """Largest RB residual over seeded pairs, plus det F(x) = 1."""
    xs = _samples(F, 2 * samples, seed)
    pairs = list(zip(xs[::2], xs[1::2]))
    rep = _max_report(
        "rb_residual",
        ((rb_residual(F, x, y), {"x": x, "y": y}) for x, y in pairs),
        TOL_ALGEBRAIC,
        seed,
        F.to_json(),
    )
    det_err = max(abs(float(np.linalg.det(F(x))) - 1.0) for x in xs)
    rep.details["max_det_error"] = det_err
    rep.holds = rep.holds and det_err < TOL_EXACT
    return rep


def differentiate_at_zero(F: OperatorFamily, x: np.ndarray, h: float = 1e-3) -> np.ndarray:
    """Central difference of log F(t x) at t = 0, Richardson-extrapolated over h and h/2."""

    def central(step: float) -> np.ndarray:
        return (log_sl2(F(step * x)) - log_sl2(F(-step * x))) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3


def derivative_report(F: OperatorFamily, samples: int = 100, seed: int = DEFAULT_SEED) -> Report:
    xs = _samples(F, samples, seed)
    return _max_report(
        "derivative",
        ((float(np.linalg.norm(differentiate_at_zero(F, x) - F.derivative(x))), {"x": x}) for x in xs),
        TOL_FIRST,
        seed,
        F.to_json(),
    )


def lie_rb_check(B: Callable[[np.ndarray], np.ndarray], samples: int = 1000, seed: int = DEFAULT_SEED) -> Report:
    """[B(x), B(y)] = B([B(x), y] + [x, B(y)]) on seeded sl2 pairs; linearity checked first."""
    rng = np.random.default_rng(seed)
    pairs = [(sl2(*rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, 3)), sl2(*rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, 3))) for _ in range(samples)]
    lin = 0.0
    for x, y in pairs[: min(50, samples)]:
        al, be = rng.uniform(-2, 2, 2)
        lin = max(lin, float(np.linalg.norm(B(al * x + be * y) - al * B(x) - be * B(y))))

    def resid(x, y):
        bx, by = B(x), B(y)
        return float(np.linalg.norm(bracket(bx, by) - B(bracket(bx, y) + bracket(x, by))))

    rep = _max_report("lie_rb", ((resid(x, y), {"x": x, "y": y}) for x, y in pairs), TOL_EXACT, seed)
    rep.details["linearity_error"] = lin
    if lin >= TOL_EXACT:
        rep.holds = False
        rep.counterexample = rep.counterexample or {"law": "linearity"}
    return rep


def prelie_diff_check(F: OperatorFamily, x: np.ndarray, y: np.ndarray, h: float = 1e-3) -> Report:
    """Mixed second difference of (t x) |> (s y) at 0 against [B(x), y] (B(x) y on R^2)."""

    def f(t: float, s: float) -> np.ndarray:
        return F.act(F(t * x), s * y)

    def mixed(k: float) -> np.ndarray:
        return (f(k, k) - f(k, -k) - f(-k, k) + f(-k, -k)) / (4 * k * k)

    approx = (4 * mixed(h / 2) - mixed(h)) / 3
    bx = F.derivative(x)
    exact = bx @ y if F.on_vectors else bracket(bx, y)
    err = float(np.linalg.norm(approx - exact))
    holds = err < TOL_SECOND
    return Report("prelie_diff", holds, None if holds else {"x": x, "y": y}, 1, None, {"error": err, "tolerance": TOL_SECOND, **F.to_json()})


def prelie_report(F: OperatorFamily, samples: int = 100, seed: int = DEFAULT_SEED) -> Report:
    xs = _samples(F, 2 * samples, seed)
    return _max_report(
        "prelie_diff",
        ((prelie_diff_check(F, x, y).details["error"], {"x": x, "y": y}) for x, y in zip(xs[::2], xs[1::2])),
        TOL_SECOND,
        seed,
        F.to_json(),
    )


def upsilon_closed_form_check(F: OperatorFamily, u: np.ndarray, v: np.ndarray) -> Report:
    """Generic Upsilon against the closed form, and Upsilon(Upsilon(u, v)) = (u, v)."""
    g1, g2 = upsilon(F, u, v)
    c1, c2 = F.upsilon_closed(u, v)
    err = max(float(np.linalg.norm(g1 - c1)), float(np.linalg.norm(g2 - c2)))
    b1, b2 = upsilon(F, g1, g2)
    inv_err = max(float(np.linalg.norm(b1 - u)), float(np.linalg.norm(b2 - v)))
    holds = err < TOL_CLOSED and inv_err < TOL_ALGEBRAIC
    return Report(
        "upsilon_closed_form",
        holds,
        None if holds else {"u": u, "v": v},
        1,
        None,
        {"closed_form_error": err, "involution_error": inv_err},
    )


def upsilon_report(F: OperatorFamily, samples: int = 1000, seed: int = DEFAULT_SEED) -> Report:
    xs = _samples(F, 2 * samples, seed)
    worst_c = worst_i = 0.0
    bad = None
    for u, v in zip(xs[::2], xs[1::2]):
        r = upsilon_closed_form_check(F, u, v)
        worst_c = max(worst_c, r.details["closed_form_error"])
        worst_i = max(worst_i, r.details["involution_error"])
        if not r.holds and bad is None:
            bad = {"u": u, "v": v}
    return Report(
        "upsilon_closed_form",
        bad is None,
        bad,
        samples,
        seed,
        {"max_closed_form_error": worst_c, "max_involution_error": worst_i, **F.to_json()},
    )


def family_report(kind: str, s: float, samples: int = 1000, seed: int = DEFAULT_SEED) -> dict[str, Report]:
    """Every numeric check for one family member, keyed by check name."""
    F = OperatorFamily(kind, s)
    out = {"rb_residual": residual_report(F, samples, seed), "upsilon": upsilon_report(F, samples, seed)}
    if not F.on_vectors:
        out["derivative"] = derivative_report(F, min(samples, 100), seed)
        out["lie_rb"] = lie_rb_check(F.derivative, samples, seed)
    out["prelie_diff"] = prelie_report(F, min(samples, 100), seed)
    return out
