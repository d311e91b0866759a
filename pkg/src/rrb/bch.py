"""Exact truncated free associative and free Lie series.

``NCPoly`` is a polynomial in noncommuting generators ``x_1..x_n`` with
rational coefficients, truncated above degree ``D``.  Lie membership is
decided by the Dynkin criterion: a homogeneous degree-k element P is Lie
iff right-nested bracketing sends P to k P.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping

from .report import Report

Word = tuple[int, ...]
MAX_DEGREE = 6
DEFAULT_DEGREE = 4


class ParameterMismatch(ValueError):
    pass


class NotLieError(ValueError):
    """A series expected to be a Lie element failed the Dynkin criterion."""


class NCPoly:
    """A truncated noncommutative polynomial; words use 1-indexed generators."""

    __slots__ = ("n", "D", "terms")

    def __init__(self, n: int, D: int, terms: Mapping[Word, Fraction | int] | None = None):
        if n < 1 or D < 0:
            raise ValueError(f"need n >= 1 and D >= 0, got n={n}, D={D}")
        self.n = n
        self.D = D
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) > D:
                continue
            if any(not 1 <= i <= n for i in w):
                raise ValueError(f"word {w} uses a generator outside 1..{n}")
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def _make(cls, n: int, D: int, terms: dict[Word, Fraction]) -> NCPoly:
        p = object.__new__(cls)
        p.n, p.D = n, D
        p.terms = {w: c for w, c in terms.items() if c}
        return p

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int, D: int) -> NCPoly:
        return cls._make(n, D, {})

    @classmethod
    def one(cls, n: int, D: int) -> NCPoly:
        return cls._make(n, D, {(): Fraction(1)})

    @classmethod
    def gen(cls, i: int, n: int, D: int) -> NCPoly:
        return cls(n, D, {(i,): 1})

    # arithmetic -----------------------------------------------------------

    def _same(self, other: NCPoly) -> None:
        if self.n != other.n or self.D != other.D:
            raise ParameterMismatch(f"(n, D) = {(self.n, self.D)} vs {(other.n, other.D)}")

    def __add__(self, other: NCPoly) -> NCPoly:
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return NCPoly._make(self.n, self.D, t)

    def __neg__(self) -> NCPoly:
        return NCPoly._make(self.n, self.D, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def scale(self, k) -> NCPoly:
        k = Fraction(k)
        return NCPoly._make(self.n, self.D, {w: k * c for w, c in self.terms.items()})

    def __rmul__(self, k) -> NCPoly:
        return self.scale(k)

    def __mul__(self, other: NCPoly) -> NCPoly:
        return nc_mul(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NCPoly) and (self.n, self.D, self.terms) == (other.n, other.D, other.terms)

    def __hash__(self):
        return hash((self.n, self.D, frozenset(self.terms.items())))

    # structure ------------------------------------------------------------

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def component(self, k: int) -> NCPoly:
        return NCPoly._make(self.n, self.D, {w: c for w, c in self.terms.items() if len(w) == k})

    def truncate(self, D: int) -> NCPoly:
        return NCPoly._make(self.n, D, {w: c for w, c in self.terms.items() if len(w) <= D})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "".join(f"x{i}" for i in w) or "1"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly(n={self.n}, D={self.D}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "D": self.D,
            "terms": [[list(w), str(self.terms[w])] for w in sorted(self.terms, key=lambda w: (len(w), w))],
        }


def nc_mul(f: NCPoly, g: NCPoly) -> NCPoly:
    """Concatenation product, truncated at degree D."""
    f._same(g)
    D = f.D
    out: dict[Word, Fraction] = {}
    gt = sorted(g.terms.items(), key=lambda kv: len(kv[0]))
    for u, a in f.terms.items():
        room = D - len(u)
        for v, b in gt:
            if len(v) > room:
                break
            w = u + v
            out[w] = out.get(w, 0) + a * b
    return NCPoly._make(f.n, D, out)


def bracket(f: NCPoly, g: NCPoly) -> NCPoly:
    return nc_mul(f, g) - nc_mul(g, f)


def nc_exp(f: NCPoly) -> NCPoly:
    """Sum of f^k / k! for k <= D; f must have zero constant term."""
    if f.constant():
        raise ValueError("exp needs a series without constant term")
    result = NCPoly.one(f.n, f.D)
    power = NCPoly.one(f.n, f.D)
    for k in range(1, f.D + 1):
        power = nc_mul(power, f)
        if not power:
            break
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def nc_log(g: NCPoly) -> NCPoly:
    """Sum of (-1)^(k+1) (g - 1)^k / k for k <= D; g must have constant term 1."""
    if g.constant() != 1:
        raise ValueError("log needs a series with constant term 1")
    h = g - NCPoly.one(g.n, g.D)
    result = NCPoly.zero(g.n, g.D)
    power = NCPoly.one(g.n, g.D)
    for k in range(1, g.D + 1):
        power = nc_mul(power, h)
        if not power:
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def nc_inverse(g: NCPoly) -> NCPoly:
    """Inverse of a series with constant term 1: the sum of (1 - g)^k."""
    if g.constant() != 1:
        raise ValueError("only series with constant term 1 are inverted")
    h = NCPoly.one(g.n, g.D) - g
    result = NCPoly.one(g.n, g.D)
    power = NCPoly.one(g.n, g.D)
    for _ in range(g.D):
        power = nc_mul(power, h)
        if not power:
            break
        result = result + power
    return result


# ---------------------------------------------------------------------------
# Lie elements
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _right_nested(word: Word) -> tuple[tuple[Word, int], ...]:
    # [x_{i1}, [x_{i2}, [..., x_{ik}]]] expanded into signed words
    if len(word) <= 1:
        return ((word, 1),)
    head = word[0]
    out: dict[Word, int] = {}
    for w, c in _right_nested(word[1:]):
        out[(head,) + w] = out.get((head,) + w, 0) + c
        out[w + (head,)] = out.get(w + (head,), 0) - c
    return tuple((w, c) for w, c in out.items() if c)


def dynkin(P: NCPoly) -> NCPoly:
    """The linear map sending each word to its right-nested bracketing."""
    out: dict[Word, Fraction] = {}
    for w, c in P.terms.items():
        for v, s in _right_nested(w):
            out[v] = out.get(v, 0) + c * s
    return NCPoly._make(P.n, P.D, out)


def dynkin_report(P: NCPoly) -> Report:
    """Zero constant term and delta(P_k) = k P_k for every k <= D."""
    if P.constant():
        return Report("dynkin", False, {"degree": 0}, 1)
    for k in range(1, P.D + 1):
        Pk = P.component(k)
        if dynkin(Pk) != Pk.scale(k):
            return Report("dynkin", False, {"degree": k}, k)
    return Report("dynkin", True, None, P.D)


def is_lie(P: NCPoly) -> bool:
    return dynkin_report(P).holds


@dataclass(frozen=True, eq=False)
class LieElem:
    """An ``NCPoly`` certified to lie in the free Lie algebra."""

    poly: NCPoly

    def __post_init__(self):
        rep = dynkin_report(self.poly)
        if not rep.holds:
            raise NotLieError(f"not a Lie element (fails in degree {rep.counterexample['degree']})")

    @classmethod
    def gen(cls, i: int, n: int, D: int) -> LieElem:
        return cls(NCPoly.gen(i, n, D))

    @classmethod
    def zero(cls, n: int, D: int) -> LieElem:
        return cls(NCPoly.zero(n, D))

    def __add__(self, other: LieElem) -> LieElem:
        return LieElem(self.poly + other.poly)

    def __sub__(self, other: LieElem) -> LieElem:
        return LieElem(self.poly - other.poly)

    def __neg__(self) -> LieElem:
        return LieElem(-self.poly)

    def scale(self, k) -> LieElem:
        return LieElem(self.poly.scale(k))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LieElem) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __str__(self) -> str:
        return format_lie(self)


def lie_bracket(a: LieElem, b: LieElem) -> LieElem:
    return LieElem(bracket(a.poly, b.poly))


def _poly(x: LieElem | NCPoly) -> NCPoly:
    return x.poly if isinstance(x, LieElem) else x


def bch(x: LieElem | NCPoly, y: LieElem | NCPoly, D: int | None = None) -> LieElem:
    """log(exp(x) exp(y)) truncated at D (default: the operands' D)."""
    px, py = _poly(x), _poly(y)
    if D is not None:
        px, py = px.truncate(D), py.truncate(D)
    return LieElem(nc_log(nc_mul(nc_exp(px), nc_exp(py))))


def conjugate(g: NCPoly, y: LieElem | NCPoly) -> LieElem:
    """g y g^-1 for a group-like g."""
    py = _poly(y)
    return LieElem(nc_mul(nc_mul(g, py), nc_inverse(g)))


def verify_eqB(B: Callable[[LieElem], LieElem], x: LieElem, y: LieElem) -> Report:
    """Residual of BCH(B(x), B(y)) - B(x + e^{B(x)} y e^{-B(x)}).

    ``B`` must return Lie elements; a non-Lie output raises ``NotLieError``.
    """
    Bx, By = _as_lie(B(x)), _as_lie(B(y))
    lhs = bch(Bx, By)
    arg = LieElem(x.poly + conjugate(nc_exp(Bx.poly), y).poly)
    rhs = _as_lie(B(arg))
    resid = lhs.poly - rhs.poly
    holds = resid.is_zero()
    return Report(
        "eqB",
        holds,
        None if holds else {"residual": str(resid)},
        1,
        None,
        {"residual": resid.to_json(), "degree": x.poly.D},
    )


def _as_lie(v) -> LieElem:
    if isinstance(v, LieElem):
        return v
    if isinstance(v, NCPoly):
        return LieElem(v)
    raise NotLieError(f"B returned {type(v).__name__}, not a Lie element")


# ---------------------------------------------------------------------------
# Lyndon basis, for display and coordinates
# ---------------------------------------------------------------------------


def lyndon_words(n: int, D: int) -> list[Word]:
    """Lyndon words over 1..n of length <= D (Duval's algorithm), ordered by length then lexicographically."""
    out: list[Word] = []
    w = [0]
    while w:
        out.append(tuple(c + 1 for c in w))
        m = len(w)
        while len(w) < D:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    return sorted(out, key=lambda w: (len(w), w))


def _is_lyndon(w: Word) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) if len(w) > 1 else len(w) == 1


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no proper factorization")


@lru_cache(maxsize=None)
def _bracketing(w: Word) -> str | int:
    return w[0] if len(w) == 1 else (_bracketing(standard_factorization(w)[0]), _bracketing(standard_factorization(w)[1]))


def bracket_poly(tree, n: int, D: int) -> NCPoly:
    """Expand a bracket tree: an int is a generator, a pair (a, b) is [a, b]."""
    if isinstance(tree, int):
        return NCPoly.gen(tree, n, D)
    a, b = tree
    return bracket(bracket_poly(a, n, D), bracket_poly(b, n, D))


def bracket_str(tree) -> str:
    if isinstance(tree, int):
        return f"x{tree}"
    return f"[{bracket_str(tree[0])},{bracket_str(tree[1])}]"


def lyndon_basis(n: int, D: int) -> dict[Word, tuple]:
    """Lyndon word -> its standard bracket tree."""
    return {w: _bracketing(w) for w in lyndon_words(n, D)}


def coordinates(P: NCPoly, basis: Mapping[str, NCPoly]) -> dict[str, Fraction]:
    """Exact coordinates of P in the span of ``basis`` (Gaussian elimination over Q)."""
    names = list(basis)
    words = sorted({w for b in basis.values() for w in b.terms} | set(P.terms))
    rows = [[basis[nm].terms.get(w, Fraction(0)) for nm in names] + [P.terms.get(w, Fraction(0))] for w in words]
    ncol = len(names)
    pivots = []
    r = 0
    for c in range(ncol):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise ValueError("the element is not in the span of the basis")
    if len(pivots) != ncol:
        raise ValueError("the basis elements are linearly dependent")
    return {names[c]: rows[i][-1] for i, c in enumerate(pivots)}


def lyndon_coordinates(x: LieElem | NCPoly) -> dict[str, Fraction]:
    P = _poly(x)
    basis = {bracket_str(t): bracket_poly(t, P.n, P.D) for t in lyndon_basis(P.n, P.D).values()}
    return {k: v for k, v in coordinates(P, basis).items() if v}


def format_lie(x: LieElem | NCPoly) -> str:
    coords = lyndon_coordinates(x)
    if not coords:
        return "0"
    return " + ".join(f"{c}*{b}" if c != 1 else b for b, c in coords.items())


def generators(n: int, D: int) -> list[LieElem]:
    return [LieElem.gen(i, n, D) for i in range(1, n + 1)]


def check_degree(D: int) -> None:
    if not 0 <= D <= MAX_DEGREE:
        raise ValueError(f"degree {D} outside the supported range 0..{MAX_DEGREE}")
