"""T-structures: bijections T of an abelian group A with T(ka) = k T^k(a).

They arise from operators (``T(v) = phi(R(v)^-1) v``) and from bijective
1-cocycles (``T(a) = rho(pi^-1(a)^-1) a``).  On a cyclic group a
T-structure determines a brace, rebuilt by ``cyclic_reconstruct``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .groups import AbSignature, IntVec, Perm
from .rbops import BraceView, OneCocycle, RelRBOp, brace_check
from .report import Report, combine

DEFAULT_K_RANGE = range(-6, 7)
DEFAULT_WINDOW = 3


class TStructureError(ValueError):
    pass


@dataclass(eq=False)
class TStructure:
    """A bijection of A, given by a forward map and its inverse, checked on ``domain``.

    For finite A the domain is all of A; for A with free factors it is a
    finite window.
    """

    signature: AbSignature
    forward: Callable[[IntVec], IntVec]
    inverse: Callable[[IntVec], IntVec]
    domain: tuple[IntVec, ...]
    name: str = "T"

    def __call__(self, a: IntVec) -> IntVec:
        return self.forward(a)

    def power(self, a: IntVec, k: int) -> IntVec:
        f = self.forward if k >= 0 else self.inverse
        for _ in range(abs(k)):
            a = f(a)
        return a

    @classmethod
    def from_table(cls, signature: AbSignature, table: dict[IntVec, IntVec], name: str = "T") -> TStructure:
        if not signature.is_finite:
            raise TStructureError("tables need a finite group")
        els = signature.elements()
        if set(table) != set(els):
            raise TStructureError("the table must list every element exactly once")
        if len(set(table.values())) != len(els):
            raise TStructureError("T is not injective")
        back = {b: a for a, b in table.items()}
        return cls(signature, table.__getitem__, back.__getitem__, tuple(els), name)

    @classmethod
    def cyclic(cls, m: int, images: Sequence[int], name: str = "T") -> TStructure:
        """T on Z_m from the list ``[T(0), ..., T(m-1)]``."""
        if len(images) != m:
            raise TStructureError(f"expected {m} images, got {len(images)}")
        sig = AbSignature((m,))
        return cls.from_table(sig, {IntVec(sig, (a,)): IntVec(sig, (b,)) for a, b in enumerate(images)}, name)

    @classmethod
    def identity(cls, signature: AbSignature, window: int = DEFAULT_WINDOW) -> TStructure:
        ident = lambda a: a  # noqa: E731
        return cls(signature, ident, ident, tuple(signature.box(window)), "id")

    def table(self) -> dict[IntVec, IntVec]:
        return {a: self.forward(a) for a in self.domain}

    def cyclic_images(self) -> list[int]:
        if len(self.signature.moduli) != 1 or self.signature.moduli[0] <= 0:
            raise TStructureError("not a T-structure on a finite cyclic group")
        m = self.signature.moduli[0]
        return [self.forward(IntVec(self.signature, (a,))).coords[0] for a in range(m)]

    def to_json(self) -> dict:
        return {
            "moduli": list(self.signature.moduli),
            "table": [[list(a.coords), list(self.forward(a).coords)] for a in self.domain],
        }


def tstruct_from_json(obj: dict) -> TStructure:
    """Read ``{"modulus": m, "table": [T(0), ...]}`` or ``{"moduli": [...], "table": [[a, T(a)], ...]}``."""
    if "modulus" in obj:
        return TStructure.cyclic(int(obj["modulus"]), [int(x) for x in obj["table"]])
    sig = AbSignature(tuple(int(m) for m in obj["moduli"]))
    table = {IntVec(sig, a): IntVec(sig, b) for a, b in obj["table"]}
    return TStructure.from_table(sig, table)


def bijectivity_check(T: TStructure) -> Report:
    n = 0
    for a in T.domain:
        n += 1
        if T.inverse(T.forward(a)) != a or T.forward(T.inverse(a)) != a:
            return Report("bijective", False, {"a": a}, n)
    if T.signature.is_finite and len({T.forward(a) for a in T.domain}) != len(T.domain):
        return Report("bijective", False, {"law": "injective"}, n)
    return Report("bijective", True, None, n)


def tstruct_check(T: TStructure, k_range: Sequence[int] = DEFAULT_K_RANGE) -> Report:
    """T(ka) = k T^k(a) for every a in the domain and every k in ``k_range``."""
    bij = bijectivity_check(T)
    if not bij.holds:
        return Report("tstruct", False, bij.counterexample, bij.pairs_checked, details={"bijective": False})
    n = 0
    for a in T.domain:
        for k in k_range:
            n += 1
            if T(a.scale(k)) != T.power(a, k).scale(k):
                return Report("tstruct", False, {"a": a, "k": k}, n, details={"bijective": True})
    return Report("tstruct", True, None, n, details={"bijective": True, "k_range": [min(k_range), max(k_range)]})


def t_from_rrb(R: RelRBOp, domain: Sequence[IntVec] | None = None) -> TStructure:
    """``T_R(v) = phi(R(v)^-1) v``, with inverse ``v -> (-v)^dagger``."""
    G, act = R.group, R.module.act
    fwd = lambda v: act(G.inv(R(v)), v)  # noqa: E731
    back = lambda v: R.dagger(-v)  # noqa: E731
    dom = tuple(R.elements() if domain is None else domain)
    return TStructure(R.signature, fwd, back, dom, f"T({R.name})")


def power_formula_check(R: RelRBOp, m_range: Sequence[int] = range(5), n_range: Sequence[int] = range(5)) -> Report:
    """phi(R(n v)^-1)(m v) = m T_R^n(v) over the operator's elements."""
    T = t_from_rrb(R)
    G, act = R.group, R.module.act
    cnt = 0
    for v in R.elements():
        for n in n_range:
            g = G.inv(R(v.scale(n)))
            tn = T.power(v, n)
            for m in m_range:
                cnt += 1
                if act(g, v.scale(m)) != tn.scale(m):
                    return Report("power_formula", False, {"v": v, "m": m, "n": n}, cnt, R.policy.seed)
    return Report("power_formula", True, None, cnt, R.policy.seed)


def t_from_cocycle(pi: OneCocycle, domain: Sequence[IntVec] | None = None) -> TStructure:
    """``T(a) = rho(pi^-1(a)^-1) a``; the inverse is ``b -> pi(pi^-1(-b)^-1)``."""
    if pi.inverse is None:
        raise TStructureError("the cocycle has no inverse")
    G, act = pi.module.group, pi.module.act
    fwd = lambda a: act(G.inv(pi.inverse(a)), a)  # noqa: E731
    back = lambda b: pi(G.inv(pi.inverse(-b)))  # noqa: E731
    sig = pi.module.signature
    if domain is None:
        domain = sig.elements() if sig.is_finite else [pi(g) for g in pi.elements()]
    return TStructure(sig, fwd, back, tuple(dict.fromkeys(domain)), f"T({pi.name})")


# ---------------------------------------------------------------------------
# cyclic reconstruction
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class CyclicBraceDatum:
    """The brace on Z_m rebuilt from a T-structure, with the checks it passed."""

    modulus: int
    multipliers: tuple[int, ...]
    report: Report

    def rho(self, a: int, n: int) -> int:
        return (self.multipliers[a % self.modulus] * n) % self.modulus

    def star(self, a: int, n: int) -> int:
        return (a + self.rho(a, n)) % self.modulus

    def star_table(self) -> list[list[int]]:
        m = self.modulus
        return [[self.star(a, b) for b in range(m)] for a in range(m)]

    def brace(self) -> BraceView:
        sig = AbSignature((self.modulus,))
        return BraceView(sig, lambda x, y: IntVec._raw(sig, (self.star(x.coords[0], y.coords[0]),)), name="cyclic")

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "rho": list(self.multipliers),
            "star": self.star_table(),
            "report": self.report.to_json(),
        }


def _multipliers(perm: Perm, images: Sequence[int], m: int, shift: int) -> tuple[int, ...]:
    # rho(a) is multiplication by T^{-L}(1), where L is the lift of T(a) plus shift * m
    one = 1 % m
    return tuple((perm ** -(images[a] + shift * m)).images[one] for a in range(m))


def cyclic_reconstruct(T: TStructure) -> CyclicBraceDatum:
    """rho(a) n = n T^{-T(a)}(1) and a * n = a + rho(a) n on Z_m, verified exhaustively.

    The exponent uses the lift of T(a) in [0, m); ``details["lift_matters"]``
    records whether the lift shifted by m would change any multiplier.
    """
    images = T.cyclic_images()
    m = len(images)
    pre = tstruct_check(T, range(0, m))
    if not pre.holds:
        raise TStructureError(f"not a T-structure on Z_{m}: {pre.counterexample}")
    perm = Perm(images)
    mult = _multipliers(perm, images, m, 0)
    shifted = _multipliers(perm, images, m, 1)
    order = perm.order()

    parts: dict[str, Report] = {}
    units = [c for c in mult if m == 1 or _is_unit(c, m)]
    parts["automorphisms"] = Report("automorphisms", len(units) == m, None, m)

    def star(a, b):
        return (a + mult[a] * b) % m

    pts = range(m)
    bad = next(((a, b, c) for a, b, c in itertools.product(pts, repeat=3) if star(star(a, b), c) != star(a, star(b, c))), None)
    unit_ok = all(star(0, a) == a and star(a, 0) == a for a in pts)
    inv_ok = all(any(star(a, b) == 0 for b in pts) for a in pts)
    parts["group"] = Report("group", bad is None and unit_ok and inv_ok, bad and dict(zip("abc", bad)), m**3)

    bad = next(((a, b) for a, b in itertools.product(pts, repeat=2) if mult[star(a, b)] != (mult[a] * mult[b]) % m), None)
    parts["module"] = Report("module", bad is None and mult[0] == 1 % m, bad and dict(zip("ab", bad)), m * m)

    bad = next(((a, b) for a, b in itertools.product(pts, repeat=2) if star(a, b) != (a + mult[a] * b) % m), None)
    parts["cocycle"] = Report("cocycle", bad is None, bad and dict(zip("ab", bad)), m * m)

    bad = next(
        ((a, b, c) for a, b, c in itertools.product(pts, repeat=3) if star(a, (b + c) % m) != (star(a, b) + star(a, c) - a) % m),
        None,
    )
    parts["brace"] = Report("brace", bad is None, bad and dict(zip("abc", bad)), m**3)

    rep = combine("cyclic_reconstruct", parts)
    rep.details.update({"order_T": order, "order_divides_m": m % order == 0, "lift_matters": mult != shifted})
    datum = CyclicBraceDatum(m, mult, rep)
    if not rep.holds:
        raise TStructureError(f"reconstruction failed: {rep.counterexample}")
    return datum


def _is_unit(c: int, m: int) -> bool:
    from math import gcd

    return gcd(c, m) == 1


def reconstruction_matches(datum: CyclicBraceDatum, star: Callable[[int, int], int]) -> Report:
    """Compare the rebuilt product with a reference product on Z_m."""
    m = datum.modulus
    n = 0
    for a in range(m):
        for b in range(m):
            n += 1
            if datum.star(a, b) != star(a, b) % m:
                return Report("reconstruction", False, {"a": a, "b": b}, n)
    return Report("reconstruction", True, None, n)


def brace_of_datum_check(datum: CyclicBraceDatum) -> Report:
    return brace_check(datum.brace())
