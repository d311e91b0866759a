"""Involutive non-degenerate set-theoretic solutions of the Yang-Baxter equation.

A solution on ``X = {1..n}`` is stored through its left maps ``sigma_x``;
the right maps are always derived as ``tau_y(x) = sigma_{sigma_x(y)}^{-1}(x)``.
Operators give solutions through ``Upsilon_R``, and a solution gives back an
operator ``Z^X -> Sym_X`` through its structure group, realized concretely
inside ``Z^X x| Sym_X`` up to a word-length bound.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .groups import (
    AbSignature,
    GroupHandle,
    IntVec,
    ModuleAction,
    Perm,
    SemidirectElem,
    closure,
    perm_act,
    permutation_module,
    semidirect_inverse,
    semidirect_mul,
)
from .perm_rb import RecursiveRBOp, SigmaTuple
from .rbops import Exhaustive, OneCocycle, RelRBOp, cocycle_check, rrb_from_cocycle, verify_rrb
from .report import Report, combine

DEFAULT_WORD_BOUND = 4


class DegenerateSolution(ValueError):
    """Some derived tau_y fails to be a bijection."""


class SingleValuednessError(ValueError):
    """Two structure-group elements share a vector but not a permutation."""


class UpsilonMismatch(AssertionError):
    """The two formulas for Upsilon_R disagreed."""


@dataclass(frozen=True)
class SetYBE:
    sigma: tuple[Perm, ...]
    tau: tuple[Perm, ...] = field(init=False)

    def __post_init__(self):
        sigma = tuple(self.sigma)
        n = len(sigma)
        if any(s.n != n for s in sigma):
            raise ValueError(f"every sigma_x must have degree {n}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", derive_tau(sigma))

    @property
    def size(self) -> int:
        return len(self.sigma)

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        """``r(x, y) = (sigma_x(y), tau_y(x))`` on 1-indexed points."""
        return self.sigma[x - 1](y), self.tau[y - 1](x)

    @classmethod
    def flip(cls, n: int) -> SetYBE:
        return cls(tuple(Perm.identity(n) for _ in range(n)))

    @classmethod
    def from_json(cls, obj: Any) -> SetYBE:
        if isinstance(obj, str):
            obj = json.loads(obj)
        sigma = tuple(Perm.from_images(im) for im in obj["sigma"])
        if "n" in obj and obj["n"] != len(sigma):
            raise ValueError(f"declared n={obj['n']} but {len(sigma)} maps sigma_x")
        sol = cls(sigma)
        if "tau" in obj and obj["tau"] is not None:
            given = tuple(Perm.from_images(im) for im in obj["tau"])
            if given != sol.tau:
                raise ValueError("supplied tau does not match tau_y(x) = sigma_{sigma_x(y)}^{-1}(x)")
        return sol

    def to_json(self) -> dict:
        return {
            "n": self.size,
            "sigma": [[s(i) for i in range(1, self.size + 1)] for s in self.sigma],
            "tau": [[t(i) for i in range(1, self.size + 1)] for t in self.tau],
        }


def derive_tau(sigma: Sequence[Perm]) -> tuple[Perm, ...]:
    n = len(sigma)
    taus = []
    for y in range(1, n + 1):
        img = [sigma[sigma[x - 1](y) - 1].inverse()(x) - 1 for x in range(1, n + 1)]
        if sorted(img) != list(range(n)):
            raise DegenerateSolution(f"tau_{y} is not a bijection")
        taus.append(Perm(img, check=False))
    return tuple(taus)


def ybe_check(r: SetYBE) -> Report:
    """Involutivity, non-degeneracy, the braid relation on X^3 and condition (iii)'.

    ``details["criteria_agree"]`` compares the direct braid test with (iii)'.
    """
    n = r.size
    pts = range(1, n + 1)
    parts: dict[str, Report] = {}

    bad = next(((x, y) for x in pts for y in pts if r(*r(x, y)) != (x, y)), None)
    parts["involutive"] = Report("involutive", bad is None, bad and {"x": bad[0], "y": bad[1]}, n * n)

    perms = list(r.sigma) + list(r.tau)
    nd = all(sorted(p.images) == list(range(n)) for p in perms)
    parts["non_degenerate"] = Report("non_degenerate", nd, None, len(perms))

    def r1(t):
        a, b = r(t[0], t[1])
        return (a, b, t[2])

    def r2(t):
        b, c = r(t[1], t[2])
        return (t[0], b, c)

    bad = None
    for t in itertools.product(pts, repeat=3):
        if r1(r2(r1(t))) != r2(r1(r2(t))):
            bad = {"x": t[0], "y": t[1], "z": t[2]}
            break
    parts["braid"] = Report("braid", bad is None, bad, n**3)

    bad = None
    s = r.sigma
    for x in pts:
        for y in pts:
            lhs = s[x - 1] * s[s[x - 1].inverse()(y) - 1]
            rhs = s[y - 1] * s[s[y - 1].inverse()(x) - 1]
            if lhs != rhs:
                bad = {"x": x, "y": y}
                break
        if bad:
            break
    parts["condition_iii"] = Report("condition_iii", bad is None, bad, n * n)

    rep = combine("ybe", parts)
    rep.details["criteria_agree"] = parts["braid"].holds == parts["condition_iii"].holds
    return rep


# ---------------------------------------------------------------------------
# solutions from operators
# ---------------------------------------------------------------------------


def upsilon(R: RelRBOp, u: IntVec, v: IntVec, cross_check: bool = True) -> tuple[IntVec, IntVec]:
    """``(u |> v, phi(R(u |> v)^-1) u)``; optionally compared with ``(u |> v, (u |> v)^dagger |> u)``."""
    G, act = R.group, R.module.act
    w = R.act(u, v)
    second = act(G.inv(R(w)), u)
    if cross_check:
        other = R.act(R.dagger(w), u)
        if other != second:
            raise UpsilonMismatch(f"Upsilon forms differ at u={u}, v={v}")
    return w, second


def upsilon_involutive_check(R: RelRBOp) -> Report:
    n = 0
    for u, v in R.pairs():
        n += 1
        if upsilon(R, *upsilon(R, u, v)) != (u, v):
            return Report("upsilon_involutive", False, {"u": u, "v": v}, n, R.policy.seed)
    return Report("upsilon_involutive", True, None, n, R.policy.seed)


def restrict_to_basis(R: RecursiveRBOp | SigmaTuple | Sequence[Perm]) -> SetYBE:
    """The solution on the basis ``{e_i}`` induced by a tuple operator: ``sigma_x`` read off the tuple."""
    if isinstance(R, RecursiveRBOp):
        sigma = R.sigma_tuple.sigma
    elif isinstance(R, SigmaTuple):
        sigma = R.sigma
    else:
        sigma = tuple(R)
    return SetYBE(tuple(sigma))


def basis_solution_check(R: RelRBOp, r: SetYBE) -> Report:
    """``Upsilon_R(e_x, e_y) = (e_{x'}, e_{y'})`` with ``(x', y') = r(x, y)`` for all x, y."""
    sig = R.signature
    n = 0
    for x in range(1, r.size + 1):
        for y in range(1, r.size + 1):
            n += 1
            a, b = r(x, y)
            if upsilon(R, sig.basis(x), sig.basis(y)) != (sig.basis(a), sig.basis(b)):
                return Report("upsilon_on_basis", False, {"x": x, "y": y}, n)
    return Report("upsilon_on_basis", True, None, n)


# ---------------------------------------------------------------------------
# structure groups
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class StructureGroup:
    """The subgroup of ``Z^X x| Sym_X`` generated by ``(e_x, sigma_x)``.

    ``elements`` holds the words of length at most ``word_bound``;
    ``rr_map`` is read from words of length at most ``2 * word_bound`` so
    that products of two enumerated elements can be looked up.
    """

    solution: SetYBE
    word_bound: int
    elements: list[SemidirectElem]
    rr_map: dict[IntVec, Perm]
    stabilized: bool
    phi: ModuleAction

    @property
    def signature(self) -> AbSignature:
        return self.phi.signature

    def vectors(self) -> list[IntVec]:
        return sorted({h.vec for h in self.elements})

    def operator(self) -> RelRBOp:
        """``R_r`` on the natural action of Sym_X, checked over the enumerated vectors."""
        rr = self.rr_map

        def ev(v: IntVec) -> Perm:
            try:
                return rr[v]
            except KeyError:
                raise KeyError(f"{v} lies outside the enumerated part of the structure group") from None

        return RelRBOp(self.phi, ev, Exhaustive(tuple(self.vectors())), name="R_r")

    def mul(self, a: SemidirectElem, b: SemidirectElem) -> SemidirectElem:
        return semidirect_mul(a, b, self.phi)

    def inv(self, a: SemidirectElem) -> SemidirectElem:
        return semidirect_inverse(a, self.phi)

    def handle(self) -> GroupHandle:
        els = self.elements
        n = self.solution.size
        return GroupHandle(
            "H_r",
            SemidirectElem(self.signature.zero(), Perm.identity(n)),
            self.mul,
            self.inv,
            eq=lambda a, b: a == b,
            enumerate=lambda: els,
        )


def structure_group(r: SetYBE, word_bound: int = DEFAULT_WORD_BOUND) -> StructureGroup:
    if word_bound < 1:
        raise ValueError("word_bound must be at least 1")
    n = r.size
    phi = permutation_module(n)
    sig = phi.signature
    gens = [SemidirectElem(sig.basis(x), r.sigma[x - 1]) for x in range(1, n + 1)]
    ident = SemidirectElem(sig.zero(), Perm.identity(n))
    mul = lambda a, b: semidirect_mul(a, b, phi)  # noqa: E731
    inv = lambda a: semidirect_inverse(a, phi)  # noqa: E731
    big = closure(gens, mul, inv, 2 * word_bound, identity=ident)
    rr: dict[IntVec, Perm] = {}
    for h in big.elements:
        old = rr.setdefault(h.vec, h.grp)
        if old != h.grp:
            raise SingleValuednessError(f"vector {h.vec} carries both {old} and {h.grp}")
    small = [h for h, d in big.length.items() if d <= word_bound]
    small.sort()
    return StructureGroup(r, word_bound, small, rr, big.stabilized, phi)


def graph_property_check(H: StructureGroup) -> Report:
    """Closure of the enumerated graph under products and inverses, plus R_r(e_x) = sigma_x."""
    n = 0
    for a in H.elements:
        ai = H.inv(a)
        if H.rr_map.get(ai.vec) != ai.grp:
            return Report("graph", False, {"law": "inverse", "a": a}, n)
        for b in H.elements:
            n += 1
            c = H.mul(a, b)
            if H.rr_map.get(c.vec) != c.grp:
                return Report("graph", False, {"law": "product", "a": a, "b": b}, n)
    sig = H.signature
    for x in range(1, H.solution.size + 1):
        if H.rr_map[sig.basis(x)] != H.solution.sigma[x - 1]:
            return Report("graph", False, {"law": "generator", "x": x}, n)
    return Report("graph", True, None, n, details={"stabilized": H.stabilized, "size": len(H.elements)})


def roundtrip_check(r: SetYBE, word_bound: int = DEFAULT_WORD_BOUND, H: StructureGroup | None = None) -> Report:
    """R_r is an operator, Upsilon_{R_r} restricts to r on X^2, and pi is a brace map."""
    H = H or structure_group(r, word_bound)
    R = H.operator()
    parts: dict[str, Report] = {"graph": graph_property_check(H), "rrb": verify_rrb(R), "upsilon": basis_solution_check(R, r)}

    n, bad = 0, None
    for a in H.elements:
        for b in H.elements:
            n += 1
            prod = H.mul(a, b)
            if prod.vec != R.star(a.vec, b.vec) or H.rr_map.get(prod.vec) != prod.grp:
                bad = {"a": a, "b": b}
                break
        if bad:
            break
    parts["brace_isomorphism"] = Report("brace_isomorphism", bad is None, bad, n)
    return combine("roundtrip", parts)


def adjoint_cocycle(H: StructureGroup) -> OneCocycle:
    """The projection ``pi: H_r -> Z^X`` as a 1-cocycle for conjugation."""
    G = H.handle()
    zero_perm = Perm.identity(H.solution.size)

    def ad(h: SemidirectElem, b: IntVec) -> IntVec:
        return H.mul(H.mul(h, SemidirectElem(b, zero_perm)), H.inv(h)).vec

    module = ModuleAction(G, H.signature, ad, "Ad")
    lift = lambda a: SemidirectElem(a, H.rr_map[a])  # noqa: E731
    return OneCocycle(module, lambda h: h.vec, lift, group_elements=H.elements, name="pi")


def adjoint_cocycle_check(H: StructureGroup) -> Report:
    """Ad_{(a, R_r(a))} b = R_r(a) b, pi is a bijective 1-cocycle and pi^-1 an operator."""
    pi = adjoint_cocycle(H)
    vecs = H.vectors()
    n, bad = 0, None
    for h in H.elements:
        for b in vecs:
            n += 1
            if pi.module.act(h, b) != perm_act(h.grp, b):
                bad = {"a": h.vec, "b": b}
                break
        if bad:
            break
    parts = {"adjoint": Report("adjoint", bad is None, bad, n), "cocycle": cocycle_check(pi)}
    R = rrb_from_cocycle(pi, Exhaustive(tuple(vecs)), verify=False)
    parts["rrb"] = verify_rrb(R)
    return combine("adjoint_cocycle", parts)
