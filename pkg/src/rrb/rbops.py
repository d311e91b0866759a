"""Relative Rota-Baxter operators of weight 0 and the structures they induce.

A relative Rota-Baxter operator is a map ``R: V -> G`` from a G-module
``(V, phi)`` into ``G`` with ``R(u) R(v) = R(u + phi(R(u)) v)``.  It induces

* the pre-group product ``u |> v = phi(R(u)) v``,
* the descendent group ``u * v = u + phi(R(u)) v`` with inverse
  ``u^dagger = -phi(R(u)^-1) u``,
* a brace ``(V, +, *)`` and its gamma function,

and bijective 1-cocycles ``pi: G -> V`` give operators back as ``pi^-1``.

Every check quantifies over a ``DomainPolicy``: the whole of a finite V,
a coordinate box plus seeded samples for infinite V, or seeded samples
alone.  Checks return a ``Report`` whose counterexample is the first
failure in the policy's order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

from .groups import (
    AbSignature,
    Fingerprint,
    GroupHandle,
    IntVec,
    ModuleAction,
    cyclic_group,
    fingerprint,
    integer_group,
)
from .report import Report, combine

DEFAULT_SEED = 42
TRIPLE_LIMIT = 250_000


class EmptyDomainError(ValueError):
    """A policy produced nothing to check."""


class VerificationError(ValueError):
    """A construction required a verified input and verification failed."""

    def __init__(self, report: Report):
        super().__init__(f"{report.check} failed; counterexample {report.counterexample}")
        self.report = report


# ---------------------------------------------------------------------------
# domain policies
# ---------------------------------------------------------------------------


class DomainPolicy:
    """Which vectors, pairs and triples of V a check runs over."""

    seed: int | None = None

    def elements(self, sig: AbSignature) -> list[IntVec]:
        raise NotImplementedError

    def rows(self, sig: AbSignature) -> Iterator[tuple[IntVec, Sequence[IntVec]]]:
        """Pairs grouped by first entry, as ``(u, [v, ...])``."""
        els = self.elements(sig)
        for u in els:
            yield u, els

    def pairs(self, sig: AbSignature) -> Iterator[tuple[IntVec, IntVec]]:
        for u, vs in self.rows(sig):
            for v in vs:
                yield u, v

    def probes(self, sig: AbSignature) -> list[IntVec]:
        """Zero, the signed generators and two seeded picks, for inner arguments of triple laws."""
        els = self.elements(sig)
        rng = random.Random(DEFAULT_SEED if self.seed is None else self.seed)
        picks = [sig.zero()]
        for e in sig.basis_vectors():
            picks += [e, -e]
        picks += [els[rng.randrange(len(els))] for _ in range(min(2, len(els)))]
        return list(dict.fromkeys(picks))

    def triples(self, sig: AbSignature) -> Iterator[tuple[IntVec, IntVec, IntVec]]:
        """All triples when that is at most ``TRIPLE_LIMIT``, else ``elements x probes x probes``."""
        els = self.elements(sig)
        if len(els) ** 3 <= TRIPLE_LIMIT:
            return itertools.product(els, repeat=3)
        pr = self.probes(sig)
        return ((x, y, z) for x in els for y in pr for z in pr)

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Exhaustive(DomainPolicy):
    """Every element of a finite V, or of an explicitly supplied finite set."""

    vectors: tuple[IntVec, ...] | None = None
    seed: int | None = None

    def elements(self, sig: AbSignature) -> list[IntVec]:
        if self.vectors is not None:
            return list(self.vectors)
        return sig.elements()

    def describe(self) -> dict:
        return {"policy": "exhaustive", "size": None if self.vectors is None else len(self.vectors)}


@dataclass(frozen=True)
class Bounded(DomainPolicy):
    """The box [-radius, radius] on free coordinates plus ``extra`` seeded pairs outside it."""

    radius: int = 3
    extra: int = 256
    seed: int = DEFAULT_SEED

    def elements(self, sig: AbSignature) -> list[IntVec]:
        return sig.box(self.radius)

    def rows(self, sig: AbSignature) -> Iterator[tuple[IntVec, Sequence[IntVec]]]:
        yield from super().rows(sig)
        if sig.is_finite or self.extra <= 0:
            return
        rng = random.Random(self.seed)
        k = self.radius
        made = 0
        while made < self.extra:
            u = sig.random(rng, 3 * k)
            v = sig.random(rng, 3 * k)
            if all(abs(c) <= k for c in u.coords + v.coords):
                continue
            made += 1
            yield u, [v]

    def describe(self) -> dict:
        return {"policy": "bounded", "radius": self.radius, "extra": self.extra, "seed": self.seed}


@dataclass(frozen=True)
class Sampled(DomainPolicy):
    """``count`` seeded random vectors with free coordinates in [-radius, radius]."""

    count: int = 1000
    radius: int = 10
    seed: int = DEFAULT_SEED

    def elements(self, sig: AbSignature) -> list[IntVec]:
        rng = random.Random(self.seed)
        return [sig.random(rng, self.radius) for _ in range(self.count)]

    def rows(self, sig: AbSignature) -> Iterator[tuple[IntVec, Sequence[IntVec]]]:
        rng = random.Random(self.seed + 1)
        for _ in range(self.count):
            yield sig.random(rng, self.radius), [sig.random(rng, self.radius)]

    def describe(self) -> dict:
        return {"policy": "sampled", "count": self.count, "radius": self.radius, "seed": self.seed}


def default_policy(sig: AbSignature) -> DomainPolicy:
    return Exhaustive() if sig.is_finite else Bounded()


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class RelRBOp:
    """A candidate operator ``V -> G`` together with the domain it is checked on."""

    module: ModuleAction
    eval: Callable[[IntVec], Any]
    policy: DomainPolicy | None = None
    name: str = "R"

    def __post_init__(self):
        if self.policy is None:
            self.policy = default_policy(self.module.signature)

    def __call__(self, v: IntVec):
        return self.eval(v)

    @property
    def signature(self) -> AbSignature:
        return self.module.signature

    @property
    def group(self) -> GroupHandle:
        return self.module.group

    def with_policy(self, policy: DomainPolicy) -> RelRBOp:
        return RelRBOp(self.module, self.eval, policy, self.name)

    def elements(self) -> list[IntVec]:
        return self.policy.elements(self.signature)

    def pairs(self):
        return self.policy.pairs(self.signature)

    def valued_rows(self):
        """``(u, R(u), [(v, R(v)), ...])`` over the policy's pairs, sharing work between rows."""
        ev = self.eval
        cache: dict[int, list] = {}
        for u, vs in self.policy.rows(self.signature):
            key = id(vs)
            vals = cache.get(key)
            if vals is None:
                vals = [(v, ev(v)) for v in vs]
                if len(vs) > 1:
                    cache[key] = vals
            yield u, ev(u), vals

    def triples(self):
        return self.policy.triples(self.signature)

    def act(self, u: IntVec, v: IntVec) -> IntVec:
        """The pre-group product ``u |> v = phi(R(u)) v``."""
        return self.module.act(self.eval(u), v)

    def star(self, u: IntVec, v: IntVec) -> IntVec:
        """The descendent product ``u * v = u + phi(R(u)) v``."""
        return u + self.module.act(self.eval(u), v)

    def dagger(self, u: IntVec) -> IntVec:
        """Inverse of ``u`` in the descendent group."""
        G = self.module.group
        return -self.module.act(G.inv(self.eval(u)), u)


def _seed(R: RelRBOp) -> int | None:
    return R.policy.seed


def verify_rrb(R: RelRBOp) -> Report:
    """Check ``R(u) R(v) = R(u + phi(R(u)) v)`` over the policy's pairs."""
    G, act, ev = R.group, R.module.act, R.eval
    mul, eq = G.mul, G.eq
    n = 0
    for u, ru, row in R.valued_rows():
        for v, rv in row:
            n += 1
            if not eq(mul(ru, rv), ev(u + act(ru, v))):
                return Report("rrb", False, {"u": u, "v": v}, n, _seed(R))
    if n == 0:
        raise EmptyDomainError(f"policy {R.policy.describe()} yielded no pairs")
    return Report("rrb", True, None, n, _seed(R), {"domain": R.policy.describe()})


def require_rrb(R: RelRBOp) -> None:
    rep = verify_rrb(R)
    if not rep.holds:
        raise VerificationError(rep)


def verify_derived_identities(R: RelRBOp) -> Report:
    """R(0) = e, the two inverse formulas, and the commutation relation."""
    G, act, ev = R.group, R.module.act, R.eval
    eq, inv, mul = G.eq, G.inv, G.mul
    sig = R.signature
    parts: dict[str, Report] = {}

    parts["unit"] = Report("unit", eq(ev(sig.zero()), G.identity), None if eq(ev(sig.zero()), G.identity) else {"u": sig.zero()}, 1)

    def per_element(name: str, pred) -> Report:
        n = 0
        for u in R.elements():
            n += 1
            if not pred(u):
                return Report(name, False, {"u": u}, n)
        return Report(name, True, None, n)

    def minus(u):
        ri = inv(ev(u))
        return eq(ev(-u), inv(ev(act(ri, u))))

    def inverse(u):
        ri = inv(ev(u))
        return eq(ri, ev(-act(ri, u)))

    parts["minus"] = per_element("minus", minus)
    parts["inverse"] = per_element("inverse", inverse)

    def commutation() -> Report:
        n = 0
        for u, ru, row in R.valued_rows():
            rui = inv(ru)
            for v, rv in row:
                n += 1
                if not eq(mul(ru, ev(act(rui, v))), mul(rv, ev(act(inv(rv), u)))):
                    return Report("commutation", False, {"u": u, "v": v}, n)
        return Report("commutation", True, None, n)

    parts["commutation"] = commutation()
    return combine("derived_identities", parts, _seed(R))


def graph_subgroup_check(R: RelRBOp) -> Report:
    """Closure of {(u, R(u))} under semidirect multiplication and inversion.

    ``details["agrees_with_rrb"]`` records whether this verdict matches
    ``verify_rrb`` pair by pair on the same domain.
    """
    G, act, ev = R.group, R.module.act, R.eval
    n = 0
    first_bad = None
    disagreements = 0
    for u, ru, v, rv in ((u, ru, v, rv) for u, ru, row in R.valued_rows() for v, rv in row):
        n += 1
        vec = u + act(ru, v)
        grp = G.mul(ru, rv)
        closed = G.eq(ev(vec), grp)
        rrb_ok = G.eq(G.mul(ru, rv), ev(u + act(ru, v)))
        if closed != rrb_ok:
            disagreements += 1
        if not closed and first_bad is None:
            first_bad = {"u": u, "v": v, "product": {"vec": vec, "grp": grp}}
    inv_bad = None
    for u in R.elements():
        ri = G.inv(ev(u))
        w = -act(ri, u)
        if not G.eq(ev(w), ri):
            inv_bad = {"u": u}
            break
    holds = first_bad is None and inv_bad is None
    return Report(
        "graph_subgroup",
        holds,
        first_bad or inv_bad,
        n,
        _seed(R),
        {"products_closed": first_bad is None, "inverses_closed": inv_bad is None, "agrees_with_rrb": disagreements == 0},
    )


# ---------------------------------------------------------------------------
# descendent group and pre-group
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class DescendentGroup:
    base: RelRBOp

    @property
    def signature(self) -> AbSignature:
        return self.base.signature

    def mul(self, u: IntVec, v: IntVec) -> IntVec:
        return self.base.star(u, v)

    def inv(self, u: IntVec) -> IntVec:
        return self.base.dagger(u)

    def left_mult(self, u: IntVec) -> Callable[[IntVec], IntVec]:
        g = self.base(u)
        act = self.base.module.act
        return lambda v: act(g, v)

    def handle(self) -> GroupHandle:
        sig = self.signature
        enum = None
        if sig.is_finite:
            els = sig.elements()
            enum = lambda: els  # noqa: E731
        else:
            pol = self.base.policy
            enum_els = pol.elements(sig)
        return GroupHandle(
            f"descendent({self.base.name})",
            sig.zero(),
            self.mul,
            self.inv,
            enumerate=enum,
            sample=None if enum else (lambda rng: enum_els[rng.randrange(len(enum_els))]),
        )

    def fingerprint(self) -> Fingerprint:
        if not self.signature.is_finite:
            raise ValueError("fingerprints need a finite group")
        return fingerprint(self.signature.elements(), self.mul, self.signature.zero())

    def check(self) -> Report:
        """Group axioms, the homomorphism property of R and the action L."""
        R = self.base
        G = R.group
        zero = self.signature.zero()
        parts = {}
        n, bad = 0, None
        for u in R.elements():
            n += 1
            if self.mul(zero, u) != u or self.mul(u, zero) != u:
                bad = {"law": "unit", "u": u}
                break
            d = self.inv(u)
            if self.mul(u, d) != zero or self.mul(d, u) != zero:
                bad = {"law": "inverse", "u": u}
                break
        parts["unit_inverse"] = Report("unit_inverse", bad is None, bad, n)
        n, bad = 0, None
        for x, y, z in R.triples():
            n += 1
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                bad = {"x": x, "y": y, "z": z}
                break
        parts["associativity"] = Report("associativity", bad is None, bad, n)
        n, bad = 0, None
        for u, ru, row in R.valued_rows():
            for v, rv in row:
                n += 1
                if not G.eq(R(self.mul(u, v)), G.mul(ru, rv)):
                    bad = {"u": u, "v": v}
                    break
            if bad:
                break
        parts["homomorphism"] = Report("homomorphism", bad is None, bad, n)
        parts["left_action"] = left_action_check(self)
        return combine("descendent_group", parts, _seed(R))


def left_action_check(D: DescendentGroup) -> Report:
    """L_{u*v} = L_u L_v and (L_u)^-1 = L_{u^dagger}.

    Both sides are additive maps of V, so they are compared on the
    generators e_i only.
    """
    R = D.base
    act = R.module.act
    gens = D.signature.basis_vectors()
    n = 0
    for u, ru, row in R.valued_rows():
        for v, rv in row:
            n += 1
            g = R(u + act(ru, v))
            for w in gens:
                if act(g, w) != act(ru, act(rv, w)):
                    return Report("left_action", False, {"u": u, "v": v, "w": w}, n)
    for u in R.elements():
        Lu, Ld = D.left_mult(u), D.left_mult(D.inv(u))
        for w in gens:
            if Ld(Lu(w)) != w or Lu(Ld(w)) != w:
                return Report("left_action_inverse", False, {"u": u, "w": w}, n)
    return Report("left_action", True, None, n)


def descendent(R: RelRBOp, verify: bool = True) -> DescendentGroup:
    if verify:
        require_rrb(R)
    return DescendentGroup(R)


def pregroup_check(R: RelRBOp) -> Report:
    """Left distributivity of |> over + and x |> (y |> z) = (x + x |> y) |> z."""
    act, ev = R.module.act, R.eval
    n = 0
    for x, y, z in R.triples():
        n += 1
        rx = ev(x)
        if act(rx, y + z) != act(rx, y) + act(rx, z):
            return Report("pregroup", False, {"law": "distributive", "x": x, "y": y, "z": z}, n, _seed(R))
        if act(rx, act(ev(y), z)) != act(ev(x + act(rx, y)), z):
            return Report("pregroup", False, {"law": "associative", "x": x, "y": y, "z": z}, n, _seed(R))
    return Report("pregroup", True, None, n, _seed(R))


# ---------------------------------------------------------------------------
# braces, gamma functions, 1-cocycles
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class BraceView:
    """A brace (V, +, *) whose multiplication is given as a function."""

    signature: AbSignature
    star: Callable[[IntVec, IntVec], IntVec]
    inv: Callable[[IntVec], IntVec] | None = None
    policy: DomainPolicy | None = None
    name: str = "brace"

    def __post_init__(self):
        if self.policy is None:
            self.policy = default_policy(self.signature)
        if self.inv is None:
            if not self.signature.is_finite:
                raise ValueError("an inverse function is required for infinite braces")
            els = self.signature.elements()
            zero = self.signature.zero()
            table = {}
            for x in els:
                for y in els:
                    if self.star(x, y) == zero:
                        table[x] = y
                        break
            self.inv = table.__getitem__

    def mult_group(self) -> GroupHandle:
        sig = self.signature
        if sig.is_finite:
            els = sig.elements()
            return GroupHandle(self.name, sig.zero(), self.star, self.inv, enumerate=lambda: els)
        els = self.policy.elements(sig)
        return GroupHandle(self.name, sig.zero(), self.star, self.inv, sample=lambda rng: els[rng.randrange(len(els))])

    def fingerprint(self) -> Fingerprint:
        return fingerprint(self.signature.elements(), self.star, self.signature.zero())


def brace_check(B: BraceView) -> Report:
    """(V, *) is a group with unit 0 and x*(y+z) = x*y + x*z - x."""
    sig, star = B.signature, B.star
    zero = sig.zero()
    n = 0
    for x in B.policy.elements(sig):
        n += 1
        if star(zero, x) != x or star(x, zero) != x:
            return Report("brace", False, {"law": "unit", "x": x}, n, B.policy.seed)
        xi = B.inv(x)
        if star(x, xi) != zero or star(xi, x) != zero:
            return Report("brace", False, {"law": "inverse", "x": x}, n, B.policy.seed)
    for x, y, z in B.policy.triples(sig):
        n += 1
        if star(x, y + z) != star(x, y) + star(x, z) - x:
            return Report("brace", False, {"law": "brace", "x": x, "y": y, "z": z}, n, B.policy.seed)
        if star(star(x, y), z) != star(x, star(y, z)):
            return Report("brace", False, {"law": "associativity", "x": x, "y": y, "z": z}, n, B.policy.seed)
    return Report("brace", True, None, n, B.policy.seed)


def brace_law_check(B: BraceView) -> Report:
    """x*(y+z) = x*y + x*z - x over the policy's triples, without the group axioms."""
    star = B.star
    n = 0
    for x, y, z in B.policy.triples(B.signature):
        n += 1
        if star(x, y + z) != star(x, y) + star(x, z) - x:
            return Report("brace_law", False, {"x": x, "y": y, "z": z}, n, B.policy.seed)
    return Report("brace_law", True, None, n, B.policy.seed)


def brace_from_rrb(R: RelRBOp, verify: bool = True) -> BraceView:
    if verify:
        require_rrb(R)
    B = BraceView(R.signature, R.star, R.dagger, R.policy, name=f"brace({R.name})")
    if verify:
        rep = brace_check(B)
        if not rep.holds:
            raise VerificationError(rep)
    return B


def gamma_function(B: BraceView) -> ModuleAction:
    """gamma(x) y = -x + x*y, an action of (V, *) on (V, +)."""
    star = B.star
    return ModuleAction(B.mult_group(), B.signature, lambda x, y: star(x, y) - x, f"gamma({B.name})")


def gamma_check(B: BraceView) -> Report:
    """gamma is a homomorphism into Aut(V, +): unit, additivity and gamma(x*y) = gamma(x)gamma(y).

    Additivity is tested against the generators e_i, and the homomorphism
    law (an equality of additive maps) on the generators only.
    """
    gam = gamma_function(B)
    sig = B.signature
    zero = sig.zero()
    n = 0
    for y in B.policy.elements(sig):
        if gam.act(zero, y) != y:
            return Report("gamma", False, {"law": "unit", "y": y}, n, B.policy.seed)
    gens = sig.basis_vectors()
    for x, y in B.policy.pairs(sig):
        n += 1
        xy = B.star(x, y)
        for w in gens:
            if gam.act(xy, w) != gam.act(x, gam.act(y, w)):
                return Report("gamma", False, {"law": "homomorphism", "x": x, "y": y, "w": w}, n, B.policy.seed)
            if gam.act(x, y + w) != gam.act(x, y) + gam.act(x, w):
                return Report("gamma", False, {"law": "additive", "x": x, "y": y, "w": w}, n, B.policy.seed)
    return Report("gamma", True, None, n, B.policy.seed)


def gamma_matches_operator(B: BraceView, R: RelRBOp) -> Report:
    """gamma(x) = phi(R(x)) pointwise, for a brace induced by R."""
    gam = gamma_function(B)
    n = 0
    for x, y in R.pairs():
        n += 1
        if gam.act(x, y) != R.act(x, y):
            return Report("gamma_is_phi_R", False, {"x": x, "y": y}, n, _seed(R))
    return Report("gamma_is_phi_R", True, None, n, _seed(R))


@dataclass(eq=False)
class OneCocycle:
    """A map ``pi: G -> V`` with ``pi(xy) = pi(x) + phi(x) pi(y)``.

    ``inverse`` witnesses bijectivity; ``group_elements`` fixes the finite
    set of group elements the checks run over when G has no enumerator.
    """

    module: ModuleAction
    pi: Callable[[Any], IntVec]
    inverse: Callable[[IntVec], Any] | None = None
    group_elements: Sequence | None = None
    samples: int = 200
    seed: int = DEFAULT_SEED
    name: str = "pi"

    def __call__(self, g) -> IntVec:
        return self.pi(g)

    @property
    def bijective(self) -> bool:
        return self.inverse is not None

    def elements(self) -> list:
        if self.group_elements is not None:
            return list(self.group_elements)
        G = self.module.group
        if G.enumerate is not None:
            return list(G.elements())
        return G.draw(random.Random(self.seed), self.samples)


def cocycle_check(pi: OneCocycle) -> Report:
    G, act = pi.module.group, pi.module.act
    els = pi.elements()
    n = 0
    if pi(G.identity) != pi.module.signature.zero():
        return Report("cocycle", False, {"law": "unit", "x": G.identity}, 1, pi.seed)
    for x, y in itertools.product(els, repeat=2):
        n += 1
        if pi(G.mul(x, y)) != pi(x) + act(x, pi(y)):
            return Report("cocycle", False, {"x": x, "y": y}, n, pi.seed)
    details = {}
    if pi.inverse is not None:
        inv_ok = all(G.eq(pi.inverse(pi(x)), x) for x in els)
        details["inverse_on_group"] = inv_ok
        if not inv_ok:
            return Report("cocycle", False, {"law": "bijective"}, n, pi.seed, details)
    return Report("cocycle", True, None, n, pi.seed, details)


def identity_cocycle(B: BraceView) -> OneCocycle:
    """The identity of V as a bijective 1-cocycle of (V, *) with values in (V, gamma)."""
    ident = lambda x: x  # noqa: E731
    els = B.policy.elements(B.signature)
    return OneCocycle(gamma_function(B), ident, ident, group_elements=els, name=f"id({B.name})")


def rrb_from_cocycle(pi: OneCocycle, policy: DomainPolicy | None = None, verify: bool = True) -> RelRBOp:
    """``pi^{-1}: V -> G`` as a relative Rota-Baxter operator."""
    if pi.inverse is None:
        raise ValueError("the cocycle has no inverse; it is not known to be bijective")
    R = RelRBOp(pi.module, pi.inverse, policy, name=f"inv({pi.name})")
    if verify:
        rep = cocycle_check(pi)
        if not rep.holds:
            raise VerificationError(rep)
        require_rrb(R)
    return R


# ---------------------------------------------------------------------------
# standard operators
# ---------------------------------------------------------------------------


def constant_operator(module: ModuleAction, policy: DomainPolicy | None = None) -> RelRBOp:
    e = module.group.identity
    return RelRBOp(module, lambda v: e, policy, name="const")


def semidirect_projection(m: int, n: int, r: int) -> RelRBOp:
    """The projection Z_m x Z_n -> Z_n, (k, l) -> l.

    Z_n acts on Z_m x Z_n by ``j . (k, l) = (r^j k, l)``, which needs
    ``gcd(r, m) = 1`` and ``r^n = 1 mod m``.  The descendent group is
    Z_m x|_r Z_n.
    """
    import math

    if math.gcd(r, m) != 1 or pow(r, n, m) != 1 % m:
        raise ValueError(f"r={r} does not define an action of Z_{n} on Z_{m}")
    sig = AbSignature((m, n))
    powers = [pow(r, j, m) for j in range(n)]

    def act(j: int, v: IntVec) -> IntVec:
        k, l = v.coords
        return IntVec._raw(sig, ((powers[j % n] * k) % m, l))

    module = ModuleAction(cyclic_group(n), sig, act, f"Z{n} on Z{m}xZ{n} (r={r})")
    return RelRBOp(module, lambda v: v.coords[1], Exhaustive(), name=f"proj(Z{m}xZ{n},r={r})")


def cyclic_reduction_operator(m: int, n: int, r: int) -> RelRBOp:
    """Z_m -> Z_n, a -> a mod n, with Z_n acting on Z_m by multiplication by r^j.

    Needs ``n | m``, ``r = 1 mod n`` and ``r^n = 1 mod m``.  The induced
    brace on Z_m is a + r^(a mod n) b.
    """
    if m % n or r % n != 1 % n or pow(r, n, m) != 1 % m:
        raise ValueError(f"(m, n, r) = {(m, n, r)} does not give an operator")
    sig = AbSignature((m,))
    powers = [pow(r, j, m) for j in range(n)]

    def act(j: int, v: IntVec) -> IntVec:
        return IntVec._raw(sig, ((powers[j % n] * v.coords[0]) % m,))

    module = ModuleAction(cyclic_group(n), sig, act, f"Z{n} on Z{m} (r={r})")
    return RelRBOp(module, lambda v: v.coords[0] % n, Exhaustive(), name=f"red(Z{m}->Z{n},r={r})")


def character(kind: str) -> Callable[[int], int]:
    """The two characters Z -> {1, -1}: ``trivial`` and ``parity`` (n -> (-1)^n)."""
    if kind in ("trivial", "chi1"):
        return lambda g: 1
    if kind in ("parity", "chi2"):
        return lambda g: -1 if g % 2 else 1
    raise ValueError(f"unknown character {kind!r}")


def integer_module(chi: str) -> ModuleAction:
    """Z acting on Z through a character."""
    sig = AbSignature.free(1)
    ch = character(chi)
    return ModuleAction(integer_group(), sig, lambda g, v: v if ch(g) == 1 else -v, f"Z on Z ({chi})")


def integer_operator(c: int, chi: str, policy: DomainPolicy | None = None) -> RelRBOp:
    """t(k) = c k from Z to Z."""
    return RelRBOp(integer_module(chi), lambda v: c * v.coords[0], policy or Bounded(radius=20), name=f"t={c}k ({chi})")
