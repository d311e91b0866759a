"""Exact group-theoretic building blocks.

Permutations, finitely generated abelian groups written additively, module
actions of a group on such an abelian group, and the semidirect products
they determine.  Everything here is immutable.

Conventions used throughout the package:

* permutations are 1-indexed in every external view (cycle strings, JSON,
  ``p(i)``) and 0-indexed in ``Perm.images``;
* ``p * q`` applies ``q`` first, so ``(p * q)(i) == p(q(i))``;
* an abelian group is a tuple of moduli, ``0`` standing for a copy of Z.
"""
from __future__ import annotations

import itertools
import math
import operator
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence


class DegreeError(ValueError):
    """Two objects that must live on the same number of points do not."""


class SignatureError(ValueError):
    """Vectors or actions over incompatible abelian groups were combined."""


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """A bijection of ``{1..n}`` stored as a 0-indexed image tuple."""

    __slots__ = ("images", "_hash", "_inv", "_take", "_act", "_products")

    _PRODUCT_CACHE = 64

    def __init__(self, images: Sequence[int], *, check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)
        self._inv: Perm | None = None
        self._take = None
        self._act = None
        self._products: dict | None = None

    def take(self, seq: Sequence) -> tuple:
        """``(seq[p[0]], seq[p[1]], ...)`` using 0-indexed images."""
        t = self._take
        if t is None:
            im = self.images
            if len(im) == 0:
                t = lambda s: ()  # noqa: E731
            elif len(im) == 1:
                i0 = im[0]
                t = lambda s: (s[i0],)  # noqa: E731
            else:
                t = operator.itemgetter(*im)
            self._take = t
        return t(seq)

    # construction ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(range(n), check=False)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Perm:
        """Build from a 1-indexed image list, ``images[i-1] = p(i)``."""
        return cls([int(x) - 1 for x in images])

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Perm:
        img = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 1 <= c <= n:
                    raise DegreeError(f"point {c} outside 1..{n}")
                if c in seen:
                    raise ValueError(f"point {c} occurs twice in cycle notation")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @classmethod
    def parse(cls, text: str, n: int) -> Perm:
        """Parse cycle notation such as ``"(1 2)(3 4)"``, ``"(1,3)"`` or ``"(132)"``.

        Digits written without separators are read as single points, which
        is only allowed for degrees below 10.  ``"(1)"``, ``"()"`` and
        ``"id"`` all denote the identity.
        """
        text = text.strip()
        if text in ("", "id", "e", "1"):
            return cls.identity(n)
        if _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            body = body.strip()
            if not body:
                continue
            if re.search(r"[\s,]", body):
                pts = [int(t) for t in re.split(r"[\s,]+", body) if t]
            else:
                if n >= 10 and len(body) > 1:
                    raise ValueError(f"ambiguous compact cycle {body!r} for degree {n}")
                pts = [int(ch) for ch in body]
            cycles.append(pts)
        return cls.from_cycles(cycles, n)

    @classmethod
    def from_json(cls, obj: Any) -> Perm:
        if isinstance(obj, dict):
            p = cls.from_images(obj["images"])
            if "n" in obj and obj["n"] != p.n:
                raise DegreeError(f"declared degree {obj['n']} but {p.n} images")
            return p
        if isinstance(obj, list):
            return cls.from_images(obj)
        raise ValueError(f"cannot read a permutation from {obj!r}")

    # basic protocol -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1] + 1

    def __mul__(self, other: Perm) -> Perm:
        # small per-element product cache; checks over S_n hit the same few products
        prods = self._products
        if prods is None:
            prods = self._products = {}
        key = other.images
        r = prods.get(key)
        if r is not None:
            return r
        if len(self.images) != len(key):
            raise DegreeError(f"cannot compose degrees {self.n} and {other.n}")
        r = Perm(other.take(self.images), check=False)
        if len(prods) < self._PRODUCT_CACHE:
            prods[key] = r
        return r

    def inverse(self) -> Perm:
        if self._inv is None:
            inv = [0] * len(self.images)
            for i, j in enumerate(self.images):
                inv[j] = i
            p = Perm(inv, check=False)
            p._inv = self
            self._inv = p
        return self._inv

    def __pow__(self, k: int) -> Perm:
        base = self if k >= 0 else self.inverse()
        result = Perm.identity(self.n)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, Perm) and self.images == other.images)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    # invariants -----------------------------------------------------------

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-indexed, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "(1)"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({str(self)!r}, n={self.n})"

    def to_json(self) -> dict:
        return {"n": self.n, "images": [i + 1 for i in self.images]}


def perm_compose(p: Perm, q: Perm) -> Perm:
    return p * q


def symmetric_elements(n: int) -> list[Perm]:
    """All of S_n in lexicographic order of image arrays."""
    return [Perm(p, check=False) for p in itertools.permutations(range(n))]


# ---------------------------------------------------------------------------
# abelian groups and their elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbSignature:
    """The abelian group prod_i Z_{m_i}; a modulus of 0 means Z."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 0 for m in self.moduli):
            raise ValueError(f"negative modulus in {self.moduli}")
        object.__setattr__(self, "_free", all(m == 0 for m in self.moduli))

    @classmethod
    def free(cls, n: int) -> AbSignature:
        return cls((0,) * n)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def is_free(self) -> bool:
        return self._free

    @property
    def is_finite(self) -> bool:
        return all(m > 0 for m in self.moduli)

    def order(self) -> int | None:
        return math.prod(self.moduli) if self.is_finite else None

    def zero(self) -> IntVec:
        return IntVec(self, (0,) * self.rank)

    def basis(self, i: int) -> IntVec:
        """The generator e_i, 1-indexed."""
        c = [0] * self.rank
        c[i - 1] = 1
        return IntVec(self, c)

    def basis_vectors(self) -> list[IntVec]:
        return [self.basis(i) for i in range(1, self.rank + 1)]

    def elements(self) -> list[IntVec]:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite; use box() instead")
        return [IntVec._raw(self, c) for c in itertools.product(*(range(m) for m in self.moduli))]

    def box(self, radius: int) -> list[IntVec]:
        """Free coordinates range over [-radius, radius], torsion ones over all residues."""
        ranges = [range(m) if m else range(-radius, radius + 1) for m in self.moduli]
        return [IntVec._raw(self, c) for c in itertools.product(*ranges)]

    def random(self, rng: random.Random, radius: int) -> IntVec:
        return IntVec(self, [rng.randrange(m) if m else rng.randint(-radius, radius) for m in self.moduli])

    def __str__(self) -> str:
        if not self.moduli:
            return "0"
        return " x ".join("Z" if m == 0 else f"Z{m}" for m in self.moduli)


class IntVec:
    """An element of an abelian group given by an ``AbSignature``.

    Coordinates are stored densely and reduced into ``[0, m)`` for torsion
    factors, so two vectors are equal exactly when their tuples are.
    """

    __slots__ = ("signature", "coords", "_hash")

    def __init__(self, signature: AbSignature, coords: Sequence[int]):
        coords = tuple(int(c) for c in coords)
        if len(coords) != signature.rank:
            raise SignatureError(f"{len(coords)} coordinates for {signature}")
        if not signature.is_free:
            coords = tuple(c % m if m else c for c, m in zip(coords, signature.moduli))
        self.signature = signature
        self.coords = coords
        self._hash = hash(coords)

    @classmethod
    def _raw(cls, signature: AbSignature, coords: tuple[int, ...]) -> IntVec:
        v = object.__new__(cls)
        v.signature = signature
        v.coords = coords
        v._hash = hash(coords)
        return v

    @classmethod
    def from_entries(cls, signature: AbSignature, entries: dict) -> IntVec:
        """Build from a sparse 1-indexed ``{index: value}`` mapping."""
        c = [0] * signature.rank
        for k, val in entries.items():
            i = int(k)
            if not 1 <= i <= signature.rank:
                raise SignatureError(f"index {i} outside 1..{signature.rank}")
            c[i - 1] = int(val)
        return cls(signature, c)

    @classmethod
    def from_json(cls, obj: dict) -> IntVec:
        return cls.from_entries(AbSignature(tuple(obj["moduli"])), obj.get("entries", {}))

    @property
    def entries(self) -> dict[int, int]:
        return {i + 1: c for i, c in enumerate(self.coords) if c}

    def to_json(self) -> dict:
        return {"moduli": list(self.signature.moduli), "entries": {str(k): v for k, v in self.entries.items()}}

    def _check(self, other: IntVec) -> None:
        if self.signature is not other.signature and self.signature != other.signature:
            raise SignatureError(f"{self.signature} vs {other.signature}")

    def __add__(self, other: IntVec) -> IntVec:
        self._check(other)
        if self.signature._free:
            return IntVec._raw(self.signature, tuple(map(operator.add, self.coords, other.coords)))
        return IntVec(self.signature, map(operator.add, self.coords, other.coords))

    def __sub__(self, other: IntVec) -> IntVec:
        self._check(other)
        if self.signature._free:
            return IntVec._raw(self.signature, tuple(map(operator.sub, self.coords, other.coords)))
        return IntVec(self.signature, map(operator.sub, self.coords, other.coords))

    def __neg__(self) -> IntVec:
        if self.signature.is_free:
            return IntVec._raw(self.signature, tuple(-c for c in self.coords))
        return IntVec(self.signature, [-c for c in self.coords])

    def scale(self, k: int) -> IntVec:
        return IntVec(self.signature, [k * c for c in self.coords])

    def __rmul__(self, k: int) -> IntVec:
        return self.scale(k)

    def __getitem__(self, i: int) -> int:
        """The coefficient of e_i (1-indexed)."""
        return self.coords[i - 1]

    def __bool__(self) -> bool:
        return any(self.coords)

    def taxicab(self) -> int:
        return sum(abs(c) for c in self.coords)

    def __eq__(self, other: object) -> bool:
        if other.__class__ is not IntVec or self.coords != other.coords:
            return False
        return self.signature is other.signature or self.signature == other.signature

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: IntVec) -> bool:
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"IntVec({list(self.coords)}, {self.signature})"


def zn_vec(*coords: int) -> IntVec:
    """Shorthand for an element of Z^n."""
    return IntVec._raw(AbSignature.free(len(coords)), tuple(int(c) for c in coords))


def perm_act(w: Perm, v: IntVec) -> IntVec:
    """Permutation representation: the coefficient of e_i moves to e_{w(i)}."""
    t = w._act
    if t is None:
        t = w._act = w.inverse().take
    c = v.coords
    if len(w.images) != len(c):
        raise DegreeError(f"permutation of degree {w.n} acting on rank {v.signature.rank}")
    return IntVec._raw(v.signature, t(c))


# ---------------------------------------------------------------------------
# abstract groups and module actions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupHandle:
    """A group given by its operations, optionally with an element list."""

    name: str
    identity: Hashable
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    eq: Callable[[Any, Any], bool] = operator.eq
    enumerate: Callable[[], Sequence] | None = None
    sample: Callable[[random.Random], Any] | None = None

    def elements(self) -> Sequence:
        if self.enumerate is None:
            raise ValueError(f"group {self.name} has no element enumerator")
        return self.enumerate()

    def draw(self, rng: random.Random, count: int) -> list:
        if self.enumerate is not None:
            els = self.enumerate()
            return [els[rng.randrange(len(els))] for _ in range(count)]
        if self.sample is None:
            raise ValueError(f"group {self.name} can neither enumerate nor sample")
        return [self.sample(rng) for _ in range(count)]

    def power(self, g, k: int):
        base = g if k >= 0 else self.inv(g)
        out = self.identity
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def check_axioms(self, samples: int = 1000, seed: int = 42) -> tuple[bool, tuple | None]:
        """Associativity, unit and inverse laws.

        Exhaustive over triples when an enumerator exists, otherwise on
        ``samples`` seeded random triples.  Returns ``(holds, witness)``.
        """
        eq, mul, inv, e = self.eq, self.mul, self.inv, self.identity
        if self.enumerate is not None:
            els = list(self.enumerate())
            triples: Iterable = itertools.product(els, repeat=3)
            singles: Iterable = els
        else:
            rng = random.Random(seed)
            drawn = self.draw(rng, 3 * samples)
            triples = zip(drawn[0::3], drawn[1::3], drawn[2::3])
            singles = drawn[:samples]
        for g in singles:
            if not (eq(mul(e, g), g) and eq(mul(g, e), g)):
                return False, ("unit", g)
            if not (eq(mul(g, inv(g)), e) and eq(mul(inv(g), g), e)):
                return False, ("inverse", g)
        for a, b, c in triples:
            if not eq(mul(mul(a, b), c), mul(a, mul(b, c))):
                return False, ("associativity", a, b, c)
        return True, None


def symmetric_group(n: int) -> GroupHandle:
    els = symmetric_elements(n)
    return GroupHandle(f"S{n}", Perm.identity(n), operator.mul, Perm.inverse, enumerate=lambda: els)


def cyclic_group(m: int) -> GroupHandle:
    """Z_m written with integer representatives in [0, m)."""
    els = list(range(m))
    return GroupHandle(f"Z{m}", 0, lambda a, b: (a + b) % m, lambda a: (-a) % m, enumerate=lambda: els)


def integer_group(radius: int = 50) -> GroupHandle:
    """(Z, +); sampled uniformly from [-radius, radius]."""
    return GroupHandle("Z", 0, operator.add, operator.neg, sample=lambda rng: rng.randint(-radius, radius))


def abelian_group(sig: AbSignature, radius: int = 5) -> GroupHandle:
    """The additive group of an ``AbSignature`` as a ``GroupHandle``."""
    enum = (lambda: sig.elements()) if sig.is_finite else None
    return GroupHandle(
        str(sig),
        sig.zero(),
        operator.add,
        operator.neg,
        enumerate=enum,
        sample=lambda rng: sig.random(rng, radius),
    )


@dataclass(frozen=True)
class ModuleAction:
    """A homomorphism from ``group`` into the automorphisms of ``signature``."""

    group: GroupHandle
    signature: AbSignature
    act: Callable[[Any, IntVec], IntVec]
    name: str = ""

    def __call__(self, g, v: IntVec) -> IntVec:
        return self.act(g, v)

    def check_axioms(self, vectors: Sequence[IntVec] | None = None, samples: int = 200, seed: int = 42):
        """Unit, compatibility and additivity laws on group elements x vectors.

        Vectors default to all of a finite group or a radius-3 box.
        Returns ``(holds, witness)``.
        """
        G, act = self.group, self.act
        if vectors is None:
            vectors = self.signature.elements() if self.signature.is_finite else self.signature.box(2)
        if G.enumerate is not None and len(G.elements()) <= 48:
            gs = list(G.elements())
        else:
            gs = G.draw(random.Random(seed), samples)
        e = G.identity
        for v in vectors:
            if act(e, v) != v:
                return False, ("unit", v)
        rng = random.Random(seed)
        pairs = [(rng.choice(vectors), rng.choice(vectors)) for _ in range(samples)]
        for g in gs:
            for u, v in pairs:
                if act(g, u + v) != act(g, u) + act(g, v):
                    return False, ("additivity", g, u, v)
        hs = gs[: min(len(gs), 48)]
        for g in hs:
            for h in hs:
                gh = G.mul(g, h)
                for v in vectors[:64]:
                    if act(gh, v) != act(g, act(h, v)):
                        return False, ("compatibility", g, h, v)
        return True, None


def permutation_module(n: int) -> ModuleAction:
    """S_n acting on Z^n by permuting the standard basis."""
    return ModuleAction(symmetric_group(n), AbSignature.free(n), perm_act, f"perm(S{n})")


def sign_module(n: int) -> ModuleAction:
    """S_n acting on Z through the sign character."""
    sig = AbSignature.free(1)

    def act(g: Perm, v: IntVec) -> IntVec:
        return v if g.sign() == 1 else -v

    return ModuleAction(symmetric_group(n), sig, act, f"sign(S{n})")


def trivial_module(group: GroupHandle, sig: AbSignature) -> ModuleAction:
    return ModuleAction(group, sig, lambda g, v: v, f"trivial({group.name})")


# ---------------------------------------------------------------------------
# semidirect products
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SemidirectElem:
    vec: IntVec
    grp: Any

    def __str__(self) -> str:
        return f"({list(self.vec.coords)}, {self.grp})"


def semidirect_mul(a: SemidirectElem, b: SemidirectElem, phi: ModuleAction) -> SemidirectElem:
    """(u, g)(v, h) = (u + phi(g) v, g h)."""
    return SemidirectElem(a.vec + phi.act(a.grp, b.vec), phi.group.mul(a.grp, b.grp))


def semidirect_inverse(a: SemidirectElem, phi: ModuleAction) -> SemidirectElem:
    gi = phi.group.inv(a.grp)
    return SemidirectElem(-phi.act(gi, a.vec), gi)


def semidirect_group(phi: ModuleAction, elements: Sequence[SemidirectElem] | None = None) -> GroupHandle:
    """V x| G as a ``GroupHandle``.  ``elements`` supplies an enumerator for a finite subgroup."""
    enum = None
    if elements is not None:
        frozen = list(elements)
        enum = lambda: frozen  # noqa: E731
    elif phi.signature.is_finite and phi.group.enumerate is not None:
        frozen = [SemidirectElem(v, g) for v in phi.signature.elements() for g in phi.group.elements()]
        enum = lambda: frozen  # noqa: E731
    return GroupHandle(
        f"{phi.signature} x| {phi.group.name}",
        SemidirectElem(phi.signature.zero(), phi.group.identity),
        lambda a, b: semidirect_mul(a, b, phi),
        lambda a: semidirect_inverse(a, phi),
        enumerate=enum,
    )


# ---------------------------------------------------------------------------
# subgroup generation and small-group fingerprints
# ---------------------------------------------------------------------------


@dataclass
class Closure:
    elements: list
    length: dict = field(repr=False)
    stabilized: bool
    bound: int

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.length


def closure(gens: Sequence, mul, inv, bound: int, identity=None) -> Closure:
    """Breadth-first ball of radius ``bound`` in the word metric of ``gens``.

    ``stabilized`` is true when some layer before the bound added nothing,
    in which case the ball is the whole generated subgroup.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if identity is None:
        if not gens:
            raise ValueError("identity required when there are no generators")
        identity = mul(gens[0], inv(gens[0]))
    letters = list(dict.fromkeys(list(gens) + [inv(g) for g in gens]))
    length = {identity: 0}
    order = [identity]
    frontier = [identity]
    stabilized = False
    for depth in range(1, bound + 1):
        nxt = []
        for x in frontier:
            for s in letters:
                y = mul(x, s)
                if y not in length:
                    length[y] = depth
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
        if not nxt:
            stabilized = True
            break
    return Closure(order, length, stabilized, bound)


def element_order(g, mul, identity, limit: int = 10_000) -> int:
    x, k = g, 1
    while x != identity:
        x = mul(x, g)
        k += 1
        if k > limit:
            raise ValueError("element order exceeds limit")
    return k


@dataclass(frozen=True)
class Fingerprint:
    """Order, commutativity and element-order multiset of a finite group.

    These three invariants separate all groups of order at most 8.
    """

    order: int
    abelian: bool
    element_orders: tuple[int, ...]

    def to_json(self) -> dict:
        return {"order": self.order, "abelian": self.abelian, "element_orders": list(self.element_orders)}


def fingerprint(elements: Sequence, mul, identity=None) -> Fingerprint:
    els = list(elements)
    if identity is None:
        identity = next(e for e in els if mul(e, e) == e)
    abelian = all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(els, 2))
    orders = tuple(sorted(element_order(g, mul, identity) for g in els))
    return Fingerprint(len(els), abelian, orders)


DIHEDRAL_8 = Fingerprint(8, False, (1, 2, 2, 2, 2, 2, 4, 4))
SYMMETRIC_3 = Fingerprint(6, False, (1, 2, 2, 2, 3, 3))


def order_multiset(fp: Fingerprint) -> Counter:
    return Counter(fp.element_orders)
