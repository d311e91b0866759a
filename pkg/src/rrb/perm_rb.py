"""Relative Rota-Baxter operators from S_n into its permutation and sign modules.

An operator on the permutation module Z^n is pinned down by its values on
the signed basis, ``R(e_i) = sigma_i`` and ``R(-e_i) = sigma_bar_i``.  The
compatibility conditions on these two tuples are checked by
``check_pair_conditions`` (and ``check_single_conditions`` when both tuples
coincide); ``RecursiveRBOp`` extends a compatible pair to all of Z^n by
peeling one signed basis vector off at a time.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups import (
    AbSignature,
    DegreeError,
    IntVec,
    Perm,
    perm_act,
    permutation_module,
    sign_module,
    symmetric_elements,
)
from .rbops import Bounded, DomainPolicy, RelRBOp

MAX_SINGLE_DEGREE = 5
MAX_PAIR_DEGREE = 4


class ConditionError(ValueError):
    """A sigma tuple (or pair of tuples) violates the compatibility conditions."""


# ---------------------------------------------------------------------------
# tuples and conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaTuple:
    sigma: tuple[Perm, ...]
    sigma_bar: tuple[Perm, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "sigma_bar", tuple(self.sigma_bar))
        n = len(self.sigma)
        if len(self.sigma_bar) != n or any(p.n != n for p in self.sigma + self.sigma_bar):
            raise DegreeError("every permutation in a sigma tuple must have degree equal to its length")

    @classmethod
    def single(cls, sigma: Sequence[Perm]) -> SigmaTuple:
        return cls(tuple(sigma), tuple(sigma))

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def is_single(self) -> bool:
        return self.sigma == self.sigma_bar

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sigma": [[i + 1 for i in p.images] for p in self.sigma],
            "sigma_bar": [[i + 1 for i in p.images] for p in self.sigma_bar],
        }

    def __str__(self) -> str:
        if self.is_single:
            return format_tuple(self.sigma)
        return f"{{{format_tuple(self.sigma)}, {format_tuple(self.sigma_bar)}}}"


def format_tuple(sigma: Sequence[Perm]) -> str:
    return "(" + ",".join(str(p) for p in sigma) + ")"


def parse_tuple(text: str, n: int | None = None) -> tuple[Perm, ...]:
    """Read a tuple of permutations.

    Accepts the cycle-notation ``"((1),(1),(12))"``, a JSON list of cycle
    strings, or a JSON list of 1-indexed image arrays.
    """
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
        if n is None:
            n = len(items)
        return tuple(Perm.parse(it, n) if isinstance(it, str) else Perm.from_images(it) for it in items)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"cannot read a tuple of permutations from {text!r}")
    body = text[1:-1]
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    if n is None:
        n = len(parts)
    return tuple(Perm.parse(p, n) for p in parts)


def _unit_ok(s: Sequence[Perm], sb: Sequence[Perm], i: int) -> bool:
    # s_i sb_{s_i^{-1}(i)} = 1, indices 0-based
    return (s[i] * sb[s[i].inverse().images[i]]).is_identity()


def _compat_ok(a: Sequence[Perm], b: Sequence[Perm], j: int, k: int) -> bool:
    # a_j b_{a_j^{-1}(k)} = b_k a_{b_k^{-1}(j)}
    return a[j] * b[a[j].inverse().images[k]] == b[k] * a[b[k].inverse().images[j]]


def _check_degree(sigma: Sequence[Perm]) -> int:
    n = len(sigma)
    if any(p.n != n for p in sigma):
        raise DegreeError(f"tuple of length {n} contains permutations of other degrees")
    return n


def check_single_conditions(sigma: Sequence[Perm]) -> bool:
    """Unit law s_i s_{s_i^{-1}(i)} = 1 and symmetric compatibility for j < k."""
    n = _check_degree(sigma)
    if not all(_unit_ok(sigma, sigma, i) for i in range(n)):
        return False
    return all(_compat_ok(sigma, sigma, j, k) for j in range(n) for k in range(j + 1, n))


def check_pair_conditions(sigma: Sequence[Perm], sigma_bar: Sequence[Perm]) -> bool:
    """All four families: unit pairing, sigma-sigma, bar-bar and mixed compatibility."""
    n = _check_degree(sigma)
    if _check_degree(sigma_bar) != n:
        raise DegreeError("sigma and sigma_bar have different lengths")
    for i in range(n):
        if not (_unit_ok(sigma, sigma_bar, i) and _unit_ok(sigma_bar, sigma, i)):
            return False
    for j in range(n):
        for k in range(j + 1, n):
            if not (_compat_ok(sigma, sigma, j, k) and _compat_ok(sigma_bar, sigma_bar, j, k)):
                return False
    return all(_compat_ok(sigma, sigma_bar, j, k) for j in range(n) for k in range(n))


# ---------------------------------------------------------------------------
# the recursive extension
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class RecursiveRBOp:
    """The operator Z^n -> S_n determined by a compatible sigma pair.

    Values are computed by the recursion
    ``R(v' + e_i) = s_i R(s_i^{-1} v')`` and
    ``R(v' - e_i) = sb_i R(sb_i^{-1} v')``, always reducing the first
    nonzero coordinate, and memoized.
    """

    sigma_tuple: SigmaTuple
    memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        t = self.sigma_tuple
        if not check_pair_conditions(t.sigma, t.sigma_bar):
            raise ConditionError(f"{t} violates the compatibility conditions")
        self.signature = AbSignature.free(t.n)
        self.memo[(0,) * t.n] = Perm.identity(t.n)

    @classmethod
    def from_sigma(cls, sigma: Sequence[Perm], sigma_bar: Sequence[Perm] | None = None) -> RecursiveRBOp:
        return cls(SigmaTuple(tuple(sigma), tuple(sigma if sigma_bar is None else sigma_bar)))

    @property
    def n(self) -> int:
        return self.sigma_tuple.n

    def __call__(self, v: IntVec) -> Perm:
        memo = self.memo
        hit = memo.get(v.coords)
        if hit is not None:
            return hit
        if v.signature.rank != self.n:
            raise DegreeError(f"vector of rank {v.signature.rank} for an operator on Z^{self.n}")
        # iterative descent: collect the reduction chain, then fold back up
        sigma, sigma_bar = self.sigma_tuple.sigma, self.sigma_tuple.sigma_bar
        chain = []
        c = v.coords
        while c not in memo:
            i = next(k for k, a in enumerate(c) if a)
            s = sigma[i] if c[i] > 0 else sigma_bar[i]
            rest = list(c)
            rest[i] -= 1 if c[i] > 0 else -1
            chain.append((c, s))
            c = s.take(rest)
        val = memo[c]
        for w, s in reversed(chain):
            val = s * val
            memo[w] = val
        return val

    def all_reduction_values(self, v: IntVec, _cache: dict | None = None) -> frozenset:
        """Every value reachable by some choice of reduction index at every step."""
        cache = {} if _cache is None else _cache
        if v in cache:
            return cache[v]
        if not v:
            out = frozenset([Perm.identity(self.n)])
        else:
            vals = set()
            for i, a in enumerate(v.coords):
                if not a:
                    continue
                s = self.sigma_tuple.sigma[i] if a > 0 else self.sigma_tuple.sigma_bar[i]
                rest = list(v.coords)
                rest[i] -= 1 if a > 0 else -1
                sub = perm_act(s.inverse(), IntVec._raw(v.signature, tuple(rest)))
                vals.update(s * w for w in self.all_reduction_values(sub, cache))
            out = frozenset(vals)
        cache[v] = out
        return out

    def as_relrb(self, policy: DomainPolicy | None = None) -> RelRBOp:
        return RelRBOp(permutation_module(self.n), self, policy or Bounded(), name=f"R_{self.sigma_tuple}")


def extend(t: SigmaTuple, v: IntVec) -> Perm:
    return RecursiveRBOp(t)(v)


def well_defined(op: RecursiveRBOp, max_norm: int = 4) -> tuple[bool, IntVec | None]:
    """True when every reduction order agrees for all v with |v| <= max_norm."""
    cache: dict = {}
    for v in vectors_up_to_norm(op.n, max_norm):
        vals = op.all_reduction_values(v, cache)
        if len(vals) != 1 or op(v) not in vals:
            return False, v
    return True, None


def vectors_up_to_norm(n: int, max_norm: int) -> list[IntVec]:
    sig = AbSignature.free(n)
    out = [v for v in sig.box(max_norm) if v.taxicab() <= max_norm]
    out.sort(key=lambda v: (v.taxicab(), v.coords))
    return out


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _single_prefix_ok(prefix: list[Perm], k: int) -> bool:
    """Conditions that just became checkable after placing position k."""
    n = prefix[0].n
    assigned = len(prefix)
    for i in range(assigned):
        j = prefix[i].inverse().images[i]
        if (i == k or j == k) and j < assigned and not (prefix[i] * prefix[j]).is_identity():
            return False
    for j in range(assigned):
        for l in range(j + 1, assigned):
            a = prefix[j].inverse().images[l]
            b = prefix[l].inverse().images[j]
            if a >= assigned or b >= assigned:
                continue
            if k not in (j, l, a, b):
                continue
            if prefix[j] * prefix[a] != prefix[l] * prefix[b]:
                return False
    return True


def _backtrack_single(n: int, first: Perm | None = None) -> list[tuple[Perm, ...]]:
    perms = symmetric_elements(n)
    out: list[tuple[Perm, ...]] = []
    prefix: list[Perm] = []

    def rec(k: int) -> None:
        if k == n:
            out.append(tuple(prefix))
            return
        choices = [first] if (k == 0 and first is not None) else perms
        for p in choices:
            prefix.append(p)
            if _single_prefix_ok(prefix, k):
                rec(k + 1)
            prefix.pop()

    rec(0)
    return out


def _single_partition(args: tuple[int, tuple[int, ...]]) -> list[tuple[tuple[int, ...], ...]]:
    n, first = args
    return [tuple(p.images for p in t) for t in _backtrack_single(n, Perm(first))]


def enumerate_single(n: int, threads: int = 1) -> list[tuple[Perm, ...]]:
    """All tuples in S_n^n satisfying the single-tuple conditions, in lexicographic order.

    Backtracking over positions prunes a prefix as soon as any condition
    whose indices are all placed fails.  With ``threads > 1`` the search is
    split by the first entry across worker processes and merged in order.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > MAX_SINGLE_DEGREE:
        raise ValueError(f"degree {n} exceeds the enumeration limit {MAX_SINGLE_DEGREE}")
    if threads <= 1:
        return _backtrack_single(n)
    jobs = [(n, p.images) for p in symmetric_elements(n)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(_single_partition, jobs))
    return [tuple(Perm(im, check=False) for im in t) for part in parts for t in part]


def _compatible_tuples(n: int) -> list[tuple[Perm, ...]]:
    """Tuples satisfying only the j < k self-compatibility family."""
    perms = symmetric_elements(n)
    out = []
    prefix: list[Perm] = []

    def ok(k: int) -> bool:
        m = len(prefix)
        for j in range(m):
            for l in range(j + 1, m):
                a = prefix[j].inverse().images[l]
                b = prefix[l].inverse().images[j]
                if a < m and b < m and k in (j, l, a, b) and prefix[j] * prefix[a] != prefix[l] * prefix[b]:
                    return False
        return True

    def rec(k: int) -> None:
        if k == n:
            out.append(tuple(prefix))
            return
        for p in perms:
            prefix.append(p)
            if ok(k):
                rec(k + 1)
            prefix.pop()

    rec(0)
    return out


def enumerate_pairs(n: int) -> list[tuple[tuple[Perm, ...], tuple[Perm, ...]]]:
    """Ordered pairs (sigma, sigma_bar) with sigma != sigma_bar satisfying all four families.

    The unit pairing forces ``sigma_bar[sigma_i^{-1}(i)] = sigma_i^{-1}``, so
    for each self-compatible sigma most of sigma_bar is determined; only
    unforced positions are searched.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > MAX_PAIR_DEGREE:
        raise ValueError(f"degree {n} exceeds the pair enumeration limit {MAX_PAIR_DEGREE}")
    compat = _compatible_tuples(n)
    compat_set = set(compat)
    out = []
    for s in compat:
        forced: dict[int, Perm] = {}
        clash = False
        for i in range(n):
            j = s[i].inverse().images[i]
            want = s[i].inverse()
            if forced.setdefault(j, want) != want:
                clash = True
                break
        if clash:
            continue
        free = [i for i in range(n) if i not in forced]
        perms = symmetric_elements(n)
        for fill in itertools.product(perms, repeat=len(free)):
            sb = [forced.get(i) for i in range(n)]
            for i, p in zip(free, fill):
                sb[i] = p
            sb_t = tuple(sb)
            if sb_t == s or sb_t not in compat_set:
                continue
            if check_pair_conditions(s, sb_t):
                out.append((s, sb_t))
    out.sort(key=lambda pr: (tuple(p.images for p in pr[0]), tuple(p.images for p in pr[1])))
    return out


def unordered_pair_count(pairs: Iterable[tuple]) -> int:
    return len({frozenset(pr) for pr in pairs})


# ---------------------------------------------------------------------------
# operators into S_n through the sign character
# ---------------------------------------------------------------------------


class SignRepOperator:
    """Z -> S_n for the sign module, determined by R(1) and R(-1).

    With R(1) odd both R(1) and R(-1) must be odd involutions and R(k) is the
    alternating product R(1)R(-1)R(1)... of |k| factors (starting from
    R(-1) when k < 0).  With R(1) even, R(k) = R(1)^k.
    """

    def __init__(self, n: int, r1: Perm, rm1: Perm | None = None):
        if r1.n != n or (rm1 is not None and rm1.n != n):
            raise DegreeError("R(1) and R(-1) must lie in S_n")
        self.n = n
        self.r1 = r1
        self.odd = r1.sign() == -1
        if self.odd:
            if rm1 is None:
                raise ConditionError("R(-1) is required when R(1) is odd")
            for name, p in (("R(1)", r1), ("R(-1)", rm1)):
                if p.sign() != -1 or not (p * p).is_identity():
                    raise ConditionError(f"{name} = {p} must be an odd involution")
            self.rm1 = rm1
        else:
            self.rm1 = r1.inverse()
        self._memo: dict[int, Perm] = {0: Perm.identity(n)}

    def value(self, k: int) -> Perm:
        if k in self._memo:
            return self._memo[k]
        if not self.odd:
            val = self.r1 ** k
        else:
            first, second = (self.r1, self.rm1) if k > 0 else (self.rm1, self.r1)
            val = Perm.identity(self.n)
            for j in range(abs(k)):
                val = val * (first if j % 2 == 0 else second)
        self._memo[k] = val
        return val

    def __call__(self, v: IntVec) -> Perm:
        return self.value(v.coords[0])


def sign_rep_operator(n: int, r1: Perm, rm1: Perm | None = None, policy: DomainPolicy | None = None) -> RelRBOp:
    op = SignRepOperator(n, r1, rm1)
    return RelRBOp(sign_module(n), op, policy or Bounded(radius=6), name=f"sign[{r1},{op.rm1}]")
