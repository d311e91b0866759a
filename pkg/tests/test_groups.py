import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrb.groups import (
    DIHEDRAL_8,
    SYMMETRIC_3,
    AbSignature,
    DegreeError,
    IntVec,
    Perm,
    SemidirectElem,
    closure,
    cyclic_group,
    fingerprint,
    permutation_module,
    perm_act,
    semidirect_group,
    semidirect_inverse,
    semidirect_mul,
    sign_module,
    symmetric_elements,
    symmetric_group,
    zn_vec,
)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))).map(Perm))


def same_degree(k):
    return st.integers(1, 6).flatmap(lambda n: st.tuples(*[st.permutations(list(range(n))).map(Perm)] * k))


def vec_for(n):
    return st.lists(st.integers(-20, 20), min_size=n, max_size=n).map(lambda c: zn_vec(*c))


# --- permutations -----------------------------------------------------------


def test_parse_forms_agree():
    a = Perm.parse("(1 2 3)", 3)
    assert a == Perm.parse("(123)", 3) == Perm.parse("(1,2,3)", 3) == Perm.from_images([2, 3, 1])
    assert Perm.parse("(1)", 4).is_identity()
    assert Perm.parse("()", 2) == Perm.parse("id", 2) == Perm.identity(2)


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        Perm.parse("(1 2", 3)
    with pytest.raises(DegreeError):
        Perm.parse("(1 4)", 3)
    with pytest.raises(ValueError):
        Perm.parse("(1 2)(2 3)", 3)
    with pytest.raises(ValueError):
        Perm.parse("(12)", 12)


def test_composition_is_right_to_left():
    a, b = Perm.parse("(1 2)", 3), Perm.parse("(2 3)", 3)
    # (ab)(2) = a(b(2)) = a(3) = 3
    assert (a * b)(2) == 3
    assert (b * a)(2) == 1


def test_degree_mismatch():
    with pytest.raises(DegreeError):
        Perm.identity(2) * Perm.identity(3)


def test_cycle_string_and_json_roundtrip():
    p = Perm.parse("(1 4 3 2)", 4)
    assert str(p) == "(1 4 3 2)"
    assert Perm.from_json(p.to_json()) == p
    assert Perm.from_json([2, 1]) == Perm.parse("(1 2)", 2)
    assert str(Perm.identity(3)) == "(1)"


def test_sign_and_order():
    assert Perm.parse("(1 2)(3 4 5)", 5).sign() == -1
    assert Perm.parse("(1 2)(3 4 5)", 5).order() == 6
    assert Perm.parse("(1 2 3 4)", 4).sign() == -1


@given(same_degree(3))
def test_perm_group_laws(t):
    a, b, c = t
    e = Perm.identity(a.n)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert (a * b).sign() == a.sign() * b.sign()


@given(perms, st.integers(-8, 8))
def test_power_matches_repeated_product(p, k):
    brute = Perm.identity(p.n)
    step = p if k >= 0 else p.inverse()
    for _ in range(abs(k)):
        brute = brute * step
    assert p**k == brute
    assert p ** p.order() == Perm.identity(p.n)


@given(perms)
def test_cycles_reassemble(p):
    assert Perm.from_cycles(p.cycles(), p.n) == p
    assert Perm.parse(str(p), p.n) == p


def test_product_cache_does_not_leak_between_operands():
    ps = symmetric_elements(4)
    for a, b in itertools.product(ps, repeat=2):
        assert (a * b).images == tuple(a.images[b.images[i]] for i in range(4))


# --- abelian groups -------------------------------------------------------


def test_torsion_reduction():
    sig = AbSignature((3, 0))
    v = IntVec(sig, (5, -7))
    assert v.coords == (2, -7)
    assert (v + v + v).coords == (0, -21)
    assert len(sig.box(1)) == 9


def test_signature_mismatch():
    with pytest.raises(ValueError):
        zn_vec(1, 2) + zn_vec(1, 2, 3)


def test_entries_and_json():
    v = zn_vec(0, 3, 0, -1)
    assert v.entries == {2: 3, 4: -1}
    assert IntVec.from_json(v.to_json()) == v
    assert v.taxicab() == 4


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(vec_for(n), vec_for(n), vec_for(n))), st.integers(-5, 5))
def test_vector_group_laws(t, k):
    u, v, w = t
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert u - u == u.signature.zero()
    assert (u + v).scale(k) == u.scale(k) + v.scale(k)


# --- actions ----------------------------------------------------------------


def test_perm_act_moves_basis():
    w = Perm.parse("(1 2 3)", 3)
    sig = AbSignature.free(3)
    for i in range(1, 4):
        assert perm_act(w, sig.basis(i)) == sig.basis(w(i))


@given(same_degree(2).flatmap(lambda t: st.tuples(st.just(t), vec_for(t[0].n), vec_for(t[0].n))))
def test_perm_act_is_an_action(args):
    (g, h), u, v = args
    assert perm_act(g * h, u) == perm_act(g, perm_act(h, u))
    assert perm_act(g, u + v) == perm_act(g, u) + perm_act(g, v)


def test_module_axioms():
    assert permutation_module(3).check_axioms()[0]
    assert sign_module(3).check_axioms()[0]


def test_broken_module_is_caught():
    bad = permutation_module(3)
    wrong = type(bad)(bad.group, bad.signature, lambda g, v: perm_act(g.inverse(), v), "wrong")
    ok, witness = wrong.check_axioms()
    assert not ok and witness[0] == "compatibility"


def test_group_axioms():
    assert symmetric_group(3).check_axioms()[0]
    assert cyclic_group(5).check_axioms()[0]


# --- semidirect products, closure, fingerprints --------------------------------


def test_semidirect_laws_exhaustive_small():
    # Z_3 x| Z_2 with the inversion action; brute force on all 216 triples
    from rrb.groups import ModuleAction

    sig = AbSignature((3,))
    phi = ModuleAction(cyclic_group(2), sig, lambda j, v: v if j % 2 == 0 else -v)
    G = semidirect_group(phi)
    assert len(G.elements()) == 6
    assert G.check_axioms()[0]
    fp = fingerprint(G.elements(), G.mul, G.identity)
    assert fp == SYMMETRIC_3


@given(same_degree(2).flatmap(lambda t: st.tuples(st.just(t), vec_for(t[0].n), vec_for(t[0].n))))
@settings(max_examples=50)
def test_semidirect_inverse(args):
    (g, h), u, v = args
    phi = permutation_module(g.n)
    a = SemidirectElem(u, g)
    e = SemidirectElem(u.signature.zero(), Perm.identity(g.n))
    assert semidirect_mul(a, semidirect_inverse(a, phi), phi) == e
    assert semidirect_mul(semidirect_inverse(a, phi), a, phi) == e


def test_closure_s3_and_stabilization():
    gens = [Perm.parse("(1 2)", 3), Perm.parse("(1 2 3)", 3)]
    H = closure(gens, lambda a, b: a * b, Perm.inverse, bound=10)
    assert H.stabilized and len(H) == 6
    assert fingerprint(H.elements, lambda a, b: a * b) == SYMMETRIC_3


def test_closure_reports_truncation():
    gens = [zn_vec(1)]
    H = closure(gens, lambda a, b: a + b, lambda a: -a, bound=3, identity=zn_vec(0))
    assert not H.stabilized
    assert sorted(v.coords[0] for v in H.elements) == list(range(-3, 4))
    assert H.length[zn_vec(-2)] == 2


def test_fingerprints_of_order_eight_models():
    # concrete permutation models of D4 and Z8
    d4 = closure([Perm.parse("(1 2 3 4)", 4), Perm.parse("(1 3)", 4)], lambda a, b: a * b, Perm.inverse, 20)
    fd = fingerprint(d4.elements, lambda a, b: a * b)
    assert fd == DIHEDRAL_8
    z8 = closure([Perm.parse("(1 2 3 4 5 6 7 8)", 8)], lambda a, b: a * b, Perm.inverse, 20)
    assert fingerprint(z8.elements, lambda a, b: a * b).abelian


def test_random_draws_are_seeded():
    G = symmetric_group(4)
    assert G.draw(random.Random(1), 5) == G.draw(random.Random(1), 5)
