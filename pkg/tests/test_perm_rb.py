import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import D4_TUPLE, golden, golden_tuples, images, s3_tuples
from rrb.groups import AbSignature, DegreeError, Perm, perm_act, symmetric_elements, zn_vec
from rrb.perm_rb import (
    ConditionError,
    RecursiveRBOp,
    SigmaTuple,
    SignRepOperator,
    check_pair_conditions,
    check_single_conditions,
    enumerate_pairs,
    enumerate_single,
    extend,
    format_tuple,
    parse_tuple,
    sign_rep_operator,
    unordered_pair_count,
    vectors_up_to_norm,
    well_defined,
)
from rrb.rbops import Bounded, verify_rrb


# --- brute-force oracle ------------------------------------------------------
#
# A tuple pair is admissible iff the map it generates satisfies
# R(u) R(v) = R(u + R(u) v).  The oracle builds that map by its own recursion
# (reducing the *last* nonzero coordinate) and checks the identity on the
# cube [-1, 1]^n, independently of the library's condition checker.


def naive_operator(sigma, sigma_bar):
    n = len(sigma)
    memo = {(0,) * n: Perm.identity(n)}

    def R(c):
        if c in memo:
            return memo[c]
        i = max(k for k, a in enumerate(c) if a)
        s = sigma[i] if c[i] > 0 else sigma_bar[i]
        rest = list(c)
        rest[i] -= 1 if c[i] > 0 else -1
        moved = [0] * n
        sinv = s.inverse()
        for j, a in enumerate(rest):
            moved[sinv.images[j]] = a
        memo[c] = s * R(tuple(moved))
        return memo[c]

    return R


def act(p, c):
    out = [0] * len(c)
    for j, a in enumerate(c):
        out[p.images[j]] = a
    return tuple(out)


def oracle_admissible(sigma, sigma_bar):
    n = len(sigma)
    # R(e_i) R(R(e_i)^-1 (-e_i)) = R(0) prunes almost everything cheaply
    for i in range(n):
        j = sigma[i].inverse().images[i]
        if not (sigma[i] * sigma_bar[j]).is_identity():
            return False
        j = sigma_bar[i].inverse().images[i]
        if not (sigma_bar[i] * sigma[j]).is_identity():
            return False
    R = naive_operator(sigma, sigma_bar)
    cube = list(itertools.product((-1, 0, 1), repeat=n))
    for u in cube:
        ru = R(u)
        for v in cube:
            w = tuple(a + b for a, b in zip(u, act(ru, v)))
            if ru * R(v) != R(w):
                return False
    return True


def test_single_tuples_match_brute_force_over_s3():
    perms = symmetric_elements(3)
    brute = {images(t) for t in itertools.product(perms, repeat=3) if oracle_admissible(t, t)}
    assert brute == {images(t) for t in enumerate_single(3)}
    assert len(brute) == 10


def test_pairs_match_brute_force_over_s3():
    perms = symmetric_elements(3)
    triples = list(itertools.product(perms, repeat=3))
    brute = {(images(s), images(sb)) for s in triples for sb in triples if s != sb and oracle_admissible(s, sb)}
    got = {(images(s), images(sb)) for s, sb in enumerate_pairs(3)}
    assert brute == got
    assert len(got) == 2 and unordered_pair_count(enumerate_pairs(3)) == 1


def test_condition_checker_matches_brute_force_on_s3():
    perms = symmetric_elements(3)
    for t in itertools.product(perms, repeat=3):
        assert check_single_conditions(t) == oracle_admissible(t, t)


# --- golden files ------------------------------------------------------------


def test_golden_n3_is_the_enumeration():
    assert sorted(images(t) for t in enumerate_single(3)) == sorted(images(t) for t in s3_tuples())


def test_golden_n4():
    data = golden("sigma_n4.json")
    assert data["count"] == 88 == len(data["tuples"])
    assert [images(t) for t in enumerate_single(4)] == [images(t) for t in golden_tuples(4)]


def test_threaded_enumeration_is_order_independent():
    assert [images(t) for t in enumerate_single(4, threads=3)] == [images(t) for t in enumerate_single(4)]


def test_enumeration_limits():
    with pytest.raises(ValueError):
        enumerate_single(6)
    with pytest.raises(ValueError):
        enumerate_single(0)


def test_conjugation_symmetry():
    # sigma_i -> w sigma_{w^-1(i)} w^-1 maps solutions to solutions
    sols = {images(t) for t in enumerate_single(3)}
    for w in symmetric_elements(3):
        wi = w.inverse()
        for t in enumerate_single(3):
            moved = tuple(w * t[wi.images[i]] * wi for i in range(3))
            assert images(moved) in sols


# --- parsing -----------------------------------------------------------------


def test_parse_formats():
    a = parse_tuple("((1),(1),(12))")
    assert a == parse_tuple('["(1)", "(1)", "(1 2)"]') == parse_tuple("[[1,2,3],[1,2,3],[2,1,3]]")
    assert format_tuple(a) == "((1),(1),(1 2))"
    assert parse_tuple(format_tuple(a)) == a
    with pytest.raises(ValueError):
        parse_tuple("(1 2")


def test_sigma_tuple_degrees():
    with pytest.raises(DegreeError):
        SigmaTuple.single([Perm.identity(3), Perm.identity(3)])
    t = SigmaTuple.single(parse_tuple("((23),(1),(1))"))
    assert t.is_single and t.to_json()["sigma"][0] == [1, 3, 2]


def test_bad_tuple_rejected_by_operator():
    with pytest.raises(ConditionError):
        RecursiveRBOp.from_sigma(parse_tuple("((12),(1),(1))"))
    assert not check_pair_conditions(parse_tuple("((12),(1),(1))"), parse_tuple("((12),(1),(1))"))


# --- the recursive operator ------------------------------------------------------


def test_values_on_basis():
    for t in s3_tuples():
        op = RecursiveRBOp.from_sigma(t)
        sig = AbSignature.free(3)
        for i in range(3):
            assert op(sig.basis(i + 1)) == t[i]
            assert op(-sig.basis(i + 1)) == t[i]
        assert op(sig.zero()).is_identity()


def test_extend_agrees_with_naive_recursion():
    for t in s3_tuples():
        R = naive_operator(t, t)
        st_ = SigmaTuple.single(t)
        for v in vectors_up_to_norm(3, 5):
            assert extend(st_, v) == R(v.coords)


def test_well_defined_for_all_known_tuples():
    for t in list(s3_tuples()) + golden_tuples(4):
        ok, bad = well_defined(RecursiveRBOp.from_sigma(t), 4)
        assert ok, (format_tuple(t), bad)


def test_well_defined_detects_order_dependence():
    # an inadmissible tuple built around the checker: two reduction orders disagree
    t = SigmaTuple.single(parse_tuple("((12),(1),(1))"))
    op = RecursiveRBOp.__new__(RecursiveRBOp)
    op.sigma_tuple, op.memo = t, {(0, 0, 0): Perm.identity(3)}
    op.signature = AbSignature.free(3)
    ok, bad = well_defined(op, 2)
    assert not ok and bad is not None


def test_vectors_up_to_norm_count():
    # number of v in Z^n with |v| <= k is sum_j 2^j C(n,j) C(k,j)
    from math import comb

    for n, k in [(2, 3), (3, 4), (4, 2)]:
        assert len(vectors_up_to_norm(n, k)) == sum(2**j * comb(n, j) * comb(k, j) for j in range(n + 1))


def test_dihedral_tuple_operator():
    R = RecursiveRBOp.from_sigma(parse_tuple(D4_TUPLE, 4)).as_relrb(Bounded(radius=2, extra=32))
    assert verify_rrb(R).holds


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 9), st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_rrb_identity_property(idx, u, v):
    op = RecursiveRBOp.from_sigma(s3_tuples()[idx])
    u, v = zn_vec(*u), zn_vec(*v)
    ru = op(u)
    assert ru * op(v) == op(u + perm_act(ru, v))


# --- sign representation ---------------------------------------------------------


def test_sign_rep_odd_case_expansion():
    r = Perm.parse("(1 2)", 3)
    op = SignRepOperator(3, r, r)
    for k in range(-10, 11):
        assert op.value(k) == (r if k % 2 else Perm.identity(3))


def test_sign_rep_brute_force_identity():
    # R(u) R(v) = R(u + sign(R(u)) v) on |u|, |v| <= 6
    for r1, rm1 in [("(1 2)", "(1 2)"), ("(1 2)", "(1 3)"), ("(1 2)(3 4)", None), ("(1 2 3 4 5)", None)]:
        n = 5
        a = Perm.parse(r1, n)
        b = Perm.parse(rm1, n) if rm1 else None
        op = SignRepOperator(n, a, b)
        for u in range(-6, 7):
            for v in range(-6, 7):
                s = op.value(u).sign()
                assert op.value(u) * op.value(v) == op.value(u + s * v)


def test_sign_rep_parity():
    for r1, rm1 in [("(1 2)", "(2 3)"), ("(1 3)", "(1 3)")]:
        op = SignRepOperator(3, Perm.parse(r1, 3), Perm.parse(rm1, 3))
        for k in range(-10, 11):
            assert op.value(k).sign() == (-1) ** abs(k)


def test_sign_rep_even_case_is_a_homomorphism():
    c = Perm.parse("(1 2 3)", 3)
    op = SignRepOperator(3, c)
    for k in range(-7, 8):
        assert op.value(k) == c**k
    assert verify_rrb(sign_rep_operator(3, c)).holds


def test_sign_rep_preconditions():
    with pytest.raises(ConditionError):
        SignRepOperator(3, Perm.parse("(1 2)", 3))
    with pytest.raises(ConditionError):
        SignRepOperator(4, Perm.parse("(1 2)", 4), Perm.parse("(1 2 3 4)", 4))
    assert SignRepOperator(3, Perm.parse("(1 2)", 3), Perm.parse("(1 2)", 3)).value(0).is_identity()
