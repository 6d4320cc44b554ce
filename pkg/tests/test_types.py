import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from defdatum.errors import InvalidTypeError, PreconditionError
from defdatum.types import (
    LiftReason,
    Necessary,
    ResidueType,
    canonicalize,
    decide_lifting,
    enumerate_lifts,
    equivalent,
    existence_window,
    necessary_conditions,
    nonexistence_certificate,
    realizable,
    stats,
)


def test_stats_examples():
    assert stats((2, 4, -3, -2, -1)) == (6, 1)
    assert stats((1, 1, -1, -1)) == (2, 1)
    assert stats((2, 2, -2, -2)) == (4, 2)


def test_realizable_examples():
    assert realizable((2, 4, -3, -2, -1))
    assert not realizable((1, 1, -1, -1))
    for k in range(1, 20):
        assert realizable((k, -k))


@pytest.mark.parametrize("bad", [(1, 1), (1, 0, -1), (3,)])
def test_realizable_preconditions(bad):
    with pytest.raises(PreconditionError):
        realizable(bad)


def test_residue_type_validation():
    with pytest.raises(InvalidTypeError):
        ResidueType(5, 1, (1, 1))  # sum not 0
    with pytest.raises(InvalidTypeError):
        ResidueType(5, 2, (0, 1))
    with pytest.raises(InvalidTypeError):
        ResidueType(5, 1, ())
    with pytest.raises(InvalidTypeError):
        ResidueType(6, 1, (1, 5))


def test_canonicalize_examples():
    assert canonicalize(ResidueType(5, 1, (4, 1, 1, 4))).entries == (1, 1, 4, 4)
    assert canonicalize(ResidueType(5, 2, (4, 1))).entries == (1, 1)
    assert equivalent(ResidueType(5, 4, (2,)), ResidueType(5, 4, (3,)))
    assert canonicalize(ResidueType(7, 3, (5,))).entries == (3,)


def test_canonicalize_needs_root_of_unity():
    with pytest.raises(InvalidTypeError):
        canonicalize(ResidueType(7, 4, (1,)))


def test_enumerate_lifts_examples():
    a = ResidueType(5, 1, (1, 1, 4, 4))
    assert next(iter(enumerate_lifts(a, 5))) == (1, 1, -1, -1)
    assert list(enumerate_lifts(ResidueType(5, 2, (1,)), 6)) == [(1,), (6,)]
    # bound 2 leaves only (1, 2, 2) +/- choices that never sum to zero
    assert list(enumerate_lifts(ResidueType(7, 1, (1, 2, 4)), 2)) == []


def test_enumerate_lifts_order_and_completeness():
    a = ResidueType(5, 1, (1, 2, 2))
    bound = 12
    got = list(enumerate_lifts(a, bound))
    keys = [(stats(A)[0], A) for A in got]
    assert keys == sorted(keys)
    brute = [
        (x, y, z)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        for z in range(-bound, bound + 1)
        if x and y and z and x + y + z == 0 and (x - 1) % 5 == 0 and (y - 2) % 5 == 0 and (z - 2) % 5 == 0
    ]
    assert sorted(got) == sorted(brute)


def test_certificate_examples():
    assert nonexistence_certificate(ResidueType(5, 1, (1, 1, 4, 4))) == (1, 1, -1, -1)
    s, alpha, p = 3, 1, 5
    a = ResidueType(p, 1, (alpha - s, 1, 1, 1, -alpha))
    assert nonexistence_certificate(a) == (-2, 1, 1, 1, -1)
    assert nonexistence_certificate(ResidueType(3, 1, (1, 1, 1, 2, 2, 2))) is None


def test_window_examples():
    assert existence_window(ResidueType(7, 1, (1, 1, 5))) == (1, 1, -2)
    assert existence_window(ResidueType(5, 1, (1, 1, 4, 4)), 25) is None
    # r - 1 = 5 > p = 3: the window k(r-1) <= n < kp is empty for every k
    assert existence_window(ResidueType(3, 1, (1, 1, 1, 2, 2, 2))) is None


def test_criteria_need_m1():
    with pytest.raises(PreconditionError):
        existence_window(ResidueType(7, 3, (1,)))


def test_necessary_conditions_examples():
    assert necessary_conditions(7, 3, 2).status is Necessary.PRIMITIVE_OK
    assert necessary_conditions(5, 4, 4).status is Necessary.NONPRIMITIVE_OK
    v = necessary_conditions(7, 3, 4)
    assert v.status is Necessary.INVALID and "-1 mod m" in v.reason
    assert necessary_conditions(5, 1, 5).status is Necessary.INVALID


def test_decide_lifting_examples():
    v = decide_lifting(5, 2, 3)
    assert v.lifts and v.reason is LiftReason.OK_INJECTIVE
    v = decide_lifting(7, 3, 6)
    assert v.lifts and v.reason is LiftReason.CYCLIC_CASE
    v = decide_lifting(7, 3, 4)
    assert not v.lifts and v.reason is LiftReason.CONDITION_II_FAILED
    v = decide_lifting(7, 6, 4)
    assert not v.lifts and v.reason is LiftReason.CONDITION_I_FAILED
    assert v.to_json() == {"lifts": False, "reason": "condition_i_failed", "p": 7, "m": 6, "h": 4}


def test_decide_lifting_rejects_p_dividing_h():
    with pytest.raises(PreconditionError):
        decide_lifting(5, 2, 10)


# -- properties ----------------------------------------------------------------------

zero_sum = st.lists(st.integers(-9, 9).filter(bool), min_size=1, max_size=6).map(
    lambda xs: xs + [-sum(xs)]
).filter(lambda A: all(A) and len(A) >= 2)


@given(zero_sum, st.randoms(use_true_random=False), st.integers(1, 5))
def test_realizable_invariances(A, rnd, c):
    base = realizable(A)
    B = list(A)
    rnd.shuffle(B)
    assert realizable(B) == base
    assert realizable([-x for x in A]) == base
    assert realizable([c * x for x in A]) == base


primes = st.sampled_from([3, 5, 7, 11, 13])


@st.composite
def types_m(draw):
    p = draw(primes)
    m = draw(st.sampled_from([d for d in range(1, p) if (p - 1) % d == 0]))
    entries = draw(st.lists(st.integers(1, p - 1), min_size=1, max_size=5))
    if m == 1:
        s = sum(entries) % p
        if s:
            entries.append(p - s)
    return ResidueType(p, m, tuple(entries))


@given(types_m(), st.data())
def test_canonical_form_is_class_invariant(a, data):
    c = canonicalize(a)
    assert canonicalize(c) == c
    assert equivalent(a, a)
    # multiplying an entry by a power of zeta keeps the class
    p, m = a.p, a.m
    zeta = next(x for x in range(1, p) if pow(x, m, p) == 1 and all(pow(x, j, p) != 1 for j in range(1, m)))
    exps = data.draw(st.lists(st.integers(0, m - 1), min_size=a.r, max_size=a.r))
    moved = [x * pow(zeta, e, p) % p for x, e in zip(a.entries, exps)]
    try:
        b = ResidueType(p, m, tuple(moved))
    except InvalidTypeError:
        # the zero-sum constraint for m = 1 is not preserved
        return
    assert equivalent(a, b) and equivalent(b, a)


@settings(max_examples=200)
@given(types_m())
def test_certificate_and_window_exclusive(a):
    assume(a.m == 1 and a.r >= 2 and a.r - 1 <= a.p)
    cert = nonexistence_certificate(a, 3 * a.p)
    win = existence_window(a, 3 * a.p)
    assert cert is None or win is None


@st.composite
def short_m1_types(draw):
    p = draw(primes)
    entries = draw(st.lists(st.integers(1, p - 1), min_size=1, max_size=3))
    s = sum(entries) % p
    if s:
        entries.append(p - s)
    return ResidueType(p, 1, tuple(entries))


@settings(max_examples=100)
@given(short_m1_types(), st.integers(2, 4))
def test_window_scales(a, u):
    assume(a.r >= 2 and u % a.p)
    # u * A is a lift of u * a with n and k both multiplied by u
    A = existence_window(a, a.p)
    if A is not None:
        B = existence_window(a.scaled(u), u * a.p)
        assert B is not None
        n, k = stats(B)
        assert k * (a.r - 1) <= n < k * a.p


def test_lifting_table_m1_m2():
    for p in [3, 5, 7, 11, 13, 17]:
        for h in range(1, 4 * p):
            if h % p == 0:
                continue
            assert decide_lifting(p, 1, h).lifts
            assert decide_lifting(p, 2, h).lifts


def test_lifting_matches_conditions():
    rng = random.Random(5)
    for _ in range(500):
        p = rng.choice([3, 5, 7, 11, 13])
        m = rng.randint(1, 30)
        if m % p == 0:
            continue
        h = rng.randint(1, 60)
        if h % p == 0:
            continue
        expect = h % m == 0 or (math.gcd(h, m) == 1 and (h + 1) % m == 0)
        assert decide_lifting(p, m, h).lifts == expect
