import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from defdatum.algebra import (
    DEG_ZERO,
    GF,
    FieldSpec,
    FqElement,
    Polynomial,
    RationalFunction,
    is_linear_power,
    parse_element,
    poly_gcd,
    ratfn_reduce,
    roots_in_field,
    smallest_field_with_roots_of_unity,
    splitting_degree,
    squarefree_decomposition,
)
from defdatum.errors import FieldError, MixedFieldError


def P(F, cs):
    return Polynomial(F, cs)


def sym(f):
    """The same polynomial as a sympy Poly over F_p (d = 1 only)."""
    return sympy.Poly(list(reversed(f.coeffs)) or [0], sympy.Symbol("z"), modulus=f.field.p)


def from_sym(F, g):
    return Polynomial(F, [int(c) % F.p for c in reversed(g.all_coeffs())])


# -- fields --------------------------------------------------------------------


def test_field_rejects_composite_characteristic():
    with pytest.raises(FieldError):
        FieldSpec(6)


def test_field_rejects_reducible_modulus():
    with pytest.raises(FieldError):
        FieldSpec(5, 2, modulus=[4, 0, 1])  # z^2 - 1


def test_default_modulus_is_smallest_irreducible():
    # z^2 + 1 is irreducible over F_3 and nothing smaller is
    assert GF(3, 2).modulus == (1, 0, 1)
    # z^2 + 1 over F_7 is irreducible since -1 is a non-square
    assert GF(7, 2).modulus == (1, 0, 1)


def test_modulus_irreducible_against_sympy():
    for p, d in [(2, 3), (3, 3), (5, 2), (7, 2), (2, 8), (3, 4)]:
        mod = GF(p, d).modulus
        poly = sympy.Poly(list(reversed(mod)), sympy.Symbol("t"), modulus=p)
        assert poly.is_irreducible


@pytest.mark.parametrize("p,d", [(2, 4), (3, 2), (5, 2), (7, 2), (3, 4), (2, 16)])
def test_fermat(p, d):
    F = GF(p, d)
    rng = random.Random(p * 100 + d)
    for _ in range(200):
        x = FqElement(F, rng.randrange(1, F.q))
        assert x ** (F.q - 1) == F.one
        assert x * x.inverse() == F.one


def test_field_axioms_small():
    F = GF(3, 2)
    els = F.elements()
    for a in els:
        for b in els:
            assert a + b == b + a
            assert a * b == b * a
            assert (a - b) + b == a
            if b:
                assert (a / b) * b == a


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldError):
        GF(5).one + GF(7).one
    with pytest.raises(MixedFieldError):
        Polynomial.x(GF(5)) + Polynomial.x(GF(7))


def test_root_of_unity_has_exact_order():
    for p, m in [(7, 3), (7, 6), (5, 4), (3, 4), (11, 5), (3, 8)]:
        F = smallest_field_with_roots_of_unity(p, m)
        z = F.root_of_unity(m)
        assert F.order(z.code) == m
        assert (F.q - 1) % m == 0
        assert F.d == 1 or (p ** (F.d - 1) - 1) % m != 0


def test_element_wire_format():
    F = GF(5, 2)
    a = parse_element(F, "[2,1]")
    assert a.coeffs == [2, 1]
    assert str(a) == "[2,1]"
    assert parse_element(GF(7), "10") == 3


# -- polynomial examples ---------------------------------------------------------


def test_gcd_example():
    F = GF(5)
    assert poly_gcd(P(F, [-1, 0, 1]), P(F, [-1, 1])) == P(F, [-1, 1])


def test_derivative_in_characteristic_p():
    F = GF(5)
    f = P(F, [0, 1, 0, 0, 0, 1])
    assert f.derivative() == P(F, [1])
    assert P(F, [0, 0, 0, 0, 0, 1]).derivative().is_zero()


def test_eval_example():
    F = GF(7)
    assert P(F, [-1, 0, 0, 1]).eval_code(2) == 0


def test_zero_polynomial_degree_marker():
    z = Polynomial(GF(5), [])
    assert z.degree == DEG_ZERO
    assert z.degree != -1
    assert z.degree < 0


def test_divmod_by_zero():
    F = GF(5)
    with pytest.raises(ZeroDivisionError):
        divmod(P(F, [1, 1]), Polynomial(F, []))


# -- rational functions --------------------------------------------------------


def test_ratfn_examples():
    F = GF(5)
    r = ratfn_reduce(P(F, [-1, 0, 1]), P(F, [-1, 1]))
    assert r.num == P(F, [1, 1]) and r.den == P(F, [1])
    r = ratfn_reduce(P(F, [0, 2]), P(F, [2]))
    assert r.num == P(F, [0, 1]) and r.den == P(F, [1])
    r = ratfn_reduce(P(F, [0, 1]), P(F, [0, 1]))
    assert r.num == P(F, [1]) and r.den == P(F, [1])


def test_ratfn_zero_denominator():
    F = GF(5)
    with pytest.raises(ZeroDivisionError):
        ratfn_reduce(P(F, [1]), Polynomial(F, []))


# -- roots -----------------------------------------------------------------------


def test_roots_examples():
    F7, F5 = GF(7), GF(5)
    r = roots_in_field(P(F7, [-1, 0, 0, 1]))
    assert [(int(a), e) for a, e in r.roots] == [(1, 1), (2, 1), (4, 1)]
    assert r.unsplit_degree == 0
    r = roots_in_field(P(F7, [1, 0, 1]))
    assert r.roots == [] and r.unsplit_degree == 2
    r = roots_in_field(P(F5, [-3, 1]) ** 2)
    assert [(int(a), e) for a, e in r.roots] == [(3, 2)]


def test_roots_in_extension():
    F = GF(7, 2)
    r = roots_in_field(Polynomial(F, [1, 0, 1]))
    assert len(r.roots) == 2 and r.unsplit_degree == 0
    for a, _ in r.roots:
        assert a * a == F(-1)


def test_splitting_degree():
    F = GF(7)
    assert splitting_degree(P(F, [1, 0, 1])) == 2
    assert splitting_degree(P(F, [-1, 0, 0, 1])) == 1
    # a cubic and a quadratic factor: lcm 6
    f = P(F, [1, 0, 1]) * P(F, [-2, 0, 0, 1])  # z^3 - 2 irreducible mod 7
    assert splitting_degree(f) == 6


# -- is_linear_power -------------------------------------------------------------


def test_is_linear_power_examples():
    F5 = GF(5)
    alpha, e = is_linear_power(P(F5, [1, -2, 1]))
    assert alpha == 1 and e == 2
    assert is_linear_power(P(F5, [-1, 0, 1])) is None
    alpha, e = is_linear_power(Polynomial.monomial(F5, 5))
    assert alpha == 0 and e == 5


def test_is_linear_power_inseparable_shift():
    F = GF(3)
    f = (P(F, [-2, 1]) ** 3) * P(F, [2])
    assert is_linear_power(f) == (F(2), 3)
    # (z^3 - 2)^2 = (z - 2)^6 over F_3
    assert is_linear_power(P(F, [-2, 0, 0, 1]) ** 2) == (F(2), 6)
    # z^p - z is separable with p roots
    assert is_linear_power(P(F, [0, -1, 0, 1])) is None


# -- oracle and property tests ----------------------------------------------------

coeff_lists = st.lists(st.integers(0, 6), min_size=1, max_size=9)


@settings(max_examples=150)
@given(coeff_lists, coeff_lists)
def test_gcd_matches_sympy(a, b):
    F = GF(7)
    f, g = P(F, a), P(F, b)
    if f.is_zero() and g.is_zero():
        return
    expect = from_sym(F, sympy.gcd(sym(f), sym(g)))
    assert poly_gcd(f, g) == expect.monic()


@settings(max_examples=150)
@given(coeff_lists, coeff_lists)
def test_divmod_identity(a, b):
    F = GF(7)
    f, g = P(F, a), P(F, b)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@settings(max_examples=100)
@given(st.lists(st.integers(0, 4), min_size=2, max_size=10))
def test_roots_match_brute_force(cs):
    F = GF(5)
    f = P(F, cs)
    if f.degree < 1:
        return
    r = roots_in_field(f)
    found = {int(a): e for a, e in r.roots}
    for a in range(5):
        assert (f.eval_code(a) == 0) == (a in found)
        if a in found:
            assert f.multiplicity(F(a)) == found[a]
    assert sum(found.values()) + r.unsplit_degree == f.degree


@settings(max_examples=60)
@given(st.lists(st.integers(0, 48), min_size=2, max_size=7))
def test_roots_match_brute_force_f49(codes):
    F = GF(7, 2)
    f = Polynomial(F, [FqElement(F, c) for c in codes])
    if f.degree < 1:
        return
    r = roots_in_field(f)
    found = {a.code: e for a, e in r.roots}
    brute = {c for c in range(F.q) if f.eval_code(c) == 0}
    assert set(found) == brute
    assert sum(found.values()) + r.unsplit_degree == f.degree


@settings(max_examples=100)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=12))
def test_squarefree_decomposition_reassembles(cs):
    F = GF(3)
    f = P(F, cs)
    if f.degree < 1:
        return
    prod = Polynomial.const(F, 1)
    for g, e in squarefree_decomposition(f):
        assert poly_gcd(g, g.derivative()).degree == 0
        prod = prod * g**e
    assert prod == f.monic()


@settings(max_examples=100)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 12), st.integers(1, 4))
def test_is_linear_power_reproduces(alpha, shift, e, c):
    F = GF(5)
    f = P(F, [-alpha, 1]) ** e * P(F, [c])
    res = is_linear_power(f)
    assert res is not None
    a, k = res
    assert P(F, [c]) * Polynomial(F, [-a, 1]) ** k == f
    g = f * P(F, [-(alpha + 1 + shift % 4), 1])
    assert is_linear_power(g) is None


nonzero_lists = st.lists(st.integers(0, 6), min_size=1, max_size=6).filter(any)


@settings(max_examples=150)
@given(nonzero_lists, nonzero_lists, nonzero_lists, nonzero_lists)
def test_ratfn_reduce_idempotent_and_multiplicative(a, b, c, d):
    F = GF(7)
    f = ratfn_reduce(P(F, a), P(F, b))
    g = ratfn_reduce(P(F, c), P(F, d))
    assert ratfn_reduce(f.num, f.den) == f
    assert poly_gcd(f.num, f.den).degree == 0
    assert f.den.lc == 1
    assert ratfn_reduce(P(F, a) * P(F, c), P(F, b) * P(F, d)) == f * g


@settings(max_examples=100)
@given(nonzero_lists, nonzero_lists, st.integers(0, 6))
def test_ratfn_reduce_preserves_orders(a, b, alpha):
    F = GF(7)
    n, d = P(F, a), P(F, b)
    r = ratfn_reduce(n, d)
    pt = F(alpha)
    assert n.multiplicity(pt) - d.multiplicity(pt) == r.num.multiplicity(pt) - r.den.multiplicity(pt)
