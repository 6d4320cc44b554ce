import itertools
import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defdatum.dessins import (
    CombinatorialType,
    CycleType,
    GeneratingSystem,
    Permutation,
    WeightedPlaneTree,
    build_tree,
    canonical_representative,
    combinatorial_type_m1,
    combinatorial_type_m2,
    conjugacy_class,
    count_classes,
    cycle_type,
    genus,
    is_transitive,
    search_generating_systems,
    tree_to_generating_system,
    verify_identity_lemma4,
)
from defdatum.errors import NotRealizableError, PreconditionError
from defdatum.types import realizable, stats


def parts(c):
    return c.nontrivial()


# -- permutations ------------------------------------------------------------------


def test_composition_is_right_to_left():
    s = Permutation.from_cycles("(1 2)", 3)
    t = Permutation.from_cycles("(2 3)", 3)
    # (s t)(2) = s(t(2)) = s(3) = 3
    assert (s * t)(2) == 3
    assert str(s * t) == "(1 2 3)"


def test_cycle_notation_round_trip():
    s = Permutation.from_cycles("(1 3 5)(2 4)", 6)
    assert str(s) == "(1 3 5)(2 4)"
    assert Permutation.from_cycles(str(s), 6) == s
    assert parts(cycle_type(s)) == (3, 2)
    assert cycle_type(s).parts == (3, 2, 1)


def test_invalid_permutation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_conjugacy_class_sizes():
    from math import factorial

    for n in range(1, 7):
        for lam in _partitions(n):
            c = CycleType(lam)
            elems = list(conjugacy_class(c))
            assert len(elems) == len(set(elems))
            assert all(e.cycle_type() == c for e in elems)
            z = 1
            for k, mult in Counter(lam).items():
                z *= k**mult * factorial(mult)
            assert len(elems) == factorial(n) // z


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def test_canonical_representative_layout():
    s = canonical_representative(CycleType.padded([3, 2], 6))
    assert str(s) == "(1 2 3)(4 5)"


# -- genus and types ---------------------------------------------------------------


def test_genus_examples():
    assert genus(combinatorial_type_m1((2, 4, -3, -2, -1))) == 0
    assert genus(CombinatorialType.from_parts(1, [], [], [])) == 0
    with pytest.raises(NotRealizableError):
        genus(CombinatorialType.from_parts(4, [4], [4], [4]))


def test_genus_rejects_negative():
    # three identities in S_3 would need 2 - 2g = 6
    with pytest.raises(NotRealizableError):
        genus(CombinatorialType.from_parts(3, [], [], []))


def test_combinatorial_type_m1_examples():
    C = combinatorial_type_m1((2, 4, -3, -2, -1))
    assert C.n == 6
    assert C.c1.parts == (4, 2)
    assert C.c2.parts == (4, 1, 1)
    assert C.c3.parts == (3, 2, 1)
    C = combinatorial_type_m1((1, -1))
    assert C.n == 1 and C.c1.parts == C.c2.parts == C.c3.parts == (1,)
    with pytest.raises(PreconditionError):
        combinatorial_type_m1((1, 1, -1, -1))


def test_combinatorial_type_m2_examples():
    C = combinatorial_type_m2((1, 1, 3))
    assert (C.n, C.c1.parts, C.c2.parts, C.c3.parts) == (5, (5,), (3, 1, 1), (2, 2, 1))
    C = combinatorial_type_m2((1, 1, 1, 4))
    assert (C.n, C.c1.parts, C.c2.parts, C.c3.parts) == (7, (7,), (4, 1, 1, 1), (2, 2, 2, 1))
    C = combinatorial_type_m2((2, 2))
    assert (C.n, C.c1.parts, C.c3.parts) == (4, (3, 1), (2, 2))


def test_combinatorial_type_m2_rejects_overlong_cycle():
    with pytest.raises(PreconditionError):
        combinatorial_type_m2((1, 1))


# -- search and counting ---------------------------------------------------------------


def test_search_examples():
    assert count_classes(combinatorial_type_m2((1, 1, 3))) == 1
    C = CombinatorialType.from_parts(3, [3], [3], [2, 1])
    assert search_generating_systems(C) == []
    systems = search_generating_systems(combinatorial_type_m1((2, 4, -3, -2, -1)))
    assert systems
    for g in systems:
        assert genus(g.combinatorial_type()) == 0
        assert g.combinatorial_type() == combinatorial_type_m1((2, 4, -3, -2, -1))


def test_search_respects_degree_cap():
    C = CombinatorialType.from_parts(10, [10], [], [10])
    with pytest.raises(PreconditionError):
        search_generating_systems(C)


def test_search_limit():
    C = combinatorial_type_m1((2, 4, -3, -2, -1))
    assert len(search_generating_systems(C, limit=1)) == 1


def test_generating_system_validation():
    s = Permutation.from_cycles("(1 2)", 3)
    with pytest.raises(PreconditionError):
        GeneratingSystem(s, s, Permutation.identity(3))  # not transitive
    t = Permutation.from_cycles("(1 2 3)", 3)
    with pytest.raises(PreconditionError):
        GeneratingSystem(t, t, t.inverse())  # product is (1 2 3)


def _brute_force_classes(C):
    """Orbits of all generating systems of type C under simultaneous
    conjugation by S_n, without pinning sigma1."""
    n = C.n
    systems = set()
    for s1 in conjugacy_class(C.c1):
        for s2 in conjugacy_class(C.c2):
            s3 = (s1 * s2).inverse()
            if s3.cycle_type() == C.c3 and is_transitive([s1, s2]):
                systems.add((s1, s2))
    group = [Permutation(p) for p in itertools.permutations(range(n))]
    orbits, seen = 0, set()
    for sys in systems:
        if sys in seen:
            continue
        orbits += 1
        for t in group:
            seen.add((sys[0].conjugate(t), sys[1].conjugate(t)))
    return orbits


@pytest.mark.parametrize(
    "C",
    [
        combinatorial_type_m2((1, 1, 3)),
        combinatorial_type_m2((1, 3)),
        combinatorial_type_m1((3, 1, -2, -1, -1)),
        combinatorial_type_m1((3, 1, -2, -2)),
        combinatorial_type_m1((2, 2, -2, -1, -1)),
        CombinatorialType.from_parts(5, [3], [3], [3]),
        CombinatorialType.from_parts(4, [2], [3], [4]),
    ],
)
def test_count_classes_matches_full_conjugation(C):
    assert count_classes(C) == _brute_force_classes(C)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_unique_m2_system(r):
    assert count_classes(combinatorial_type_m2((1,) * (r - 1) + (r,))) == 1


def test_identity_examples():
    assert verify_identity_lemma4(5)
    assert verify_identity_lemma4(3)
    assert verify_identity_lemma4(15)
    n = 5
    lhs = Permutation.from_cycles("(1 2 3 4 5)") * Permutation.from_cycles("(5 3 1)", 5)
    assert lhs == Permutation.from_cycles("(2 3)(4 5)", 5)
    with pytest.raises(PreconditionError):
        verify_identity_lemma4(4)


# -- trees -----------------------------------------------------------------------------


def test_tree_with_mixed_valencies():
    A = (2, 4, -3, -2, -1)
    T = build_tree(A)
    assert sorted(T.signed_valencies().values()) == sorted(A)
    g = tree_to_generating_system(T)
    assert g.combinatorial_type() == combinatorial_type_m1(A)
    assert genus(g.combinatorial_type()) == 0


def test_star_tree():
    T = build_tree((3, -1, -1, -1))
    assert len(T.edges) == 3 and all(w == 1 for _, _, w in T.edges)
    centre = [v for v in T.colors if T.valency(v) == 3]
    assert centre == [0] and T.colors[0] == "black"
    g = tree_to_generating_system(T)
    assert parts(g.sigma1.cycle_type()) == (3,)
    assert g.sigma3.is_identity()
    assert parts(g.sigma2.cycle_type()) == (3,)


@pytest.mark.parametrize("k", [1, 2, 3, 7])
def test_single_edge(k):
    T = build_tree((k, -k))
    assert T.edges == [(0, 1, k)]
    g = tree_to_generating_system(T)
    assert g.sigma1.cycle_type().parts == (k,)
    assert g.sigma3.cycle_type().parts == (k,)
    # r - 1 = 1: the face condition leaves sigma2 trivial
    assert g.sigma2.is_identity()
    assert genus(g.combinatorial_type()) == 0


def test_build_tree_rejects_unrealizable():
    with pytest.raises(NotRealizableError):
        build_tree((1, 1, -1, -1))


def test_tree_json_round_trip_and_dot():
    T = build_tree((2, 4, -3, -2, -1))
    obj = json.loads(json.dumps(T.to_json()))
    back = WeightedPlaneTree.from_json(obj)
    assert back.edges == T.edges and back.rotation == T.rotation
    dot = T.to_dot()
    assert dot.startswith("graph T {") and dot.count("--") == 4


def test_tree_validation():
    with pytest.raises(PreconditionError):
        WeightedPlaneTree({0: "black", 1: "black"}, [(0, 1, 1)], {0: [0], 1: [0]})
    with pytest.raises(PreconditionError):
        WeightedPlaneTree({0: "black", 1: "white"}, [(0, 1, 0)], {0: [0], 1: [0]})


@st.composite
def realizable_lifts(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pos = draw(st.lists(st.integers(1, n), min_size=1, max_size=n))
    if sum(pos) > max_n:
        pos = [1] * draw(st.integers(1, max_n))
    n = sum(pos)
    neg = []
    rest = n
    while rest:
        x = draw(st.integers(1, rest))
        neg.append(-x)
        rest -= x
    A = pos + neg
    A = draw(st.permutations(A))
    return tuple(A)


@settings(max_examples=300)
@given(realizable_lifts(), st.integers(1, 3))
def test_tree_invariants(A, scale):
    A = tuple(a * scale for a in A)
    if stats(A)[0] > 12 or not realizable(A):
        return
    T = build_tree(A)
    assert sorted(T.signed_valencies().values()) == sorted(A)
    assert [T.signed_valencies()[i] for i in range(len(A))] == list(A)
    k = stats(A)[1]
    assert all(w % k == 0 for _, _, w in T.edges)
    g = tree_to_generating_system(T)
    assert (g.sigma1 * g.sigma2 * g.sigma3).is_identity()
    assert is_transitive([g.sigma1, g.sigma2, g.sigma3])
    assert genus(g.combinatorial_type()) == 0
    assert parts(g.sigma2.cycle_type()) == ((len(A) - 1,) if len(A) > 2 else ())
    assert g.combinatorial_type() == combinatorial_type_m1(A)


def test_realizability_oracle_small():
    # both directions of the criterion for every tuple with n_A <= 5
    checked = 0
    for A in _zero_sum_tuples(5, 6):
        C = combinatorial_type_m1(A) if len(A) - 1 <= stats(A)[0] else None
        brute = bool(C and search_generating_systems(C, limit=1))
        assert realizable(A) == brute, A
        checked += 1
    assert checked == 69


def _zero_sum_tuples(max_n, max_r):
    """Sorted zero-sum tuples (positives descending, then negatives)."""
    for n in range(1, max_n + 1):
        for pos in _partitions(n):
            for neg in _partitions(n):
                if len(pos) + len(neg) <= max_r:
                    yield tuple(pos) + tuple(-x for x in neg)
