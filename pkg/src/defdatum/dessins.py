"""Permutation triples, combinatorial types and bicolored weighted plane trees.

Permutations act on {1..n} (stored 0-based) and compose right to left:
``(s * t)(x) = s(t(x))``.  A generating system is a triple with
``s1 * s2 * s3 == 1`` generating a transitive group.
"""
from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, permutations as _iperms
from typing import Iterator, Optional, Sequence

from .errors import NotRealizableError, PreconditionError
from .types import realizable, stats

MAX_DEGREE = 9


class Permutation:
    """A bijection of {1..n}; immutable."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles, n: Optional[int] = None) -> "Permutation":
        """From 1-based cycles, given as nested lists or as ``"(1 2 3)(4 5)"``."""
        if isinstance(cycles, str):
            cycles = [
                [int(t) for t in re.split(r"[\s,]+", c.strip()) if t]
                for c in re.findall(r"\(([^)]*)\)", cycles)
            ]
        top = max((x for c in cycles for x in c), default=0)
        n = top if n is None else n
        if top > n:
            raise ValueError(f"cycle entry {top} exceeds degree {n}")
        img = list(range(n))
        for c in cycles:
            for i, x in enumerate(c):
                img[x - 1] = c[(i + 1) % len(c)] - 1
        return cls(img)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        """Image of the 1-based point x."""
        return self.images[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        a = self.images
        return Permutation(tuple(a[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def conjugate(self, tau: "Permutation") -> "Permutation":
        """tau * self * tau^-1."""
        return tau * self * tau.inverse()

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, singletons: bool = False) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            c = []
            x = s
            while not seen[x]:
                seen[x] = True
                c.append(x + 1)
                x = self.images[x]
            if len(c) > 1 or singletons:
                out.append(c)
        return out

    def cycle_type(self) -> "CycleType":
        return CycleType(len(c) for c in self.cycles(singletons=True))

    def __repr__(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


class CycleType:
    """Multiset of cycle lengths; 1s are stored but omitted in display."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(sorted((int(x) for x in parts), reverse=True))
        if any(x < 1 for x in parts):
            raise ValueError(f"cycle lengths must be positive: {parts}")
        self.parts = parts

    @classmethod
    def padded(cls, parts, n: int) -> "CycleType":
        parts = [int(x) for x in parts]
        s = sum(parts)
        if s > n:
            raise PreconditionError(f"cycle lengths {parts} exceed degree {n}")
        return cls(parts + [1] * (n - s))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def num_cycles(self) -> int:
        return len(self.parts)

    def nontrivial(self) -> tuple:
        return tuple(x for x in self.parts if x > 1)

    def __eq__(self, other):
        return isinstance(other, CycleType) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "(" + ",".join(map(str, self.nontrivial() or (1,))) + ")"


@dataclass(frozen=True)
class CombinatorialType:
    n: int
    c1: CycleType
    c2: CycleType
    c3: CycleType

    def __post_init__(self):
        for c in (self.c1, self.c2, self.c3):
            if c.n != self.n:
                raise PreconditionError(f"cycle type {c} is not a partition of {self.n}")

    @classmethod
    def from_parts(cls, n, c1, c2, c3) -> "CombinatorialType":
        return cls(n, CycleType.padded(c1, n), CycleType.padded(c2, n), CycleType.padded(c3, n))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c1": list(self.c1.parts),
            "c2": list(self.c2.parts),
            "c3": list(self.c3.parts),
        }


def cycle_type(sigma: Permutation) -> CycleType:
    return sigma.cycle_type()


def genus(C: CombinatorialType) -> int:
    """From 2 - 2g = c(s1) + c(s2) + c(s3) - n."""
    chi = C.c1.num_cycles + C.c2.num_cycles + C.c3.num_cycles - C.n
    if chi % 2 or chi > 2:
        raise NotRealizableError(f"Riemann-Hurwitz gives 2-2g = {chi}: not realizable as stated")
    return (2 - chi) // 2


def combinatorial_type_m1(A: Sequence[int]) -> CombinatorialType:
    A = tuple(A)
    if any(a == 0 for a in A) or sum(A) or len(A) < 2:
        raise PreconditionError(f"need a zero-sum tuple of nonzero integers: {A}")
    n, _ = stats(A)
    r = len(A)
    if r - 1 > n:
        raise PreconditionError(f"an {r - 1}-cycle does not exist in S_{n}")
    return CombinatorialType.from_parts(
        n, [a for a in A if a > 0], [r - 1], [-a for a in A if a < 0]
    )


def combinatorial_type_m2(A: Sequence[int]) -> CombinatorialType:
    A = tuple(A)
    if not A or any(a <= 0 for a in A):
        raise PreconditionError(f"m=2 lifts have positive entries: {A}")
    n, r = sum(A), len(A)
    h = 2 * r - 1
    if h > n:
        raise PreconditionError(f"a {h}-cycle does not exist in S_{n}")
    c1 = [h] + [2] * ((n - h) // 2)
    c3 = [2] * (n // 2)
    return CombinatorialType.from_parts(n, c1, list(A), c3)


# -- generating systems ---------------------------------------------------------


def is_transitive(perms: Sequence[Permutation]) -> bool:
    n = perms[0].n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in perms:
        for i, j in enumerate(s.images):
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(n)}) == 1


@dataclass(frozen=True)
class GeneratingSystem:
    sigma1: Permutation
    sigma2: Permutation
    sigma3: Permutation

    def __post_init__(self):
        s1, s2, s3 = self.sigma1, self.sigma2, self.sigma3
        if not (s1.n == s2.n == s3.n):
            raise PreconditionError("permutations of different degrees")
        if not (s1 * s2 * s3).is_identity():
            raise PreconditionError("sigma1 sigma2 sigma3 != 1")
        if not is_transitive([s1, s2, s3]):
            raise PreconditionError("the generated group is not transitive")

    @property
    def n(self) -> int:
        return self.sigma1.n

    def combinatorial_type(self) -> CombinatorialType:
        return CombinatorialType(
            self.n, self.sigma1.cycle_type(), self.sigma2.cycle_type(), self.sigma3.cycle_type()
        )

    def to_json(self) -> dict:
        return {"n": self.n, "sigma1": str(self.sigma1), "sigma2": str(self.sigma2), "sigma3": str(self.sigma3)}


def canonical_representative(c: CycleType) -> Permutation:
    """Cycles on consecutive integers, longest first."""
    img = []
    start = 0
    for L in c.parts:
        img.extend(start + (i + 1) % L for i in range(L))
        start += L
    return Permutation(img)


def conjugacy_class(c: CycleType) -> Iterator[Permutation]:
    """Every permutation of cycle type c, each exactly once."""
    yield from _class_by_partitions(list(c.parts), c.n)


def _choose(seq, k):
    return combinations(seq, k)


def _class_by_partitions(lengths: list[int], n: int) -> Iterator[Permutation]:
    """Assign the smallest unused point to a block, trying each remaining
    block length once per distinct value; this hits every set partition with
    the given block sizes exactly once."""
    img = list(range(n))
    counts = Counter(lengths)

    def rec(free: list[int]):
        if not free:
            yield Permutation(img)
            return
        first = free[0]
        rest = free[1:]
        for L in sorted(counts):
            if counts[L] == 0:
                continue
            counts[L] -= 1
            for others in _choose(rest, L - 1):
                oset = set(others)
                remaining = [x for x in rest if x not in oset]
                for order in _iperms(others):
                    cyc = (first,) + order
                    for i, x in enumerate(cyc):
                        img[x] = cyc[(i + 1) % L]
                    yield from rec(remaining)
                for x in others:
                    img[x] = x
            img[first] = first
            counts[L] += 1

    yield from rec(list(range(n)))


def search_generating_systems(
    C: CombinatorialType, limit: Optional[int] = None, max_degree: int = MAX_DEGREE
) -> list[GeneratingSystem]:
    """All generating systems of type C with sigma1 pinned to the canonical
    representative of C.c1, in enumeration order of sigma2."""
    if C.n > max_degree:
        raise PreconditionError(f"degree {C.n} above the brute-force cap {max_degree}")
    s1 = canonical_representative(C.c1)
    s1_inv = s1.inverse()
    target = C.c3
    out = []
    for s2 in _class_by_partitions(list(C.c2.parts), C.n):
        s3 = s2.inverse() * s1_inv
        if s3.cycle_type() != target:
            continue
        if not is_transitive([s1, s2]):
            continue
        out.append(GeneratingSystem(s1, s2, s3))
        if limit is not None and len(out) >= limit:
            break
    return out


def centralizer_generators(sigma: Permutation) -> list[Permutation]:
    """Generators of the centralizer of sigma in S_n."""
    n = sigma.n
    cyc = sigma.cycles(singletons=True)
    gens = []
    for c in cyc:
        if len(c) > 1:
            img = list(range(n))
            for i, x in enumerate(c):
                img[x - 1] = c[(i + 1) % len(c)] - 1
            gens.append(Permutation(img))
    by_len: dict[int, list] = {}
    for c in cyc:
        by_len.setdefault(len(c), []).append(c)
    for cs in by_len.values():
        for a, b in zip(cs, cs[1:]):
            img = list(range(n))
            for x, y in zip(a, b):
                img[x - 1], img[y - 1] = y - 1, x - 1
            gens.append(Permutation(img))
    return gens


def count_classes(C: CombinatorialType, max_degree: int = MAX_DEGREE) -> int:
    """Number of generating systems of type C up to simultaneous conjugation."""
    systems = search_generating_systems(C, max_degree=max_degree)
    if not systems:
        return 0
    s1 = systems[0].sigma1
    gens = centralizer_generators(s1)
    pool = {g.sigma2 for g in systems}
    seen = set()
    orbits = 0
    for s2 in pool:
        if s2 in seen:
            continue
        orbits += 1
        stack = [s2]
        seen.add(s2)
        while stack:
            x = stack.pop()
            for t in gens:
                y = x.conjugate(t)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return orbits


def verify_identity_lemma4(n: int) -> bool:
    """(1 2 ... n)(n n-2 ... 3 1) == (2 3)(4 5)...(n-1 n) for odd n."""
    if n < 3 or n % 2 == 0:
        raise PreconditionError("n must be odd and at least 3")
    long_cycle = Permutation.from_cycles([list(range(1, n + 1))], n)
    odd_cycle = Permutation.from_cycles([list(range(n, 0, -2))], n)
    rhs = Permutation.from_cycles([[i, i + 1] for i in range(2, n, 2)], n)
    return long_cycle * odd_cycle == rhs


# -- plane trees ----------------------------------------------------------------


@dataclass
class WeightedPlaneTree:
    """Bicolored tree with positive edge weights and a rotation system.

    ``rotation[v]`` lists the ids of the edges at v in counterclockwise order.
    """

    colors: dict  # vertex id -> "black" | "white"
    edges: list  # (black, white, weight)
    rotation: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self):
        V = list(self.colors)
        if len(self.edges) != len(V) - 1:
            raise PreconditionError("a tree on V vertices has V-1 edges")
        parent = {v: v for v in V}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for b, w, wt in self.edges:
            if self.colors.get(b) != "black" or self.colors.get(w) != "white":
                raise PreconditionError(f"edge ({b},{w}) does not join black to white")
            if wt < 1:
                raise PreconditionError("edge weights must be positive")
            rb, rw = find(b), find(w)
            if rb == rw:
                raise PreconditionError("cycle in tree")
            parent[rb] = rw
        for v in V:
            inc = sorted(i for i, (b, w, _) in enumerate(self.edges) if v in (b, w))
            if sorted(self.rotation.get(v, [])) != inc:
                raise PreconditionError(f"rotation at {v} does not list its incident edges")

    def valency(self, v) -> int:
        return sum(wt for b, w, wt in self.edges if v in (b, w))

    def signed_valencies(self) -> dict:
        return {v: (1 if c == "black" else -1) * self.valency(v) for v, c in self.colors.items()}

    @property
    def total_weight(self) -> int:
        return sum(wt for _, _, wt in self.edges)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "color": c} for v, c in self.colors.items()],
            "edges": [{"black": b, "white": w, "weight": wt} for b, w, wt in self.edges],
            "rotation": {str(v): list(r) for v, r in self.rotation.items()},
        }

    @classmethod
    def from_json(cls, obj) -> "WeightedPlaneTree":
        if isinstance(obj, str):
            obj = json.loads(obj)
        colors = {v["id"]: v["color"] for v in obj["vertices"]}
        edges = [(e["black"], e["white"], e["weight"]) for e in obj["edges"]]
        keys = {str(v): v for v in colors}
        rotation = {keys[k]: list(r) for k, r in obj["rotation"].items()}
        return cls(colors, edges, rotation)

    def to_dot(self) -> str:
        lines = ["graph T {"]
        for v, c in self.colors.items():
            style = "filled" if c == "black" else "solid"
            fc = ', fillcolor=black, fontcolor=white' if c == "black" else ""
            lines.append(f'  v{v} [label="{self.valency(v)}", style={style}{fc}];')
        for b, w, wt in self.edges:
            lines.append(f'  v{b} -- v{w} [label="{wt}"];')
        lines.append("}")
        return "\n".join(lines)


def _build(items: list[tuple[int, int]]):
    """Edges [(u, v, weight)] and rotation for the labelled valency list."""
    k = reduce(math.gcd, (abs(v) for _, v in items))
    if k > 1:
        edges, rot = _build([(l, v // k) for l, v in items])
        return [(u, v, w * k) for u, v, w in edges], rot
    pos = [it for it in items if it[1] > 0]
    neg = [it for it in items if it[1] < 0]
    if len(pos) == 1 or len(neg) == 1:
        center = pos[0] if len(pos) == 1 else neg[0]
        leaves = [it for it in items if it is not center]
        edges = [(center[0], l, abs(v)) for l, v in leaves]
        rot = {center[0]: list(range(len(edges)))}
        for i, (l, _) in enumerate(leaves):
            rot[l] = [i]
        return edges, rot
    mu = min(abs(v) for _, v in items)
    first = None
    for it in sorted(items):
        if abs(it[1]) == mu and any(
            (v > 0) != (it[1] > 0) and abs(v) > mu for _, v in items
        ):
            first = it
            break
    if first[1] < 0:
        return _build([(l, -v) for l, v in items])
    a1_label, a1 = first
    others = [it for it in items if it is not first]

    def m_of(j):
        vals = [v + a1 if l == j else v for l, v in others]
        return reduce(math.gcd, (abs(v) for v in vals))

    cands = [(m_of(l), l) for l, v in others if v < 0 and v + a1 < 0]
    _, i0 = min(cands)
    reduced = [(l, v + a1) if l == i0 else (l, v) for l, v in others]
    edges, rot = _build(reduced)
    e = len(edges)
    edges.append((a1_label, i0, a1))
    rot[i0].insert(0, e)
    rot[a1_label] = [e]
    return edges, rot


def build_tree(A: Sequence[int]) -> WeightedPlaneTree:
    """A bicolored weighted plane tree whose signed valency list is A.

    Vertex i carries A[i] (black if positive).  Follows the inductive
    construction: remove a positive entry A_1 of minimal absolute value,
    merge it into a suitable negative entry, recurse and reattach A_1 as a
    leaf of weight A_1.
    """
    A = tuple(int(a) for a in A)
    if not realizable(A):
        n, k = stats(A)
        raise NotRealizableError(f"{A}: k(r-1) = {k * (len(A) - 1)} > n = {n}")
    edges, rot = _build(list(enumerate(A)))
    colors = {i: ("black" if a > 0 else "white") for i, a in enumerate(A)}
    oriented = [(u, v, w) if A[u] > 0 else (v, u, w) for u, v, w in edges]
    return WeightedPlaneTree(colors, oriented, {i: rot[i] for i in range(len(A))})


def _strand_permutations(T: WeightedPlaneTree, reverse_white: bool):
    base = []
    n = 0
    for _, _, wt in T.edges:
        base.append(n)
        n += wt
    s_black = list(range(n))
    s_white = list(range(n))
    for v, color in T.colors.items():
        order = []
        for e in T.rotation[v]:
            wt = T.edges[e][2]
            strands = list(range(base[e], base[e] + wt))
            if color == "white" and reverse_white:
                strands.reverse()
            order.extend(strands)
        target = s_black if color == "black" else s_white
        for i, x in enumerate(order):
            target[x] = order[(i + 1) % len(order)]
    return Permutation(s_black), Permutation(s_white)


def tree_to_generating_system(T: WeightedPlaneTree) -> GeneratingSystem:
    """Expand each weight-w edge into w parallel strands and read off the
    black rotations (sigma1), white rotations (sigma3) and sigma2 with
    sigma1 sigma2 sigma3 = 1.  The strand order at white vertices is
    reversed so the parallel strands bound digons; if that fails the face
    condition the unreversed convention is tried."""
    r = len(T.colors)
    for reverse_white in (True, False):
        s1, s3 = _strand_permutations(T, reverse_white)
        s2 = s1.inverse() * s3.inverse()
        n = s1.n
        expected = CycleType.padded([r - 1], n)
        if s2.cycle_type() != expected:
            continue
        gs = GeneratingSystem(s1, s2, s3)
        if genus(gs.combinatorial_type()) != 0:
            continue
        return gs
    raise PreconditionError("no strand convention satisfies the face condition")
