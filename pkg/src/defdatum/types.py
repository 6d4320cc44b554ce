"""Residue types, lifted types and the numeric criteria built on them.

A lift ``A`` of a type ``a`` is a tuple of nonzero integers congruent to
``a`` mod p; for m = 1 it must sum to zero, for m = 2 all entries are
positive.  The statistics ``n_A = sum(max(A_i, 0))`` and ``k_A = gcd(A)``
drive every criterion below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Iterator, Optional, Sequence

from sympy import isprime

from .errors import InvalidTypeError, PreconditionError

LiftedType = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class ResidueType:
    """A tuple of nonzero residues mod p for the cyclic group of order m.

    Entries are kept as given; :func:`canonicalize` produces the canonical
    representative of the equivalence class.
    """

    p: int
    m: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(a) % self.p for a in self.entries)
        object.__setattr__(self, "entries", entries)
        if not isprime(self.p):
            raise InvalidTypeError(f"p={self.p} is not prime")
        if self.m < 1 or self.m % self.p == 0:
            raise InvalidTypeError(f"m={self.m} must be positive and prime to p")
        if not entries:
            raise InvalidTypeError("a type has at least one entry")
        if any(a == 0 for a in entries):
            raise InvalidTypeError(f"type entries must be nonzero mod {self.p}: {entries}")
        if self.m == 1 and sum(entries) % self.p:
            raise InvalidTypeError(f"entries of an m=1 type must sum to 0 mod {self.p}")

    @property
    def r(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def scaled(self, u: int) -> "ResidueType":
        return ResidueType(self.p, self.m, tuple(u * a for a in self.entries))


def stats(A: Sequence[int]) -> tuple[int, int]:
    """(n_A, k_A)."""
    if not A:
        raise PreconditionError("empty lift")
    n = sum(a for a in A if a > 0)
    k = reduce(math.gcd, (abs(a) for a in A))
    return n, k


def _check_zero_sum(A):
    if len(A) < 2:
        raise PreconditionError("need at least two entries")
    if any(a == 0 for a in A):
        raise PreconditionError(f"entries must be nonzero: {A}")
    if sum(A):
        raise PreconditionError(f"entries must sum to zero: {A}")


def realizable(A: Sequence[int]) -> bool:
    """k_A (r - 1) <= n_A: a genus-zero Belyi map of type A exists."""
    A = tuple(A)
    _check_zero_sum(A)
    n, k = stats(A)
    return k * (len(A) - 1) <= n


def _prime_root_of_unity(p: int, m: int) -> int:
    if (p - 1) % m:
        raise InvalidTypeError(f"no primitive {m}-th root of unity in F_{p} (m does not divide p-1)")
    for x in range(1, p):
        if pow(x, m, p) == 1 and all(pow(x, j, p) != 1 for j in range(1, m)):
            return x
    raise InvalidTypeError("unreachable")  # pragma: no cover


def canonicalize(a: ResidueType) -> ResidueType:
    """Replace each entry by the minimum of {zeta^c a_i}, then sort."""
    p, m = a.p, a.m
    if m == 1:
        return ResidueType(p, m, tuple(sorted(a.entries)))
    zeta = _prime_root_of_unity(p, m)
    powers = [pow(zeta, c, p) for c in range(m)]
    ent = sorted(min((u * x) % p for u in powers) for x in a.entries)
    return ResidueType(p, m, tuple(ent))


def equivalent(a: ResidueType, b: ResidueType) -> bool:
    if (a.p, a.m) != (b.p, b.m):
        raise PreconditionError("types over different (p, m)")
    return canonicalize(a) == canonicalize(b)


def default_bound(a: ResidueType) -> int:
    return max(3 * a.p, 3 * max(a.entries))


def enumerate_lifts(a: ResidueType, bound: Optional[int] = None) -> Iterator[LiftedType]:
    """All lifts with |A_i| <= bound, by n_A then lexicographically."""
    p, m = a.p, a.m
    if m not in (1, 2):
        raise PreconditionError("lifts are defined for m = 1 and m = 2")
    bound = default_bound(a) if bound is None else bound
    options = []
    for x in a.entries:
        if m == 2:
            opts = list(range(x, bound + 1, p))
        else:
            opts = [v for v in range(-bound, bound + 1) if v and (v - x) % p == 0]
        options.append(opts)
    out = []
    if m == 2:
        def rec2(i, acc):
            if i == len(options):
                out.append(tuple(acc))
                return
            for v in options[i]:
                acc.append(v)
                rec2(i + 1, acc)
                acc.pop()
        rec2(0, [])
    else:
        lo = [min(o) if o else 0 for o in options]
        hi = [max(o) if o else 0 for o in options]
        suffix_lo = [0] * (len(options) + 1)
        suffix_hi = [0] * (len(options) + 1)
        for i in range(len(options) - 1, -1, -1):
            suffix_lo[i] = suffix_lo[i + 1] + lo[i]
            suffix_hi[i] = suffix_hi[i + 1] + hi[i]

        def rec1(i, s, acc):
            if i == len(options):
                if s == 0:
                    out.append(tuple(acc))
                return
            for v in options[i]:
                t = s + v
                if suffix_lo[i + 1] <= -t <= suffix_hi[i + 1]:
                    acc.append(v)
                    rec1(i + 1, t, acc)
                    acc.pop()

        if all(options):
            rec1(0, 0, [])
    out.sort(key=lambda A: (stats(A)[0], A))
    yield from out


def nonexistence_certificate(a: ResidueType, bound: Optional[int] = None) -> Optional[LiftedType]:
    """First lift A with k_A min(r-1, p) > n_A (rules out good data of type a)."""
    _require_m1(a)
    r, p = a.r, a.p
    for A in enumerate_lifts(a, bound):
        n, k = stats(A)
        if k * min(r - 1, p) > n:
            return A
    return None


def existence_window(a: ResidueType, bound: Optional[int] = None) -> Optional[LiftedType]:
    """First lift A with k_A (r-1) <= n_A < k_A p (guarantees a good datum)."""
    _require_m1(a)
    r, p = a.r, a.p
    for A in enumerate_lifts(a, bound):
        n, k = stats(A)
        if k * (r - 1) <= n < k * p:
            return A
    return None


def _require_m1(a: ResidueType):
    if a.m != 1:
        raise PreconditionError("this criterion is stated for m = 1")


class Necessary(str, Enum):
    PRIMITIVE_OK = "primitive_ok"
    NONPRIMITIVE_OK = "nonprimitive_ok"
    INVALID = "invalid"


@dataclass(frozen=True)
class NecessaryVerdict:
    status: Necessary
    reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status is not Necessary.INVALID


def necessary_conditions(p: int, m: int, h: int) -> NecessaryVerdict:
    """Conditions every good datum of conductor h must satisfy."""
    if not isprime(p) or m < 1 or m % p == 0 or h < 1:
        raise PreconditionError(f"bad input (p={p}, m={m}, h={h})")
    if h % p == 0:
        return NecessaryVerdict(Necessary.INVALID, "p divides h")
    if math.gcd(h, m) == 1:
        if (p - 1) % m:
            return NecessaryVerdict(Necessary.INVALID, "primitive but m does not divide p-1")
        if (h + 1) % m:
            return NecessaryVerdict(Necessary.INVALID, "primitive but h is not -1 mod m")
        return NecessaryVerdict(Necessary.PRIMITIVE_OK)
    if h % m == 0:
        return NecessaryVerdict(Necessary.NONPRIMITIVE_OK)
    return NecessaryVerdict(Necessary.INVALID, "h neither prime to m nor divisible by m")


class LiftReason(str, Enum):
    CYCLIC_CASE = "cyclic_case"
    CONDITION_I_FAILED = "condition_i_failed"
    CONDITION_II_FAILED = "condition_ii_failed"
    OK_INJECTIVE = "ok_injective"


@dataclass(frozen=True)
class LiftingVerdict:
    lifts: bool
    reason: LiftReason
    p: int
    m: int
    h: int

    def to_json(self) -> dict:
        return {"lifts": self.lifts, "reason": self.reason.value, "p": self.p, "m": self.m, "h": self.h}


def decide_lifting(p: int, m: int, h: int) -> LiftingVerdict:
    """Does a local action of Z/p x| Z/m with conductor h lift to char 0."""
    if not isprime(p):
        raise PreconditionError(f"p={p} is not prime")
    if m < 1 or math.gcd(m, p) != 1:
        raise PreconditionError(f"m={m} must be positive and prime to p")
    if h < 1 or h % p == 0:
        raise PreconditionError(f"no local action with conductor h={h} (p={p})")
    if h % m == 0:
        return LiftingVerdict(True, LiftReason.CYCLIC_CASE, p, m, h)
    if math.gcd(h, m) != 1:
        return LiftingVerdict(False, LiftReason.CONDITION_I_FAILED, p, m, h)
    if (h + 1) % m:
        return LiftingVerdict(False, LiftReason.CONDITION_II_FAILED, p, m, h)
    return LiftingVerdict(True, LiftReason.OK_INJECTIVE, p, m, h)
