"""Explicit good deformation data, exhaustive search by type, and branch
portraits of the associated rational functions.

A configuration of orbit representatives z_1..z_r together with residues
a_1..a_r determines the form

    omega = sum_i m a_i z_i^(m-1) dz / (z^m - z_i^m)

(for m = 1 simply sum_i a_i dz/(z - z_i)).  Writing w_i = z_i^m and
expanding at infinity, omega has its unique zero there, of order m r - 2,
exactly when the moments

    S_k = sum_i a_i z_i^(m-1) w_i^k,   k = 0 .. r-2

vanish and S_(r-1) does not; equivalently the numerator q(z) over the
common denominator is a nonzero constant.  For m = 1 the k = 0 moment is
the residue sum, which is zero by definition of a type, so the moments
k = 1 .. r-1 of the plain z_i are used.  The search evaluates these
moments on whole blocks of candidates at once with numpy.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from sympy import isprime

from .algebra import (
    GF,
    FieldSpec,
    FqElement,
    Polynomial,
    RationalFunction,
    parse_element,
    poly_gcd,
    roots_in_field,
    splitting_degree,
    smallest_field_with_roots_of_unity,
    squarefree_decomposition,
)
from .errors import (
    ExtendFieldError,
    InconsistencyError,
    PreconditionError,
    SearchSpaceError,
)
from .forms import (
    INF,
    DifferentialForm,
    EquivariantContext,
    RamificationPortrait,
    extract_type,
    goodness,
    is_logarithmic,
    point_json,
    residue_at,
)
from .types import ResidueType, canonicalize

DEFAULT_CAP = 10**9
CAP_ENV = "DEFDATUM_MAX_CANDIDATES"
CHUNK = 1 << 18


element_json = point_json


@dataclass(frozen=True)
class PoleConfiguration:
    """Orbit representatives of the poles of an equivariant form."""

    ctx: EquivariantContext
    poles: tuple

    def __post_init__(self):
        F, m = self.ctx.field, self.ctx.m
        poles = tuple(FqElement(F, F.code(z)) for z in self.poles)
        object.__setattr__(self, "poles", poles)
        if not poles:
            raise PreconditionError("a configuration needs at least one pole")
        if m == 1:
            if len(set(poles)) != len(poles):
                raise PreconditionError("poles must be pairwise distinct")
            return
        if any(z.code == 0 for z in poles):
            raise PreconditionError("orbit representatives must be nonzero")
        ws = [z**m for z in poles]
        if len(set(ws)) != len(ws):
            raise PreconditionError("the points zeta^j z_i are not pairwise distinct")

    @property
    def field(self) -> FieldSpec:
        return self.ctx.field

    @property
    def m(self) -> int:
        return self.ctx.m

    @property
    def r(self) -> int:
        return len(self.poles)

    def all_poles(self) -> list[FqElement]:
        zeta = self.ctx.zeta
        return [z * zeta**j for z in self.poles for j in range(self.m)]

    def to_json(self) -> list:
        return [element_json(z) for z in self.poles]

    def __repr__(self):
        return f"PoleConfiguration(m={self.m}, poles={list(self.poles)})"


def _check_residues(config: PoleConfiguration, a: Sequence[int]) -> list[int]:
    a = [int(x) % config.field.p for x in a]
    if len(a) != config.r:
        raise PreconditionError(f"{len(a)} residues for {config.r} poles")
    if any(x == 0 for x in a):
        raise PreconditionError("residues must be nonzero")
    return a


def _pole_denominator(config: PoleConfiguration) -> Polynomial:
    F, m = config.field, config.m
    den = Polynomial.const(F, 1)
    zm = Polynomial.monomial(F, m)
    for z in config.poles:
        den = den * (zm - Polynomial.const(F, z**m))
    return den


def q_polynomial(config: PoleConfiguration, a: Sequence[int]) -> Polynomial:
    """sum_i m a_i z_i^(m-1) prod_(j != i) (z^m - z_j^m)."""
    a = _check_residues(config, a)
    F, m = config.field, config.m
    zm = Polynomial.monomial(F, m)
    factors = [zm - Polynomial.const(F, z**m) for z in config.poles]
    q = Polynomial(F, [])
    for i, (z, ai) in enumerate(zip(config.poles, a)):
        term = Polynomial.const(F, z ** (m - 1) * (m * ai))
        for j, fac in enumerate(factors):
            if j != i:
                term = term * fac
        q = q + term
    return q


def form_from_configuration(config: PoleConfiguration, a: Sequence[int]) -> DifferentialForm:
    """The form with residue a_i at z_i (and zeta^j a_i at zeta^j z_i)."""
    q = q_polynomial(config, a)
    if q.is_zero():
        raise PreconditionError("the residues cancel: the form is zero")
    return DifferentialForm(RationalFunction(q, _pole_denominator(config)))


def m1_view(config: PoleConfiguration, a: Sequence[int]) -> tuple[list[FqElement], list[int]]:
    """All poles and their residues, forgetting the group action."""
    a = _check_residues(config, a)
    p, m = config.field.p, config.m
    if m == 1:
        return list(config.poles), a
    zeta = config.ctx.zeta
    poles, res = [], []
    for z, ai in zip(config.poles, a):
        for j in range(m):
            u = zeta**j
            if u.code >= p:
                raise PreconditionError("zeta is not in the prime field")
            poles.append(z * u)
            res.append(ai * u.code % p)
    return poles, res


# -- explicit constructions ----------------------------------------------------


def _check_pm(p: int, m: int):
    if not isinstance(p, int) or not isprime(p):
        raise PreconditionError(f"p={p} is not prime")
    if m < 1 or m % p == 0:
        raise PreconditionError(f"m={m} must be positive and prime to p={p}")


def construct_nonprimitive(p: int, m: int, h: int) -> DifferentialForm:
    """h dz/(z^(h+1) - z) = dg/g with g = (z^h - 1)/z^h, over the smallest
    field containing the m-th roots of unity."""
    _check_pm(p, m)
    if h < 1 or h % m:
        raise PreconditionError(f"need m | h (m={m}, h={h})")
    if h % p == 0:
        raise PreconditionError(f"p={p} divides h={h}")
    F = smallest_field_with_roots_of_unity(p, m)
    z = Polynomial.x(F)
    return DifferentialForm(RationalFunction(Polynomial.const(F, h), z ** (h + 1) - z))


def _prop1_points(p: int, m: int, r: int) -> list[int]:
    if m == 1:
        order = list(range(1, p)) + [0]
        return order[:r]
    zeta = next(x for x in range(1, p) if pow(x, m, p) == 1 and all(pow(x, j, p) != 1 for j in range(1, m)))
    used: set[int] = set()
    out = []
    for x in range(1, p):
        orbit = {x * pow(zeta, j, p) % p for j in range(m)}
        if orbit & used:
            continue
        used |= orbit
        out.append(x)
        if len(out) == r:
            break
    return out


def construct_prop1(p: int, m: int, h: int) -> DifferentialForm:
    """dz / prod_i (z^m - z_i^m) with r = (h+1)/m points of F_p, the first
    ones (in integer order) whose m-orbits are disjoint."""
    _check_pm(p, m)
    if (p - 1) % m:
        raise PreconditionError(f"m={m} does not divide p-1={p - 1}")
    if not 1 <= h < p:
        raise PreconditionError(f"need 0 < h < p (h={h}, p={p})")
    if (h + 1) % m:
        raise PreconditionError(f"need h = -1 mod m (h={h}, m={m})")
    r = (h + 1) // m
    F = GF(p)
    pts = _prop1_points(p, m, r)
    if len(pts) < r:
        raise PreconditionError(f"not enough disjoint orbits in F_{p}")  # pragma: no cover
    config = PoleConfiguration(EquivariantContext.for_field(F, m), tuple(F(x) for x in pts))
    return DifferentialForm(RationalFunction(Polynomial.const(F, 1), _pole_denominator(config)))


# -- exhaustive search ---------------------------------------------------------


@dataclass
class SearchReport:
    p: int
    m: int
    type: ResidueType
    d: int
    normalization: str
    solutions: list = field(default_factory=list)
    orbit_count: int = 0
    orbit_representatives: list = field(default_factory=list)
    exhaustive: bool = True
    candidates: int = 0
    start_offset: int = 0
    forms: list = field(default_factory=list)
    entries: tuple = ()

    @property
    def raw_count(self) -> int:
        return len(self.solutions)

    def witness(self, config: PoleConfiguration) -> DifferentialForm:
        if self.forms:
            return self.forms[self.solutions.index(config)]
        return form_from_configuration(config, self.entries or self.type.entries)

    def to_json(self, emit_witness: bool = False) -> dict:
        out = {
            "query": {
                "p": self.p,
                "m": self.m,
                "type": list(self.type.entries),
                "entries": list(self.entries or self.type.entries),
                "d": self.d,
                "normalization": self.normalization,
                "start_offset": self.start_offset,
            },
            "solutions": [c.to_json() for c in self.solutions],
            "solution_field_degrees": sorted({c.field.d for c in self.solutions}),
            "raw_count": self.raw_count,
            "orbit_count": self.orbit_count,
            "orbit_representatives": [c.to_json() for c in self.orbit_representatives],
            "exhaustive": self.exhaustive,
            "candidates": self.candidates,
        }
        if emit_witness:
            out["witnesses"] = [self.witness(c).to_json() for c in self.solutions]
        return out


def default_cap() -> int:
    env = os.environ.get(CAP_ENV)
    return int(float(env)) if env else DEFAULT_CAP


class _Tables:
    """Per-field lookup arrays: digits of each code and selected powers."""

    def __init__(self, F: FieldSpec, exponents):
        q = F.q
        self.digits = np.array([F.digits(c) for c in range(q)], dtype=np.int16)
        self.power = {}
        for e in set(exponents):
            tab = [0] * q
            for c in range(q):
                tab[c] = F.pow(c, e) if c else (1 if e == 0 else 0)
            self.power[e] = np.array(tab, dtype=np.int64)


def _moment_plan(m: int, r: int) -> tuple[list[int], int]:
    """Exponents e_k with S_k = sum a_i z_i^(e_k); all but the last must vanish."""
    if m == 1:
        exps = list(range(1, r))
    else:
        exps = [m - 1 + m * k for k in range(r)]
    return exps[:-1], exps[-1]


def _scan_block(lo, hi, *, q, p, m, pinned, nfree, a, tables, zero_exps, last_exp):
    idx = np.arange(lo, hi, dtype=np.int64)
    cols = []
    rem = idx
    for _ in range(nfree):
        rem, c = np.divmod(rem, q)
        cols.append(c)
    cols.reverse()  # first free pole is the most significant digit
    all_cols = [np.full(idx.shape, c, dtype=np.int64) for c in pinned] + cols
    keep = np.ones(idx.shape, dtype=bool)
    if m == 1:
        vals = all_cols
    else:
        for c in cols:
            keep &= c != 0
        vals = [tables.power[m][c] for c in all_cols]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            keep &= vals[i] != vals[j]
    sel = np.nonzero(keep)[0]
    all_cols = [c[sel] for c in all_cols]
    for e in zero_exps:
        if not sel.size:
            break
        acc = np.zeros((sel.size, tables.digits.shape[1]), dtype=np.int64)
        for c, ai in zip(all_cols, a):
            acc += ai * tables.digits[tables.power[e][c]]
        ok = ~np.any(acc % p, axis=1)
        sel = sel[ok]
        all_cols = [c[ok] for c in all_cols]
    if sel.size:
        acc = np.zeros((sel.size, tables.digits.shape[1]), dtype=np.int64)
        for c, ai in zip(all_cols, a):
            acc += ai * tables.digits[tables.power[last_exp][c]]
        ok = np.any(acc % p, axis=1)
        all_cols = [c[ok] for c in all_cols]
    return [tuple(int(x) for x in row) for row in zip(*all_cols)] if all_cols and all_cols[0].size else []


def orbit_key(config: PoleConfiguration, a: Sequence[int]) -> tuple:
    """Invariant of a configuration under the declared symmetries:
    permutations of poles with equal residue, and for m = 1 the affine maps
    z -> u z + v, for m >= 2 the scalings z -> u z and per-pole
    multiplication by powers of zeta."""
    a = _check_residues(config, a)
    F = config.field
    if config.m == 1:
        zs = list(config.poles)
        best = None
        for i, zi in enumerate(zs):
            if a[i] != a[0]:
                continue
            for j, zj in enumerate(zs):
                if j == i or a[j] != a[1]:
                    continue
                inv = (zj - zi).inverse()
                key = tuple(sorted((((z - zi) * inv).code, ak) for z, ak in zip(zs, a)))
                if best is None or key < best:
                    best = key
        return best
    ws = [z**config.m for z in config.poles]
    best = None
    for i, wi in enumerate(ws):
        if a[i] != a[0]:
            continue
        inv = wi.inverse()
        key = tuple(sorted(((w * inv).code, ak) for w, ak in zip(ws, a)))
        if best is None or key < best:
            best = key
    return best


def search_good_deformation(
    p: int,
    m: int,
    a: ResidueType,
    d: int = 1,
    *,
    cap: Optional[int] = None,
    start_offset: int = 0,
    threads: int = 1,
    chunk: int = CHUNK,
    verify: bool = True,
) -> SearchReport:
    """All good data of type a over F_(p^d) up to normalization.

    m = 1 pins z_1 = 0, z_2 = 1; m >= 2 pins z_1 = 1.  The remaining poles
    run over all tuples of field elements in lexicographic order of codes;
    candidate number i (0-based) has the free poles given by the base-q
    digits of i, most significant first.  ``start_offset`` skips the first
    candidates.  Every accepted configuration is re-checked with
    :func:`goodness` and :func:`extract_type`.
    """
    _check_pm(p, m)
    if m > 1 and (p - 1) % m:
        raise PreconditionError(f"m={m} must divide p-1={p - 1}")
    if not isinstance(a, ResidueType):
        a = ResidueType(p, m, tuple(a))
    if (a.p, a.m) != (p, m):
        raise PreconditionError(f"type is for (p={a.p}, m={a.m}), query is (p={p}, m={m})")
    F = GF(p, d)
    q = F.q
    r = a.r
    if m == 1:
        pinned = [0, 1] if r >= 2 else [0]
        norm = "z1=0,z2=1"
    else:
        pinned = [1]
        norm = "z1=1"
    nfree = r - len(pinned)
    total = q**nfree
    if start_offset < 0 or start_offset > total:
        raise PreconditionError(f"start offset {start_offset} outside [0, {total}]")
    cap = default_cap() if cap is None else cap
    todo = total - start_offset
    if todo > cap:
        raise SearchSpaceError(
            f"{todo} candidate tuples over F_{p}^{d} exceed the cap {cap} (set {CAP_ENV} to raise it)"
        )
    canon = canonicalize(a)
    report = SearchReport(p, m, canon, d, norm, exhaustive=start_offset == 0,
                          candidates=todo, start_offset=start_offset, entries=tuple(a.entries))
    if r * m > q:
        return report
    ctx = EquivariantContext.for_field(F, m)
    zero_exps, last_exp = _moment_plan(m, r)
    tables = _Tables(F, zero_exps + [last_exp, m])
    entries = list(a.entries)
    kw = dict(q=q, p=p, m=m, pinned=pinned, nfree=nfree, a=entries, tables=tables,
              zero_exps=zero_exps, last_exp=last_exp)
    blocks = [(lo, min(lo + chunk, total)) for lo in range(start_offset, total, chunk)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _scan_block(*b, **kw), blocks))
    else:
        parts = [_scan_block(*b, **kw) for b in blocks]
    h = m * r - 1
    keys: dict = {}
    for part in parts:
        for codes in part:
            config = PoleConfiguration(ctx, tuple(FqElement(F, c) for c in codes))
            if verify:
                _reverify(config, entries, canon, h)
            report.solutions.append(config)
            k = orbit_key(config, entries)
            if k not in keys:
                keys[k] = config
    report.orbit_count = len(keys)
    report.orbit_representatives = list(keys.values())
    return report


def _monic_polys(F: FieldSpec, r: int):
    """Monic polynomials of degree r over F_p, coefficient tuples low first."""
    p = F.p
    for idx in range(p**r):
        cs = []
        for _ in range(r):
            idx, c = divmod(idx, p)
            cs.append(c)
        yield tuple(cs) + (1,)


def _transform_key(p: int, m: int, C: int, P: tuple) -> tuple:
    """Smallest (C, P) in the orbit of C dz / P(z^m) under z -> u z (+ v for m = 1)
    with u, v in F_p."""
    F = GF(p)
    r = len(P) - 1
    base = Polynomial(F, list(P), _codes=True)
    best = None
    shifts = range(p) if m == 1 else (0,)
    for u in range(1, p):
        um = pow(u, m, p)
        for v in shifts:
            arg = Polynomial(F, [v, um], _codes=True)  # P(u^m x + v)
            Q = base.compose(arg)
            s = pow(um, -r, p)
            Q = Q * s
            C2 = C * u * s % p
            key = (C2, Q.coeffs)
            if best is None or key < best:
                best = key
    return best


def search_prime_field_forms(
    p: int, m: int, a: ResidueType, *, cap: Optional[int] = None, verify: bool = True
) -> SearchReport:
    """Good data of type a whose form is defined over F_p.

    Such a form with its zero at infinity is C dz / P(z^m) with P in F_p[x]
    monic squarefree of degree r (and P(0) != 0 when m >= 2), so the search
    runs over (C, P) and needs no rational poles.  Orbits are taken under
    z -> u z + v (m = 1) or z -> u z (m >= 2) with u, v in F_p.  Each
    solution is also returned as a PoleConfiguration over the splitting
    field of its poles, with representatives chosen to carry the residues
    a_i in order.
    """
    _check_pm(p, m)
    if m > 1 and (p - 1) % m:
        raise PreconditionError(f"m={m} must divide p-1={p - 1}")
    if not isinstance(a, ResidueType):
        a = ResidueType(p, m, tuple(a))
    if (a.p, a.m) != (p, m):
        raise PreconditionError(f"type is for (p={a.p}, m={a.m}), query is (p={p}, m={m})")
    r = a.r
    total = p**r * (p - 1)
    cap = default_cap() if cap is None else cap
    if total > cap:
        raise SearchSpaceError(f"{total} candidate forms exceed the cap {cap} (set {CAP_ENV} to raise it)")
    canon = canonicalize(a)
    norm = "form over F_p; z -> u z + v" if m == 1 else "form over F_p; z -> u z"
    report = SearchReport(p, m, canon, 1, norm, candidates=total, entries=tuple(a.entries))
    F = GF(p)
    ctx = EquivariantContext.for_field(F, m)
    h = m * r - 1
    keys: dict = {}
    for P in _monic_polys(F, r):
        if m > 1 and P[0] == 0:
            continue
        D = Polynomial(F, list(P), _codes=True)
        if m > 1:
            D = D.compose(Polynomial.monomial(F, m))
        dD = D.derivative()
        if dD.is_zero() or poly_gcd(D, dD).degree > 0:
            continue
        base = DifferentialForm(RationalFunction(Polynomial.const(F, 1), D))
        if not is_logarithmic(base, witness=False):
            continue
        t0 = extract_type(base, ctx)
        for C in range(1, p):
            if canonicalize(t0.scaled(C)) != canon:
                continue
            omega = base * C
            if verify:
                rep = goodness(omega, ctx)
                if not rep.is_good or rep.zero_location is not INF or rep.conductor_h != h or rep.type != canon:
                    raise InconsistencyError(f"{omega} passed the filter but goodness gives {rep.to_json()}")
            config = _split_configuration(omega, m, list(a.entries))
            report.solutions.append(config)
            report.forms.append(omega)
            k = _transform_key(p, m, C, P)
            if k not in keys:
                keys[k] = config
    report.orbit_count = len(keys)
    report.orbit_representatives = list(keys.values())
    return report


def _split_configuration(omega: DifferentialForm, m: int, entries: list[int]) -> PoleConfiguration:
    """Orbit representatives of the poles of an F_p-form, over the field
    where they become rational, matched to the residues in ``entries``."""
    p = omega.field.p
    K = GF(p, splitting_degree(omega.den))
    num = Polynomial(K, list(omega.num.coeffs), _codes=True)
    den = Polynomial(K, list(omega.den.coeffs), _codes=True)
    lifted = DifferentialForm(RationalFunction(num, den))
    ctx = EquivariantContext.for_field(K, m)
    roots, _ = roots_in_field(den)
    used: set = set()
    reps = []
    for ai in entries:
        for z, _ in roots:
            if z in used or residue_at(lifted, z).code != ai % p:
                continue
            reps.append(z)
            used |= {z * ctx.zeta**j for j in range(m)}
            break
        else:
            raise InconsistencyError(f"no pole with residue {ai} left in {lifted}")
    return PoleConfiguration(ctx, tuple(reps))


def _reverify(config: PoleConfiguration, a, canon: ResidueType, h: int):
    omega = form_from_configuration(config, a)
    rep = goodness(omega, config.ctx)
    if not rep.is_good or rep.zero_location is not INF or rep.conductor_h != h:
        raise InconsistencyError(f"moment test accepted {config} but goodness gives {rep.to_json()}")
    if rep.type is not None and rep.type != canon:
        raise InconsistencyError(f"{config} has type {rep.type.entries}, expected {canon.entries}")


# -- ramification --------------------------------------------------------------


def _fiber_points(poly: Polynomial, strict: bool) -> list:
    out = []
    for fac, e in squarefree_decomposition(poly):
        roots, rest = roots_in_field(fac)
        out.extend((x, e) for x, _ in roots)
        if rest:
            if strict:
                raise ExtendFieldError(f"fiber has {rest} points outside {poly.field}")
            out.extend((None, e) for _ in range(rest))
    return out


def branch_portrait(g: RationalFunction, strict: bool = True) -> RamificationPortrait:
    """Ramification of g over 0, 1 and infinity.

    With ``strict=False`` non-rational fiber points are kept with location
    ``None``; their indices come from the squarefree decomposition.
    """
    if g.is_constant():
        raise PreconditionError("g is constant")
    N, D = g.num, g.den
    n = g.degree
    fibers = {}
    for c, poly in ((0, N), (1, N - D), (INF, D)):
        pts = _fiber_points(poly, strict)
        if poly.degree < n:
            pts.append((INF, n - max(poly.degree, 0)))
        fibers[c] = pts
    return RamificationPortrait(n, g.field.p, fibers)


def lift_function(poles: Sequence[FqElement], A: Sequence[int]) -> RationalFunction:
    """prod (z - z_i)^(A_i)."""
    F = poles[0].field
    if len(set(poles)) != len(poles):
        raise PreconditionError("poles must be pairwise distinct")
    num = Polynomial.from_roots(F, [z for z, e in zip(poles, A) if e > 0], [e for e in A if e > 0])
    den = Polynomial.from_roots(F, [z for z, e in zip(poles, A) if e < 0], [-e for e in A if e < 0])
    return RationalFunction(num, den)


@dataclass
class BranchCheck:
    ok: bool
    tame: bool
    e_inf: Optional[int]
    h: int
    failures: list = field(default_factory=list)
    portrait: Optional[RamificationPortrait] = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "tame": self.tame,
            "e_inf": self.e_inf,
            "h": self.h,
            "failures": list(self.failures),
            "portrait": None if self.portrait is None else self.portrait.to_json(),
        }


def verify_prop2(poles: Sequence[FqElement], residues: Sequence[int], A: Sequence[int]) -> BranchCheck:
    """Check the branching of g = prod (z - z_i)^(A_i) for a good m = 1
    datum with residues a_i at z_i and its zero at infinity."""
    poles = list(poles)
    F = poles[0].field
    p = F.p
    A = [int(x) for x in A]
    if len(A) != len(poles) or sum(A) or any(x == 0 for x in A):
        raise PreconditionError(f"{A} is not a zero-sum lift for {len(poles)} poles")
    if any((x - res) % p for x, res in zip(A, residues)):
        raise PreconditionError(f"{A} does not lift the residues {list(residues)}")
    h = len(poles) - 1
    g = lift_function(poles, A)
    fails = []
    portrait = branch_portrait(g, strict=False)
    for z, x in zip(poles, A):
        over = 0 if x > 0 else INF
        if portrait.index_at(over, z) != abs(x):
            fails.append(f"index at {z} over {over} is not {abs(x)}")
    N, D = g.num, g.den
    if N.degree != D.degree or N.lc != D.lc:
        fails.append("g(inf) != 1")
        e_inf = None
    else:
        e_inf = portrait.index_at(1, INF)
        if e_inf is None:
            fails.append("inf is not in the fiber over 1")
    tame = e_inf is not None and e_inf == h and e_inf % p != 0
    if e_inf is not None:
        wild_ok = e_inf % p == 0 and min(h, p) <= e_inf < h
        if not (e_inf == h or wild_ok):
            fails.append(f"index {e_inf} at inf is incompatible with h={h}")
    # unramified elsewhere: g' = W/D^2 vanishes only at the poles
    W = N.derivative() * D - N * D.derivative()
    for z in poles:
        lin = Polynomial.from_roots(F, [z])
        while not W.is_zero() and W.multiplicity(z):
            W = W.exact_div(lin)
    if not W.is_constant():
        fails.append("g ramifies away from the poles and infinity")
    if h < p and portrait.wild:
        fails.append("wild ramification although h < p")
    return BranchCheck(not fails, tame, e_inf, h, fails, portrait)


# -- the m = 2 reduction -------------------------------------------------------


def m2_reduce(A: Sequence[int], config: PoleConfiguration) -> RationalFunction:
    """The rational function gt with ((g - 1)/(g + 1))^2 = gt(z^2), where
    g = prod ((z - z_i)/(z + z_i))^(A_i)."""
    if config.m != 2:
        raise PreconditionError("m2_reduce needs an m = 2 configuration")
    F = config.field
    if F.p == 2:
        raise PreconditionError("p must be odd")
    A = [int(x) for x in A]
    if len(A) != config.r or any(x <= 0 for x in A):
        raise PreconditionError(f"need {config.r} positive exponents, got {A}")
    N = Polynomial.const(F, 1)
    D = Polynomial.const(F, 1)
    for z, e in zip(config.poles, A):
        N = N * Polynomial.from_roots(F, [z]) ** e
        D = D * Polynomial.from_roots(F, [-z]) ** e
    top, bot = N - D, N + D
    if top.is_zero() or bot.is_zero():
        raise InconsistencyError("g is identically 1 or -1")
    u = RationalFunction(top * top, bot * bot)
    halves = []
    for poly in (u.num, u.den):
        cs = poly.coeffs
        if any(cs[i] for i in range(1, len(cs), 2)):
            raise InconsistencyError("((g-1)/(g+1))^2 is not even in z")
        halves.append(Polynomial(F, list(cs[0::2]), _codes=True))
    gt = RationalFunction(*halves)
    n = sum(A)
    if gt.degree != n:
        raise InconsistencyError(f"reduced map has degree {gt.degree}, expected {n}")
    return gt


def verify_prop4(gt: RationalFunction, A: Sequence[int], poles: Optional[Sequence] = None) -> BranchCheck:
    """Fiber structure of the reduced map over 0, 1, infinity.

    Over 1: the points z_i^2 (when ``poles`` is given) with indices A_i.
    For n even: over 0 the point inf (index 2r-1), x = 0 (index 1) and
    (n-2r)/2 points of index 2; over inf n/2 points of index 2.  For n odd:
    over 0 the point inf (index 2r-1) and (n-2r+1)/2 points of index 2; over
    inf x = 0 unramified and (n-1)/2 points of index 2.  All indices prime to
    p, and no branching elsewhere (total ramification 2n - 2).
    """
    A = [int(x) for x in A]
    n, r = sum(A), len(A)
    h = 2 * r - 1
    F = gt.field
    p = F.p
    zero = F.zero
    fails = []
    if gt.degree != n:
        fails.append(f"degree {gt.degree} != {n}")
        return BranchCheck(False, False, None, h, fails)
    portrait = branch_portrait(gt, strict=False)
    if portrait.indices(1) != sorted(A, reverse=True):
        fails.append(f"indices over 1 are {portrait.indices(1)}, expected {sorted(A, reverse=True)}")
    if poles is not None:
        for z, x in zip(poles, A):
            z = parse_element(F, z) if not isinstance(z, FqElement) else z
            if portrait.index_at(1, z * z) != x:
                fails.append(f"index at {z * z} over 1 is not {x}")
    e_inf = portrait.index_at(0, INF)

    def expect(over, special: dict, twos: int):
        rest = list(portrait.fibers[over])
        for pt, e in special.items():
            got = portrait.index_at(over, pt)
            if got != e:
                fails.append(f"index at {pt} over {over} is {got}, expected {e}")
            rest = [(x, f) for x, f in rest if not (x is not None and x == pt)]
        idx = sorted(f for _, f in rest)
        if idx != [2] * twos:
            fails.append(f"remaining indices over {over} are {idx}, expected {twos} twos")

    if n % 2 == 0:
        expect(0, {INF: h, zero: 1}, (n - 2 * r) // 2)
        expect(INF, {}, n // 2)
    else:
        expect(0, {INF: h}, (n - 2 * r + 1) // 2)
        expect(INF, {zero: 1}, (n - 1) // 2)
    if portrait.wild:
        fails.append("wild ramification")
    if portrait.ramification_total() != 2 * n - 2:
        fails.append("branched outside 0, 1, inf")
    tame = not portrait.wild
    return BranchCheck(not fails, tame, e_inf, h, fails, portrait)
