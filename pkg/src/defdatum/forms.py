"""Differential forms f(z) dz on the projective line over F_{p^d}.

Points are either field elements or the sentinel :data:`INF`.  Everything
here is exact; logarithmicity is decided without splitting the
denominator, so only the witness ``g`` and type extraction need the poles to
be rational.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import (
    FieldSpec,
    FqElement,
    GF,
    Polynomial,
    RationalFunction,
    is_linear_power,
    poly_gcd,
    polynomial_from_list,
    roots_in_field,
)
from .errors import (
    ExtendFieldError,
    FieldError,
    InconsistencyError,
    NotEquivariantError,
    NotLogarithmicError,
    PreconditionError,
)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Point = Union[FqElement, _Infinity]


class DifferentialForm:
    """omega = f dz with f a nonzero reduced rational function."""

    __slots__ = ("f",)

    def __init__(self, f: RationalFunction):
        if f.is_zero():
            raise PreconditionError("the zero form is not a DifferentialForm")
        self.f = f

    @classmethod
    def from_polys(cls, num: Polynomial, den: Polynomial) -> "DifferentialForm":
        return cls(RationalFunction(num, den))

    @property
    def field(self) -> FieldSpec:
        return self.f.field

    @property
    def num(self) -> Polynomial:
        return self.f.num

    @property
    def den(self) -> Polynomial:
        return self.f.den

    def __eq__(self, other):
        return isinstance(other, DifferentialForm) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __mul__(self, c):
        return DifferentialForm(self.f * c)

    __rmul__ = __mul__

    def __add__(self, other: "DifferentialForm"):
        return DifferentialForm(self.f + other.f)

    def __repr__(self):
        return f"{self.f} dz"

    def to_json(self) -> dict:
        F = self.field
        return {
            "p": F.p,
            "d": F.d,
            "modulus": list(F.modulus),
            "num": self.num.to_list(),
            "den": self.den.to_list(),
        }

    @classmethod
    def from_json(cls, obj) -> "DifferentialForm":
        if isinstance(obj, str):
            obj = json.loads(obj)
        F = GF(obj["p"], obj.get("d", 1))
        if "modulus" in obj and tuple(obj["modulus"]) != F.modulus:
            F = FieldSpec(obj["p"], obj.get("d", 1), obj["modulus"])
        return cls.from_polys(
            polynomial_from_list(F, obj["num"]), polynomial_from_list(F, obj["den"])
        )


@dataclass(frozen=True)
class EquivariantContext:
    """sigma: z -> zeta z of order m acting on a field containing zeta."""

    field: FieldSpec
    m: int
    zeta: FqElement

    def __post_init__(self):
        m, F = self.m, self.field
        if m < 1 or m % F.p == 0:
            raise FieldError(f"m={m} must be positive and prime to p={F.p}")
        z = self.zeta
        if z ** m != 1 or any(z ** j == 1 for j in range(1, m)):
            raise FieldError(f"{z} is not a primitive {m}-th root of unity")

    @classmethod
    def for_field(cls, field: FieldSpec, m: int = 1) -> "EquivariantContext":
        return cls(field, m, field.root_of_unity(m))


def point_json(x):
    """Wire value of a point: "inf", an int over F_p, or a digit list."""
    if x is None:
        return None
    if x is INF:
        return "inf"
    F = x.field
    return x.code if F.d == 1 else F.digits(x.code)


@dataclass
class GoodnessReport:
    is_good: bool
    zero_location: Optional[Point] = None
    conductor_h: Optional[int] = None
    primitive: Optional[bool] = None
    exponent_c: Optional[int] = None
    type: Optional[object] = None
    zero_count: int = 0

    def to_json(self) -> dict:
        loc = self.zero_location
        return {
            "good": self.is_good,
            "zero": point_json(loc),
            "conductor": self.conductor_h,
            "primitive": self.primitive,
            "c": self.exponent_c,
            "type": None if self.type is None else list(self.type.entries),
        }


def d_log(g: RationalFunction) -> DifferentialForm:
    """dg/g."""
    if g.is_zero():
        raise PreconditionError("d log of the zero function")
    dg = g.derivative()
    if dg.is_zero():
        raise PreconditionError("dg/g vanishes (g is a p-th power or constant)")
    return DifferentialForm(dg / g)


def ord_at(omega: DifferentialForm, point: Point) -> int:
    if point is INF:
        return omega.den.degree - omega.num.degree - 2
    a = FqElement(omega.field, omega.field.code(point))
    return omega.num.multiplicity(a) - omega.den.multiplicity(a)


def residue_at(omega: DifferentialForm, alpha) -> FqElement:
    F = omega.field
    a = F.code(alpha)
    o = ord_at(omega, FqElement(F, a))
    if o >= 0:
        return F.zero
    if o < -1:
        raise PreconditionError(f"pole of order {-o} at {alpha}")
    lin = Polynomial._raw(F, [F.neg(a), 1])
    d0 = omega.den.exact_div(lin)
    return FqElement(F, F.div(omega.num.eval_code(a), d0.eval_code(a)))


def residue_at_infinity(omega: DifferentialForm) -> FqElement:
    """Res_inf(f dz) = -(coefficient of 1/z in the expansion of f at inf)."""
    F = omega.field
    _, rem = divmod(omega.num, omega.den)
    if rem.is_zero() or rem.degree != omega.den.degree - 1:
        return F.zero
    return FqElement(F, F.neg(F.div(rem.lc, omega.den.lc)))


def divisor(omega: DifferentialForm) -> dict:
    """{point: ord} over the rational points where ord != 0; raises
    ExtendFieldError if some zero or pole is not rational."""
    out = {}
    for poly, sign in ((omega.num, 1), (omega.den, -1)):
        if poly.degree > 0:
            roots, rest = roots_in_field(poly)
            if rest:
                raise ExtendFieldError("divisor is not rational over the working field")
            for a, e in roots:
                out[a] = sign * e
    o = ord_at(omega, INF)
    if o:
        out[INF] = o
    return out


@dataclass
class LogarithmicResult:
    is_logarithmic: bool
    witness: Optional[RationalFunction] = None
    lift: Optional[dict] = None

    def __bool__(self):
        return self.is_logarithmic


def is_logarithmic(omega: DifferentialForm, witness: bool = True) -> LogarithmicResult:
    """Decide whether omega = dg/g.

    Simple poles only, and every residue N(a)/D'(a) in F_p; the latter is
    tested for all roots of D at once as D | N^p D' - N D'^p.  With
    ``witness=True`` the poles must be rational and g = prod (z - z_i)^{A_i}
    is returned with A_i the lift of the residue in (-p/2, p/2].
    """
    F = omega.field
    num, den = omega.num, omega.den
    if num.degree > den.degree - 1:
        return LogarithmicResult(False)
    if den.degree > 0:
        dden = den.derivative()
        if dden.is_zero() or poly_gcd(den, dden).degree > 0:
            return LogarithmicResult(False)
        if not (F.d == 1 and _splits(den)):
            p = F.p
            lhs = num.powmod(p, den) * dden - num * dden.powmod(p, den)
            if not (lhs % den).is_zero():
                return LogarithmicResult(False)
    if not witness:
        return LogarithmicResult(True)
    if den.degree <= 0:
        return LogarithmicResult(True, RationalFunction.const(F, 1), {})
    roots, rest = roots_in_field(den)
    if rest:
        raise ExtendFieldError(
            f"denominator has {rest} poles outside {F}; extend the field for a witness"
        )
    g = RationalFunction.const(F, 1)
    lifts = {}
    for a, _ in roots:
        A = residue_at(omega, a).centered_lift()
        lifts[a] = A
        g = g * RationalFunction(Polynomial.from_roots(F, [a])) ** A
    return LogarithmicResult(True, g, lifts)


def equivariance_exponent(omega: DifferentialForm, ctx: EquivariantContext) -> Optional[int]:
    """c in Z/m with zeta f(zeta z) = zeta^c f(z), or None."""
    if ctx.m == 1:
        return 0
    F = omega.field
    if ctx.field != F:
        raise FieldError("context and form live over different fields")
    zeta = ctx.zeta
    pulled = omega.f.scale_var(zeta) * zeta
    if pulled.den != omega.den:
        return None
    num, ref = pulled.num, omega.num
    lam = F.div(num.lc, ref.lc)
    if num != ref * FqElement(F, lam):
        return None
    for c in range(ctx.m):
        if (zeta**c).code == lam:
            return c
    return None


def moebius_to_infinity(omega: DifferentialForm, alpha) -> DifferentialForm:
    """Pull omega back along z = alpha + 1/w, which moves z = alpha to w = inf."""
    F = omega.field
    a = FqElement(F, F.code(alpha))
    w = Polynomial.x(F)
    lin = w * a + 1  # alpha*w + 1

    def sub(poly: Polynomial) -> tuple[Polynomial, int]:
        n = poly.degree
        if n <= 0:
            return poly, 0
        acc = Polynomial._raw(F, [])
        for i, c in enumerate(poly.coeffs):
            if c:
                acc = acc + lin**i * Polynomial.monomial(F, n - i, FqElement(F, c))
        return acc, n

    N, dn = sub(omega.num)
    D, dd = sub(omega.den)
    # f(alpha + 1/w) = w^(dd-dn) N(w)/D(w); dz = -dw/w^2
    shift = dd - dn - 2
    if shift >= 0:
        return DifferentialForm(RationalFunction(-N * Polynomial.monomial(F, shift), D))
    return DifferentialForm(RationalFunction(-N, D * Polynomial.monomial(F, -shift)))


def _zero_structure(omega: DifferentialForm):
    """(location, order, count) of the zeros; count 2 stands for 'at least 2'."""
    o_inf = ord_at(omega, INF)
    num = omega.num
    if num.degree <= 0:
        if o_inf > 0:
            return INF, o_inf, 1
        return None, None, 0
    lp = is_linear_power(num)
    if lp is None:
        return None, None, 2
    alpha, e = lp
    if o_inf > 0:
        return None, None, 2
    return alpha, e, 1


def goodness(omega: DifferentialForm, ctx: EquivariantContext) -> GoodnessReport:
    """Is omega a good deformation datum for ctx; if so its conductor.

    Raises NotLogarithmicError / NotEquivariantError when omega is not a
    deformation datum at all.  The necessary conditions on (p, m, h) are
    re-checked on every good result and a violation raises
    InconsistencyError.
    """
    if not is_logarithmic(omega, witness=False):
        raise NotLogarithmicError(f"{omega} is not logarithmic")
    c = equivariance_exponent(omega, ctx)
    if c is None:
        raise NotEquivariantError(f"{omega} is not an eigenvector for z -> {ctx.zeta} z")
    loc, order, count = _zero_structure(omega)
    if count == 0:
        # Exactly two simple poles and no zero: conductor 1, carried by a
        # sigma-fixed point that is not a pole.
        loc = _conductor_one_point(omega, ctx)
        order, count = 0, (0 if loc is None else 1)
    if count != 1:
        return GoodnessReport(False, exponent_c=c, zero_count=count)
    h = order + 1
    m, p = ctx.m, omega.field.p
    primitive = math.gcd(h, m) == 1
    if h % p == 0:
        raise InconsistencyError(f"conductor {h} divisible by p={p}")
    if m > 1:
        if loc is not INF and loc.code != 0:
            raise InconsistencyError(f"unique zero at non-fixed point {loc}")
        expected = (-c) % m if loc is INF else c % m
        if h % m != expected:
            raise InconsistencyError(f"h={h} incompatible with exponent c={c} (m={m})")
    if primitive:
        if (p - 1) % m or (h + 1) % m:
            raise InconsistencyError(f"primitive datum with h={h}, m={m}, p={p}")
    elif h % m or c % m:
        raise InconsistencyError(f"non-primitive datum with h={h}, m={m}, c={c}")
    rtype = None
    if loc is INF and (m == 1 or (p - 1) % m == 0):
        try:
            rtype = extract_type(omega, ctx)
        except ExtendFieldError:
            rtype = None
    return GoodnessReport(True, loc, h, primitive, c, rtype, 0 if h == 1 else 1)


def _conductor_one_point(omega: DifferentialForm, ctx: EquivariantContext) -> Optional[Point]:
    if ord_at(omega, INF) == 0:
        return INF
    F = omega.field
    candidates = [0] if ctx.m > 1 else range(F.q)
    for a in candidates:
        if omega.den.eval_code(a) != 0:
            return FqElement(F, a)
    return None


def pole_orbits(poles: list[FqElement], ctx: EquivariantContext) -> list[list[FqElement]]:
    """Partition of the poles into sigma-orbits, each sorted, orbits ordered by
    their minimal element."""
    remaining = set(poles)
    orbits = []
    for a in sorted(poles, key=lambda x: x.code):
        if a not in remaining:
            continue
        orb = {a * ctx.zeta**j for j in range(ctx.m)}
        if not orb <= remaining:
            raise InconsistencyError("pole set is not sigma-stable")
        remaining -= orb
        orbits.append(sorted(orb, key=lambda x: x.code))
    return orbits


def residue_counts(omega: DifferentialForm) -> dict:
    """{a: number of finite poles with residue a} for a logarithmic omega.

    Computed over the coding field as deg gcd(D, N - a D'), so the poles
    need not be rational.
    """
    F = omega.field
    num, den = omega.num, omega.den
    if den.degree <= 0:
        return {}
    dden = den.derivative()
    out = {}
    for a in range(1, F.p):
        k = poly_gcd(den, num - dden * FqElement(F, a)).degree
        if k > 0:
            out[a] = k
    if sum(out.values()) != den.degree:
        raise NotLogarithmicError("some residue lies outside F_p")
    return out


def extract_type(omega: DifferentialForm, ctx: EquivariantContext):
    """Canonical residue type of a good omega whose zero sits at infinity.

    Each sigma-orbit of poles carries the residues {zeta^j a}, so the type
    follows from the residue counts alone; poles need not be rational.
    """
    from .types import ResidueType, canonicalize

    if ord_at(omega, INF) < 0:
        raise PreconditionError("infinity is a pole; move the zero there first")
    F, m, p = omega.field, ctx.m, omega.field.p
    counts = residue_counts(omega)
    entries = []
    if m > 1 and omega.den.eval_code(0) == 0:
        # 0 is a pole forming an orbit on its own
        a0 = residue_at(omega, F.zero).code
        entries.append(a0)
        counts[a0] -= 1
    if m > 1:
        # Res at zeta*z equals zeta^c Res at z, so an orbit carries the
        # residues zeta^(cj) a, j = 0..m-1.
        c = equivariance_exponent(omega, ctx)
        if c is None:
            raise NotEquivariantError(f"{omega} is not an eigenvector for z -> {ctx.zeta} z")
        u = (ctx.zeta**c).code
        if u >= p:
            raise PreconditionError("zeta^c is not in the prime field; the type is undefined")
        for a in range(1, p):
            orbit = [a * pow(u, j, p) % p for j in range(m)]
            if a != min(orbit):
                continue
            total = sum(counts.get(b, 0) for b in set(orbit))
            per = Counter(orbit)
            if total % m or any(counts.get(b, 0) != per[b] * total // m for b in per):
                raise InconsistencyError("residues are not equidistributed on sigma-orbits")
            entries.extend([a] * (total // m))
    else:
        for a, k in counts.items():
            entries.extend([a] * k)
    return canonicalize(ResidueType(p, m, tuple(entries)))


def _splits(f: Polynomial) -> bool:
    """Whether the squarefree f has all its roots in its field."""
    x = Polynomial.x(f.field)
    return ((x.powmod(f.field.q, f) - x) % f).is_zero() if f.degree > 0 else True


BRANCH_POINTS = (0, 1, INF)


@dataclass
class RamificationPortrait:
    """Fibers of a rational function over 0, 1 and infinity.

    ``fibers[c]`` lists (point, index) pairs; the point is ``None`` for a
    geometric point that is not rational over the working field.
    """

    degree: int
    p: int
    fibers: dict = field(default_factory=dict)

    def __post_init__(self):
        for c in BRANCH_POINTS:
            pts = self.fibers.get(c, [])
            if sum(e for _, e in pts) != self.degree:
                raise InconsistencyError(f"indices over {c} do not sum to {self.degree}")
            named = [x for x, _ in pts if x is not None]
            if len(set(named)) != len(named):
                raise InconsistencyError(f"repeated point in the fiber over {c}")

    def indices(self, over) -> list[int]:
        return sorted((e for _, e in self.fibers[over]), reverse=True)

    def index_at(self, over, point) -> Optional[int]:
        for x, e in self.fibers[over]:
            if x is not None and x == point:
                return e
        return None

    def is_split(self) -> bool:
        return all(x is not None for c in BRANCH_POINTS for x, _ in self.fibers[c])

    @property
    def wild(self) -> bool:
        return any(e % self.p == 0 for c in BRANCH_POINTS for _, e in self.fibers[c])

    def ramification_total(self) -> int:
        """Sum of (e - 1) over the three fibers."""
        return sum(e - 1 for c in BRANCH_POINTS for _, e in self.fibers[c])

    def to_json(self) -> dict:
        pt = point_json
        return {
            "degree": self.degree,
            "wild": self.wild,
            "fibers": {
                str(c): [[pt(x), e] for x, e in self.fibers[c]] for c in BRANCH_POINTS
            },
        }
