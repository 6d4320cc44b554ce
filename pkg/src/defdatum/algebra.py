"""Exact arithmetic over F_p and F_{p^d}, univariate polynomials and
reduced rational functions.

Field elements are handled internally as integer *codes*: the coefficient
vector ``(c_0, ..., c_{d-1})`` of an element in the power basis of the
modulus is encoded as ``sum(c_i * p**i)``.  The prime subfield therefore
occupies the codes ``0 .. p-1`` and the integer order on codes is the total
order used for every canonical choice in the package.

:class:`FqElement` is the user-facing wrapper around a code; polynomials
store bare codes for speed.
"""
from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from sympy import factorint, isprime

from .errors import FieldError, MixedFieldError, PreconditionError

# Fields with at most this many elements get log/Zech tables.
TABLE_MAX = 1 << 15

# Degree of the zero polynomial.
DEG_ZERO = float("-inf")


class FieldSpec:
    """The finite field F_{p^d} = F_p[t]/(modulus).

    Use :func:`GF` to obtain cached instances; constructing a ``FieldSpec``
    directly validates the modulus every time.
    """

    def __init__(self, p: int, d: int = 1, modulus: Optional[Sequence[int]] = None):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise FieldError(f"p={p} is not prime")
        if d < 1:
            raise FieldError(f"extension degree must be >= 1, got {d}")
        self.p = p
        self.d = d
        self.q = p**d
        if d == 1:
            self.modulus = (0, 1)
        elif modulus is None:
            self.modulus = _smallest_irreducible(p, d)
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != d + 1 or mod[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {d}")
            if not _is_irreducible(p, mod):
                raise FieldError(f"modulus {mod} is reducible over F_{p}")
            self.modulus = mod
        self._log = self._exp = self._zech = None
        if d == 1:
            self.add = self._add_p
            self.sub = self._sub_p
            self.neg = self._neg_p
            self.mul = self._mul_p
            self.inv = self._inv_p
            self.pow = self._pow_p
        else:
            if self.q <= TABLE_MAX:
                self._build_tables()
                self.add = self._add_t
                self.mul = self._mul_t
                self.inv = self._inv_t
                self.pow = self._pow_t
            else:
                self.add = self._add_v
                self.mul = self._mul_v
                self.inv = self._inv_v
                self.pow = self._pow_v
            self.neg = self._neg_v
            self.sub = self._sub_v

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d}, modulus={list(self.modulus)})"

    # -- codes <-> coefficients ---------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.d):
            a, c = divmod(a, p)
            out.append(c)
        return out

    def from_digits(self, cs: Sequence[int]) -> int:
        p = self.p
        code = 0
        for c in reversed(list(cs)):
            code = code * p + (int(c) % p)
        return code

    def code(self, x) -> int:
        """Code of ``x``: an int (read in the prime subfield), a coefficient
        sequence, or an :class:`FqElement` of this field."""
        if isinstance(x, FqElement):
            if x.field != self:
                raise MixedFieldError(f"element of {x.field} used in {self}")
            return x.code
        if isinstance(x, (int,)) or hasattr(x, "__index__"):
            return int(x) % self.p
        cs = list(x)
        if len(cs) > self.d:
            raise FieldError(f"too many coefficients for {self}: {cs}")
        return self.from_digits(cs)

    def __call__(self, x) -> "FqElement":
        return FqElement(self, self.code(x))

    @property
    def zero(self) -> "FqElement":
        return FqElement(self, 0)

    @property
    def one(self) -> "FqElement":
        return FqElement(self, 1)

    def elements(self):
        """All elements in increasing total order."""
        return [FqElement(self, c) for c in range(self.q)]

    def format(self, a: int) -> str:
        if self.d == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.digits(a)) + "]"

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    # -- prime field ops -------------------------------------------------------
    def _add_p(self, a, b):
        return (a + b) % self.p

    def _sub_p(self, a, b):
        return (a - b) % self.p

    def _neg_p(self, a):
        return (-a) % self.p

    def _mul_p(self, a, b):
        return (a * b) % self.p

    def _inv_p(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def _pow_p(self, a, e):
        if e < 0:
            return pow(self._inv_p(a), -e, self.p)
        return pow(a, e, self.p)

    # -- vector (generic) ops ------------------------------------------------
    def _add_v(self, a, b):
        p = self.p
        out, mult = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * mult
            mult *= p
        return out

    def _neg_v(self, a):
        p = self.p
        out, mult = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * mult
            mult *= p
        return out

    def _sub_v(self, a, b):
        return self.add(a, self._neg_v(b))

    def _mul_v(self, a, b):
        if a == 0 or b == 0:
            return 0
        p, d, mod = self.p, self.d, self.modulus
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(d):
                    prod[k - d + j] -= c * mod[j]
        return self.from_digits(prod[:d])

    def _pow_v(self, a, e):
        if e < 0:
            a, e = self._inv_v(a), -e
        result = 1
        while e:
            if e & 1:
                result = self._mul_v(result, a)
            a = self._mul_v(a, a)
            e >>= 1
        return result

    def _inv_v(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._pow_v(a, self.q - 2)

    # -- table ops -----------------------------------------------------------
    def _build_tables(self):
        q, p = self.q, self.p
        g = self.primitive_element_code()
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_v(x, g)
        zech = [-1] * (q - 1)
        for n, v in enumerate(exp):
            c0 = v % p
            w = v - c0 + (c0 + 1) % p
            zech[n] = log[w] if w else -1
        self._exp, self._log, self._zech = exp, log, zech

    def _add_t(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        qm = self.q - 1
        la = self._log[a]
        t = self._zech[(self._log[b] - la) % qm]
        if t < 0:
            return 0
        return self._exp[(la + t) % qm]

    def _mul_t(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def _inv_t(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def _pow_t(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- derived ops ---------------------------------------------------------
    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        """Inverse of the Frobenius x -> x^p."""
        return self.pow(a, self.q // self.p)

    def order(self, a) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        for ell, mult in factorint(n).items():
            for _ in range(mult):
                if self.pow(a, n // ell) == 1:
                    n //= ell
                else:
                    break
        return n

    def primitive_element_code(self) -> int:
        n = self.q - 1
        primes = list(factorint(n)) if n > 1 else []
        pw = self.pow if self._exp is not None or self.d == 1 else self._pow_v
        for g in range(1, self.q):
            if all(pw(g, n // ell) != 1 for ell in primes):
                return g
        raise FieldError("no primitive element")  # unreachable

    def root_of_unity_code(self, m: int) -> int:
        """Smallest (in the code order) element of exact multiplicative order m."""
        if m < 1 or (self.q - 1) % m:
            raise FieldError(f"no primitive {m}-th root of unity in {self}")
        if m == 1:
            return 1
        primes = list(factorint(m))
        e = (self.q - 1) // m
        for x in range(1, self.q):
            z = self.pow(x, e)
            if all(self.pow(z, m // ell) != 1 for ell in primes):
                break
        else:  # pragma: no cover
            raise FieldError("no root of unity found")
        cands = [self.pow(z, j) for j in range(1, m) if math.gcd(j, m) == 1]
        return min(cands)

    def root_of_unity(self, m: int) -> "FqElement":
        return FqElement(self, self.root_of_unity_code(m))


@lru_cache(maxsize=None)
def GF(p: int, d: int = 1) -> FieldSpec:
    """Cached field F_{p^d} with the deterministic default modulus."""
    return FieldSpec(p, d)


def smallest_field_with_roots_of_unity(p: int, m: int) -> FieldSpec:
    """Smallest F_{p^d} containing a primitive m-th root of unity."""
    if m % p == 0:
        raise FieldError(f"m={m} is not prime to p={p}")
    d = 1
    while (p**d - 1) % m:
        d += 1
    return GF(p, d)


def _is_irreducible(p: int, coeffs: Sequence[int]) -> bool:
    F = GF(p)
    f = Polynomial(F, list(coeffs))
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    x = Polynomial.x(F)
    xp = x
    for _ in range(1, d // 2 + 1):
        xp = xp.powmod(p, f)
        if poly_gcd(xp - x, f).degree > 0:
            return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, d: int) -> tuple:
    for n in range(p**d):
        low = []
        t = n
        for _ in range(d):
            t, c = divmod(t, p)
            low.append(c)
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if _is_irreducible(p, cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {d} over F_{p}")  # unreachable


class FqElement:
    """An element of a :class:`FieldSpec`; immutable and hashable."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", code)

    def __setattr__(self, key, value):
        raise AttributeError("FqElement is immutable")

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise MixedFieldError(f"{self.field} vs {other.field}")
            return other.code
        return self.field.code(other)

    def __add__(self, other):
        return FqElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FqElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FqElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElement(self.field, self.field.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FqElement(self.field, self.field.div(self._other(other), self.code))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FqElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.code(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.d, self.code))

    def __lt__(self, other):
        return self.code < self._other(other)

    def __le__(self, other):
        return self.code <= self._other(other)

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        if self.code >= self.field.p:
            raise ValueError(f"{self} is not in the prime field")
        return self.code

    def lift(self) -> int:
        """Integer lift in [0, p) of a prime-field element."""
        return int(self)

    def centered_lift(self) -> int:
        """Integer lift in (-p/2, p/2]."""
        a = int(self)
        p = self.field.p
        return a - p if a > p // 2 else a

    def __repr__(self):
        return self.field.format(self.code)

    __str__ = __repr__


def _trim(cs: list) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class Polynomial:
    """Univariate polynomial over a :class:`FieldSpec`, coefficients lowest
    degree first, never with trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=(), *, _codes: bool = False):
        self.field = field
        if _codes:
            self.coeffs = _trim(list(coeffs))
        else:
            self.coeffs = _trim([field.code(c) for c in coeffs])

    @classmethod
    def _raw(cls, field, coeffs):
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _trim(coeffs) if coeffs and coeffs[-1] == 0 else tuple(coeffs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, [0, 1])

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, [field.code(c)])

    @classmethod
    def monomial(cls, field, n: int, c=1):
        return cls._raw(field, [0] * n + [field.code(c)])

    @classmethod
    def from_roots(cls, field, roots, mults=None):
        f = cls.const(field, 1)
        mults = mults or [1] * len(roots)
        for r, e in zip(roots, mults):
            f = f * cls._raw(field, [field.neg(field.code(r)), 1]) ** e
        return f

    # -- basic properties ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> FqElement:
        return FqElement(self.field, self.coeffs[i] if 0 <= i < len(self.coeffs) else 0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        fmt = self.field.format
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            s = fmt(c)
            if i == 0:
                terms.append(s)
            else:
                mon = "z" if i == 1 else f"z^{i}"
                terms.append(mon if c == 1 else f"{s}*{mon}")
        return " + ".join(terms)

    def to_list(self) -> list:
        """Wire format: coefficient list lowest degree first."""
        if self.field.d == 1:
            return list(self.coeffs)
        return [self.field.digits(c) for c in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Polynomial.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise MixedFieldError(f"{self.field} vs {other.field}")
            return other
        return Polynomial.const(self.field, other)

    # -- ring ops ------------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        add = self.field.add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Polynomial._raw(self.field, _trim(out))

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial._raw(self.field, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, FqElement) or isinstance(other, int):
            c = self.field.code(other)
            mul = self.field.mul
            return Polynomial._raw(self.field, _trim([mul(c, x) for x in self.coeffs]))
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw(self.field, [])
        F = self.field
        add, mul = F.add, F.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial._raw(F, _trim(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        add, mul, neg = F.add, F.mul, F.neg
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(r) - 1 < db:
            return Polynomial._raw(F, []), self
        inv_lc = F.inv(other.lc)
        b = other.coeffs
        qc = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c:
                c = mul(c, inv_lc)
                qc[k] = c
                nc = neg(c)
                for j in range(db + 1):
                    if b[j]:
                        r[k + j] = add(r[k + j], mul(nc, b[j]))
        return Polynomial._raw(F, _trim(qc)), Polynomial._raw(F, _trim(r[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * FqElement(self.field, self.field.inv(self.lc))

    def derivative(self) -> "Polynomial":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(F.code(i), self.coeffs[i]))
        return Polynomial._raw(F, _trim(out))

    def eval_code(self, a: int) -> int:
        F = self.field
        add, mul = F.add, F.mul
        acc = 0
        for c in reversed(self.coeffs):
            acc = add(mul(acc, a), c)
        return acc

    def __call__(self, a) -> FqElement:
        return FqElement(self.field, self.eval_code(self.field.code(a)))

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial.const(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def scale_var(self, lam) -> "Polynomial":
        """f(lam * z)."""
        F = self.field
        lam = F.code(lam)
        out, pw = [], 1
        for c in self.coeffs:
            out.append(F.mul(c, pw))
            pw = F.mul(pw, lam)
        return Polynomial._raw(F, _trim(out))

    def compose(self, other: "Polynomial") -> "Polynomial":
        result = Polynomial._raw(self.field, [])
        for c in reversed(self.coeffs):
            result = result * other + Polynomial._raw(self.field, [c])
        return result

    def pth_root(self) -> "Polynomial":
        """g with g^p = self; requires the derivative to vanish."""
        F = self.field
        p = F.p
        cs = self.coeffs
        if any(c for i, c in enumerate(cs) if i % p):
            raise ValueError("polynomial is not a p-th power")
        return Polynomial._raw(F, [F.pth_root(cs[i]) for i in range(0, len(cs), p)])

    def multiplicity(self, a) -> int:
        """Order of vanishing at ``a``."""
        if self.is_zero():
            raise ValueError("multiplicity in the zero polynomial")
        F = self.field
        a = F.code(a)
        lin = Polynomial._raw(F, [F.neg(a), 1])
        f, e = self, 0
        while True:
            q, r = divmod(f, lin)
            if not r.is_zero():
                return e
            f, e = q, e + 1


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero only if both inputs are zero)."""
    b = a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Pairs (g_e, e) with f = lc * prod g_e^e, each g_e monic, squarefree and
    pairwise coprime.  Valid in characteristic p (p-th powers handled)."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    f = f.monic()
    if f.degree == 0:
        return []
    F = f.field
    p = F.p
    out: dict[int, Polynomial] = {}

    def rec(f: Polynomial, mult: int):
        i = 1
        df = f.derivative()
        c = poly_gcd(f, df) if not df.is_zero() else f
        w = f.exact_div(c)
        while w.degree > 0:
            y = poly_gcd(w, c)
            fac = w.exact_div(y)
            if fac.degree > 0:
                key = i * mult
                out[key] = out[key] * fac if key in out else fac
            w = y
            c = c.exact_div(y)
            i += 1
        if c.degree > 0:
            rec(c.pth_root(), mult * p)

    rec(f, 1)
    return [(g, e) for e, g in sorted(out.items())]


class Roots(NamedTuple):
    roots: list
    unsplit_degree: int


def _split_linear_factors(h: Polynomial, rng: random.Random) -> list[int]:
    """Roots (codes) of a monic squarefree h that splits into linear factors."""
    F = h.field
    if h.degree <= 0:
        return []
    if h.degree == 1:
        return [F.neg(F.div(h.coeffs[0], h.coeffs[1]))]
    if F.q <= 64:
        return [a for a in range(F.q) if h.eval_code(a) == 0]
    x = Polynomial.x(F)
    while True:
        a = rng.randrange(F.q)
        if F.p == 2:
            t = Polynomial._raw(F, [0, a]) if a else x
            acc, cur = t % h, t % h
            for _ in range(F.d - 1):
                cur = (cur * cur) % h
                acc = acc + cur
            g = poly_gcd(h, acc)
        else:
            t = (x + Polynomial._raw(F, [a])).powmod((F.q - 1) // 2, h) - 1
            g = poly_gcd(h, t)
        if 0 < g.degree < h.degree:
            return _split_linear_factors(g, rng) + _split_linear_factors(h.exact_div(g), rng)


def roots_in_field(f: Polynomial) -> Roots:
    """Roots of f in its field with multiplicities, sorted by the total order;
    the degree of the part that does not split is reported separately."""
    if f.is_zero():
        raise PreconditionError("roots of the zero polynomial")
    F = f.field
    rng = random.Random(0x5EED)
    x = Polynomial.x(F)
    found = []
    split_deg = 0
    for g, e in squarefree_decomposition(f):
        xq = x.powmod(F.q, g)
        h = poly_gcd(g, xq - x)
        for r in _split_linear_factors(h, rng):
            found.append((FqElement(F, r), e))
        split_deg += h.degree * e
    found.sort(key=lambda t: t[0].code)
    return Roots(found, f.degree - split_deg)


def splitting_degree(f: Polynomial) -> int:
    """Smallest k such that f splits over the degree-k extension of its field
    (lcm of the degrees of the irreducible factors)."""
    if f.is_zero():
        raise PreconditionError("splitting degree of the zero polynomial")
    F = f.field
    x = Polynomial.x(F)
    deg = 1
    for g, _ in squarefree_decomposition(f):
        k = 0
        h = x % g if g.degree > 0 else x
        while g.degree > 0:
            k += 1
            h = h.powmod(F.q, g)
            common = poly_gcd(g, h - x)
            if common.degree > 0:
                deg = math.lcm(deg, k)
                g = g.exact_div(common)
                h = h % g if g.degree > 0 else h
    return deg


def is_linear_power(f: Polynomial) -> Optional[tuple[FqElement, int]]:
    """(alpha, e) if f = c (z - alpha)^e, else None.

    A root of such a polynomial is always rational over the coefficient
    field (the Frobenius is bijective there), so alpha is returned in the
    ambient field.
    """
    if f.is_zero() or f.degree == 0:
        raise PreconditionError("is_linear_power needs a nonconstant polynomial")
    F = f.field
    g = f.monic()
    shift = 1
    while g.derivative().is_zero():
        g = g.pth_root()
        shift *= F.p
    n = g.degree
    if n % F.p == 0:
        # (z - a)^n with p | n would have vanishing derivative
        return None
    alpha = F.neg(F.div(g.coeffs[n - 1], F.code(n)))
    lin = Polynomial._raw(F, [F.neg(alpha), 1])
    if lin**n != g:
        return None
    return FqElement(F, alpha), n * shift


class RationalFunction:
    """num/den with gcd 1 and den monic; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Optional[Polynomial] = None):
        if den is None:
            den = Polynomial.const(num.field, 1)
        den = num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, Polynomial.const(num.field, 1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        c = FqElement(num.field, num.field.inv(den.lc))
        self.num, self.den = num * c, den * c

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    @classmethod
    def const(cls, field, c):
        return cls(Polynomial.const(field, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    @property
    def degree(self) -> int:
        """Degree as a map P^1 -> P^1."""
        return max(self.num.degree, self.den.degree, 0)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise MixedFieldError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.const(self.field, other)

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.num**e, self.den**e)
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def scale_var(self, lam) -> "RationalFunction":
        return RationalFunction(self.num.scale_var(lam), self.den.scale_var(lam))

    def __call__(self, a) -> FqElement:
        F = self.field
        a = F.code(a)
        dv = self.den.eval_code(a)
        if dv == 0:
            raise ZeroDivisionError("pole")
        return FqElement(F, F.div(self.num.eval_code(a), dv))


def ratfn_reduce(num: Polynomial, den: Polynomial) -> RationalFunction:
    return RationalFunction(num, den)


def parse_element(F: FieldSpec, text) -> FqElement:
    """Parse the wire encoding: a decimal residue or a coefficient list."""
    if isinstance(text, (list, tuple)):
        return F(list(text))
    if isinstance(text, int):
        return F(text)
    s = str(text).strip()
    if s.startswith("["):
        return F([int(t) for t in s.strip("[]").split(",") if t.strip()])
    return F(int(s))


def polynomial_from_list(F: FieldSpec, items) -> Polynomial:
    return Polynomial(F, [parse_element(F, c) for c in items])
