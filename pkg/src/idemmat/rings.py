"""Exact scalar rings: Z, F_p, Q, univariate and multivariate polynomials.

A ring is an immutable descriptor that does arithmetic on *payloads*, plain
Python values kept in canonical form:

* ``Integers``: ``int``
* ``PrimeField(p)``: ``int`` in ``[0, p)``
* ``Rationals``: ``fractions.Fraction`` (coprime, positive denominator)
* ``UniPoly(base)``: tuple of ``(exponent, coefficient)`` pairs, ascending,
  zero coefficients never stored
* ``MultiPoly(base, m)``: tuple of ``(exponent_tuple, coefficient)`` pairs
* ``RationalFunctions(poly)``: ``(num, den)`` with ``den`` monic and coprime
  to ``num``; used only as the fraction field of ``UniPoly`` rings

Because payloads are canonical, payload equality is mathematical equality.
``RingValue`` pairs a payload with its ring and overloads the operators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    InvalidArgument,
    ParseError,
    RingMismatch,
    UnsupportedRing,
)

__all__ = [
    "Ring", "Integers", "Rationals", "PrimeField", "UniPoly", "MultiPoly",
    "RationalFunctions", "RingValue", "ZZ", "QQ", "GF", "ring_from_name",
    "ring_arith", "ring_inverse", "euclid_gcd", "gaussian_binomial",
    "idempotent_count", "QCount", "is_prime",
]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for s in small:
        if n % s == 0:
            return n == s
    d, k = n - 1, 0
    while d % 2 == 0:
        d //= 2
        k += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(k - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Common behaviour; subclasses supply the payload arithmetic."""

    is_field = False
    is_euclidean = False

    # -- construction -----------------------------------------------------
    def __call__(self, x) -> RingValue:
        if isinstance(x, RingValue):
            if x.ring != self:
                raise RingMismatch(f"value in {x.ring.name}, expected {self.name}")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return RingValue(self, self.from_int(x))
        if isinstance(x, str):
            return RingValue(self, self.parse(x))
        return RingValue(self, self.convert(x))

    def wrap(self, payload) -> RingValue:
        return RingValue(self, payload)

    def convert(self, x):
        raise InvalidArgument(f"cannot convert {x!r} into {self.name}")

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inverse(a), -k)
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- structure that only some rings have ------------------------------
    def inverse(self, a):
        raise UnsupportedRing(f"{self.name} is not a field")

    def divmod(self, a, b):
        raise UnsupportedRing(f"{self.name} is not a Euclidean domain")

    def norm(self, a) -> int:
        raise UnsupportedRing(f"{self.name} is not a Euclidean domain")

    def associate(self, a):
        """Split ``a = unit * normal``; returns ``(normal, unit)``."""
        raise UnsupportedRing(f"no unit normalization in {self.name}")

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def divides(self, a, b) -> bool:
        """True when ``a | b``."""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.divmod(b, a)[1])

    def exquo(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise InvalidArgument("inexact division")
        return q

    def gcdex(self, a, b):
        """Extended Euclid: ``(g, u, v)`` with ``u*a + v*b = g``, g normalized."""
        if not self.is_euclidean:
            raise UnsupportedRing(f"{self.name} is not a Euclidean domain")
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        t0, t1 = self.zero, self.one
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if self.is_zero(r0):
            return self.zero, self.zero, self.zero
        g, unit = self.associate(r0)
        uinv = self.unit_inverse(unit)
        return g, self.mul(s0, uinv), self.mul(t0, uinv)

    def unit_inverse(self, u):
        return self.inverse(u)

    def fraction_field(self) -> Ring:
        raise UnsupportedRing(f"no fraction field available for {self.name}")

    def embed(self, a):
        """Map a payload into ``self.fraction_field()``."""
        raise UnsupportedRing(f"no fraction field available for {self.name}")


# ---------------------------------------------------------------------------
# Z, Q, F_p
# ---------------------------------------------------------------------------

_INT_RE = re.compile(r"[+-]?\d+\Z")
_RAT_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")


def _strip(text: str) -> str:
    return "".join(text.split())


@dataclass(frozen=True)
class Integers(Ring):
    is_euclidean = True

    @property
    def name(self):
        return "Z"

    def from_int(self, n):
        return int(n)

    def parse(self, text):
        s = _strip(text)
        if not _INT_RE.match(s):
            raise ParseError(f"not an integer: {text!r}", col=1)
        return int(s)

    def format(self, a):
        return str(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Z")
        return divmod(a, b)

    def norm(self, a):
        return abs(a)

    def associate(self, a):
        return (abs(a), -1 if a < 0 else 1)

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inverse(self, u):
        return u

    def fraction_field(self):
        return QQ

    def embed(self, a):
        return Fraction(a)


@dataclass(frozen=True)
class Rationals(Ring):
    is_field = True
    is_euclidean = True

    @property
    def name(self):
        return "Q"

    def from_int(self, n):
        return Fraction(n)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x
        return super().convert(x)

    def parse(self, text):
        s = _strip(text)
        m = _RAT_RE.match(s)
        if not m:
            raise ParseError(f"not a rational: {text!r}", col=1)
        den = int(m.group(2) or 1)
        if den == 0:
            raise ParseError(f"zero denominator: {text!r}", col=1)
        return Fraction(int(m.group(1)), den)

    def format(self, a):
        return str(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inverse(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / a

    def divmod(self, a, b):
        return (self.inverse(b) * a, Fraction(0))

    def norm(self, a):
        return 0

    def associate(self, a):
        return (Fraction(1), a) if a else (Fraction(0), Fraction(1))

    def is_unit(self, a):
        return a != 0

    def fraction_field(self):
        return self

    def embed(self, a):
        return a


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int
    is_field = True
    is_euclidean = True

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidArgument(f"{self.p!r} is not prime")

    @property
    def name(self):
        return f"Fp:{self.p}"

    def from_int(self, n):
        return int(n) % self.p

    def parse(self, text):
        s = _strip(text)
        m = _RAT_RE.match(s)
        if not m:
            raise ParseError(f"not a residue: {text!r}", col=1)
        num = int(m.group(1)) % self.p
        den = int(m.group(2) or 1) % self.p
        if den == 0:
            raise ParseError(f"denominator vanishes mod {self.p}: {text!r}", col=1)
        return num * pow(den, -1, self.p) % self.p

    def format(self, a):
        return str(a)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inverse(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def divmod(self, a, b):
        return (self.mul(a, self.inverse(b)), 0)

    def norm(self, a):
        return 0

    def associate(self, a):
        return (1, a) if a else (0, 1)

    def is_unit(self, a):
        return a != 0

    def fraction_field(self):
        return self

    def embed(self, a):
        return a


ZZ = Integers()
QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# polynomial text
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s+|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^/])")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", col=pos + 1)
        if m.group(1) is not None:
            out.append(("num", m.group(1), pos))
        elif m.group(2) is not None:
            out.append(("var", m.group(2), pos))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), pos))
        pos = m.end()
    return out


def _parse_terms(text, names):
    """Yield ``(sign, num, den, exponents)`` per term; exponents indexed by ``names``."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty scalar", col=1)
    index = {v: i for i, v in enumerate(names)}
    i, terms = 0, []

    def peek():
        return toks[i] if i < len(toks) else ("end", "", len(text))

    while True:
        sign = 1
        kind, val, pos = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif terms:
            raise ParseError(f"expected '+' or '-' at {val!r}", col=pos + 1)
        num, den = 1, 1
        exps = [0] * len(names)
        while True:
            kind, val, pos = peek()
            if kind == "num":
                i += 1
                n = int(val)
                if peek()[:2] == ("op", "/"):
                    i += 1
                    k2, v2, p2 = peek()
                    if k2 != "num":
                        raise ParseError("expected denominator after '/'", col=p2 + 1)
                    i += 1
                    if int(v2) == 0:
                        raise ParseError("zero denominator", col=p2 + 1)
                    den *= int(v2)
                num *= n
            elif kind == "var":
                if val not in index:
                    raise ParseError(f"unknown variable {val!r}", col=pos + 1)
                i += 1
                e = 1
                if peek()[:2] == ("op", "^"):
                    i += 1
                    k2, v2, p2 = peek()
                    if k2 != "num":
                        raise ParseError("expected exponent after '^'", col=p2 + 1)
                    i += 1
                    e = int(v2)
                exps[index[val]] += e
            else:
                raise ParseError(f"expected a factor, got {val or 'end of input'!r}", col=pos + 1)
            if peek()[:2] == ("op", "*"):
                i += 1
                continue
            break
        terms.append((sign, num, den, tuple(exps)))
        if peek()[0] == "end":
            return terms


def _coef_str(base, c, has_monomial):
    s = base.format(c)
    if has_monomial:
        if s == "1":
            return ""
        if s == "-1":
            return "-"
        return s + "*"
    return s


# ---------------------------------------------------------------------------
# sparse polynomial rings
# ---------------------------------------------------------------------------

class _SparsePolyRing(Ring):
    """Shared arithmetic for ``UniPoly``/``MultiPoly``; payload is a sorted
    tuple of ``(key, coef)`` with no zero coefficients."""

    def _canon(self, d):
        z = self.base.is_zero
        return tuple(sorted((k, c) for k, c in d.items() if not z(c)))

    def from_int(self, n):
        c = self.base.from_int(n)
        if self.base.is_zero(c):
            return ()
        return ((self._unit_key, c),)

    def constant(self, c):
        """Payload of the constant polynomial with base payload ``c``."""
        return () if self.base.is_zero(c) else ((self._unit_key, c),)

    @property
    def zero(self):
        return ()

    def is_zero(self, a):
        return not a

    def add(self, a, b):
        d = dict(a)
        badd = self.base.add
        for k, c in b:
            d[k] = badd(d[k], c) if k in d else c
        return self._canon(d)

    def neg(self, a):
        bneg = self.base.neg
        return tuple((k, bneg(c)) for k, c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        d = {}
        badd, bmul, kmul = self.base.add, self.base.mul, self._kmul
        for k1, c1 in a:
            for k2, c2 in b:
                k = kmul(k1, k2)
                c = bmul(c1, c2)
                d[k] = badd(d[k], c) if k in d else c
        return self._canon(d)

    def scale(self, a, c):
        """Multiply by a base-ring scalar payload."""
        bmul = self.base.mul
        return self._canon({k: bmul(v, c) for k, v in a})

    def map_coeffs(self, a, f, target):
        return target._canon({k: f(c) for k, c in a})

    def coeff(self, a, key):
        for k, c in a:
            if k == key:
                return c
        return self.base.zero

    def parse(self, text):
        d = {}
        for sign, num, den, exps in _parse_terms(text, self.names):
            c = self.base.parse(f"{num}/{den}") if den != 1 else self.base.from_int(num)
            if sign < 0:
                c = self.base.neg(c)
            k = self._key_from_exps(exps)
            d[k] = self.base.add(d[k], c) if k in d else c
        return self._canon(d)

    def format(self, a):
        if not a:
            return "0"
        parts = []
        for k, c in sorted(a, key=lambda kc: self._display_key(kc[0]), reverse=True):
            mono = self._mono_str(k)
            s = _coef_str(self.base, c, bool(mono)) + mono
            if parts and not s.startswith("-"):
                s = "+" + s
            parts.append(s)
        return "".join(parts)

    def is_unit(self, a):
        return (len(a) == 1 and a[0][0] == self._unit_key and self.base.is_unit(a[0][1]))


@dataclass(frozen=True)
class UniPoly(_SparsePolyRing):
    """R[x] over a coefficient ring; Euclidean when the base is a field."""

    base: Ring
    var: str = "x"
    _unit_key = 0

    @property
    def names(self):
        return (self.var,)

    @property
    def is_euclidean(self):
        return self.base.is_field

    @property
    def name(self):
        if self.var == "x":
            if isinstance(self.base, Integers):
                return "Zx"
            if isinstance(self.base, Rationals):
                return "Qx"
            if isinstance(self.base, PrimeField):
                return f"Fpx:{self.base.p}"
        return f"{self.base.name}[{self.var}]"

    @staticmethod
    def _kmul(a, b):
        return a + b

    @staticmethod
    def _key_from_exps(exps):
        return exps[0]

    @staticmethod
    def _display_key(k):
        return k

    def _mono_str(self, k):
        if k == 0:
            return ""
        return self.var if k == 1 else f"{self.var}^{k}"

    def convert(self, x):
        if isinstance(x, dict):
            return self._canon({int(k): self.base(v).payload for k, v in x.items()})
        if isinstance(x, (list, tuple)):
            # dense coefficient list, constant term first
            return self._canon({i: self.base(v).payload for i, v in enumerate(x)})
        return super().convert(x)

    def degree(self, a) -> int:
        return a[-1][0] if a else -1

    def lc(self, a):
        return a[-1][1] if a else self.base.zero

    def monomial(self, e, c):
        return () if self.base.is_zero(c) else ((e, c),)

    def divmod(self, a, b):
        if not self.base.is_field:
            raise UnsupportedRing(f"{self.name} is not a Euclidean domain")
        if not b:
            raise DivisionByZero(f"division by zero in {self.name}")
        base = self.base
        db, inv_lc = self.degree(b), base.inverse(self.lc(b))
        q, r = {}, a
        while r and self.degree(r) >= db:
            e = self.degree(r) - db
            c = base.mul(self.lc(r), inv_lc)
            q[e] = c
            r = self.sub(r, self.mul(((e, c),), b))
        return self._canon(q), r

    def norm(self, a):
        return self.degree(a)

    def associate(self, a):
        if not a:
            return (), self.one
        lc = self.lc(a)
        if self.base.is_field:
            return self.scale(a, self.base.inverse(lc)), ((0, lc),)
        if isinstance(self.base, Integers) and lc < 0:
            return self.neg(a), ((0, -1),)
        return a, self.one

    def unit_inverse(self, u):
        return ((0, self.base.unit_inverse(u[0][1])),)

    def fraction_field(self):
        return RationalFunctions(UniPoly(self.base.fraction_field(), self.var))

    def embed(self, a):
        target = self.fraction_field().poly
        return (self.map_coeffs(a, self.base.embed, target), target.one)


@dataclass(frozen=True)
class MultiPoly(_SparsePolyRing):
    """K[x1..xm]; keys are exponent tuples, display order is grlex."""

    base: Ring
    num_vars: int
    var_names: tuple = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise InvalidArgument("MultiPoly needs at least one variable")
        if self.var_names and len(self.var_names) != self.num_vars:
            raise InvalidArgument("var_names length must equal num_vars")

    @property
    def names(self):
        return self.var_names or tuple(f"x{i + 1}" for i in range(self.num_vars))

    @property
    def _unit_key(self):
        return (0,) * self.num_vars

    @property
    def name(self):
        return f"{self.base.name}[{','.join(self.names)}]"

    @staticmethod
    def _kmul(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def _key_from_exps(exps):
        return exps

    @staticmethod
    def _display_key(k):
        return (sum(k), k)

    def _mono_str(self, k):
        out = []
        for v, e in zip(self.names, k):
            if e == 1:
                out.append(v)
            elif e > 1:
                out.append(f"{v}^{e}")
        return "*".join(out)

    def convert(self, x):
        if isinstance(x, dict):
            return self._canon({tuple(k): self.base(v).payload for k, v in x.items()})
        return super().convert(x)

    def variable(self, i):
        k = [0] * self.num_vars
        k[i] = 1
        return ((tuple(k), self.base.one),)


@dataclass(frozen=True)
class RationalFunctions(Ring):
    """Fraction field K(x) of a univariate polynomial ring over a field."""

    poly: UniPoly
    is_field = True
    is_euclidean = True

    def __post_init__(self):
        if not self.poly.base.is_field:
            raise UnsupportedRing("RationalFunctions needs field coefficients")

    @property
    def name(self):
        return f"Frac({self.poly.name})"

    def _norm(self, num, den):
        P = self.poly
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return ((), P.one)
        g = P.gcdex(num, den)[0]
        if not P.is_one(g):
            num, den = P.exquo(num, g), P.exquo(den, g)
        lc = P.lc(den)
        if not P.base.is_one(lc):
            inv = P.base.inverse(lc)
            num, den = P.scale(num, inv), P.scale(den, inv)
        return (num, den)

    def from_int(self, n):
        return (self.poly.from_int(n), self.poly.one)

    def convert(self, x):
        if isinstance(x, RingValue) and x.ring == self.poly:
            return (x.payload, self.poly.one)
        return super().convert(x)

    def parse(self, text):
        s = text.strip()
        if s.startswith("(") and ")/(" in s and s.endswith(")"):
            a, b = s[1:-1].split(")/(", 1)
            return self._norm(self.poly.parse(a), self.poly.parse(b))
        return (self.poly.parse(s), self.poly.one)

    def format(self, a):
        num, den = a
        if self.poly.is_one(den):
            return self.poly.format(num)
        return f"({self.poly.format(num)})/({self.poly.format(den)})"

    def is_zero(self, a):
        return not a[0]

    def add(self, a, b):
        P = self.poly
        if a[1] == b[1]:
            return self._norm(P.add(a[0], b[0]), a[1])
        return self._norm(P.add(P.mul(a[0], b[1]), P.mul(b[0], a[1])), P.mul(a[1], b[1]))

    def neg(self, a):
        return (self.poly.neg(a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        P = self.poly
        if not a[0] or not b[0]:
            return ((), P.one)
        return self._norm(P.mul(a[0], b[0]), P.mul(a[1], b[1]))

    def inverse(self, a):
        if not a[0]:
            raise DivisionByZero("0 has no inverse")
        return self._norm(a[1], a[0])

    def divmod(self, a, b):
        return (self.mul(a, self.inverse(b)), self.zero)

    def norm(self, a):
        return 0

    def associate(self, a):
        return (self.one, a) if a[0] else (self.zero, self.one)

    def is_unit(self, a):
        return bool(a[0])

    def fraction_field(self):
        return self

    def embed(self, a):
        return a


_NAME_RE = re.compile(r"(Z|Q|Zx|Qx|Fp:(\d+)|Fpx:(\d+))\Z")


def ring_from_name(name: str) -> Ring:
    """Parse a ring name of the matrix text format: Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ParseError(f"unknown ring {name!r}; expected Z, Q, Fp:<p>, Zx, Fpx:<p> or Qx")
    kind = m.group(1)
    try:
        if kind == "Z":
            return ZZ
        if kind == "Q":
            return QQ
        if kind == "Zx":
            return UniPoly(ZZ)
        if kind == "Qx":
            return UniPoly(QQ)
        if m.group(2):
            return PrimeField(int(m.group(2)))
        return UniPoly(PrimeField(int(m.group(3))))
    except InvalidArgument as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# values
# ---------------------------------------------------------------------------

class RingValue:
    """An immutable element of ``ring`` in canonical form."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, key, value):
        raise AttributeError("RingValue is immutable")

    def _coerce(self, other):
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other.payload
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.add(self.payload, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.sub(self.payload, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.sub(o, self.payload))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.mul(self.payload, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.ring, self.ring.neg(self.payload))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.mul(self.payload, self.ring.inverse(o)))

    def __pow__(self, k: int):
        return RingValue(self.ring, self.ring.pow(self.payload, k))

    def __eq__(self, other):
        if isinstance(other, RingValue):
            return self.ring == other.ring and self.payload == other.payload
        if isinstance(other, int):
            return self.payload == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __bool__(self):
        return not self.ring.is_zero(self.payload)

    def inverse(self) -> RingValue:
        return RingValue(self.ring, self.ring.inverse(self.payload))

    def __str__(self):
        return self.ring.format(self.payload)

    def __repr__(self):
        return f"RingValue({self.ring.name}, {self.ring.format(self.payload)!r})"


def _same_ring(x: RingValue, y: RingValue):
    if x.ring != y.ring:
        raise RingMismatch(f"{x.ring.name} vs {y.ring.name}")
    return x.ring


def ring_arith(op: str, x: RingValue, y: RingValue | None = None) -> RingValue:
    """Dispatch ``add``/``sub``/``mul``/``neg``; ``neg`` ignores ``y``."""
    if op == "neg":
        return -x
    if y is None:
        raise InvalidArgument(f"{op} needs two operands")
    ring = _same_ring(x, y)
    try:
        f = {"add": ring.add, "sub": ring.sub, "mul": ring.mul}[op]
    except KeyError:
        raise InvalidArgument(f"unknown operation {op!r}") from None
    return RingValue(ring, f(x.payload, y.payload))


def ring_inverse(x: RingValue) -> RingValue:
    if not x.ring.is_field:
        raise UnsupportedRing(f"{x.ring.name} is not a field")
    return x.inverse()


def euclid_gcd(x: RingValue, y: RingValue):
    """Normalized gcd with Bezout witnesses: ``(g, u, v)``, ``u*x + v*y == g``."""
    ring = _same_ring(x, y)
    g, u, v = ring.gcdex(x.payload, y.payload)
    return ring.wrap(g), ring.wrap(u), ring.wrap(v)


# ---------------------------------------------------------------------------
# q-counting
# ---------------------------------------------------------------------------

def _check_nrq(n, r, q):
    for label, v in (("n", n), ("r", r), ("q", q)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidArgument(f"{label} must be an integer")
    if n < 0 or r < 0:
        raise InvalidArgument("n and r must be nonnegative")
    if r > n:
        raise InvalidArgument(f"r={r} exceeds n={n}")
    if q < 2:
        raise InvalidArgument("q must be at least 2")


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^n."""
    _check_nrq(n, r, q)
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def idempotent_count(n: int, r: int, q: int) -> int:
    """Number of rank-r idempotents in M_n(F_q): [n r]_q * q^(r(n-r))."""
    return gaussian_binomial(n, r, q) * q ** (r * (n - r))


@dataclass(frozen=True)
class QCount:
    n: int
    r: int
    q: int

    def __post_init__(self):
        _check_nrq(self.n, self.r, self.q)

    @property
    def subspaces(self) -> int:
        return gaussian_binomial(self.n, self.r, self.q)

    @property
    def idempotents(self) -> int:
        return idempotent_count(self.n, self.r, self.q)
