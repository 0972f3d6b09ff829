"""Multivariate ideals over Q, Buchberger's algorithm, and variety dimension.

Polynomials are plain dicts ``{exponent tuple: Fraction}`` with no zero
coefficients. A ``MonomialOrder`` turns an exponent tuple into a sort key, so
``max(f, key=order.key)`` is the leading monomial.

The dimension pipeline for the idempotent variety is::

    idempotent_ideal(n) -> buchberger(grlex) -> leading_term_ideal
                        -> monomial_ideal_dimension

The last step uses the fact that the zero set of a monomial ideal is a union
of coordinate subspaces, so its dimension is the number of variables minus a
smallest set of variables meeting the support of every generator.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded, DimensionMismatch, InvalidArgument
from .rings import QQ, MultiPoly, _coef_str

__all__ = [
    "Monomial", "Polynomial", "MonomialOrder", "monomial_compare", "leading_monomial",
    "poly_reduce", "s_polynomial", "IdealBasis", "GroebnerBasis", "buchberger",
    "leading_term_ideal", "monomial_ideal_dimension", "idempotent_ideal",
    "variety_dimension", "VarietyReport", "dimension_report", "format_poly",
    "DEFAULT_PAIR_BUDGET",
]

Monomial = tuple  # exponent vector, one entry per variable
Polynomial = dict  # Monomial -> Fraction

DEFAULT_PAIR_BUDGET = 20_000
_KINDS = ("lex", "grlex", "grevlex")


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` in lex/grlex/grevlex; ``precedence`` lists variable indices from
    most to least significant (empty means 0 > 1 > 2 > ...)."""

    kind: str = "grlex"
    precedence: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidArgument(f"unknown monomial order {self.kind!r}")
        p = tuple(self.precedence)
        if sorted(p) != list(range(len(p))):
            raise InvalidArgument("precedence must be a permutation of 0..m-1")
        object.__setattr__(self, "precedence", p)

    def key(self, m: Monomial):
        """Sort key: a larger key is a larger monomial."""
        e = tuple(m[i] for i in self.precedence) if self.precedence else m
        if self.kind == "lex":
            return e
        if self.kind == "grlex":
            return (sum(e), e)
        return (sum(e), tuple(-x for x in reversed(e)))


def monomial_compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> int:
    """-1, 0 or 1 as ``m1`` is below, equal to, or above ``m2``."""
    if len(m1) != len(m2):
        raise DimensionMismatch(f"monomials of length {len(m1)} and {len(m2)}")
    if order.precedence and len(order.precedence) != len(m1):
        raise DimensionMismatch("order precedence length differs from monomial length")
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


# ---------------------------------------------------------------------------
# monomial and polynomial helpers
# ---------------------------------------------------------------------------

def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _clean(f: Mapping) -> Polynomial:
    return {m: Fraction(c) for m, c in f.items() if c}


def leading_monomial(f: Mapping, order: MonomialOrder) -> Monomial:
    if not f:
        raise InvalidArgument("the zero polynomial has no leading monomial")
    return max(f, key=order.key)


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    c = f[leading_monomial(f, order)]
    return f if c == 1 else {m: v / c for m, v in f.items()}


def _sub_scaled(p: Polynomial, g: Mapping, c: Fraction, shift: Monomial) -> None:
    """In place: ``p -= c * x^shift * g``."""
    for m, v in g.items():
        mm = _mono_mul(m, shift)
        nv = p.get(mm, 0) - c * v
        if nv:
            p[mm] = nv
        else:
            p.pop(mm, None)


def poly_reduce(f: Mapping, basis: Sequence[Mapping], order: MonomialOrder) -> Polynomial:
    """Full multivariate division remainder of ``f`` by ``basis``.

    No term of the result is divisible by a leading monomial of the basis.
    """
    divisors = [(leading_monomial(g, order), g) for g in basis if g]
    divisors = [(lm, g[lm], g) for lm, g in divisors]
    p, r = _clean(f), {}
    key = order.key
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for glm, glc, g in divisors:
            if _mono_divides(glm, lm):
                _sub_scaled(p, g, c / glc, _mono_div(lm, glm))
                break
        else:
            r[lm] = c
            del p[lm]
    return r


def s_polynomial(f: Mapping, g: Mapping, order: MonomialOrder) -> Polynomial:
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    L = _mono_lcm(lf, lg)
    out: Polynomial = {}
    _sub_scaled(out, f, Fraction(-1) / f[lf], _mono_div(L, lf))
    _sub_scaled(out, g, Fraction(1) / g[lg], _mono_div(L, lg))
    return out


def format_poly(f: Mapping, order: MonomialOrder, names: Sequence[str]) -> str:
    """Terms in descending order, scalars in the exact-rings grammar."""
    if not f:
        return "0"
    ring = MultiPoly(QQ, len(names), tuple(names))
    parts = []
    for m in sorted(f, key=order.key, reverse=True):
        mono = ring._mono_str(m)
        s = _coef_str(QQ, f[m], bool(mono)) + mono
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    s = MultiPoly(QQ, len(names), tuple(names))._mono_str(m)
    return s or "1"


# ---------------------------------------------------------------------------
# ideals and bases
# ---------------------------------------------------------------------------

def _default_names(m: int) -> tuple:
    return tuple(f"x{i + 1}" for i in range(m))


@dataclass(frozen=True)
class IdealBasis:
    """Generators over Q; zero polynomials are dropped on construction."""

    generators: tuple
    num_vars: int
    names: tuple = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if isinstance(g, str):
                g = parse_poly(g, self.names or _default_names(self.num_vars))
            g = _clean(g)
            if any(len(m) != self.num_vars for m in g):
                raise DimensionMismatch(f"monomial length differs from num_vars={self.num_vars}")
            if g:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.num_vars))


def parse_poly(text: str, names: Sequence[str]) -> Polynomial:
    ring = MultiPoly(QQ, len(names), tuple(names))
    return dict(ring.parse(text))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis: monic, inter-reduced, sorted by descending leading monomial."""

    order: MonomialOrder
    elements: tuple
    num_vars: int
    names: tuple = ()
    pairs_reduced: int = field(default=0, compare=False)

    def leading_monomials(self) -> list:
        return [leading_monomial(g, self.order) for g in self.elements]

    def reduce(self, f: Mapping) -> Polynomial:
        return poly_reduce(f, self.elements, self.order)

    def contains(self, f: Mapping) -> bool:
        return not self.reduce(f)

    def formatted(self) -> list:
        return [format_poly(g, self.order, self.names) for g in self.elements]


def _chain_skip(i, j, lcm, lms, pending) -> bool:
    """Buchberger's chain criterion for the pair (i, j)."""
    for k, lk in enumerate(lms):
        if k in (i, j) or not _mono_divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _interreduce(G: list, order: MonomialOrder) -> list:
    G = sorted(G, key=lambda g: order.key(leading_monomial(g, order)))
    minimal = []
    for g in G:
        lg = leading_monomial(g, order)
        if not any(_mono_divides(leading_monomial(h, order), lg) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(_monic(poly_reduce(g, others, order), order))
    out.sort(key=lambda g: order.key(leading_monomial(g, order)), reverse=True)
    return out


def buchberger(ideal: IdealBasis, order: MonomialOrder | None = None,
               max_pairs: int | None = DEFAULT_PAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``.

    Pairs are taken smallest least-common-multiple first. Pairs with coprime
    leading monomials, or covered by the chain criterion, are skipped.
    ``max_pairs`` bounds the number of S-polynomials reduced.
    """
    order = order or MonomialOrder("grlex")
    G: list = []
    lms: list = []
    for g in ideal.generators:
        h = poly_reduce(g, G, order)
        if h:
            G.append(_monic(h, order))
            lms.append(leading_monomial(G[-1], order))
    pending: set = set()
    heap: list = []

    def add_pairs(j):
        for i in range(j):
            L = _mono_lcm(lms[i], lms[j])
            pending.add((i, j))
            heapq.heappush(heap, (order.key(L), j, i, L))

    for j in range(len(G)):
        add_pairs(j)
    reduced = 0
    while heap:
        _, j, i, L = heapq.heappop(heap)
        pending.discard((i, j))
        if L == _mono_mul(lms[i], lms[j]) or _chain_skip(i, j, L, lms, pending):
            continue
        if max_pairs is not None and reduced >= max_pairs:
            raise BudgetExceeded(f"pair budget of {max_pairs} exhausted with {len(G)} basis elements")
        reduced += 1
        h = poly_reduce(s_polynomial(G[i], G[j], order), G, order)
        if h:
            G.append(_monic(h, order))
            lms.append(leading_monomial(G[-1], order))
            add_pairs(len(G) - 1)
    return GroebnerBasis(order, tuple(_interreduce(G, order)), ideal.num_vars, ideal.names, reduced)


def leading_term_ideal(gb: GroebnerBasis) -> list:
    """Minimal monomial generators of the leading-term ideal, descending."""
    lms = sorted(set(gb.leading_monomials()), key=gb.order.key, reverse=True)
    return [m for m in lms if not any(o != m and _mono_divides(o, m) for o in lms)]


def monomial_ideal_dimension(monomials: Iterable[Monomial], num_vars: int,
                             budget: int | None = None) -> int:
    """Dimension of the zero set of a monomial ideal.

    ``num_vars`` minus the size of a smallest variable set meeting every
    support; -1 when a generator is constant (empty zero set). ``budget`` caps
    the number of candidate subsets examined.
    """
    supports = []
    for m in monomials:
        if len(m) != num_vars:
            raise DimensionMismatch(f"monomial of length {len(m)} in {num_vars} variables")
        s = frozenset(i for i, e in enumerate(m) if e)
        if not s:
            return -1
        supports.append(s)
    # a support containing another is hit whenever the smaller one is
    supports = [s for s in set(supports) if not any(t < s for t in supports)]
    if not supports:
        return num_vars
    relevant = sorted(set().union(*supports))
    examined = 0
    for k in range(1, len(relevant) + 1):
        for hit in itertools.combinations(relevant, k):
            examined += 1
            if budget is not None and examined > budget:
                raise BudgetExceeded(f"hitting-set budget of {budget} exhausted")
            hs = set(hit)
            if all(s & hs for s in supports):
                return num_vars - k
    raise AssertionError("the full variable set always hits")  # pragma: no cover


# ---------------------------------------------------------------------------
# the idempotent variety
# ---------------------------------------------------------------------------

def _matrix_names(n: int) -> tuple:
    sep = "_" if n >= 10 else ""
    return tuple(f"x{i}{sep}{j}" for i in range(1, n + 1) for j in range(1, n + 1))


def idempotent_ideal(n: int, slice: int | None = None) -> IdealBasis:
    """Entries of ``X @ X - X`` in variables x11..xnn (row-major), plus
    ``trace(X) - slice`` when a slice is given."""
    if n < 1:
        raise InvalidArgument("n must be at least 1")
    N = n * n

    def var(i, j, e=1):
        v = [0] * N
        v[i * n + j] += e
        return v

    gens = []
    for i in range(n):
        for j in range(n):
            f: Polynomial = {}
            for k in range(n):
                a, b = var(i, k), var(k, j)
                m = tuple(x + y for x, y in zip(a, b))
                f[m] = f.get(m, 0) + 1
            xij = tuple(var(i, j))
            f[xij] = f.get(xij, 0) - 1
            gens.append(f)
    if slice is not None:
        if not 0 <= slice <= n:
            raise InvalidArgument(f"slice must lie in 0..{n}")
        t: Polynomial = {tuple(var(i, i)): Fraction(1) for i in range(n)}
        if slice:
            t[(0,) * N] = Fraction(-slice)
        gens.append(t)
    return IdealBasis(tuple(gens), N, _matrix_names(n))


@dataclass(frozen=True)
class VarietyReport:
    n: int
    slice: int | None
    basis: GroebnerBasis
    lt_generators: tuple
    dimension: int

    def to_json(self, include_basis: bool = False) -> dict:
        names, order = self.basis.names, self.basis.order
        out = {
            "n": self.n,
            "slice": self.slice,
            "order": order.kind,
            "variables": list(names),
            "lt_generators": [format_monomial(m, names) for m in self.lt_generators],
            "dimension": self.dimension,
        }
        if include_basis:
            out["basis"] = self.basis.formatted()
        return out

    def dumps_json(self, include_basis: bool = False) -> str:
        return json.dumps(self.to_json(include_basis), indent=2)


def dimension_report(n: int, budget: int | None = DEFAULT_PAIR_BUDGET,
                     slice: int | None = None) -> VarietyReport:
    ideal = idempotent_ideal(n, slice)
    gb = buchberger(ideal, MonomialOrder("grlex"), max_pairs=budget)
    lts = leading_term_ideal(gb)
    return VarietyReport(n, slice, gb, tuple(lts), monomial_ideal_dimension(lts, ideal.num_vars))


def variety_dimension(n: int, budget: int | None = DEFAULT_PAIR_BUDGET,
                      slice: int | None = None) -> int:
    """Dimension of the variety of n x n idempotents (or of one trace slice)."""
    return dimension_report(n, budget, slice).dimension
