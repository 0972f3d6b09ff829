from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from idemmat.errors import BudgetExceeded, DimensionMismatch, InvalidArgument
from idemmat.groebner import (
    IdealBasis,
    MonomialOrder,
    buchberger,
    dimension_report,
    idempotent_ideal,
    leading_monomial,
    leading_term_ideal,
    monomial_compare,
    monomial_ideal_dimension,
    parse_poly,
    poly_reduce,
    s_polynomial,
    variety_dimension,
)
from idemmat.matrices import Matrix, rank
from idemmat.rings import QQ

from oracles import coordinate_subspace_dimension

ABCD = ("a", "b", "c", "d")
GRLEX = MonomialOrder("grlex")


def P(text, names=ABCD):
    return parse_poly(text, names)


def mono(text, names=ABCD):
    (m,) = parse_poly(text, names)
    return m


def scale(c, f):
    return {m: c * v for m, v in f.items()}


def mul(f, g):
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _expr(f, syms):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[x ** e for x, e in zip(syms, m)])
                       for m, c in f.items()])


def add(*fs):
    out = {}
    for f in fs:
        for m, c in f.items():
            out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


@pytest.fixture(scope="module")
def m2_ideal():
    gens = ["a^2+b*c-a", "a*b+b*d-b", "a*c+c*d-c", "b*c+d^2-d"]
    return IdealBasis(tuple(gens), 4, ABCD)


@pytest.fixture(scope="module")
def m2_basis(m2_ideal):
    return buchberger(m2_ideal, GRLEX)


# -- orders ----------------------------------------------------------------------

def test_order_examples():
    assert monomial_compare(GRLEX, mono("a^2"), mono("a*b")) == 1
    assert monomial_compare(GRLEX, mono("a*d^2"), mono("d^3")) == 1
    for kind in ("lex", "grlex", "grevlex"):
        o = MonomialOrder(kind)
        assert monomial_compare(o, (0, 0, 0, 0), mono("c")) == -1
        assert monomial_compare(o, mono("c"), mono("c")) == 0
    with pytest.raises(DimensionMismatch):
        monomial_compare(GRLEX, (1, 0), (1, 0, 0))
    with pytest.raises(InvalidArgument):
        MonomialOrder("revlex")


def test_order_kinds_differ_as_expected():
    lex, grevlex = MonomialOrder("lex"), MonomialOrder("grevlex")
    # x y^2 vs x^2 in lex, x z vs y^2 in grevlex
    assert monomial_compare(lex, (1, 2, 0), (2, 0, 0)) == -1
    assert monomial_compare(GRLEX, (1, 2, 0), (2, 0, 0)) == 1
    assert monomial_compare(GRLEX, (1, 0, 1), (0, 2, 0)) == 1
    assert monomial_compare(grevlex, (1, 0, 1), (0, 2, 0)) == -1
    rev = MonomialOrder("lex", (2, 1, 0))
    assert monomial_compare(rev, (1, 0, 0), (0, 0, 1)) == -1


exps = st.tuples(*[st.integers(0, 3)] * 3)


@given(st.sampled_from(["lex", "grlex", "grevlex"]), st.permutations(range(3)), exps, exps, exps)
def test_orders_are_monomial_orders(kind, prec, m1, m2, w):
    o = MonomialOrder(kind, tuple(prec))
    c = monomial_compare(o, m1, m2)
    assert c == -monomial_compare(o, m2, m1)
    assert (c == 0) == (m1 == m2)
    shifted = [tuple(x + y for x, y in zip(m, w)) for m in (m1, m2)]
    assert monomial_compare(o, *shifted) == c
    assert monomial_compare(o, (0, 0, 0), m1) <= 0


# -- reduction -------------------------------------------------------------------

def test_reduce_examples(m2_ideal):
    g = P("a^2+b*c-a")
    assert poly_reduce(g, [g], GRLEX) == {}
    assert poly_reduce(g, [], GRLEX) == g
    f1, f2, f3, f4 = m2_ideal.generators
    combo = add(scale(-1, mul(P("c"), f2)), mul(P("a+d-1"), f4))
    r = poly_reduce(combo, [f1, f2, f3, f4], GRLEX)
    assert leading_monomial(r, GRLEX) == mono("a*d^2")
    f5 = P("a*d^2+d^3-a*d-2*d^2+d")
    assert r in (f5, scale(-1, f5))


@settings(max_examples=40)
@given(st.data())
def test_reduction_remainder_is_normal(data):
    names = ("x", "y", "z")
    terms = st.dictionaries(exps, st.integers(-3, 3).filter(bool), min_size=1, max_size=4)
    f = {m: Fraction(c) for m, c in data.draw(terms).items()}
    basis = [{m: Fraction(c) for m, c in data.draw(terms).items()} for _ in range(data.draw(st.integers(1, 3)))]
    r = poly_reduce(f, basis, GRLEX)
    lms = [leading_monomial(g, GRLEX) for g in basis]
    for m in r:
        assert not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)
    # f - r lies in the ideal: check with an independent Groebner computation
    syms = sympy.symbols(names)
    G = sympy.groebner([_expr(g, syms) for g in basis], *syms, order="grlex", domain="QQ")
    assert G.contains(_expr(add(f, scale(-1, r)), syms))


# -- Buchberger ------------------------------------------------------------------

def test_buchberger_examples(m2_basis):
    gb = buchberger(IdealBasis(("x",), 1, ("x",)))
    assert gb.elements == (P("x", ("x",)),)
    xyz = ("x", "y", "z")
    gb = buchberger(IdealBasis(("x-y", "y-z"), 3, xyz), MonomialOrder("lex"))
    assert set(map(frozenset, (g.items() for g in gb.elements))) == {
        frozenset(P("x-z", xyz).items()), frozenset(P("y-z", xyz).items())}
    assert leading_term_ideal(gb) == [(1, 0, 0), (0, 1, 0)]
    lts = {mono(s) for s in ("a^2", "a*b", "a*c", "b*c", "a*d^2")}
    assert set(leading_term_ideal(m2_basis)) == lts
    assert leading_term_ideal(buchberger(IdealBasis((), 2))) == []


def _certify(gb, gens):
    els = gb.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            assert poly_reduce(s_polynomial(els[i], els[j], gb.order), els, gb.order) == {}
    for g in gens:
        assert gb.contains(g)
    lms = gb.leading_monomials()
    for g, lm in zip(els, lms):
        assert g[lm] == 1
        for m in g:
            assert not any(o != lm and all(a <= b for a, b in zip(o, m)) for o in lms)


def test_m2_basis_is_certified(m2_ideal, m2_basis):
    _certify(m2_basis, m2_ideal.generators)


def _to_sympy_basis(gb, names):
    syms = sympy.symbols(names)
    return {_expr(g, syms) for g in gb.elements}


def _sympy_basis(gens, names, order):
    syms = sympy.symbols(names)
    G = sympy.groebner([_expr(g, syms) for g in gens], *syms, order=order, domain="QQ")
    return set(G.exprs)


polys3 = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 3), st.integers(-3, 3).filter(bool), min_size=1, max_size=3,
).map(lambda d: {m: Fraction(c) for m, c in d.items()})


@settings(max_examples=60)
@given(st.lists(polys3, min_size=1, max_size=3), st.sampled_from(["lex", "grlex", "grevlex"]))
def test_buchberger_matches_sympy(gens, kind):
    names = ("x", "y", "z")
    gb = buchberger(IdealBasis(tuple(gens), 3, names), MonomialOrder(kind))
    _certify(gb, gens)
    assert _to_sympy_basis(gb, names) == _sympy_basis(gens, names, kind)


@settings(max_examples=30)
@given(st.lists(polys3, min_size=2, max_size=3), st.randoms(use_true_random=False))
def test_reduced_basis_is_canonical(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    a = buchberger(IdealBasis(tuple(gens), 3))
    b = buchberger(IdealBasis(tuple(shuffled), 3))
    assert a.elements == b.elements


def test_budget_exceeded(m2_ideal):
    with pytest.raises(BudgetExceeded):
        buchberger(m2_ideal, GRLEX, max_pairs=1)
    with pytest.raises(BudgetExceeded):
        variety_dimension(3, budget=5)


# -- monomial ideals and dimension -------------------------------------------

def test_monomial_dimension_examples():
    lts = [mono(s) for s in ("a^2", "a*b", "a*c", "b*c", "a*d^2")]
    assert monomial_ideal_dimension(lts, 4) == 2
    assert monomial_ideal_dimension([], 5) == 5
    assert monomial_ideal_dimension([(1, 0, 0)], 3) == 2
    assert monomial_ideal_dimension([(0, 0)], 2) == -1
    with pytest.raises(DimensionMismatch):
        monomial_ideal_dimension([(1, 0)], 3)
    with pytest.raises(BudgetExceeded):
        monomial_ideal_dimension([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], 4, budget=3)


def test_m2_decomposition_components():
    """The zero set splits into the planes a = b = 0 and a = c = 0, each of dimension 2."""
    lts = [mono(s) for s in ("a^2", "a*b", "a*c", "b*c", "a*d^2")]
    for zeroed in ({0, 1}, {0, 2}):
        assert all(any(m[i] for i in zeroed) for m in lts)
        assert 4 - len(zeroed) == 2
    assert monomial_ideal_dimension(lts + [mono("b")], 4) == 2
    assert monomial_ideal_dimension(lts + [mono("b"), mono("c")], 4) == 1


monomial_sets = st.integers(1, 6).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.tuples(*[st.integers(0, 2)] * m), max_size=6)))


@settings(max_examples=200)
@given(monomial_sets)
def test_monomial_dimension_matches_subset_scan(case):
    m, monos = case
    supports = [{i for i, e in enumerate(x) if e} for x in monos]
    assert monomial_ideal_dimension(monos, m) == coordinate_subspace_dimension(supports, m)


@given(monomial_sets, st.data())
def test_adding_a_generator_never_raises_dimension(case, data):
    m, monos = case
    extra = data.draw(st.tuples(*[st.integers(0, 2)] * m))
    assert monomial_ideal_dimension(monos + [extra], m) <= monomial_ideal_dimension(monos, m)


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda m: st.tuples(
    st.just(m), st.lists(st.lists(st.integers(-2, 2), min_size=m + 1, max_size=m + 1), min_size=1, max_size=4))))
def test_linear_ideals_have_rank_codimension(case):
    m, rows = case
    gens = []
    for row in rows:
        f = {tuple(int(i == k) for i in range(m)): Fraction(c) for k, c in enumerate(row[:m]) if c}
        gens.append(f)
    gb = buchberger(IdealBasis(tuple(gens), m))
    A = Matrix.from_rows(QQ, [row[:m] for row in rows])
    assert monomial_ideal_dimension(leading_term_ideal(gb), m) == m - rank(A)


def test_triangular_linear_system():
    names = ("x", "y", "z", "w")
    gens = ("x+2*y-z", "y+3*z", "z-w")
    gb = buchberger(IdealBasis(gens, 4, names))
    assert monomial_ideal_dimension(leading_term_ideal(gb), 4) == 1


# -- the idempotent variety ------------------------------------------------------

def test_idempotent_ideal_examples():
    I1 = idempotent_ideal(1)
    assert I1.generators == (P("x11^2-x11", ("x11",)),)
    I2 = idempotent_ideal(2)
    renamed = [P(s) for s in ("a^2+b*c-a", "a*b+b*d-b", "a*c+c*d-c", "b*c+d^2-d")]
    assert list(I2.generators) == renamed
    assert I2.names == ("x11", "x12", "x21", "x22")
    I2r = idempotent_ideal(2, slice=1)
    assert list(I2r.generators) == renamed + [P("a+d-1")]
    assert idempotent_ideal(10).names[:2] == ("x1_1", "x1_2")
    with pytest.raises(InvalidArgument):
        idempotent_ideal(0)
    with pytest.raises(InvalidArgument):
        idempotent_ideal(2, slice=3)


def test_default_order_matches_abcd_naming(m2_basis):
    gb = buchberger(idempotent_ideal(2))
    assert gb.elements == m2_basis.elements


@pytest.mark.parametrize("n,dim", [(1, 0), (2, 2)])
def test_variety_dimension_small(n, dim):
    assert variety_dimension(n) == dim


def test_dimension_report_json():
    doc = dimension_report(2).to_json(include_basis=True)
    assert doc["dimension"] == 2 and doc["order"] == "grlex"
    assert doc["lt_generators"] == ["x11*x22^2", "x11^2", "x11*x12", "x11*x21", "x12*x21"]
    assert len(doc["basis"]) == 5


@pytest.mark.parametrize("r,dim", [(0, 0), (1, 2), (2, 0)])
def test_trace_slices_n2(r, dim):
    assert variety_dimension(2, slice=r) == dim


def test_dimension_bounds_and_value_n3():
    d = variety_dimension(3)
    assert 3 - 1 <= d <= 9 - 2
    assert d == 4


@pytest.mark.slow
def test_dimension_n4():
    assert variety_dimension(4) == 8


def _eval(f, point):
    total = Fraction(0)
    for m, c in f.items():
        term = c
        for e, v in zip(m, point):
            term *= v ** e
        total += term
    return total


def test_integer_idempotents_lie_on_the_variety(z_example):
    I4 = idempotent_ideal(4)
    point = [int(v) for v in z_example.data]
    assert all(_eval(g, point) == 0 for g in I4.generators)
    assert any(_eval(g, [v + 1 for v in point]) != 0 for g in I4.generators)
    # the same point lies on the trace-2 slice and off the trace-1 slice
    assert _eval(idempotent_ideal(4, slice=2).generators[-1], point) == 0
    assert _eval(idempotent_ideal(4, slice=1).generators[-1], point) != 0
