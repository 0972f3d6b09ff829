import itertools

import pytest
from hypothesis import given, strategies as st

from idemmat.errors import ConstraintViolated, InvalidArgument, NotIdempotent
from idemmat.idempotent import (
    Idempotent,
    complement,
    diagonalize,
    is_idempotent,
    is_rank1_m2_idempotent,
    kron_idempotent,
    lift_block,
    m3_rank2_construct,
    rank1_ufd_construct,
    scaled_idempotent_factor,
    transpose_family,
)
from idemmat.matrices import Matrix, kronecker, rank
from idemmat.poset import enumerate_idempotents
from idemmat.rings import GF, QQ, ZZ

from oracles import brute_idempotents, matmul_mod, rank_mod_p
from strategies import QX, matrices

F2, F3 = GF(2), GF(3)


def mk(ring, rows):
    return Matrix.from_rows(ring, rows)


def test_is_idempotent_examples(z_example, f2x_example):
    assert is_idempotent(z_example)
    assert is_idempotent(f2x_example)
    assert not is_idempotent(mk(QQ, [[1, 1], [0, 1]]))
    with pytest.raises(InvalidArgument):
        is_idempotent(mk(ZZ, [[1, 0]]))


def test_idempotent_wrapper_validates(z_example):
    E = Idempotent(z_example)
    assert E.rank == 2 and E.n == 4 and E.trace == 2
    with pytest.raises(NotIdempotent):
        Idempotent(mk(ZZ, [[2]]))


def test_diagonalize_examples(z_example, f2x_example):
    w = diagonalize(Idempotent(Matrix.zeros(QQ, 3)))
    assert w.r == 0 and w.A == Matrix.identity(QQ, 3)
    w = diagonalize(Idempotent(Matrix.diag(QQ, [1, 0])))
    assert w.r == 1 and w.A == Matrix.identity(QQ, 2)
    for E in (z_example, f2x_example):
        w = diagonalize(Idempotent(E))
        assert w.r == 2
        assert w.reconstruct() == E.to_field()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_diagonalize_reconstructs_every_f2_idempotent(n):
    for E in enumerate_idempotents(n, 2):
        w = diagonalize(E)
        assert w.r == E.rank
        assert w.reconstruct() == E.matrix


def test_rank1_examples():
    assert rank1_ufd_construct(F2, [1, 0], [1, 1]).matrix == mk(F2, [[1, 1], [0, 0]])
    M = rank1_ufd_construct(ZZ, [1, 0, 0], [1, 5, -7]).matrix
    assert M == mk(ZZ, [[1, 5, -7], [0, 0, 0], [0, 0, 0]])
    E = rank1_ufd_construct(ZZ, [2, -1], [1, 1])
    assert E.matrix == mk(ZZ, [[2, 2], [-1, -1]])
    assert E.trace == 1 and E.rank == 1
    with pytest.raises(ConstraintViolated):
        rank1_ufd_construct(ZZ, [1, 1], [1, 1])


def test_rank1_over_polynomial_ring():
    E = rank1_ufd_construct(QX, ["x", 1], [1, "1-x"])
    assert E.trace == 1 and is_idempotent(E.matrix)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank1_construction_is_complete_over_f2(n):
    built = set()
    for s in itertools.product(range(2), repeat=n):
        for a in itertools.product(range(2), repeat=n):
            if sum(x * y for x, y in zip(s, a)) % 2 == 1:
                built.add(rank1_ufd_construct(F2, s, a).matrix.data)
    brute = {E for E in brute_idempotents(n, 2) if rank_mod_p([E[i * n:(i + 1) * n] for i in range(n)], 2) == 1}
    assert built == brute


def test_m3_rank2_examples():
    assert m3_rank2_construct(ZZ, 1, 0, 0, 1, 0, 0).matrix == Matrix.diag(ZZ, [0, 1, 1])
    E = m3_rank2_construct(ZZ, 1, 1, 1, 1, 0, 0)
    assert E.matrix == Matrix.identity(ZZ, 3) - mk(ZZ, [[1, 0, 0], [1, 0, 0], [1, 0, 0]])
    assert E.rank == 2
    with pytest.raises(ConstraintViolated):
        m3_rank2_construct(ZZ, 1, 1, 0, 1, 1, 0)


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_m3_rank2_is_complement_of_rank1(v):
    # u = 1 and c chosen so that s a + t b + u c = 1
    s, t, a, b = v
    c = 1 - s * a - t * b
    E = m3_rank2_construct(ZZ, s, t, 1, a, b, c)
    R = rank1_ufd_construct(ZZ, (s, t, 1), (a, b, c))
    assert E.matrix == Matrix.identity(ZZ, 3) - R.matrix
    assert E.rank == 2


def test_complement(z_example):
    O = Idempotent(Matrix.zeros(ZZ, 3))
    assert complement(O).matrix == Matrix.identity(ZZ, 3)
    E = Idempotent(z_example)
    C = complement(E)
    assert C.rank == 2 and rank(C.matrix) == 2
    assert complement(C) == E


def test_scaled_factor_examples():
    assert scaled_idempotent_factor(mk(QQ, [["1/2", 0], [0, 0]])) == QQ("1/2")
    assert scaled_idempotent_factor(Matrix.identity(QQ, 3)) == 1
    assert scaled_idempotent_factor(mk(QQ, [[0, 1], [0, 0]])) is None
    with pytest.raises(InvalidArgument):
        scaled_idempotent_factor(Matrix.zeros(QQ, 2))
    with pytest.raises(InvalidArgument):
        scaled_idempotent_factor(mk(ZZ, [[2]]))


def test_kron_examples():
    K = kron_idempotent(mk(QQ, [["1/2", 0], [0, 0]]), mk(QQ, [[2, 0], [0, 0]]))
    assert K.matrix == Matrix.diag(QQ, [1, 0, 0, 0])
    E = mk(QQ, [[1, 1], [0, 0]])
    F = mk(QQ, [["1/2", "1/2"], ["1/2", "1/2"]])
    assert kron_idempotent(E, F).matrix == kronecker(E, F)
    A, B = mk(QQ, [[2, 0], [0, 0]]), mk(QQ, [[3, 0], [0, 0]])
    with pytest.raises(ConstraintViolated):
        kron_idempotent(A, B)
    assert not is_idempotent(kronecker(A, B))


def test_kron_converse_exhaustive_m2_f2():
    mats = [mk(F2, [list(v[:2]), list(v[2:])]) for v in itertools.product(range(2), repeat=4)]
    nonzero = [M for M in mats if not M.is_zero()]
    for A in nonzero:
        for B in nonzero:
            K = kronecker(A, B)
            lhs = is_idempotent(K) and not K.is_zero()
            ka, kb = scaled_idempotent_factor(A), scaled_idempotent_factor(B)
            rhs = ka is not None and kb is not None and ka * kb == 1
            assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_transpose_family_preserves_idempotency(n):
    for E in enumerate_idempotents(n, 2):
        for G in transpose_family(E):
            assert is_idempotent(G.matrix) and G.rank == E.rank


@given(matrices(QQ, rows=2, cols=2))
def test_rank1_m2_predicate(M):
    expected = is_idempotent(M) and rank(M) == 1
    assert is_rank1_m2_idempotent(M) == expected


@pytest.mark.parametrize("p", [2, 3])
def test_rank1_m2_predicate_exhaustive(p):
    F = GF(p)
    for v in itertools.product(range(p), repeat=4):
        M = Matrix(F, 2, 2, v)
        idem = matmul_mod(v, v, 2, p) == v
        expected = idem and rank_mod_p([v[:2], v[2:]], p) == 1
        assert is_rank1_m2_idempotent(M) == expected


def test_rank1_m2_predicate_integers():
    for v in itertools.product(range(-3, 4), repeat=4):
        M = Matrix(ZZ, 2, 2, v)
        assert is_rank1_m2_idempotent(M) == (is_idempotent(M) and rank(M) == 1)


def test_trace_equals_rank_in_characteristic_zero(z_example):
    E = Idempotent(z_example.to_field())
    assert E.trace == E.rank


def test_lift_block_gives_larger_idempotent():
    E = Idempotent(Matrix.diag(F3, [1, 0, 0]))
    T = Idempotent(mk(F3, [[1, 1], [0, 0]]))
    F = lift_block(E, T)
    assert is_idempotent(F) and rank(F) == 2
    assert E.matrix @ F == E.matrix == F @ E.matrix
