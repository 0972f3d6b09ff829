"""Smith normal form over Euclidean domains and idempotent factorizations.

``smith_normal_form(A)`` returns unimodular P, Q with ``P A Q = D`` diagonal,
``d_1 | d_2 | ...``, each ``d_i`` normalized (positive over Z, monic over
K[x], 1 over a field). The inverses of P and Q are tracked alongside, which
``idempotent_snf_factor`` needs for ``E = S T`` with ``T S = diag(I_l, O)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConstraintViolated, DimensionMismatch, NotIdempotent, UnsupportedRing
from .idempotent import Idempotent, _as_matrix, is_idempotent
from .matrices import BlockSpec, Matrix, block_compose
from .rings import Ring

__all__ = [
    "SmithDecomposition", "smith_normal_form", "IdempotentFactorization",
    "idempotent_snf_factor", "BlockBuilderInput", "block_build_idempotent",
    "coprime_pair_builder",
]


@dataclass(frozen=True)
class SmithDecomposition:
    P: Matrix
    D: Matrix
    Q: Matrix
    P_inv: Matrix
    Q_inv: Matrix
    source_dims: tuple[int, int]

    @property
    def invariant_factors(self) -> list:
        """Nonzero diagonal entries of D as RingValues."""
        k = min(self.D.rows, self.D.cols)
        R = self.D.ring
        return [self.D[i, i] for i in range(k) if not R.is_zero(self.D.get(i, i))]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


class _Work:
    """Mutable elimination state: M with P, P^-1, Q, Q^-1 kept in sync."""

    def __init__(self, A: Matrix):
        R = A.ring
        self.R = R
        self.m, self.n = A.rows, A.cols
        self.M = A.payload_rows()
        self.P = Matrix.identity(R, self.m).payload_rows()
        self.Pi = Matrix.identity(R, self.m).payload_rows()
        self.Q = Matrix.identity(R, self.n).payload_rows()
        self.Qi = Matrix.identity(R, self.n).payload_rows()

    # row_i += c * row_j
    def add_row(self, i, j, c):
        R = self.R
        for rows in (self.M, self.P):
            rows[i] = [R.add(x, R.mul(c, y)) for x, y in zip(rows[i], rows[j])]
        for row in self.Pi:
            row[j] = R.sub(row[j], R.mul(c, row[i]))

    # col_j += c * col_i
    def add_col(self, j, i, c):
        R = self.R
        for rows in (self.M, self.Q):
            for row in rows:
                row[j] = R.add(row[j], R.mul(c, row[i]))
        self.Qi[i] = [R.sub(x, R.mul(c, y)) for x, y in zip(self.Qi[i], self.Qi[j])]

    def swap_rows(self, i, j):
        if i == j:
            return
        for rows in (self.M, self.P):
            rows[i], rows[j] = rows[j], rows[i]
        for row in self.Pi:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for rows in (self.M, self.Q):
            for row in rows:
                row[i], row[j] = row[j], row[i]
        self.Qi[i], self.Qi[j] = self.Qi[j], self.Qi[i]

    def scale_row(self, i, u, u_inv):
        R = self.R
        for rows in (self.M, self.P):
            rows[i] = [R.mul(u, x) for x in rows[i]]
        for row in self.Pi:
            row[i] = R.mul(row[i], u_inv)


def _min_norm_entry(w: _Work, t: int):
    R, best = w.R, None
    for i in range(t, w.m):
        for j in range(t, w.n):
            a = w.M[i][j]
            if not R.is_zero(a):
                nv = R.norm(a)
                if best is None or nv < best[0]:
                    best = (nv, i, j)
    return best


def smith_normal_form(A: Matrix) -> SmithDecomposition:
    """Gcd-driven elimination with a minimal-norm pivot (ties row-major)."""
    R: Ring = A.ring
    if not R.is_euclidean:
        raise UnsupportedRing(f"{R.name} is not a Euclidean domain")
    w = _Work(A)
    for t in range(min(w.m, w.n)):
        best = _min_norm_entry(w, t)
        if best is None:
            break
        _, i, j = best
        w.swap_rows(t, i)
        w.swap_cols(t, j)
        while True:
            dirty = False
            piv = w.M[t][t]
            for i in range(t + 1, w.m):
                if not R.is_zero(w.M[i][t]):
                    q, _ = R.divmod(w.M[i][t], piv)
                    w.add_row(i, t, R.neg(q))
                    if not R.is_zero(w.M[i][t]):
                        dirty = True
            for j in range(t + 1, w.n):
                if not R.is_zero(w.M[t][j]):
                    q, _ = R.divmod(w.M[t][j], piv)
                    w.add_col(j, t, R.neg(q))
                    if not R.is_zero(w.M[t][j]):
                        dirty = True
            if dirty:
                # a remainder of smaller norm sits in row/column t: make it the pivot
                cand = [(R.norm(w.M[i][t]), i, t) for i in range(t + 1, w.m) if not R.is_zero(w.M[i][t])]
                cand += [(R.norm(w.M[t][j]), t, j) for j in range(t + 1, w.n) if not R.is_zero(w.M[t][j])]
                _, i, j = min(cand)
                w.swap_rows(t, i)
                w.swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, w.m) for j in range(t + 1, w.n)
                        if not R.divides(piv, w.M[i][j])), None)
            if bad is None:
                break
            w.add_row(t, bad[0], R.one)
        normal, unit = R.associate(w.M[t][t])
        if not R.is_one(unit):
            u_inv = R.unit_inverse(unit)
            w.scale_row(t, u_inv, unit)
    ring = R
    return SmithDecomposition(
        P=Matrix.from_payload_rows(ring, w.P) if w.m else Matrix.zeros(ring, 0, 0),
        D=Matrix(ring, w.m, w.n, [x for row in w.M for x in row]),
        Q=Matrix.from_payload_rows(ring, w.Q) if w.n else Matrix.zeros(ring, 0, 0),
        P_inv=Matrix.from_payload_rows(ring, w.Pi) if w.m else Matrix.zeros(ring, 0, 0),
        Q_inv=Matrix.from_payload_rows(ring, w.Qi) if w.n else Matrix.zeros(ring, 0, 0),
        source_dims=(A.rows, A.cols),
    )


# ---------------------------------------------------------------------------
# idempotent factorizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdempotentFactorization:
    """``S @ T == E`` and ``T @ S == diag(I_ell, O)``; S has zero columns and
    T zero rows past ``ell``."""

    S: Matrix
    T: Matrix
    ell: int

    def blocks(self) -> BlockBuilderInput:
        """Read (A, B, C, D) back off the nonzero parts of T and S."""
        n, l = self.S.rows, self.ell
        return BlockBuilderInput(
            A=self.T.submatrix(0, l, 0, l), B=self.T.submatrix(0, l, l, n),
            C=self.S.submatrix(0, l, 0, l), D=self.S.submatrix(l, n, 0, l),
        )


def idempotent_snf_factor(E) -> IdempotentFactorization:
    M = _as_matrix(E)
    if not M.is_square:
        raise DimensionMismatch("expected a square matrix")
    if not is_idempotent(M):
        raise NotIdempotent("input is not idempotent")
    snf = smith_normal_form(M)
    R, n, l = M.ring, M.rows, snf.rank
    for d in snf.invariant_factors:
        if not d == 1:
            raise ConstraintViolated(f"idempotent with non-unit invariant factor {d}")
    keep_cols = [x if j < l else R.zero for i, row in enumerate(snf.P_inv.payload_rows())
                 for j, x in enumerate(row)]
    keep_rows = [x if i < l else R.zero for i, row in enumerate(snf.Q_inv.payload_rows())
                 for x in row]
    return IdempotentFactorization(Matrix(R, n, n, keep_cols), Matrix(R, n, n, keep_rows), l)


@dataclass(frozen=True)
class BlockBuilderInput:
    """A, C are l x l; B is l x (n-l); D is (n-l) x l; ``A C + B D == I_l``."""

    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix

    def __post_init__(self):
        A, B, C, D = self.A, self.B, self.C, self.D
        l = A.rows
        if A.shape != (l, l) or C.shape != (l, l) or B.rows != l or D.cols != l or B.cols != D.rows:
            raise DimensionMismatch("block shapes do not fit A, C: lxl; B: lx(n-l); D: (n-l)xl")
        if A @ C + B @ D != Matrix.identity(A.ring, l):
            raise ConstraintViolated("A C + B D is not the identity")

    @property
    def ell(self) -> int:
        return self.A.rows


def block_build_idempotent(inp: BlockBuilderInput) -> Idempotent:
    """``E = [[C A, C B], [D A, D B]]``, an idempotent of rank ``ell``."""
    A, B, C, D = inp.A, inp.B, inp.C, inp.D
    E = block_compose(BlockSpec(C @ A, C @ B, D @ A, D @ B))
    return Idempotent(E)


def coprime_pair_builder(ring: Ring, pairs: Sequence, bezout: Sequence | None = None) -> BlockBuilderInput:
    """Template blocks from two coprime pairs ``(a_i, b_i)``.

    With ``a_i g_i + b_i h_i = 1``::

        A = [[a1, b1], [0, 0]]    B = [[0, 0], [a2, b2]]
        C = [[g1, -b1], [h1, a1]] D = [[b2, g2], [-a2, h2]]

    ``bezout`` optionally fixes ``(g_i, h_i)``; otherwise extended Euclid picks them.
    """
    if len(pairs) != 2:
        raise DimensionMismatch("expected two pairs")
    (a1, b1), (a2, b2) = [(ring(a), ring(b)) for a, b in pairs]
    gh = []
    for k, (a, b) in enumerate(((a1, b1), (a2, b2))):
        if bezout is not None:
            g, h = ring(bezout[k][0]), ring(bezout[k][1])
            if a * g + b * h != 1:
                raise ConstraintViolated(f"pair {k + 1}: a*g + b*h != 1")
        else:
            d, g, h = ring.gcdex(a.payload, b.payload)
            if not ring.is_one(d):
                raise ConstraintViolated(f"pair {k + 1}: gcd({a}, {b}) = {ring.format(d)}")
            g, h = ring.wrap(g), ring.wrap(h)
        gh.append((g, h))
    (g1, h1), (g2, h2) = gh
    mk = Matrix.from_rows
    return BlockBuilderInput(
        A=mk(ring, [[a1, b1], [0, 0]]),
        B=mk(ring, [[0, 0], [a2, b2]]),
        C=mk(ring, [[g1, -b1], [h1, a1]]),
        D=mk(ring, [[b2, g2], [-a2, h2]]),
    )
