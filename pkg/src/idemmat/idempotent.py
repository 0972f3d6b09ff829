"""Idempotent matrices: verified wrapper, diagonalization and constructors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConstraintViolated, DimensionMismatch, InvalidArgument, NotIdempotent
from .matrices import (
    Matrix,
    anti_transpose,
    block_diag,
    hstack,
    image_basis,
    invert,
    kernel_basis,
    kronecker,
    rank,
    transpose,
)
from .rings import Ring, RingValue

__all__ = [
    "Idempotent", "DiagonalizationWitness", "is_idempotent", "diagonalize",
    "rank1_ufd_construct", "m3_rank2_construct", "complement",
    "scaled_idempotent_factor", "kron_idempotent", "is_rank1_m2_idempotent",
    "transpose_family",
]


def is_idempotent(M: Matrix) -> bool:
    if not M.is_square:
        raise InvalidArgument(f"idempotency needs a square matrix, got {M.rows}x{M.cols}")
    return M @ M == M


@dataclass(frozen=True)
class Idempotent:
    """A square matrix with ``E @ E == E``, checked at construction.

    ``rank`` is the rank over the fraction field of the entries' ring.
    """

    matrix: Matrix
    rank: int = field(default=-1, compare=False)

    def __post_init__(self):
        if not is_idempotent(self.matrix):
            raise NotIdempotent("matrix is not idempotent")
        if self.rank < 0:
            object.__setattr__(self, "rank", rank(self.matrix))

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def trace(self) -> RingValue:
        return self.matrix.trace()

    def __repr__(self):
        return f"Idempotent(rank={self.rank}, {self.matrix!r})"


def _as_matrix(E) -> Matrix:
    return E.matrix if isinstance(E, Idempotent) else E


@dataclass(frozen=True)
class DiagonalizationWitness:
    """``A @ diag(I_r, O) @ A^-1`` reproduces the source idempotent."""

    A: Matrix
    r: int

    @property
    def A_inv(self) -> Matrix:
        return invert(self.A)

    def pattern(self) -> Matrix:
        n = self.A.rows
        F = self.A.ring
        return Matrix.diag(F, [1] * self.r + [0] * (n - self.r))

    def reconstruct(self) -> Matrix:
        return self.A @ self.pattern() @ self.A_inv


def diagonalize(E) -> DiagonalizationWitness:
    """Columns of ``A``: pivot columns of E, then RREF kernel vectors.

    The result lives over the fraction field of E's ring.
    """
    M = _as_matrix(E)
    if not M.is_square:
        raise InvalidArgument("diagonalize needs a square matrix")
    im, ker = image_basis(M), kernel_basis(M)
    A = hstack(im, ker) if M.rows else im
    return DiagonalizationWitness(A, im.cols)


def _values(ring: Ring, xs: Sequence) -> list:
    return [ring(x).payload for x in xs]


def rank1_ufd_construct(ring: Ring, s: Sequence, a: Sequence) -> Idempotent:
    """``E[i, j] = s[i] * a[j]`` with ``sum(s[i] * a[i]) == 1``."""
    if len(s) != len(a) or not s:
        raise DimensionMismatch("s and a must be nonempty and of equal length")
    sv, av = _values(ring, s), _values(ring, a)
    tr = ring.zero
    for x, y in zip(sv, av):
        tr = ring.add(tr, ring.mul(x, y))
    if not ring.is_one(tr):
        raise ConstraintViolated(f"sum s_i a_i = {ring.format(tr)}, expected 1")
    n = len(sv)
    M = Matrix(ring, n, n, [ring.mul(x, y) for x in sv for y in av])
    return Idempotent(M, 1)


def m3_rank2_construct(ring: Ring, s, t, u, a, b, c) -> Idempotent:
    """``I_3`` minus the rank-one idempotent built from (s, t, u) and (a, b, c)."""
    E1 = rank1_ufd_construct(ring, (s, t, u), (a, b, c))
    return Idempotent(Matrix.identity(ring, 3) - E1.matrix, 2)


def complement(E: Idempotent) -> Idempotent:
    return Idempotent(Matrix.identity(E.ring, E.n) - E.matrix, E.n - E.rank)


def is_rank1_m2_idempotent(M: Matrix) -> bool:
    """2x2 test: trace 1 and determinant 0 (valid over any integral domain)."""
    if M.shape != (2, 2):
        raise InvalidArgument("expected a 2x2 matrix")
    R = M.ring
    det = R.sub(R.mul(M.get(0, 0), M.get(1, 1)), R.mul(M.get(0, 1), M.get(1, 0)))
    return R.is_one(M.trace().payload) and R.is_zero(det)


def scaled_idempotent_factor(A: Matrix) -> RingValue | None:
    """Nonzero ``k`` with ``A @ A == k * A``, or None if there is none.

    ``k`` is read off the first row-major position where both A and A^2 are
    nonzero, then checked on the whole matrix.
    """
    if not A.is_square:
        raise InvalidArgument("expected a square matrix")
    if A.is_zero():
        raise InvalidArgument("A must be nonzero")
    F = A.ring
    if not F.is_field:
        raise InvalidArgument(f"{F.name} is not a field")
    A2 = A @ A
    for a, c in zip(A.data, A2.data):
        if not F.is_zero(a) and not F.is_zero(c):
            k = F.mul(c, F.inverse(a))
            return F.wrap(k) if A.scale(F.wrap(k)) == A2 else None
    return None


def kron_idempotent(A: Matrix, B: Matrix) -> Idempotent:
    """Kronecker product of A and B when ``A^2 = kA`` and ``B^2 = k^-1 B`` for a unit k."""
    if A.is_zero() or B.is_zero():
        raise ConstraintViolated("both factors must be nonzero")
    ka, kb = scaled_idempotent_factor(A), scaled_idempotent_factor(B)
    if ka is None or kb is None or ka * kb != 1:
        raise ConstraintViolated("no k with A^2 = kA and B^2 = k^-1 B")
    return Idempotent(kronecker(A, B))


def transpose_family(E: Idempotent) -> tuple[Idempotent, Idempotent, Idempotent]:
    """Transpose, anti-transpose, and transposed anti-transpose of E."""
    M = E.matrix
    return (Idempotent(transpose(M), E.rank), Idempotent(anti_transpose(M), E.rank),
            Idempotent(transpose(anti_transpose(M)), E.rank))


def lift_block(E: Idempotent, T: Idempotent, witness: DiagonalizationWitness | None = None) -> Matrix:
    """``A @ diag(I_r, T) @ A^-1`` with A from ``diagonalize(E)``."""
    w = witness or diagonalize(E)
    if T.n != E.n - w.r:
        raise DimensionMismatch(f"T must be {E.n - w.r}x{E.n - w.r}, got {T.n}x{T.n}")
    F = w.A.ring
    Tm = T.matrix.to_field()
    if Tm.ring != F:
        raise DimensionMismatch("T is over a different field than E")
    return w.A @ block_diag(Matrix.identity(F, w.r), Tm) @ w.A_inv
