"""Dense immutable matrices over an exact ring.

Entries are stored as ring payloads in a flat row-major tuple; indexing
returns :class:`~idemmat.rings.RingValue`. Linear algebra (RREF, rank,
kernel, image, inverse) runs over the ring's fraction field, so integer and
polynomial matrices are handled by embedding them in Q, F_p(x) or Q(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidArgument, RingMismatch, SingularMatrix
from .rings import Ring, RingValue

__all__ = [
    "Matrix", "BlockSpec", "mat_arith", "block_compose", "block_split",
    "block_diag", "hstack", "vstack", "kronecker", "exchange_matrix",
    "transpose", "anti_transpose", "rref", "rank", "kernel_basis",
    "image_basis", "invert", "determinant",
]


class Matrix:
    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, data: Sequence):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        data = tuple(data)
        if len(data) != rows * cols:
            raise DimensionMismatch(f"{len(data)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Iterable[Iterable]) -> Matrix:
        """Build from nested rows of ints, strings or RingValues."""
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            data.extend(ring(x).payload for x in r)
        return cls(ring, len(rows), ncols, data)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        z, o = ring.zero, ring.one
        return cls(ring, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def diag(cls, ring: Ring, values: Sequence) -> Matrix:
        n = len(values)
        vals = [ring(v).payload for v in values]
        z = ring.zero
        return cls(ring, n, n, [vals[i] if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def from_payload_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> Matrix:
        ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, [x for r in rows for x in r])

    # -- access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij) -> RingValue:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return RingValue(self.ring, self.data[i * self.cols + j])

    def get(self, i, j):
        """Raw payload at (i, j)."""
        return self.data[i * self.cols + j]

    @property
    def entries(self) -> tuple:
        return tuple(RingValue(self.ring, x) for x in self.data)

    def payload_rows(self) -> list[list]:
        c = self.cols
        return [list(self.data[i * c:(i + 1) * c]) for i in range(self.rows)]

    def to_lists(self) -> list[list[RingValue]]:
        return [[RingValue(self.ring, x) for x in r] for r in self.payload_rows()]

    def column(self, j) -> list:
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def submatrix(self, r0, r1, c0, c1) -> Matrix:
        """Rows ``r0:r1`` and columns ``c0:c1``."""
        c = self.cols
        data = [x for i in range(r0, r1) for x in self.data[i * c + c0:i * c + c1]]
        return Matrix(self.ring, r1 - r0, c1 - c0, data)

    def map(self, f, ring: Ring | None = None) -> Matrix:
        return Matrix(ring or self.ring, self.rows, self.cols, [f(x) for x in self.data])

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(x) for x in self.data)

    def trace(self) -> RingValue:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        acc = self.ring.zero
        for i in range(self.rows):
            acc = self.ring.add(acc, self.get(i, i))
        return RingValue(self.ring, acc)

    def to_field(self) -> Matrix:
        """The same matrix over the fraction field of its ring."""
        F = self.ring.fraction_field()
        if F == self.ring:
            return self
        return self.map(self.ring.embed, F)

    # -- equality -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, self.rows, self.cols, self.data))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return self.data

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Matrix):
            raise InvalidArgument("expected a Matrix")
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, self.rows, self.cols, [add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        sub = self.ring.sub
        return Matrix(self.ring, self.rows, self.cols, [sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return self.map(self.ring.neg)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        R = self.ring
        add, mul, z, is_zero = R.add, R.mul, R.zero, R.is_zero
        n, m, p = self.rows, self.cols, other.cols
        A, B = self.data, other.data
        out = []
        for i in range(n):
            row = A[i * m:(i + 1) * m]
            acc = [z] * p
            for k, a in enumerate(row):
                if is_zero(a):
                    continue
                base = k * p
                for j in range(p):
                    b = B[base + j]
                    if not is_zero(b):
                        acc[j] = add(acc[j], mul(a, b))
            out.extend(acc)
        return Matrix(R, n, p, out)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> Matrix:
        c = self.ring(c).payload
        mul = self.ring.mul
        return self.map(lambda x: mul(c, x))

    def __pow__(self, k: int):
        if not self.is_square or k < 0:
            raise InvalidArgument("matrix powers need a square matrix and k >= 0")
        out, base = Matrix.identity(self.ring, self.rows), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    @property
    def T(self) -> Matrix:
        return transpose(self)

    def __repr__(self):
        rows = "; ".join(" ".join(self.ring.format(x) for x in r) for r in self.payload_rows())
        return f"Matrix({self.ring.name}, {self.rows}x{self.cols}, [{rows}])"

    def __str__(self):
        return "\n".join(" ".join(self.ring.format(x) for x in r) for r in self.payload_rows())


def mat_arith(op: str, A: Matrix, B=None) -> Matrix:
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A @ B
    if op == "scalar_mul":
        return A.scale(B)
    raise InvalidArgument(f"unknown matrix operation {op!r}")


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSpec:
    top_left: Matrix
    top_right: Matrix
    bottom_left: Matrix
    bottom_right: Matrix

    def __post_init__(self):
        tl, tr, bl, br = self.top_left, self.top_right, self.bottom_left, self.bottom_right
        if len({tl.ring, tr.ring, bl.ring, br.ring}) != 1:
            raise RingMismatch("blocks over different rings")
        if tl.rows != tr.rows or bl.rows != br.rows:
            raise DimensionMismatch("row counts of horizontally adjacent blocks differ")
        if tl.cols != bl.cols or tr.cols != br.cols:
            raise DimensionMismatch("column counts of vertically adjacent blocks differ")


def hstack(*ms: Matrix) -> Matrix:
    ring, rows = ms[0].ring, ms[0].rows
    if any(m.rows != rows for m in ms):
        raise DimensionMismatch("hstack needs equal row counts")
    if any(m.ring != ring for m in ms):
        raise RingMismatch("hstack over different rings")
    out = []
    for i in range(rows):
        for m in ms:
            out.extend(m.data[i * m.cols:(i + 1) * m.cols])
    return Matrix(ring, rows, sum(m.cols for m in ms), out)


def vstack(*ms: Matrix) -> Matrix:
    ring, cols = ms[0].ring, ms[0].cols
    if any(m.cols != cols for m in ms):
        raise DimensionMismatch("vstack needs equal column counts")
    if any(m.ring != ring for m in ms):
        raise RingMismatch("vstack over different rings")
    return Matrix(ring, sum(m.rows for m in ms), cols, [x for m in ms for x in m.data])


def block_compose(spec: BlockSpec) -> Matrix:
    return vstack(hstack(spec.top_left, spec.top_right), hstack(spec.bottom_left, spec.bottom_right))


def block_split(M: Matrix, row_cut: int, col_cut: int) -> BlockSpec:
    if not (0 <= row_cut <= M.rows and 0 <= col_cut <= M.cols):
        raise DimensionMismatch(f"cut ({row_cut}, {col_cut}) outside {M.shape}")
    r, c = M.rows, M.cols
    return BlockSpec(
        M.submatrix(0, row_cut, 0, col_cut),
        M.submatrix(0, row_cut, col_cut, c),
        M.submatrix(row_cut, r, 0, col_cut),
        M.submatrix(row_cut, r, col_cut, c),
    )


def block_diag(A: Matrix, B: Matrix) -> Matrix:
    ring = A.ring
    return block_compose(BlockSpec(A, Matrix.zeros(ring, A.rows, B.cols),
                                   Matrix.zeros(ring, B.rows, A.cols), B))


# ---------------------------------------------------------------------------
# products and symmetries
# ---------------------------------------------------------------------------

def kronecker(A: Matrix, B: Matrix) -> Matrix:
    """Block (i, j) of the result is ``A[i, j] * B``."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring.name} vs {B.ring.name}")
    mul = A.ring.mul
    rows, cols = A.rows * B.rows, A.cols * B.cols
    out = []
    for i in range(A.rows):
        for k in range(B.rows):
            for j in range(A.cols):
                a = A.get(i, j)
                out.extend(mul(a, B.get(k, l)) for l in range(B.cols))
    return Matrix(A.ring, rows, cols, out)


def transpose(A: Matrix) -> Matrix:
    return Matrix(A.ring, A.cols, A.rows, [A.get(i, j) for j in range(A.cols) for i in range(A.rows)])


def exchange_matrix(ring: Ring, n: int) -> Matrix:
    z, o = ring.zero, ring.one
    return Matrix(ring, n, n, [o if i + j == n - 1 else z for i in range(n) for j in range(n)])


def anti_transpose(A: Matrix) -> Matrix:
    """Transpose across the anti-diagonal: ``out[i, j] = A[n-1-j, n-1-i]``."""
    if not A.is_square:
        raise DimensionMismatch("anti-transpose needs a square matrix")
    n = A.rows
    return Matrix(A.ring, n, n, [A.get(n - 1 - j, n - 1 - i) for i in range(n) for j in range(n)])


# ---------------------------------------------------------------------------
# field linear algebra
# ---------------------------------------------------------------------------

def rref(M: Matrix):
    """Reduced row-echelon form over the fraction field.

    Returns ``(R, pivots, transform)`` with ``transform @ M == R`` (all three
    over the fraction field). Pivot search takes the first nonzero entry
    scanning down the column.
    """
    M = M.to_field()
    F = M.ring
    sub, mul, inv, is_zero = F.sub, F.mul, F.inverse, F.is_zero
    rows = M.payload_rows()
    T = Matrix.identity(F, M.rows).payload_rows()
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        piv = next((i for i in range(r, M.rows) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            T[r], T[piv] = T[piv], T[r]
        s = inv(rows[r][c])
        if not F.is_one(s):
            rows[r] = [mul(s, x) for x in rows[r]]
            T[r] = [mul(s, x) for x in T[r]]
        for i in range(M.rows):
            if i == r or is_zero(rows[i][c]):
                continue
            f = rows[i][c]
            rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], rows[r])]
            T[i] = [sub(x, mul(f, y)) for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return (Matrix(F, M.rows, M.cols, [x for row in rows for x in row]), pivots,
            Matrix(F, M.rows, M.rows, [x for row in T for x in row]))


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> Matrix:
    """Columns span the right kernel; one column per free variable of the RREF."""
    R, pivots, _ = rref(M)
    F = R.ring
    free = [j for j in range(M.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [F.zero] * M.cols
        v[f] = F.one
        for i, p in enumerate(pivots):
            v[p] = F.neg(R.get(i, f))
        cols.append(v)
    return Matrix(F, M.cols, len(cols), [cols[k][i] for i in range(M.cols) for k in range(len(cols))])


def image_basis(M: Matrix) -> Matrix:
    """Pivot columns of ``M`` (over the fraction field), in column order."""
    _, pivots, _ = rref(M)
    Mf = M.to_field()
    return Matrix(Mf.ring, M.rows, len(pivots),
                  [Mf.get(i, j) for i in range(M.rows) for j in pivots])


def invert(M: Matrix) -> Matrix:
    if not M.is_square:
        raise DimensionMismatch("only square matrices are invertible")
    _, pivots, T = rref(M)
    if len(pivots) < M.rows:
        raise SingularMatrix(f"rank {len(pivots)} < {M.rows}")
    return T


def determinant(M: Matrix) -> RingValue:
    """Fraction-free Bareiss elimination; needs exact division in the ring."""
    if not M.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    R = M.ring
    n = M.rows
    if n == 0:
        return RingValue(R, R.one)
    a = M.payload_rows()
    sign, prev = 1, R.one
    for k in range(n - 1):
        if R.is_zero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if not R.is_zero(a[i][k])), None)
            if swap is None:
                return RingValue(R, R.zero)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = R.sub(R.mul(a[i][j], a[k][k]), R.mul(a[i][k], a[k][j]))
                a[i][j] = R.exquo(num, prev) if k else num
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return RingValue(R, d if sign > 0 else R.neg(d))
