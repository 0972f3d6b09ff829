"""The natural partial order on idempotents and its Hasse diagram over F_p.

``E <= F`` iff ``E F = E = F E``. Idempotents of M_n(F_p) are enumerated
without repetition as projections onto an image subspace along a
complementary kernel: every r-dimensional subspace U (reduced echelon form)
is paired with each complement, and complements of U are graphs of linear
maps from the coordinate complement of U's pivots into U. That gives
exactly ``[n r]_p * p^(r(n-r))`` idempotents of rank r.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidArgument,
    NotComparable,
    NotComplementary,
    RingMismatch,
    SingularMatrix,
)
from .idempotent import (
    DiagonalizationWitness,
    Idempotent,
    _as_matrix,
    diagonalize,
    is_idempotent,
    lift_block,
)
from .matrices import Matrix, block_diag, block_split, hstack, invert, rref, transpose
from .rings import PrimeField, gaussian_binomial, idempotent_count
from .textio import matrix_to_json

__all__ = [
    "leq", "covers", "SubspaceRep", "enumerate_subspaces", "complements",
    "projection_idempotent", "EnumerationConfig", "enumerate_idempotents",
    "brute_force_idempotents", "PosetElement", "HasseDiagram", "build_hasse",
    "lift_above", "interval", "block_characterization", "IntervalIsomorphism",
    "interval_iso_witness",
]

THREADS_ENV = "IDEMMAT_THREADS"


def _pair(E, F):
    A, B = _as_matrix(E), _as_matrix(F)
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring.name} vs {B.ring.name}")
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    return A, B


def leq(E, F) -> bool:
    A, B = _pair(E, F)
    return A @ B == A and B @ A == A


def _rank(E) -> int:
    return E.rank if isinstance(E, Idempotent) else Idempotent(E).rank


def covers(E, F) -> bool:
    """F covers E: ``E <= F`` and the rank goes up by exactly one."""
    return leq(E, F) and _rank(F) == _rank(E) + 1


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceRep:
    """Column basis in reduced column-echelon form (transpose of an RREF)."""

    basis: Matrix
    dim: int

    @classmethod
    def from_columns(cls, M: Matrix) -> SubspaceRep:
        """Canonical representative of the column span of M."""
        R, pivots, _ = rref(transpose(M))
        rows = R.submatrix(0, len(pivots), 0, R.cols)
        return cls(transpose(rows), len(pivots))

    @property
    def pivots(self) -> list[int]:
        _, piv, _ = rref(transpose(self.basis))
        return piv


def _field(p: int) -> PrimeField:
    return PrimeField(p)


def enumerate_subspaces(n: int, r: int, p: int) -> list[SubspaceRep]:
    """All r-dimensional subspaces of F_p^n, one canonical basis each."""
    if not 0 <= r <= n:
        raise InvalidArgument(f"need 0 <= r <= n, got r={r}, n={n}")
    F = _field(p)
    out = []
    for piv in itertools.combinations(range(n), r):
        free = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            out.append(SubspaceRep(transpose(Matrix(F, r, n, [x for row in rows for x in row])), r))
    return out


def complements(U: SubspaceRep) -> list[SubspaceRep]:
    """Every complement of U in F_p^n, each exactly once."""
    B = U.basis
    F, n, r = B.ring, B.rows, U.dim
    piv = U.pivots
    free = [j for j in range(n) if j not in piv]
    out = []
    for vals in itertools.product(range(F.p), repeat=r * len(free)):
        cols = []
        for k, j in enumerate(free):
            v = [0] * n
            v[j] = 1
            for i in range(r):
                c = vals[i * len(free) + k]
                if c:
                    for t in range(n):
                        v[t] = (v[t] + c * B.get(t, i)) % F.p
            cols.append(v)
        W = Matrix(F, n, len(free), [cols[k][t] for t in range(n) for k in range(len(free))])
        out.append(SubspaceRep.from_columns(W) if free else SubspaceRep(W, 0))
    return out


def projection_idempotent(image: SubspaceRep, kernel: SubspaceRep) -> Idempotent:
    """Projection onto ``image`` along ``kernel``."""
    n = image.basis.rows
    if kernel.basis.rows != n or image.dim + kernel.dim != n:
        raise NotComplementary(f"dimensions {image.dim} + {kernel.dim} do not fill {n}")
    A = hstack(image.basis, kernel.basis)
    try:
        A_inv = invert(A)
    except SingularMatrix:
        raise NotComplementary("subspaces intersect nontrivially") from None
    D = Matrix.diag(A.ring, [1] * image.dim + [0] * kernel.dim)
    return Idempotent(A @ D @ A_inv, image.dim)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@dataclass
class EnumerationConfig:
    max_elements: int = 1_000_000
    oracle_limit: int = 10 ** 7
    threads: int = field(default_factory=lambda: int(os.environ.get(THREADS_ENV, "1") or 1))


def _sort_key(E: Idempotent):
    return (E.rank, E.matrix.data)


def _layer_for_image(U: SubspaceRep) -> list[Idempotent]:
    return [projection_idempotent(U, W) for W in complements(U)]


def enumerate_idempotents(n: int, p: int, config: EnumerationConfig | None = None,
                          rank_only: int | None = None) -> list[Idempotent]:
    """All idempotents of M_n(F_p), sorted by (rank, row-major entries)."""
    cfg = config or EnumerationConfig()
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    ranks = range(n + 1) if rank_only is None else [rank_only]
    total = sum(idempotent_count(n, r, p) for r in ranks)
    if total > cfg.max_elements:
        raise BudgetExceeded(f"{total} idempotents exceed the budget of {cfg.max_elements}")
    images = [U for r in ranks for U in enumerate_subspaces(n, r, p)]
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            parts = list(pool.map(_layer_for_image, images))
    else:
        parts = [_layer_for_image(U) for U in images]
    return sorted((E for part in parts for E in part), key=_sort_key)


def brute_force_idempotents(n: int, p: int, config: EnumerationConfig | None = None) -> list[Idempotent]:
    """Filter all p^(n^2) matrices by E^2 = E."""
    cfg = config or EnumerationConfig()
    if p ** (n * n) > cfg.oracle_limit:
        raise BudgetExceeded(f"{p}^{n * n} matrices exceed the oracle limit {cfg.oracle_limit}")
    F = _field(p)
    found = [Matrix(F, n, n, vals) for vals in itertools.product(range(p), repeat=n * n)]
    return sorted((Idempotent(M) for M in found if is_idempotent(M)), key=_sort_key)


# ---------------------------------------------------------------------------
# Hasse diagram
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PosetElement:
    id: int
    idem: Idempotent

    @property
    def rank(self) -> int:
        return self.idem.rank

    @property
    def matrix(self) -> Matrix:
        return self.idem.matrix


@dataclass
class HasseDiagram:
    n: int
    p: int
    layers: dict[int, list[PosetElement]]
    covers: list[tuple[int, int]]

    @property
    def elements(self) -> list[PosetElement]:
        return [e for r in sorted(self.layers) for e in self.layers[r]]

    def __post_init__(self):
        self._index = {e.matrix: e for e in self.elements}

    def find(self, E) -> PosetElement:
        try:
            return self._index[_as_matrix(E)]
        except KeyError:
            raise InvalidArgument("matrix is not a node of this diagram") from None

    @property
    def node_count(self) -> int:
        return sum(len(v) for v in self.layers.values())

    @property
    def edge_count(self) -> int:
        return len(self.covers)

    def to_dot(self) -> str:
        lines = [f"digraph hasse_n{self.n}_p{self.p} {{", "  rankdir=BT;"]
        for r in sorted(self.layers):
            lines.append(f"  subgraph rank_{r} {{")
            lines.append("    rank=same;")
            for e in self.layers[r]:
                label = " ".join(str(x) for x in e.matrix.data)
                lines.append(f'    n{e.id} [label="{label}"];')
            lines.append("  }")
        lines.extend(f"  n{a} -> n{b};" for a, b in self.covers)
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "layers": {str(r): [{"id": e.id, "matrix": matrix_to_json(e.matrix)} for e in self.layers[r]]
                       for r in sorted(self.layers)},
            "covers": [list(c) for c in self.covers],
        }

    def dumps_json(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def build_hasse(n: int, p: int, config: EnumerationConfig | None = None) -> HasseDiagram:
    """Nodes from ``enumerate_idempotents``; cover edges only between adjacent ranks."""
    elems = enumerate_idempotents(n, p, config)
    layers: dict[int, list[PosetElement]] = {r: [] for r in range(n + 1)}
    for i, E in enumerate(elems):
        layers[E.rank].append(PosetElement(i, E))
    edges = []
    for r in range(n):
        for lo in layers[r]:
            for hi in layers[r + 1]:
                if leq(lo.idem, hi.idem):
                    edges.append((lo.id, hi.id))
    return HasseDiagram(n, p, layers, edges)


# ---------------------------------------------------------------------------
# structure results as executable maps
# ---------------------------------------------------------------------------

def lift_above(E: Idempotent, T: Idempotent) -> Idempotent:
    """``A diag(I_r, T) A^-1`` for A from ``diagonalize(E)``; always ``>= E``."""
    return Idempotent(lift_block(E, T), E.rank + T.rank)


def block_characterization(E: Idempotent, F: Idempotent, witness: DiagonalizationWitness | None = None) -> bool:
    """True iff ``A^-1 F A == diag(I_r, T)`` with T idempotent (A from E)."""
    w = witness or diagonalize(E)
    r = w.r
    C = w.A_inv @ _as_matrix(F).to_field() @ w.A
    blocks = block_split(C, r, r)
    return (blocks.top_left == Matrix.identity(C.ring, r)
            and blocks.top_right.is_zero() and blocks.bottom_left.is_zero()
            and is_idempotent(blocks.bottom_right))


def interval(E: Idempotent, F: Idempotent, diagram: HasseDiagram) -> list[PosetElement]:
    if not leq(E, F):
        raise NotComparable("E is not below F")
    for X in (E, F):
        diagram.find(X)
    return [g for g in diagram.elements if leq(E, g.idem) and leq(g.idem, F)]


@dataclass(frozen=True)
class IntervalIsomorphism:
    """Explicit order isomorphism ``[E, F] -> idempotents of M_k``, k = rank F - rank E.

    ``G -> S`` (lower-right block of ``A^-1 G A``) ``-> B^-1 S B`` ``->`` its
    upper-left k x k block, where A diagonalizes E and B diagonalizes
    ``T = f_A(F)``.
    """

    E: Idempotent
    F: Idempotent
    A: Matrix
    B: Matrix
    r: int
    k: int

    def __call__(self, G) -> Matrix:
        n, r, k = self.A.rows, self.r, self.k
        C = invert(self.A) @ _as_matrix(G).to_field() @ self.A
        S = C.submatrix(r, n, r, n)
        V = invert(self.B) @ S @ self.B
        return V.submatrix(0, k, 0, k)

    def inverse(self, V: Matrix) -> Matrix:
        n, r, k = self.A.rows, self.r, self.k
        Fld = self.A.ring
        S = self.B @ block_diag(V, Matrix.zeros(Fld, n - r - k)) @ invert(self.B)
        return self.A @ block_diag(Matrix.identity(Fld, r), S) @ invert(self.A)


def interval_iso_witness(E: Idempotent, F: Idempotent) -> IntervalIsomorphism:
    if not leq(E, F):
        raise NotComparable("E is not below F")
    w = diagonalize(E)
    n, r = E.n, w.r
    C = w.A_inv @ F.matrix.to_field() @ w.A
    T = Idempotent(C.submatrix(r, n, r, n))
    wt = diagonalize(T)
    return IntervalIsomorphism(E, F, w.A, wt.A, r, wt.r)
