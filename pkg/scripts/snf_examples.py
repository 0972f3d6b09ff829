"""Rebuild the three 4 x 4 worked idempotents from coprime pairs and factor them.

    python scripts/snf_examples.py

For each example the script prints the idempotent E, its Smith form, and a
factorization E = S T with T S = diag(1, 1, 0, 0).
"""

from dataclasses import dataclass

from idemmat.matrices import Matrix
from idemmat.rings import GF, QQ, ZZ, Ring, UniPoly
from idemmat.smith import block_build_idempotent, coprime_pair_builder, idempotent_snf_factor, smith_normal_form
from idemmat.textio import format_matrix


@dataclass
class CoprimeExample:
    label: str
    ring: Ring
    pairs: list
    bezout: list


EXAMPLES = [
    CoprimeExample("integers", ZZ, [(3, -1), (-3, 7)], [(2, 5), (-5, -2)]),
    CoprimeExample("F_2[x]", UniPoly(GF(2)), [("x^2", "x^2+x+1"), ("x^3+x+1", "x+1")],
                   [("x", "x+1"), (1, "x^2+x")]),
    CoprimeExample("Q[x]", UniPoly(QQ), [("x+1", "x^4+x^3+x^2+x+1"), ("x^2+x+1", "x^2+1")],
                   [("-x^3-x", 1), ("-x", "1+x")]),
]


def show(ex: CoprimeExample) -> bool:
    E = block_build_idempotent(coprime_pair_builder(ex.ring, ex.pairs, bezout=ex.bezout))
    snf = smith_normal_form(E.matrix)
    f = idempotent_snf_factor(E)
    print(f"== {ex.label}: rank {E.rank}")
    print(format_matrix(E.matrix), end="")
    print("Smith form diagonal:", [str(d) for d in snf.invariant_factors])
    ok = (f.S @ f.T == E.matrix and f.T @ f.S == Matrix.diag(ex.ring, [1] * f.ell + [0] * (E.n - f.ell))
          and snf.P @ E.matrix @ snf.Q == snf.D)
    print(f"S T = E, T S = diag(I_{f.ell}, 0), P E Q = D: {ok}\n")
    return ok


def main():
    results = [show(ex) for ex in EXAMPLES]
    raise SystemExit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
