"""Command-line front end: ``idemmat <subcommand> [options]``.

Matrices are read from ``--input`` (default stdin) in the text format of
``idemmat.textio``; ``--json`` switches input and output to the JSON mirror.
Exit status is 0 on success, 1 on a domain error (for example a matrix that
is not idempotent) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import BudgetExceeded, IdemError, ParseError
from .groebner import DEFAULT_PAIR_BUDGET, dimension_report
from .idempotent import is_idempotent, kron_idempotent, rank1_ufd_construct
from .matrices import rank
from .poset import THREADS_ENV, EnumerationConfig, build_hasse, enumerate_idempotents
from .rings import QCount, is_prime, ring_from_name
from .smith import (
    BlockBuilderInput,
    block_build_idempotent,
    coprime_pair_builder,
    idempotent_snf_factor,
    smith_normal_form,
)
from .textio import (
    dumps_matrix_json,
    format_matrix,
    matrix_from_json,
    matrix_to_json,
    parse_matrices,
    parse_matrix,
)

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Bad combination of arguments detected after parsing."""


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------

def _read_text(args) -> str:
    if args.input in (None, "-"):
        return sys.stdin.read()
    with open(args.input, encoding="utf-8") as fh:
        return fh.read()


def _ring(args):
    return ring_from_name(args.ring) if getattr(args, "ring", None) else None


def _read_one(args):
    return parse_matrix(_read_text(args), _ring(args))


def _read_many(args, count: int):
    text, ring = _read_text(args), _ring(args)
    if args.json:
        stripped = text.strip()
        try:
            obj = json.loads(stripped)
            objs = obj if isinstance(obj, list) else [obj]
        except json.JSONDecodeError:
            objs = [json.loads(line) for line in stripped.splitlines() if line.strip()]
        mats = [matrix_from_json(o, ring) for o in objs]
    else:
        mats = parse_matrices(text, ring)
    if len(mats) != count:
        raise ParseError(f"expected {count} matrices, found {len(mats)}")
    return mats


def _emit_matrix(M, args, out):
    out.write(dumps_matrix_json(M) + "\n" if args.json else format_matrix(M))


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get(THREADS_ENV, "1") or 1)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args, out) -> int:
    M = _read_one(args)
    ok = M.is_square and is_idempotent(M)
    r = rank(M) if ok else None
    if args.json:
        out.write(json.dumps({"idempotent": ok, "rank": r}) + "\n")
    else:
        out.write(f"idempotent rank={r}\n" if ok else "not idempotent\n")
    return 0 if ok else 1


def cmd_enumerate(args, out) -> int:
    cfg = EnumerationConfig(threads=_threads(args))
    ranks = range(args.n + 1) if args.rank is None else [args.rank]
    first = True
    for r in ranks:
        for E in enumerate_idempotents(args.n, args.p, cfg, rank_only=r):
            if args.json:
                out.write(dumps_matrix_json(E.matrix) + "\n")
            else:
                out.write(("" if first else "\n") + format_matrix(E.matrix))
            first = False
        out.flush()
    return 0


def cmd_hasse(args, out) -> int:
    fmt = "json" if args.json else args.format
    H = build_hasse(args.n, args.p, EnumerationConfig(threads=_threads(args)))
    out.write(H.to_dot() if fmt == "dot" else H.dumps_json() + "\n")
    return 0


def cmd_count(args, out) -> int:
    c = QCount(args.n, args.r, args.q)
    if args.json:
        out.write(json.dumps({"n": c.n, "r": c.r, "q": c.q,
                              "subspaces": c.subspaces, "idempotents": c.idempotents}) + "\n")
    else:
        out.write(f"{c.subspaces if args.subspaces else c.idempotents}\n")
    return 0


def cmd_snf(args, out) -> int:
    snf = smith_normal_form(_read_one(args))
    if args.json:
        doc = {name: matrix_to_json(getattr(snf, name)) for name in ("D", "P", "Q")}
        doc["invariant_factors"] = [str(d) for d in snf.invariant_factors]
        out.write(json.dumps(doc) + "\n")
    else:
        blocks = [f"# {name}\n" + format_matrix(getattr(snf, name)) for name in ("D", "P", "Q")]
        out.write("\n".join(blocks))
    return 0


def cmd_factor(args, out) -> int:
    f = idempotent_snf_factor(_read_one(args))
    out.write(json.dumps({"ell": f.ell, "S": matrix_to_json(f.S), "T": matrix_to_json(f.T)}) + "\n")
    return 0


def _split_pair(text: str, flag: str):
    parts = text.split(",")
    if len(parts) != 2 or not all(x.strip() for x in parts):
        raise UsageError(f"{flag} expects two comma-separated scalars, got {text!r}")
    return parts[0].strip(), parts[1].strip()


def cmd_build(args, out) -> int:
    if args.mode == "blocks":
        A, B, C, D = _read_many(args, 4)
        E = block_build_idempotent(BlockBuilderInput(A, B, C, D))
    else:
        if not args.ring:
            raise UsageError(f"build {args.mode} needs --ring")
        R = ring_from_name(args.ring)
        if args.mode == "coprime":
            pairs = [_split_pair(x, "--pair") for x in args.pair]
            bez = None
            if args.bezout is not None:
                if len(args.bezout) != 2:
                    raise UsageError("give --bezout twice (one g,h per pair) or not at all")
                bez = [_split_pair(x, "--bezout") for x in args.bezout]
            E = block_build_idempotent(coprime_pair_builder(R, pairs, bezout=bez))
        else:
            if len(args.s) != len(args.a):
                raise UsageError("--s and --a need the same number of entries")
            E = rank1_ufd_construct(R, args.s, args.a)
    _emit_matrix(E.matrix, args, out)
    return 0


def cmd_kron(args, out) -> int:
    A, B = _read_many(args, 2)
    _emit_matrix(kron_idempotent(A, B).matrix, args, out)
    return 0


def cmd_dim(args, out) -> int:
    report = dimension_report(args.n, budget=args.budget, slice=args.slice)
    out.write(report.dumps_json(include_basis=args.basis) + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idemmat", description="Exact computations with idempotent matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON input and output")
    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("-i", "--input", default="-", help="matrix file (default: stdin)")
    reader.add_argument("--ring", help="ring name: Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx")
    threads = argparse.ArgumentParser(add_help=False)
    threads.add_argument("--threads", type=_positive, default=None,
                         help=f"worker threads (default: ${THREADS_ENV} or 1)")

    p = sub.add_parser("check", parents=[common, reader], help="test a matrix for idempotency")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[common, threads], help="list all idempotents of M_n(F_p)")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--rank", type=_nonneg)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hasse", parents=[common, threads], help="Hasse diagram of idempotents over F_p")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("count", parents=[common], help="number of rank-r idempotents in M_n(F_q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--subspaces", action="store_true", help="print the Gaussian binomial instead")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("snf", parents=[common, reader], help="Smith normal form P A Q = D")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("factor", parents=[common, reader], help="factor an idempotent as S T")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("build", parents=[common, reader], help="construct an idempotent")
    p.add_argument("mode", choices=("blocks", "coprime", "rank1"))
    p.add_argument("--pair", action="append", metavar="A,B",
                   help="coprime mode: a coprime pair; give it twice (use --pair=-1,3 for a leading minus)")
    p.add_argument("--bezout", action="append", metavar="G,H",
                   help="coprime mode: coefficients with a*g + b*h = 1, one per pair")
    p.add_argument("--s", nargs="+", help="rank1 mode: column vector entries")
    p.add_argument("--a", nargs="+", help="rank1 mode: row vector entries")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("kron", parents=[common, reader], help="Kronecker idempotent of two matrices")
    p.set_defaults(func=cmd_kron)

    p = sub.add_parser("dim", help="dimension of the variety of n x n idempotents")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--slice", type=_nonneg, help="restrict to trace(X) = slice")
    p.add_argument("--budget", type=_positive, default=DEFAULT_PAIR_BUDGET,
                   help="maximum number of S-polynomial reductions")
    p.add_argument("--basis", action="store_true", help="include the reduced basis")
    p.set_defaults(func=cmd_dim)
    return parser


def _validate(args, parser):
    if args.command in ("enumerate", "hasse") and not is_prime(args.p):
        parser.error(f"--p must be prime, got {args.p}")
    if args.command == "count" and not (0 <= args.r <= args.n and args.q >= 2):
        parser.error("count needs 0 <= r <= n and q >= 2")
    if args.command == "build":
        if args.mode == "coprime" and (not args.pair or len(args.pair) != 2):
            parser.error("build coprime needs --pair twice")
        if args.mode == "rank1" and (not args.s or not args.a):
            parser.error("build rank1 needs --s and --a")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    out = sys.stdout
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"idemmat: error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"idemmat: parse error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"idemmat: parse error: line {exc.lineno}, col {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"idemmat: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"idemmat: budget exceeded: {exc}", file=sys.stderr)
        return 1
    except IdemError as exc:
        print(f"idemmat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
