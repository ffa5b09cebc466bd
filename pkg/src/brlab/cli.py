"""Command-line interface: build tensors, run flattenings and ranks, emit
certificates and comparison tables.

Exit codes: 0 success, 2 usage error, 3 arithmetic/prime failure,
4 internal cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from .binaryforms import restrict_matmul
from .bounds import (
    bound_classical,
    bound_koszul,
    bound_matmul_restricted,
    compare_table,
    formula_certificate,
)
from .errors import BadPrime, BrlabError, DivisionByZero
from .exterior import koszul_flattening
from .rank_engine import ExactQ, MultiPrime, rank_certified
from .repcomb import (
    formula_range_validated,
    kernel_dim_formula,
    kernel_dim_pieri,
)
from .scalars import FieldTag, certification_primes
from .tensor import load_tensor, matmul_tensor, rank_one_tensor, save_tensor, tensor_to_json

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ARITHMETIC = 3
EXIT_CROSSCHECK = 4


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _parse_strategy(spec: str | None):
    """Map a --field flag to a rank strategy (None means auto-select)."""
    if spec is None:
        return None
    if spec == "q":
        return ExactQ()
    if spec == "multiprime":
        return MultiPrime()
    if spec == "fp":
        return MultiPrime((certification_primes()[0],))
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise BadPrime(f"bad prime in field flag {spec!r}")
        FieldTag.prime_field(p)
        return MultiPrime((p,))
    raise argparse.ArgumentTypeError(f"bad field {spec!r} (want q, fp[:P], multiprime)")


def _emit(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _note(args: argparse.Namespace, message: str) -> None:
    if getattr(args, "verbose", False):
        print(message, file=sys.stderr)


def _parse_vector(text: str) -> list:
    return [tok.strip() for tok in text.split(",")]


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_tensor(args: argparse.Namespace) -> int:
    field = FieldTag.rationals()
    if args.field is not None:
        if args.field == "q":
            field = FieldTag.rationals()
        elif args.field.startswith("fp:"):
            try:
                field = FieldTag.prime_field(int(args.field[3:]))
            except ValueError:
                print(f"bad field {args.field!r} for tensor construction",
                      file=sys.stderr)
                return EXIT_USAGE
        else:
            print(f"bad field {args.field!r} for tensor construction", file=sys.stderr)
            return EXIT_USAGE
    if args.kind == "matmul":
        t = matmul_tensor(args.m, args.n, args.l, field)
    elif args.kind == "rank-one":
        parse = field.parse
        t = rank_one_tensor(
            [parse(x) for x in _parse_vector(args.u)],
            [parse(x) for x in _parse_vector(args.v)],
            [parse(x) for x in _parse_vector(args.w)],
            field,
        )
    else:  # restrict
        t = restrict_matmul(args.m, args.n, args.l, field)
    _note(args, f"built tensor dims={list(t.dims)} nnz={t.nnz} field={t.field}")
    if args.out:
        save_tensor(t, args.out)
        print(json.dumps({"path": args.out, "dims": list(t.dims), "nnz": t.nnz}))
    else:
        print(json.dumps(tensor_to_json(t)))
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace) -> int:
    method = args.method
    strategy = _parse_strategy(args.field)

    if method in ("theorem1-formula", "lickteig-square"):
        if method == "lickteig-square":
            if args.n is None:
                print("lickteig-square needs --n", file=sys.stderr)
                return EXIT_USAGE
            cert = formula_certificate(method, args.n, args.n, args.n)
        else:
            if None in (args.m, args.n, args.l):
                print("theorem1-formula needs --m --n --l", file=sys.stderr)
                return EXIT_USAGE
            cert = formula_certificate(method, args.m, args.n, args.l)
        _emit(cert.to_json(), args.out)
        return EXIT_OK

    if method == "koszul-restricted":
        if None in (args.m, args.n, args.l):
            print("koszul-restricted needs --m --n --l", file=sys.stderr)
            return EXIT_USAGE
        cert = bound_matmul_restricted(args.m, args.n, args.l, strategy)
        _note(args, f"{cert.rows}x{cert.cols} rank {cert.rank} "
                    f"({cert.soundness}, {cert.timings_ms:.1f} ms)")
        _emit(cert.to_json(), args.out)
        return EXIT_OK

    # classical / strassen / koszul act on a tensor: from a file or matmul dims
    if args.tensor is not None:
        t = load_tensor(args.tensor)
        descriptor = None
    elif None not in (args.m, args.n, args.l):
        t = matmul_tensor(args.m, args.n, args.l)
        descriptor = {"m": args.m, "n": args.n, "l": args.l}
    else:
        print(f"method {method} needs --tensor FILE or --m --n --l", file=sys.stderr)
        return EXIT_USAGE

    if method == "classical":
        cert = bound_classical(t, strategy, descriptor=descriptor)
    elif method == "strassen":
        cert = bound_koszul(t, 1, strategy, descriptor=descriptor)
    else:  # koszul
        if args.p is None:
            print("koszul needs --p", file=sys.stderr)
            return EXIT_USAGE
        cert = bound_koszul(t, args.p, strategy, descriptor=descriptor)
    _note(args, f"{cert.rows}x{cert.cols} rank {cert.rank} "
                f"({cert.soundness}, {cert.timings_ms:.1f} ms)")
    _emit(cert.to_json(), args.out)
    return EXIT_OK


def _cmd_kernel_dim(args: argparse.Namespace) -> int:
    m, n, p, l = args.m, args.n, args.p, args.l
    check = args.check
    doc: dict = {
        "m": m, "n": n, "p": p, "l": l,
        "validated_range": formula_range_validated(m, n, p),
    }
    values: dict[str, int] = {}
    if check in ("pieri", "both", "rank"):
        values["pieri"] = kernel_dim_pieri(m, n, p, l)
    if check in ("formula", "both", "rank"):
        values["formula"] = kernel_dim_formula(m, n, p, l)
    if check == "rank":
        km = koszul_flattening(matmul_tensor(m, n, l), p)
        _note(args, f"flattening {km.rows}x{km.cols}, nnz={km.matrix.nnz}")
        prime = certification_primes()[0]
        result = rank_certified(km.matrix, MultiPrime((prime,)))
        values["rank_based"] = km.matrix.cols - result.rank
        doc["source_dim"] = km.matrix.cols
        doc["rank"] = result.rank
        doc["rank_field"] = f"Fp:{prime}"
    doc.update(values)
    distinct = set(values.values())
    doc["agree"] = len(distinct) <= 1
    _emit(doc, args.out)
    return EXIT_OK if doc["agree"] else EXIT_CROSSCHECK


def _cmd_table(args: argparse.Namespace) -> int:
    rows = compare_table(args.n_min, args.n_max)
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    headers = ["n", "l", "classical", "strassen-era", "lickteig", "theorem1", "computed"]
    keys = ["n", "l", "classical", "strassen_era", "lickteig", "theorem1", "computed"]
    cells = [[str(row[k]) if row[k] is not None else "-" for k in keys] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(headers)]
    print("  ".join(h.rjust(w) for h, w in zip(headers, widths)))
    for r in cells:
        print("  ".join(x.rjust(w) for x, w in zip(r, widths)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--verbose", action="store_true",
                        help="progress notes on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brlab",
        description="Certified border-rank lower bounds for 3-tensors "
                    "via exact wedge-power flattenings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tensor = sub.add_parser("tensor", help="construct a tensor and write it as JSON")
    t_sub = p_tensor.add_subparsers(dest="kind", required=True)

    t_mm = t_sub.add_parser("matmul", help="matrix multiplication tensor")
    t_mm.add_argument("--m", type=_positive_int, required=True)
    t_mm.add_argument("--n", type=_positive_int, required=True)
    t_mm.add_argument("--l", type=_positive_int, required=True)
    t_mm.add_argument("--field", default=None, help="q (default) or fp:P")
    t_mm.add_argument("--out", default=None)
    _add_common_flags(t_mm)
    t_mm.set_defaults(func=_cmd_tensor)

    t_r1 = t_sub.add_parser("rank-one", help="outer product of three vectors")
    t_r1.add_argument("--u", required=True, help="comma-separated values")
    t_r1.add_argument("--v", required=True)
    t_r1.add_argument("--w", required=True)
    t_r1.add_argument("--field", default=None)
    t_r1.add_argument("--out", default=None)
    _add_common_flags(t_r1)
    t_r1.set_defaults(func=_cmd_tensor)

    t_re = t_sub.add_parser(
        "restrict", help="matmul tensor with its first factor projected to "
                         "the multiplication summand")
    t_re.add_argument("--m", type=_positive_int, required=True)
    t_re.add_argument("--n", type=_positive_int, required=True)
    t_re.add_argument("--l", type=_positive_int, default=1)
    t_re.add_argument("--field", default=None)
    t_re.add_argument("--out", default=None)
    _add_common_flags(t_re)
    t_re.set_defaults(func=_cmd_tensor)

    p_bound = sub.add_parser("bound", help="emit one bound certificate as JSON")
    p_bound.add_argument(
        "--method", required=True,
        choices=["classical", "strassen", "koszul", "koszul-restricted",
                 "theorem1-formula", "lickteig-square"])
    p_bound.add_argument("--p", type=_nonneg_int, default=None)
    p_bound.add_argument("--tensor", default=None, help="tensor JSON file")
    p_bound.add_argument("--m", type=_positive_int, default=None)
    p_bound.add_argument("--n", type=_positive_int, default=None)
    p_bound.add_argument("--l", type=_positive_int, default=None)
    p_bound.add_argument("--field", default=None,
                         help="q | fp[:PRIME] | multiprime (default: auto)")
    p_bound.add_argument("--out", default=None)
    _add_common_flags(p_bound)
    p_bound.set_defaults(func=_cmd_bound)

    p_kd = sub.add_parser("kernel-dim", help="kernel dimension of the matmul "
                                             "wedge flattening, cross-checked")
    p_kd.add_argument("--m", type=_positive_int, required=True)
    p_kd.add_argument("--n", type=_positive_int, required=True)
    p_kd.add_argument("--p", type=_nonneg_int, required=True)
    p_kd.add_argument("--l", type=_positive_int, default=1)
    p_kd.add_argument("--check", choices=["pieri", "formula", "both", "rank"],
                      default="both")
    p_kd.add_argument("--out", default=None)
    _add_common_flags(p_kd)
    p_kd.set_defaults(func=_cmd_kernel_dim)

    p_table = sub.add_parser("table", help="closed-form comparison table")
    p_table.add_argument("--n-min", type=_positive_int, required=True)
    p_table.add_argument("--n-max", type=_positive_int, required=True)
    p_table.add_argument("--json", action="store_true")
    _add_common_flags(p_table)
    p_table.set_defaults(func=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BadPrime, DivisionByZero) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARITHMETIC
    except BrlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
